//! Binary snapshot of a built graph and its actor table, for fast reload.
//!
//! Layout: magic + version header, counts, then the CSR arrays and string
//! tables, all little-endian. Serialization is a pure function of the graph
//! contents, so save -> load -> save reproduces identical bytes.

use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{ActorId, ActorTable, CoStarGraph};

const MAGIC: &[u8; 4] = b"CSG\0";
const VERSION: u32 = 1;

fn write_u32(w: &mut impl Write, v: u32) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn write_u64(w: &mut impl Write, v: u64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn write_str(w: &mut impl Write, s: &str) -> Result<()> {
    write_u32(w, s.len() as u32)?;
    w.write_all(s.as_bytes())?;
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_len(r: &mut impl Read) -> Result<usize> {
    let v = read_u64(r)?;
    usize::try_from(v).map_err(|_| Error::Snapshot(format!("length {v} exceeds address space")))
}

fn read_str(r: &mut impl Read) -> Result<String> {
    let len = read_u32(r)? as usize;
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)?;
    String::from_utf8(buf).map_err(|_| Error::Snapshot("string is not UTF-8".into()))
}

/// Writes `graph` and `table` to `path`.
pub fn save(graph: &CoStarGraph, table: &ActorTable, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    let (adj_offsets, neighbors, title_offsets, title_ids, titles) = graph.parts();

    w.write_all(MAGIC)?;
    write_u32(&mut w, VERSION)?;
    write_u64(&mut w, graph.node_count() as u64)?;
    write_u64(&mut w, neighbors.len() as u64)?;
    write_u64(&mut w, title_ids.len() as u64)?;
    write_u64(&mut w, titles.len() as u64)?;

    for &off in adj_offsets {
        write_u64(&mut w, off as u64)?;
    }
    for &nb in neighbors {
        write_u32(&mut w, nb)?;
    }
    for &off in title_offsets {
        write_u64(&mut w, off as u64)?;
    }
    for &t in title_ids {
        write_u32(&mut w, t)?;
    }
    for title in titles {
        write_str(&mut w, title)?;
    }
    for v in 0..graph.node_count() {
        write_str(&mut w, table.name(ActorId(v as u32)))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a graph and actor table previously written by [`save`].
pub fn load(path: &Path) -> Result<(CoStarGraph, ActorTable)> {
    let file = std::fs::File::open(path).map_err(|source| Error::ReadInput {
        path: path.to_path_buf(),
        source,
    })?;
    let mut r = BufReader::new(file);

    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Snapshot("bad magic; not a graph snapshot".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(Error::Snapshot(format!(
            "unsupported snapshot version {version} (expected {VERSION})"
        )));
    }

    let n = read_len(&mut r)?;
    let edge_slots = read_len(&mut r)?;
    let title_entries = read_len(&mut r)?;
    let title_count = read_len(&mut r)?;

    let mut adj_offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        adj_offsets.push(read_len(&mut r)?);
    }
    let mut neighbors = Vec::with_capacity(edge_slots);
    for _ in 0..edge_slots {
        neighbors.push(read_u32(&mut r)?);
    }
    let mut title_offsets = Vec::with_capacity(edge_slots + 1);
    for _ in 0..=edge_slots {
        title_offsets.push(read_len(&mut r)?);
    }
    let mut title_ids = Vec::with_capacity(title_entries);
    for _ in 0..title_entries {
        title_ids.push(read_u32(&mut r)?);
    }
    let mut titles = Vec::with_capacity(title_count);
    for _ in 0..title_count {
        titles.push(read_str(&mut r)?);
    }

    validate(
        n,
        &adj_offsets,
        &neighbors,
        &title_offsets,
        &title_ids,
        title_count,
    )?;

    let mut records = Vec::with_capacity(n);
    for _ in 0..n {
        records.push(read_str(&mut r)?);
    }
    let mut trailing = [0u8; 1];
    if r.read(&mut trailing)? != 0 {
        return Err(Error::Snapshot("trailing bytes after actor names".into()));
    }

    let graph = CoStarGraph::from_parts(adj_offsets, neighbors, title_offsets, title_ids, titles);
    let table = rebuild_table(records)?;
    Ok((graph, table))
}

fn validate(
    n: usize,
    adj_offsets: &[usize],
    neighbors: &[u32],
    title_offsets: &[usize],
    title_ids: &[u32],
    title_count: usize,
) -> Result<()> {
    let corrupt = |msg: &str| Err(Error::Snapshot(msg.into()));
    if adj_offsets.first() != Some(&0) || adj_offsets.last() != Some(&neighbors.len()) {
        return corrupt("adjacency offsets do not span the edge array");
    }
    if adj_offsets.windows(2).any(|w| w[0] > w[1]) {
        return corrupt("adjacency offsets are not monotone");
    }
    if neighbors.iter().any(|&v| v as usize >= n) {
        return corrupt("neighbor id out of range");
    }
    if title_offsets.first() != Some(&0) || title_offsets.last() != Some(&title_ids.len()) {
        return corrupt("title offsets do not span the title array");
    }
    if title_offsets.windows(2).any(|w| w[0] > w[1]) {
        return corrupt("title offsets are not monotone");
    }
    if title_ids.iter().any(|&t| t as usize >= title_count) {
        return corrupt("title id out of range");
    }
    Ok(())
}

fn rebuild_table(names: Vec<String>) -> Result<ActorTable> {
    let mut table = ActorTable::default();
    for (i, name) in names.iter().enumerate() {
        let id = table.intern(name);
        if id.index() != i {
            return Err(Error::Snapshot(format!("duplicate actor name: {name}")));
        }
    }
    Ok(table)
}
