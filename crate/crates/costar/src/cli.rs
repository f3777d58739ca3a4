//! Command-line surface: one subcommand per pipeline stage, with `tsv`,
//! `json`, `table`, and `longtable` output modes.
//!
//! Data goes to stdout; diagnostics and timing lines go to stderr, so stdout
//! is byte-identical across runs for a fixed configuration.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::centrality::{
    betweenness_exact, betweenness_sampled, closeness_sample_stats, closeness_top,
    degree_centrality, CentralityVector, Measure, SampleStats,
};
use crate::components::{connected_components, largest_component};
use crate::error::{Error, Result};
use crate::graph::{build_graph, ActorId, ActorTable, CoStarGraph};
use crate::ingest::{
    cast_size_histogram, load_clean, movies_per_year, top_by_cast_size, Histogram,
};
use crate::paths::{hop_distribution, shortest_path, PathOutcome};
use crate::reports::{decade_report, movies_per_actor, top_partnerships, RankedTable};
use crate::snapshot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// Tab-separated rows.
    #[default]
    Tsv,
    /// One JSON document.
    Json,
    /// Human-readable lines.
    Table,
    /// Rows for pasting into a LaTeX longtable.
    Longtable,
}

/// Parsed invocation: subcommand plus the shared flags.
#[derive(Debug, Parser)]
#[command(name = "costar", version, about = "Co-star network analysis toolkit")]
pub struct RunConfig {
    /// Output format for data written to stdout.
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,

    /// Number of rows to print from ranked tables.
    #[arg(long, global = true, default_value_t = 5)]
    pub top: usize,

    /// Pivot count for sampled betweenness (clamped to the component size).
    #[arg(long, global = true, default_value_t = 1000)]
    pub k: usize,

    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "COSTAR_WORKERS")]
    pub workers: Option<usize>,

    /// Load a prebuilt graph snapshot instead of building from the input
    /// (for `build`, the destination to write).
    #[arg(long, global = true)]
    pub snapshot: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and clean the input, reporting record counts.
    Stats { input: PathBuf },
    /// Movies per release year.
    HistYears { input: PathBuf },
    /// Movies per cast size.
    HistCast { input: PathBuf },
    /// Movies with the largest casts.
    TopCast { input: PathBuf },
    /// Build the co-star graph and write it to --snapshot.
    Build { input: PathBuf },
    /// Connected components of the simple graph.
    Components { input: PathBuf },
    /// Actors ranked by distinct movie count.
    TopActors { input: PathBuf },
    /// Acting partnerships ranked by shared movie count.
    TopPairs { input: PathBuf },
    /// Shortest path between two actors, one movie per hop.
    Path {
        input: PathBuf,
        from: String,
        to: String,
    },
    /// How many actors sit at each BFS distance from one actor.
    Hops { input: PathBuf, actor: String },
    /// Degree centrality on the largest component; with names, per-actor
    /// degrees.
    Degree { input: PathBuf, actors: Vec<String> },
    /// Sampled betweenness centrality on the largest component.
    Betweenness {
        input: PathBuf,
        /// Use every node as a source instead of sampling k pivots.
        #[arg(long)]
        exact: bool,
    },
    /// Closeness of the top betweenness candidates; with names, per-actor
    /// scores.
    Closeness {
        input: PathBuf,
        actors: Vec<String>,
        /// How many betweenness candidates to score.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Mean-path-length statistics over a random sample of actors.
    SampleCloseness {
        input: PathBuf,
        /// Sample size.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Degree, betweenness, and closeness tables for one decade's movies.
    DecadeReport {
        input: PathBuf,
        /// Decade to report on, e.g. 1990.
        #[arg(long)]
        decade: i64,
        /// How many betweenness candidates to score for closeness.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
}

/// Loads the graph from the snapshot when given, else builds it from the
/// cleaned input.
fn load_graph(input: &Path, snap: Option<&Path>) -> Result<(CoStarGraph, ActorTable)> {
    if let Some(path) = snap {
        return snapshot::load(path);
    }
    let (records, _) = load_clean(input)?;
    Ok(build_graph(&records))
}

/// The largest component and a matching name table.
fn component_view(input: &Path, snap: Option<&Path>) -> Result<(CoStarGraph, ActorTable)> {
    let (g, table) = load_graph(input, snap)?;
    let (comp, remap) = largest_component(&g)?;
    Ok((comp, table.project(&remap)))
}

/// Executes one parsed invocation, writing data output to `out`.
pub fn run(config: RunConfig, out: &mut impl Write) -> Result<()> {
    let RunConfig {
        format,
        top,
        k,
        seed,
        workers: _,
        snapshot: snap,
        command,
    } = config;
    let snap = snap.as_deref();

    match command {
        Command::Stats { input } => {
            let (_, report) = load_clean(&input)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
                Format::Tsv => {
                    writeln!(out, "raw_count\t{}", report.raw_count)?;
                    writeln!(out, "dropped_no_cast\t{}", report.dropped_no_cast)?;
                    writeln!(out, "dropped_no_year\t{}", report.dropped_no_year)?;
                    writeln!(out, "retained\t{}", report.retained)?;
                    writeln!(out, "malformed_lines\t{}", report.malformed_lines)?;
                }
                Format::Table | Format::Longtable => {
                    writeln!(out, "Raw records     = {}", report.raw_count)?;
                    writeln!(out, "No cast listed  = {}", report.dropped_no_cast)?;
                    writeln!(out, "No release year = {}", report.dropped_no_year)?;
                    writeln!(out, "Retained        = {}", report.retained)?;
                    writeln!(out, "Malformed lines = {}", report.malformed_lines)?;
                }
            }
        }

        Command::HistYears { input } => {
            let (records, _) = load_clean(&input)?;
            write_histogram(out, &movies_per_year(&records), format)?;
        }

        Command::HistCast { input } => {
            let (records, _) = load_clean(&input)?;
            write_histogram(out, &cast_size_histogram(&records), format)?;
        }

        Command::TopCast { input } => {
            let (records, _) = load_clean(&input)?;
            let rows = top_by_cast_size(&records, top);
            match format {
                Format::Json => {
                    let items: Vec<_> = rows
                        .iter()
                        .enumerate()
                        .map(|(i, (title, size))| {
                            json!({"rank": i + 1, "title": title, "cast_size": size})
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string(&items)?)?;
                }
                Format::Tsv => {
                    for (i, (title, size)) in rows.iter().enumerate() {
                        writeln!(out, "{}\t{}\t{}", i + 1, title, size)?;
                    }
                }
                Format::Table => {
                    for (title, size) in &rows {
                        writeln!(out, "{title} = {size}")?;
                    }
                }
                Format::Longtable => {
                    for (i, (title, size)) in rows.iter().enumerate() {
                        writeln!(out, "{}\t&\t{}\t&\t{}\t\\\\", i + 1, title, size)?;
                    }
                }
            }
        }

        Command::Build { input } => {
            let Some(dest) = snap else {
                return Err(Error::Snapshot(
                    "build needs --snapshot <path> as the destination".into(),
                ));
            };
            let (g, table) = {
                let (records, _) = load_clean(&input)?;
                build_graph(&records)
            };
            snapshot::save(&g, &table, dest)?;
            write_graph_summary(out, &g, format)?;
        }

        Command::Components { input } => {
            let (g, _) = load_graph(&input, snap)?;
            let labeling = connected_components(&g);
            match format {
                Format::Json => {
                    let doc = json!({"count": labeling.count(), "sizes": labeling.sizes()});
                    writeln!(out, "{doc}")?;
                }
                Format::Tsv => {
                    writeln!(out, "count\t{}", labeling.count())?;
                    for (i, size) in labeling.sizes().iter().enumerate() {
                        writeln!(out, "{}\t{}", i, size)?;
                    }
                }
                Format::Table | Format::Longtable => {
                    writeln!(out, "Number of components = {}", labeling.count())?;
                    let sizes: Vec<String> =
                        labeling.sizes().iter().map(|s| s.to_string()).collect();
                    writeln!(out, "Component sizes      = [{}]", sizes.join(", "))?;
                }
            }
        }

        Command::TopActors { input } => {
            let (g, table) = load_graph(&input, snap)?;
            let report = movies_per_actor(&g, &table).truncated(top);
            write_ranked_table(out, &report, format)?;
        }

        Command::TopPairs { input } => {
            let (g, table) = load_graph(&input, snap)?;
            let report = top_partnerships(&g, &table).truncated(top);
            write_ranked_table(out, &report, format)?;
        }

        Command::Path { input, from, to } => {
            let (g, table) = load_graph(&input, snap)?;
            let outcome = shortest_path(&g, &table, &from, &to);
            write_path(out, &from, &to, &outcome, format)?;
        }

        Command::Hops { input, actor } => {
            let (g, table) = load_graph(&input, snap)?;
            let source = table
                .id(&actor)
                .ok_or_else(|| Error::UnknownActor(actor.clone()))?;
            let dist = hop_distribution(&g, source);
            match format {
                Format::Json => {
                    let counts: serde_json::Map<String, serde_json::Value> = dist
                        .iter()
                        .map(|(d, c)| (d.to_string(), c.into()))
                        .collect();
                    writeln!(out, "{}", json!({"actor": actor, "counts": counts}))?;
                }
                Format::Tsv => {
                    for (d, c) in dist.iter() {
                        writeln!(out, "{d}\t{c}")?;
                    }
                }
                Format::Table | Format::Longtable => {
                    let parts: Vec<String> =
                        dist.iter().map(|(d, c)| format!("{d}: {c}")).collect();
                    writeln!(out, "{{{}}}", parts.join(", "))?;
                }
            }
        }

        Command::Degree { input, actors } => {
            let (g, table) = component_view(&input, snap)?;
            let scores = degree_centrality(&g)?;
            if actors.is_empty() {
                write_centrality(out, &scores, &table, top, format)?;
            } else {
                let n = g.node_count();
                for name in &actors {
                    let id = table
                        .id(name)
                        .ok_or_else(|| Error::UnknownActor(name.clone()))?;
                    let degree = g.degree(id);
                    let score = scores.score_of(id).unwrap();
                    match format {
                        Format::Json => writeln!(
                            out,
                            "{}",
                            json!({"actor": name, "degree": degree, "score": score, "n": n})
                        )?,
                        Format::Tsv => writeln!(out, "{name}\t{degree}\t{score}")?,
                        Format::Table | Format::Longtable => {
                            writeln!(out, "{name} : {degree} ({score})")?
                        }
                    }
                }
            }
        }

        Command::Betweenness { input, exact } => {
            let (g, table) = component_view(&input, snap)?;
            let started = Instant::now();
            let scores = if exact {
                betweenness_exact(&g)
            } else {
                let k = clamp_pivots(k, g.node_count());
                betweenness_sampled(&g, k, seed)?
            };
            eprintln!("Time taken = {} seconds", started.elapsed().as_secs_f64());
            write_centrality(out, &scores, &table, top, format)?;
        }

        Command::Closeness {
            input,
            actors,
            limit,
        } => {
            let (g, table) = component_view(&input, snap)?;
            if actors.is_empty() {
                let k = clamp_pivots(k, g.node_count());
                let betweenness = betweenness_sampled(&g, k, seed)?;
                let candidates: Vec<ActorId> = betweenness
                    .ranked(&table)
                    .into_iter()
                    .map(|(v, _)| v)
                    .collect();
                let started = Instant::now();
                let scores = closeness_top(&g, &candidates, limit)?;
                eprintln!("Time taken = {} seconds", started.elapsed().as_secs_f64());
                write_centrality(out, &scores, &table, top, format)?;
            } else {
                let ids = actors
                    .iter()
                    .map(|name| {
                        table
                            .id(name)
                            .ok_or_else(|| Error::UnknownActor(name.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let started = Instant::now();
                let scores = closeness_top(&g, &ids, ids.len())?;
                eprintln!("Time taken = {} seconds", started.elapsed().as_secs_f64());
                write_centrality(out, &scores, &table, actors.len(), format)?;
            }
        }

        Command::SampleCloseness { input, samples } => {
            let (g, _) = component_view(&input, snap)?;
            let stats = closeness_sample_stats(&g, samples, seed)?;
            write_sample_stats(out, &stats, format)?;
        }

        Command::DecadeReport {
            input,
            decade,
            limit,
        } => {
            let (records, _) = load_clean(&input)?;
            let report = decade_report(&records, decade, k, seed, limit)?;
            if format == Format::Json {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else {
                write_ranked_table(out, &report.degree, format)?;
                write_ranked_table(out, &report.betweenness, format)?;
                write_ranked_table(out, &report.closeness, format)?;
            }
        }
    }
    Ok(())
}

fn clamp_pivots(k: usize, n: usize) -> usize {
    if k > n {
        eprintln!("note: k reduced to the component size {n}");
        n
    } else {
        k.max(1)
    }
}

fn write_histogram(out: &mut impl Write, hist: &Histogram, format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            let bins: serde_json::Map<String, serde_json::Value> = hist
                .iter()
                .map(|(key, count)| (key.to_string(), count.into()))
                .collect();
            writeln!(out, "{}", serde_json::Value::Object(bins))?;
        }
        _ => {
            for (key, count) in hist.iter() {
                writeln!(out, "{key}\t{count}")?;
            }
        }
    }
    Ok(())
}

fn write_graph_summary(out: &mut impl Write, g: &CoStarGraph, format: Format) -> io::Result<()> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "nodes": g.node_count(),
                "multi_edges": g.multi_edge_count(),
                "simple_edges": g.simple_edge_count(),
            })
        )?,
        Format::Tsv => {
            writeln!(out, "nodes\t{}", g.node_count())?;
            writeln!(out, "multi_edges\t{}", g.multi_edge_count())?;
            writeln!(out, "simple_edges\t{}", g.simple_edge_count())?;
        }
        Format::Table | Format::Longtable => {
            writeln!(
                out,
                "Number of nodes in this multigraph = {}",
                g.node_count()
            )?;
            writeln!(
                out,
                "Number of edges in this multigraph = {}",
                g.multi_edge_count()
            )?;
            writeln!(
                out,
                "Number of edges in simple graph    = {}",
                g.simple_edge_count()
            )?;
        }
    }
    Ok(())
}

fn write_ranked_table(out: &mut impl Write, table: &RankedTable, format: Format) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(table)?)?,
        Format::Tsv => {
            writeln!(out, "# {}\t{}", table.title, table.provenance)?;
            for (i, (label, value)) in table.rows.iter().enumerate() {
                writeln!(out, "{}\t{}\t{}", i + 1, label, value)?;
            }
        }
        Format::Table => {
            for (label, value) in &table.rows {
                writeln!(out, "{label} : {value}")?;
            }
        }
        Format::Longtable => {
            for (i, (label, value)) in table.rows.iter().enumerate() {
                writeln!(out, "{}\t&\t{}\t&\t{}\t\\\\", i + 1, label, value)?;
            }
        }
    }
    Ok(())
}

/// Emits a centrality ranking. Degree vectors carry the raw degree as an
/// extra column; closeness vectors carry the mean hop count.
fn write_centrality(
    out: &mut impl Write,
    vector: &CentralityVector,
    table: &ActorTable,
    top: usize,
    format: Format,
) -> Result<()> {
    let ranked = vector.ranked(table);
    let rows = &ranked[..top.min(ranked.len())];
    let extra_label = match vector.measure {
        Measure::Degree => Some("degree"),
        Measure::Closeness => Some("mean_hops"),
        _ => None,
    };
    let extra = |score: f64| -> f64 {
        match vector.measure {
            Measure::Degree => (score * (vector.n - 1) as f64).round(),
            Measure::Closeness => 1.0 / score,
            _ => unreachable!(),
        }
    };
    let (k, seed) = match vector.measure {
        Measure::BetweennessSampled { k, seed } => (Some(k), Some(seed)),
        _ => (None, None),
    };

    match format {
        Format::Json => {
            let entries: Vec<serde_json::Value> = rows
                .iter()
                .enumerate()
                .map(|(i, &(v, score))| {
                    let mut obj = json!({
                        "rank": i + 1,
                        "actor": table.name(v),
                        "score": score,
                    });
                    if let Some(label) = extra_label {
                        obj[label] = extra(score).into();
                    }
                    obj
                })
                .collect();
            let mut doc = json!({
                "measure": vector.measure.label(),
                "n": vector.n,
                "entries": entries,
            });
            if let Some(k) = k {
                doc["k"] = k.into();
                doc["seed"] = seed.unwrap().into();
            }
            writeln!(out, "{doc}")?;
        }
        Format::Tsv => {
            write!(out, "# measure={}\tn={}", vector.measure.label(), vector.n)?;
            if let Some(k) = k {
                write!(out, "\tk={k}\tseed={}", seed.unwrap())?;
            }
            writeln!(out)?;
            for (i, &(v, score)) in rows.iter().enumerate() {
                write!(out, "{}\t{}\t{}", i + 1, table.name(v), score)?;
                if extra_label.is_some() {
                    write!(out, "\t{}", extra(score))?;
                }
                writeln!(out)?;
            }
        }
        Format::Table => {
            for &(v, score) in rows {
                writeln!(out, "{} : {}", table.name(v), score)?;
            }
        }
        Format::Longtable => {
            for (i, &(v, score)) in rows.iter().enumerate() {
                if extra_label.is_some() {
                    writeln!(
                        out,
                        "{}\t&\t{}\t&\t{}\t\\\\",
                        i + 1,
                        table.name(v),
                        extra(score)
                    )?;
                } else {
                    writeln!(out, "{}\t&\t{}\t&\t{}\t\\\\", i + 1, table.name(v), score)?;
                }
            }
        }
    }
    Ok(())
}

/// Renders a path query in the sentence form used throughout the toolkit's
/// reports: header, then one "was in ... with ..." line per hop.
fn write_path(
    out: &mut impl Write,
    from: &str,
    to: &str,
    outcome: &PathOutcome,
    format: Format,
) -> io::Result<()> {
    if format == Format::Json {
        let doc = match outcome {
            PathOutcome::Found(path) => {
                json!({"from": from, "to": to, "status": "found", "length": path.len(), "hops": path.hops})
            }
            PathOutcome::NotInNetwork => {
                json!({"from": from, "to": to, "status": "not-in-network"})
            }
            PathOutcome::NoPath => json!({"from": from, "to": to, "status": "no-path"}),
        };
        writeln!(out, "{doc}")?;
        return Ok(());
    }

    writeln!(out, "Here is the shortest path from {from} to {to}")?;
    match outcome {
        PathOutcome::Found(path) => {
            for hop in &path.hops {
                writeln!(out, "  {} was in {} with {}", hop.from, hop.title, hop.to)?;
            }
        }
        PathOutcome::NotInNetwork => {
            writeln!(out, "  Error: {from} and/or {to} are not in the network")?;
        }
        PathOutcome::NoPath => {
            writeln!(out, "  No path exists between {from} and {to}")?;
        }
    }
    Ok(())
}

fn write_sample_stats(out: &mut impl Write, stats: &SampleStats, format: Format) -> Result<()> {
    match format {
        Format::Json => {
            let doc = json!({
                "sample_size": stats.sample_size,
                "mean": stats.mean,
                "sd": stats.sd,
                "bins": stats.bins,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Tsv => {
            writeln!(out, "sample_size\t{}", stats.sample_size)?;
            writeln!(out, "mean\t{}", stats.mean)?;
            writeln!(out, "sd\t{}", stats.sd)?;
            for bin in &stats.bins {
                writeln!(out, "bin\t{}\t{}\t{}", bin.lower, bin.upper, bin.count)?;
            }
        }
        Format::Table | Format::Longtable => {
            writeln!(out, "Mean = {}", stats.mean)?;
            writeln!(out, "SD   = {}", stats.sd)?;
            for bin in &stats.bins {
                writeln!(out, "[{:.4}, {:.4}) {}", bin.lower, bin.upper, bin.count)?;
            }
        }
    }
    Ok(())
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Error {
        Error::Io(err.into())
    }
}
