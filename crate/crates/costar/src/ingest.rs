//! Parsing and cleaning of JSON-lines movie records, plus the dataset
//! statistics computed before any graph is built.
//!
//! The input format is one JSON object per line with a `"title"` string,
//! an optional `"cast"` array of actor names, and an optional integer
//! `"year"`. Unknown fields are ignored.

use std::collections::BTreeMap;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

/// One parsed movie record.
///
/// The cast list preserves input order and duplicates; deduplication happens
/// during graph construction, not here.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
pub struct MovieRecord {
    pub title: String,
    #[serde(default)]
    pub cast: Vec<String>,
    #[serde(
        default,
        deserialize_with = "lenient_year",
        skip_serializing_if = "Option::is_none",
        serialize_with = "plain_year"
    )]
    pub year: Option<i64>,
}

/// A `"year"` that is missing, non-numeric, or non-integer counts as absent.
fn lenient_year<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Option<i64>, D::Error> {
    let value = serde_json::Value::deserialize(de)?;
    Ok(value.as_i64())
}

fn plain_year<S: Serializer>(year: &Option<i64>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match year {
        Some(y) => ser.serialize_i64(*y),
        None => ser.serialize_none(),
    }
}

/// Counts from one pass of [`clean`].
///
/// Invariant: `raw_count = dropped_no_cast + dropped_no_year + retained + malformed_lines`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CleaningReport {
    pub raw_count: u64,
    pub dropped_no_cast: u64,
    pub dropped_no_year: u64,
    pub retained: u64,
    pub malformed_lines: u64,
}

/// Frequency counts keyed by an integer (release year or cast size).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    bins: BTreeMap<i64, u64>,
}

impl Histogram {
    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn get(&self, key: i64) -> u64 {
        self.bins.get(&key).copied().unwrap_or(0)
    }

    /// Sum of all frequencies; equals the number of records counted.
    pub fn total(&self) -> u64 {
        self.bins.values().sum()
    }

    pub fn min_key(&self) -> Option<i64> {
        self.bins.keys().next().copied()
    }

    pub fn max_key(&self) -> Option<i64> {
        self.bins.keys().next_back().copied()
    }

    /// Bins in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.bins.iter().map(|(&k, &v)| (k, v))
    }
}

fn parse_line(line: &str) -> Option<MovieRecord> {
    serde_json::from_str(line).ok()
}

/// Parses one JSON object per line, in line order.
///
/// Lines that are not a JSON object with a `"title"` string are skipped and
/// counted as malformed; they never abort the run. A missing `"cast"` yields
/// an empty cast list and a missing `"year"` an absent year.
pub fn parse_records(mut reader: impl BufRead) -> std::io::Result<(Vec<MovieRecord>, u64)> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    Ok(parse_text(&text))
}

/// [`parse_records`] over an in-memory string. Lines are parsed in parallel
/// when the `parallel` feature is enabled; the output order is line order
/// either way.
pub fn parse_text(text: &str) -> (Vec<MovieRecord>, u64) {
    #[cfg(feature = "parallel")]
    let parsed: Vec<Option<MovieRecord>> = text.par_lines().map(parse_line).collect();
    #[cfg(not(feature = "parallel"))]
    let parsed: Vec<Option<MovieRecord>> = text.lines().map(parse_line).collect();

    let total = parsed.len() as u64;
    let records: Vec<MovieRecord> = parsed.into_iter().flatten().collect();
    let malformed = total - records.len() as u64;
    (records, malformed)
}

/// Drops records with no cast, then records with no release year.
///
/// Output preserves input order. A record failing both rules counts only
/// under `dropped_no_cast`. `malformed_lines` is carried through from
/// parsing so the report's counts add up to the raw line count.
pub fn clean(
    records: Vec<MovieRecord>,
    malformed_lines: u64,
) -> (Vec<MovieRecord>, CleaningReport) {
    let mut dropped_no_cast = 0u64;
    let mut dropped_no_year = 0u64;
    let raw_count = records.len() as u64 + malformed_lines;

    let retained: Vec<MovieRecord> = records
        .into_iter()
        .filter(|r| {
            if r.cast.is_empty() {
                dropped_no_cast += 1;
                false
            } else if r.year.is_none() {
                dropped_no_year += 1;
                false
            } else {
                true
            }
        })
        .collect();

    let report = CleaningReport {
        raw_count,
        dropped_no_cast,
        dropped_no_year,
        retained: retained.len() as u64,
        malformed_lines,
    };
    (retained, report)
}

/// Reads, parses, and cleans a JSON-lines file in one step.
pub fn load_clean(path: &Path) -> Result<(Vec<MovieRecord>, CleaningReport)> {
    let file = std::fs::File::open(path).map_err(|source| Error::ReadInput {
        path: path.to_path_buf(),
        source,
    })?;
    let (records, malformed) = parse_records(std::io::BufReader::new(file))?;
    Ok(clean(records, malformed))
}

/// Number of movies per release year.
///
/// Callers should pass cleaned records; records without a year are not
/// counted.
pub fn movies_per_year(records: &[MovieRecord]) -> Histogram {
    let mut bins = BTreeMap::new();
    for record in records {
        if let Some(year) = record.year {
            *bins.entry(year).or_insert(0) += 1;
        }
    }
    Histogram { bins }
}

/// Number of movies per cast size.
pub fn cast_size_histogram(records: &[MovieRecord]) -> Histogram {
    let mut bins = BTreeMap::new();
    for record in records {
        *bins.entry(record.cast.len() as i64).or_insert(0) += 1;
    }
    Histogram { bins }
}

/// The `n` largest records by cast size, as `(title, cast size)` pairs.
///
/// Ties break by title ascending (byte order), then input order. Asking for
/// more records than exist returns all of them.
pub fn top_by_cast_size(records: &[MovieRecord], n: usize) -> Vec<(String, usize)> {
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&a, &b| {
        records[b]
            .cast
            .len()
            .cmp(&records[a].cast.len())
            .then_with(|| records[a].title.cmp(&records[b].title))
            .then(a.cmp(&b))
    });
    order
        .into_iter()
        .take(n)
        .map(|i| (records[i].title.clone(), records[i].cast.len()))
        .collect()
}

/// Records released in `decade..=decade+9`, input order preserved.
///
/// `decade` must be a multiple of 10.
pub fn filter_by_decade(records: &[MovieRecord], decade: i64) -> Vec<MovieRecord> {
    debug_assert!(decade % 10 == 0, "decade {decade} is not a multiple of 10");
    records
        .iter()
        .filter(|r| r.year.is_some_and(|y| decade <= y && y <= decade + 9))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BATMAN: &str = include_str!("../testdata/batman.json");

    #[test]
    fn parses_the_batman_fixture() {
        let (records, malformed) = parse_text(BATMAN);
        assert_eq!(malformed, 0);
        assert_eq!(records.len(), 3);
        assert_eq!(records[0].title, "Batman Begins");
        assert_eq!(records[0].cast.len(), 10);
        assert_eq!(records[0].year, Some(2005));
    }

    #[test]
    fn empty_input_parses_to_nothing() {
        let (records, malformed) = parse_text("");
        assert!(records.is_empty());
        assert_eq!(malformed, 0);
    }

    #[test]
    fn garbage_lines_are_counted_not_fatal() {
        let text = "{\"title\":\"A\",\"cast\":[\"x\",\"y\"],\"year\":1999}\nnot json at all\n";
        let (records, malformed) = parse_text(text);
        assert_eq!(records.len(), 1);
        assert_eq!(malformed, 1);
    }

    #[test]
    fn missing_title_counts_as_malformed() {
        let (records, malformed) = parse_text("{\"cast\":[\"x\"],\"year\":2000}");
        assert!(records.is_empty());
        assert_eq!(malformed, 1);
    }

    #[test]
    fn missing_cast_and_year_are_absent_markers() {
        let (records, malformed) = parse_text("{\"title\":\"A\"}");
        assert_eq!(malformed, 0);
        assert_eq!(records[0].cast, Vec::<String>::new());
        assert_eq!(records[0].year, None);
    }

    #[test]
    fn non_integer_year_is_treated_as_absent() {
        let (records, _) =
            parse_text("{\"title\":\"A\",\"cast\":[\"x\"],\"year\":\"roughly 1999\"}");
        assert_eq!(records[0].year, None);
        let (records, _) = parse_text("{\"title\":\"A\",\"cast\":[\"x\"],\"year\":1999.5}");
        assert_eq!(records[0].year, None);
    }

    #[test]
    fn clean_keeps_complete_records_in_order() {
        let (records, malformed) = parse_text(BATMAN);
        let (kept, report) = clean(records, malformed);
        assert_eq!(kept.len(), 3);
        assert_eq!(
            report,
            CleaningReport {
                raw_count: 3,
                dropped_no_cast: 0,
                dropped_no_year: 0,
                retained: 3,
                malformed_lines: 0,
            }
        );
    }

    #[test]
    fn clean_counts_no_cast_before_no_year() {
        let records = vec![
            MovieRecord {
                title: "A".into(),
                cast: vec![],
                year: Some(1990),
            },
            MovieRecord {
                title: "B".into(),
                cast: vec!["x".into()],
                year: None,
            },
            // Fails both rules: counted under no-cast only.
            MovieRecord {
                title: "C".into(),
                cast: vec![],
                year: None,
            },
        ];
        let (kept, report) = clean(records, 0);
        assert!(kept.is_empty());
        assert_eq!(report.dropped_no_cast, 2);
        assert_eq!(report.dropped_no_year, 1);
        assert_eq!(
            report.raw_count,
            report.dropped_no_cast
                + report.dropped_no_year
                + report.retained
                + report.malformed_lines
        );
    }

    #[test]
    fn year_histogram_counts_batman_years() {
        let (records, _) = parse_text(BATMAN);
        let hist = movies_per_year(&records);
        assert_eq!(hist.get(2005), 1);
        assert_eq!(hist.get(2008), 1);
        assert_eq!(hist.get(2012), 1);
        assert_eq!(hist.total(), 3);
    }

    #[test]
    fn empty_records_give_empty_histograms() {
        assert!(movies_per_year(&[]).is_empty());
        assert!(cast_size_histogram(&[]).is_empty());
    }

    #[test]
    fn cast_size_histogram_counts_batman_casts() {
        let (records, _) = parse_text(BATMAN);
        let hist = cast_size_histogram(&records);
        assert_eq!(hist.get(10), 1);
        assert_eq!(hist.get(7), 1);
        assert_eq!(hist.get(8), 1);
    }

    #[test]
    fn top_by_cast_size_takes_largest_first() {
        let (records, _) = parse_text(BATMAN);
        let top = top_by_cast_size(&records, 1);
        assert_eq!(top, vec![("Batman Begins".to_string(), 10)]);
        assert!(top_by_cast_size(&records, 0).is_empty());
        // n beyond the record count returns everything.
        assert_eq!(top_by_cast_size(&records, 10).len(), 3);
    }

    #[test]
    fn top_by_cast_size_breaks_ties_by_title() {
        let mk = |t: &str, c: usize| MovieRecord {
            title: t.into(),
            cast: (0..c).map(|i| format!("a{i}")).collect(),
            year: Some(2000),
        };
        let records = vec![mk("Zeta", 3), mk("Alpha", 3), mk("Mid", 5)];
        let top = top_by_cast_size(&records, 3);
        assert_eq!(
            top,
            vec![
                ("Mid".to_string(), 5),
                ("Alpha".to_string(), 3),
                ("Zeta".to_string(), 3)
            ]
        );
    }

    #[test]
    fn decade_filter_uses_year_arithmetic() {
        let (records, _) = parse_text(BATMAN);
        let d2000 = filter_by_decade(&records, 2000);
        assert_eq!(d2000.len(), 2);
        assert_eq!(d2000[0].title, "Batman Begins");
        assert_eq!(d2000[1].title, "The Dark Knight");
        assert_eq!(filter_by_decade(&records, 2010).len(), 1);
        assert!(filter_by_decade(&records, 1950).is_empty());
    }
}
