//! Batch inequality search with a persistent, resumable JSONL log.
//!
//! One line per group, appended in the deterministic enumeration order even
//! when workers finish out of order. elapsed_ms is the only field that can
//! differ between identical runs. A CSV summary and, when violations exist,
//! a sibling violations file are regenerated from the full log after every
//! run.

use std::collections::HashSet;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sgb_core::{all_subgroups_with_cap, build_sgb, check_hv, zagreb};

use crate::families::{enumerate_groups, GroupSpec, SearchConfig};
use crate::{io_err, Error, Result};

// Groups per parallel batch; small enough to keep appends flowing, large
// enough to amortize the fork/join.
const CHUNK: usize = 32;

/// One fully analyzed group, one JSONL line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub group_descriptor: String,
    pub order: i64,
    pub lattice_size: i64,
    pub m1: i64,
    pub m2: i64,
    /// numerator of |L(G)| P - 1, in lowest terms
    pub criterion_numerator: i64,
    /// denominator of |L(G)| P - 1, in lowest terms, always positive
    pub criterion_denominator: i64,
    pub hv_holds: bool,
    pub elapsed_ms: u64,
}

/// A group the run could not analyze; logged instead of crashing the batch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkippedRecord {
    pub group_descriptor: String,
    pub skipped: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Row {
    Record(SearchRecord),
    Skipped(SkippedRecord),
}

impl Row {
    fn descriptor(&self) -> &str {
        match self {
            Row::Record(r) => &r.group_descriptor,
            Row::Skipped(s) => &s.group_descriptor,
        }
    }
}

/// What a search run did and where the artifacts live.
#[derive(Debug, Clone)]
pub struct SearchSummary {
    /// rows computed by this run (skipped rows included)
    pub groups_tested: usize,
    /// skipped rows written by this run
    pub skipped: usize,
    /// violations across the whole log, not just this run
    pub violations_found: usize,
    pub output_path: PathBuf,
    pub csv_path: PathBuf,
    /// present only when violations exist
    pub violations_path: Option<PathBuf>,
}

fn to_i64(value: i128, what: &str) -> Result<i64> {
    i64::try_from(value).map_err(|_| {
        Error::Core(sgb_core::Error::InternalInconsistency(format!(
            "{what} = {value} does not fit the 64-bit wire format"
        )))
    })
}

fn to_json(row: &impl Serialize) -> Result<String> {
    serde_json::to_string(row).map_err(|e| {
        Error::Core(sgb_core::Error::InternalInconsistency(format!(
            "serialize: {e}"
        )))
    })
}

// Analyze one group into a serialized JSONL line. Cap overruns become
// skipped rows; anything else propagates.
fn analyze_item(spec: &GroupSpec, max_order: usize, cap: usize) -> Result<(String, bool)> {
    let descriptor = spec.descriptor();
    let order = spec.order();
    if order > max_order || order > cap {
        let bound = max_order.min(cap);
        let row = SkippedRecord {
            group_descriptor: descriptor,
            skipped: format!("resource-limit: order {order} above the bound {bound}"),
        };
        return Ok((to_json(&row)?, true));
    }

    let start = Instant::now();
    let group = spec.build().map_err(Error::Core)?;
    let lattice = match all_subgroups_with_cap(&group, cap) {
        Ok(lattice) => lattice,
        Err(sgb_core::Error::ResourceLimit(msg)) => {
            let row = SkippedRecord {
                group_descriptor: descriptor,
                skipped: format!("resource-limit: {msg}"),
            };
            return Ok((to_json(&row)?, true));
        }
        Err(e) => return Err(Error::Core(e)),
    };
    let graph = build_sgb(&group, &lattice).map_err(Error::Core)?;
    let (m1, m2) = zagreb(&graph).map_err(Error::Core)?;
    let verdict = check_hv(&graph).map_err(Error::Core)?;

    let record = SearchRecord {
        group_descriptor: descriptor,
        order: to_i64(order as i128, "order")?,
        lattice_size: to_i64(lattice.len() as i128, "lattice_size")?,
        m1: to_i64(m1, "m1")?,
        m2: to_i64(m2, "m2")?,
        criterion_numerator: to_i64(*verdict.criterion.numer(), "criterion numerator")?,
        criterion_denominator: to_i64(*verdict.criterion.denom(), "criterion denominator")?,
        hv_holds: verdict.holds,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    Ok((to_json(&record)?, false))
}

fn parse_row(line: &str, path: &Path) -> Result<Row> {
    serde_json::from_str(line).map_err(|e| {
        Error::Usage(format!(
            "{} holds a line that is not a search record ({e}); refusing to resume over it",
            path.display()
        ))
    })
}

// Post-run self check: a record that fails its own invariants means the
// writer and the math disagree somewhere.
fn check_record(record: &SearchRecord) -> Result<()> {
    let sign_ok = record.hv_holds == (record.criterion_numerator >= 0);
    let zagreb_ok = record.m1 - record.m2 == record.order * record.order;
    if !sign_ok || !zagreb_ok {
        return Err(Error::Core(sgb_core::Error::InternalInconsistency(
            format!(
                "record for {} violates its invariants: {record:?}",
                record.group_descriptor
            ),
        )));
    }
    Ok(())
}

/// Runs the whole search: enumerate, skip already-logged descriptors when
/// resuming, analyze pending groups in parallel, append in order, then
/// regenerate the CSV summary and the violations file.
pub fn run_search(config: &SearchConfig, cap: usize) -> Result<SearchSummary> {
    if config.max_order == 0 {
        return Err(Error::Usage("max_order must be at least 1".into()));
    }
    if config.max_order > cap {
        return Err(Error::Usage(format!(
            "max_order {} exceeds the order cap {cap} (raise SGB_MAX_ORDER to allow it)",
            config.max_order
        )));
    }

    let specs = enumerate_groups(config)?;
    let out = &config.output_path;

    let mut lines: Vec<String> = Vec::new();
    if config.resume && out.exists() {
        let text = fs::read_to_string(out).map_err(io_err(out.clone()))?;
        lines.extend(
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .map(String::from),
        );
    }
    let mut seen = HashSet::new();
    for line in &lines {
        seen.insert(parse_row(line, out)?.descriptor().to_string());
    }
    let pending: Vec<&GroupSpec> = specs
        .iter()
        .filter(|spec| !seen.contains(&spec.descriptor()))
        .collect();

    let file = fs::OpenOptions::new()
        .create(true)
        .append(config.resume)
        .write(true)
        .truncate(!config.resume)
        .open(out)
        .map_err(io_err(out.clone()))?;
    let mut writer = BufWriter::new(file);

    let mut skipped = 0usize;
    for chunk in pending.chunks(CHUNK) {
        let results: Vec<Result<(String, bool)>> = chunk
            .par_iter()
            .map(|spec| analyze_item(spec, config.max_order, cap))
            .collect();
        for result in results {
            let (line, was_skipped) = result?;
            skipped += usize::from(was_skipped);
            writer
                .write_all(line.as_bytes())
                .map_err(io_err(out.clone()))?;
            writer.write_all(b"\n").map_err(io_err(out.clone()))?;
            lines.push(line);
        }
        writer.flush().map_err(io_err(out.clone()))?;
    }
    drop(writer);

    // full-log pass: invariants, CSV, violations
    let mut records = Vec::new();
    let mut violation_lines = Vec::new();
    for line in &lines {
        if let Row::Record(record) = parse_row(line, out)? {
            check_record(&record)?;
            if !record.hv_holds {
                violation_lines.push(line.clone());
            }
            records.push(record);
        }
    }

    let csv_path = out.with_extension("csv");
    write_csv(&csv_path, &records)?;

    let violations_path = out.with_extension("violations.jsonl");
    let violations_found = violation_lines.len();
    if violations_found > 0 {
        fs::write(&violations_path, violation_lines.join("\n") + "\n")
            .map_err(io_err(violations_path.clone()))?;
    }

    Ok(SearchSummary {
        groups_tested: pending.len(),
        skipped,
        violations_found,
        output_path: out.clone(),
        csv_path,
        violations_path: (violations_found > 0).then_some(violations_path),
    })
}

fn write_csv(path: &Path, records: &[SearchRecord]) -> Result<()> {
    let file = fs::File::create(path).map_err(io_err(path.to_path_buf()))?;
    let mut writer = csv::Writer::from_writer(file);
    let as_io = |e: csv::Error| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::other(e),
    };
    writer
        .write_record([
            "descriptor",
            "order",
            "lattice_size",
            "m1",
            "m2",
            "criterion",
            "hv_holds",
        ])
        .map_err(as_io)?;
    for r in records {
        writer
            .write_record([
                r.group_descriptor.clone(),
                r.order.to_string(),
                r.lattice_size.to_string(),
                r.m1.to_string(),
                r.m2.to_string(),
                format!("{}/{}", r.criterion_numerator, r.criterion_denominator),
                r.hv_holds.to_string(),
            ])
            .map_err(as_io)?;
    }
    writer.flush().map_err(io_err(path.to_path_buf()))?;
    Ok(())
}
