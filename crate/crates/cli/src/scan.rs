//! Resumable (X, Y)-grid scan: mean square, prediction, ratio, persisted as
//! CSV plus a JSONL run log, checkpointed per point.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use meansq_core::charsum::mean_square;
use meansq_core::euler::{constants, predict, Constants};
use serde::{Deserialize, Serialize};

use crate::config::{derive_y, ExperimentConfig};

/// One completed scan point. Checkpoint, JSONL log and CSV all carry exactly
/// these numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub key: String,
    pub x: f64,
    pub theta: f64,
    pub y_raw: f64,
    pub y: f64,
    pub s: f64,
    pub d_count: u64,
    pub term1: f64,
    pub term2: f64,
    pub predicted: f64,
    pub ratio: f64,
    pub seconds: f64,
    /// Unix timestamp of completion.
    pub timestamp: u64,
    pub version: String,
    // config snapshot
    pub window_key: String,
    pub prime_cutoff: u64,
    pub a_max: u64,
    pub threads: usize,
}

pub const CSV_HEADER: &str = "X,Y,S,term1,term2,predicted,ratio,d_count,seconds";

pub fn checkpoint_key(x: f64, theta: f64, window_key: &str) -> String {
    format!("{:016x}|{:016x}|{window_key}", x.to_bits(), theta.to_bits())
}

/// Load completed points from an append-only checkpoint file. Unparseable
/// trailing lines (a write cut short) are ignored.
pub fn load_checkpoint(path: &Path) -> HashMap<String, RunRecord> {
    let mut map = HashMap::new();
    if let Ok(text) = fs::read_to_string(path) {
        for line in text.lines() {
            if let Ok(rec) = serde_json::from_str::<RunRecord>(line) {
                map.insert(rec.key.clone(), rec);
            }
        }
    }
    map
}

fn append_checkpoint(path: &Path, rec: &RunRecord) -> anyhow::Result<()> {
    let mut f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening checkpoint {}", path.display()))?;
    writeln!(f, "{}", serde_json::to_string(rec)?)?;
    f.flush()?;
    Ok(())
}

pub fn csv_line(r: &RunRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.x, r.y, r.s, r.term1, r.term2, r.predicted, r.ratio, r.d_count, r.seconds
    )
}

/// Run the scan described by `config`, resuming from its checkpoint.
/// Returns the records in `x_values` order.
pub fn run_scan(config: &ExperimentConfig, quiet: bool) -> anyhow::Result<Vec<RunRecord>> {
    config.validate()?;
    let phi = config.phi.build()?;
    let w = config.w.build()?;
    let window_key = config.window_key()?;
    let consts: Constants = constants(&phi, &w, config.prime_cutoff, config.a_max)?;
    let threads = config.effective_threads();
    let checkpoint_path = Path::new(&config.checkpoint);
    let mut done = load_checkpoint(checkpoint_path);

    let mut records = Vec::with_capacity(config.x_values.len());
    for &x in &config.x_values {
        let key = checkpoint_key(x, config.theta, &window_key);
        if let Some(rec) = done.remove(&key) {
            if !quiet {
                println!("cached  {}", csv_line(&rec));
            }
            records.push(rec);
            continue;
        }
        let (y_raw, y) = derive_y(x, config.theta);
        let pred = predict(consts.c1, consts.c2, x, y)?;
        let ms = mean_square(x, y, &phi, &w, threads)?;
        let ratio = ms.value / pred.total;
        let rec = RunRecord {
            key,
            x,
            theta: config.theta,
            y_raw,
            y,
            s: ms.value,
            d_count: ms.d_count,
            term1: pred.term1,
            term2: pred.term2,
            predicted: pred.total,
            ratio,
            seconds: ms.elapsed.as_secs_f64(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            version: env!("CARGO_PKG_VERSION").to_string(),
            window_key: window_key.clone(),
            prime_cutoff: config.prime_cutoff,
            a_max: config.a_max,
            threads,
        };
        append_checkpoint(checkpoint_path, &rec)?;
        if !quiet {
            println!("computed {}", csv_line(&rec));
        }
        records.push(rec);
    }

    write_outputs(&config.output, &records)?;
    Ok(records)
}

/// Write `<output>.csv` and `<output>.jsonl` from scratch; both encode the
/// same numbers with shortest round-trip formatting.
pub fn write_outputs(stem: &str, records: &[RunRecord]) -> anyhow::Result<()> {
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in records {
        csv.push_str(&csv_line(r));
        csv.push('\n');
    }
    fs::write(format!("{stem}.csv"), csv)?;
    let mut log = String::new();
    for r in records {
        log.push_str(&serde_json::to_string(r)?);
        log.push('\n');
    }
    fs::write(format!("{stem}.jsonl"), log)?;
    Ok(())
}
