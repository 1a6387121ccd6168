use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use beetle_core::Algorithm;

use crate::config::variant_label;
use crate::experiment::ExperimentReport;
use crate::stats::{summarize, ExperimentSummary};
use crate::HarnessError;

pub const TRIALS_CSV_HEADER: &str = "algorithm,k,seed,f_best,iterations,evaluations,wall_time_ms";

pub const TRIALS_CSV_NAME: &str = "trials.csv";
pub const SUMMARY_JSON_NAME: &str = "summary.json";
pub const CONFIG_SNAPSHOT_NAME: &str = "config_snapshot.toml";

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes `trials.csv`, `summary.json` and `config_snapshot.toml` into
/// `out_dir` (created if missing) and returns the paths written. Identical
/// reports always produce byte-identical files.
pub fn write_outputs(
    report: &ExperimentReport,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;

    let trials_path = out_dir.join(TRIALS_CSV_NAME);
    let mut csv = String::new();
    csv.push_str(TRIALS_CSV_HEADER);
    csv.push('\n');
    for variant in &report.variants {
        for trial in &variant.trials {
            if let Some(r) = trial.record() {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    r.algorithm, r.k, r.seed, r.f_best_final, r.iterations, r.evaluations,
                    r.wall_time_ms
                )
                .expect("writing to string cannot fail");
            }
        }
    }
    fs::write(&trials_path, csv).map_err(io_err(&trials_path))?;

    let summary_path = out_dir.join(SUMMARY_JSON_NAME);
    let json = serde_json::to_string_pretty(&report.summary).expect("summary serializes");
    fs::write(&summary_path, json + "\n").map_err(io_err(&summary_path))?;

    let snapshot_path = out_dir.join(CONFIG_SNAPSHOT_NAME);
    let toml_text =
        toml::to_string_pretty(&report.config).map_err(|e| HarnessError::Config(e.to_string()))?;
    fs::write(&snapshot_path, toml_text).map_err(io_err(&snapshot_path))?;

    Ok(vec![trials_path, summary_path, snapshot_path])
}

/// One parsed row of `trials.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub algorithm: Algorithm,
    pub k: usize,
    pub seed: u64,
    pub f_best: f64,
    pub iterations: u64,
    pub evaluations: u64,
    pub wall_time_ms: u64,
}

impl TrialRow {
    pub fn label(&self) -> String {
        variant_label(self.algorithm, self.k)
    }
}

pub fn read_trials_csv(path: &Path) -> Result<Vec<TrialRow>, HarnessError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines().enumerate();

    let malformed = |line: usize, message: String| HarnessError::Parse {
        path: path.to_path_buf(),
        message: format!("line {line}: {message}"),
    };

    let (_, header) = lines
        .next()
        .ok_or_else(|| malformed(1, "empty file".into()))?;
    if header.trim() != TRIALS_CSV_HEADER {
        return Err(malformed(
            1,
            format!("expected header '{TRIALS_CSV_HEADER}', got '{header}'"),
        ));
    }

    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(malformed(
                idx + 1,
                format!("expected 7 fields, got {}", fields.len()),
            ));
        }
        fn parse<T: FromStr>(
            field: &str,
            what: &str,
            err: impl Fn(String) -> HarnessError,
        ) -> Result<T, HarnessError>
        where
            T::Err: std::fmt::Display,
        {
            field
                .parse()
                .map_err(|e| err(format!("bad {what} '{field}': {e}")))
        }
        let err = |message| malformed(idx + 1, message);
        rows.push(TrialRow {
            algorithm: Algorithm::from_str(fields[0])
                .map_err(|e| malformed(idx + 1, e.to_string()))?,
            k: parse(fields[1], "k", err)?,
            seed: parse(fields[2], "seed", err)?,
            f_best: parse(fields[3], "f_best", err)?,
            iterations: parse(fields[4], "iterations", err)?,
            evaluations: parse(fields[5], "evaluations", err)?,
            wall_time_ms: parse(fields[6], "wall_time_ms", err)?,
        });
    }
    Ok(rows)
}

/// Groups rows by variant label, preserving first-appearance order (which is
/// the variant order the experiment ran in).
pub fn group_rows(rows: &[TrialRow]) -> Vec<(String, Vec<f64>)> {
    let mut groups: Vec<(String, Vec<f64>)> = Vec::new();
    for row in rows {
        let label = row.label();
        match groups.iter_mut().find(|(l, _)| *l == label) {
            Some((_, values)) => values.push(row.f_best),
            None => groups.push((label, vec![row.f_best])),
        }
    }
    groups
}

/// Recomputes the summary document from a `trials.csv`, as written by
/// [`write_outputs`].
pub fn summarize_trials_csv(
    path: &Path,
    bin_count: usize,
) -> Result<ExperimentSummary, HarnessError> {
    let rows = read_trials_csv(path)?;
    if rows.is_empty() {
        return Err(HarnessError::Parse {
            path: path.to_path_buf(),
            message: "no trial rows".into(),
        });
    }
    summarize(&group_rows(&rows), bin_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentConfig;
    use crate::experiment::run_experiment;

    fn tiny_report() -> ExperimentReport {
        let config = ExperimentConfig::from_toml_str(
            r#"
            [problem]
            kind = "sphere"
            dimension = 2

            [stopping]
            max_iterations = 40

            [experiment]
            variants = [{ algorithm = "bas" }, { algorithm = "bsas", k = 2 }]
            trials = 3
            base_seed = 5
            bin_count = 6
            "#,
        )
        .unwrap();
        run_experiment(&config).unwrap()
    }

    #[test]
    fn outputs_round_trip_and_are_byte_stable() {
        let report = tiny_report();
        let dir = tempfile::tempdir().unwrap();
        let first = write_outputs(&report, dir.path()).unwrap();
        let bytes: Vec<Vec<u8>> = first.iter().map(|p| fs::read(p).unwrap()).collect();

        // Same report, second write: byte-identical files.
        let dir2 = tempfile::tempdir().unwrap();
        let second = write_outputs(&report, dir2.path()).unwrap();
        for (a, b) in first.iter().zip(&second) {
            assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
        }

        // trials.csv: header + 6 rows.
        let csv = String::from_utf8(bytes[0].clone()).unwrap();
        assert_eq!(csv.lines().count(), 1 + 6);
        assert_eq!(csv.lines().next().unwrap(), TRIALS_CSV_HEADER);

        // summary.json parses back to the exact same statistics.
        let parsed: ExperimentSummary =
            serde_json::from_slice(&bytes[1]).unwrap();
        assert_eq!(parsed, report.summary);

        // config snapshot parses back to the exact same config.
        let snapshot = String::from_utf8(bytes[2].clone()).unwrap();
        let config: ExperimentConfig = toml::from_str(&snapshot).unwrap();
        assert_eq!(config, report.config);
    }

    #[test]
    fn summary_recomputed_from_csv_matches() {
        let report = tiny_report();
        let dir = tempfile::tempdir().unwrap();
        write_outputs(&report, dir.path()).unwrap();

        let recomputed = summarize_trials_csv(
            &dir.path().join(TRIALS_CSV_NAME),
            report.config.experiment.bin_count,
        )
        .unwrap();
        assert_eq!(recomputed, report.summary);
    }

    #[test]
    fn trials_csv_rows_parse_back() {
        let report = tiny_report();
        let dir = tempfile::tempdir().unwrap();
        write_outputs(&report, dir.path()).unwrap();
        let rows = read_trials_csv(&dir.path().join(TRIALS_CSV_NAME)).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].algorithm, Algorithm::Bas);
        assert_eq!(rows[0].k, 1);
        assert_eq!(rows[3].algorithm, Algorithm::Bsas);
        assert_eq!(rows[3].k, 2);
        let expected: Vec<f64> = report.variants[0]
            .trials
            .iter()
            .map(|t| t.record().unwrap().f_best_final)
            .collect();
        let got: Vec<f64> = rows[..3].iter().map(|r| r.f_best).collect();
        assert_eq!(expected, got);
    }

    #[test]
    fn malformed_trials_csv_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trials.csv");
        fs::write(&path, "nope\n").unwrap();
        assert!(read_trials_csv(&path).is_err());
        fs::write(&path, format!("{TRIALS_CSV_HEADER}\nbas,1,0,hello,1,1,1\n")).unwrap();
        assert!(read_trials_csv(&path).is_err());
        fs::write(&path, format!("{TRIALS_CSV_HEADER}\nunknown,1,0,1.0,1,1,1\n")).unwrap();
        assert!(read_trials_csv(&path).is_err());
    }
}
