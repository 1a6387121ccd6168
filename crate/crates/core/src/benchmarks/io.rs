use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::benchmarks::rc::{RcDataset, RcForcing, RcParameters};
use crate::benchmarks::synth::SyntheticSpec;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Header of the dataset CSV format. One row per sample, UTF-8, '.' decimal
/// separator.
pub const DATASET_CSV_HEADER: &str = "t_s,T_out,Q_in,Q_c,Q_solar,T_in_obs";

/// Companion file describing how a synthetic dataset was generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetMetadata<T> {
    pub truth: RcParameters<T>,
    pub generation: SyntheticSpec<T>,
}

/// Path of the metadata file that accompanies a dataset CSV:
/// `foo.csv -> foo.meta.json`.
pub fn metadata_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("meta.json")
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes the dataset rows. Float formatting uses the shortest
/// round-trippable representation, so identical datasets always produce
/// byte-identical files.
pub fn write_dataset_csv<T: Real>(dataset: &RcDataset<T>, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str(DATASET_CSV_HEADER);
    out.push('\n');
    let forcing = &dataset.forcing;
    for i in 0..dataset.len() {
        let mut line = String::new();
        write!(
            line,
            "{},{},{},{},{},{}",
            forcing.timestamps()[i],
            forcing.t_out()[i],
            forcing.q_in()[i],
            forcing.q_c()[i],
            forcing.q_solar()[i],
            dataset.t_in_obs[i],
        )
        .expect("writing to string cannot fail");
        out.push_str(&line);
        out.push('\n');
    }
    fs::write(path, out).map_err(io_err(path))
}

/// Reads a dataset CSV. The returned dataset has no attached truth; use
/// [`read_dataset`] to also pick up a companion metadata file.
pub fn read_dataset_csv<T: Real>(path: &Path) -> Result<RcDataset<T>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines().enumerate();

    let (_, header) = lines.next().ok_or_else(|| Error::MalformedData {
        path: path.to_path_buf(),
        line: 1,
        message: "empty file".into(),
    })?;
    if header.trim() != DATASET_CSV_HEADER {
        return Err(Error::MalformedData {
            path: path.to_path_buf(),
            line: 1,
            message: format!("expected header '{DATASET_CSV_HEADER}', got '{header}'"),
        });
    }

    let mut columns: [Vec<T>; 6] = Default::default();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::MalformedData {
                path: path.to_path_buf(),
                line: idx + 1,
                message: format!("expected 6 fields, got {}", fields.len()),
            });
        }
        for (col, field) in columns.iter_mut().zip(&fields) {
            let value: f64 = field.parse().map_err(|e| Error::MalformedData {
                path: path.to_path_buf(),
                line: idx + 1,
                message: format!("bad number '{field}': {e}"),
            })?;
            col.push(T::from_f64(value).ok_or_else(|| Error::MalformedData {
                path: path.to_path_buf(),
                line: idx + 1,
                message: format!("value {value} not representable in scalar type"),
            })?);
        }
    }

    let [t_s, t_out, q_in, q_c, q_solar, t_in_obs] = columns;
    let forcing = RcForcing::new(t_s, t_out, q_in, q_c, q_solar)?;
    RcDataset::new(forcing, t_in_obs, None)
}

/// Writes the dataset CSV plus its companion metadata file. The dataset must
/// carry its generating truth.
pub fn write_dataset_with_metadata<T: Real + Serialize>(
    dataset: &RcDataset<T>,
    generation: &SyntheticSpec<T>,
    csv_path: &Path,
) -> Result<()> {
    let truth = dataset.truth.ok_or_else(|| {
        Error::InvalidParameter("dataset has no truth parameters to record".into())
    })?;
    write_dataset_csv(dataset, csv_path)?;
    let meta = DatasetMetadata {
        truth,
        generation: *generation,
    };
    let meta_path = metadata_path(csv_path);
    let json = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    fs::write(&meta_path, json + "\n").map_err(io_err(&meta_path))
}

/// Reads the metadata companion of a dataset CSV.
pub fn read_metadata<T: Real + DeserializeOwned>(csv_path: &Path) -> Result<DatasetMetadata<T>> {
    let meta_path = metadata_path(csv_path);
    let text = fs::read_to_string(&meta_path).map_err(io_err(&meta_path))?;
    serde_json::from_str(&text).map_err(|e| Error::MalformedData {
        path: meta_path.clone(),
        line: e.line(),
        message: e.to_string(),
    })
}

/// Reads a dataset CSV and, when the companion metadata file exists, attaches
/// the recorded truth parameters.
pub fn read_dataset<T: Real + DeserializeOwned>(path: &Path) -> Result<RcDataset<T>> {
    let mut dataset = read_dataset_csv(path)?;
    if metadata_path(path).exists() {
        let meta = read_metadata::<T>(path)?;
        dataset.truth = Some(meta.truth);
    }
    Ok(dataset)
}
