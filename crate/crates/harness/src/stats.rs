use serde::{Deserialize, Serialize};

use crate::HarnessError;

/// Distribution summary of one variant's final objective values, binned on
/// the histogram grid shared by all variants of the experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantStats {
    pub label: String,
    pub count: usize,
    pub mean: f64,
    /// Population standard deviation (divides by n).
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    pub histogram: Vec<usize>,
}

/// Per-variant statistics over a shared equal-width binning that spans the
/// global value range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub bin_count: usize,
    pub bin_lower: f64,
    pub bin_upper: f64,
    /// `bin_count + 1` edges; bins are half-open except the last, which
    /// includes its upper edge.
    pub bin_edges: Vec<f64>,
    pub variants: Vec<VariantStats>,
}

/// Computes per-variant mean/sd/min/max plus histograms over shared bins.
/// Groups must be nonempty.
pub fn summarize(
    groups: &[(String, Vec<f64>)],
    bin_count: usize,
) -> Result<ExperimentSummary, HarnessError> {
    if groups.is_empty() {
        return Err(HarnessError::Config("no variants to summarize".into()));
    }
    if bin_count == 0 {
        return Err(HarnessError::Config("bin_count must be positive".into()));
    }
    for (label, values) in groups {
        if values.is_empty() {
            return Err(HarnessError::Config(format!(
                "variant '{label}' has no values to summarize"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(HarnessError::Config(format!(
                "variant '{label}' contains non-finite values"
            )));
        }
    }

    let lo = groups
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .fold(f64::INFINITY, f64::min);
    let hi = groups
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .fold(f64::NEG_INFINITY, f64::max);

    let bin_edges: Vec<f64> = (0..=bin_count)
        .map(|i| lo + (hi - lo) * i as f64 / bin_count as f64)
        .collect();
    let width = (hi - lo) / bin_count as f64;

    let bin_of = |v: f64| -> usize {
        if width == 0.0 {
            0
        } else {
            (((v - lo) / width) as usize).min(bin_count - 1)
        }
    };

    let variants = groups
        .iter()
        .map(|(label, values)| {
            let n = values.len() as f64;
            let mean = values.iter().sum::<f64>() / n;
            let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
            let mut histogram = vec![0usize; bin_count];
            for &v in values {
                histogram[bin_of(v)] += 1;
            }
            VariantStats {
                label: label.clone(),
                count: values.len(),
                mean,
                std_dev: variance.sqrt(),
                min: values.iter().copied().fold(f64::INFINITY, f64::min),
                max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                histogram,
            }
        })
        .collect();

    Ok(ExperimentSummary {
        bin_count,
        bin_lower: lo,
        bin_upper: hi,
        bin_edges,
        variants,
    })
}

/// Standard error of the difference between two variant means:
/// `sqrt(sd_a^2 / n_a + sd_b^2 / n_b)`.
pub fn pooled_standard_error(a: &VariantStats, b: &VariantStats) -> f64 {
    (a.std_dev * a.std_dev / a.count as f64 + b.std_dev * b.std_dev / b.count as f64).sqrt()
}
