//! Length, Algorithmic and Speed prior weights over the outputs of a sweep.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::harness::{AggregateStore, OutputRecord};
use crate::logspace::log2_sum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PriorKind {
    Length,
    Algorithmic,
    Speed,
}

impl PriorKind {
    pub const ALL: [PriorKind; 3] = [PriorKind::Length, PriorKind::Algorithmic, PriorKind::Speed];

    pub fn name(self) -> &'static str {
        match self {
            PriorKind::Length => "length",
            PriorKind::Algorithmic => "algorithmic",
            PriorKind::Speed => "speed",
        }
    }
}

impl fmt::Display for PriorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PriorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "length" | "l" => Ok(PriorKind::Length),
            "algorithmic" | "solomonoff" | "m" => Ok(PriorKind::Algorithmic),
            "speed" | "s" => Ok(PriorKind::Speed),
            other => Err(Error::Config(format!("unknown prior `{other}`"))),
        }
    }
}

/// Unnormalized `log2` prior weight of one output.
///
/// * Length: `-(2·|x| + 2)` with `|x|` in output symbols.
/// * Algorithmic: `log2 Σ_p 2^{-|p|}` over the producers of `x`.
/// * Speed: `log2 Σ_p 2^{-(i + |p|)}` with `i = |p| + ceil(log2 τ_p)`, the
///   first phase in which `p` has been given enough steps.
pub fn raw_log_weight(prior: PriorKind, record: &OutputRecord) -> f64 {
    match prior {
        PriorKind::Length => -(2.0 * record.output_length as f64 + 2.0),
        PriorKind::Algorithmic => record.log2_mass_m(),
        PriorKind::Speed => record.log2_mass_s(),
    }
}

/// Normalized weights, summing to one over the outputs of one store.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub prior: PriorKind,
    pub weights: BTreeMap<Vec<u8>, f64>,
}

impl WeightTable {
    pub fn get(&self, output: &[u8]) -> f64 {
        self.weights.get(output).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.weights.values().sum()
    }
}

pub fn normalize(prior: PriorKind, store: &AggregateStore) -> Result<WeightTable> {
    if store.is_empty() {
        return Err(Error::EmptyStore);
    }
    let raw: Vec<f64> = store.records.values().map(|r| raw_log_weight(prior, r)).collect();
    let log_z = log2_sum(&raw);
    let weights = store
        .records
        .keys()
        .zip(&raw)
        .map(|(k, &lw)| (k.clone(), (lw - log_z).exp2()))
        .collect();
    Ok(WeightTable { prior, weights })
}
