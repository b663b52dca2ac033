//! Empirical complexity-vs-runtime profiles and their state at a cutoff.

use crate::harness::{FrontierPoint, OutputRecord};

/// Boundary of the empirical profile of one output: runtimes strictly
/// increase and description bits strictly decrease along `drops`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalProfile {
    pub output: Vec<u8>,
    pub output_length: u64,
    pub drops: Vec<FrontierPoint>,
    pub log2_mass_m: f64,
    pub log2_mass_s: f64,
}

impl EmpiricalProfile {
    pub fn first_runtime(&self) -> u64 {
        self.drops[0].runtime
    }

    pub fn last_runtime(&self) -> u64 {
        self.drops[self.drops.len() - 1].runtime
    }

    /// Shortest description found at any runtime.
    pub fn final_bits(&self) -> f64 {
        self.drops[self.drops.len() - 1].bits
    }

    /// Index of the last drop with runtime `<= limit`, if any.
    fn last_drop_at(&self, limit: f64) -> Option<usize> {
        let n = self.drops.partition_point(|p| (p.runtime as f64) <= limit);
        n.checked_sub(1)
    }
}

pub fn build_profile(record: &OutputRecord) -> EmpiricalProfile {
    debug_assert!(record.check_invariants().is_ok());
    EmpiricalProfile {
        output: record.output.clone(),
        output_length: record.output_length,
        drops: record.frontier.clone(),
        log2_mass_m: record.log2_mass_m(),
        log2_mass_s: record.log2_mass_s(),
    }
}

/// What an observer who stopped at runtime `cutoff` has seen, and what was
/// still ahead of them.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffView {
    pub cutoff: u64,
    pub current_bits: f64,
    /// Steps since the last drop at or before the cutoff.
    pub stagnation: u64,
    /// Compression still to come: `current_bits - final_bits`.
    pub remaining_bits: f64,
    /// Steps from the last observed drop to the final drop.
    pub final_offset: u64,
    /// Progress made by runtime `W · cutoff`, one entry per window factor.
    pub window_bits: Vec<f64>,
}

/// `None` before the first program producing the output has halted.
pub fn evaluate_at_cutoff(profile: &EmpiricalProfile, cutoff: u64, windows: &[f64]) -> Option<CutoffView> {
    debug_assert!(cutoff >= 1);
    let seen = profile.last_drop_at(cutoff as f64)?;
    let last = profile.drops[seen];
    let window_bits = windows
        .iter()
        .map(|&w| {
            let reach = profile.last_drop_at(w * cutoff as f64).unwrap_or(seen);
            last.bits - profile.drops[reach].bits
        })
        .collect();
    Some(CutoffView {
        cutoff,
        current_bits: last.bits,
        stagnation: cutoff - last.runtime,
        remaining_bits: last.bits - profile.final_bits(),
        final_offset: profile.last_runtime() - last.runtime,
        window_bits,
    })
}
