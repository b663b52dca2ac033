use std::collections::BTreeMap;

use crate::logspace::log2_weighted_sum;
use crate::machines::MachineKind;

/// One point of a (runtime, description bits) Pareto frontier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontierPoint {
    pub runtime: u64,
    pub bits: f64,
}

impl FrontierPoint {
    pub fn new(runtime: u64, bits: f64) -> Self {
        FrontierPoint { runtime, bits }
    }
}

/// Insert into a frontier sorted by increasing runtime and decreasing bits,
/// keeping only Pareto-minimal points. Returns whether the point was kept.
pub fn pareto_insert(frontier: &mut Vec<FrontierPoint>, point: FrontierPoint) -> bool {
    let idx = frontier.partition_point(|p| p.runtime <= point.runtime);
    if idx > 0 && frontier[idx - 1].bits <= point.bits {
        return false;
    }
    // a point at the same runtime with more bits is now dominated
    let lo = if idx > 0 && frontier[idx - 1].runtime == point.runtime {
        idx - 1
    } else {
        idx
    };
    let hi = idx + frontier[idx..].partition_point(|p| p.bits >= point.bits);
    frontier.splice(lo..hi, std::iter::once(point));
    true
}

/// `ceil(log2 runtime)`, the smallest `j` with `2^j >= runtime`.
pub fn ceil_log2(runtime: u64) -> u32 {
    debug_assert!(runtime >= 1);
    if runtime <= 1 {
        0
    } else {
        64 - (runtime - 1).leading_zeros()
    }
}

/// Aggregate over every halting program that printed one particular output.
///
/// Prior masses are derived from an exact histogram of producers keyed by
/// `(symbol length, ceil(log2 runtime))`, so merging records in any order
/// gives bit-identical masses.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub output: Vec<u8>,
    /// Output length in the machine's output symbols.
    pub output_length: u64,
    pub frontier: Vec<FrontierPoint>,
    pub producer_count: u64,
    machine: MachineKind,
    terms: BTreeMap<(u32, u32), u64>,
}

impl OutputRecord {
    pub fn new(machine: MachineKind, output: Vec<u8>, output_length: u64) -> Self {
        OutputRecord {
            output,
            output_length,
            frontier: Vec::new(),
            producer_count: 0,
            machine,
            terms: BTreeMap::new(),
        }
    }

    pub fn machine(&self) -> MachineKind {
        self.machine
    }

    /// Fold in one producer of `symbol_length` symbols that halted after
    /// `runtime` steps.
    pub fn add_producer(&mut self, symbol_length: u32, runtime: u64) {
        self.add_terms(symbol_length, ceil_log2(runtime), 1);
        pareto_insert(
            &mut self.frontier,
            FrontierPoint::new(runtime, self.machine.bits_for_length(symbol_length)),
        );
    }

    pub(crate) fn add_terms(&mut self, symbol_length: u32, ceil_log2_runtime: u32, count: u64) {
        *self.terms.entry((symbol_length, ceil_log2_runtime)).or_default() += count;
        self.producer_count += count;
    }

    pub fn merge(&mut self, other: &OutputRecord) {
        debug_assert_eq!(self.output, other.output);
        for (&(len, j), &n) in &other.terms {
            self.add_terms(len, j, n);
        }
        for &p in &other.frontier {
            pareto_insert(&mut self.frontier, p);
        }
    }

    /// `(symbol length, ceil log2 runtime, producers)` histogram, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.terms.iter().map(|(&(l, j), &n)| (l, j, n))
    }

    /// `log2 Σ_p 2^{-|p|}` over all producers.
    pub fn log2_mass_m(&self) -> f64 {
        let mut by_len: BTreeMap<u32, u64> = BTreeMap::new();
        for (&(len, _), &n) in &self.terms {
            *by_len.entry(len).or_default() += n;
        }
        let terms: Vec<(f64, f64)> = by_len
            .into_iter()
            .map(|(len, n)| (-self.machine.bits_for_length(len), n as f64))
            .collect();
        log2_weighted_sum(&terms)
    }

    /// `log2 Σ_p 2^{-(2|p| + ceil(log2 τ_p))}` over all producers.
    pub fn log2_mass_s(&self) -> f64 {
        let terms: Vec<(f64, f64)> = self
            .terms
            .iter()
            .map(|(&(len, j), &n)| (-(2.0 * self.machine.bits_for_length(len) + f64::from(j)), n as f64))
            .collect();
        log2_weighted_sum(&terms)
    }

    /// Shortest description of the output over all producers.
    pub fn final_bits(&self) -> Option<f64> {
        self.frontier.last().map(|p| p.bits)
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        if self.frontier.is_empty() {
            return Err("empty frontier".into());
        }
        for w in self.frontier.windows(2) {
            if !(w[0].runtime < w[1].runtime && w[0].bits > w[1].bits) {
                return Err(format!("frontier not strictly monotone at {:?} -> {:?}", w[0], w[1]));
            }
        }
        if self.producer_count < self.frontier.len() as u64 {
            return Err("fewer producers than frontier points".into());
        }
        let histogram: u64 = self.terms.values().sum();
        if histogram != self.producer_count {
            return Err(format!("producer count {} != histogram total {histogram}", self.producer_count));
        }
        Ok(())
    }
}
