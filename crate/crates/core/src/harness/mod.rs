//! Sharded, parallel exhaustive sweeps with deterministic aggregation.

mod io;
mod record;
mod sweep;

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::machines::{MachineConfig, MachineKind};
use crate::{Error, Result};

pub use io::{load_store, read_store, save_store, write_store, FORMAT_VERSION};
pub use record::{ceil_log2, pareto_insert, FrontierPoint, OutputRecord};
pub use sweep::run_sweep;

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub machine: MachineKind,
    pub max_symbol_length: u32,
    pub machine_config: MachineConfig,
    pub shard_count: u64,
    pub shard_index: u64,
    /// Store is written here when set.
    pub output_path: Option<PathBuf>,
    /// Worker threads; 0 uses the global rayon pool.
    pub threads: usize,
}

impl SweepConfig {
    pub fn new(machine: MachineKind, max_symbol_length: u32, machine_config: MachineConfig) -> Self {
        SweepConfig {
            machine,
            max_symbol_length,
            machine_config,
            shard_count: 1,
            shard_index: 0,
            output_path: None,
            threads: 0,
        }
    }

    pub fn shard(mut self, index: u64, count: u64) -> Self {
        self.shard_index = index;
        self.shard_count = count;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.machine_config.validate()?;
        if self.max_symbol_length < 1 {
            return Err(Error::Config("max symbol length must be at least 1".into()));
        }
        if self.shard_count < 1 || self.shard_index >= self.shard_count {
            return Err(Error::Config(format!(
                "shard index {} not in [0, {})",
                self.shard_index, self.shard_count
            )));
        }
        Ok(())
    }

    pub fn params(&self) -> SweepParams {
        SweepParams {
            machine: self.machine,
            max_symbol_length: self.max_symbol_length,
            max_steps: self.machine_config.max_steps,
            width: self.machine_config.rule110_width,
            tag_start: self.machine_config.tag_start_word.clone(),
        }
    }
}

/// Parameters that two stores must share to be mergeable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    pub machine: MachineKind,
    pub max_symbol_length: u32,
    pub max_steps: u64,
    pub width: usize,
    pub tag_start: Vec<u8>,
}

impl SweepParams {
    pub fn machine_config(&self) -> MachineConfig {
        MachineConfig {
            max_steps: self.max_steps,
            rule110_width: self.width,
            tag_start_word: self.tag_start.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Totals {
    pub enumerated: u64,
    pub halted_output: u64,
    pub halted_empty: u64,
    pub timeout: u64,
    pub invalid: u64,
}

impl Totals {
    pub fn add(&mut self, other: &Totals) {
        self.enumerated += other.enumerated;
        self.halted_output += other.halted_output;
        self.halted_empty += other.halted_empty;
        self.timeout += other.timeout;
        self.invalid += other.invalid;
    }

    pub fn is_conserved(&self) -> bool {
        self.enumerated == self.halted_output + self.halted_empty + self.timeout + self.invalid
    }
}

/// Per-output aggregates of one sweep (or of several merged shards).
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateStore {
    pub params: SweepParams,
    pub totals: Totals,
    /// Keyed by raw output bytes, which is also the serialized order.
    pub records: BTreeMap<Vec<u8>, OutputRecord>,
}

impl AggregateStore {
    pub fn empty(params: SweepParams) -> Self {
        AggregateStore {
            params,
            totals: Totals::default(),
            records: BTreeMap::new(),
        }
    }

    pub fn machine(&self) -> MachineKind {
        self.params.machine
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn merge(&mut self, other: &AggregateStore) -> Result<()> {
        if self.params != other.params {
            return Err(Error::Mismatch(format!("{:?} vs {:?}", self.params, other.params)));
        }
        self.totals.add(&other.totals);
        for (out, rec) in &other.records {
            match self.records.get_mut(out) {
                Some(mine) => mine.merge(rec),
                None => {
                    self.records.insert(out.clone(), rec.clone());
                }
            }
        }
        Ok(())
    }
}

/// Union of two stores from the same sweep parameters.
pub fn merge_stores(a: &AggregateStore, b: &AggregateStore) -> Result<AggregateStore> {
    let mut out = a.clone();
    out.merge(b)?;
    Ok(out)
}
