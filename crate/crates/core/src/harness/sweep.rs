use std::collections::HashMap;

use rayon::prelude::*;

use super::{AggregateStore, OutputRecord, SweepConfig, Totals};
use crate::machines::{MachineConfig, MachineKind, ProgramSpace, RunOutcome, Runner};
use crate::{Error, Result};

/// Shard positions handled per work item. Fixed so that the split of work
/// does not depend on the thread count.
const CHUNK: u64 = 2048;

#[derive(Default)]
struct Partial {
    totals: Totals,
    records: HashMap<Vec<u8>, OutputRecord>,
}

impl Partial {
    fn absorb(mut self, mut other: Partial) -> Partial {
        if other.records.len() > self.records.len() {
            std::mem::swap(&mut self, &mut other);
        }
        self.totals.add(&other.totals);
        for (out, rec) in other.records {
            match self.records.get_mut(&out) {
                Some(mine) => mine.merge(&rec),
                None => {
                    self.records.insert(out, rec);
                }
            }
        }
        self
    }
}

fn run_chunk(
    runner: &mut Runner,
    acc: &mut Partial,
    space: &ProgramSpace,
    machine: MachineKind,
    config: &MachineConfig,
    positions: std::ops::Range<u64>,
    shard_index: u64,
    shard_count: u64,
) {
    for k in positions {
        let program = space.get(shard_index + k * shard_count);
        acc.totals.enumerated += 1;
        match runner.run(&program) {
            RunOutcome::Halted { output, .. } if output.is_empty() => acc.totals.halted_empty += 1,
            RunOutcome::Halted { runtime, output } => {
                acc.totals.halted_output += 1;
                let len = program.symbol_length();
                match acc.records.get_mut(&output) {
                    Some(rec) => rec.add_producer(len, runtime),
                    None => {
                        let out_len = machine.output_length(&output, config);
                        let mut rec = OutputRecord::new(machine, output.clone(), out_len);
                        rec.add_producer(len, runtime);
                        acc.records.insert(output, rec);
                    }
                }
            }
            RunOutcome::Timeout => acc.totals.timeout += 1,
            RunOutcome::Invalid => acc.totals.invalid += 1,
        }
    }
}

/// Execute every program of one shard and aggregate per distinct output.
///
/// Shard `i` of `n` takes the positions congruent to `i` modulo `n` in the
/// canonical enumeration. The result is independent of scheduling: frontiers
/// are Pareto sets and masses come from integer histograms.
pub fn run_sweep(config: &SweepConfig) -> Result<AggregateStore> {
    config.validate()?;
    let machine = config.machine;
    let mcfg = &config.machine_config;
    let space = ProgramSpace::new(machine, config.max_symbol_length, mcfg);
    let total = space.len();
    let (idx, n) = (config.shard_index, config.shard_count);
    let positions = if total > idx { (total - idx).div_ceil(n) } else { 0 };
    let chunks = positions.div_ceil(CHUNK);

    let work = || {
        (0..chunks)
            .into_par_iter()
            .fold(
                || (Runner::new(mcfg.clone()), Partial::default()),
                |(mut runner, mut acc), c| {
                    let lo = c * CHUNK;
                    let hi = (lo + CHUNK).min(positions);
                    run_chunk(&mut runner, &mut acc, &space, machine, mcfg, lo..hi, idx, n);
                    (runner, acc)
                },
            )
            .map(|(_, acc)| acc)
            .reduce(Partial::default, Partial::absorb)
    };
    let partial = if config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(work)
    } else {
        work()
    };

    let mut store = AggregateStore::empty(config.params());
    store.totals = partial.totals;
    store.records = partial.records.into_iter().collect();
    if let Some(path) = &config.output_path {
        super::save_store(&store, path)?;
    }
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{merge_stores, FrontierPoint};
    use crate::machines::MachineConfig;

    fn bf(max_len: u32, max_steps: u64) -> SweepConfig {
        SweepConfig::new(
            MachineKind::Brainfuck,
            max_len,
            MachineConfig {
                max_steps,
                ..MachineConfig::default()
            },
        )
    }

    #[test]
    fn brainfuck_length_one() {
        let store = run_sweep(&bf(1, 100)).unwrap();
        assert_eq!(store.len(), 1);
        let rec = &store.records[&vec![0u8]];
        assert_eq!(rec.producer_count, 1);
        assert_eq!(rec.frontier, vec![FrontierPoint::new(1, 7f64.log2())]);
        // + - < > halt without output, [ and ] are unmatched
        assert_eq!(store.totals.enumerated, 7);
        assert_eq!(store.totals.halted_empty, 4);
        assert_eq!(store.totals.invalid, 2);
        assert_eq!(store.totals.halted_output, 1);
    }

    #[test]
    fn rule110_single_program() {
        let config = SweepConfig::new(
            MachineKind::Rule110,
            1,
            MachineConfig {
                max_steps: 100,
                rule110_width: 8,
                ..MachineConfig::default()
            },
        );
        let store = run_sweep(&config).unwrap();
        assert!(store.len() <= 1);
        assert_eq!(store.totals.enumerated, 1);
    }

    #[test]
    fn two_shards_merge_to_one() {
        let whole = run_sweep(&bf(3, 200)).unwrap();
        let a = run_sweep(&bf(3, 200).shard(0, 2)).unwrap();
        let b = run_sweep(&bf(3, 200).shard(1, 2)).unwrap();
        assert_eq!(merge_stores(&a, &b).unwrap(), whole);
        assert_eq!(merge_stores(&b, &a).unwrap(), whole);
    }

    #[test]
    fn more_shards_than_programs() {
        let stores: Vec<_> = (0..10).map(|i| run_sweep(&bf(1, 10).shard(i, 10)).unwrap()).collect();
        let mut merged = stores[0].clone();
        for s in &stores[1..] {
            merged.merge(s).unwrap();
        }
        assert_eq!(merged, run_sweep(&bf(1, 10)).unwrap());
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let mut one = bf(4, 300);
        one.threads = 1;
        let mut four = bf(4, 300);
        four.threads = 4;
        assert_eq!(run_sweep(&one).unwrap(), run_sweep(&four).unwrap());
    }

    #[test]
    fn totals_are_conserved_and_records_valid() {
        let store = run_sweep(&bf(4, 1000)).unwrap();
        assert!(store.totals.is_conserved());
        assert_eq!(store.totals.enumerated, 7 + 49 + 343 + 2401);
        for rec in store.records.values() {
            rec.check_invariants().unwrap();
        }
    }

    #[test]
    fn bad_shard_is_rejected() {
        assert!(run_sweep(&bf(2, 10).shard(2, 2)).is_err());
        assert!(run_sweep(&bf(0, 10)).is_err());
    }
}
