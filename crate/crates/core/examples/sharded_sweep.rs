// Split a sweep into shards, merge them, and compare with one pass.

use compfront::harness::write_store;
use compfront::{merge_stores, run_sweep, MachineConfig, MachineKind, SweepConfig};

pub fn run_example() -> compfront::Result<()> {
    let config = SweepConfig::new(
        MachineKind::Tag2,
        5,
        MachineConfig {
            max_steps: 2_000,
            ..MachineConfig::default()
        },
    );
    let whole = run_sweep(&config)?;

    let shards = 4;
    let mut merged = run_sweep(&config.clone().shard(0, shards))?;
    for i in 1..shards {
        let part = run_sweep(&config.clone().shard(i, shards))?;
        println!("shard {i}: {} programs, {} outputs", part.totals.enumerated, part.len());
        merged = merge_stores(&merged, &part)?;
    }
    merged.params = config.params();

    let mut a = Vec::new();
    let mut b = Vec::new();
    write_store(&whole, &mut a).expect("in-memory write");
    write_store(&merged, &mut b).expect("in-memory write");
    println!(
        "single pass: {} outputs; merged shards: {} outputs; identical bytes: {}",
        whole.len(),
        merged.len(),
        a == b
    );
    assert_eq!(a, b);
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
