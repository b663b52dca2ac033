// Normalized Length, Algorithmic and Speed weights over one sweep.

use compfront::priors::{normalize, raw_log_weight, PriorKind};
use compfront::{run_sweep, MachineConfig, MachineKind, SweepConfig};

pub fn run_example() -> compfront::Result<()> {
    let store = run_sweep(&SweepConfig::new(
        MachineKind::Brainfuck,
        5,
        MachineConfig {
            max_steps: 1_000,
            ..MachineConfig::default()
        },
    ))?;

    for prior in PriorKind::ALL {
        let table = normalize(prior, &store)?;
        let mut top: Vec<(&Vec<u8>, f64)> = table.weights.iter().map(|(k, &w)| (k, w)).collect();
        top.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(b.0)));
        println!("{prior} (total {:.12})", table.total());
        for (out, w) in top.iter().take(4) {
            let raw = raw_log_weight(prior, &store.records[*out]);
            println!("  {:<16} weight {w:.5}  raw log2 {raw:.3}", format!("{out:?}"));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
