// Prior-weighted remaining progress as a function of stagnation, from a
// Rule 110 sweep.

use compfront::priors::PriorKind;
use compfront::stagnation::{analyze, decay_summary, export_curves, render_table, CurveConfig};
use compfront::{run_sweep, MachineConfig, MachineKind, SweepConfig};

pub fn run_example() -> compfront::Result<()> {
    let store = run_sweep(&SweepConfig::new(
        MachineKind::Rule110,
        12,
        MachineConfig {
            max_steps: 2_000,
            ..MachineConfig::default()
        },
    ))?;
    let table = analyze(&store, &PriorKind::ALL, &CurveConfig::default())?;
    print!("{}", render_table(&table));

    for prior in PriorKind::ALL {
        if let Some(d) = decay_summary(&table, prior) {
            println!(
                "{prior}: bin {} mean {:.3} -> bin {} mean {:.3}, weighted spearman {:.3}",
                d.first_bin, d.first_mean, d.last_bin, d.last_mean, d.spearman
            );
        }
    }

    let dir = tempfile::tempdir().map_err(|e| compfront::Error::Config(e.to_string()))?;
    let path = dir.path().join("curves.csv");
    export_curves(&table, &path)?;
    let csv = std::fs::read_to_string(&path).unwrap_or_default();
    println!("\n{}", csv.lines().next().unwrap_or_default());
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
