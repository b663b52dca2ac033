// Sweep every Brainfuck program up to five symbols, save the store as
// JSON Lines and load it back.

use compfront::{load_store, run_sweep, save_store, MachineConfig, MachineKind, SweepConfig};

pub fn run_example() -> compfront::Result<()> {
    let config = SweepConfig::new(
        MachineKind::Brainfuck,
        5,
        MachineConfig {
            max_steps: 1_000,
            ..MachineConfig::default()
        },
    );
    let store = run_sweep(&config)?;
    println!("{:?}", store.totals);
    assert!(store.totals.is_conserved());

    let dir = tempfile::tempdir().map_err(|e| compfront::Error::Config(e.to_string()))?;
    let path = dir.path().join("bf5.jsonl");
    save_store(&store, &path)?;
    let back = load_store(&path)?;
    assert_eq!(back.records, store.records);

    let text = std::fs::read_to_string(&path).unwrap_or_default();
    for line in text.lines().take(3) {
        println!("{line}");
    }

    let mut busiest: Vec<_> = store.records.values().collect();
    busiest.sort_by_key(|r| std::cmp::Reverse(r.producer_count));
    println!("\nmost produced outputs:");
    for r in busiest.iter().take(5) {
        println!(
            "  {:<12} {:>5} producers, shortest {:.2} bits, log2 M = {:.3}",
            format!("{:?}", r.output),
            r.producer_count,
            r.final_bits().unwrap_or(f64::NAN),
            r.log2_mass_m()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
