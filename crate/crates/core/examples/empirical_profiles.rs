// Profiles with more than one drop, and what an observer sees at a few
// cutoffs along them.

use compfront::profiles::{build_profile, evaluate_at_cutoff};
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
    let mut profiles: Vec<_> = store.records.values().map(build_profile).collect();
    profiles.sort_by_key(|p| std::cmp::Reverse(p.drops.len()));
    let multi = profiles.iter().filter(|p| p.drops.len() > 1).count();
    println!("{} outputs, {multi} with more than one drop", profiles.len());

    for p in profiles.iter().take(3) {
        let drops: Vec<String> = p.drops.iter().map(|d| format!("({}, {})", d.runtime, d.bits)).collect();
        println!("\nprofile {}", drops.join(" "));
        let last = p.last_runtime();
        for cutoff in [p.first_runtime(), (p.first_runtime() + last) / 2, last, 2 * last] {
            if let Some(v) = evaluate_at_cutoff(p, cutoff, &[2.0, 10.0]) {
                println!(
                    "  cutoff {:>5}: {:>4} bits, stagnant {:>5} steps, {} bits still to come, window x2/x10 gains {:?}",
                    v.cutoff, v.current_bits, v.stagnation, v.remaining_bits, v.window_bits
                );
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
