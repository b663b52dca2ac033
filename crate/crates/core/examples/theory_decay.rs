// Drop probability and expected progress against stagnation length at
// t = 30, k̂ = 120, n̂ = 4096, for all three priors.

use compfront::priors::PriorKind;
use compfront::theory::{log2_slope, theory_curves, DefaultBusyBeaver, TheoryParams};

pub fn run_example() -> compfront::Result<()> {
    let base = TheoryParams::new(30, 4096, 29, 120)?;
    let rows = theory_curves(&base, 1..=40, &DefaultBusyBeaver)?;

    println!("{:>3} {:>12} {:>12} {:>12} {:>12}", "s", "p_L", "progress_L", "p_M", "progress_M");
    for s in [1, 2, 5, 10, 15, 20, 30, 40] {
        let get = |prior| rows.iter().find(|r| r.prior == prior && r.s == s).expect("row");
        let (l, m) = (get(PriorKind::Length), get(PriorKind::Algorithmic));
        println!(
            "{s:>3} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            l.p_drop, l.e_progress_bits, m.p_drop, m.e_progress_bits
        );
    }

    for prior in PriorKind::ALL {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.prior == prior && (5..=20).contains(&r.s))
            .map(|r| (r.s as f64, r.e_progress_bits))
            .collect();
        match log2_slope(&pts) {
            Some(slope) => println!("{prior}: slope of log2 progress over s in [5, 20] = {slope:.3}"),
            None => println!("{prior}: progress is zero at every s"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
