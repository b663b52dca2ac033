// How much more the Algorithmic prior expects than the Length prior, the
// near-term window, and the Speed prior's silence.

use compfront::priors::PriorKind;
use compfront::theory::{
    conditional_expectations, drop_probability, prior_ratio, window_results, DefaultBusyBeaver, TheoryParams,
};

pub fn run_example() -> compfront::Result<()> {
    let bb = DefaultBusyBeaver;
    println!("{:>4} {:>12} {:>8} {:>14} {:>10}", "gap", "prob ratio", "approx", "progress ratio", "approx");
    for gap in [5, 10, 30, 60, 100] {
        let p = TheoryParams::new(40, 1 << 20, 20, 40 + gap)?;
        let r = prior_ratio(&p)?;
        println!(
            "{gap:>4} {:>12.3} {:>8} {:>14.2} {:>10.1}",
            r.prob_ratio, r.prob_ratio_approx, r.progress_ratio, r.progress_ratio_approx
        );
    }

    let p = TheoryParams::new(15, 4096, 5, 60)?;
    println!("\nwindows at {p}");
    for prior in [PriorKind::Length, PriorKind::Algorithmic] {
        let full = drop_probability(prior, &p, &bb)?;
        for dc in [1, 2, 4, 45] {
            let w = window_results(prior, &p, &bb, dc)?;
            println!("  {prior:<12} dc={dc:<3} p_window / p_drop = {:.4}", w.p_window / full);
        }
    }

    let p = TheoryParams::new(10, 4096, 5, 60)?;
    let e = conditional_expectations(PriorKind::Speed, &p, &bb)?.expect("room for a drop");
    println!(
        "\nspeed at {p}: p_drop = {:.3e}, E[m] = {:.3}, E[k] = {:.3}",
        drop_probability(PriorKind::Speed, &p, &bb)?,
        e.e_m,
        e.e_k
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
