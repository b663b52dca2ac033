//! Simplified forms of the tail sums.
//!
//! [`closed_tail_sums`] and [`closed_window`] are algebraically equal to the
//! literal sums. [`approximate`] keeps only the leading behaviour for a large
//! gap `k̂ - t`.

use super::{log2_z_stop, moment_sums, LogBusyBeaver, TailSums, TheoryParams, WindowResult};
use crate::logspace::{log2_add, log2_sum};
use crate::priors::PriorKind;
use crate::{Error, Result};

/// Speed sums keep only the `m = t` term once `log2 BB` jumps by more than
/// this between consecutive `m`.
pub const SPEED_DOMINANCE_GAP: f64 = 100.0;

/// `log2(a · 2^e + b)`, `-inf` when the value is not positive.
fn log2_affine(a: f64, e: f64, b: f64) -> f64 {
    let v = if e <= 900.0 { a * e.exp2() + b } else { a + b * (-e).exp2() };
    if v <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if e <= 900.0 {
        v.log2()
    } else {
        e + v.log2()
    }
}

fn log2_pos(x: f64) -> f64 {
    if x > 0.0 {
        x.log2()
    } else {
        f64::NEG_INFINITY
    }
}

/// Window size clipped to the room left for a drop.
fn clip(p: &TheoryParams, delta_c: i64) -> i64 {
    delta_c.min(p.gap())
}

fn speed_dominated(p: &TheoryParams, bb: &dyn LogBusyBeaver) -> bool {
    bb.log2_bb(p.t + 1) - bb.log2_bb(p.t) > SPEED_DOMINANCE_GAP
}

/// Speed sums with the inner `k` sum done in closed form:
/// `Σ_k 1 = k̂ - m` and `Σ_k k = (k̂ - m)(k̂ + m - 1) / 2`.
fn speed_sums(p: &TheoryParams, bb: &dyn LogBusyBeaver, m_end: i64) -> TailSums {
    let last = if speed_dominated(p, bb) { p.t } else { m_end };
    let terms: Vec<(f64, f64, f64, f64)> = (p.t..=last.min(p.k_hat - 1))
        .map(|m| {
            let n = (p.k_hat - m) as f64;
            (-(m as f64) - bb.log2_bb(m), n, n * m as f64, n * (p.k_hat + m - 1) as f64 / 2.0)
        })
        .collect();
    moment_sums(PriorKind::Speed, log2_z_stop(PriorKind::Speed, p, bb), &terms)
}

pub fn closed_tail_sums(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver) -> Result<TailSums> {
    p.check_sums()?;
    let (t, k) = (p.t as f64, p.k_hat as f64);
    let d = p.gap() as f64;
    let (z, m, kk) = match prior {
        PriorKind::Speed => return speed_sums(p, bb, p.k_hat - 1).check(),
        PriorKind::Length => (
            log2_affine(2.0, d, -(d + 2.0)),
            log2_affine(2.0 * (t + 1.0), d, 0.5 * (-k * k - 3.0 * k + t * t - t - 4.0)),
            log2_affine(2.0 * (k - 2.0), d, 0.5 * (-k * k + k + t * t - 5.0 * t + 8.0)),
        ),
        PriorKind::Algorithmic => {
            let tail = (-d).exp2();
            (
                -t + log2_pos(2.0 * (d - 1.0) + 2.0 * tail),
                -t + log2_pos((d - 1.0) * (2.0 * t + 2.0) - 4.0 + (2.0 * k + 6.0) * tail),
                -t + log2_pos((d - 1.0) * (k + t) - 2.0 + (2.0 * k + 2.0) * tail),
            )
        }
    };
    let s = TailSums {
        prior,
        log2_z_stop: log2_z_stop(prior, p, bb),
        log2_z_drop: z,
        log2_m_sum: m,
        log2_k_sum: kk,
        means: None,
    };
    s.check()
}

/// `log2` of the window drop mass and of its `k` moment.
fn closed_window_sums(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver, delta_c: i64) -> (f64, f64) {
    let (t, k) = (p.t as f64, p.k_hat as f64);
    let d = p.gap() as f64;
    let w = clip(p, delta_c) as f64;
    let shrink = 1.0 - (-w).exp2();
    match prior {
        PriorKind::Length => (
            log2_affine(2.0 * shrink, d, -w),
            log2_affine(2.0 * (k - 2.0) * shrink, d, w * (5.0 - 2.0 * t - w) / 2.0),
        ),
        PriorKind::Algorithmic => {
            let tail = (-w).exp2();
            (
                1.0 - t + log2_pos(shrink * (d - 1.0) + w * tail),
                -t + log2_pos(shrink * (k + t) * (d - 1.0) - 2.0 + tail * (w * w + (2.0 * t + 1.0) * w + 2.0)),
            )
        }
        PriorKind::Speed => {
            let s = speed_sums(p, bb, p.t.saturating_add(delta_c - 1));
            (s.log2_z_drop, s.means.map_or(f64::NEG_INFINITY, |(_, ek)| s.log2_z_drop + ek.log2()))
        }
    }
}

/// `log2` of the void mass past the window.
fn closed_void(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver, delta_c: i64) -> f64 {
    let w = clip(p, delta_c) as f64;
    let d = p.gap() as f64;
    match prior {
        PriorKind::Length => log2_affine(1.0, d - w, -1.0),
        PriorKind::Algorithmic => -(p.t as f64) + log2_pos((1.0 - w).exp2() - (1.0 - d).exp2()),
        PriorKind::Speed => {
            let terms: Vec<f64> = (p.t.saturating_add(delta_c)..p.k_hat)
                .map(|m| -(m as f64) - bb.log2_bb(m))
                .collect();
            log2_sum(&terms)
        }
    }
}

pub fn closed_window(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver, delta_c: i64) -> Result<WindowResult> {
    if delta_c < 1 {
        return Err(Error::Params(format!("window size must be at least 1, got {delta_c}")));
    }
    let full = closed_tail_sums(prior, p, bb)?;
    let denom = log2_add(full.log2_z_drop, full.log2_z_stop);
    let (z, kk) = closed_window_sums(prior, p, bb, delta_c);
    let p_window = if z == f64::NEG_INFINITY { 0.0 } else { (z - denom).exp2() };
    let progress_window = if z == f64::NEG_INFINITY {
        0.0
    } else {
        p_window * (p.k_hat as f64 - (kk - z).exp2())
    };
    let drop_lin = full.drop_probability();
    let void_lin = (closed_void(prior, p, bb, delta_c) - denom).exp2();
    Ok(WindowResult {
        delta_c,
        p_window,
        p_window_upper: (drop_lin - void_lin).max(p_window),
        progress_window,
    })
}

/// Leading-order drop mass and conditional expectations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approximation {
    pub prior: PriorKind,
    pub log2_z_drop: f64,
    pub log2_z_stop: f64,
    pub e_m: f64,
    pub e_k: f64,
}

impl Approximation {
    pub fn drop_probability(&self) -> f64 {
        if self.log2_z_drop == f64::NEG_INFINITY {
            return 0.0;
        }
        (self.log2_z_drop - log2_add(self.log2_z_drop, self.log2_z_stop)).exp2()
    }

    pub fn expected_progress(&self, k_hat: i64) -> f64 {
        self.drop_probability() * (k_hat as f64 - self.e_k)
    }
}

/// * Length: `Z ≈ 2^{k̂-t+1}`, `E[m] ≈ t + 1`, `E[k] ≈ k̂ - 2`
/// * Algorithmic: `Z ≈ (k̂-t-1) 2^{1-t}`, `E[m] ≈ t + 1`, `E[k] ≈ (k̂+t)/2`
/// * Speed: `Z ≈ (k̂-t) 2^{-t-log2 BB(t)}`, `E[m] ≈ t`, `E[k] ≈ (k̂+t-1)/2`
pub fn approximate(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver) -> Approximation {
    let (t, k) = (p.t as f64, p.k_hat as f64);
    let d = p.gap() as f64;
    let (z, e_m, e_k) = match prior {
        PriorKind::Length => (d + 1.0, t + 1.0, k - 2.0),
        PriorKind::Algorithmic => (1.0 - t + log2_pos(d - 1.0), t + 1.0, (k + t) / 2.0),
        PriorKind::Speed => (log2_pos(d) - t - bb.log2_bb(p.t), t, (k + t - 1.0) / 2.0),
    };
    Approximation {
        prior,
        log2_z_drop: z,
        log2_z_stop: log2_z_stop(prior, p, bb),
        e_m,
        e_k,
    }
}

/// `p_drop · (1 - 2^{-Δc})`.
pub fn approximate_window_probability(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver, delta_c: i64) -> f64 {
    approximate(prior, p, bb).drop_probability() * (1.0 - (-(delta_c as f64)).exp2())
}
