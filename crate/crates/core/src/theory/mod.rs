//! Drop probabilities and expected compression progress for a partial
//! profile, under the Length, Algorithmic and Speed priors.
//!
//! A partial profile is summarized by the observation cutoff `t`, the last
//! observed drop `m̂ < t` and the current two-part complexity `k̂ ≥ t`. A
//! continuation whose next (and last) drop is at complexity `m ∈ [t, k̂)`,
//! landing at `k ∈ [m, k̂)`, is counted with weight `2^{k-m}` times a prior
//! factor: `1` for Length, `2^{-k}` for Algorithmic and `2^{-k-log2 BB(m)}`
//! for Speed. All polynomial slack constants are taken to be one.
//!
//! Everything is carried as `log2` of the sum. [`exact_tail_sums`] adds up
//! the terms one by one; [`closed`] holds the simplified forms.

pub mod closed;
mod curves;
mod transform;

use std::fmt;

use crate::logspace::{log2_add, log2_sum, log2_weighted_sum};
use crate::priors::PriorKind;
use crate::{Error, Result};

pub use curves::{export_theory_csv, log2_slope, read_theory_csv, theory_curves, write_theory_csv, TheoryRow};
pub use transform::transform_p_to_d;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TheoryParams {
    pub t: i64,
    pub n_hat: i64,
    pub m_hat: i64,
    pub k_hat: i64,
}

impl TheoryParams {
    /// Requires `0 < m̂ < t ≤ k̂ < n̂`.
    pub fn new(t: i64, n_hat: i64, m_hat: i64, k_hat: i64) -> Result<Self> {
        let p = TheoryParams { t, n_hat, m_hat, k_hat };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let TheoryParams { t, n_hat, m_hat, k_hat } = *self;
        if 0 < m_hat && m_hat < t && t <= k_hat && k_hat < n_hat {
            Ok(())
        } else {
            Err(Error::Params(format!(
                "need 0 < m_hat < t <= k_hat < n_hat, got m_hat={m_hat} t={t} k_hat={k_hat} n_hat={n_hat}"
            )))
        }
    }

    /// Same cutoff and complexity with the last drop `s` bits before `t`.
    /// `m̂` may fall to zero or below; it only enters through the stop mass.
    pub fn with_stagnation(&self, s: i64) -> Self {
        TheoryParams {
            m_hat: self.t - s,
            ..*self
        }
    }

    /// `k̂ - t`, the room left for a further drop.
    pub fn gap(&self) -> i64 {
        self.k_hat - self.t
    }

    pub fn stagnation(&self) -> i64 {
        self.t - self.m_hat
    }

    /// The weaker condition the sums themselves need.
    fn check_sums(&self) -> Result<()> {
        if self.t >= 1 && self.m_hat < self.t && self.t <= self.k_hat {
            Ok(())
        } else {
            Err(Error::Params(format!(
                "need m_hat < t <= k_hat and t >= 1, got m_hat={} t={} k_hat={}",
                self.m_hat, self.t, self.k_hat
            )))
        }
    }
}

impl fmt::Display for TheoryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} m_hat={} k_hat={} n_hat={}", self.t, self.m_hat, self.k_hat, self.n_hat)
    }
}

/// `m ↦ log2 BB(m)`, a stand-in for the Busy Beaver function.
pub trait LogBusyBeaver {
    fn log2_bb(&self, m: i64) -> f64;
}

/// `log2 BB(m) = 2^m`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DefaultBusyBeaver;

impl LogBusyBeaver for DefaultBusyBeaver {
    fn log2_bb(&self, m: i64) -> f64 {
        (m as f64).exp2()
    }
}

impl<F: Fn(i64) -> f64> LogBusyBeaver for F {
    fn log2_bb(&self, m: i64) -> f64 {
        self(m)
    }
}

/// Check that a surrogate is strictly increasing and at least squares
/// `BB` per step (`log2 BB(m+1) ≥ 2 log2 BB(m)`) over `lo..=hi`.
pub fn check_busy_beaver(bb: &dyn LogBusyBeaver, lo: i64, hi: i64) -> Result<()> {
    for m in lo..hi {
        let (a, b) = (bb.log2_bb(m), bb.log2_bb(m + 1));
        if !(b > a) {
            return Err(Error::Params(format!("log2 BB not increasing at m={m}: {a} -> {b}")));
        }
        if a > 0.0 && b < 2.0 * a {
            return Err(Error::Params(format!("log2 BB not superexponential at m={m}: {a} -> {b}")));
        }
    }
    Ok(())
}

/// `log2` of one term `2^{k-m} · factor(k, m)`.
#[inline]
fn log2_term(prior: PriorKind, m: i64, k: i64, bb_m: f64) -> f64 {
    match prior {
        PriorKind::Length => (k - m) as f64,
        PriorKind::Algorithmic => -(m as f64),
        PriorKind::Speed => -(m as f64) - bb_m,
    }
}

/// `log2` of the mass of continuations with no further drop.
pub fn log2_z_stop(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver) -> f64 {
    let (k, m) = (p.k_hat as f64, p.m_hat as f64);
    match prior {
        PriorKind::Length => k - m,
        PriorKind::Algorithmic => -m,
        PriorKind::Speed => -m - bb.log2_bb(p.m_hat),
    }
}

/// `log2` of the drop mass and its first moments in `m` and `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSums {
    pub prior: PriorKind,
    pub log2_z_stop: f64,
    pub log2_z_drop: f64,
    pub log2_m_sum: f64,
    pub log2_k_sum: f64,
    /// `E[m | drop]` and `E[k | drop]`, taken relative to the largest term so
    /// that huge log magnitudes do not cost precision.
    means: Option<(f64, f64)>,
}

impl TailSums {
    /// `Z_drop / (Z_drop + Z_stop)`.
    pub fn drop_probability(&self) -> f64 {
        if self.log2_z_drop == f64::NEG_INFINITY {
            return 0.0;
        }
        (self.log2_z_drop - log2_add(self.log2_z_drop, self.log2_z_stop)).exp2()
    }

    /// `(E[m | drop], E[k | drop])`; `None` when no drop is possible.
    pub fn conditional_expectations(&self) -> Option<(f64, f64)> {
        if self.log2_z_drop == f64::NEG_INFINITY {
            return None;
        }
        self.means.or(Some((
            (self.log2_m_sum - self.log2_z_drop).exp2(),
            (self.log2_k_sum - self.log2_z_drop).exp2(),
        )))
    }

    /// `p_drop · (k̂ - E[k | drop])`.
    pub fn expected_progress(&self, k_hat: i64) -> f64 {
        match self.conditional_expectations() {
            Some((_, ek)) => self.drop_probability() * (k_hat as f64 - ek),
            None => 0.0,
        }
    }

    /// `E[m - m̂]` with no conditioning: zero when there is no further drop.
    pub fn expected_m_offset(&self, m_hat: i64) -> f64 {
        match self.conditional_expectations() {
            Some((em, _)) => self.drop_probability() * (em - m_hat as f64),
            None => 0.0,
        }
    }

    fn check(self) -> Result<Self> {
        if self.log2_z_stop.is_nan() || self.log2_z_drop.is_nan() {
            return Err(Error::Overflow(format!("{} sums are not a number", self.prior)));
        }
        if self.log2_z_stop == f64::NEG_INFINITY && self.log2_z_drop == f64::NEG_INFINITY {
            return Err(Error::Overflow(format!("{} masses underflow to zero", self.prior)));
        }
        Ok(self)
    }
}

/// Sums of `(c_z, c_m, c_k) · 2^x` over `(x, c_z, c_m, c_k)` terms.
pub(crate) fn moment_sums(prior: PriorKind, log2_z_stop: f64, terms: &[(f64, f64, f64, f64)]) -> TailSums {
    let z: Vec<(f64, f64)> = terms.iter().map(|t| (t.0, t.1)).collect();
    let ms: Vec<(f64, f64)> = terms.iter().map(|t| (t.0, t.2)).collect();
    let ks: Vec<(f64, f64)> = terms.iter().map(|t| (t.0, t.3)).collect();
    let max = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    let means = max.is_finite().then(|| {
        let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
        for &(x, cz, cm, ck) in terms {
            let w = (x - max).exp2();
            a += cz * w;
            b += cm * w;
            c += ck * w;
        }
        (b / a, c / a)
    });
    TailSums {
        prior,
        log2_z_stop,
        log2_z_drop: log2_weighted_sum(&z),
        log2_m_sum: log2_weighted_sum(&ms),
        log2_k_sum: log2_weighted_sum(&ks),
        means,
    }
}

/// Term-by-term sums over `m ∈ [t, m_end]`, `k ∈ [m, k̂)`.
fn literal_sums(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver, m_end: i64) -> TailSums {
    let mut terms = Vec::new();
    for m in p.t..=m_end.min(p.k_hat - 1) {
        let bb_m = if prior == PriorKind::Speed { bb.log2_bb(m) } else { 0.0 };
        for k in m..p.k_hat {
            terms.push((log2_term(prior, m, k, bb_m), 1.0, m as f64, k as f64));
        }
    }
    moment_sums(prior, log2_z_stop(prior, p, bb), &terms)
}

/// All `O((k̂ - t)^2)` terms, each added in the log domain.
pub fn exact_tail_sums(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver) -> Result<TailSums> {
    p.check_sums()?;
    literal_sums(prior, p, bb, p.k_hat - 1).check()
}

/// As [`exact_tail_sums`] restricted to a last drop inside the window
/// `m ∈ [t, t + Δc)`. For `Δc ≥ k̂ - t` the result is bit-identical to the
/// unrestricted sums.
pub fn exact_window_sums(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver, delta_c: i64) -> Result<TailSums> {
    p.check_sums()?;
    if delta_c < 1 {
        return Err(Error::Params(format!("window size must be at least 1, got {delta_c}")));
    }
    literal_sums(prior, p, bb, p.t.saturating_add(delta_c - 1)).check()
}

pub fn drop_probability(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver) -> Result<f64> {
    Ok(exact_tail_sums(prior, p, bb)?.drop_probability())
}

/// `E[m | drop]` and `E[k | drop]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectations {
    pub e_m: f64,
    pub e_k: f64,
}

pub fn conditional_expectations(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver) -> Result<Option<Expectations>> {
    Ok(exact_tail_sums(prior, p, bb)?
        .conditional_expectations()
        .map(|(e_m, e_k)| Expectations { e_m, e_k }))
}

pub fn expected_progress(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver) -> Result<f64> {
    Ok(exact_tail_sums(prior, p, bb)?.expected_progress(p.k_hat))
}

/// Algorithmic over Length, exact and approximated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorRatio {
    pub prob_ratio: f64,
    pub progress_ratio: f64,
    /// `k̂ - t - 1`
    pub prob_ratio_approx: f64,
    /// `(k̂ - t - 1)(k̂ - t) / 4`
    pub progress_ratio_approx: f64,
    /// `k̂ - t ≥ 10`
    pub large_gap: bool,
    /// `t - m̂ > log2 n̂`
    pub long_stagnation: bool,
}

impl PriorRatio {
    pub fn in_regime(&self) -> bool {
        self.large_gap && self.long_stagnation
    }
}

pub fn prior_ratio(p: &TheoryParams) -> Result<PriorRatio> {
    let bb = DefaultBusyBeaver;
    let l = exact_tail_sums(PriorKind::Length, p, &bb)?;
    let m = exact_tail_sums(PriorKind::Algorithmic, p, &bb)?;
    let d = p.gap() as f64;
    Ok(PriorRatio {
        prob_ratio: m.drop_probability() / l.drop_probability(),
        progress_ratio: m.expected_progress(p.k_hat) / l.expected_progress(p.k_hat),
        prob_ratio_approx: d - 1.0,
        progress_ratio_approx: 0.25 * (d - 1.0) * d,
        large_gap: p.gap() >= 10,
        long_stagnation: (p.stagnation() as f64) > (p.n_hat.max(1) as f64).log2(),
    })
}

/// Drop inside the window `{t, …, t + Δc - 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowResult {
    pub delta_c: i64,
    /// Probability that the last drop falls inside the window.
    pub p_window: f64,
    /// Upper bound on the probability of any drop inside the window:
    /// `(Z_drop - Z_void) / (Z_drop + Z_stop)`, where the void mass counts
    /// single drops past the window straight down to `k̂ - 1`.
    pub p_window_upper: f64,
    /// `p_window · (k̂ - E[k | last drop in window])`.
    pub progress_window: f64,
}

pub fn window_results(prior: PriorKind, p: &TheoryParams, bb: &dyn LogBusyBeaver, delta_c: i64) -> Result<WindowResult> {
    let full = exact_tail_sums(prior, p, bb)?;
    let win = exact_window_sums(prior, p, bb, delta_c)?;
    let denom = log2_add(full.log2_z_drop, full.log2_z_stop);
    let p_window = if win.log2_z_drop == f64::NEG_INFINITY {
        0.0
    } else {
        (win.log2_z_drop - denom).exp2()
    };
    let progress_window = match win.conditional_expectations() {
        Some((_, ek)) => p_window * (p.k_hat as f64 - ek),
        None => 0.0,
    };
    let void: Vec<f64> = (p.t.saturating_add(delta_c)..p.k_hat)
        .map(|m| {
            let bb_m = if prior == PriorKind::Speed { bb.log2_bb(m) } else { 0.0 };
            log2_term(prior, m, p.k_hat - 1, bb_m)
        })
        .collect();
    let drop_lin = if full.log2_z_drop == f64::NEG_INFINITY { 0.0 } else { (full.log2_z_drop - denom).exp2() };
    let void_lin = (log2_sum(&void) - denom).exp2();
    Ok(WindowResult {
        delta_c,
        p_window,
        p_window_upper: (drop_lin - void_lin).max(p_window),
        progress_window,
    })
}

#[cfg(test)]
mod tests;
