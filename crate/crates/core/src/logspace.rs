//! Base-2 log-domain arithmetic.
//!
//! Every probability mass in the crate is carried as `log2(x)`; `-inf`
//! represents zero.

/// `log2(2^a + 2^b)`.
#[inline]
pub fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

/// `log2(Σ 2^x)` over a slice, shifted by the maximum so that no term
/// underflows before the large ones are seen.
pub fn log2_sum(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    if max == f64::INFINITY {
        return max;
    }
    let s: f64 = terms.iter().map(|&x| (x - max).exp2()).sum();
    max + s.log2()
}

/// `log2(Σ c_i · 2^{x_i})` for nonnegative multiplicities `c_i`.
pub fn log2_weighted_sum(terms: &[(f64, f64)]) -> f64 {
    let max = terms
        .iter()
        .filter(|(_, c)| *c > 0.0)
        .map(|(x, _)| *x)
        .fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let s: f64 = terms
        .iter()
        .filter(|(_, c)| *c > 0.0)
        .map(|&(x, c)| c * (x - max).exp2())
        .sum();
    max + s.log2()
}

/// `log2(2^a - 2^b)` for `a >= b`; `-inf` when equal.
pub fn log2_sub(a: f64, b: f64) -> f64 {
    debug_assert!(a >= b, "log2_sub requires a >= b ({a} < {b})");
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a == b {
        return f64::NEG_INFINITY;
    }
    a + (-(b - a).exp2()).ln_1p() / std::f64::consts::LN_2
}

/// Streaming accumulator for `log2 Σ 2^x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Log2Acc(f64);

impl Default for Log2Acc {
    fn default() -> Self {
        Log2Acc(f64::NEG_INFINITY)
    }
}

impl Log2Acc {
    pub fn add(&mut self, x: f64) {
        self.0 = log2_add(self.0, x);
    }

    pub fn value(self) -> f64 {
        self.0
    }
}
