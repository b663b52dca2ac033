use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use super::closed::{closed_tail_sums, closed_window};
use super::{exact_tail_sums, window_results, LogBusyBeaver, TheoryParams};
use crate::priors::PriorKind;
use crate::{Error, Result};

/// One point of the stagnation curves, from the literal sums and (`_cf`)
/// from the closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryRow {
    pub prior: PriorKind,
    pub s: i64,
    pub params: TheoryParams,
    pub p_drop: f64,
    pub e_m_minus_mhat: f64,
    pub e_progress_bits: f64,
    pub p_window_dc1: f64,
    pub e_progress_window_dc1: f64,
    pub p_drop_cf: f64,
    pub e_m_minus_mhat_cf: f64,
    pub e_progress_bits_cf: f64,
    pub p_window_dc1_cf: f64,
    pub e_progress_window_dc1_cf: f64,
}

const HEADER: [&str; 16] = [
    "prior",
    "s",
    "t",
    "m_hat",
    "k_hat",
    "n_hat",
    "p_drop",
    "e_m_minus_mhat",
    "e_progress_bits",
    "p_window_dc1",
    "e_progress_window_dc1",
    "p_drop_cf",
    "e_m_minus_mhat_cf",
    "e_progress_bits_cf",
    "p_window_dc1_cf",
    "e_progress_window_dc1_cf",
];

/// Rows for every prior and every stagnation `s` (with `m̂ = t - s`), in
/// prior-major order. `m̂` is allowed to reach zero or below here.
pub fn theory_curves(base: &TheoryParams, s_range: RangeInclusive<i64>, bb: &dyn LogBusyBeaver) -> Result<Vec<TheoryRow>> {
    if base.t < 1 || base.t > base.k_hat || base.k_hat >= base.n_hat {
        return Err(Error::Params(format!("need 1 <= t <= k_hat < n_hat, got {base}")));
    }
    if *s_range.start() < 1 {
        return Err(Error::Params("stagnation must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for prior in PriorKind::ALL {
        for s in s_range.clone() {
            let p = base.with_stagnation(s);
            let exact = exact_tail_sums(prior, &p, bb)?;
            let cf = closed_tail_sums(prior, &p, bb)?;
            let w = window_results(prior, &p, bb, 1)?;
            let wcf = closed_window(prior, &p, bb, 1)?;
            rows.push(TheoryRow {
                prior,
                s,
                params: p,
                p_drop: exact.drop_probability(),
                e_m_minus_mhat: exact.expected_m_offset(p.m_hat),
                e_progress_bits: exact.expected_progress(p.k_hat),
                p_window_dc1: w.p_window,
                e_progress_window_dc1: w.progress_window,
                p_drop_cf: cf.drop_probability(),
                e_m_minus_mhat_cf: cf.expected_m_offset(p.m_hat),
                e_progress_bits_cf: cf.expected_progress(p.k_hat),
                p_window_dc1_cf: wcf.p_window,
                e_progress_window_dc1_cf: wcf.progress_window,
            });
        }
    }
    Ok(rows)
}

pub fn write_theory_csv<W: Write>(rows: &[TheoryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        let p = &r.params;
        w.write_record([
            r.prior.name().to_string(),
            r.s.to_string(),
            p.t.to_string(),
            p.m_hat.to_string(),
            p.k_hat.to_string(),
            p.n_hat.to_string(),
            format!("{}", r.p_drop),
            format!("{}", r.e_m_minus_mhat),
            format!("{}", r.e_progress_bits),
            format!("{}", r.p_window_dc1),
            format!("{}", r.e_progress_window_dc1),
            format!("{}", r.p_drop_cf),
            format!("{}", r.e_m_minus_mhat_cf),
            format!("{}", r.e_progress_bits_cf),
            format!("{}", r.p_window_dc1_cf),
            format!("{}", r.e_progress_window_dc1_cf),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn export_theory_csv(rows: &[TheoryRow], path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_theory_csv(rows, &mut buf)?;
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn read_theory_csv<R: Read>(input: R) -> Result<Vec<TheoryRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let bad = |line: usize, msg: String| Error::Format {
        path: "<theory>".into(),
        line,
        msg,
    };
    if rd.headers()?.iter().ne(HEADER) {
        return Err(bad(1, "unexpected theory header".into()));
    }
    let mut rows = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let int = |k: usize| rec[k].parse::<i64>().map_err(|e| bad(line, format!("{}: {e}", HEADER[k])));
        let num = |k: usize| rec[k].parse::<f64>().map_err(|e| bad(line, format!("{}: {e}", HEADER[k])));
        rows.push(TheoryRow {
            prior: rec[0].parse()?,
            s: int(1)?,
            params: TheoryParams {
                t: int(2)?,
                m_hat: int(3)?,
                k_hat: int(4)?,
                n_hat: int(5)?,
            },
            p_drop: num(6)?,
            e_m_minus_mhat: num(7)?,
            e_progress_bits: num(8)?,
            p_window_dc1: num(9)?,
            e_progress_window_dc1: num(10)?,
            p_drop_cf: num(11)?,
            e_m_minus_mhat_cf: num(12)?,
            e_progress_bits_cf: num(13)?,
            p_window_dc1_cf: num(14)?,
            e_progress_window_dc1_cf: num(15)?,
        });
    }
    Ok(rows)
}

/// Least-squares slope of `log2(y)` against `x` over the points with `y > 0`.
pub fn log2_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.1 > 0.0).map(|&(x, y)| (x, y.log2())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
