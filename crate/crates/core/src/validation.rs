//! Self-checks behind the `validate` subcommand and the acceptance tests.
//!
//! Each `criterion_*` function runs one check end to end and reports
//! whether it held, with the numbers that decided it.

use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::harness::{merge_stores, run_sweep, write_store, AggregateStore, SweepConfig};
use crate::machines::{
    execute, program_count, rule110_step, MachineConfig, MachineKind, Program, ProgramSpace, RunOutcome, TagRules,
};
use crate::priors::PriorKind;
use crate::stagnation::{analyze, decay_summary, write_curves, CurveConfig};
use crate::theory::closed::{approximate, closed_tail_sums};
use crate::theory::{
    exact_tail_sums, log2_slope, prior_ratio, theory_curves, window_results, DefaultBusyBeaver, TheoryParams,
};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] C{} {}: {}", self.id, self.title, self.detail)
    }
}

fn report(id: u8, title: &'static str, passed: bool, detail: String) -> CriterionReport {
    CriterionReport { id, title, passed, detail }
}

/// Sweep sizes for the empirical checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Scale {
    pub bf_len: u32,
    pub bf_steps: u64,
    pub tag_len: u32,
    pub tag_steps: u64,
    pub r110_len: u32,
    pub r110_width: usize,
    pub r110_steps: u64,
    /// Symbol lengths for the determinism pipeline.
    pub pipeline_bf_len: u32,
    pub pipeline_tag_len: u32,
    pub pipeline_r110_len: u32,
    pub time_limit: Duration,
}

impl Scale {
    /// Brainfuck up to 8 symbols, Tag2 up to 9, Rule 110 up to 16 on 64 cells.
    pub fn desk() -> Self {
        Scale {
            bf_len: 8,
            bf_steps: 10_000,
            tag_len: 9,
            tag_steps: 10_000,
            r110_len: 16,
            r110_width: 64,
            r110_steps: 5_000,
            pipeline_bf_len: 6,
            pipeline_tag_len: 6,
            pipeline_r110_len: 12,
            time_limit: Duration::from_secs(15 * 60),
        }
    }

    /// Seconds rather than minutes.
    pub fn quick() -> Self {
        Scale {
            bf_len: 8,
            bf_steps: 2_000,
            tag_len: 6,
            tag_steps: 2_000,
            r110_len: 12,
            r110_width: 64,
            r110_steps: 2_000,
            pipeline_bf_len: 5,
            pipeline_tag_len: 5,
            pipeline_r110_len: 10,
            time_limit: Duration::from_secs(15 * 60),
        }
    }

    fn sweep(&self, machine: MachineKind) -> SweepConfig {
        let (len, steps) = match machine {
            MachineKind::Brainfuck => (self.bf_len, self.bf_steps),
            MachineKind::Tag2 => (self.tag_len, self.tag_steps),
            MachineKind::Rule110 => (self.r110_len, self.r110_steps),
        };
        SweepConfig::new(
            machine,
            len,
            MachineConfig {
                max_steps: steps,
                rule110_width: self.r110_width,
                ..MachineConfig::default()
            },
        )
    }
}

const BB: DefaultBusyBeaver = DefaultBusyBeaver;

fn rel_err(x: f64, reference: f64) -> f64 {
    ((x - reference) / reference).abs()
}

/// Random valid parameters with `k̂ - t ≥ 20`.
pub fn random_params(rng: &mut StdRng) -> TheoryParams {
    let m_hat = rng.gen_range(1..=60);
    let t = m_hat + rng.gen_range(1..=60);
    let k_hat = t + rng.gen_range(20..=200);
    let n_hat = k_hat + rng.gen_range(1..=4096);
    TheoryParams::new(t, n_hat, m_hat, k_hat).expect("sampled params are valid")
}

/// Closed forms and leading-order approximations against the literal sums.
pub fn criterion_1() -> Result<CriterionReport> {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let (mut worst_p, mut worst_e, mut worst_cf) = (0.0f64, 0.0f64, 0.0f64);
    let mut worst_at = None;
    for _ in 0..100 {
        let p = random_params(&mut rng);
        for prior in [PriorKind::Length, PriorKind::Algorithmic] {
            let exact = exact_tail_sums(prior, &p, &BB)?;
            let cf = closed_tail_sums(prior, &p, &BB)?;
            let approx = approximate(prior, &p, &BB);
            let (em, ek) = exact.conditional_expectations().expect("gap is positive");
            let (cm, ck) = cf.conditional_expectations().expect("gap is positive");
            let pe = exact.drop_probability();
            let dp = rel_err(approx.drop_probability(), pe).max(rel_err(cf.drop_probability(), pe));
            let de = (em - approx.e_m).abs().max((ek - approx.e_k).abs());
            worst_cf = worst_cf.max((em - cm).abs()).max((ek - ck).abs());
            if dp > worst_p || de > worst_e {
                worst_at = Some((prior, p));
            }
            worst_p = worst_p.max(dp);
            worst_e = worst_e.max(de);
        }
    }
    let elapsed = start.elapsed();
    let passed = worst_p <= 0.02 && worst_e <= 0.5 && worst_cf <= 0.5 && elapsed < Duration::from_secs(60);
    let at = worst_at.map(|(pr, p)| format!(" (worst at {pr} {p})")).unwrap_or_default();
    Ok(report(
        1,
        "closed forms vs exact sums",
        passed,
        format!(
            "100 params x 2 priors: max prob rel err {worst_p:.2e} (tol 0.02), max E err {worst_e:.3} bits (tol 0.5), \
             closed-form E err {worst_cf:.1e}, {:.2}s{at}",
            elapsed.as_secs_f64()
        ),
    ))
}

/// Algorithmic over Length ratios deep in the stagnation regime.
pub fn criterion_2() -> Result<CriterionReport> {
    let (mut worst_prob, mut worst_prog) = (0.0f64, 0.0f64);
    let mut n = 0;
    for stagnation in [15, 20, 30, 45] {
        for gap in [30, 40, 60, 100, 200] {
            for m_hat in [1, 10, 40] {
                let t = m_hat + stagnation;
                let p = TheoryParams::new(t, 1 << 40, m_hat, t + gap)?;
                let r = prior_ratio(&p)?;
                worst_prob = worst_prob.max(rel_err(r.prob_ratio, r.prob_ratio_approx));
                worst_prog = worst_prog.max(rel_err(r.progress_ratio, r.progress_ratio_approx));
                n += 1;
            }
        }
    }
    Ok(report(
        2,
        "prior ratios",
        worst_prob <= 0.10 && worst_prog <= 0.20,
        format!(
            "{n} params with t-m_hat >= 15, k_hat-t >= 30: max rel err prob ratio {worst_prob:.4} (tol 0.10), \
             progress ratio {worst_prog:.4} (tol 0.20)"
        ),
    ))
}

/// Speed prior: negligible drop probability, `E[k] ≈ (k̂+t-1)/2`.
pub fn criterion_3() -> Result<CriterionReport> {
    let mut checked = 0;
    let mut prob_failures = Vec::new();
    let mut worst_e = 0.0f64;
    let mut smallest_passing_t = None;
    for t in 2..=14i64 {
        let mut all_ok = true;
        for m_hat in 1..t {
            for gap in [0, 1, 2, 5, 20, 100, 1000] {
                let k_hat = t + gap;
                let p = TheoryParams::new(t, k_hat + 1, m_hat, k_hat)?;
                let s = exact_tail_sums(PriorKind::Speed, &p, &BB)?;
                let q = s.drop_probability();
                checked += 1;
                if !(q < 1e-6) {
                    all_ok = false;
                    prob_failures.push((q, p));
                }
                if let Some((_, ek)) = s.conditional_expectations() {
                    worst_e = worst_e.max((ek - (k_hat + t - 1) as f64 / 2.0).abs());
                }
            }
        }
        if all_ok && smallest_passing_t.is_none() {
            smallest_passing_t = Some(t);
        }
        if !all_ok {
            smallest_passing_t = None;
        }
    }
    let passed = prob_failures.is_empty() && worst_e <= 0.5;
    let mut detail = format!(
        "{checked} params (t in 2..=14, every m_hat < t): {} with p_drop >= 1e-6; max |E_k - (k_hat+t-1)/2| = {worst_e:.4} (tol 0.5)",
        prob_failures.len()
    );
    if let Some((q, p)) = prob_failures.iter().copied().max_by(|a, b| a.0.total_cmp(&b.0)) {
        detail.push_str(&format!("; largest p_drop {q:.3e} at {p}"));
    }
    if let Some(t) = smallest_passing_t {
        detail.push_str(&format!("; p_drop < 1e-6 holds on the grid for every t >= {t}"));
    }
    Ok(report(3, "speed prior", passed, detail))
}

/// Window sums converge exactly and start at half the full probability.
pub fn criterion_4() -> Result<CriterionReport> {
    let mut exact_ok = true;
    let mut worst_half = 0.0f64;
    let mut worst_progress_half = 0.0f64;
    let mut n = 0;
    for prior in [PriorKind::Length, PriorKind::Algorithmic] {
        for gap in [30, 40, 60, 100] {
            for (t, m_hat) in [(10, 9), (15, 5), (30, 10), (50, 1)] {
                let p = TheoryParams::new(t, t + gap + 1, m_hat, t + gap)?;
                let full = exact_tail_sums(prior, &p, &BB)?;
                for dc in [gap, gap + 1, 10 * gap] {
                    let w = window_results(prior, &p, &BB, dc)?;
                    exact_ok &= w.p_window == full.drop_probability() && w.progress_window == full.expected_progress(p.k_hat);
                }
                let w1 = window_results(prior, &p, &BB, 1)?;
                worst_half = worst_half.max(rel_err(w1.p_window, 0.5 * full.drop_probability()));
                worst_progress_half =
                    worst_progress_half.max(rel_err(w1.progress_window, 0.5 * full.expected_progress(p.k_hat)));
                n += 1;
            }
        }
    }
    Ok(report(
        4,
        "window limits",
        exact_ok && worst_half <= 0.05,
        format!(
            "{n} params: exact equality for delta_c >= k_hat-t: {exact_ok}; max rel err of p_window(1) vs half the \
             limit {worst_half:.4} (tol 0.05); windowed progress vs half its limit {worst_progress_half:.4} (not graded)"
        ),
    ))
}

/// Stagnation curves at `t = 30, k̂ = 120, n̂ = 4096`.
pub fn criterion_5() -> Result<CriterionReport> {
    let base = TheoryParams::new(30, 4096, 29, 120)?;
    let rows = theory_curves(&base, 1..=40, &BB)?;
    let series = |prior: PriorKind| -> Vec<(f64, f64)> {
        rows.iter()
            .filter(|r| r.prior == prior)
            .map(|r| (r.s as f64, r.e_progress_bits))
            .collect()
    };
    let slope_over = |prior: PriorKind, lo: f64, hi: f64| {
        let pts: Vec<(f64, f64)> = series(prior).into_iter().filter(|p| p.0 >= lo && p.0 <= hi).collect();
        log2_slope(&pts).unwrap_or(f64::NAN)
    };
    let sl = slope_over(PriorKind::Length, 5.0, 20.0);
    let sm = slope_over(PriorKind::Algorithmic, 5.0, 20.0);
    let sm_late = slope_over(PriorKind::Algorithmic, 12.0, 20.0);
    let l = series(PriorKind::Length);
    let m = series(PriorKind::Algorithmic);
    let above = l.iter().zip(&m).all(|(a, b)| b.1 > a.1);
    let speed_max = series(PriorKind::Speed).iter().map(|p| p.1).fold(0.0, f64::max);
    let ok = |s: f64| (s + 1.0).abs() <= 0.1;
    Ok(report(
        5,
        "stagnation curve shape",
        ok(sl) && ok(sm) && above && speed_max < 1e-6,
        format!(
            "slope of log2 progress over s in [5,20]: length {sl:.3}, algorithmic {sm:.3} (tol -1 +- 0.1; \
             algorithmic over [12,20]: {sm_late:.3}); algorithmic above length at every s: {above}; \
             max speed progress {speed_max:.1e}"
        ),
    ))
}

/// Reference runs for each interpreter.
pub fn criterion_6() -> Result<CriterionReport> {
    let cfg = MachineConfig::default();
    let mut failures = Vec::new();
    let halted = |runtime, output: &[u8]| RunOutcome::Halted {
        runtime,
        output: output.to_vec(),
    };
    let bf = [
        ("+.", halted(2, &[1])),
        ("+[-].", halted(5, &[0])),
        ("++[-].", halted(8, &[0])),
        ("+++.>++.", halted(8, &[3, 2])),
        ("-.", halted(2, &[255])),
        ("<.", halted(1, &[])),
        ("+[]", RunOutcome::Timeout),
        ("[", RunOutcome::Invalid),
        ("+]", RunOutcome::Invalid),
        ("][", RunOutcome::Invalid),
    ];
    for (code, want) in &bf {
        let got = execute(&Program::brainfuck(code)?, &cfg);
        if got != *want {
            failures.push(format!("bf {code:?}: got {got:?}, want {want:?}"));
        }
    }

    // every neighbourhood of one cell against the table 0b0110_1110
    for pattern in 0u64..8 {
        let width = 8;
        // cells 7, 0, 1 hold l, c, r
        let cur = [((pattern >> 2) & 1) << 7 | ((pattern >> 1) & 1) | (pattern & 1) << 1];
        let mut next = [0u64];
        rule110_step(&cur, &mut next, width);
        let want = (110 >> pattern) & 1;
        if next[0] & 1 != want {
            failures.push(format!("rule110 neighbourhood {pattern:03b}: got {}, want {want}", next[0] & 1));
        }
    }
    let mut next = [0u64];
    rule110_step(&[1], &mut next, 8);
    if next[0] != 0b1000_0001 {
        failures.push(format!("rule110 single cell: got {:08b}", next[0]));
    }

    let tag = Program::tag2(TagRules::new("H", "a", "a")?);
    let got = execute(&tag, &cfg);
    if got != halted(3, b"H") {
        failures.push(format!("tag2 a->H b->a c->a: got {got:?}"));
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{} brainfuck, 9 rule110 and 1 tag2 references match", bf.len())
    } else {
        failures.join("; ")
    };
    Ok(report(6, "machine goldens", passed, detail))
}

/// Result of one empirical sweep and its curves.
#[derive(Debug, Clone)]
pub struct MachineDecay {
    pub machine: MachineKind,
    pub programs: u64,
    pub outputs: usize,
    pub elapsed: Duration,
    /// (prior, first bin mean, last bin mean, weighted Spearman)
    pub decay: Vec<(PriorKind, f64, f64, f64)>,
    pub passed: bool,
}

pub fn machine_decay(machine: MachineKind, scale: &Scale) -> Result<MachineDecay> {
    let start = Instant::now();
    let store = run_sweep(&scale.sweep(machine))?;
    let elapsed = start.elapsed();
    let table = analyze(&store, &PriorKind::ALL, &CurveConfig::default())?;
    let mut decay = Vec::new();
    let mut passed = elapsed < scale.time_limit;
    for prior in PriorKind::ALL {
        match decay_summary(&table, prior) {
            Some(d) => {
                if prior != PriorKind::Speed {
                    passed &= d.decays();
                }
                decay.push((prior, d.first_mean, d.last_mean, d.spearman));
            }
            None => {
                if prior != PriorKind::Speed {
                    passed = false;
                }
                decay.push((prior, f64::NAN, f64::NAN, f64::NAN));
            }
        }
    }
    Ok(MachineDecay {
        machine,
        programs: store.totals.enumerated,
        outputs: store.len(),
        elapsed,
        decay,
        passed,
    })
}

/// Remaining progress shrinks with stagnation on all three machines.
pub fn criterion_7(scale: &Scale) -> Result<CriterionReport> {
    let mut parts = Vec::new();
    let mut passed = true;
    for machine in MachineKind::ALL {
        let d = machine_decay(machine, scale)?;
        passed &= d.passed;
        let priors: Vec<String> = d
            .decay
            .iter()
            .map(|(p, a, b, rho)| format!("{p} {a:.3}->{b:.3} rho {rho:.2}"))
            .collect();
        parts.push(format!(
            "{machine}: {} programs, {} outputs, {:.1}s, {}",
            d.programs,
            d.outputs,
            d.elapsed.as_secs_f64(),
            priors.join(", ")
        ));
    }
    Ok(report(7, "empirical decay", passed, parts.join(" | ")))
}

fn pipeline(config: &SweepConfig, threads: usize) -> Result<(Vec<u8>, Vec<u8>, AggregateStore)> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::Error::Config(e.to_string()))?;
    pool.install(|| {
        let store = run_sweep(config)?;
        let mut s = Vec::new();
        write_store(&store, &mut s).map_err(|e| crate::Error::io("<store>", e))?;
        let table = analyze(&store, &PriorKind::ALL, &CurveConfig::default())?;
        let mut c = Vec::new();
        write_curves(&table, &mut c)?;
        Ok((s, c, store))
    })
}

/// Byte-identical reruns, and four shards merging to the single sweep.
pub fn criterion_8(scale: &Scale) -> Result<CriterionReport> {
    let mut passed = true;
    let mut parts = Vec::new();
    for machine in MachineKind::ALL {
        let len = match machine {
            MachineKind::Brainfuck => scale.pipeline_bf_len,
            MachineKind::Tag2 => scale.pipeline_tag_len,
            MachineKind::Rule110 => scale.pipeline_r110_len,
        };
        let mut cfg = scale.sweep(machine);
        cfg.max_symbol_length = len;
        let (s1, c1, _) = pipeline(&cfg, 1)?;
        let (s2, c2, _) = pipeline(&cfg, 4)?;
        let rerun = s1 == s2 && c1 == c2;
        let mut merged: Option<AggregateStore> = None;
        for i in 0..4 {
            let shard = run_sweep(&cfg.clone().shard(i, 4))?;
            merged = Some(match merged {
                None => shard,
                Some(m) => merge_stores(&m, &shard)?,
            });
        }
        let mut merged_store = merged.expect("four shards");
        merged_store.params = cfg.params();
        let mut sm = Vec::new();
        write_store(&merged_store, &mut sm).map_err(|e| crate::Error::io("<store>", e))?;
        let sharded = sm == s1;
        passed &= rerun && sharded;
        parts.push(format!("{machine} len {len}: reruns identical {rerun}, 4 shards == 1 shard {sharded}"));
    }
    Ok(report(8, "determinism and shards", passed, parts.join("; ")))
}

/// Program counts against the per-length formulas.
pub fn criterion_9() -> Result<CriterionReport> {
    let cfg = MachineConfig::default();
    let mut failures = Vec::new();
    for l in 1..=11u32 {
        let want: u64 = (1..=l).map(|k| 7u64.pow(k)).sum();
        let got = program_count(MachineKind::Brainfuck, l, &cfg);
        if got != want {
            failures.push(format!("bf L={l}: {got} != {want}"));
        }
    }
    for l in 1..=30u32 {
        let want: u64 = (1..=l).map(|k| 1u64 << (k - 1)).sum();
        let got = program_count(MachineKind::Rule110, l, &cfg);
        if got != want {
            failures.push(format!("rule110 L={l}: {got} != {want}"));
        }
    }
    // the streams themselves, for small bounds
    for (kind, l) in [(MachineKind::Brainfuck, 5), (MachineKind::Rule110, 14)] {
        let space = ProgramSpace::new(kind, l, &cfg);
        let n = space.iter().count() as u64;
        if n != program_count(kind, l, &cfg) {
            failures.push(format!("{kind} L={l}: stream yields {n}"));
        }
    }
    let bf11 = program_count(MachineKind::Brainfuck, 11, &cfg);
    let near = rel_err(bf11 as f64, 2.3e9) < 0.01;
    if !near {
        failures.push(format!("bf L=11 total {bf11} is not about 2.3e9"));
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!("bf L=1..11 and rule110 L=1..30 match; bf L=11 total {bf11}")
    } else {
        failures.join("; ")
    };
    Ok(report(9, "enumeration counts", passed, detail))
}

/// Every criterion in order.
pub fn run_all(scale: &Scale) -> Result<Vec<CriterionReport>> {
    Ok(vec![
        criterion_1()?,
        criterion_2()?,
        criterion_3()?,
        criterion_4()?,
        criterion_5()?,
        criterion_6()?,
        criterion_7(scale)?,
        criterion_8(scale)?,
        criterion_9()?,
    ])
}
