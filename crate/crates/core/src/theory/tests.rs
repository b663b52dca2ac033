use proptest::prelude::*;

use super::closed::{approximate, closed_tail_sums, closed_window};
use super::*;

const BB: DefaultBusyBeaver = DefaultBusyBeaver;

fn params(t: i64, m_hat: i64, k_hat: i64) -> TheoryParams {
    TheoryParams::new(t, 1 << 20, m_hat, k_hat).unwrap()
}

/// Integer sums `(Z, Σ m·w, Σ k·w)` of `2^{scale(m, k)}` over the drop region.
fn integer_sums(p: &TheoryParams, scale: impl Fn(i64, i64) -> u32) -> (u128, u128, u128) {
    let (mut z, mut ms, mut ks) = (0u128, 0u128, 0u128);
    for m in p.t..p.k_hat {
        for k in m..p.k_hat {
            let w = 1u128 << scale(m, k);
            z += w;
            ms += w * m as u128;
            ks += w * k as u128;
        }
    }
    (z, ms, ks)
}

fn l2(x: u128) -> f64 {
    (x as f64).log2()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn length_sums_against_integers() {
    for (t, m_hat, k_hat) in [(10, 5, 40), (3, 1, 3), (3, 2, 4), (7, 1, 60), (20, 19, 100)] {
        let p = params(t, m_hat, k_hat);
        let (z, ms, ks) = integer_sums(&p, |m, k| (k - m) as u32);
        for s in [exact_tail_sums(PriorKind::Length, &p, &BB).unwrap(), closed_tail_sums(PriorKind::Length, &p, &BB).unwrap()] {
            if z == 0 {
                assert_eq!(s.log2_z_drop, f64::NEG_INFINITY);
                continue;
            }
            assert!(close(s.log2_z_drop, l2(z), 1e-9), "{p}: {} vs {}", s.log2_z_drop, l2(z));
            assert!(close(s.log2_m_sum, l2(ms), 1e-9), "{p}");
            assert!(close(s.log2_k_sum, l2(ks), 1e-9), "{p}");
            assert_eq!(s.log2_z_stop, (k_hat - m_hat) as f64);
        }
    }
}

#[test]
fn length_worked_example() {
    let p = params(10, 5, 40);
    let s = exact_tail_sums(PriorKind::Length, &p, &BB).unwrap();
    assert!(close(s.log2_z_drop.exp2(), (1u64 << 31) as f64 - 32.0, 1e-3));
    assert_eq!(s.log2_z_stop.exp2(), (1u64 << 35) as f64);
}

#[test]
fn algorithmic_sums_against_integers() {
    for (t, m_hat, k_hat) in [(10, 5, 40), (3, 2, 3), (4, 1, 5), (12, 3, 90)] {
        let p = params(t, m_hat, k_hat);
        // scaled by 2^{k̂}
        let (z, ms, ks) = integer_sums(&p, |m, _| (k_hat - m) as u32);
        let kh = k_hat as f64;
        for s in [
            exact_tail_sums(PriorKind::Algorithmic, &p, &BB).unwrap(),
            closed_tail_sums(PriorKind::Algorithmic, &p, &BB).unwrap(),
        ] {
            if z == 0 {
                assert_eq!(s.log2_z_drop, f64::NEG_INFINITY);
                continue;
            }
            assert!(close(s.log2_z_drop, l2(z) - kh, 1e-9), "{p}");
            assert!(close(s.log2_m_sum, l2(ms) - kh, 1e-9), "{p}");
            assert!(close(s.log2_k_sum, l2(ks) - kh, 1e-9), "{p}");
        }
        // the published closed form of the drop mass
        let d = (k_hat - t) as f64;
        if d == 0.0 {
            continue;
        }
        let want = (d - 1.0) * (1.0 - t as f64).exp2() + (1.0 - kh).exp2();
        let got = exact_tail_sums(PriorKind::Algorithmic, &p, &BB).unwrap().log2_z_drop.exp2();
        assert!(((got - want) / want).abs() < 1e-12);
    }
}

#[test]
fn speed_sums_against_integers() {
    // log2 BB(m) = m keeps every weight a power of two: 2^{-2m}
    let bb = |m: i64| m as f64;
    for (t, m_hat, k_hat) in [(3, 1, 20), (5, 4, 6), (10, 2, 55)] {
        let p = params(t, m_hat, k_hat);
        let (z, ms, ks) = integer_sums(&p, |m, _| 2 * (k_hat - m) as u32);
        let off = 2.0 * k_hat as f64;
        for s in [exact_tail_sums(PriorKind::Speed, &p, &bb).unwrap(), closed_tail_sums(PriorKind::Speed, &p, &bb).unwrap()] {
            assert!(close(s.log2_z_drop, l2(z) - off, 1e-9), "{p}");
            assert!(close(s.log2_m_sum, l2(ms) - off, 1e-9), "{p}");
            assert!(close(s.log2_k_sum, l2(ks) - off, 1e-9), "{p}");
            assert_eq!(s.log2_z_stop, -2.0 * m_hat as f64);
        }
    }
}

#[test]
fn speed_dominant_term() {
    let p = params(10, 5, 40);
    let s = exact_tail_sums(PriorKind::Speed, &p, &BB).unwrap();
    let want = 30f64.log2() - 10.0 - 1024.0;
    assert!(((s.log2_z_drop - want).exp2() - 1.0).abs() < 1e-6);
    let cf = closed_tail_sums(PriorKind::Speed, &p, &BB).unwrap();
    assert!(close(cf.log2_z_drop, s.log2_z_drop, 1e-9));
    let (em, ek) = s.conditional_expectations().unwrap();
    assert!(close(em, 10.0, 1e-6) && close(ek, 24.5, 1e-6));
}

#[test]
fn drop_probability_examples() {
    let p = drop_probability(PriorKind::Length, &params(10, 9, 60), &BB).unwrap();
    assert!(close(p, 0.5, 1e-12), "{p}");
    let p = drop_probability(PriorKind::Length, &params(15, 5, 60), &BB).unwrap();
    assert!((p / 2f64.powi(-9) - 1.0).abs() < 0.05, "{p}");
    let p = drop_probability(PriorKind::Speed, &params(10, 9, 60), &BB).unwrap();
    assert!(p < 1e-6);
}

#[test]
fn expectation_examples() {
    let e = conditional_expectations(PriorKind::Length, &params(10, 5, 60), &BB).unwrap().unwrap();
    assert!(close(e.e_m, 11.0, 0.2) && close(e.e_k, 58.0, 0.2), "{e:?}");
    let e = conditional_expectations(PriorKind::Algorithmic, &params(10, 5, 60), &BB).unwrap().unwrap();
    assert!(close(e.e_k, 35.0, 0.5), "{e:?}");
    let e = conditional_expectations(PriorKind::Speed, &params(10, 5, 60), &BB).unwrap().unwrap();
    assert!(close(e.e_m, 10.0, 0.01) && close(e.e_k, 34.5, 0.01), "{e:?}");
    // no room for a drop
    let p = params(10, 5, 10);
    assert_eq!(conditional_expectations(PriorKind::Length, &p, &BB).unwrap(), None);
    assert_eq!(drop_probability(PriorKind::Algorithmic, &p, &BB).unwrap(), 0.0);
    assert_eq!(expected_progress(PriorKind::Length, &p, &BB).unwrap(), 0.0);
}

#[test]
fn expected_progress_examples() {
    let e = expected_progress(PriorKind::Length, &params(10, 9, 60), &BB).unwrap();
    assert!(close(e, 1.0, 0.01), "{e}");
    // deep in the stagnation regime the ratio approaches (k̂-t-1)(k̂-t)/4
    let p = params(25, 5, 75);
    let r = expected_progress(PriorKind::Algorithmic, &p, &BB).unwrap() / expected_progress(PriorKind::Length, &p, &BB).unwrap();
    assert!((r / 612.5 - 1.0).abs() < 0.2, "{r}");
}

#[test]
fn ratio_examples() {
    let r = prior_ratio(&TheoryParams::new(30, 4096, 10, 80).unwrap()).unwrap();
    assert_eq!(r.prob_ratio_approx, 49.0);
    assert!((r.prob_ratio / 49.0 - 1.0).abs() < 0.1, "{r:?}");
    assert!(r.in_regime());
    let r = prior_ratio(&params(10, 5, 12)).unwrap();
    assert_eq!(r.prob_ratio_approx, 1.0);
    assert!(!r.large_gap);
}

#[test]
fn window_examples() {
    let p = params(15, 5, 60);
    for prior in PriorKind::ALL {
        let full = drop_probability(prior, &p, &BB).unwrap();
        let e = expected_progress(prior, &p, &BB).unwrap();
        for dc in [45, 46, 1000] {
            let w = window_results(prior, &p, &BB, dc).unwrap();
            assert_eq!(w.p_window, full);
            assert_eq!(w.progress_window, e);
        }
    }
    let full = drop_probability(PriorKind::Length, &p, &BB).unwrap();
    let w = window_results(PriorKind::Length, &p, &BB, 1).unwrap();
    assert!((w.p_window / full / 0.5 - 1.0).abs() < 0.05);
    assert!(w.p_window_upper >= w.p_window);
}

#[test]
fn closed_windows_match_literal_windows() {
    for (t, m_hat, k_hat) in [(15, 5, 60), (3, 1, 4), (8, 7, 30), (30, 2, 120)] {
        let p = params(t, m_hat, k_hat);
        for prior in PriorKind::ALL {
            for dc in [1, 2, 5, 17, 200] {
                let a = window_results(prior, &p, &BB, dc).unwrap();
                let b = closed_window(prior, &p, &BB, dc).unwrap();
                let rel = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(y.abs()) + 1e-300;
                assert!(rel(a.p_window, b.p_window), "{prior} {p} dc={dc}: {a:?} {b:?}");
                assert!(rel(a.progress_window, b.progress_window), "{prior} {p} dc={dc}: {a:?} {b:?}");
                assert!(rel(a.p_window_upper, b.p_window_upper), "{prior} {p} dc={dc}: {a:?} {b:?}");
            }
        }
    }
}

#[test]
fn surrogate_checks() {
    assert!(check_busy_beaver(&BB, 0, 60).is_ok());
    assert!(check_busy_beaver(&|m: i64| m as f64, 1, 10).is_err());
    assert!(check_busy_beaver(&|m: i64| -(m as f64), 0, 3).is_err());
}

#[test]
fn invalid_params() {
    assert!(TheoryParams::new(10, 100, 0, 20).is_err());
    assert!(TheoryParams::new(10, 100, 10, 20).is_err());
    assert!(TheoryParams::new(10, 100, 5, 9).is_err());
    assert!(TheoryParams::new(10, 20, 5, 20).is_err());
    assert!(TheoryParams::new(10, 21, 5, 20).is_ok());
    assert!(window_results(PriorKind::Length, &params(10, 5, 20), &BB, 0).is_err());
}

#[test]
fn curves_shape_and_csv() {
    let base = TheoryParams::new(30, 4096, 29, 120).unwrap();
    let rows = theory_curves(&base, 1..=40, &BB).unwrap();
    assert_eq!(rows.len(), 120);
    for prior in [PriorKind::Length, PriorKind::Algorithmic] {
        let r: Vec<&TheoryRow> = rows.iter().filter(|r| r.prior == prior).collect();
        assert!(r.iter().all(|x| x.e_progress_bits <= r[0].e_progress_bits));
        assert!(r.windows(2).all(|w| w[1].p_drop <= w[0].p_drop));
    }
    assert!(rows.iter().filter(|r| r.prior == PriorKind::Speed).all(|r| r.e_progress_bits < 1e-100));
    let mut buf = Vec::new();
    write_theory_csv(&rows, &mut buf).unwrap();
    assert_eq!(read_theory_csv(buf.as_slice()).unwrap(), rows);
}

#[test]
fn length_progress_slope() {
    let base = TheoryParams::new(30, 4096, 29, 120).unwrap();
    let rows = theory_curves(&base, 5..=20, &BB).unwrap();
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.prior == PriorKind::Length)
        .map(|r| (r.s as f64, r.e_progress_bits))
        .collect();
    let slope = log2_slope(&pts).unwrap();
    assert!(close(slope, -1.0, 0.1), "{slope}");
}

fn valid_params() -> impl Strategy<Value = TheoryParams> {
    (1i64..40, 1i64..60, 0i64..80).prop_map(|(m_hat, s, gap)| {
        let t = m_hat + s;
        TheoryParams::new(t, t + gap + 1, m_hat, t + gap).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probabilities_and_expectations_in_range(p in valid_params()) {
        for prior in PriorKind::ALL {
            let s = exact_tail_sums(prior, &p, &BB).unwrap();
            let q = s.drop_probability();
            prop_assert!((0.0..=1.0).contains(&q));
            if let Some((em, ek)) = s.conditional_expectations() {
                let (lo, hi) = (p.t as f64 - 1e-9, (p.k_hat - 1) as f64 + 1e-9);
                prop_assert!(em >= lo && em <= hi, "{prior} {p}: E_m={em}");
                prop_assert!(ek >= lo && ek <= hi, "{prior} {p}: E_k={ek}");
            }
        }
    }

    #[test]
    fn longer_stagnation_lowers_drop_probability(p in valid_params()) {
        prop_assume!(p.m_hat > 1);
        let longer = TheoryParams { m_hat: p.m_hat - 1, ..p };
        for prior in PriorKind::ALL {
            let a = drop_probability(prior, &p, &BB).unwrap();
            let b = drop_probability(prior, &longer, &BB).unwrap();
            prop_assert!(b <= a, "{prior} {p}: {b} > {a}");
        }
    }

    #[test]
    fn windows_grow_to_the_full_value(p in valid_params()) {
        for prior in [PriorKind::Length, PriorKind::Algorithmic] {
            let mut last = 0.0;
            for dc in 1..=p.gap().max(1) + 1 {
                let w = window_results(prior, &p, &BB, dc).unwrap();
                prop_assert!(w.p_window >= last);
                last = w.p_window;
            }
            prop_assert_eq!(last, drop_probability(prior, &p, &BB).unwrap());
        }
    }

    #[test]
    fn algorithmic_dominates_length(p in valid_params()) {
        prop_assume!(p.k_hat > p.t + 2);
        let l = drop_probability(PriorKind::Length, &p, &BB).unwrap();
        let m = drop_probability(PriorKind::Algorithmic, &p, &BB).unwrap();
        prop_assert!(m >= l, "{p}: {m} < {l}");
    }

    #[test]
    fn closed_forms_agree(p in valid_params()) {
        for prior in PriorKind::ALL {
            let a = exact_tail_sums(prior, &p, &BB).unwrap();
            let b = closed_tail_sums(prior, &p, &BB).unwrap();
            prop_assert!((a.drop_probability() - b.drop_probability()).abs() <= 1e-9 * a.drop_probability().max(1e-300));
            match (a.conditional_expectations(), b.conditional_expectations()) {
                (Some(x), Some(y)) => {
                    prop_assert!((x.0 - y.0).abs() < 1e-6 && (x.1 - y.1).abs() < 1e-6, "{prior} {p}: {x:?} {y:?}");
                }
                (None, None) => {}
                other => prop_assert!(false, "{prior} {p}: {other:?}"),
            }
        }
    }

    #[test]
    fn approximations_in_the_large_gap_regime(p in valid_params()) {
        prop_assume!(p.gap() >= 20);
        for prior in [PriorKind::Length, PriorKind::Algorithmic] {
            let a = exact_tail_sums(prior, &p, &BB).unwrap();
            let x = approximate(prior, &p, &BB);
            prop_assert!((x.drop_probability() / a.drop_probability() - 1.0).abs() < 0.02);
            let (em, ek) = a.conditional_expectations().unwrap();
            prop_assert!((em - x.e_m).abs() < 0.5 && (ek - x.e_k).abs() < 0.5, "{prior} {p}");
        }
    }
}
