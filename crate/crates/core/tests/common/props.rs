//! Property checks shared by the acceptance report and the property tests.
//! Each runs a fixed-seed [`TestRunner`] and returns the failure message.

use maxahp_core::ahp::{
    aggregate, brute_force_gsr, commutes, global_optimum, membership_c_psi,
    membership_via_aggregate, normalized_radius, pareto_oracle, rank_alternatives, relative_error,
    Optimality, Sampler, Verdict,
};
use maxahp_core::tropical::{
    brute_force_cycle_mean, cycle_mean, kleene_star, max_matmul, spectral_profile,
};
use maxahp_core::{PositiveVector, Tolerances};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{combination, max_combination, nonneg_matrix, runner, sr3_pair, sr_matrix, sr_set};

pub type Outcome = Result<(), String>;

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn cycle_mean_matches_enumeration(cases: u32) -> Outcome {
    run(cases, nonneg_matrix(6), |a| {
        let fast = cycle_mean(&a);
        let slow = brute_force_cycle_mean(&a).unwrap();
        prop_assert!(rel_close(fast, slow, 1e-9), "{fast} vs {slow} for {a}");
        Ok(())
    })
}

pub fn star_idempotent_and_above_identity(cases: u32) -> Outcome {
    run(cases, nonneg_matrix(6), |a| {
        let mu = cycle_mean(&a);
        let a = if mu > 0.0 {
            a.scale(1.0 / mu).unwrap()
        } else {
            a
        };
        let star = kleene_star(&a, 1e-9).unwrap();
        let sq = max_matmul(&star, &star).unwrap();
        prop_assert!(sq.approx_eq(&star, 1e-9), "star not idempotent for {a}");
        for i in 0..a.dim() {
            prop_assert!(star.get(i, i) >= 1.0);
        }
        Ok(())
    })
}

pub fn membership_equivalence(cases: u32) -> Outcome {
    let strategy = (
        sr_set(6, 4),
        prop::collection::vec(-2.0f64..2.0, 6),
        prop_oneof![Just(0.0), -0.2f64..0.2],
    );
    run(cases, strategy, |(ps, y, shift)| {
        let n = ps[0].dim();
        let x = PositiveVector::new(y[..n].iter().map(|v| v.exp()).collect()).unwrap();
        let s = aggregate(&ps, false).unwrap();
        let r = relative_error(&s, &x).unwrap() * shift.exp();
        for tol in [0.0, 1e-9] {
            let direct = membership_c_psi(&ps, &x, r, tol).unwrap();
            let via = membership_via_aggregate(&ps, &x, r, tol).unwrap();
            prop_assert_eq!(direct, via, "r = {}, tol = {}", r, tol);
        }
        Ok(())
    })
}

pub fn c_psi_convex_and_max_convex(cases: u32) -> Outcome {
    let strategy = (
        sr_set(6, 4),
        combination(6),
        combination(6),
        0.0f64..0.5,
        0.0f64..=1.0,
        0.0f64..=1.0,
    );
    run(cases, strategy, |(ps, lx, ly, slack, lambda, beta)| {
        let s = aggregate(&ps, false).unwrap();
        let r = cycle_mean(&s) * slack.exp();
        let star = kleene_star(&s.scale(1.0 / r).unwrap(), 1e-9).unwrap();
        let x = max_combination(&star, &lx);
        let y = max_combination(&star, &ly);
        let tol = 1e-9;
        prop_assert!(membership_c_psi(&ps, &x, r, tol).unwrap());
        prop_assert!(membership_c_psi(&ps, &y, r, tol).unwrap());
        let convex: Vec<f64> = x
            .as_slice()
            .iter()
            .zip(y.as_slice())
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        prop_assert!(membership_c_psi(&ps, &PositiveVector::new(convex).unwrap(), r, tol).unwrap());
        let (ca, cb) = if beta < 0.5 {
            (1.0, 2.0 * beta)
        } else {
            (2.0 * (1.0 - beta), 1.0)
        };
        let maxed: Vec<f64> = x
            .as_slice()
            .iter()
            .zip(y.as_slice())
            .map(|(a, b)| (ca * a).max(cb * b))
            .collect();
        prop_assert!(membership_c_psi(&ps, &PositiveVector::new(maxed).unwrap(), r, tol).unwrap());
        Ok(())
    })
}

pub fn d_psi_entry_bounds(cases: u32) -> Outcome {
    let strategy = (sr_set(6, 4), combination(6), 0.0f64..0.5);
    run(cases, strategy, |(ps, lx, slack)| {
        let s = aggregate(&ps, false).unwrap();
        let r = cycle_mean(&s) * slack.exp();
        let star = kleene_star(&s.scale(1.0 / r).unwrap(), 1e-9).unwrap();
        let x = max_combination(&star, &lx).normalized_first();
        for j in 0..x.len() {
            let lo = s.get(j, 0) / r;
            let hi = r / s.get(0, j);
            prop_assert!(x[j] >= lo * (1.0 - 1e-9), "x_{} = {} < {}", j, x[j], lo);
            prop_assert!(x[j] <= hi * (1.0 + 1e-9), "x_{} = {} > {}", j, x[j], hi);
        }
        Ok(())
    })
}

pub fn sr3_triple_equivalence(cases: u32) -> Outcome {
    let tol = Tolerances::default();
    run(cases, sr3_pair(), |(ps, kind)| {
        let comm = commutes(ps[0].matrix(), ps[1].matrix(), 1e-9).unwrap();
        let radius_one = normalized_radius(&ps).unwrap() <= 1.0 + tol.normalized_radius;
        let common = global_optimum(&ps, &tol).unwrap().is_some();
        prop_assert!(
            comm == radius_one && radius_one == common,
            "{kind}: commute {comm}, mu(S^)=1 {radius_one}, common subeigenvector {common}"
        );
        if kind == "commuting" {
            prop_assert!(comm);
        }
        if kind == "perturbed" {
            prop_assert!(!comm);
        }
        Ok(())
    })
}

pub fn distinct_2x2_pairs_have_no_global_optimum(cases: u32) -> Outcome {
    let tol = Tolerances::default();
    let strategy = (sr_matrix(2), sr_matrix(2)).prop_filter("distinct", |(a, b)| {
        (a.matrix().get(0, 1) / b.matrix().get(0, 1)).ln().abs() > 1e-4
    });
    run(cases, strategy, |(a, b)| {
        prop_assert!(global_optimum(&[a, b], &tol).unwrap().is_none());
        Ok(())
    })
}

pub fn brute_force_gsr_bounded_by_aggregate(cases: u32) -> Outcome {
    run(cases, (sr_set(6, 3), 1usize..=6), |(ps, p)| {
        let mu = cycle_mean(&aggregate(&ps, false).unwrap());
        let gsr = brute_force_gsr(&ps, p).unwrap();
        prop_assert!(gsr <= mu * (1.0 + 1e-9), "p = {p}: {gsr} > {mu}");
        let full = brute_force_gsr(&ps, 6).unwrap();
        prop_assert!(full >= 0.95 * mu, "{full} not within 5% of {mu}");
        Ok(())
    })
}

pub fn c_psi_points_are_weakly_pareto(cases: u32) -> Outcome {
    let sampler = Sampler::Random {
        cloud: 200,
        radius: 0.5,
        global: 100,
        global_radius: 2.5,
        seed: 17,
    };
    run(cases, (sr_set(5, 3), combination(5)), |(ps, l)| {
        let s = aggregate(&ps, false).unwrap();
        let profile = spectral_profile(&s, 1e-9).unwrap();
        let star = kleene_star(&s.scale(1.0 / profile.mu).unwrap(), 1e-9).unwrap();
        let x = max_combination(&star, &l);
        let verdict = pareto_oracle(&ps, &x, &sampler, Optimality::WeakPareto).unwrap();
        prop_assert!(matches!(verdict, Verdict::NotRefuted { .. }), "{verdict:?}");
        Ok(())
    })
}

pub fn ranking_scale_invariant(cases: u32) -> Outcome {
    let strategy = (
        prop::collection::vec(-3.0f64..3.0, 1..=8),
        -10.0f64..10.0,
        sr_matrix(4),
        prop::collection::vec(-2.0f64..2.0, 4),
    );
    run(cases, strategy, |(y, log_scale, a, z)| {
        let w = PositiveVector::new(y.iter().map(|v| v.exp()).collect()).unwrap();
        let scaled = w.scaled(log_scale.exp()).unwrap();
        prop_assert_eq!(
            rank_alternatives(&w, 1e-3),
            rank_alternatives(&scaled, 1e-3)
        );
        let x = PositiveVector::new(z.iter().map(|v| v.exp()).collect()).unwrap();
        let e = relative_error(a.matrix(), &x).unwrap();
        let es = relative_error(a.matrix(), &x.scaled(log_scale.exp()).unwrap()).unwrap();
        prop_assert!(rel_close(e, es, 1e-12));
        Ok(())
    })
}
