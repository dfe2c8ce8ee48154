mod common;

use common::{
    combination, common_subeigenvector_pair, max_combination, props, runner, sr3_with_eigenvector,
    sr_matrix, sr_set,
};
use maxahp_core::ahp::{
    aggregate, brute_force_gsr, classical_ahp, global_optimum, minmax_solution, pareto_oracle,
    pareto_point, relative_error, sr_spectral_radius, visualization_check, Criteria, Optimality,
    ParetoOptions, Problem, Sampler, SrMatrix, Verdict,
};
use maxahp_core::tropical::{
    critical_graph, cycle_mean, max_eigenvector, max_matvec, spectral_profile,
};
use maxahp_core::{PositiveVector, Tolerances};
use proptest::prelude::*;

fn must(outcome: props::Outcome) {
    if let Err(e) = outcome {
        panic!("{e}");
    }
}

fn small_sampler() -> Sampler {
    Sampler::Random {
        cloud: 400,
        radius: 0.5,
        global: 100,
        global_radius: 2.5,
        seed: 3,
    }
}

/// `m` commuting 3×3 SR matrices sharing the eigenvector `exp(y)`.
fn commuting_sr3_set() -> impl Strategy<Value = Vec<SrMatrix>> {
    (
        prop::collection::vec(-2.0f64..2.0, 3),
        prop::collection::vec((0.0f64..2.0, any::<bool>()), 1..=4),
    )
        .prop_map(|(y, params)| {
            let x: Vec<f64> = y.iter().map(|v| v.exp()).collect();
            params
                .into_iter()
                .map(|(l, cw)| sr3_with_eigenvector(&x, l, cw))
                .collect()
        })
}

#[test]
fn cycle_mean_matches_enumeration() {
    must(props::cycle_mean_matches_enumeration(300));
}

#[test]
fn kleene_star_is_idempotent() {
    must(props::star_idempotent_and_above_identity(300));
}

#[test]
fn membership_through_aggregate() {
    must(props::membership_equivalence(300));
}

#[test]
fn c_psi_is_convex_and_max_convex() {
    must(props::c_psi_convex_and_max_convex(300));
}

#[test]
fn d_psi_is_bounded() {
    must(props::d_psi_entry_bounds(300));
}

#[test]
fn sr3_commutation_equivalence() {
    must(props::sr3_triple_equivalence(300));
}

#[test]
fn sr2_pairs_never_share_a_subeigenvector() {
    must(props::distinct_2x2_pairs_have_no_global_optimum(300));
}

#[test]
fn brute_force_gsr_bounds() {
    must(props::brute_force_gsr_bounded_by_aggregate(200));
}

#[test]
fn points_of_c_psi_are_weakly_pareto() {
    must(props::c_psi_points_are_weakly_pareto(200));
}

#[test]
fn rankings_ignore_scale() {
    must(props::ranking_scale_invariant(500));
}

#[test]
fn brute_force_gsr_is_exact_for_long_products() {
    let r = runner(200).run(&sr_set(4, 3), |ps| {
        let n = ps[0].dim();
        let mu = cycle_mean(&aggregate(&ps, false).unwrap());
        let gsr = brute_force_gsr(&ps, n).unwrap();
        prop_assert!((gsr - mu).abs() <= 1e-9 * mu, "{gsr} vs {mu}");
        Ok(())
    });
    r.unwrap();
}

#[test]
fn sr_radius_at_least_one_and_small_sizes_unique() {
    let r = runner(300).run(&(2usize..=6).prop_flat_map(sr_matrix), |a| {
        let mu = sr_spectral_radius(&a);
        prop_assert!(mu >= 1.0 - 1e-12);
        let profile = spectral_profile(a.matrix(), 1e-9).unwrap();
        if a.dim() <= 3 {
            prop_assert!(profile.unique_direction);
        }
        let v = max_eigenvector(a.matrix(), 1e-9).unwrap();
        let av = max_matvec(a.matrix(), &v).unwrap();
        for (lhs, x) in av.iter().zip(v.as_slice()) {
            prop_assert!((lhs - mu * x).abs() <= 1e-9 * lhs);
        }
        Ok(())
    });
    r.unwrap();
}

#[test]
fn anticritical_edges_reverse_critical_ones() {
    let r = runner(300).run(&(2usize..=6).prop_flat_map(sr_matrix), |a| {
        let g = critical_graph(a.matrix(), 1e-9).unwrap();
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(g.is_anticritical_edge(i, j), g.is_critical_edge(j, i));
                if n == 3 && i != j && g.mu > 1.0 + 1e-6 {
                    prop_assert!(g.is_critical_edge(i, j) != g.is_anticritical_edge(i, j));
                }
            }
        }
        Ok(())
    });
    r.unwrap();
}

#[test]
fn commuting_sets_are_globally_optimal_and_visualised() {
    let tol = Tolerances::default();
    let r = runner(200).run(&commuting_sr3_set(), |ps| {
        let x = global_optimum(&ps, &tol).unwrap();
        prop_assert!(x.is_some());
        let x = x.unwrap();
        for a in &ps {
            let mu = cycle_mean(a.matrix());
            prop_assert!(relative_error(a.matrix(), &x).unwrap() <= mu * (1.0 + 1e-9));
        }
        prop_assert!(visualization_check(&ps, &x, &tol, 1e-7).unwrap().passed());
        let normalised: Vec<_> = ps
            .iter()
            .map(|a| a.matrix().scale(1.0 / cycle_mean(a.matrix())).unwrap())
            .collect();
        prop_assert!(brute_force_gsr(&normalised, 4).unwrap() <= 1.0 + 1e-9);
        Ok(())
    });
    r.unwrap();
}

#[test]
fn normalised_critical_edges_agree_when_radius_is_one() {
    let r = runner(200).run(&commuting_sr3_set(), |ps| check_shared_critical(&ps));
    r.unwrap();
    check_shared_critical(&common_subeigenvector_pair()).unwrap();
}

fn check_shared_critical(ps: &[SrMatrix]) -> Result<(), TestCaseError> {
    let hats: Vec<_> = ps
        .iter()
        .map(|a| a.matrix().scale(1.0 / cycle_mean(a.matrix())).unwrap())
        .collect();
    let graphs: Vec<_> = hats
        .iter()
        .map(|h| critical_graph(h, 1e-9).unwrap())
        .collect();
    let n = hats[0].dim();
    for (a, ga) in hats.iter().zip(&graphs) {
        for (b, gb) in hats.iter().zip(&graphs) {
            for i in 0..n {
                for j in 0..n {
                    if ga.is_critical_edge(i, j) && gb.is_critical_edge(i, j) {
                        prop_assert!((a.get(i, j) - b.get(i, j)).abs() <= 1e-9 * a.get(i, j));
                    }
                    if ga.is_critical_edge(i, j) && gb.is_critical_edge(j, i) {
                        prop_assert!((a.get(i, j) * b.get(j, i) - 1.0).abs() <= 1e-9);
                    }
                }
            }
        }
    }
    Ok(())
}

#[test]
fn small_sizes_own_eigenvectors_are_pareto() {
    let sampler = small_sampler();
    let strategy =
        (2usize..=3).prop_flat_map(|n| (prop::collection::vec(sr_matrix(n), 1..=4), 0usize..4));
    let r = runner(200).run(&strategy, |(ps, pick)| {
        let a = &ps[pick % ps.len()];
        let w = max_eigenvector(a.matrix(), 1e-9).unwrap();
        let v = pareto_oracle(&ps, &w, &sampler, Optimality::Pareto).unwrap();
        prop_assert!(matches!(v, Verdict::NotRefuted { .. }), "{v:?}");
        Ok(())
    });
    r.unwrap();
}

#[test]
fn pareto_points_are_minmax_optimal() {
    let tol = Tolerances::default();
    let opts = ParetoOptions {
        certificate: small_sampler(),
        ..ParetoOptions::default()
    };
    let strategy = (sr_set(5, 3), prop::collection::vec(-1.0f64..1.0, 3));
    let r = runner(64).run(&strategy, |(ps, la)| {
        let alpha: Vec<f64> = la[..ps.len()].iter().map(|v| v.exp()).collect();
        let mu_hat = cycle_mean(&aggregate(&ps, false).unwrap());
        let points = pareto_point(&ps, &alpha, &opts, &tol).unwrap();
        prop_assert!(!points.is_empty());
        for p in points {
            prop_assert!(
                (p.max_error - mu_hat).abs() <= 1e-6 * mu_hat,
                "{} vs {mu_hat}",
                p.max_error
            );
            prop_assert!(!p.certificate.weakly_dominated);
            prop_assert_eq!(p.point[0], 1.0);
        }
        Ok(())
    });
    r.unwrap();
}

#[test]
fn minmax_value_is_a_lower_bound() {
    let tol = Tolerances::default();
    let strategy = (
        sr_set(6, 4),
        prop::collection::vec(-2.0f64..2.0, 6),
        combination(6),
    );
    let r = runner(300).run(&strategy, |(ps, y, l)| {
        let n = ps[0].dim();
        let mm = minmax_solution(&ps, &tol).unwrap();
        let worst = mm.errors.iter().copied().fold(0.0, f64::max);
        prop_assert!((worst - mm.mu_hat).abs() <= 1e-9 * mm.mu_hat);
        let x = PositiveVector::new(y[..n].iter().map(|v| v.exp()).collect()).unwrap();
        let other = ps
            .iter()
            .map(|a| relative_error(a.matrix(), &x).unwrap())
            .fold(0.0, f64::max);
        prop_assert!(other >= mm.mu_hat * (1.0 - 1e-12));
        let star = spectral_profile(&mm.aggregate, 1e-9).unwrap().star;
        let z = max_combination(&star, &l);
        let z_worst = ps
            .iter()
            .map(|a| relative_error(a.matrix(), &z).unwrap())
            .fold(0.0, f64::max);
        prop_assert!((z_worst - mm.mu_hat).abs() <= 1e-9 * mm.mu_hat);
        Ok(())
    });
    r.unwrap();
}

fn permute(a: &SrMatrix, p: &[usize]) -> SrMatrix {
    let n = a.dim();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| a.matrix().get(p[i], p[j])).collect())
        .collect();
    SrMatrix::validate(maxahp_core::MaxMatrix::from_rows(rows).unwrap(), None, 1e-9).unwrap()
}

#[test]
fn classical_pipeline_is_permutation_equivariant() {
    let strategy = sr_set(6, 4).prop_flat_map(|ps| {
        let n = ps[0].dim();
        let m = ps.len();
        (
            Just(ps),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(0.1f64..1.0, m),
        )
    });
    let r = runner(200).run(&strategy, |(ps, perm, c)| {
        let weights = Criteria::Weights(PositiveVector::new(c.clone()).unwrap());
        let base = classical_ahp(
            &Problem::from_matrices(ps.clone(), Some(weights.clone())).unwrap(),
            1e-3,
        )
        .unwrap();
        let permuted: Vec<_> = ps.iter().map(|a| permute(a, &perm)).collect();
        let moved = classical_ahp(
            &Problem::from_matrices(permuted, Some(weights)).unwrap(),
            1e-3,
        )
        .unwrap();
        for (i, &pi) in perm.iter().enumerate() {
            prop_assert!((moved.weights[i] - base.weights[pi]).abs() <= 1e-9 * base.weights[pi]);
        }
        Ok(())
    });
    r.unwrap();
}
