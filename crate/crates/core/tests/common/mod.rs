#![allow(dead_code)]

pub mod props;

use maxahp_core::ahp::{validate_sr, SrMatrix};
use maxahp_core::{MaxMatrix, PositiveVector};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const SEED: [u8; 32] = *b"maxahp-core-property-suite-seed!";

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

pub fn m(rows: &[&[f64]]) -> MaxMatrix {
    MaxMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn sr(rows: &[&[f64]]) -> SrMatrix {
    validate_sr(m(rows), None, 1e-9).unwrap()
}

pub fn pv(v: &[f64]) -> PositiveVector {
    PositiveVector::new(v.to_vec()).unwrap()
}

/// Vacation example: criteria matrix and the five criterion matrices.
pub fn vacation() -> (SrMatrix, Vec<SrMatrix>) {
    let c = sr(&[
        &[1.0, 1.0 / 5.0, 1.0 / 5.0, 1.0, 1.0 / 3.0],
        &[5.0, 1.0, 1.0 / 5.0, 1.0 / 5.0, 1.0],
        &[5.0, 5.0, 1.0, 1.0 / 5.0, 1.0],
        &[1.0, 5.0, 5.0, 1.0, 5.0],
        &[3.0, 1.0, 1.0, 1.0 / 5.0, 1.0],
    ]);
    let a1 = sr(&[
        &[1.0, 3.0, 7.0, 9.0],
        &[1.0 / 3.0, 1.0, 6.0, 7.0],
        &[1.0 / 7.0, 1.0 / 6.0, 1.0, 3.0],
        &[1.0 / 9.0, 1.0 / 7.0, 1.0 / 3.0, 1.0],
    ]);
    let a2 = sr(&[
        &[1.0, 1.0 / 5.0, 1.0 / 6.0, 1.0 / 4.0],
        &[5.0, 1.0, 2.0, 4.0],
        &[6.0, 1.0 / 2.0, 1.0, 6.0],
        &[4.0, 1.0 / 4.0, 1.0 / 6.0, 1.0],
    ]);
    let a3 = sr(&[
        &[1.0, 7.0, 7.0, 1.0 / 2.0],
        &[1.0 / 7.0, 1.0, 1.0, 1.0 / 7.0],
        &[1.0 / 7.0, 1.0, 1.0, 1.0 / 7.0],
        &[2.0, 7.0, 7.0, 1.0],
    ]);
    let a4 = sr(&[
        &[1.0, 4.0, 1.0 / 4.0, 1.0 / 3.0],
        &[1.0 / 4.0, 1.0, 1.0 / 2.0, 3.0],
        &[4.0, 2.0, 1.0, 3.0],
        &[3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0],
    ]);
    let a5 = sr(&[
        &[1.0, 1.0, 7.0, 4.0],
        &[1.0, 1.0, 6.0, 3.0],
        &[1.0 / 7.0, 1.0 / 6.0, 1.0, 1.0 / 4.0],
        &[1.0 / 4.0, 1.0 / 3.0, 4.0, 1.0],
    ]);
    (c, vec![a1, a2, a3, a4, a5])
}

/// 4×4 pair with a common subeigenvector that does not commute.
pub fn common_subeigenvector_pair() -> Vec<SrMatrix> {
    vec![
        sr(&[
            &[1.0, 8.0, 1.0 / 4.0, 7.0],
            &[1.0 / 8.0, 1.0, 6.0, 1.0 / 4.0],
            &[4.0, 1.0 / 6.0, 1.0, 4.0],
            &[1.0 / 7.0, 4.0, 1.0 / 4.0, 1.0],
        ]),
        sr(&[
            &[1.0, 4.0, 5.0, 9.0],
            &[1.0 / 4.0, 1.0, 1.0 / 8.0, 9.0],
            &[1.0 / 5.0, 8.0, 1.0, 1.0 / 8.0],
            &[1.0 / 9.0, 1.0 / 9.0, 8.0, 1.0],
        ]),
    ]
}

/// 4×4 pair whose aggregate has a unique min-max direction.
pub fn unique_minmax_pair() -> Vec<SrMatrix> {
    vec![
        sr(&[
            &[1.0, 9.0, 1.0 / 4.0, 2.0],
            &[1.0 / 9.0, 1.0, 6.0, 3.0],
            &[4.0, 1.0 / 6.0, 1.0, 1.0 / 4.0],
            &[1.0 / 2.0, 1.0 / 3.0, 4.0, 1.0],
        ]),
        sr(&[
            &[1.0, 1.0 / 2.0, 4.0, 1.0 / 8.0],
            &[2.0, 1.0, 3.0, 2.0],
            &[1.0 / 4.0, 1.0 / 3.0, 1.0, 5.0],
            &[8.0, 1.0 / 2.0, 1.0 / 5.0, 1.0],
        ]),
    ]
}

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![3 => (-3.0f64..3.0).prop_map(f64::exp), 1 => Just(0.0)]
}

/// Nonnegative `n × n` matrix, `1 ≤ n ≤ max_n`, about a quarter zeros.
pub fn nonneg_matrix(max_n: usize) -> impl Strategy<Value = MaxMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(entry(), n * n).prop_map(move |d| MaxMatrix::new(n, d).unwrap())
    })
}

/// SR matrix from upper-triangle log entries.
pub fn sr_from_logs(n: usize, logs: &[f64]) -> SrMatrix {
    let mut a = vec![1.0; n * n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            a[i * n + j] = logs[k].exp();
            a[j * n + i] = (-logs[k]).exp();
            k += 1;
        }
    }
    validate_sr(MaxMatrix::new(n, a).unwrap(), None, 1e-9).unwrap()
}

pub fn sr_matrix(n: usize) -> impl Strategy<Value = SrMatrix> {
    let l = 9f64.ln();
    prop::collection::vec(-l..l, n * (n - 1) / 2).prop_map(move |logs| sr_from_logs(n, &logs))
}

/// `1..=max_m` SR matrices of a shared size `2..=max_n`.
pub fn sr_set(max_n: usize, max_m: usize) -> impl Strategy<Value = Vec<SrMatrix>> {
    (2..=max_n).prop_flat_map(move |n| prop::collection::vec(sr_matrix(n), 1..=max_m))
}

/// Weights for a max-combination of `n` star columns, in log scale.
pub fn combination(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..0.0, n)
}

/// `⊕_j e^{λ_j} s_j` over the columns of a star; lies in its subeigencone.
pub fn max_combination(star: &MaxMatrix, lambdas: &[f64]) -> PositiveVector {
    let n = star.dim();
    let x: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| lambdas[j % lambdas.len()].exp() * star.get(i, j))
                .fold(0.0, f64::max)
        })
        .collect();
    PositiveVector::new(x).unwrap()
}

/// 3×3 SR matrix `X A' X⁻¹` where `A'` has `λ` on one oriented 3-cycle and
/// `1/λ` on the reverse one.
pub fn sr3_with_eigenvector(x: &[f64], log_lambda: f64, clockwise: bool) -> SrMatrix {
    let lam = log_lambda.exp();
    let mut a = [[1.0; 3]; 3];
    for i in 0..3 {
        let j = (i + 1) % 3;
        let (fwd, back) = if clockwise {
            (lam, 1.0 / lam)
        } else {
            (1.0 / lam, lam)
        };
        a[i][j] = fwd * x[i] / x[j];
        a[j][i] = back * x[j] / x[i];
    }
    validate_sr(
        MaxMatrix::from_rows(a.iter().map(|r| r.to_vec()).collect()).unwrap(),
        None,
        1e-9,
    )
    .unwrap()
}

/// 3×3 SR pairs: commuting (shared eigenvector), perturbed commuting, and
/// generic.
pub fn sr3_pair() -> impl Strategy<Value = (Vec<SrMatrix>, &'static str)> {
    let shared = (
        prop::collection::vec(-2.0f64..2.0, 3),
        0.0f64..2.0,
        0.0f64..2.0,
        any::<bool>(),
        any::<bool>(),
    );
    prop_oneof![
        shared.clone().prop_map(|(y, la, lb, ca, cb)| {
            let x: Vec<f64> = y.iter().map(|v| v.exp()).collect();
            (
                vec![
                    sr3_with_eigenvector(&x, la, ca),
                    sr3_with_eigenvector(&x, lb, cb),
                ],
                "commuting",
            )
        }),
        (shared, 0.05f64..1.0, 0usize..3).prop_map(|((y, la, lb, ca, cb), delta, edge)| {
            let x: Vec<f64> = y.iter().map(|v| v.exp()).collect();
            let a = sr3_with_eigenvector(&x, la, ca);
            let b = sr3_with_eigenvector(&x, lb, cb);
            let (i, j) = [(0, 1), (1, 2), (0, 2)][edge];
            let mut rows = b.matrix().to_rows();
            rows[i][j] *= delta.exp();
            rows[j][i] /= delta.exp();
            let b = validate_sr(MaxMatrix::from_rows(rows).unwrap(), None, 1e-9).unwrap();
            (vec![a, b], "perturbed")
        }),
        (sr_matrix(3), sr_matrix(3)).prop_map(|(a, b)| (vec![a, b], "generic")),
    ]
}
