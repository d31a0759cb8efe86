use heptasweep::generators::{
    gen_fd6_laplacian, gen_planted_zero_minors, gen_random_dd, gen_singular, SingularKind,
};
use heptasweep::matrix::inf_norm;
use heptasweep::oracle::{exact_determinant, leading_minors, solve_f64, ExactMatrix};
use heptasweep::sweep::{forward_sweep, solve, SolveError, DEFAULT_EPS};
use heptasweep::symbolic::to_f64;
use heptasweep::HeptaMatrix;
use proptest::prelude::*;

fn rel_err(x: &[f64], reference: &[f64]) -> f64 {
    let diff: Vec<f64> = x.iter().zip(reference).map(|(a, b)| a - b).collect();
    inf_norm(&diff) / inf_norm(reference)
}

fn rhs(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = heptasweep::generators::SplitMix64::new(seed ^ 0x5EED);
    (0..n).map(|_| rng.next_signed()).collect()
}

fn check_against_oracle(m: &HeptaMatrix, y: &[f64], tol: f64) {
    let r = solve(m, y, DEFAULT_EPS).unwrap();
    let x_star = solve_f64(m, y).unwrap();
    assert!(
        rel_err(&r.x, &x_star) <= tol,
        "error {}",
        rel_err(&r.x, &x_star)
    );
    assert!(r.residual_inf <= 1e-7 * (1.0 + inf_norm(y)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_dd_matches_oracle(n in 7usize..40, seed in any::<u64>()) {
        let m = gen_random_dd(n, seed, 1.5).unwrap();
        let y = rhs(n, seed);
        check_against_oracle(&m, &y, 1e-8);
        let det = exact_determinant(&ExactMatrix::from_hepta(&m));
        let r = solve(&m, &y, DEFAULT_EPS).unwrap();
        let want = to_f64(&det);
        prop_assert!(((r.det - want) / want).abs() <= 1e-9);
        prop_assert!(!r.used_symbolic);
    }

    #[test]
    fn pivot_products_are_leading_minors(n in 7usize..33, seed in any::<u64>()) {
        let m = gen_random_dd(n, seed, 1.5).unwrap();
        let state = forward_sweep(&m, &vec![0.0; n], DEFAULT_EPS).unwrap();
        let minors = leading_minors(&ExactMatrix::from_hepta(&m));
        let mut prod = 1.0;
        for (mu, mi) in state.mu.iter().zip(&minors) {
            prod *= mu.as_numeric().unwrap();
            let want = to_f64(mi);
            prop_assert!(((prod - want) / want).abs() <= 1e-9);
        }
    }

    #[test]
    fn solve_is_linear(n in 7usize..30, seed in any::<u64>(), a in -4.0f64..4.0, b in -4.0f64..4.0) {
        let m = gen_random_dd(n, seed, 1.5).unwrap();
        let (y1, y2) = (rhs(n, seed), rhs(n, !seed));
        let y: Vec<f64> = y1.iter().zip(&y2).map(|(p, q)| a * p + b * q).collect();
        let x1 = solve(&m, &y1, DEFAULT_EPS).unwrap().x;
        let x2 = solve(&m, &y2, DEFAULT_EPS).unwrap().x;
        let x = solve(&m, &y, DEFAULT_EPS).unwrap().x;
        let combo: Vec<f64> = x1.iter().zip(&x2).map(|(p, q)| a * p + b * q).collect();
        prop_assert!(inf_norm(&x.iter().zip(&combo).map(|(p, q)| p - q).collect::<Vec<_>>())
            <= 1e-10 * (1.0 + inf_norm(&combo)));
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn planted_zero_takes_the_symbolic_path(n in 7usize..20, seed in any::<u64>(), at in 0usize..5) {
        let (m, cert) = gen_planted_zero_minors(n, seed, &[at]).unwrap();
        let y = rhs(n, seed);
        let r = solve(&m, &y, DEFAULT_EPS).unwrap();
        prop_assert!(r.used_symbolic);
        prop_assert_eq!(r.symb_index, Some(at));
        let x_star = solve_f64(&m, &y).unwrap();
        prop_assert!(rel_err(&r.x, &x_star) <= 1e-8);
        let state = forward_sweep(&m, &y, DEFAULT_EPS).unwrap();
        prop_assert_eq!(state.comparisons, at + 1);
        let _ = cert;
    }
}

#[test]
fn multiple_planted_zeros() {
    for (k, zero_at) in [vec![1, 4], vec![0, 3, 6], vec![2, 5, 9]]
        .iter()
        .enumerate()
    {
        for seed in 0..5u64 {
            let n = 12 + k;
            let (m, cert) = gen_planted_zero_minors(n, seed, zero_at).unwrap();
            assert!(!num_traits::Zero::is_zero(cert.determinant()));
            let y = rhs(n, seed);
            let state = forward_sweep(&m, &y, DEFAULT_EPS).unwrap();
            assert_eq!(state.symb_index, Some(zero_at[0]));
            assert_eq!(state.comparisons, zero_at[0] + 1);
            check_against_oracle(&m, &y, 1e-8);
        }
    }
}

#[test]
fn singular_kinds_are_reported() {
    let kinds = [
        SingularKind::ZeroRow,
        SingularKind::ZeroColumn,
        SingularKind::DuplicateRows,
    ];
    for (seed, kind) in kinds.iter().cycle().take(30).enumerate() {
        let n = 7 + seed % 9;
        let at = seed % (n - 1);
        let m = gen_singular(n, seed as u64, *kind, at).unwrap();
        assert!(num_traits::Zero::is_zero(&exact_determinant(
            &ExactMatrix::from_hepta(&m)
        )));
        assert_eq!(
            solve(&m, &vec![1.0; n], DEFAULT_EPS),
            Err(SolveError::Singular),
            "{kind:?} at {at}, n {n}"
        );
    }
}

#[test]
fn fd6_laplacian_matches_oracle() {
    for n in [7, 8, 13, 40] {
        let m = gen_fd6_laplacian(n, 0.5).unwrap();
        let y = rhs(n, n as u64);
        check_against_oracle(&m, &y, 1e-8);
    }
}
