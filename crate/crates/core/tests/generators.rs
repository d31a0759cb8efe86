use heptasweep::generators::{
    fd6_stencil, gen_fd6_laplacian, gen_planted_zero_minors, gen_random_dd, gen_toeplitz, generate,
    Family, GenError, GenSpec,
};
use heptasweep::oracle::{leading_minors, ExactMatrix};
use heptasweep::sweep::{solve, DEFAULT_EPS};
use heptasweep::ExactRational;
use num_traits::{Signed, Zero};

fn q(p: i64, d: i64) -> ExactRational {
    ExactRational::new(p.into(), d.into())
}

#[test]
fn fd6_weights() {
    let want = [
        q(1, 90),
        q(-3, 20),
        q(3, 2),
        q(-49, 18),
        q(3, 2),
        q(-3, 20),
        q(1, 90),
    ];
    assert_eq!(fd6_stencil(), want);
}

#[test]
fn fd6_laplacian_differentiates_quadratics() {
    // Interior rows are exact for polynomials up to degree 7.
    let (n, h) = (20, 0.5);
    let m = gen_fd6_laplacian(n, h).unwrap();
    let u: Vec<f64> = (0..n).map(|i| (i as f64 * h).powi(2)).collect();
    let lu = m.matvec(&u).unwrap();
    for v in &lu[3..n - 3] {
        assert!((v - 2.0).abs() < 1e-10, "{v}");
    }
}

#[test]
fn same_spec_same_bits() {
    let specs = [
        GenSpec {
            n: 33,
            seed: 9,
            family: Family::RandomDd { dominance: 2.0 },
        },
        GenSpec {
            n: 12,
            seed: 9,
            family: Family::PlantedZeroMinors {
                dominance: 1.5,
                zero_at: vec![3],
            },
        },
        GenSpec {
            n: 10,
            seed: 0,
            family: Family::Fd6Laplacian { h: 0.1 },
        },
    ];
    for spec in &specs {
        assert_eq!(
            generate(spec).unwrap().matrix,
            generate(spec).unwrap().matrix
        );
    }
    assert_ne!(
        gen_random_dd(10, 1, 1.5).unwrap(),
        gen_random_dd(10, 2, 1.5).unwrap()
    );
}

#[test]
fn spec_serializes_flat() {
    let spec = GenSpec {
        n: 8,
        seed: 3,
        family: Family::Fd6Laplacian { h: 0.5 },
    };
    let v = serde_json::to_value(&spec).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"n": 8, "seed": 3, "family": "fd6_laplacian", "h": 0.5})
    );
    assert_eq!(serde_json::from_value::<GenSpec>(v).unwrap(), spec);
}

#[test]
fn random_dd_is_dominant_and_stays_numeric() {
    for seed in 0..100 {
        let n = 7 + (seed as usize % 40);
        let m = gen_random_dd(n, seed, 1.5).unwrap();
        for i in 0..n {
            let off: f64 = m.row_off_diagonal(i).map(f64::abs).sum();
            assert!(m.d(i).abs() > off);
        }
        assert!(!solve(&m, &vec![1.0; n], DEFAULT_EPS).unwrap().used_symbolic);
    }
}

#[test]
fn planted_certificate_matches_oracle() {
    let (m, cert) = gen_planted_zero_minors(15, 5, &[2, 7]).unwrap();
    assert_eq!(cert.minors, leading_minors(&ExactMatrix::from_hepta(&m)));
    assert!(!cert.determinant().is_zero());
    let tiny = |i: usize| {
        let r = (&cert.minors[i] / &cert.minors[i - 1]).abs();
        r < ExactRational::new(1.into(), 1_000_000_000_000i64.into())
    };
    assert!(tiny(2) && tiny(7));
}

#[test]
fn invalid_parameters() {
    assert_eq!(gen_random_dd(6, 0, 1.5), Err(GenError::TooSmall { n: 6 }));
    assert!(matches!(
        gen_random_dd(8, 0, 0.5),
        Err(GenError::InvalidParam(_))
    ));
    assert!(matches!(
        gen_fd6_laplacian(8, 0.0),
        Err(GenError::InvalidParam(_))
    ));
    assert!(matches!(
        gen_toeplitz(8, &[f64::NAN; 7]),
        Err(GenError::InvalidParam(_))
    ));
    for bad in [vec![], vec![2, 3], vec![4, 2], vec![9]] {
        assert!(
            matches!(
                gen_planted_zero_minors(10, 0, &bad),
                Err(GenError::InvalidParam(_))
            ),
            "{bad:?}"
        );
    }
}
