use heptasweep::generators::{generate, Family, GenSpec};
use heptasweep::io::{
    read_banded, read_matrix_market, read_vector, write_banded, write_matrix_market, write_vector,
    BandedFile, IoError,
};
use proptest::prelude::*;

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

#[test]
fn generated_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = GenSpec {
        n: 11,
        seed: 21,
        family: Family::PlantedZeroMinors {
            dominance: 1.5,
            zero_at: vec![1, 6],
        },
    };
    let g = generate(&spec).unwrap();
    let y = g.matrix.matvec(&[1.0; 11]).unwrap();
    let file = BandedFile {
        matrix: g.matrix,
        rhs: Some(y),
        gen: Some(spec),
        certificate: g.certificate,
    };
    let path = dir.path().join("m.json");
    write_banded(&path, &file).unwrap();
    assert_eq!(read_banded(&path).unwrap(), file);

    let mtx = dir.path().join("m.mtx");
    write_matrix_market(&mtx, &file.matrix).unwrap();
    assert_eq!(read_matrix_market(&mtx).unwrap(), file.matrix);
}

#[test]
fn vectors_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let v = vec![1.5, -0.0, 1e-320, -7.25e300];
    for name in ["v.json", "v.mtx"] {
        let path = dir.path().join(name);
        write_vector(&path, &v).unwrap();
        assert_eq!(bits(&read_vector(&path).unwrap()), bits(&v));
    }
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(
        read_banded("/nonexistent/m.json"),
        Err(IoError::Io { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_matrices_survive_both_formats(n in 7usize..40, seed in any::<u64>()) {
        let m = generate(&GenSpec { n, seed, family: Family::RandomDd { dominance: 1.5 } })
            .unwrap()
            .matrix;
        let json = heptasweep::io::banded_to_string(&BandedFile::new(m.clone())).unwrap();
        prop_assert_eq!(&heptasweep::io::banded_from_str(&json).unwrap().matrix, &m);
        let mtx = heptasweep::io::matrix_market_to_string(&m);
        prop_assert_eq!(&heptasweep::io::parse_matrix_market(&mtx).unwrap(), &m);
    }
}
