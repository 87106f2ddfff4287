use amalgam_lab::amalgam::{validate_exponents, RadiusSweep, WindowFamily};
use amalgam_lab::norms::exponents;
use amalgam_lab::predual::{duality_check, h_norm_upper_bound, synthesize, BlockDoc, DecompositionDoc};
use amalgam_lab::{make_grid, sample, Error, Exponent, FieldSpec};

fn sys() -> amalgam_lab::amalgam::ExponentSystem {
    validate_exponents(
        &exponents(&[2.0]).unwrap(),
        &exponents(&[4.0]).unwrap(),
        Exponent::new(3.0).unwrap(),
        1,
    )
    .unwrap()
}

fn doc() -> DecompositionDoc {
    DecompositionDoc {
        alpha_prime: Exponent::new(1.5).unwrap(),
        blocks: vec![
            BlockDoc {
                c: 0.5,
                r: 1.0,
                field: FieldSpec::IndicatorBox {
                    lower: vec![-0.25],
                    upper: vec![0.25],
                },
            },
            BlockDoc {
                c: -0.25,
                r: 2.0,
                field: FieldSpec::IndicatorBox {
                    lower: vec![0.5],
                    upper: vec![0.75],
                },
            },
        ],
    }
}

#[test]
fn json_round_trip_and_pairing() {
    let d = doc();
    let back = DecompositionDoc::from_json(&d.to_json().unwrap()).unwrap();
    assert_eq!(back, d);
    let grid = make_grid(&[[-8.0, 8.0]], &[512]).unwrap();
    let dec = back.build(&grid, &sys()).unwrap();
    assert_eq!(h_norm_upper_bound(&dec), 0.75);
    let f = synthesize(&dec, &grid).unwrap();
    assert_eq!(f.grid(), &grid);
    let g = sample(&FieldSpec::random(7, &[-3.0], &[3.0]), &grid).unwrap();
    let rep = duality_check(
        &g,
        &dec,
        &sys(),
        &RadiusSweep::dyadic(-4, 3, WindowFamily::Cube).unwrap(),
    )
    .unwrap();
    assert!(rep.pass, "{} > {}", rep.lhs, rep.rhs);
}

#[test]
fn wrong_alpha_prime_is_rejected() {
    let mut d = doc();
    d.alpha_prime = Exponent::new(2.0).unwrap();
    let grid = make_grid(&[[-8.0, 8.0]], &[512]).unwrap();
    assert!(matches!(d.build(&grid, &sys()), Err(Error::Config(_))));
}

#[test]
fn oversized_block_is_rejected() {
    let mut d = doc();
    d.blocks[1].field = FieldSpec::IndicatorBox {
        lower: vec![-4.0],
        upper: vec![4.0],
    };
    let grid = make_grid(&[[-8.0, 8.0]], &[512]).unwrap();
    match d.build(&grid, &sys()) {
        Err(Error::BlockNormExceeded { index, norm }) => {
            assert_eq!(index, 1);
            assert!(norm > 1.0);
        }
        other => panic!("expected a block norm error, got {other:?}"),
    }
}

#[test]
fn empty_decomposition_is_rejected() {
    let d = DecompositionDoc {
        alpha_prime: Exponent::new(1.5).unwrap(),
        blocks: vec![],
    };
    let grid = make_grid(&[[-8.0, 8.0]], &[512]).unwrap();
    assert!(matches!(d.build(&grid, &sys()), Err(Error::EmptyDecomposition)));
}
