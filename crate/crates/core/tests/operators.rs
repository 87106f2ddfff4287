use amalgam_lab::amalgam::{RadiusSweep, WindowFamily};
use amalgam_lab::operators::{
    centered_bound_constant, commutator, fractional_integral, fractional_maximal_centered, heat_kernel_reconstruction,
    riesz_constant, RieszParams,
};
use amalgam_lab::{make_grid, sample, Error, FieldSpec, GridFunction};

// pi^{-n/2} 2^{-gamma} Gamma((n-gamma)/2) / Gamma(gamma/2), evaluated by hand
#[test]
fn riesz_constants_match_closed_forms() {
    let pi = std::f64::consts::PI;
    let cases = [
        (0.5, 1, 1.0 / (2.0 * pi).sqrt()),
        (1.0, 2, 1.0 / (2.0 * pi)),
        (2.0, 3, 1.0 / (4.0 * pi)),
    ];
    for (g, n, want) in cases {
        let c = riesz_constant(g, n).unwrap();
        assert!((c - want).abs() <= 1e-14 * want, "n={n} gamma={g}: {c} vs {want}");
    }
}

#[test]
fn heat_integral_reproduces_the_kernel() {
    for g in [0.25, 0.5] {
        for d in [1.0, 2.0] {
            let heat = heat_kernel_reconstruction(g, 1, d).unwrap();
            let want = riesz_constant(g, 1).unwrap() * d.powf(g - 1.0);
            assert!((heat - want).abs() <= 1e-6 * want);
        }
    }
}

#[test]
fn interval_potential_converges_to_closed_form() {
    let c = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let prim = |u: f64| 2.0 * u.signum() * u.abs().sqrt();
    let exact = |x: f64| c * (prim(x + 1.0) - prim(x - 1.0));
    assert!((exact(0.0) - 1.5957691216057307).abs() < 1e-15);
    assert!((exact(2.0) - 0.58409203708247656).abs() < 1e-15);
    let mut prev = f64::INFINITY;
    for cells in [512usize, 1024, 2048, 4096] {
        let h = 8.0 / cells as f64;
        let grid = make_grid(&[[-4.0 - h / 2.0, 4.0 - h / 2.0]], &[cells]).unwrap();
        let f = sample(
            &FieldSpec::IndicatorBox {
                lower: vec![-1.0],
                upper: vec![1.0],
            },
            &grid,
        )
        .unwrap();
        let u = fractional_integral(&f, RieszParams::new(0.5, 1).unwrap()).unwrap();
        let at = |x: f64| u.values()[((x - grid.lower()[0]) / h).floor() as usize];
        let err = (at(2.0) - exact(2.0)).abs() / exact(2.0);
        assert!(err < 0.01 || cells < 4096);
        assert!(prev / err >= 1.8, "{cells}: {prev} / {err}");
        prev = err;
    }
}

#[test]
fn maximal_function_under_riesz_potential() {
    let grid = make_grid(&[[-8.0, 8.0]], &[256]).unwrap();
    let params = RieszParams::new(0.5, 1).unwrap();
    let f = sample(
        &FieldSpec::Gaussian {
            center: vec![0.7],
            width: 0.6,
            amplitude: 1.0,
        },
        &grid,
    )
    .unwrap();
    let m = fractional_maximal_centered(
        &f,
        params,
        &RadiusSweep::dyadic(-3, 2, WindowFamily::Ball).unwrap(),
        false,
    )
    .unwrap();
    let i = fractional_integral(&f, params).unwrap();
    let c = centered_bound_constant(params);
    for (a, b) in m.values().iter().zip(i.values()) {
        assert!(*a <= c * b * (1.0 + 1e-9));
    }
}

#[test]
fn commutator_with_constant_vanishes() {
    let grid = make_grid(&[[-4.0, 4.0]], &[256]).unwrap();
    let f = sample(
        &FieldSpec::Gaussian {
            center: vec![0.0],
            width: 1.0,
            amplitude: 1.0,
        },
        &grid,
    )
    .unwrap();
    let b = GridFunction::constant(&grid, 3.0);
    let k = commutator(&b, &f, RieszParams::new(0.5, 1).unwrap()).unwrap();
    let scale = 3.0
        * fractional_integral(&f, RieszParams::new(0.5, 1).unwrap())
            .unwrap()
            .max_modulus();
    assert!(k.max_modulus() <= 1e-12 * scale);
}

#[test]
fn gamma_outside_range_is_rejected() {
    assert!(matches!(RieszParams::new(1.0, 1), Err(Error::Gamma { .. })));
    assert!(matches!(RieszParams::new(0.0, 2), Err(Error::Gamma { .. })));
}
