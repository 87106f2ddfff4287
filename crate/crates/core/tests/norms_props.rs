use amalgam_lab::amalgam::{
    alpha_amalgam_norm, discrete_alpha_norm, discrete_amalgam_norm, global_amalgam_norm, validate_exponents,
    GateStatus, RadiusSweep, WindowFamily,
};
use amalgam_lab::norms::{exponents, mixed_lebesgue_norm, windowed_holder_bound};
use amalgam_lab::operators::{dilate, fractional_integral, st_dilation, RieszParams};
use amalgam_lab::{make_grid, Exponent, Grid, GridFunction};
use proptest::prelude::*;

fn grid2() -> Grid {
    make_grid(&[[-2.0, 2.0], [-2.0, 2.0]], &[16, 16]).unwrap()
}

fn field(vals: Vec<f64>) -> GridFunction<f64> {
    GridFunction::new(grid2(), vals).unwrap()
}

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, 256)
}

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), 1.0f64..8.0, Just(f64::INFINITY)]
}

fn rel_le(a: f64, b: f64) -> bool {
    a <= b * (1.0 + 1e-12) + 1e-300
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mixed_norm_triangle_and_homogeneity(a in values(), b in values(), p0 in exponent(), p1 in exponent(), c in -5.0f64..5.0) {
        let p = exponents(&[p0, p1]).unwrap();
        let (f, g) = (field(a), field(b));
        let nf = mixed_lebesgue_norm(&f, &p).unwrap();
        let ng = mixed_lebesgue_norm(&g, &p).unwrap();
        let sum = mixed_lebesgue_norm(&f.add(&g).unwrap(), &p).unwrap();
        prop_assert!(rel_le(sum, nf + ng));
        let scaled = mixed_lebesgue_norm(&f.scale(c), &p).unwrap();
        prop_assert!((scaled - c.abs() * nf).abs() <= 1e-12 * (1.0 + scaled));
    }

    #[test]
    fn amalgam_norms_are_monotone_in_modulus(a in values(), p0 in exponent(), s0 in exponent()) {
        // supported in [-1, 1]^2, clear of the box edge for unit windows
        let f = GridFunction::from_fn(&grid2(), |x| if x[0].abs() < 1.0 && x[1].abs() < 1.0 { 1.0 } else { 0.0 })
            .unwrap()
            .mul_real(&field(a))
            .unwrap();
        let g = f.map(|v: f64| 0.5 * v);
        let p = exponents(&[p0, p0]).unwrap();
        let s = exponents(&[s0, s0]).unwrap();
        for r in [0.25, 0.5, 1.0] {
            prop_assert!(rel_le(discrete_amalgam_norm(&g, &p, &s, r).unwrap(), discrete_amalgam_norm(&f, &p, &s, r).unwrap()));
        }
        prop_assert!(rel_le(global_amalgam_norm(&g, &p, &s, 0.5).unwrap(), global_amalgam_norm(&f, &p, &s, 0.5).unwrap()));
    }

    #[test]
    fn windowed_holder(a in values(), b in values(), p0 in 1.0f64..6.0, s0 in 1.0f64..6.0) {
        let p = exponents(&[p0, p0]).unwrap();
        let s = exponents(&[s0, s0]).unwrap();
        for r in [0.25, 0.5, 1.0] {
            let rep = windowed_holder_bound(&field(a.clone()), &field(b.clone()), &p, &s, r).unwrap();
            prop_assert!(rep.pass, "{} > {}", rep.lhs, rep.rhs);
        }
    }

    #[test]
    fn gate_accepts_exactly_the_window(p0 in 1.0f64..8.0, s_extra in 0.0f64..8.0, a in 1.0f64..20.0) {
        let s0 = p0 + s_extra;
        let ok = 1.0 / s0 <= 1.0 / a + 1e-12 && 1.0 / a <= 1.0 / p0 + 1e-12;
        let res = validate_exponents(&exponents(&[p0]).unwrap(), &exponents(&[s0]).unwrap(), Exponent::new(a).unwrap(), 1);
        prop_assert_eq!(res.is_ok(), ok);
        if let Ok(sys) = res {
            prop_assert!(sys.status() != GateStatus::Forced);
        }
    }

    #[test]
    fn st_composition_is_exact(a in values(), j in -2i32..=2, k in -2i32..=2, alpha in 1.0f64..8.0) {
        let f = field(a);
        let al = Exponent::new(alpha).unwrap();
        let (r1, r2) = (2f64.powi(j), 2f64.powi(k));
        let two_step = st_dilation(&st_dilation(&f, r1, al).unwrap(), r2, al).unwrap();
        let one_step = st_dilation(&f, r1 * r2, al).unwrap();
        prop_assert_eq!(two_step.grid(), one_step.grid());
        for (x, y) in two_step.values().iter().zip(one_step.values()) {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn alpha_norm_is_st_invariant(a in values(), j in -1i32..=1) {
        // p = 2, s = 4, alpha = 3 on matched dyadic sweeps
        let f = GridFunction::from_fn(&grid2(), |x| if x[0].abs() < 1.0 && x[1].abs() < 1.0 { 1.0 } else { 0.0 })
            .unwrap()
            .mul_real(&field(a))
            .unwrap();
        let sys = validate_exponents(&exponents(&[2.0, 2.0]).unwrap(), &exponents(&[4.0, 4.0]).unwrap(), Exponent::new(3.0).unwrap(), 2).unwrap();
        let r = 2f64.powi(j);
        let g = st_dilation(&f, r, sys.alpha()).unwrap();
        let sweep = RadiusSweep::dyadic(-1, 1, WindowFamily::Cube).unwrap();
        let scaled = RadiusSweep::new(sweep.radii().iter().map(|x| x * r).collect(), WindowFamily::Cube).unwrap();
        let a = discrete_alpha_norm(&f, &sys, &sweep).unwrap().value;
        let b = discrete_alpha_norm(&g, &sys, &scaled).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12 * a);
        let ball = alpha_amalgam_norm(&f, &sys, &RadiusSweep::dyadic(-2, -1, WindowFamily::Ball).unwrap()).unwrap().value;
        prop_assert!(ball.is_finite() && ball >= 0.0);
    }

    #[test]
    fn riesz_potential_dilation_covariance(vals in prop::collection::vec(-1.0f64..1.0, 64), j in -1i32..=2) {
        let grid = make_grid(&[[-4.0, 4.0]], &[64]).unwrap();
        let f = GridFunction::new(grid, vals).unwrap();
        let params = RieszParams::new(0.5, 1).unwrap();
        let t = 2f64.powi(j);
        // I(f(t.)) = t^{-gamma} (If)(t.)
        let lhs = fractional_integral(&dilate(&f, t).unwrap(), params).unwrap();
        let rhs = dilate(&fractional_integral(&f, params).unwrap(), t).unwrap().scale(1.0 / t.sqrt());
        let scale = rhs.max_modulus().max(1e-300);
        for (x, y) in lhs.values().iter().zip(rhs.values()) {
            prop_assert!((x - y).abs() <= 1e-10 * scale);
        }
    }
}
