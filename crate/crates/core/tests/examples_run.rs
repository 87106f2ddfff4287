#![allow(dead_code)]

#[path = "../examples/amalgam_norms.rs"]
mod amalgam_norms;
#[path = "../examples/bmo_oscillation.rs"]
mod bmo_oscillation;
#[path = "../examples/commutator_bounds.rs"]
mod commutator_bounds;
#[path = "../examples/fractional_integral.rs"]
mod fractional_integral;
#[path = "../examples/heat_kernel.rs"]
mod heat_kernel;
#[path = "../examples/index_gate.rs"]
mod index_gate;
#[path = "../examples/maximal_function.rs"]
mod maximal_function;
#[path = "../examples/mixed_norms.rs"]
mod mixed_norms;
#[path = "../examples/predual_duality.rs"]
mod predual_duality;
#[path = "../examples/run_suite.rs"]
mod run_suite;

#[test]
fn mixed_norms_of_unit_square_are_one() {
    let rows = mixed_norms::run().unwrap();
    for (label, v) in &rows[..4] {
        assert!((v - 1.0).abs() < 1e-12, "{label}");
    }
}

#[test]
fn amalgam_norms_are_finite() {
    let s = amalgam_norms::run().unwrap();
    assert_eq!(s.global.len(), 4);
    assert!(s.alpha_ball.0 > 0.0 && s.alpha_cube.0 > 0.0);
}

#[test]
fn index_gate_example() {
    let (verdicts, growth) = index_gate::run().unwrap();
    assert_eq!(verdicts[2].1, "Admissible");
    assert!(verdicts[0].1.contains("gate") && verdicts[4].1.contains("gate"));
    assert!(growth.windows(2).all(|w| w[1].1 > w[0].1));
}

#[test]
fn fractional_integral_converges() {
    let rows = fractional_integral::run().unwrap();
    for w in rows.windows(2) {
        assert!(w[0].2 / w[1].2 >= 1.8);
    }
    assert!(rows[3].1 < 0.01 && rows[3].2 < 0.01);
}

#[test]
fn maximal_function_is_dominated() {
    let s = maximal_function::run().unwrap();
    assert!(s.worst_ratio <= 1.0 + 1e-9);
    assert!(s.peak <= 2f64.sqrt());
}

#[test]
fn bmo_example() {
    let (norms, drift, bound) = bmo_oscillation::run().unwrap();
    assert_eq!(norms[2].1, 0.0);
    assert!(drift <= bound);
}

#[test]
fn heat_kernel_example() {
    for (_, _, heat, direct) in heat_kernel::run().unwrap() {
        assert!((heat - direct).abs() <= 1e-6 * direct);
    }
}

#[test]
fn commutator_example() {
    let s = commutator_bounds::run().unwrap();
    assert!(s.constants.iter().all(|c| c.is_finite() && *c > 0.0));
    assert!(s.probe_pass && s.tail < 0.2);
}

#[test]
fn predual_example() {
    let (lhs, rhs, h) = predual_duality::run().unwrap();
    assert_eq!(h, 0.75);
    assert!(lhs <= rhs);
}

#[test]
fn run_suite_example() {
    assert!(run_suite::run("index-gate").unwrap().pass());
}
