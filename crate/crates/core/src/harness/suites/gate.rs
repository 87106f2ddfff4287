//! Nontriviality gate: the three reference systems, the boundary flag and
//! the divergence of a forced, rejected system.

use super::{e1, ex, Outcome, Step};
use crate::amalgam::{alpha_amalgam_norm, validate_exponents, ExponentSystem, GateStatus, RadiusSweep, WindowFamily};
use crate::error::{Error, GateViolation};
use crate::grid::{make_grid, sample, FieldSpec};
use crate::harness::report::Record;
use crate::harness::SuiteConfig;

const GATE: &str = "index gate: nontrivial exactly when (1/n)sum 1/s_i <= 1/alpha <= (1/n)sum 1/p_i";
const DIVERGE: &str = "index gate: rejected alpha makes the ball indicator norm diverge";

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let p = ex(&[2.0, 2.0]);
    let s = ex(&[4.0, 4.0]);
    let accept = validate_exponents(&p, &s, e1(3.0), 2);
    let ok = matches!(&accept, Ok(sys) if sys.status() == GateStatus::Admissible);
    out.push(Record::flag("gate-accept-alpha3", GATE, 1.0 / 3.0, 0.5, ok));
    let upper = validate_exponents(&p, &s, e1(1.0), 2);
    let ok = matches!(upper, Err(Error::IndexGate(GateViolation::Upper { .. })));
    out.push(Record::flag("gate-reject-alpha1", GATE, 1.0, 0.5, ok));
    let lower = validate_exponents(&p, &s, e1(8.0), 2);
    let ok = matches!(lower, Err(Error::IndexGate(GateViolation::Lower { .. })));
    out.push(Record::flag("gate-reject-alpha8", GATE, 0.25, 0.125, ok));
    for a in [2.0, 4.0] {
        let b = validate_exponents(&p, &s, e1(a), 2);
        let ok = matches!(&b, Ok(sys) if sys.status() == GateStatus::Boundary);
        out.push(Record::flag(
            format!("gate-boundary-alpha{a}"),
            GATE,
            1.0 / a,
            1.0 / a,
            ok,
        ));
    }

    // forced alpha = 1: the weight r^{n/alpha - sum 1/p} grows with r
    let grid = cfg.grid_or(&make_grid(&[[-10.0, 10.0], [-10.0, 10.0]], &[80, 80])?)?;
    let n = grid.dim();
    let pn = vec![e1(2.0); n];
    let sn = vec![e1(4.0); n];
    let forced = ExponentSystem::forced(&pn, &sn, e1(1.0))?;
    let chi = sample(
        &FieldSpec::IndicatorBall {
            center: vec![0.0; n],
            radius: 1.0,
        },
        &grid,
    )?;
    let sweep = RadiusSweep::dyadic(-2, 3, WindowFamily::Ball)?;
    let sup = alpha_amalgam_norm(&chi, &forced, &sweep)?;
    // running sup over the widening sweeps [1/4, 2^k]
    let mut running = Vec::new();
    let mut best = 0.0f64;
    for &(r, v) in &sup.profile {
        best = best.max(v);
        if r >= 1.0 {
            running.push((r, best));
            out.constant(format!("forced-norm-rmax-{r}"), best);
        }
    }
    let monotone = running.windows(2).all(|w| w[1].1 > w[0].1 * (1.0 + 1e-6));
    let (first, last) = (running[0].1, running[running.len() - 1].1);
    out.push(Record::flag("gate-forced-divergence", DIVERGE, last, first, monotone));
    out.constant("forced-growth-ratio", last / first);
    Ok(())
}
