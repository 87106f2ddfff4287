//! Riesz constants, the heat-semigroup reconstruction of the Riesz kernel,
//! and quadrature of the fractional integral against closed forms.

use super::{Outcome, Step};
use crate::grid::{make_grid, sample, FieldSpec};
use crate::harness::report::Record;
use crate::harness::SuiteConfig;
use crate::operators::{fractional_integral, heat_kernel_reconstruction, riesz_constant, RieszParams};

const CONST: &str = "Riesz potential normalizing constant";
const HEAT: &str = "Gaussian heat-kernel subordination reproduces the Riesz kernel";
const QUAD: &str = "fractional integral of an interval indicator against its closed form";

/// `I_{1/2} chi_[-1,1]` at 0 and 2: `4 C` and `2 C (sqrt 3 - 1)`.
const AT_ZERO: f64 = 1.5957691216057307;
const AT_TWO: f64 = 0.58409203708247656;

pub fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Step {
    let tol = cfg.tolerances.identity;
    for (g, n, want) in [
        (0.5, 1, 0.3989422804014327),
        (1.0, 2, 0.15915494309189535),
        (2.0, 3, 0.07957747154594767),
    ] {
        let c = riesz_constant(g, n)?;
        out.push(Record::close(format!("riesz-constant-n{n}-g{g}"), CONST, c, want, tol));
    }

    for g in [0.25, 0.5] {
        for d in [1.0, 2.0] {
            let v = heat_kernel_reconstruction(g, 1, d)?;
            let want = riesz_constant(g, 1)? * d.powf(g - 1.0);
            out.push(Record::close(
                format!("heat-g{g}-d{d}"),
                HEAT,
                v,
                want,
                cfg.tolerances.heat,
            ));
        }
        let r = heat_kernel_reconstruction(g, 1, 2.0)? / heat_kernel_reconstruction(g, 1, 1.0)?;
        out.push(Record::close(
            format!("heat-ratio-g{g}"),
            HEAT,
            r,
            2f64.powf(g - 1.0),
            cfg.tolerances.heat,
        ));
    }

    // cells centered on 0, +-1 and 2; the closed indicator reaches h/2 past +-1
    let params = RieszParams::new(0.5, 1)?;
    let mut errs = Vec::new();
    for cells in [512usize, 1024, 2048, 4096] {
        let h = 8.0 / cells as f64;
        let grid = make_grid(&[[-4.0 - h / 2.0, 4.0 - h / 2.0]], &[cells])?;
        let f = sample(
            &FieldSpec::IndicatorBox {
                lower: vec![-1.0],
                upper: vec![1.0],
            },
            &grid,
        )?;
        let i = fractional_integral(&f, params)?;
        let v0 = i.values()[cells / 2];
        let v2 = i.values()[3 * cells / 4];
        let e = ((v0 - AT_ZERO) / AT_ZERO).abs().max(((v2 - AT_TWO) / AT_TWO).abs());
        errs.push(e);
        out.constant(format!("quadrature-error-{cells}"), e);
        if cells == 4096 {
            out.push(Record::close(
                "quadrature-at-0",
                QUAD,
                v0,
                AT_ZERO,
                cfg.tolerances.quadrature,
            ));
            out.push(Record::close(
                "quadrature-at-2",
                QUAD,
                v2,
                AT_TWO,
                cfg.tolerances.quadrature,
            ));
        }
    }
    for (k, w) in errs.windows(2).enumerate() {
        let factor = w[0] / w[1];
        out.constant(format!("convergence-factor-{k}"), factor);
        if w[0] < 1e-4 {
            continue;
        }
        out.push(Record::flag(
            format!("quadrature-convergence-{k}"),
            QUAD,
            factor,
            cfg.tolerances.convergence_factor,
            factor >= cfg.tolerances.convergence_factor,
        ));
    }
    Ok(())
}
