use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use amalgam_lab::amalgam::{
    alpha_amalgam_norm, discrete_alpha_norm, discrete_amalgam_norm, global_amalgam_norm, validate_exponents,
    RadiusSweep, WindowFamily,
};
use amalgam_lab::harness::{aggregate, load_reports, rows_to_csv, run_suite, GridSection, SuiteConfig};
use amalgam_lab::norms::mixed_lebesgue_norm;
use amalgam_lab::operators::{commutator, dilate, fractional_integral, fractional_maximal, st_dilation, RieszParams};
use amalgam_lab::{Error, Exponent, FieldSpec, Grid, GridFunction, Result, Scalar};

#[derive(Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Norms, operators and verification suites on grids"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a norm of a sampled field as JSON.
    Norm {
        /// TOML or JSON file with `bounds` and `counts`.
        #[arg(long)]
        grid: PathBuf,
        /// Field as JSON, or a path to a JSON file.
        #[arg(long)]
        field: String,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<Exponent>,
        /// Global exponents; without them the mixed Lebesgue norm is printed.
        #[arg(long, value_delimiter = ',')]
        s: Vec<Exponent>,
        #[arg(long)]
        alpha: Option<Exponent>,
        /// Sweep radii for alpha norms, or the single window radius / cube side.
        #[arg(long, value_delimiter = ',')]
        radii: Vec<f64>,
        /// Cube windows instead of balls.
        #[arg(long)]
        discrete: bool,
    },
    /// Apply an operator and write `coordinates, value` rows as CSV.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        /// Symbol `b` for the commutator.
        #[arg(long)]
        symbol: Option<String>,
        /// Dilation factor `t` or `r`, a power of two.
        #[arg(long, default_value_t = 2.0)]
        scale: f64,
        #[arg(long)]
        alpha: Option<Exponent>,
        /// Radii for the maximal function.
        #[arg(long, value_delimiter = ',')]
        radii: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a suite and write its JSON report; exit status 0 iff every record passes.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Aggregate the reports in a directory into one table.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Igamma,
    Mgamma,
    Commutator,
    Dilate,
    St,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn load_grid(path: &Path) -> Result<Grid> {
    let text = fs::read_to_string(path)?;
    let spec: GridSection = if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&text)?
    } else {
        toml::from_str(&text)?
    };
    spec.build()
}

fn parse_field(arg: &str) -> Result<FieldSpec> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg)?
    } else {
        arg.to_string()
    };
    Ok(serde_json::from_str(&text)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn sweep(radii: &[f64], family: WindowFamily) -> Result<RadiusSweep> {
    if radii.is_empty() {
        RadiusSweep::dyadic(-2, 2, family)
    } else {
        RadiusSweep::new(radii.to_vec(), family)
    }
}

#[allow(clippy::too_many_arguments)]
fn norm(
    grid: &Path,
    field: &str,
    p: &[Exponent],
    s: &[Exponent],
    alpha: Option<Exponent>,
    radii: &[f64],
    discrete: bool,
) -> Result<serde_json::Value> {
    let grid = load_grid(grid)?;
    let spec = parse_field(field)?;
    let f = amalgam_lab::sample(&spec, &grid)?;
    let n = grid.dim();
    let family = if discrete {
        WindowFamily::Cube
    } else {
        WindowFamily::Ball
    };
    let v = match (s.is_empty(), alpha) {
        (true, _) => json!({"norm": "mixed-lebesgue", "value": mixed_lebesgue_norm(&f, p)?}),
        (false, None) => {
            let r = radii.first().copied().unwrap_or(1.0);
            let value = if discrete {
                discrete_amalgam_norm(&f, p, s, r)?
            } else {
                global_amalgam_norm(&f, p, s, r)?
            };
            json!({"norm": if discrete { "discrete-amalgam" } else { "amalgam" }, "radius": r, "value": value})
        }
        (false, Some(a)) => {
            let sys = validate_exponents(p, s, a, n)?;
            let sw = sweep(radii, family)?;
            let sup = if discrete {
                discrete_alpha_norm(&f, &sys, &sw)?
            } else {
                alpha_amalgam_norm(&f, &sys, &sw)?
            };
            json!({
                "norm": if discrete { "discrete-alpha" } else { "alpha" },
                "value": sup.value,
                "argmax_radius": sup.argmax_radius,
                "gate": format!("{:?}", sys.status()),
            })
        }
    };
    Ok(v)
}

fn csv_rows<T: Scalar>(f: &GridFunction<T>, cols: impl Fn(T) -> Vec<f64>) -> Result<String> {
    let g = f.grid();
    let n = g.dim();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (0..n).map(|a| format!("x{a}")).collect();
    let sample = cols(T::default());
    if sample.len() == 1 {
        header.push("value".into());
    } else {
        header.extend(["re".to_string(), "im".to_string()]);
    }
    let io = |e: csv::Error| Error::Config(e.to_string());
    w.write_record(&header).map_err(io)?;
    for (i, v) in f.values().iter().enumerate() {
        let x = g.point(i);
        let row: Vec<String> = x[..n].iter().copied().chain(cols(*v)).map(|v| v.to_string()).collect();
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn apply(
    op: Op,
    grid: &Path,
    field: &str,
    gamma: f64,
    symbol: Option<&str>,
    scale: f64,
    alpha: Option<Exponent>,
    radii: &[f64],
) -> Result<String> {
    let grid = load_grid(grid)?;
    let spec = parse_field(field)?;
    let n = grid.dim();
    if spec.is_complex() {
        let f = amalgam_lab::grid::sample_complex(&spec, &grid)?;
        let out = match op {
            Op::Igamma => fractional_integral(&f, RieszParams::new(gamma, n)?)?,
            Op::Dilate => dilate(&f, scale)?,
            Op::St => st_dilation(
                &f,
                scale,
                alpha.ok_or_else(|| Error::Config("--alpha is required".into()))?,
            )?,
            Op::Commutator => {
                let b = amalgam_lab::sample(
                    &parse_field(symbol.ok_or_else(|| Error::Config("--symbol is required".into()))?)?,
                    &grid,
                )?;
                commutator(&b, &f, RieszParams::new(gamma, n)?)?
            }
            Op::Mgamma => {
                let m = fractional_maximal(
                    &f,
                    RieszParams::new(gamma, n)?,
                    &sweep(radii, WindowFamily::Ball)?,
                    &grid,
                )?;
                return csv_rows(&m, |v| vec![v]);
            }
        };
        return csv_rows(&out, |v| vec![v.re, v.im]);
    }
    let f = amalgam_lab::sample(&spec, &grid)?;
    let out = match op {
        Op::Igamma => fractional_integral(&f, RieszParams::new(gamma, n)?)?,
        Op::Mgamma => fractional_maximal(
            &f,
            RieszParams::new(gamma, n)?,
            &sweep(radii, WindowFamily::Ball)?,
            &grid,
        )?,
        Op::Commutator => {
            let b = amalgam_lab::sample(
                &parse_field(symbol.ok_or_else(|| Error::Config("--symbol is required".into()))?)?,
                &grid,
            )?;
            commutator(&b, &f, RieszParams::new(gamma, n)?)?
        }
        Op::Dilate => dilate(&f, scale)?,
        Op::St => st_dilation(
            &f,
            scale,
            alpha.ok_or_else(|| Error::Config("--alpha is required".into()))?,
        )?,
    };
    csv_rows(&out, |v| vec![v])
}

fn verify(suite: &str, config: Option<&Path>, seed: Option<u64>, out: Option<&Path>) -> Result<bool> {
    let mut cfg = match config {
        Some(p) => SuiteConfig::load(p)?,
        None => SuiteConfig::default(),
    };
    if let Some(s) = seed {
        cfg = cfg.with_seed(s);
    }
    let rep = run_suite(suite, &cfg)?;
    let mut text = rep.to_json()?;
    text.push('\n');
    emit(&text, out)?;
    for r in rep.failures() {
        eprintln!("FAIL {} ({}): lhs={} rhs={}", r.id, r.anchor, r.lhs, r.rhs);
    }
    Ok(rep.pass())
}

fn report(input: &Path, format: Format, out: Option<&Path>) -> Result<()> {
    let rows = aggregate(&load_reports(input)?);
    let text = match format {
        Format::Csv => rows_to_csv(&rows)?,
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    emit(&text, out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Norm {
            grid,
            field,
            p,
            s,
            alpha,
            radii,
            discrete,
        } => norm(&grid, &field, &p, &s, alpha, &radii, discrete).and_then(|v| emit(&format!("{v}\n"), None)),
        Cmd::Apply {
            op,
            grid,
            field,
            gamma,
            symbol,
            scale,
            alpha,
            radii,
            out,
        } => apply(op, &grid, &field, gamma, symbol.as_deref(), scale, alpha, &radii)
            .and_then(|text| emit(&text, out.as_deref())),
        Cmd::Verify {
            suite,
            config,
            seed,
            out,
        } => match verify(&suite, config.as_deref(), seed, out.as_deref()) {
            Ok(true) => return ExitCode::SUCCESS,
            Ok(false) => return ExitCode::from(1),
            Err(e) => Err(e),
        },
        Cmd::Report { input, format, out } => report(&input, format, out.as_deref()),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
