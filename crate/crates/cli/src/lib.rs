//! Command execution behind the `hspec` binary.
//!
//! Exit-code protocol: 0 success, 2 usage error, 3 io error,
//! 4 nonconvergent computation or failed reproduction rows.

pub mod config;
pub mod emit;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use hspec_core::{
    CatalogFamily, PvWindow, QuadratureSpec, TransformPair, detect_threshold, hilbert_pv_pair,
    locate_peaks, reproduce_all, spectral_density, spectral_integral, sum_decomposition,
    sweep_alpha,
};

pub use config::{Action, Cli, CliCommand, OutputFormat, RunConfig, parse_args};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NONCONVERGENT: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Clap(clap::Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            // clap reserves 2 for usage errors and 0 for --help/--version.
            CliError::Clap(e) => match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            },
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Clap(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

fn resolve(family: &CatalogFamily) -> TransformPair {
    family.resolve().expect("validated at parse time")
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("writing stdout: {e}")))
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
    }
}

/// Execute a validated configuration; returns the process exit code.
pub fn run(config: &RunConfig) -> Result<i32, CliError> {
    let quad = config.quad;
    let (text, code) = match &config.action {
        Action::Transform { family, x } => run_transform(family, *x, &quad, config.format)?,
        Action::Spectral { family } => {
            let report = spectral_integral(&resolve(family), &quad);
            let code = if report.converged {
                EXIT_OK
            } else {
                EXIT_NONCONVERGENT
            };
            let text = match config.format {
                OutputFormat::Csv => emit::spectral_csv(&report),
                OutputFormat::Json => emit::spectral_json(&report),
                OutputFormat::Human => emit::spectral_human(&report),
            };
            (text, code)
        }
        Action::Sweep { shape, alphas } => {
            let sweep =
                sweep_alpha(*shape, alphas, &quad).map_err(|e| CliError::Usage(e.to_string()))?;
            let code = if sweep.points.iter().all(|p| p.converged) {
                EXIT_OK
            } else {
                EXIT_NONCONVERGENT
            };
            let text = match config.format {
                OutputFormat::Csv => emit::sweep_csv(&sweep),
                OutputFormat::Json => emit::sweep_json(&sweep),
                OutputFormat::Human => emit::sweep_human(&sweep),
            };
            (text, code)
        }
        Action::Threshold {
            shape,
            lo,
            hi,
            width,
        } => {
            let bracket = detect_threshold(*shape, *lo, *hi, *width, &quad)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let text = match config.format {
                OutputFormat::Csv => format!(
                    "alpha_lo,alpha_hi\n{},{}\n",
                    emit::float(bracket.0),
                    emit::float(bracket.1)
                ),
                OutputFormat::Json => format!(
                    "{{\n  \"alpha_lo\": {},\n  \"alpha_hi\": {}\n}}\n",
                    bracket.0, bracket.1
                ),
                OutputFormat::Human => {
                    format!("threshold bracket: [{}, {}]\n", bracket.0, bracket.1)
                }
            };
            (text, EXIT_OK)
        }
        Action::Sum { first, second } => {
            let report = sum_decomposition(*first, *second, &quad)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let code = if report.converged {
                EXIT_OK
            } else {
                EXIT_NONCONVERGENT
            };
            let text = match config.format {
                OutputFormat::Csv => emit::spectral_csv(&report),
                OutputFormat::Json => emit::spectral_json(&report),
                OutputFormat::Human => emit::spectral_human(&report),
            };
            (text, code)
        }
        Action::Reproduce => {
            let tables = reproduce_all(&quad).map_err(|e| CliError::Usage(e.to_string()))?;
            let all_pass = tables.iter().all(|t| t.all_pass());
            let code = if all_pass {
                EXIT_OK
            } else {
                EXIT_NONCONVERGENT
            };
            let text = match config.format {
                OutputFormat::Csv => emit::tables_csv(&tables),
                OutputFormat::Json => emit::tables_json(&tables),
                OutputFormat::Human => emit::tables_human(&tables),
            };
            (text, code)
        }
        Action::Plot {
            family,
            x_min,
            x_max,
            n,
        } => run_plot(family, *x_min, *x_max, *n, config.format)?,
    };
    write_output(&text, config.out.as_deref())?;
    Ok(code)
}

fn run_transform(
    family: &CatalogFamily,
    x: f64,
    quad: &QuadratureSpec,
    format: OutputFormat,
) -> Result<(String, i32), CliError> {
    let pair = resolve(family);
    let f = pair.f(x);
    let g = pair.g(x);
    let pv = hilbert_pv_pair(&pair, x, &PvWindow::default(), quad).ok();
    let (pv_value, pv_err, converged) = match &pv {
        Some(e) => (Some(e.value), Some(e.err_estimate), e.converged),
        None => (None, None, true), // non-decaying input: closed form only
    };
    let code = if converged {
        EXIT_OK
    } else {
        EXIT_NONCONVERGENT
    };
    let text = match format {
        OutputFormat::Csv => {
            let mut out = String::from("x,f,g,pv,pv_err\n");
            writeln!(
                out,
                "{},{},{},{},{}",
                emit::float(x),
                emit::float(f),
                emit::float(g),
                pv_value.map(emit::float).unwrap_or_default(),
                pv_err.map(emit::float).unwrap_or_default()
            )
            .expect("string write");
            out
        }
        OutputFormat::Json => {
            let mut out = String::from("{\n");
            writeln!(out, "  \"x\": {x},").expect("string write");
            writeln!(out, "  \"f\": {f},").expect("string write");
            writeln!(out, "  \"g\": {g},").expect("string write");
            match (pv_value, pv_err) {
                (Some(v), Some(e)) => {
                    writeln!(out, "  \"pv\": {v},").expect("string write");
                    writeln!(out, "  \"pv_err\": {e}").expect("string write");
                }
                _ => {
                    writeln!(out, "  \"pv\": null,").expect("string write");
                    writeln!(out, "  \"pv_err\": null").expect("string write");
                }
            }
            out.push_str("}\n");
            out
        }
        OutputFormat::Human => {
            let mut out = format!(
                "x = {x}\nf(x) = {}\ng(x) = {}\n",
                emit::float(f),
                emit::float(g)
            );
            match (pv_value, pv_err) {
                (Some(v), Some(e)) => {
                    writeln!(out, "pv quadrature = {} (err {:.3e})", emit::float(v), e)
                        .expect("string write");
                }
                _ => out.push_str("pv quadrature = refused (non-decaying input)\n"),
            }
            out
        }
    };
    Ok((text, code))
}

fn run_plot(
    family: &CatalogFamily,
    x_min: f64,
    x_max: f64,
    n: usize,
    format: OutputFormat,
) -> Result<(String, i32), CliError> {
    let pair = resolve(family);
    let base_dx = (x_max - x_min) / (n - 1) as f64;

    // Base grid; mirrored construction keeps symmetric ranges exactly
    // symmetric so even densities emit identical S at ±x.
    let mut xs: Vec<f64> = Vec::with_capacity(n);
    if x_min == -x_max {
        for i in 0..n / 2 {
            let x = x_min + i as f64 * base_dx;
            xs.push(x);
            xs.push(-x);
        }
        if n % 2 == 1 {
            xs.push(0.0);
        }
    } else {
        xs.extend((0..n).map(|i| x_min + i as f64 * base_dx));
    }

    // Extra sampling inside each located peak at 8x the base density,
    // mirrored for symmetric output.
    let radius = x_min.abs().max(x_max.abs()).max(10.0);
    for peak in locate_peaks(&pair, radius) {
        let step = (base_dx / 8.0).min(peak.half_width / 4.0);
        let lo = peak.location - 4.0 * peak.half_width;
        let hi = peak.location + 4.0 * peak.half_width;
        let mut x = lo;
        while x <= hi {
            if x > x_min && x < x_max {
                xs.push(x);
                let mirrored = -x;
                if x_min == -x_max && mirrored > x_min && mirrored < x_max {
                    xs.push(mirrored);
                }
            }
            x += step;
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut rows = String::new();
    for &x in &xs {
        let s = spectral_density(&pair, x).value_or_zero();
        match format {
            OutputFormat::Csv | OutputFormat::Human => {
                writeln!(
                    rows,
                    "{},{},{},{}",
                    emit::float(x),
                    emit::float(pair.f(x)),
                    emit::float(pair.g(x)),
                    emit::float(s)
                )
                .expect("string write");
            }
            OutputFormat::Json => {
                let sep = if rows.is_empty() { "" } else { ",\n" };
                write!(
                    rows,
                    "{sep}  {{\"x\": {x}, \"f\": {}, \"g\": {}, \"S\": {s}}}",
                    pair.f(x),
                    pair.g(x)
                )
                .expect("string write");
            }
        }
    }
    let text = match format {
        OutputFormat::Csv | OutputFormat::Human => format!("x,f,g,S\n{rows}"),
        OutputFormat::Json => format!("[\n{rows}\n]\n"),
    };
    Ok((text, EXIT_OK))
}
