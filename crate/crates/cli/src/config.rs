//! Argument parsing, the optional JSON config file, and the validated
//! run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use hspec_core::{CatalogFamily, FamilyId, FamilyShape, QuadratureSpec};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "hspec",
    version,
    about = "Hilbert-transform pairs, spectral densities, and spectral-integral experiments"
)]
pub struct Cli {
    /// JSON file supplying defaults for any flag; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Evaluate f, the closed-form transform, and its principal-value check
    /// at a point.
    Transform(CommonArgs),
    /// Integrate the spectral density of one family over the line.
    Spectral(CommonArgs),
    /// Sweep the spectral integral over a list of alphas.
    Sweep(CommonArgs),
    /// Bisect the alpha at which the spectral integral stops being 1.
    Threshold(CommonArgs),
    /// Spectral integral of the pointwise sum of two families.
    Sum(CommonArgs),
    /// Recompute and compare every published reference value.
    Reproduce(CommonArgs),
    /// Emit plot-ready rows x,f,g,S over an interval.
    Plot(CommonArgs),
}

impl CliCommand {
    fn name(&self) -> &'static str {
        match self {
            CliCommand::Transform(_) => "transform",
            CliCommand::Spectral(_) => "spectral",
            CliCommand::Sweep(_) => "sweep",
            CliCommand::Threshold(_) => "threshold",
            CliCommand::Sum(_) => "sum",
            CliCommand::Reproduce(_) => "reproduce",
            CliCommand::Plot(_) => "plot",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            CliCommand::Transform(a)
            | CliCommand::Spectral(a)
            | CliCommand::Sweep(a)
            | CliCommand::Threshold(a)
            | CliCommand::Sum(a)
            | CliCommand::Reproduce(a)
            | CliCommand::Plot(a) => a,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Family name: sqrt, lorentzian, rational-peak, gaussian, valley,
    /// rectangle, triangle.
    #[arg(long)]
    pub family: Option<String>,
    /// Positive scale factor.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Positive shape parameter (valley family only).
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Comma-separated strictly increasing alphas (sweep).
    #[arg(long, allow_hyphen_values = true)]
    pub alphas: Option<String>,
    /// Evaluation point (transform).
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Lower alpha of the threshold bracket.
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    /// Upper alpha of the threshold bracket.
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<f64>,
    /// Final bracket width (threshold).
    #[arg(long)]
    pub width: Option<f64>,
    /// Second family name (sum).
    #[arg(long)]
    pub family2: Option<String>,
    /// Second scale factor (sum).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha2: Option<f64>,
    /// Second shape parameter (sum with a valley member).
    #[arg(long, allow_negative_numbers = true)]
    pub b2: Option<f64>,
    /// Left edge of the plot interval.
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    /// Right edge of the plot interval.
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    /// Base number of plot points.
    #[arg(long)]
    pub n: Option<usize>,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write output to this path instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Human,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Human => "human",
        }
    }
}

/// JSON mirror of the flag set; any field may be omitted.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<String>,
    pub alpha: Option<f64>,
    pub b: Option<f64>,
    pub alphas: Option<Vec<f64>>,
    pub x: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub width: Option<f64>,
    pub family2: Option<String>,
    pub alpha2: Option<f64>,
    pub b2: Option<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub n: Option<usize>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

/// A validated command ready to execute.
#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Transform {
        family: CatalogFamily,
        x: f64,
    },
    Spectral {
        family: CatalogFamily,
    },
    Sweep {
        shape: FamilyShape,
        alphas: Vec<f64>,
    },
    Threshold {
        shape: FamilyShape,
        lo: f64,
        hi: f64,
        width: f64,
    },
    Sum {
        first: CatalogFamily,
        second: CatalogFamily,
    },
    Reproduce,
    Plot {
        family: CatalogFamily,
        x_min: f64,
        x_max: f64,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub action: Action,
    pub quad: QuadratureSpec,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_family_id(name: &str) -> Result<FamilyId, CliError> {
    FamilyId::parse(name).ok_or_else(|| {
        usage(format!(
            "--family: unknown family {name:?} (expected one of sqrt, lorentzian, \
             rational-peak, gaussian, valley, rectangle, triangle)"
        ))
    })
}

fn build_family(
    name: Option<&str>,
    alpha: Option<f64>,
    b: Option<f64>,
    flag: &str,
) -> Result<CatalogFamily, CliError> {
    let name = name.ok_or_else(|| usage(format!("--{flag} is required")))?;
    let id = parse_family_id(name)?;
    let alpha = alpha.ok_or_else(|| usage("--alpha is required"))?;
    CatalogFamily::new(id, alpha, b).map_err(|e| usage(format!("--alpha/--b: {e}")))
}

fn parse_alpha_list(text: &str) -> Result<Vec<f64>, CliError> {
    let alphas: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("--alphas: {s:?} is not a number")))
        })
        .collect::<Result<_, _>>()?;
    if alphas.is_empty() || alphas[0] <= 0.0 || alphas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage(
            "--alphas must be a strictly increasing list of positive numbers",
        ));
    }
    Ok(alphas)
}

impl CommonArgs {
    fn merged_with(mut self, file: FileConfig) -> Result<Self, CliError> {
        self.family = self.family.or(file.family);
        self.alpha = self.alpha.or(file.alpha);
        self.b = self.b.or(file.b);
        if self.alphas.is_none() {
            self.alphas = file.alphas.map(|v| {
                v.iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            });
        }
        self.x = self.x.or(file.x);
        self.lo = self.lo.or(file.lo);
        self.hi = self.hi.or(file.hi);
        self.width = self.width.or(file.width);
        self.family2 = self.family2.or(file.family2);
        self.alpha2 = self.alpha2.or(file.alpha2);
        self.b2 = self.b2.or(file.b2);
        self.x_min = self.x_min.or(file.x_min);
        self.x_max = self.x_max.or(file.x_max);
        self.n = self.n.or(file.n);
        self.abs_tol = self.abs_tol.or(file.abs_tol);
        self.rel_tol = self.rel_tol.or(file.rel_tol);
        if self.format.is_none() {
            self.format = match file.format.as_deref() {
                None => None,
                Some("csv") => Some(OutputFormat::Csv),
                Some("json") => Some(OutputFormat::Json),
                Some("human") => Some(OutputFormat::Human),
                Some(other) => {
                    return Err(usage(format!("config format: unknown value {other:?}")));
                }
            };
        }
        self.out = self.out.or(file.out);
        Ok(self)
    }
}

/// Parse and validate an argument vector (excluding a config file).
pub fn parse_args<I, S>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let file = match &cli.config {
        None => FileConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| usage(format!("config {}: {e}", path.display())))?
        }
    };
    resolve(cli.command, file)
}

fn resolve(command: CliCommand, file: FileConfig) -> Result<RunConfig, CliError> {
    let name = command.name();
    let args = command.args().clone().merged_with(file)?;

    let mut quad = QuadratureSpec::default();
    if let Some(t) = args.abs_tol {
        quad.abs_tol = t;
    }
    if let Some(t) = args.rel_tol {
        quad.rel_tol = t;
    }
    quad.validate()
        .map_err(|e| usage(format!("--abs-tol/--rel-tol: {e}")))?;

    let family = || build_family(args.family.as_deref(), args.alpha, args.b, "family");

    let action = match name {
        "transform" => Action::Transform {
            family: family()?,
            x: args.x.ok_or_else(|| usage("--x is required"))?,
        },
        "spectral" => Action::Spectral { family: family()? },
        "sweep" => {
            let list = args
                .alphas
                .as_deref()
                .ok_or_else(|| usage("--alphas is required"))?;
            // The sweep varies alpha, so the family itself is built per point;
            // validate the shape with the first alpha.
            let alphas = parse_alpha_list(list)?;
            let id = parse_family_id(
                args.family
                    .as_deref()
                    .ok_or_else(|| usage("--family is required"))?,
            )?;
            CatalogFamily::new(id, alphas[0], args.b).map_err(|e| usage(format!("--b: {e}")))?;
            Action::Sweep {
                shape: FamilyShape::new(id, args.b),
                alphas,
            }
        }
        "threshold" => {
            let lo = args.lo.ok_or_else(|| usage("--lo is required"))?;
            let hi = args.hi.ok_or_else(|| usage("--hi is required"))?;
            if !(lo > 0.0 && hi > lo) {
                return Err(usage("--lo/--hi must satisfy 0 < lo < hi"));
            }
            let width = args.width.unwrap_or(0.01);
            if width <= 0.0 {
                return Err(usage("--width must be positive"));
            }
            let id = parse_family_id(
                args.family
                    .as_deref()
                    .ok_or_else(|| usage("--family is required"))?,
            )?;
            CatalogFamily::new(id, lo, args.b).map_err(|e| usage(format!("--b: {e}")))?;
            Action::Threshold {
                shape: FamilyShape::new(id, args.b),
                lo,
                hi,
                width,
            }
        }
        "sum" => Action::Sum {
            first: family()?,
            second: build_family(args.family2.as_deref(), args.alpha2, args.b2, "family2")?,
        },
        "reproduce" => Action::Reproduce,
        "plot" => {
            let x_min = args.x_min.ok_or_else(|| usage("--x-min is required"))?;
            let x_max = args.x_max.ok_or_else(|| usage("--x-max is required"))?;
            if x_min >= x_max {
                return Err(usage("--x-min must be below --x-max"));
            }
            let n = args.n.unwrap_or(1000);
            if n < 2 {
                return Err(usage("--n must be at least 2"));
            }
            Action::Plot {
                family: family()?,
                x_min,
                x_max,
                n,
            }
        }
        _ => unreachable!("subcommands are exhaustive"),
    };

    let format = args.format.unwrap_or(OutputFormat::Human);
    Ok(RunConfig {
        action,
        quad,
        format,
        out: args.out,
    })
}

impl RunConfig {
    /// Canonical flag serialization; parsing it reproduces this config.
    pub fn to_args(&self) -> Vec<String> {
        let mut argv: Vec<String> = Vec::new();
        let push_family =
            |argv: &mut Vec<String>, prefix: &str, id: FamilyId, alpha: f64, b: Option<f64>| {
                argv.push(format!("--family{prefix}"));
                argv.push(id.name().to_string());
                argv.push(format!("--alpha{prefix}"));
                argv.push(alpha.to_string());
                if let Some(b) = b {
                    argv.push(format!("--b{prefix}"));
                    argv.push(b.to_string());
                }
            };
        match &self.action {
            Action::Transform { family, x } => {
                argv.push("transform".into());
                push_family(&mut argv, "", family.family_id, family.alpha, family.b);
                argv.push("--x".into());
                argv.push(x.to_string());
            }
            Action::Spectral { family } => {
                argv.push("spectral".into());
                push_family(&mut argv, "", family.family_id, family.alpha, family.b);
            }
            Action::Sweep { shape, alphas } => {
                argv.push("sweep".into());
                argv.push("--family".into());
                argv.push(shape.family_id.name().to_string());
                if let Some(b) = shape.b {
                    argv.push("--b".into());
                    argv.push(b.to_string());
                }
                argv.push("--alphas".into());
                argv.push(
                    alphas
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                );
            }
            Action::Threshold {
                shape,
                lo,
                hi,
                width,
            } => {
                argv.push("threshold".into());
                argv.push("--family".into());
                argv.push(shape.family_id.name().to_string());
                if let Some(b) = shape.b {
                    argv.push("--b".into());
                    argv.push(b.to_string());
                }
                argv.push("--lo".into());
                argv.push(lo.to_string());
                argv.push("--hi".into());
                argv.push(hi.to_string());
                argv.push("--width".into());
                argv.push(width.to_string());
            }
            Action::Sum { first, second } => {
                argv.push("sum".into());
                push_family(&mut argv, "", first.family_id, first.alpha, first.b);
                push_family(&mut argv, "2", second.family_id, second.alpha, second.b);
            }
            Action::Reproduce => argv.push("reproduce".into()),
            Action::Plot {
                family,
                x_min,
                x_max,
                n,
            } => {
                argv.push("plot".into());
                push_family(&mut argv, "", family.family_id, family.alpha, family.b);
                argv.push("--x-min".into());
                argv.push(x_min.to_string());
                argv.push("--x-max".into());
                argv.push(x_max.to_string());
                argv.push("--n".into());
                argv.push(n.to_string());
            }
        }
        let defaults = QuadratureSpec::default();
        if self.quad.abs_tol != defaults.abs_tol {
            argv.push("--abs-tol".into());
            argv.push(self.quad.abs_tol.to_string());
        }
        if self.quad.rel_tol != defaults.rel_tol {
            argv.push("--rel-tol".into());
            argv.push(self.quad.rel_tol.to_string());
        }
        if self.format != OutputFormat::Human {
            argv.push("--format".into());
            argv.push(self.format.name().to_string());
        }
        if let Some(out) = &self.out {
            argv.push("--out".into());
            argv.push(out.display().to_string());
        }
        argv
    }
}
