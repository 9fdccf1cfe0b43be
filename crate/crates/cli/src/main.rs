//! `moran`: Moran's I, its exact range, the rescaled I_M, and permutation tests.

mod input;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moran_core::experiments::{definiteness_threshold, table1, TABLE1_NS, TABLE1_QS};
use moran_core::inference::{permutation_test, Alternative};
use moran_core::moran::{analyze, bounds, definiteness, Definiteness, Extreme};
use moran_core::{Error, Weights};
use serde_json::{json, Value};

use input::{read_observations, WeightsSource};
use report::{int, num, pretty, Record};

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn validation(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn from_core(e: Error, describe: impl FnOnce(String) -> String) -> Self {
        let code = if e.is_numerical() { 1 } else { 2 };
        Self {
            code,
            message: describe(e.to_string()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::from_core(e, |m| m)
    }
}

#[derive(Parser)]
#[command(
    name = "moran",
    version,
    about = "Moran's I with its exact attainable range"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moran's I, the rescaled I_M and the bounds of I for one observation vector
    Moran {
        /// Observations CSV, one value per line, optional header
        #[arg(long, value_name = "FILE")]
        y: PathBuf,
        #[command(flatten)]
        w: WeightsArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Exact range of Moran's I and definiteness of the reduced matrix
    Bounds {
        #[command(flatten)]
        w: WeightsArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Observation vector attaining the lower or upper bound
    Extremal {
        #[command(flatten)]
        w: WeightsArgs,
        /// Which bound to attain
        #[arg(long, value_enum, default_value = "upper")]
        which: Which,
        /// Constant added to every unit
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        shift: f64,
        /// Nonzero multiplier of the eigenvector direction
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        scale: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Permutation test of spatial independence
    Permtest {
        /// Observations CSV, one value per line, optional header
        #[arg(long, value_name = "FILE")]
        y: PathBuf,
        #[command(flatten)]
        w: WeightsArgs,
        /// Number of permutation replicates (at least 99)
        #[arg(long, default_value_t = 999)]
        reps: usize,
        /// Direction of the alternative hypothesis
        #[arg(long, value_enum, default_value = "greater")]
        alt: Alt,
        #[command(flatten)]
        common: Common,
    },
    /// Bounds of I for line-decay weights over an (n, q) grid
    Table1 {
        /// Comma-separated numbers of units
        #[arg(long, value_delimiter = ',', default_values_t = TABLE1_NS)]
        n: Vec<usize>,
        /// Comma-separated neighbourhood orders
        #[arg(long, value_delimiter = ',', default_values_t = TABLE1_QS)]
        q: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Half-width a* where uniformly perturbed complete weights stop being negative definite
    Threshold {
        /// Number of units
        #[arg(long)]
        n: usize,
        /// Random matrices per grid point
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Grid spacing of a, at most 0.05
        #[arg(long, default_value_t = 0.02)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Seed for every random draw
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct WeightsArgs {
    #[command(flatten)]
    source: WeightsSourceArgs,
    /// The weights CSV starts with a header row
    #[arg(long, requires = "w")]
    w_header: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WeightsSourceArgs {
    /// Dense weights matrix CSV
    #[arg(long, value_name = "FILE")]
    w: Option<PathBuf>,
    /// Line-decay weights 2^(1-|i-j|) up to distance q
    #[arg(long, value_name = "N,Q", value_parser = parse_pair::<usize>)]
    w_line: Option<(usize, usize)>,
    /// Complete-graph weights (all off-diagonal ones)
    #[arg(long, value_name = "N")]
    w_complete: Option<usize>,
    /// Off-diagonal weights uniform on (1-a, 1+a), drawn with --seed
    #[arg(long, value_name = "N,A", value_parser = parse_pair::<f64>)]
    w_uniform: Option<(usize, f64)>,
}

impl WeightsArgs {
    fn source(&self, seed: u64) -> WeightsSource {
        let src = &self.source;
        if let Some(path) = &src.w {
            WeightsSource::File {
                path: path.clone(),
                header: self.w_header,
            }
        } else if let Some((n, q)) = src.w_line {
            WeightsSource::Line { n, q }
        } else if let Some(n) = src.w_complete {
            WeightsSource::Complete { n }
        } else if let Some((n, a)) = src.w_uniform {
            WeightsSource::Uniform { n, a, seed }
        } else {
            unreachable!("clap enforces one weights source")
        }
    }
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(usize, T), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated values, got {s:?}"))?;
    let a = a
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("invalid count {a:?}"))?;
    let b = b
        .trim()
        .parse::<T>()
        .map_err(|_| format!("invalid value {b:?}"))?;
    Ok((a, b))
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Alt {
    Greater,
    Less,
    TwoSided,
}

fn definiteness_label(d: Definiteness) -> &'static str {
    match d {
        Definiteness::NegativeDefinite => "negative_definite",
        Definiteness::NegativeSemidefiniteBoundary => "negative_semidefinite_boundary",
        Definiteness::Indefinite => "indefinite",
    }
}

fn alternative_label(a: Alternative) -> &'static str {
    match a {
        Alternative::Greater => "greater",
        Alternative::Less => "less",
        Alternative::TwoSided => "two_sided",
    }
}

fn emit(record: &Record, format: Format) -> String {
    match format {
        Format::Text => record.text_block(),
        Format::Csv => record.csv(),
        Format::Json => pretty(&record.json()),
    }
}

fn observations(path: &Path, w: &Weights) -> Result<Vec<f64>, CliError> {
    let y = read_observations(path)?;
    if y.len() != w.n() {
        return Err(CliError::validation(format!(
            "{}: {} observations but the weights matrix has {} units",
            path.display(),
            y.len(),
            w.n()
        )));
    }
    Ok(y)
}

fn with_file(path: &Path) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::from_core(e, |m| format!("{}: {m}", path.display()))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Moran { y, w, common } => {
            let weights = w.source(common.seed).load()?;
            let obs = observations(&y, &weights)?;
            let r = analyze(&obs, &weights).map_err(with_file(&y))?;
            let rec = Record::default()
                .float("i", r.i)
                .float("i_m", r.i_m)
                .float("lambda_min", r.bounds.lambda_min)
                .float("lambda_max", r.bounds.lambda_max)
                .count("n", r.n);
            Ok(emit(&rec, common.format))
        }
        Command::Bounds { w, common } => {
            let weights = w.source(common.seed).load()?;
            let b = bounds(&weights)?;
            let d = definiteness(&weights)?;
            let rec = Record::default()
                .float("lambda_min", b.lambda_min)
                .float("lambda_max", b.lambda_max)
                .count("n", weights.n())
                .text("definiteness", definiteness_label(d));
            Ok(emit(&rec, common.format))
        }
        Command::Extremal {
            w,
            which,
            shift,
            scale,
            common,
        } => {
            let weights = w.source(common.seed).load()?;
            let which = match which {
                Which::Lower => Extreme::Lower,
                Which::Upper => Extreme::Upper,
            };
            let b = bounds(&weights)?;
            let y = b
                .extremal_observations(which, shift, scale)
                .map_err(|e| CliError::from_core(e, |m| format!("--scale: {m}")))?;
            let i = match which {
                Extreme::Lower => b.lambda_min,
                Extreme::Upper => b.lambda_max,
            };
            Ok(match common.format {
                Format::Text | Format::Csv => {
                    let mut out = String::from("y\n");
                    for v in &y {
                        out.push_str(&moran_core::fmt::g17(*v));
                        out.push('\n');
                    }
                    out
                }
                Format::Json => {
                    let label = match which {
                        Extreme::Lower => "lower",
                        Extreme::Upper => "upper",
                    };
                    pretty(&json!({
                        "which": label,
                        "i": num(i),
                        "n": int(weights.n()),
                        "y": y.iter().map(|v| num(*v)).collect::<Vec<Value>>(),
                    }))
                }
            })
        }
        Command::Permtest {
            y,
            w,
            reps,
            alt,
            common,
        } => {
            let weights = w.source(common.seed).load()?;
            let obs = observations(&y, &weights)?;
            let alternative = match alt {
                Alt::Greater => Alternative::Greater,
                Alt::Less => Alternative::Less,
                Alt::TwoSided => Alternative::TwoSided,
            };
            let r =
                permutation_test(&obs, &weights, reps, common.seed, alternative).map_err(|e| {
                    match e {
                        Error::TooFewReplicates { .. } => {
                            CliError::from_core(e, |m| format!("--reps: {m}"))
                        }
                        other => with_file(&y)(other),
                    }
                })?;
            let b = bounds(&weights)?;
            let rec = Record::default()
                .float("i", r.observed_i)
                .float("i_m", r.observed_i_m)
                .float("lambda_min", b.lambda_min)
                .float("lambda_max", b.lambda_max)
                .count("n", weights.n())
                .float("p_value", r.p_value)
                .count("replicates", r.replicates)
                .seed("seed", r.seed)
                .text("alternative", alternative_label(r.alternative))
                .float("null_mean", r.null_mean);
            Ok(emit(&rec, common.format))
        }
        Command::Table1 { n, q, common } => {
            let t = table1(&n, &q)?;
            Ok(match common.format {
                Format::Text => t.to_text(),
                Format::Csv => t.to_csv(),
                Format::Json => {
                    let rows: Vec<Value> = t
                        .rows
                        .iter()
                        .map(|r| json!({"n": int(r.n), "q": int(r.q), "lower": num(r.lower), "upper": num(r.upper)}))
                        .collect();
                    pretty(&json!({ "rows": rows }))
                }
            })
        }
        Command::Threshold {
            n,
            trials,
            step,
            common,
        } => {
            let est = definiteness_threshold(n, trials, step, common.seed)?;
            Ok(match common.format {
                Format::Text => est.to_text(),
                Format::Csv => est.to_csv(),
                Format::Json => {
                    let curve: Vec<Value> = est
                        .fraction_curve
                        .iter()
                        .map(|(a, f)| json!({"a": num(*a), "fraction_negative_definite": num(*f)}))
                        .collect();
                    pretty(&json!({
                        "n": int(est.n),
                        "a_star": num(est.a_star),
                        "trials_per_a": int(est.trials_per_a),
                        "grid_step": num(est.grid_step),
                        "seed": est.seed,
                        "fraction_curve": curve,
                    }))
                }
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("moran: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
