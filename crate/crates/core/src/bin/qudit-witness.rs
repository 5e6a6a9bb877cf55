use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qudit_witness::atlas::{classify_horodecki, classify_point, lambda_scan, slice_sweep};
use qudit_witness::family::{
    horodecki_to_simplex, simplex_params_of, simplex_state, HorodeckiParam, SimplexParams,
};
use qudit_witness::operator::{BipartiteOperator, PSD_TOL};
use qudit_witness::ppt::{classify_ppt, min_separable_expectation, nearest_ppt, SamplerConfig};
use qudit_witness::reproduce::{run_battery, BatteryConfig};
use qudit_witness::witness::{certify_lemma1, GAMMA_WINDOW};
use qudit_witness::Error;

const AFTER_HELP: &str = "\
Exit codes: 0 success, 1 usage or input error, 2 numeric failure (non-convergence),
3 reproduction battery failure.

slice CSV columns:
  alpha,beta,gamma,valid,min_pt_eig,label,w_ci,w_cii,w_slice,w_ray,measure
  w_* are Tr(rho W) for C_I, C_II, the slice witness C_{gamma,lambda_min(gamma)} and the
  lambda-line witness through the point; empty when not applicable.
  measure is the Hilbert-Schmidt distance to the separable set, given on NPT gamma = 0 points.

lambda-scan CSV columns:
  gamma,lambda_1,lambda_2,lambda_min,detects
  followed by a '# min ...' summary line.

Numbers are printed with 15 significant digits; reruns with the same flags are byte-identical.";

#[derive(Parser)]
#[command(name = "qudit-witness", version, about = "Entanglement witnesses and PPT checks for two-qutrit magic-simplex states", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "b")]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "b")]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "b")]
    gamma: Option<f64>,
    /// Horodecki parameter in [0, 5].
    #[arg(long)]
    b: Option<f64>,
    /// Move along the line towards the maximally mixed state: lambda·rho + (1-lambda)·1/9.
    #[arg(long)]
    lambda: Option<f64>,
}

impl PointArgs {
    fn params(&self) -> Result<SimplexParams, Error> {
        let p = match self.b {
            Some(b) => horodecki_to_simplex(HorodeckiParam::new(b)?),
            None => match (self.alpha, self.beta, self.gamma) {
                (Some(a), Some(b), Some(g)) => SimplexParams::new(a, b, g),
                _ => {
                    return Err(Error::InvalidParameter(
                        "give either --b or all of --alpha --beta --gamma".into(),
                    ))
                }
            },
        };
        match self.lambda {
            Some(l) if !(0.0..=1.0).contains(&l) => Err(Error::InvalidParameter(format!(
                "lambda = {l} outside [0, 1]"
            ))),
            Some(l) => Ok(p.scaled(l)),
            None => Ok(p),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// PT verdict, witness values and label of one state.
    Classify {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = PSD_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Label a grid over one fixed-gamma slice.
    Slice {
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value_t = PSD_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Detection thresholds lambda_1, lambda_2, lambda_min over a gamma range.
    LambdaScan {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        from: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = GAMMA_WINDOW)]
        to: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the threshold-reproduction battery.
    Reproduce {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Refinement rounds per sampled product state.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certify an operator file and probe it on random separable states.
    WitnessCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Nearest PPT state by alternating projections.
    NearestPpt {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Iteration cap.
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::NotConverged { .. }) {
            2
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::from(Error::from(e))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::from(Error::from(e)))
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { point, tol, output } => {
            let sample = match (point.b, point.alpha) {
                (Some(b), _) => classify_horodecki(b, point.lambda, tol)?,
                _ => classify_point(point.params()?, tol)?,
            };
            let mut text = String::new();
            if !matches!(output.format, Some(Format::Json)) {
                text.push_str(&format!("verdict: {}\n", sample.label));
            }
            text.push_str(&pretty(&sample));
            emit(&output, &text)
        }
        Command::Slice {
            gamma,
            grid,
            tol,
            output,
        } => {
            let report = slice_sweep(gamma, grid, tol)?;
            let text = match output.format {
                Some(Format::Json) => pretty(&report),
                _ => report.to_csv(),
            };
            emit(&output, &text)
        }
        Command::LambdaScan {
            from,
            to,
            steps,
            output,
        } => {
            let scan = lambda_scan(from, to, steps)?;
            let text = match output.format {
                Some(Format::Json) => pretty(&scan),
                _ => scan.to_csv(),
            };
            emit(&output, &text)
        }
        Command::Reproduce {
            samples,
            seed,
            steps,
            output,
        } => {
            let checks = run_battery(BatteryConfig {
                samples,
                seed,
                refine_steps: steps,
            })?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let text = match output.format {
                Some(Format::Json) => pretty(&checks),
                _ => {
                    let mut t: String = checks.iter().map(|c| format!("{c}\n")).collect();
                    t.push_str(&format!(
                        "{} of {} checks passed\n",
                        checks.len() - failed,
                        checks.len()
                    ));
                    t
                }
            };
            emit(&output, &text)?;
            if failed > 0 {
                let names: Vec<_> = checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.id.as_str())
                    .collect();
                return Err(Failure {
                    code: 3,
                    message: format!("failed checks: {}", names.join(", ")),
                });
            }
            Ok(())
        }
        Command::WitnessCheck {
            file,
            samples,
            seed,
            steps,
            output,
        } => {
            let raw = fs::read_to_string(&file).map_err(Error::from)?;
            let op = BipartiteOperator::from_json(&raw)?;
            let cert = certify_lemma1(&op)?;
            let probe = if cert.certified {
                None
            } else {
                let config = SamplerConfig::new(seed, samples, 1)?;
                Some(min_separable_expectation(&op, config, steps)?)
            };
            let caveat = probe.map(|p| {
                if p.minimum < 0.0 {
                    "a sampled separable state has negative expectation: not a witness"
                } else {
                    "nonnegative on all samples; this is evidence only, not a proof"
                }
            });
            let report = json!({
                "file": file.display().to_string(),
                "certificate": cert,
                "sampler_probe": probe,
                "caveat": caveat,
            });
            let mut text = String::new();
            if !matches!(output.format, Some(Format::Json)) {
                text.push_str(&format!(
                    "certified: {} (max |c| = {:.15})\n",
                    if cert.certified { "yes" } else { "no" },
                    cert.max_abs_c
                ));
            }
            text.push_str(&pretty(&report));
            emit(&output, &text)
        }
        Command::NearestPpt {
            point,
            tol,
            steps,
            output,
        } => {
            let params = point.params()?;
            let rho = simplex_state(params).into_density()?;
            let verdict = classify_ppt(&rho, tol.max(PSD_TOL))?;
            let found = nearest_ppt(&rho, tol, steps)?;
            let (nearest_params, off_family) = simplex_params_of(&found.state)?;
            let report = json!({
                "input": params,
                "input_min_pt_eigenvalue": verdict.min_pt_eigenvalue,
                "iterations": found.iterations,
                "residual": found.residual,
                "distance": found.distance,
                "nearest_params": nearest_params,
                "nearest_off_family": off_family,
                "nearest": found.state,
            });
            emit(&output, &pretty(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
