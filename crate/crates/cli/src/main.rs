use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand};
use expfam_cli::commands::{self, CheckQuantity, DivergenceKind, EntropyKind};
use expfam_cli::spec::{inline_spec, DistributionSpecFile};
use expfam_cli::sweep::{run_sweep, write_sweep_csv, Axis, SweepGrid, SweepKind, SweepQuantity};
use expfam_cli::{CliError, CliResult};
use expfam_core::estimation::{sample, DEFAULT_SAMPLES};
use expfam_core::NaturalParam;
use serde_json::Value;

/// Closed-form Sharma-Mittal entropies and divergences for exponential families.
#[derive(Parser)]
#[command(name = "expfam", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A distribution given as a JSON spec file or inline flags. `--q`, `--mu2`,
/// `--sigma2` and `--rate2` describe the second argument of a divergence.
#[derive(Args)]
struct Dists {
    /// JSON spec file of the (first) distribution.
    #[arg(long, visible_alias = "p")]
    dist: Option<PathBuf>,
    /// JSON spec file of the second distribution.
    #[arg(long)]
    q: Option<PathBuf>,
    /// Family for inline parameters: gaussian, exponential or poisson.
    #[arg(long)]
    family: Option<String>,
    /// Gaussian mean, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Gaussian covariance, d² comma-separated row-major entries.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Exponential or Poisson rate.
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma2: Option<String>,
    #[arg(long)]
    rate2: Option<f64>,
}

impl Dists {
    fn resolve(
        file: Option<&PathBuf>,
        family: Option<&str>,
        mu: Option<&str>,
        sigma: Option<&str>,
        rate: Option<f64>,
        label: &str,
    ) -> CliResult<Option<NaturalParam>> {
        let inline = mu.is_some() || sigma.is_some() || rate.is_some();
        match (file, inline) {
            (Some(_), true) => Err(CliError::input(format!(
                "{label}: give either a spec file or inline parameters, not both"
            ))),
            (Some(path), false) => Ok(Some(DistributionSpecFile::load(path)?.to_natural()?)),
            (None, true) => {
                let family =
                    family.ok_or_else(|| CliError::input("inline parameters need --family"))?;
                Ok(Some(inline_spec(family, mu, sigma, rate)?.to_natural()?))
            }
            (None, false) => Ok(None),
        }
    }

    fn first(&self) -> CliResult<NaturalParam> {
        Self::resolve(
            self.dist.as_ref(),
            self.family.as_deref(),
            self.mu.as_deref(),
            self.sigma.as_deref(),
            self.rate,
            "first distribution",
        )?
        .ok_or_else(|| {
            CliError::input("missing distribution: pass --dist/--p or --family with parameters")
        })
    }

    fn second(&self) -> CliResult<Option<NaturalParam>> {
        Self::resolve(
            self.q.as_ref(),
            self.family.as_deref(),
            self.mu2.as_deref(),
            self.sigma2.as_deref(),
            self.rate2,
            "second distribution",
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form entropy of one distribution.
    Entropy {
        #[command(flatten)]
        dists: Dists,
        #[arg(long, value_enum, default_value = "sm")]
        kind: EntropyKind,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
    },
    /// Closed-form divergence D(p:q).
    Divergence {
        #[command(flatten)]
        dists: Dists,
        #[arg(long, value_enum, default_value = "sm")]
        kind: DivergenceKind,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
    },
    /// Maximum-likelihood fit of a CSV sample (one observation per row).
    Fit {
        #[arg(long)]
        family: String,
        #[arg(long)]
        input: PathBuf,
        /// The first row is a header.
        #[arg(long)]
        header: bool,
    },
    /// Draw a seeded sample and write it as CSV.
    Sample {
        #[command(flatten)]
        dists: Dists,
        #[arg(long, short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy or divergence over an (α, β) grid, as CSV.
    Sweep {
        #[command(flatten)]
        dists: Dists,
        /// Defaults to divergence when a second distribution is given.
        #[arg(long, value_enum)]
        quantity: Option<SweepQuantity>,
        #[arg(long, value_enum, default_value = "sm")]
        kind: SweepKind,
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true)]
        alpha_range: Vec<f64>,
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true)]
        beta_range: Option<Vec<f64>>,
        #[arg(long, default_value_t = 50)]
        alpha_steps: usize,
        #[arg(long, default_value_t = 50)]
        beta_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a closed form against its Monte Carlo estimate; exits 5 when |z| > 3.
    Check {
        #[command(flatten)]
        dists: Dists,
        #[arg(long, value_enum)]
        quantity: CheckQuantity,
        #[arg(long, value_enum, default_value = "sm")]
        kind: EntropyKind,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn print_json(value: &Value) {
    println!("{value}");
}

fn output(out: Option<&PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).map_err(|e| {
                CliError::input(format!("{}: {e}", path.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Entropy {
            dists,
            kind,
            alpha,
            beta,
        } => {
            let order = commands::entropy_order(kind, alpha, beta)?;
            print_json(&commands::entropy(&dists.first()?, order)?);
        }
        Command::Divergence {
            dists,
            kind,
            alpha,
            beta,
        } => {
            let order = commands::divergence_order(kind, alpha, beta)?;
            let q = dists.second()?.ok_or_else(|| {
                CliError::input("missing second distribution: pass --q or --mu2/--sigma2/--rate2")
            })?;
            print_json(&commands::divergence(&dists.first()?, &q, order)?);
        }
        Command::Fit {
            family,
            input,
            header,
        } => {
            let samples = commands::read_samples(&family, &input, header)?;
            print_json(&commands::fit(&samples)?);
        }
        Command::Sample {
            dists,
            n,
            seed,
            out,
        } => {
            let samples = sample(&dists.first()?, n, seed);
            commands::write_samples(&samples, output(out.as_ref())?)?;
        }
        Command::Sweep {
            dists,
            quantity,
            kind,
            alpha_range,
            beta_range,
            alpha_steps,
            beta_steps,
            out,
        } => {
            let alpha = Axis::new("α", alpha_range[0], alpha_range[1], alpha_steps)?;
            let beta = beta_range
                .map(|r| Axis::new("β", r[0], r[1], beta_steps))
                .transpose()?;
            let grid = SweepGrid::new(alpha, beta, kind)?;
            let p = dists.first()?;
            let q = match (quantity, dists.second()?) {
                (Some(SweepQuantity::Entropy), _) => None,
                (Some(SweepQuantity::Divergence), None) => {
                    return Err(CliError::input(
                        "a divergence sweep needs a second distribution (--q)",
                    ))
                }
                (_, q) => q,
            };
            let rows = run_sweep(&p, q.as_ref(), &grid)?;
            write_sweep_csv(&rows, output(out.as_ref())?)?;
        }
        Command::Check {
            dists,
            quantity,
            kind,
            alpha,
            beta,
            samples,
            seed,
        } => {
            let order = commands::entropy_order(kind, alpha, beta)?;
            let p = dists.first()?;
            let q = dists.second()?;
            let (report, pass) = commands::check(&p, q.as_ref(), quantity, order, samples, seed)?;
            print_json(&report);
            if !pass {
                return Err(CliError::check_failed(format!(
                    "closed form and Monte Carlo disagree (z = {})",
                    report["z"]
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            eprintln!("{}", CliError::input(first.trim_start_matches("error: ")));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}
