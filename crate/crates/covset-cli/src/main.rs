//! `covset`: construct, verify, and optimize covering/packing sets for
//! limited-magnitude errors in `Z_q`, plus the related order-density
//! tables.
//!
//! Exit codes: 0 on success (and on "is a covering set"), 1 on semantic
//! failure (not covering, or `--require-exact` unmet), 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use covset::arith::{is_prime, primitive_root, MODULUS_CAP};
use covset::construct::{construct_general, default_interval_len, interval_plus_residual};
use covset::cover::{verify, CoverageReport};
use covset::density::{count_n_sweep, count_q4_sweep, estimate_rho, mertens_sweep};
use covset::search::{
    delta_run, nu_exact, omega_exact, omega_greedy, theta_exact, SearchLimits,
};
use covset::{CoveringSet, CoveringSetRecord, ErrorSpec, Method};

mod output;
use output::{csv_table, emit, round6, sig6};

#[derive(Parser)]
#[command(
    name = "covset",
    version,
    about = "Covering and packing sets for limited-magnitude errors in Z_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SpecArgs {
    /// Modulus of the residue ring Z_q.
    #[arg(long)]
    q: u64,
    /// Largest positive error magnitude.
    #[arg(long)]
    lambda: u64,
    /// Largest negative error magnitude.
    #[arg(long)]
    mu: u64,
}

impl SpecArgs {
    fn to_spec(&self) -> Result<ErrorSpec, String> {
        ErrorSpec::new(self.q, self.lambda, self.mu).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct LimitArgs {
    /// Raise the modulus cap for the exact searches.
    #[arg(long)]
    max_q: Option<u64>,
    /// Branch-and-bound node budget.
    #[arg(long)]
    limit_nodes: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    /// Accept the instance regardless of the modulus cap.
    #[arg(long)]
    force: bool,
}

impl LimitArgs {
    fn to_limits(&self, q: u64) -> SearchLimits {
        let mut limits = SearchLimits::default();
        if let Some(max_q) = self.max_q {
            limits.max_q = max_q;
        }
        if self.force {
            limits.max_q = limits.max_q.max(q);
        }
        if let Some(nodes) = self.limit_nodes {
            limits.node_budget = nodes;
        }
        if let Some(secs) = self.time_budget {
            limits.time_budget = Some(Duration::from_secs_f64(secs));
        }
        limits
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct a covering set and verify it before printing.
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
        /// Use the interval-plus-residual construction with this interval
        /// length instead of the general construction.
        #[arg(long)]
        interval: Option<u64>,
        /// Use the interval construction with its default length
        /// ceil(q/sqrt(max(lambda, mu))).
        #[arg(long, conflicts_with = "interval")]
        interval_default: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify whether a set covers (and packs) for a spec.
    Verify {
        /// Modulus; required with --elements, optional with --file.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        lambda: Option<u64>,
        #[arg(long)]
        mu: Option<u64>,
        /// Comma-separated residues.
        #[arg(long, value_delimiter = ',', conflicts_with = "file")]
        elements: Option<Vec<u64>>,
        /// JSON file in the `construct` output schema.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum covering-set size by exact branch and bound.
    Omega {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        limits: LimitArgs,
        /// Report the greedy upper bound instead of searching.
        #[arg(long)]
        greedy: bool,
        /// Exit with status 1 unless the result is proven optimal.
        #[arg(long)]
        require_exact: bool,
        /// Include the witness elements in the output.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum product-set size over subsets of a fixed size r.
    Nu {
        #[command(flatten)]
        spec: SpecArgs,
        /// Subset size.
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum packing-set size.
    Theta {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        limits: LimitArgs,
        /// Include the witness elements in the output.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Longest run of consecutive primitive-root powers inside M, and the
    /// covering-size bound it implies.
    Delta {
        /// Odd prime modulus.
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        mu: u64,
        /// Primitive root to use; defaults to the smallest one.
        #[arg(long)]
        g: Option<u64>,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order-density tables: one row per threshold.
    Density {
        #[arg(long, value_enum, ignore_case = true)]
        mode: DensityMode,
        /// Comma-separated ascending thresholds.
        #[arg(long, value_delimiter = ',', required = true)]
        thresholds: Vec<u64>,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare lower bound, exact/greedy minima, and construction size
    /// over a range of q.
    Sweep {
        #[arg(long)]
        q_from: u64,
        #[arg(long)]
        q_to: u64,
        /// Restrict the range to primes.
        #[arg(long)]
        primes_only: bool,
        /// Rule for lambda: `fixed:<k>`, `ceil-sqrt`, or `ratio:<d>`
        /// (= ceil(q/d)).
        #[arg(long, default_value = "ceil-sqrt")]
        lambda_rule: String,
        /// Rule for mu, same grammar.
        #[arg(long, default_value = "fixed:0")]
        mu_rule: String,
        /// Skip the exact search column.
        #[arg(long)]
        no_exact: bool,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DensityMode {
    /// Count odd primes p with 4 | ord_p(2), normalized by pi(x).
    Q4,
    /// Count q = 2 mod 4 whose odd prime divisors all have 4 | ord_p(2).
    N,
    /// Same counts as `n`, read as a convergence table for the leading
    /// constant.
    Rho,
    /// Partial products of 1 + 1/(p-1) over the counted primes.
    Mertens,
}

/// Per-q rule for choosing a magnitude in sweeps.
enum Rule {
    Fixed(u64),
    CeilSqrt,
    Ratio(u64),
}

impl Rule {
    fn apply(&self, q: u64) -> u64 {
        match *self {
            Rule::Fixed(k) => k,
            Rule::CeilSqrt => (q as f64).sqrt().ceil() as u64,
            Rule::Ratio(d) => q.div_ceil(d),
        }
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "ceil-sqrt" {
            return Ok(Rule::CeilSqrt);
        }
        if let Some(k) = s.strip_prefix("fixed:") {
            return k
                .parse()
                .map(Rule::Fixed)
                .map_err(|_| format!("bad fixed rule '{s}'"));
        }
        if let Some(d) = s.strip_prefix("ratio:") {
            let d: u64 = d.parse().map_err(|_| format!("bad ratio rule '{s}'"))?;
            if d == 0 {
                return Err("ratio divisor must be positive".into());
            }
            return Ok(Rule::Ratio(d));
        }
        Err(format!(
            "unknown rule '{s}' (expected fixed:<k>, ceil-sqrt, or ratio:<d>)"
        ))
    }
}

#[derive(Serialize)]
struct VerifyRow {
    q: u64,
    lambda: u64,
    mu: u64,
    #[serde(flatten)]
    report: CoverageReport,
}

#[derive(Serialize)]
struct OmegaRow {
    q: u64,
    lambda: u64,
    mu: u64,
    omega: u64,
    exact: bool,
    lower_bound: u64,
    construction_size: u64,
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct NuRow {
    q: u64,
    lambda: u64,
    mu: u64,
    r: u64,
    nu: u64,
}

#[derive(Serialize)]
struct ThetaRow {
    q: u64,
    lambda: u64,
    mu: u64,
    theta: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct DeltaRow {
    p: u64,
    g: u64,
    lambda: u64,
    mu: u64,
    delta: u64,
    implied_bound: Option<u64>,
}

#[derive(Serialize)]
struct SweepRow {
    q: u64,
    lambda: u64,
    mu: u64,
    lower_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_exact: Option<u64>,
    omega_greedy: u64,
    construction_size: u64,
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut line = serde_json::to_string(value).expect("serializable row");
    line.push('\n');
    line
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Construct {
            spec,
            interval,
            interval_default,
            out,
        } => {
            let sp = spec.to_spec()?;
            let interval = interval.or(interval_default.then(|| default_interval_len(&sp)));
            let mut record;
            let set: CoveringSet;
            match interval {
                Some(len) => {
                    let cover = interval_plus_residual(&sp, len).map_err(|e| e.to_string())?;
                    set = cover.set;
                    record = CoveringSetRecord::new(&sp, &set);
                    record.interval_size = Some(cover.interval_size);
                    record.residual_size = Some(cover.residual_size);
                }
                None => {
                    set = construct_general(&sp);
                    record = CoveringSetRecord::new(&sp, &set);
                }
            }
            let report = verify(&sp, &set).map_err(|e| e.to_string())?;
            if !report.is_covering {
                eprintln!(
                    "internal verification failed: construction missed {} residues",
                    report.missing.len()
                );
                return Ok(ExitCode::from(1));
            }
            emit(&json_line(&record), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            q,
            lambda,
            mu,
            elements,
            file,
            out,
        } => {
            let (sp, set) = match (&elements, &file) {
                (Some(elements), None) => {
                    let (Some(q), Some(lambda), Some(mu)) = (q, lambda, mu) else {
                        return Err("--elements requires --q, --lambda, and --mu".into());
                    };
                    let sp = ErrorSpec::new(q, lambda, mu).map_err(|e| e.to_string())?;
                    let set = CoveringSet::new(q, elements.clone(), Method::Explicit)
                        .map_err(|e| e.to_string())?;
                    (sp, set)
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                    let record: CoveringSetRecord = serde_json::from_str(&text)
                        .map_err(|e| format!("bad covering-set JSON: {e}"))?;
                    // flags override the file's spec, e.g. to recheck the
                    // same set under different magnitudes
                    let record = CoveringSetRecord {
                        q: q.unwrap_or(record.q),
                        lambda: lambda.unwrap_or(record.lambda),
                        mu: mu.unwrap_or(record.mu),
                        ..record
                    };
                    record.to_parts().map_err(|e| e.to_string())?
                }
                _ => return Err("exactly one of --elements or --file is required".into()),
            };
            let report = verify(&sp, &set).map_err(|e| e.to_string())?;
            let covering = report.is_covering;
            let row = VerifyRow {
                q: sp.q(),
                lambda: sp.lambda(),
                mu: sp.mu(),
                report,
            };
            emit(&json_line(&row), out.as_deref())?;
            Ok(if covering {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Omega {
            spec,
            limits,
            greedy,
            require_exact,
            witness,
            format,
            out,
        } => {
            let sp = spec.to_spec()?;
            let result = if greedy {
                omega_greedy(&sp)
            } else {
                omega_exact(&sp, &limits.to_limits(sp.q())).map_err(|e| {
                    format!("{e}; pass --force or --max-q to accept large instances")
                })?
            };
            let row = OmegaRow {
                q: sp.q(),
                lambda: sp.lambda(),
                mu: sp.mu(),
                omega: result.value,
                exact: result.exact,
                lower_bound: result.lower_bound,
                construction_size: construct_general(&sp).len() as u64,
                nodes: result.nodes_explored,
                witness: witness.then(|| result.witness.elements().to_vec()),
            };
            let payload = match format.unwrap_or(Format::Json) {
                Format::Json => json_line(&row),
                Format::Csv => csv_table(
                    "q,lambda,mu,omega,exact,lower_bound,construction_size,nodes",
                    [format!(
                        "{},{},{},{},{},{},{},{}",
                        row.q,
                        row.lambda,
                        row.mu,
                        row.omega,
                        row.exact,
                        row.lower_bound,
                        row.construction_size,
                        row.nodes
                    )],
                ),
            };
            emit(&payload, out.as_deref())?;
            Ok(if require_exact && !row.exact {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Nu {
            spec,
            r,
            limits,
            format,
            out,
        } => {
            let sp = spec.to_spec()?;
            let value = nu_exact(&sp, r, &limits.to_limits(sp.q())).map_err(|e| {
                format!("{e}; pass --force or --max-q/--max-r to accept large instances")
            })?;
            let row = NuRow {
                q: sp.q(),
                lambda: sp.lambda(),
                mu: sp.mu(),
                r,
                nu: value,
            };
            let payload = match format.unwrap_or(Format::Json) {
                Format::Json => json_line(&row),
                Format::Csv => csv_table(
                    "q,lambda,mu,r,nu",
                    [format!("{},{},{},{},{}", row.q, row.lambda, row.mu, row.r, row.nu)],
                ),
            };
            emit(&payload, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Theta {
            spec,
            limits,
            witness,
            format,
            out,
        } => {
            let sp = spec.to_spec()?;
            let result = theta_exact(&sp, &limits.to_limits(sp.q()))
                .map_err(|e| format!("{e}; pass --force or --max-q to accept large instances"))?;
            let row = ThetaRow {
                q: sp.q(),
                lambda: sp.lambda(),
                mu: sp.mu(),
                theta: result.value,
                witness: witness.then(|| result.witness.elements().to_vec()),
            };
            let payload = match format.unwrap_or(Format::Json) {
                Format::Json => json_line(&row),
                Format::Csv => csv_table(
                    "q,lambda,mu,theta",
                    [format!("{},{},{},{}", row.q, row.lambda, row.mu, row.theta)],
                ),
            };
            emit(&payload, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Delta {
            p,
            lambda,
            mu,
            g,
            format,
            out,
        } => {
            let sp = ErrorSpec::new(p, lambda, mu).map_err(|e| e.to_string())?;
            let g = match g {
                Some(g) => g,
                None => primitive_root(p).map_err(|e| e.to_string())?,
            };
            let run = delta_run(p, g, &sp).map_err(|e| e.to_string())?;
            let row = DeltaRow {
                p,
                g,
                lambda,
                mu,
                delta: run.delta,
                implied_bound: run.implied_bound,
            };
            let payload = match format.unwrap_or(Format::Json) {
                Format::Json => json_line(&row),
                Format::Csv => csv_table(
                    "p,g,lambda,mu,delta,implied_bound",
                    [format!(
                        "{},{},{},{},{},{}",
                        row.p,
                        row.g,
                        row.lambda,
                        row.mu,
                        row.delta,
                        row.implied_bound
                            .map_or_else(|| "none".to_owned(), |b| b.to_string())
                    )],
                ),
            };
            emit(&payload, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Density {
            mode,
            thresholds,
            format,
            out,
        } => {
            let format = format.unwrap_or(Format::Csv);
            let payload = match mode {
                DensityMode::Q4 | DensityMode::N | DensityMode::Rho => {
                    let records = match mode {
                        DensityMode::Q4 => count_q4_sweep(&thresholds),
                        DensityMode::N => count_n_sweep(&thresholds),
                        _ => estimate_rho(&thresholds),
                    }
                    .map_err(|e| e.to_string())?;
                    match format {
                        Format::Csv => csv_table(
                            "threshold,count,normalizer,ratio",
                            records.iter().map(|r| {
                                format!(
                                    "{},{},{},{}",
                                    r.threshold,
                                    r.count,
                                    sig6(r.normalizer),
                                    sig6(r.ratio)
                                )
                            }),
                        ),
                        Format::Json => {
                            let rounded: Vec<_> = records
                                .into_iter()
                                .map(|mut r| {
                                    r.normalizer = round6(r.normalizer);
                                    r.ratio = round6(r.ratio);
                                    r
                                })
                                .collect();
                            json_line(&rounded)
                        }
                    }
                }
                DensityMode::Mertens => {
                    let records = mertens_sweep(&thresholds).map_err(|e| e.to_string())?;
                    match format {
                        Format::Csv => csv_table(
                            "threshold,count,product,eta",
                            records.iter().map(|r| {
                                format!(
                                    "{},{},{},{}",
                                    r.threshold,
                                    r.count,
                                    sig6(r.product),
                                    sig6(r.eta)
                                )
                            }),
                        ),
                        Format::Json => {
                            let rounded: Vec<_> = records
                                .into_iter()
                                .map(|mut r| {
                                    r.product = round6(r.product);
                                    r.eta = round6(r.eta);
                                    r
                                })
                                .collect();
                            json_line(&rounded)
                        }
                    }
                }
            };
            emit(&payload, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Sweep {
            q_from,
            q_to,
            primes_only,
            lambda_rule,
            mu_rule,
            no_exact,
            limits,
            format,
            out,
        } => {
            if q_to >= MODULUS_CAP {
                return Err(format!("--q-to {q_to} is at or above the 2^31 cap"));
            }
            let lambda_rule: Rule = lambda_rule.parse()?;
            let mu_rule: Rule = mu_rule.parse()?;
            let search_limits = limits.to_limits(q_to);
            if !no_exact && q_to > search_limits.max_q {
                return Err(format!(
                    "exact search over q up to {q_to} exceeds the limit {}; \
                     pass --no-exact, --force, or --max-q",
                    search_limits.max_q
                ));
            }
            let mut rows = Vec::new();
            for q in q_from..=q_to {
                if primes_only && !is_prime(q) {
                    continue;
                }
                let Ok(sp) = ErrorSpec::new(q, lambda_rule.apply(q), mu_rule.apply(q)) else {
                    continue; // the rules produce no valid spec for this q
                };
                let exact = if no_exact {
                    None
                } else {
                    Some(
                        omega_exact(&sp, &search_limits)
                            .map_err(|e| e.to_string())?
                            .value,
                    )
                };
                let greedy = omega_greedy(&sp);
                rows.push(SweepRow {
                    q,
                    lambda: sp.lambda(),
                    mu: sp.mu(),
                    lower_bound: greedy.lower_bound,
                    omega_exact: exact,
                    omega_greedy: greedy.value,
                    construction_size: construct_general(&sp).len() as u64,
                });
            }
            let payload = match format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let header = if no_exact {
                        "q,lambda,mu,lower_bound,omega_greedy,construction_size"
                    } else {
                        "q,lambda,mu,lower_bound,omega_exact,omega_greedy,construction_size"
                    };
                    csv_table(
                        header,
                        rows.iter().map(|r| match r.omega_exact {
                            Some(exact) => format!(
                                "{},{},{},{},{},{},{}",
                                r.q,
                                r.lambda,
                                r.mu,
                                r.lower_bound,
                                exact,
                                r.omega_greedy,
                                r.construction_size
                            ),
                            None => format!(
                                "{},{},{},{},{},{}",
                                r.q,
                                r.lambda,
                                r.mu,
                                r.lower_bound,
                                r.omega_greedy,
                                r.construction_size
                            ),
                        }),
                    )
                }
                Format::Json => json_line(&rows),
            };
            emit(&payload, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
