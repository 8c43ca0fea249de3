//! The `invmult` command-line front end.
//!
//! Every command renders to a string in one of three formats (`pretty`,
//! `json`, `csv`); [`run`] writes it to standard output or `--out`.
//! Exit codes: 0 success, 2 usage or input error, 3 resource-budget refusal,
//! 1 I/O failure. Errors are a single line on standard error.

pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::asymp::{normal_fit_report, normal_params_equal, DEFAULT_FIT_BUDGET};
use crate::dist::{
    conditional_expectation_i, conditional_pmf_i_given_y, joint_pmf, joint_pmf_yj_i,
    marginal_i_pmf, marginal_i_pmf_equal, moment_sum1, moment_sum2, moments_of_i, AnyProbVector,
    ProbVector, Probability,
};
use crate::error::{Error, Result};
use crate::io::{
    csv_string, format_float, joint_to_csv, joint_to_json, marginal_to_csv, marginal_to_json,
    moments_to_json, optional_rational_json, JsonValue, Render,
};
use crate::qcomb::{
    brute_force_inv_distribution, composition_count, count_inversions, gaussian_multinomial,
    max_inversions, Composition, OutcomeSequence, DEFAULT_ENUMERATION_BOUND,
};
use crate::stats::{h_statistic, monte_carlo_joint, MonteCarloReport, SimulationConfig};
use table::{grid, joint_pretty, SymbolicTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "invmult",
    version,
    about = "Inversion-refined multinomial distribution"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Significant digits for floating values.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u16).range(1..))]
    pub precision: u16,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Number of trials.
    #[arg(long)]
    pub n: Option<u32>,

    /// Number of categories (implied by --p when given).
    #[arg(long)]
    pub k: Option<usize>,

    /// Comma-separated probabilities, either all rational (1/3) or all decimal (0.25).
    #[arg(long, conflicts_with = "equal")]
    pub p: Option<String>,

    /// Use p_j = 1/k for every category (exact).
    #[arg(long)]
    pub equal: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint table of (Y, I): rows are count vectors, columns inversion counts.
    Table {
        #[command(flatten)]
        dist: DistArgs,
        /// Render cells as probability monomials instead of numbers.
        #[arg(long)]
        symbolic: bool,
        /// Maximum number of count vectors to tabulate.
        #[arg(long, env = "INVMULT_BUDGET")]
        budget: Option<u64>,
    },
    /// Marginal pmf of I, or a joint/conditional variant.
    Pmf {
        #[command(flatten)]
        dist: DistArgs,
        /// Report only P(I = at).
        #[arg(long)]
        at: Option<u64>,
        /// Conditional pmf of I given the count vector, e.g. 1,1,1.
        #[arg(long, conflicts_with_all = ["joint", "category"])]
        given: Option<String>,
        /// Full joint pmf of (Y, I).
        #[arg(long, conflicts_with = "category")]
        joint: bool,
        /// Joint pmf of (Y_j, I) for this 1-based category.
        #[arg(long)]
        category: Option<usize>,
        /// Maximum number of count vectors for --joint.
        #[arg(long, env = "INVMULT_BUDGET")]
        budget: Option<u64>,
    },
    /// E(I), E(I^2), V(I); with --given, conditional moments for a count vector.
    Moments {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        given: Option<String>,
    },
    /// Seeded Monte Carlo of the experiment.
    Simulate {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        reps: u64,
        /// Write every simulated sequence, one per line, to this file.
        #[arg(long)]
        raw_out: Option<PathBuf>,
    },
    /// Inversion number and H statistic of an observed sequence.
    Hstat {
        /// Symbols 1..k, comma-separated or as a digit string.
        #[arg(long)]
        sequence: String,
        /// Alphabet size; defaults to the largest symbol.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Compare the equal-probability pmf of I with its normal limit.
    NormalFit {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        /// Maximum number of count vectors (weak compositions).
        #[arg(long, env = "INVMULT_BUDGET")]
        budget: Option<u64>,
    },
    /// The q-multinomial coefficient (inversion generating function) of a count vector.
    Poly {
        /// Count vector, e.g. 1,1,1.
        #[arg(long)]
        y: String,
        /// Also enumerate every permutation and check agreement.
        #[arg(long)]
        brute: bool,
        /// Maximum number of permutations for --brute.
        #[arg(long, env = "INVMULT_BUDGET")]
        budget: Option<u64>,
    },
}

/// Parse `args` (including the program name), run, print, and return the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|text| emit(&cli, &text)) {
        Ok(()) => 0,
        Err(e) => {
            let (code, kind) = match &e {
                Error::Io(_) => (1, "io"),
                e if e.is_resource_refusal() => (3, "budget"),
                _ => (2, "usage"),
            };
            eprintln!("error[{kind}]: {}", e.to_string().replace('\n', " "));
            code
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn check_budget(n: u32, k: usize, budget: u64) -> Result<()> {
    let needed = composition_count(n, k);
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    Ok(())
}

impl DistArgs {
    fn require_n(&self) -> Result<u32> {
        self.n.ok_or_else(|| Error::Parse("--n is required".into()))
    }

    fn require_k(&self) -> Result<usize> {
        match self.k {
            Some(0) => Err(Error::Parse("--k must be at least 1".into())),
            Some(k) => Ok(k),
            None => Err(Error::Parse("--k is required".into())),
        }
    }

    /// The probability vector from `--p` or `--equal`.
    fn probabilities(&self) -> Result<AnyProbVector> {
        if let Some(text) = &self.p {
            let p = AnyProbVector::parse(text)?;
            if let Some(k) = self.k {
                if k != p.k() {
                    return Err(Error::Parse(format!(
                        "--k {k} but --p has {} entries",
                        p.k()
                    )));
                }
            }
            Ok(p)
        } else if self.equal {
            Ok(AnyProbVector::Rational(ProbVector::equal(
                self.require_k()?,
            )?))
        } else {
            Err(Error::Parse("give --p or --equal".into()))
        }
    }
}

/// Run the parsed command and return the rendered output.
pub fn execute(cli: &Cli) -> Result<String> {
    let digits = usize::from(cli.precision);
    let fmt = cli.format;
    match &cli.command {
        Command::Table {
            dist,
            symbolic,
            budget,
        } => {
            let n = dist.require_n()?;
            let budget = budget.unwrap_or(DEFAULT_FIT_BUDGET);
            if *symbolic {
                if dist.p.is_some() || dist.equal {
                    return Err(Error::Parse("--symbolic takes no probabilities".into()));
                }
                let k = dist.require_k()?;
                check_budget(n, k, budget)?;
                let t = SymbolicTable::new(n, k);
                return match fmt {
                    Format::Pretty => Ok(t.to_pretty()),
                    Format::Csv => t.to_csv(),
                    Format::Json => Ok(json_text(&t.to_json())),
                };
            }
            let p = dist.probabilities()?;
            check_budget(n, p.k(), budget)?;
            match p {
                AnyProbVector::Rational(p) => render_joint(n, &p, fmt, digits),
                AnyProbVector::Floating(p) => render_joint(n, &p, fmt, digits),
            }
        }
        Command::Pmf {
            dist,
            at,
            given,
            joint,
            category,
            budget,
        } => {
            if let Some(y) = given {
                let y: Composition = y.parse()?;
                let pmf = conditional_pmf_i_given_y(&y);
                return render_marginal(y.n() as u32, y.k(), &pmf, *at, fmt, digits);
            }
            let n = dist.require_n()?;
            let p = dist.probabilities()?;
            if *joint {
                check_budget(n, p.k(), budget.unwrap_or(DEFAULT_FIT_BUDGET))?;
                return match p {
                    AnyProbVector::Rational(p) => render_joint(n, &p, fmt, digits),
                    AnyProbVector::Floating(p) => render_joint(n, &p, fmt, digits),
                };
            }
            if let Some(j) = category {
                return match p {
                    AnyProbVector::Rational(p) => render_category(n, *j, &p, fmt, digits),
                    AnyProbVector::Floating(p) => render_category(n, *j, &p, fmt, digits),
                };
            }
            match p {
                AnyProbVector::Rational(p) => {
                    let pmf = if dist.equal {
                        marginal_i_pmf_equal(n, p.k())?
                    } else {
                        marginal_i_pmf(n, &p)
                    };
                    render_marginal(n, p.k(), &pmf, *at, fmt, digits)
                }
                AnyProbVector::Floating(p) => {
                    render_marginal(n, p.k(), &marginal_i_pmf(n, &p), *at, fmt, digits)
                }
            }
        }
        Command::Moments { dist, given } => {
            if let Some(y) = given {
                return render_conditional_moments(&y.parse()?, fmt);
            }
            let n = dist.require_n()?;
            match dist.probabilities()? {
                AnyProbVector::Rational(p) => render_moments(n, &p, fmt, digits),
                AnyProbVector::Floating(p) => render_moments(n, &p, fmt, digits),
            }
        }
        Command::Simulate {
            dist,
            seed,
            reps,
            raw_out,
        } => {
            let n = dist.require_n()?;
            match dist.probabilities()? {
                AnyProbVector::Rational(p) => simulate(
                    &SimulationConfig::new(n, p, *reps, *seed)?,
                    raw_out,
                    fmt,
                    digits,
                ),
                AnyProbVector::Floating(p) => simulate(
                    &SimulationConfig::new(n, p, *reps, *seed)?,
                    raw_out,
                    fmt,
                    digits,
                ),
            }
        }
        Command::Hstat { sequence, k } => render_hstat(&OutcomeSequence::parse(sequence, *k)?, fmt),
        Command::NormalFit { n, k, budget } => {
            render_fit(*n, *k, budget.unwrap_or(DEFAULT_FIT_BUDGET), fmt, digits)
        }
        Command::Poly { y, brute, budget } => {
            let y: Composition = y.parse()?;
            let bound = budget.unwrap_or(DEFAULT_ENUMERATION_BOUND);
            render_poly(&y, brute.then_some(bound), fmt)
        }
    }
}

fn render_joint<P>(n: u32, p: &ProbVector<P>, fmt: Format, digits: usize) -> Result<String>
where
    P: Probability + JsonValue + Render,
{
    let pmf = joint_pmf(n, p);
    match fmt {
        Format::Pretty => Ok(joint_pretty(&pmf, digits)),
        Format::Csv => joint_to_csv(&pmf, digits),
        Format::Json => Ok(json_text(&joint_to_json(&pmf))),
    }
}

fn render_marginal<P>(
    n: u32,
    k: usize,
    pmf: &[P],
    at: Option<u64>,
    fmt: Format,
    digits: usize,
) -> Result<String>
where
    P: Probability + JsonValue + Render,
{
    if let Some(i) = at {
        let value = usize::try_from(i)
            .ok()
            .and_then(|i| pmf.get(i).cloned())
            .unwrap_or_else(P::zero);
        return match fmt {
            Format::Pretty => Ok(format!("{}\n", value.render(digits))),
            Format::Json => Ok(json_text(
                &json!({ "n": n, "k": k, "mode": P::MODE, "i": i, "p": value.to_json() }),
            )),
            Format::Csv => csv_string(
                &["i", "probability", "decimal"],
                [[
                    i.to_string(),
                    value.render(digits),
                    format_float(value.as_f64(), digits),
                ]],
            ),
        };
    }
    match fmt {
        Format::Pretty => {
            let body: Vec<(String, Vec<String>)> = pmf
                .iter()
                .enumerate()
                .map(|(i, p)| (i.to_string(), vec![p.render(digits)]))
                .collect();
            Ok(grid("i", &["P(I=i)".to_string()], &body))
        }
        Format::Csv => marginal_to_csv(pmf, digits),
        Format::Json => Ok(json_text(&marginal_to_json(n, k, pmf))),
    }
}

fn render_category<P>(
    n: u32,
    j: usize,
    p: &ProbVector<P>,
    fmt: Format,
    digits: usize,
) -> Result<String>
where
    P: Probability + JsonValue + Render,
{
    let table = joint_pmf_yj_i(n, j, p)?;
    match fmt {
        Format::Json => {
            let entries: Vec<Value> = table
                .iter()
                .map(|((a, i), v)| json!({ "y_j": a, "i": i, "p": v.to_json() }))
                .collect();
            Ok(json_text(
                &json!({ "n": n, "k": p.k(), "j": j, "mode": P::MODE, "entries": entries }),
            ))
        }
        Format::Csv => csv_string(
            &["y_j", "i", "probability", "decimal"],
            table.iter().map(|((a, i), v)| {
                [
                    a.to_string(),
                    i.to_string(),
                    v.render(digits),
                    format_float(v.as_f64(), digits),
                ]
            }),
        ),
        Format::Pretty => {
            let columns = (u64::from(n) * u64::from(n) / 4) as usize + 1;
            let header: Vec<String> = (0..columns).map(|i| format!("I={i}")).collect();
            let body: Vec<(String, Vec<String>)> = (0..=n)
                .map(|a| {
                    let cells = (0..columns)
                        .map(|i| {
                            table
                                .get(&(a, i as u64))
                                .cloned()
                                .unwrap_or_else(P::zero)
                                .render(digits)
                        })
                        .collect();
                    (format!("Y{j}={a}"), cells)
                })
                .collect();
            Ok(grid("", &header, &body))
        }
    }
}

fn render_moments<P>(n: u32, p: &ProbVector<P>, fmt: Format, digits: usize) -> Result<String>
where
    P: Probability + JsonValue + Render,
{
    let m = moments_of_i(n, p);
    let rows = [("E(I)", &m.e_i), ("E(I^2)", &m.e_i2), ("V(I)", &m.v_i)];
    match fmt {
        Format::Json => Ok(json_text(&moments_to_json(n, p.k(), &m))),
        Format::Csv => csv_string(
            &["statistic", "value", "decimal"],
            rows.iter().map(|(name, v)| {
                [
                    name.to_string(),
                    v.render(digits),
                    format_float(v.as_f64(), digits),
                ]
            }),
        ),
        Format::Pretty => Ok(rows
            .iter()
            .map(|(name, v)| format!("{name} = {}\n", v.render(digits)))
            .collect()),
    }
}

fn render_conditional_moments(y: &Composition, fmt: Format) -> Result<String> {
    let rows: [(&str, BigRational); 3] = [
        ("E(I|Y=y)", conditional_expectation_i(y)),
        ("sum i*inv(y;i)", moment_sum1(y)),
        ("sum i^2*inv(y;i)", moment_sum2(y)),
    ];
    match fmt {
        Format::Json => Ok(json_text(&json!({
            "y": y.parts(),
            "max_inversions": max_inversions(y),
            "conditional_mean": rows[0].1.to_json(),
            "moment_sum1": rows[1].1.to_json(),
            "moment_sum2": rows[2].1.to_json(),
        }))),
        Format::Csv => csv_string(
            &["statistic", "value"],
            rows.iter()
                .map(|(name, v)| [name.to_string(), v.to_string()]),
        ),
        Format::Pretty => Ok(rows
            .iter()
            .map(|(name, v)| format!("{name} = {v}\n"))
            .collect()),
    }
}

fn simulate<P>(
    cfg: &SimulationConfig<P>,
    raw_out: &Option<PathBuf>,
    fmt: Format,
    digits: usize,
) -> Result<String>
where
    P: Probability,
{
    if let Some(path) = raw_out {
        let mut w = BufWriter::new(File::create(path)?);
        for r in cfg.results() {
            writeln!(w, "{}", r.sequence)?;
        }
        w.flush()?;
    }
    let report = monte_carlo_joint(cfg);
    render_simulation(&report, fmt, digits)
}

fn render_simulation(report: &MonteCarloReport, fmt: Format, digits: usize) -> Result<String> {
    let s = &report.summary;
    let f = |v: f64| format_float(v, digits);
    let opt = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), f);
    match fmt {
        Format::Json => {
            let cells: Vec<Value> = report
                .tallies
                .iter()
                .map(|((y, i), c)| {
                    json!({ "y": y.parts(), "i": i, "count": c, "frequency": report.frequency(y, *i) })
                })
                .collect();
            Ok(json_text(&json!({
                "n": report.n,
                "k": report.k,
                "seed": report.seed,
                "replications": report.replications,
                "summary": s,
                "tallies": cells,
            })))
        }
        Format::Csv => csv_string(
            &["y", "i", "count", "frequency"],
            report.tallies.iter().map(|((y, i), c)| {
                [
                    y.to_string(),
                    i.to_string(),
                    c.to_string(),
                    f(report.frequency(y, *i)),
                ]
            }),
        ),
        Format::Pretty => {
            let mut out = format!(
                "n = {}, k = {}, seed = {}, replications = {}\n\
                 mean I = {} (se {})\nvar I = {}\n\
                 mean H = {} (se {}) over {} replications; H undefined in {}\n\n",
                report.n,
                report.k,
                report.seed,
                report.replications,
                f(s.mean_i),
                f(s.mean_i_stderr),
                f(s.var_i),
                opt(s.mean_h),
                opt(s.mean_h_stderr),
                s.h_defined,
                s.h_undefined,
            );
            let body: Vec<(String, Vec<String>)> = report
                .tallies
                .iter()
                .map(|((y, i), c)| {
                    (
                        y.to_string(),
                        vec![i.to_string(), c.to_string(), f(report.frequency(y, *i))],
                    )
                })
                .collect();
            out.push_str(&grid(
                "y",
                &[
                    "I".to_string(),
                    "count".to_string(),
                    "frequency".to_string(),
                ],
                &body,
            ));
            Ok(out)
        }
    }
}

fn render_hstat(seq: &OutcomeSequence, fmt: Format) -> Result<String> {
    let counts = seq.counts();
    let inversions = count_inversions(seq);
    let max = max_inversions(&counts);
    let h = h_statistic(seq);
    let h_text = h
        .as_ref()
        .map_or_else(|| "undefined".to_string(), ToString::to_string);
    match fmt {
        Format::Json => Ok(json_text(&json!({
            "sequence": seq.to_string(),
            "counts": counts.parts(),
            "inversions": inversions,
            "max_inversions": max,
            "h": optional_rational_json(h.as_ref()),
        }))),
        Format::Csv => csv_string(
            &["counts", "inversions", "max_inversions", "h"],
            [[
                counts.to_string(),
                inversions.to_string(),
                max.to_string(),
                h_text,
            ]],
        ),
        Format::Pretty => Ok(format!(
            "counts = {counts}\nI = {inversions}\nmax I = {max}\nH = {h_text}\n"
        )),
    }
}

fn render_fit(n: u32, k: usize, budget: u64, fmt: Format, digits: usize) -> Result<String> {
    let report = normal_fit_report(n, k, budget)?;
    let params = normal_params_equal(n, k);
    let f = |v: f64| format_float(v, digits);
    let opt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), f);
    match fmt {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["mu_exact"] = params.mu.to_json();
            v["sigma2_exact"] = params.sigma2.to_json();
            Ok(json_text(&v))
        }
        Format::Csv => csv_string(
            &["i", "exact", "normal"],
            report
                .lattice
                .iter()
                .map(|p| [p.i.to_string(), f(p.exact), f(p.normal)]),
        ),
        Format::Pretty => Ok(format!(
            "n = {n}, k = {k}\nmu = {} ({})\nsigma^2 = {} ({})\n\
             exact mean matches mu: {}\nexact variance matches sigma^2: {}\n\
             degenerate: {}\ntotal variation = {}\nkolmogorov = {}\n\
             skewness = {}\nexcess kurtosis = {}\nnote: {}\n",
            params.mu,
            f(report.mu),
            params.sigma2,
            f(report.sigma2),
            report.mean_matches,
            report.variance_matches,
            report.degenerate,
            opt(report.total_variation),
            opt(report.kolmogorov),
            opt(report.skewness),
            opt(report.excess_kurtosis),
            report.note,
        )),
    }
}

fn render_poly(y: &Composition, brute_bound: Option<u64>, fmt: Format) -> Result<String> {
    let poly = gaussian_multinomial(y);
    let brute_agrees = brute_bound
        .map(|bound| brute_force_inv_distribution(y, bound).map(|b| b == poly))
        .transpose()?;
    match fmt {
        Format::Json => {
            let coeffs: Vec<String> = poly.coeffs().iter().map(ToString::to_string).collect();
            let mut v = json!({ "y": y.parts(), "degree": max_inversions(y), "coeffs": coeffs });
            if let Some(ok) = brute_agrees {
                v["brute_force_agrees"] = json!(ok);
            }
            Ok(json_text(&v))
        }
        Format::Csv => csv_string(
            &["i", "count"],
            poly.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| [i.to_string(), c.to_string()]),
        ),
        Format::Pretty => {
            let mut out = format!("{poly}\n");
            if let Some(ok) = brute_agrees {
                out.push_str(&format!("brute-force enumeration agrees: {ok}\n"));
            }
            Ok(out)
        }
    }
}
