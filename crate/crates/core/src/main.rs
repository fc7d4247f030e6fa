use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qtrace::bracket::c_table;
use qtrace::fock::{reference_eta_quotient, trace_gh, Twist};
use qtrace::modforms::{
    eisenstein_e, eta_quotient, eta_series, q_series_q, EtaQuotientSpec, RootOfUnity,
};
use qtrace::series::rational::parse_rational;
use qtrace::series::CycloScalar;
use qtrace::sl2::SL2Matrix;
use qtrace::suites::{criterion_samples, run_suite, trace_transform};
use qtrace::{Error, VerificationReport};

#[derive(Parser)]
#[command(
    name = "qtrace",
    version,
    about = "Exact q-series and trace-function verifier"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Eisenstein,
    #[value(name = "Q")]
    Q,
    Eta,
    EtaQuotient,
    BracketC,
    Trace,
}

#[derive(Subcommand)]
enum Command {
    /// Print the expansion of a series or coefficient table.
    Expand {
        #[arg(long, value_enum)]
        object: Object,
        #[arg(long)]
        k: Option<u32>,
        /// Root of unity as j/M.
        #[arg(long)]
        mu: Option<RootOfUnity>,
        #[arg(long)]
        lambda: Option<RootOfUnity>,
        #[arg(long)]
        x: Option<Twist>,
        #[arg(long)]
        y: Option<Twist>,
        #[arg(long)]
        l: Option<u32>,
        /// η-quotient factors as t:r pairs, e.g. "2:4,1:-4".
        #[arg(long, allow_hyphen_values = true)]
        factors: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<i64>,
        #[arg(long)]
        imax: Option<u32>,
        #[arg(long, default_value_t = 10)]
        order: u64,
    },
    /// Run a named verification suite.
    Verify { suite: String },
    /// Check a trace-function transformation law on sample points.
    Transform {
        #[arg(long)]
        x: Twist,
        #[arg(long)]
        y: Twist,
        /// Matrix entries a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        gamma: SL2Matrix,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 0.0)]
        weight: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Precondition(format!("--{name} is required for this object")))
}

fn parse_factors(s: &str) -> Result<EtaQuotientSpec, Error> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let (t, r) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected t:r, got {part:?}")))?;
        let r: i64 = r
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {r:?}")))?;
        out.push((parse_rational(t.trim())?, r));
    }
    Ok(EtaQuotientSpec::new(out, CycloScalar::one()))
}

fn print_report(r: &VerificationReport, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap()),
        Format::Text => {
            let status = if r.pass { "PASS" } else { "FAIL" };
            println!("{status}  {}", r.label);
            if let Some(c) = r.constant {
                println!("constant  {} {:+}i", c.re, c.im);
            }
            if let Some(res) = r.residual {
                println!("residual  {res:.3e}");
            }
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let format = cli.format;
    match cli.command {
        Command::Expand {
            object,
            k,
            mu,
            lambda,
            x,
            y,
            l,
            factors,
            p,
            imax,
            order,
        } => {
            let series = match object {
                Object::Eisenstein => eisenstein_e(need(k, "k")?, order)?,
                Object::Q => q_series_q(
                    need(k, "k")?,
                    need(mu, "mu")?,
                    need(lambda, "lambda")?,
                    order,
                )?,
                Object::Eta => eta_series(order),
                Object::EtaQuotient => {
                    let spec = match factors {
                        Some(f) => parse_factors(&f)?,
                        None => {
                            reference_eta_quotient(need(x, "x")?, need(y, "y")?, need(l, "l")?)?
                        }
                    };
                    eta_quotient(&spec, order)?
                }
                Object::Trace => trace_gh(need(x, "x")?, need(y, "y")?, need(l, "l")?, order)?,
                Object::BracketC => {
                    let t = c_table(need(p, "p")?, need(imax, "imax")?);
                    match format {
                        Format::Json => {
                            println!("{}", serde_json::to_string_pretty(&t.to_json()).unwrap())
                        }
                        Format::Text => print!("{t}"),
                    }
                    return Ok(Outcome::Pass);
                }
            };
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&series.to_json()).unwrap()
                ),
                Format::Text => println!("{series}"),
            }
            Ok(Outcome::Pass)
        }
        Command::Verify { suite } => {
            let r = run_suite(&suite)?;
            match format {
                Format::Json => {
                    eprint!("{}", r.summary_table());
                    println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
                }
                Format::Text => print!("{}", r.summary_table()),
            }
            Ok(if r.pass { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Transform {
            x,
            y,
            gamma,
            l,
            weight,
            tol,
        } => {
            let r = trace_transform(x, y, l, &gamma, weight, &criterion_samples(), tol)?;
            print_report(&r, format);
            Ok(if r.pass { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
