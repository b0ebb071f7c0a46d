use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use klein11_core::algebra::ChartLabel;
use klein11_core::certificate::Certificate;
use klein11_core::suites::{self, Complex64, Form, Identity, RunParams};

#[derive(Parser, Debug)]
#[command(name = "klein11", version, about = "Exact certificates for the degree-11 transformation of elliptic functions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Branch series truncation order
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(i64).range(12..=400))]
    order: i64,
    /// Truncation order in u = q^(1/132)
    #[arg(long, global = true, default_value_t = 1200, value_parser = clap::value_parser!(i64).range(1..=20000))]
    qorder: i64,
    /// Flip the sign of √−11 (second system)
    #[arg(long, global = true)]
    conjugate: bool,
    /// Write the certificate to this file
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Census of 11-sheeted covers
    Covers {
        #[command(subcommand)]
        what: CoversCmd,
    },
    /// The group of 660 collineations
    Group {
        #[command(subcommand)]
        what: GroupCmd,
    },
    /// Branch charts, degree and genus of the curve
    Curve {
        #[command(subcommand)]
        what: CurveCmd,
    },
    /// Degree-11 resolvents
    Resolvent {
        #[command(subcommand)]
        what: ResolventCmd,
    },
    /// q-series identities
    Qmod {
        #[command(subcommand)]
        what: QmodCmd,
    },
    /// Every suite
    All,
}

#[derive(Subcommand, Debug)]
enum CoversCmd {
    Census,
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    Verify,
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    Verify,
}

#[derive(Subcommand, Debug)]
enum ResolventCmd {
    Derive {
        #[arg(long, value_enum)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = ChartArg::I)]
        chart: ChartArg,
    },
}

#[derive(Subcommand, Debug)]
enum QmodCmd {
    Verify {
        #[arg(long, value_parser = parse_identity)]
        identity: Identity,
    },
    Spotcheck {
        /// Point of the upper half plane, as a+bi
        #[arg(long, value_parser = parse_omega, allow_hyphen_values = true)]
        omega: Complex64,
        #[arg(long, default_value_t = suites::SPOT_TOLERANCE)]
        tolerance: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Z,
    Xi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "verbatim")]
enum ChartArg {
    I,
    IV,
    V,
    IX,
    III,
}

impl From<ChartArg> for ChartLabel {
    fn from(c: ChartArg) -> Self {
        match c {
            ChartArg::I => ChartLabel::I,
            ChartArg::IV => ChartLabel::IV,
            ChartArg::V => ChartLabel::V,
            ChartArg::IX => ChartLabel::IX,
            ChartArg::III => ChartLabel::III,
        }
    }
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    Identity::parse(s).ok_or_else(|| format!("unknown identity {s:?}; expected one of 28, 29, 33, 36, hik, J"))
}

fn parse_omega(s: &str) -> Result<Complex64, String> {
    suites::parse_omega(s).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Certificate {
    let p = RunParams { order: cli.global.order, qorder: cli.global.qorder, conjugate: cli.global.conjugate };
    match &cli.command {
        Command::Covers { what: CoversCmd::Census } => suites::covers_census(),
        Command::Group { what: GroupCmd::Verify } => suites::group_verify(&p),
        Command::Curve { what: CurveCmd::Verify } => suites::curve_verify(&p),
        Command::Resolvent { what: ResolventCmd::Derive { form, chart } } => {
            let form = match form {
                FormArg::Z => Form::Z,
                FormArg::Xi => Form::Xi,
            };
            suites::resolvent_derive(&p, form, (*chart).into())
        }
        Command::Qmod { what: QmodCmd::Verify { identity } } => suites::qmod_verify(&p, *identity),
        Command::Qmod { what: QmodCmd::Spotcheck { omega, tolerance } } => {
            suites::qmod_spotcheck(&p, *omega, *tolerance)
        }
        Command::All => suites::all(&p),
    }
}

fn report(out: &mut impl Write, c: &Certificate) -> io::Result<()> {
    write!(out, "{}", c.summary())?;
    if let Some(s) = c.witnesses.get("summary").and_then(|v| v.as_str()) {
        writeln!(out, "{s}")?;
    }
    match c.witnesses.get("coefficients") {
        Some(serde_json::Value::Object(m)) => {
            for (k, v) in m {
                writeln!(out, "{k} = {}", texts(v))?;
            }
        }
        Some(other) => writeln!(out, "coefficients = {}", texts(other))?,
        None => {}
    }
    Ok(())
}

fn texts(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Array(xs) => xs.iter().map(texts).collect::<Vec<_>>().join(", "),
        serde_json::Value::Object(m) => m.get("text").and_then(|t| t.as_str()).unwrap_or("?").to_string(),
        other => other.to_string(),
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
    let cert = run(&cli);
    // a closed pipe on stdout is not a failed check
    let _ = report(&mut io::stdout().lock(), &cert);
    if let Some(path) = &cli.global.json {
        if let Err(e) = std::fs::write(path, cert.to_json() + "\n") {
            eprintln!("klein11: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cert.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
