//! `qcp`: run, certify, and bound-check two-party quantum communication
//! protocols, and generate the built-in demonstrations.
//!
//! Exit codes: 0 success, 2 input error, 3 resource cap exceeded,
//! 4 invariant violation.

mod demos;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qcp_core::bits::BitString;
use qcp_core::certificate::certify_protocol;
use qcp_core::coding::bound_rhs;
use qcp_core::dsl;
use qcp_core::exec::maybe_par_map;
use qcp_core::model::{output_distribution, run_protocol, success_probability, Protocol};
use qcp_core::tol;

use report::{DistEntry, MessageRecord, Report};

const DEFAULT_CAP: usize = qcp_core::linalg::DEFAULT_QUBIT_CAP;
const CAP_ENV: &str = "QCP_CAP_QUBITS";

#[derive(Parser)]
#[command(
    name = "qcp",
    version,
    about = "Simulate and verify two-party quantum communication protocols with prior entanglement"
)]
struct Cli {
    /// Seed recorded in reports and used by seeded constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Maximum live qubits (default 12; env QCP_CAP_QUBITS overrides).
    #[arg(long = "cap-qubits", global = true)]
    cap_qubits: Option<usize>,

    /// Emit JSON (default for run/certify/bound).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV (default for demos).
    #[arg(long, global = true)]
    csv: bool,

    /// Write the payload to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Rayon thread count for per-message evaluation (results are
    /// schedule-independent).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a protocol file; with --input, print that run's output
    /// distribution.
    Run {
        file: PathBuf,
        /// Message bits, e.g. "10".
        #[arg(long)]
        input: Option<String>,
    },
    /// Maintain the state-form certificate round by round and compare it
    /// against the executor for every message.
    Certify { file: PathBuf },
    /// Compare the exact success probability against 2^{2m_A}/2^n.
    Bound { file: PathBuf },
    /// Built-in constructions: superdense, ip-classical, ip-quantum,
    /// ip-reduction.
    Demo {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        m: Option<usize>,
    },
}

/// Failure carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap { used: usize, cap: usize },
    Invariant(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn cap(used: usize, cap: usize) -> Self {
        CliError::Cap { used, cap }
    }

    pub fn from_core(err: qcp_core::Error) -> Self {
        match err {
            qcp_core::Error::CapExceeded { used, cap } => CliError::Cap { used, cap },
            other => CliError::Input(other.to_string()),
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap { .. } => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Cap { used, cap } => {
                write!(f, "qubit cap exceeded: {used} live qubits, cap {cap}")
            }
            CliError::Invariant(msg) => write!(f, "invariant violation: {msg}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore re-initialization: tests drive main-like flows twice.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(payload) => {
            if let Err(err) = emit(&cli, &payload) {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}

fn emit(cli: &Cli, payload: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, payload),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn cap_qubits(cli: &Cli) -> Result<usize, CliError> {
    if let Some(cap) = cli.cap_qubits {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(text) => text
            .parse()
            .map_err(|_| CliError::input(format!("invalid {CAP_ENV} value \"{text}\""))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn load_protocol(cli: &Cli, file: &PathBuf) -> Result<Protocol, CliError> {
    let text = fs::read_to_string(file)
        .map_err(|err| CliError::input(format!("{}: {err}", file.display())))?;
    let protocol = dsl::load(&text).map_err(|err| CliError::input(err.to_string()))?;
    let cap = cap_qubits(cli)?;
    if protocol.total_qubits() > cap {
        return Err(CliError::cap(protocol.total_qubits(), cap));
    }
    Ok(protocol)
}

fn base_report(command: &str, seed: u64, p: &Protocol) -> Report {
    let mut r = Report::new(command, seed);
    r.protocol_name = p.name.clone();
    r.n = p.n_message;
    r.e = p.e;
    r.m_a = p.m_a();
    r.m_b = p.m_b();
    r.bound_rhs = Some(bound_rhs(p.n_message, p.m_a()));
    r
}

#[derive(Serialize)]
struct RunReport {
    #[serde(flatten)]
    report: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distribution: Option<Vec<DistEntry>>,
}

#[derive(Serialize)]
struct CertifyReport {
    #[serde(flatten)]
    report: Report,
    messages: Vec<MessageRecord>,
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Run { file, input } => cmd_run(cli, file, input.as_deref()),
        Command::Certify { file } => cmd_certify(cli, file),
        Command::Bound { file } => cmd_bound(cli, file),
        Command::Demo { name, n, t, eps, m } => cmd_demo(cli, name, *n, *t, *eps, *m),
    }
}

fn fill_success(report: &mut Report, p: &Protocol) -> Result<(), CliError> {
    if p.outputs.len() == p.n_message {
        let success = success_probability(p).map_err(CliError::from_core)?;
        report.success_exact = Some(success);
        report.margin = report.bound_rhs.map(|rhs| rhs - success);
    }
    Ok(())
}

fn cmd_run(cli: &Cli, file: &PathBuf, input: Option<&str>) -> Result<String, CliError> {
    let p = load_protocol(cli, file)?;
    let mut report = base_report("run", cli.seed, &p);
    fill_success(&mut report, &p)?;

    let mut distribution = None;
    if let Some(bits) = input {
        let x: BitString = bits
            .parse()
            .map_err(|err: qcp_core::Error| CliError::input(err.to_string()))?;
        if x.len() != p.n_message {
            return Err(CliError::input(format!(
                "input \"{bits}\" has {} bits, protocol expects {}",
                x.len(),
                p.n_message
            )));
        }
        let state = run_protocol(&p, &x).map_err(CliError::from_core)?;
        let dist = output_distribution(&state, &p.outputs).map_err(CliError::from_core)?;
        let width = p.outputs.len();
        distribution = Some(
            dist.iter()
                .enumerate()
                .map(|(i, &probability)| DistEntry {
                    output: BitString::from_index(i, width).to_string(),
                    probability,
                })
                .collect::<Vec<_>>(),
        );
    }

    if cli.csv {
        let mut out = format!("{}\n{}\n", Report::csv_header(), report.csv_row());
        if let Some(dist) = &distribution {
            out.push_str("output,probability\n");
            for e in dist {
                out.push_str(&format!("{},{}\n", e.output, e.probability));
            }
        }
        Ok(out)
    } else {
        let wrapped = RunReport {
            report,
            input: input.map(str::to_string),
            distribution,
        };
        Ok(to_json(&wrapped))
    }
}

fn cmd_certify(cli: &Cli, file: &PathBuf) -> Result<String, CliError> {
    let p = load_protocol(cli, file)?;
    let n = p.n_message;
    let outcomes = maybe_par_map((0..1usize << n).collect::<Vec<_>>(), |xv| {
        let x = BitString::from_index(xv, n);
        certify_protocol(&p, &x).map(|cert| MessageRecord {
            input: x.to_string(),
            trace_identity_residual: cert.trace_residual(),
            reconstruction_residual: cert.reconstruction_residual(),
        })
    });
    let mut messages = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        messages.push(outcome.map_err(CliError::from_core)?);
    }

    let mut report = base_report("certify", cli.seed, &p);
    report.trace_identity_residual = messages
        .iter()
        .map(|m| m.trace_identity_residual)
        .fold(0.0, f64::max);
    report.reconstruction_residual = messages
        .iter()
        .map(|m| m.reconstruction_residual)
        .fold(0.0, f64::max);

    let ok = report.trace_identity_residual <= tol::CERT_RESIDUAL
        && report.reconstruction_residual <= tol::CERT_RESIDUAL;
    let payload = if cli.csv {
        format!("{}\n{}\n", Report::csv_header(), report.csv_row())
    } else {
        to_json(&CertifyReport { report, messages })
    };
    if !ok {
        // Print the report before signalling: the numbers are the point.
        print!("{payload}");
        return Err(CliError::Invariant(
            "certificate residual exceeds 1e-8".into(),
        ));
    }
    Ok(payload)
}

fn cmd_bound(cli: &Cli, file: &PathBuf) -> Result<String, CliError> {
    let p = load_protocol(cli, file)?;
    if p.n_message == 0 {
        return Err(CliError::input("bound needs a protocol with n ≥ 1"));
    }
    if p.outputs.len() != p.n_message {
        return Err(CliError::input(format!(
            "bound needs {} output qubits, protocol declares {}",
            p.n_message,
            p.outputs.len()
        )));
    }
    let mut report = base_report("bound", cli.seed, &p);
    fill_success(&mut report, &p)?;

    let payload = if cli.csv {
        format!("{}\n{}\n", Report::csv_header(), report.csv_row())
    } else {
        to_json(&report)
    };
    if report.margin.unwrap_or(f64::NEG_INFINITY) < -tol::BOUND_SLACK {
        print!("{payload}");
        return Err(CliError::Invariant(format!(
            "success exceeds the bound by {:.3e}",
            -report.margin.unwrap_or(0.0)
        )));
    }
    Ok(payload)
}

fn cmd_demo(
    cli: &Cli,
    name: &str,
    n: Option<usize>,
    t: Option<usize>,
    eps: Option<f64>,
    m: Option<usize>,
) -> Result<String, CliError> {
    let output = match name {
        "superdense" => demos::superdense(m)?,
        "ip-classical" => demos::ip_classical(n.unwrap_or(4), t, eps)?,
        "ip-quantum" => demos::ip_quantum(n.unwrap_or(4), t, eps)?,
        "ip-reduction" => demos::ip_reduction(n.unwrap_or(2), eps.unwrap_or(0.0))?,
        other => {
            return Err(CliError::input(format!(
                "unknown demo \"{other}\" (expected superdense, ip-classical, ip-quantum, ip-reduction)"
            )))
        }
    };
    if cli.json {
        Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&output.json).expect("serializable rows")
        ))
    } else {
        let mut payload = String::from(output.header);
        payload.push('\n');
        for row in &output.rows {
            payload.push_str(row);
            payload.push('\n');
        }
        Ok(payload)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("serializable report")
    )
}
