use clap::{Args, Parser, Subcommand};
use persist_lab::commands::{self, DistributionArgs, EigensArgs, SimulateArgs};
use persist_lab::manifest::RunManifest;
use persist_lab::output::emit;
use persist_lab::verify::{run_suites, Suite};
use persist_lab::{usage, LabError, LabResult};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;

/// Persistence probabilities of the zero-temperature Glauber Ising chain.
#[derive(Parser, Debug)]
#[command(name = "persist", version)]
struct Cli {
    /// Worker threads for sweeps and replicas (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Output file; a `<file>.manifest.json` sidecar is written next to it.
    /// Without it the result goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// CSV of P0+, P0-, P0 and D+- over an ell grid.
    Distribution {
        #[arg(long, allow_hyphen_values = true)]
        m: f64,
        #[arg(long, default_value_t = 10.0)]
        ell_max: f64,
        #[arg(long, default_value_t = 0.5)]
        ell_step: f64,
        /// nystrom, ode, asymptotic or auto.
        #[arg(long, default_value = "auto")]
        method: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// JSON with kappa(m), the Potts exponent, phi and the slope A.
    Exponent {
        #[arg(long, allow_hyphen_values = true)]
        m: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// JSON dump of the large-ell constants A, B, C and the xi = 1 constants.
    Asymptotics {
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        /// Magnetization for the off-critical constants (omit for xi = 1 only).
        #[arg(long, allow_hyphen_values = true)]
        m: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// CSV of the largest Nystrom eigenvalues of xi K.
    Eigens {
        /// Kernel exponent; ignored with --markov.
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        /// Use e^{-|s|}/2 instead of the theta kernel.
        #[arg(long)]
        markov: bool,
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
        #[arg(long)]
        ell: f64,
        #[arg(long, default_value_t = 100)]
        nodes: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// none, even or odd (parity kernels act on [0, ell/2]).
        #[arg(long, default_value = "none")]
        parity: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Glauber Monte Carlo persistence, CSV of (t1, t2, p+, p-, stderr, n).
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        m: f64,
        #[arg(long, default_value_t = 100.0)]
        t1: f64,
        /// Comma-separated t2/t1 values.
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        ratios: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        length: usize,
        #[arg(long, default_value_t = 32)]
        replicas: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// ring or half-line.
        #[arg(long, default_value = "ring")]
        topology: String,
        /// Repeat at t1, 2 t1, 4 t1, ... to watch the exponent converge.
        #[arg(long, default_value_t = 1)]
        t1_doublings: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run acceptance suites and print a pass/fail table.
    Verify {
        /// oracle, ode_vs_nystrom, painleve, asymptotics, montecarlo or all.
        suite: String,
        /// Suites to leave out (comma-separated).
        #[arg(long, value_delimiter = ',')]
        skip: Vec<String>,
    },
}

fn write_out(
    text: &str,
    out: &OutArg,
    command: &str,
    params: Value,
    seeds: Vec<u64>,
) -> LabResult<()> {
    emit(text, out.out.as_deref())?;
    if let Some(path) = &out.out {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        let argv = std::env::args().collect();
        RunManifest::new(argv, command, params, seeds, path).write()?;
    }
    Ok(())
}

fn json_text(v: &Value) -> LabResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| LabError::Compute(e.into()))?;
    s.push('\n');
    Ok(s)
}

fn parse_suite(s: &str) -> LabResult<Suite> {
    Suite::parse(s).ok_or_else(|| LabError::Usage(format!("unknown suite {s:?}")))
}

fn run(cli: Cli) -> LabResult<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return usage("--threads must be >= 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| LabError::Compute(e.into()))?;
    }
    match cli.cmd {
        Cmd::Distribution {
            m,
            ell_max,
            ell_step,
            method,
            out,
        } => {
            let a = DistributionArgs {
                m,
                ell_max,
                ell_step,
                method: commands::parse_method(&method)?,
            };
            let csv = commands::distribution_table(&a)?.to_csv_string()?;
            let p = json!({"m": m, "ell_max": ell_max, "ell_step": ell_step, "method": method});
            write_out(&csv, &out, "distribution", p, vec![])
        }
        Cmd::Exponent { m, q, out } => {
            let v = commands::exponent_report(m, q)?;
            write_out(
                &json_text(&v)?,
                &out,
                "exponent",
                json!({"m": m, "q": q}),
                vec![],
            )
        }
        Cmd::Asymptotics { theta, m, out } => {
            let v = commands::asymptotics_report(theta, m)?;
            let p = json!({"theta": theta, "m": m});
            write_out(&json_text(&v)?, &out, "asymptotics", p, vec![])
        }
        Cmd::Eigens {
            theta,
            markov,
            xi,
            ell,
            nodes,
            count,
            parity,
            out,
        } => {
            let a = EigensArgs {
                theta: (!markov).then_some(theta),
                xi,
                ell,
                nodes,
                count,
                parity: commands::parse_parity(&parity)?,
            };
            let csv = commands::eigens_table(&a)?.to_csv_string()?;
            let p = json!({"theta": a.theta, "xi": xi, "ell": ell, "nodes": nodes,
                           "count": count, "parity": parity});
            write_out(&csv, &out, "eigens", p, vec![])
        }
        Cmd::Simulate {
            m,
            t1,
            ratios,
            length,
            replicas,
            seed,
            topology,
            t1_doublings,
            out,
        } => {
            let a = SimulateArgs {
                m,
                t1,
                ratios: ratios.clone(),
                length,
                replicas,
                seed,
                topology: commands::parse_topology(&topology)?,
                t1_doublings,
            };
            let csv = commands::simulate_table(&a)?.to_csv_string()?;
            let p = json!({"m": m, "t1": t1, "ratios": ratios, "length": length,
                           "replicas": replicas, "topology": topology,
                           "t1_doublings": t1_doublings});
            write_out(&csv, &out, "simulate", p, vec![seed])
        }
        Cmd::Verify { suite, skip } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![parse_suite(&suite)?]
            };
            let skip = skip
                .iter()
                .map(|s| parse_suite(s))
                .collect::<LabResult<Vec<_>>>()?;
            let outcomes = run_suites(&suites, &skip);
            for o in &outcomes {
                print!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            println!(
                "{} of {} criteria passed",
                outcomes.len() - failed,
                outcomes.len()
            );
            if failed > 0 {
                return Err(LabError::Compute(anyhow::anyhow!(
                    "{failed} criteria failed"
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("persist: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
