//! Subcommand bodies, independent of argument parsing.
//!
//! Each returns the output text (CSV or JSON) so the binary, the tests and
//! the verify suites share one code path.

use crate::output::{fmt_f64, Table};
use crate::{usage, LabResult};
use persist_core::asymptotics::{
    a_const, b_kac_akhiezer, critical_b_barnes, critical_b_integral, critical_c, critical_c_quoted,
    critical_constants, dhp_exponent, half_space_rate, kappa, AsymptoticConstants,
};
use persist_core::fredholm::eigenvalues;
use persist_core::glauber_mc::{
    aggregate, fit_exponent, ratio_grid, run_replica, PersistenceEstimate, ReplicaCounts,
    SimConfig, Topology,
};
use persist_core::kernels::{phi_of_xi, KernelSpec, Parity};
use persist_core::persistence::{distribution, Method, PersistenceQuery};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Column order of `distribution`.
pub const DISTRIBUTION_HEADER: [&str; 7] = [
    "ell", "p_plus", "p_minus", "p_total", "d_plus", "d_minus", "kappa",
];

/// Column order of `simulate`.
pub const SIMULATE_HEADER: [&str; 9] = [
    "t1",
    "t2",
    "p_plus_hat",
    "p_minus_hat",
    "stderr_plus",
    "stderr_minus",
    "n",
    "exponent",
    "exponent_stderr",
];

/// Parse a backend name.
pub fn parse_method(s: &str) -> LabResult<Method> {
    Ok(match s {
        "nystrom" => Method::Nystrom,
        "ode" => Method::Ode,
        "asymptotic" => Method::Asymptotic,
        "auto" => Method::Auto,
        _ => return usage(format!("unknown method {s:?}")),
    })
}

fn check_m(m: f64) -> LabResult<()> {
    if !(-1.0..=1.0).contains(&m) {
        return usage(format!("--m must lie in [-1, 1], got {m}"));
    }
    Ok(())
}

/// ℓ = 0, step, 2·step, … up to `ell_max` (inclusive within 1e−9 of a step).
pub fn ell_grid(ell_max: f64, ell_step: f64) -> LabResult<Vec<f64>> {
    if !(ell_max >= 0.0) || !ell_max.is_finite() {
        return usage(format!("--ell-max must be >= 0, got {ell_max}"));
    }
    if !(ell_step > 0.0) || !ell_step.is_finite() {
        return usage(format!("--ell-step must be > 0, got {ell_step}"));
    }
    let n = (ell_max / ell_step + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return usage("ell grid has more than a million points");
    }
    Ok((0..=n).map(|i| i as f64 * ell_step).collect())
}

/// Persistence distribution parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionArgs {
    /// Magnetization.
    pub m: f64,
    /// Largest ℓ.
    pub ell_max: f64,
    /// ℓ spacing.
    pub ell_step: f64,
    /// Backend.
    pub method: Method,
}

/// One row per ℓ, computed in parallel and emitted in grid order.
pub fn distribution_table(a: &DistributionArgs) -> LabResult<Table> {
    check_m(a.m)?;
    let ells = ell_grid(a.ell_max, a.ell_step)?;
    let rows = ells
        .par_iter()
        .map(|&ell| distribution(&PersistenceQuery::new(a.m, ell, a.method)).map(|r| (ell, r)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&DISTRIBUTION_HEADER);
    for (ell, r) in rows {
        t.push_f64(&[
            ell, r.p_plus, r.p_minus, r.p_total, r.d_plus, r.d_minus, r.kappa,
        ]);
    }
    Ok(t)
}

/// Exponent report for a magnetization or a Potts q (exactly one given).
///
/// `dhp_theta_hat` is θ̂(q) at q = 2/(1 + m) and `null` at m = −1. It equals
/// κ(m) only for m ≥ 0.
pub fn exponent_report(m: Option<f64>, q: Option<f64>) -> LabResult<Value> {
    let (m, q) = match (m, q) {
        (Some(m), None) => {
            check_m(m)?;
            (
                m,
                if m > -1.0 {
                    Some(2.0 / (1.0 + m))
                } else {
                    None
                },
            )
        }
        (None, Some(q)) => {
            if !(q >= 1.0) || !q.is_finite() {
                return usage(format!("--q must be >= 1, got {q}"));
            }
            (2.0 / q - 1.0, Some(q))
        }
        _ => return usage("give exactly one of --m and --q"),
    };
    let theta = 0.5;
    let phi = phi_of_xi(1.0 - m * m, theta)?;
    let theta_hat = match q {
        Some(q) => Some(dhp_exponent(q)?),
        None => None,
    };
    Ok(json!({
        "m": m,
        "q": q,
        "kappa": kappa(m)?,
        "dhp_theta_hat": theta_hat,
        "half_space_rate": half_space_rate(m)?,
        "phi": phi,
        "A": a_const(theta, phi),
    }))
}

/// Off-critical constants at (θ, m) and the ξ = 1 constants at θ.
pub fn asymptotics_report(theta: f64, m: Option<f64>) -> LabResult<Value> {
    if !(0.0..1.0).contains(&theta) {
        return usage(format!("--theta must lie in [0, 1), got {theta}"));
    }
    let cc = critical_constants(theta)?;
    let critical = json!({
        "a": cc.a,
        "b": cc.b,
        "c": cc.c,
        "b_integral": critical_b_integral(theta)?,
        "b_barnes": critical_b_barnes(theta)?,
        "c_digamma": critical_c(theta)?,
        "c_quoted": critical_c_quoted(theta)?,
    });
    let off = match m {
        None => Value::Null,
        Some(m) => {
            check_m(m)?;
            let xi = 1.0 - m * m;
            if xi >= 1.0 {
                Value::Null
            } else {
                let phi = phi_of_xi(xi, theta)?;
                let k = AsymptoticConstants::new(theta, phi)?;
                json!({
                    "m": m,
                    "xi": xi,
                    "phi": phi,
                    "A": k.a,
                    "B": k.b,
                    "B_kac_akhiezer": b_kac_akhiezer(theta, phi)?,
                    "C": k.c,
                    "decay": k.decay,
                })
            }
        }
    };
    Ok(json!({ "theta": theta, "critical": critical, "off_critical": off }))
}

/// Spectrum request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigensArgs {
    /// θ, or `None` for the Markov kernel e^{−|s|}/2.
    pub theta: Option<f64>,
    /// Thinning.
    pub xi: f64,
    /// Interval length ℓ; parity kernels act on [0, ℓ/2].
    pub ell: f64,
    /// Quadrature nodes.
    pub nodes: usize,
    /// Eigenvalues to report.
    pub count: usize,
    /// Kernel part.
    pub parity: Parity,
}

/// Parse a parity name.
pub fn parse_parity(s: &str) -> LabResult<Parity> {
    Ok(match s {
        "none" => Parity::None,
        "even" => Parity::Even,
        "odd" => Parity::Odd,
        _ => return usage(format!("unknown parity {s:?}")),
    })
}

/// Largest eigenvalues λ of the Nyström matrix of ξK, with 1 − λ.
pub fn eigens_table(a: &EigensArgs) -> LabResult<Table> {
    if !(a.ell >= 0.0) || !a.ell.is_finite() {
        return usage(format!("--ell must be >= 0, got {}", a.ell));
    }
    let spec = match a.theta {
        Some(th) => KernelSpec::theta(th, a.xi, a.parity)?,
        None => KernelSpec::markov(a.xi, a.parity)?,
    };
    let b = if a.parity == Parity::None {
        a.ell
    } else {
        0.5 * a.ell
    };
    let sp = eigenvalues(&spec, 0.0, b, a.nodes, a.count)?;
    let mut t = Table::new(&["index", "eigenvalue", "one_minus_eigenvalue"]);
    for (i, &l) in sp.eigenvalues.iter().enumerate() {
        t.push(vec![i.to_string(), fmt_f64(l), fmt_f64(1.0 - l)]);
    }
    Ok(t)
}

/// Monte Carlo request.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulateArgs {
    /// Magnetization.
    pub m: f64,
    /// First t₁.
    pub t1: f64,
    /// t₂/t₁ values.
    pub ratios: Vec<f64>,
    /// Chain length.
    pub length: usize,
    /// Replicas per t₁.
    pub replicas: usize,
    /// Master seed.
    pub seed: u64,
    /// Geometry.
    pub topology: Topology,
    /// Number of t₁ values t₁, 2t₁, 4t₁, … (a convergence check).
    pub t1_doublings: usize,
}

/// Parse a topology name.
pub fn parse_topology(s: &str) -> LabResult<Topology> {
    Ok(match s {
        "ring" => Topology::Ring,
        "half-line" | "half_line" => Topology::HalfLine,
        _ => return usage(format!("unknown topology {s:?}")),
    })
}

/// Replicas of `cfg` in parallel. Collection keeps replica order, so the
/// reduction is the same for any thread count.
pub fn run_replicas_parallel(cfg: &SimConfig, t2s: &[f64]) -> LabResult<Vec<ReplicaCounts>> {
    cfg.validate()?;
    Ok((0..cfg.replicas as u64)
        .into_par_iter()
        .map(|r| run_replica(cfg, r, t2s))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Estimates for every ratio at one t₁, and the fitted exponent of the
/// + spins (`None` with fewer than three ratios).
pub fn simulate_once(
    cfg: &SimConfig,
    ratios: &[f64],
) -> LabResult<(Vec<PersistenceEstimate>, Option<(f64, f64)>)> {
    let t2s = ratio_grid(cfg.t1, ratios)?;
    let runs = run_replicas_parallel(cfg, &t2s)?;
    let est = aggregate(cfg, &t2s, &runs);
    let fit = if ratios.len() >= 3 {
        Some(fit_exponent(&est, false)?)
    } else {
        None
    };
    Ok((est, fit))
}

/// Rows of (t₁, t₂, p̂₊, p̂₋, stderrs, n, exponent) for each t₁ doubling.
pub fn simulate_table(a: &SimulateArgs) -> LabResult<Table> {
    if a.ratios.is_empty() {
        return usage("--ratios must list at least one value");
    }
    if a.t1_doublings == 0 {
        return usage("--t1-doublings must be >= 1");
    }
    let mut t = Table::new(&SIMULATE_HEADER);
    for j in 0..a.t1_doublings {
        let t1 = a.t1 * (1u64 << j.min(62)) as f64;
        let cfg = SimConfig {
            chain_length: a.length,
            m: a.m,
            t1,
            t2: t1 * a.ratios.iter().cloned().fold(f64::MIN, f64::max),
            replicas: a.replicas,
            seed: a.seed,
            topology: a.topology,
        };
        let (est, fit) = simulate_once(&cfg, &a.ratios)?;
        let (x, se) = match fit {
            Some((x, se)) => (fmt_f64(x), fmt_f64(se)),
            None => (String::new(), String::new()),
        };
        for e in est {
            t.push(vec![
                fmt_f64(e.t1),
                fmt_f64(e.t2),
                fmt_f64(e.p_plus_hat),
                fmt_f64(e.p_minus_hat),
                fmt_f64(e.stderr_plus),
                fmt_f64(e.stderr_minus),
                e.n_effective.to_string(),
                x.clone(),
                se.clone(),
            ]);
        }
    }
    Ok(t)
}
