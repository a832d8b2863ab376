//! Persistence probabilities of the zero-temperature Ising chain.
//!
//! For a spin observed over ℓ = ln(t₂/t₁) with magnetization m, the
//! probabilities of staying + (resp. −) are
//! P₀^± = (D⁺ ± m D⁻)/2 with D^± the parity determinants at ξ = 1 − m² of
//! the sech kernel (θ = ½). Their sum is D⁺.

use crate::asymptotics::{critical_constants, kappa, AsymptoticConstants};
use crate::error::{domain, Error, Result};
use crate::fmath::{abs, exp, ln, sqrt};
use crate::fredholm::{default_nodes, log_fredholm_det};
use crate::kernels::{phi_of_xi, KernelSpec, Parity};
use crate::resolvent_ode::{integrate_h, log_det_at, CauchyTrajectory, OdeConfig, Sign};
use alloc::format;
use alloc::string::String;

/// Backend used for D^±.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Nyström quadrature of the parity kernels.
    Nystrom,
    /// Integration of the Bonnet ODE.
    Ode,
    /// Large-ℓ closed forms.
    Asymptotic,
    /// Nyström for ℓ ≤ 12, otherwise the ODE.
    #[default]
    Auto,
}

impl Method {
    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            Method::Nystrom => "nystrom",
            Method::Ode => "ode",
            Method::Asymptotic => "asymptotic",
            Method::Auto => "auto",
        }
    }
}

/// Largest ℓ for which [`Method::Auto`] uses Nyström.
pub const AUTO_NYSTROM_MAX: f64 = 12.0;

/// One persistence question.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistenceQuery {
    /// Magnetization in [−1, 1].
    pub m: f64,
    /// ℓ = ln(t₂/t₁) ≥ 0.
    pub ell: f64,
    /// Backend.
    pub method: Method,
    /// Kernel parameter; ½ for the Ising chain.
    pub theta: f64,
}

impl PersistenceQuery {
    /// A query for the Ising chain.
    pub fn new(m: f64, ell: f64, method: Method) -> Self {
        PersistenceQuery {
            m,
            ell,
            method,
            theta: 0.5,
        }
    }

    /// ξ = 1 − m².
    pub fn xi(&self) -> f64 {
        1.0 - self.m * self.m
    }

    fn validate(&self) -> Result<()> {
        if !(-1.0..=1.0).contains(&self.m) {
            return Err(domain(format!(
                "magnetization must lie in [-1, 1], got {}",
                self.m
            )));
        }
        if !(self.ell >= 0.0) || !self.ell.is_finite() {
            return Err(domain(format!(
                "ell must be finite and >= 0, got {}",
                self.ell
            )));
        }
        Ok(())
    }
}

/// Probabilities and the determinants they came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistenceResult {
    /// P₀⁺.
    pub p_plus: f64,
    /// P₀⁻.
    pub p_minus: f64,
    /// P₀⁺ + P₀⁻ = D⁺.
    pub p_total: f64,
    /// D⁺.
    pub d_plus: f64,
    /// D⁻.
    pub d_minus: f64,
    /// κ(m); P₀^± decays as e^{−κℓ/2}.
    pub kappa: f64,
    /// Backend that actually ran.
    pub method: Method,
}

/// (P₀⁺, P₀⁻, P₀) = ((D⁺ + mD⁻)/2, (D⁺ − mD⁻)/2, D⁺).
///
/// Requires 0 < D⁺ ≤ D⁻ ≤ 1 and |m| D⁻ ≤ D⁺, up to rounding.
pub fn pfaffian_decompose(d_plus: f64, d_minus: f64, m: f64) -> Result<(f64, f64, f64)> {
    const SLACK: f64 = 1e-9;
    if !(-1.0..=1.0).contains(&m) {
        return Err(domain(format!(
            "magnetization must lie in [-1, 1], got {m}"
        )));
    }
    if !(d_plus > 0.0 && d_plus <= d_minus * (1.0 + SLACK) && d_minus <= 1.0 + SLACK) {
        return Err(domain(format!(
            "need 0 < D+ <= D- <= 1, got D+ = {d_plus}, D- = {d_minus}"
        )));
    }
    if abs(m) * d_minus > d_plus * (1.0 + SLACK) {
        return Err(domain(format!(
            "|m| D- exceeds D+ (m = {m}, D+ = {d_plus}, D- = {d_minus})"
        )));
    }
    let p_plus = 0.5 * (d_plus + m * d_minus);
    let p_minus = 0.5 * (d_plus - m * d_minus);
    Ok((
        p_plus.clamp(0.0, 1.0),
        p_minus.clamp(0.0, 1.0),
        d_plus.min(1.0),
    ))
}

fn with_method(e: Error, method: Method) -> Error {
    match e {
        Error::Numeric(s) => Error::Numeric(format!("[{}] {s}", method.name())),
        Error::Integration { x, reason } => Error::Integration {
            x,
            reason: format!("[{}] {reason}", method.name()),
        },
        Error::Branch { at, reason } => Error::Branch {
            at,
            reason: format!("[{}] {reason}", method.name()),
        },
        Error::IllConditioned { gap, context } => Error::IllConditioned {
            gap,
            context: format!("[{}] {context}", method.name()),
        },
        other => other,
    }
}

/// ln D^± by Nyström on the folded kernel over [0, ℓ/2].
pub fn log_parity_dets_nystrom(theta: f64, xi: f64, ell: f64) -> Result<(f64, f64)> {
    if ell == 0.0 || xi == 0.0 {
        return Ok((0.0, 0.0));
    }
    let base = KernelSpec::theta(theta, xi, Parity::None)?;
    let n = default_nodes(ell);
    let half = 0.5 * ell;
    Ok((
        log_fredholm_det(&base.with_parity(Parity::Even), 0.0, half, n)?,
        log_fredholm_det(&base.with_parity(Parity::Odd), 0.0, half, n)?,
    ))
}

/// ln D^± from an ODE trajectory reaching at least ℓ.
pub fn log_parity_dets_ode(tr: &CauchyTrajectory, ell: f64) -> Result<(f64, f64)> {
    Ok((
        log_det_at(tr, Sign::Plus, ell)?,
        log_det_at(tr, Sign::Minus, ell)?,
    ))
}

// x where the critical parity offset is read off an ODE run
const OFFSET_ANCHOR: f64 = 30.0;

/// Constant Σ of the large-ℓ parity split ln D⁻ − ln D⁺ = ∫₀^ℓ S.
///
/// For ξ < 1, ∫₀^∞ S = Σ = −½ ln(1 − ξ) = −ln|m|, so D⁻/D⁺ → 1/|m|. At ξ = 1,
/// ∫₀^ℓ S = ln(ℓ + c) + Σ + o(1) and Σ is read off one ODE run.
pub fn parity_offset(theta: f64, xi: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(domain(format!("xi must lie in [0, 1], got {xi}")));
    }
    if xi < 1.0 {
        return Ok(-0.5 * ln(1.0 - xi));
    }
    let tr = integrate_h(&OdeConfig::new(theta, xi, OFFSET_ANCHOR))?;
    let (lp, lm) = log_parity_dets_ode(&tr, OFFSET_ANCHOR)?;
    Ok(lm - lp - ln(OFFSET_ANCHOR + critical_constants(theta)?.c))
}

/// ln D^± from the large-ℓ expansions, with the split constant `offset`
/// from [`parity_offset`].
pub fn log_parity_dets_asymptotic(
    theta: f64,
    xi: f64,
    ell: f64,
    offset: f64,
) -> Result<(f64, f64)> {
    if xi == 0.0 {
        return Ok((0.0, 0.0));
    }
    let (log_d, split) = if xi >= 1.0 {
        let k = critical_constants(theta)?;
        (k.logdet(ell), ln(ell + k.c) + offset)
    } else {
        let k = AsymptoticConstants::new(theta, phi_of_xi(xi, theta)?)?;
        (
            k.logdet(ell),
            offset - 2.0 * sqrt(k.c) * exp(-0.5 * k.decay * ell),
        )
    };
    Ok((0.5 * (log_d - split), 0.5 * (log_d + split)))
}

/// P₀^± for one query.
pub fn distribution(query: &PersistenceQuery) -> Result<PersistenceResult> {
    query.validate()?;
    let method = match query.method {
        Method::Auto if query.ell <= AUTO_NYSTROM_MAX => Method::Nystrom,
        Method::Auto => Method::Ode,
        m => m,
    };
    let xi = query.xi();
    let (lp, lm) = if query.ell == 0.0 {
        Ok((0.0, 0.0))
    } else {
        match method {
            Method::Nystrom => log_parity_dets_nystrom(query.theta, xi, query.ell),
            Method::Ode => {
                if xi == 0.0 || query.ell == 0.0 {
                    Ok((0.0, 0.0))
                } else {
                    integrate_h(&OdeConfig::new(query.theta, xi, query.ell))
                        .and_then(|tr| log_parity_dets_ode(&tr, query.ell))
                }
            }
            Method::Asymptotic => parity_offset(query.theta, xi)
                .and_then(|off| log_parity_dets_asymptotic(query.theta, xi, query.ell, off)),
            Method::Auto => unreachable!(),
        }
    }
    .map_err(|e| with_method(e, method))?;
    let (d_plus, d_minus) = (exp(lp), exp(lm));
    let (p_plus, p_minus, p_total) = pfaffian_decompose(d_plus, d_minus, query.m)?;
    Ok(PersistenceResult {
        p_plus,
        p_minus,
        p_total,
        d_plus,
        d_minus,
        kappa: kappa(query.m)?,
        method,
    })
}

/// p₀ = q P₀⁺ for the q-state Potts chain at m = 2/q − 1, ℓ = ln(t₂/t₁).
pub fn potts_view(q: f64, t1: f64, t2: f64, method: Method) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(domain(format!("need q >= 1, got {q}")));
    }
    if !(t1 > 0.0 && t2 > t1) {
        return Err(domain(format!("need t2 > t1 > 0, got ({t1}, {t2})")));
    }
    let m = 2.0 / q - 1.0;
    let r = distribution(&PersistenceQuery::new(m, ln(t2 / t1), method))?;
    Ok((q * r.p_plus).min(1.0))
}

/// Least-squares slope of ln P₀ over the given ℓ values.
pub fn decay_slope(m: f64, ells: &[f64], method: Method) -> Result<f64> {
    if ells.len() < 2 {
        return Err(Error::Estimation(String::from(
            "need at least two ell values",
        )));
    }
    let mut pts = alloc::vec::Vec::with_capacity(ells.len());
    for &ell in ells {
        pts.push((
            ell,
            ln(distribution(&PersistenceQuery::new(m, ell, method))?.p_total),
        ));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if abs(sxx) == 0.0 {
        return Err(Error::Estimation(String::from("degenerate ell grid")));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decomposition_limits() {
        assert_eq!(pfaffian_decompose(1.0, 1.0, 1.0).unwrap(), (1.0, 0.0, 1.0));
        let (p, q, t) = pfaffian_decompose(0.4, 0.6, 0.0).unwrap();
        assert_eq!((p, q, t), (0.2, 0.2, 0.4));
        assert!(pfaffian_decompose(0.6, 0.4, 0.0).is_err());
        assert!(pfaffian_decompose(0.0, 0.5, 0.0).is_err());
        assert!(pfaffian_decompose(0.4, 0.6, 0.9).is_err());
    }

    #[test]
    fn parity_split_tends_to_inverse_magnetization() {
        // Only the leading tail term is subtracted; at m = 0.2 it is still 0.04 at x = 40.
        for (m, tol) in [(0.2, 1e-5), (0.5, 1e-6), (0.8, 1e-6)] {
            let xi = 1.0 - m * m;
            let tr = integrate_h(&OdeConfig::new(0.5, xi, 40.0)).unwrap();
            let (lp, lm) = log_parity_dets_ode(&tr, 40.0).unwrap();
            let k = AsymptoticConstants::from_xi(0.5, xi).unwrap();
            let tail = 2.0 * sqrt(k.c) * exp(-0.5 * k.decay * 40.0);
            assert!(
                abs((lm - lp + tail) - parity_offset(0.5, xi).unwrap()) < tol,
                "m={m}: {} {}",
                lm - lp,
                tail
            );
        }
    }

    #[test]
    fn trivial_queries() {
        for method in [
            Method::Nystrom,
            Method::Ode,
            Method::Asymptotic,
            Method::Auto,
        ] {
            let r = distribution(&PersistenceQuery::new(0.3, 0.0, method)).unwrap();
            assert_eq!(r.p_total, 1.0);
            let r = distribution(&PersistenceQuery::new(1.0, 3.0, method)).unwrap();
            assert_eq!((r.p_plus, r.p_minus), (1.0, 0.0));
        }
        assert!(distribution(&PersistenceQuery::new(1.5, 1.0, Method::Ode)).is_err());
        assert!(distribution(&PersistenceQuery::new(0.0, -1.0, Method::Ode)).is_err());
    }

    #[test]
    fn backends_agree() {
        for m in [0.0, 0.5] {
            for ell in [0.5, 3.0, 10.0] {
                let a = distribution(&PersistenceQuery::new(m, ell, Method::Nystrom)).unwrap();
                let b = distribution(&PersistenceQuery::new(m, ell, Method::Ode)).unwrap();
                assert!(
                    abs(a.p_plus - b.p_plus) < 1e-6 && abs(a.p_minus - b.p_minus) < 1e-6,
                    "m={m} ell={ell}"
                );
            }
        }
        assert_eq!(
            distribution(&PersistenceQuery::new(0.0, 12.0, Method::Auto))
                .unwrap()
                .method,
            Method::Nystrom
        );
        assert_eq!(
            distribution(&PersistenceQuery::new(0.0, 12.5, Method::Auto))
                .unwrap()
                .method,
            Method::Ode
        );
    }

    #[test]
    fn asymptotic_backend_at_large_ell() {
        for m in [0.0, 0.5] {
            let ell = 20.0;
            let a = distribution(&PersistenceQuery::new(m, ell, Method::Asymptotic)).unwrap();
            let b = distribution(&PersistenceQuery::new(m, ell, Method::Ode)).unwrap();
            assert!(
                abs(ln(a.d_plus / b.d_plus)) < 1e-3,
                "m={m}: {} vs {}",
                a.d_plus,
                b.d_plus
            );
            assert!(abs(ln(a.d_minus / b.d_minus)) < 1e-3, "m={m}");
        }
    }

    #[test]
    fn decay_rate_is_half_kappa() {
        let ells = [15.0, 17.5, 20.0, 22.5, 25.0];
        for m in [0.0, 0.5] {
            let slope = decay_slope(m, &ells, Method::Ode).unwrap();
            let k = kappa(m).unwrap();
            assert!(
                abs(slope + 0.5 * k) < 1e-3,
                "m={m}: {slope} vs {}",
                -0.5 * k
            );
        }
    }

    #[test]
    fn potts_map() {
        assert_eq!(potts_view(1.0, 1.0, 50.0, Method::Nystrom).unwrap(), 1.0);
        let p2 = potts_view(2.0, 1.0, 5.0, Method::Nystrom).unwrap();
        let r = distribution(&PersistenceQuery::new(0.0, ln(5.0), Method::Nystrom)).unwrap();
        assert!(abs(p2 - 2.0 * r.p_plus) < 1e-15);
        assert!(potts_view(2.0, 2.0, 1.0, Method::Nystrom).is_err());
        // slope in ln(t2/t1) approaches θ̂(q)/2 at q = 3
        let q = 3.0;
        let a = ln(potts_view(q, 1.0, exp(20.0), Method::Ode).unwrap());
        let b = ln(potts_view(q, 1.0, exp(25.0), Method::Ode).unwrap());
        let theta_hat = crate::asymptotics::dhp_exponent(q).unwrap();
        assert!(abs((b - a) / 5.0 + 0.5 * theta_hat) < 2e-3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn mirror_and_bounds(m in -1.0f64..=1.0, ell in 0.0f64..6.0) {
            let a = distribution(&PersistenceQuery::new(m, ell, Method::Nystrom)).unwrap();
            let b = distribution(&PersistenceQuery::new(-m, ell, Method::Nystrom)).unwrap();
            prop_assert!(abs(a.p_plus - b.p_minus) < 1e-14);
            for p in [a.p_plus, a.p_minus, a.p_total] {
                prop_assert!((0.0..=1.0).contains(&p));
            }
            prop_assert!(abs(a.p_plus + a.p_minus - a.d_plus) < 1e-14);
        }

        #[test]
        fn monotone_in_ell_and_m(m in -0.95f64..0.95, ell in 0.1f64..5.0, dl in 0.05f64..1.0, dm in 0.01f64..0.05) {
            let a = distribution(&PersistenceQuery::new(m, ell, Method::Nystrom)).unwrap();
            let b = distribution(&PersistenceQuery::new(m, ell + dl, Method::Nystrom)).unwrap();
            prop_assert!(b.p_total <= a.p_total);
            let c = distribution(&PersistenceQuery::new(m + dm, ell, Method::Nystrom)).unwrap();
            prop_assert!(c.p_plus >= a.p_plus);
        }
    }
}
