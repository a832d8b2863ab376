//! Large-ℓ asymptotics of ln det(I − ξK_θ) on [0, ℓ].
//!
//! Off criticality (φ < 1) the expansion is Aℓ + B − C e^{−2(1−φ)ℓ}, with
//! φ = φ(ξ, θ) from [`crate::kernels::phi_of_xi`]. At ξ = 1 the symbol has a
//! double zero and the law becomes aℓ + ln(ℓ + c) + b.

use crate::error::{domain, Result};
use crate::fmath::{abs, acos, cosh, exp, expm1, ln, sinh, sqrt, LN_2, PI};
use crate::kernels::phi_of_xi;
use crate::quad::composite;
use crate::specfun::{digamma, gamma, log_barnes_g};
use alloc::format;

/// Constants of the off-critical expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    /// Linear slope A = (θ² − φ²)/2.
    pub a: f64,
    /// Log-amplitude B.
    pub b: f64,
    /// Widom–Dyson coefficient C.
    pub c: f64,
    /// Rate 2(1 − φ) of the leading correction.
    pub decay: f64,
}

/// Constants of the ξ = 1 expansion aℓ + ln(ℓ + c) + b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalConstants {
    /// a = (θ² − 1)/2.
    pub a: f64,
    /// b.
    pub b: f64,
    /// c.
    pub c: f64,
}

fn check_pair(theta: f64, phi: f64) -> Result<()> {
    if !(0.0..1.0).contains(&theta) || !(theta..=1.0).contains(&phi) {
        return Err(domain(format!(
            "need 0 <= theta <= phi <= 1, got ({theta}, {phi})"
        )));
    }
    Ok(())
}

fn critical_branch(phi: f64) -> Result<()> {
    if phi >= 1.0 {
        Err(domain(
            "phi = 1 is the critical case; use critical_constants",
        ))
    } else {
        Ok(())
    }
}

/// e(x) = (cosh θx − cosh φx)/(x sinh x), even in x, with e(0) = (θ² − φ²)/2.
pub fn e_func(x: f64, theta: f64, phi: f64) -> f64 {
    let x = abs(x);
    if x < 1.0 {
        // (cosh θx − cosh φx)/x² over sinh(x)/x, both as series in x²
        let x2 = x * x;
        let (t2, p2) = (theta * theta, phi * phi);
        let (mut tk, mut pk) = (t2, p2);
        let mut fact = 2.0;
        let mut xk = 1.0;
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 1..=12 {
            num += (tk - pk) * xk / fact;
            den += xk / (fact / (2 * k) as f64);
            tk *= t2;
            pk *= p2;
            xk *= x2;
            fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        }
        num / den
    } else if x < 30.0 {
        (cosh(theta * x) - cosh(phi * x)) / (x * sinh(x))
    } else {
        let e2 = exp(-2.0 * x);
        (exp((theta - 1.0) * x) * (1.0 + exp(-2.0 * theta * x))
            - exp((phi - 1.0) * x) * (1.0 + exp(-2.0 * phi * x)))
            / (x * (1.0 - e2))
    }
}

/// ∂e/∂φ = −sinh(φx)/sinh(x).
pub fn e_func_dphi(x: f64, phi: f64) -> f64 {
    if x == 0.0 {
        -phi
    } else {
        -sinh(phi * x) / sinh(x)
    }
}

/// A = (θ² − φ²)/2.
pub fn a_const(theta: f64, phi: f64) -> f64 {
    0.5 * (theta * theta - phi * phi)
}

/// B = ln of the Barnes G ratio
/// G²(1±(θ+φ)/2) G²(1±(θ−φ)/2) / (G(1±θ) G(1±φ)).
pub fn b_const(theta: f64, phi: f64) -> Result<f64> {
    check_pair(abs(theta), phi)?;
    critical_branch(phi)?;
    let g = log_barnes_g;
    let sp = 0.5 * (theta + phi);
    let sm = 0.5 * (theta - phi);
    Ok(
        2.0 * (g(1.0 + sp)? + g(1.0 - sp)? + g(1.0 + sm)? + g(1.0 - sm)?)
            - g(1.0 + theta)?
            - g(1.0 - theta)?
            - g(1.0 + phi)?
            - g(1.0 - phi)?,
    )
}

/// B as the integral ∫₀^∞ x e(x) e(−x) dx.
pub fn b_kac_akhiezer(theta: f64, phi: f64) -> Result<f64> {
    check_pair(theta, phi)?;
    critical_branch(phi)?;
    let upper = (40.0 / (1.0 - phi)).max(80.0);
    let panels = (upper / 2.0) as usize + 1;
    composite(
        |x| {
            let e = e_func(x, theta, phi);
            x * e * e
        },
        0.0,
        upper,
        panels,
        16,
    )
}

// Γ((θ−φ)/2)Γ((−θ−φ)/2) / (Γ((θ+φ)/2)Γ((φ−θ)/2))
fn gamma_balance(theta: f64, phi: f64) -> Result<f64> {
    Ok(gamma(0.5 * (theta - phi))? * gamma(0.5 * (-theta - phi))?
        / (gamma(0.5 * (theta + phi))? * gamma(0.5 * (phi - theta))?))
}

/// Amplitude c of the leading term c e^{−(1−φ)ℓ} of the Hankel symbol f(ℓ).
pub fn f_amplitude(theta: f64, phi: f64) -> Result<f64> {
    check_pair(theta, phi)?;
    critical_branch(phi)?;
    if phi == theta {
        return Ok(0.0);
    }
    Ok(a_const(theta, phi) * gamma_balance(theta, phi)? * gamma(phi)? / gamma(1.0 - phi)?)
}

/// Two-term large-ℓ form of f: c e^{−(1−φ)ℓ} plus the e^{−(1+φ)ℓ} term.
pub fn f_leading(ell: f64, theta: f64, phi: f64) -> Result<f64> {
    let c1 = f_amplitude(theta, phi)?;
    if c1 == 0.0 {
        return Ok(0.0);
    }
    let c2 = a_const(theta, phi) / gamma_balance(theta, phi)? * gamma(-phi)? / gamma(1.0 + phi)?;
    Ok(c1 * exp(-(1.0 - phi) * ell) + c2 * exp(-(1.0 + phi) * ell))
}

/// C = (c/(2(1 − φ)))².
pub fn widom_dyson_c(theta: f64, phi: f64) -> Result<f64> {
    let c = f_amplitude(theta, phi)?;
    let r = c / (2.0 * (1.0 - phi));
    Ok(r * r)
}

/// Leading trace of the tail operator, C e^{−2(1−φ)ℓ}.
pub fn tail_trace_leading(ell: f64, theta: f64, phi: f64) -> Result<f64> {
    Ok(widom_dyson_c(theta, phi)? * exp(-2.0 * (1.0 - phi) * ell))
}

impl AsymptoticConstants {
    /// Constants for 0 ≤ θ ≤ φ < 1.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        check_pair(theta, phi)?;
        critical_branch(phi)?;
        Ok(AsymptoticConstants {
            a: a_const(theta, phi),
            b: b_const(theta, phi)?,
            c: widom_dyson_c(theta, phi)?,
            decay: 2.0 * (1.0 - phi),
        })
    }

    /// Constants at thinning ξ < 1.
    pub fn from_xi(theta: f64, xi: f64) -> Result<Self> {
        Self::new(theta, phi_of_xi(xi, theta)?)
    }

    /// Aℓ + B − C e^{−2(1−φ)ℓ}.
    pub fn logdet(&self, ell: f64) -> f64 {
        self.a * ell + self.b - self.c * exp(-self.decay * ell)
    }

    /// A + 2(1 − φ) C e^{−2(1−φ)ℓ}.
    pub fn h(&self, ell: f64) -> f64 {
        self.a + self.decay * self.c * exp(-self.decay * ell)
    }
}

/// Large-ℓ expansion of ln det on [0, ℓ] for φ < 1.
pub fn logdet_expansion(ell: f64, theta: f64, phi: f64) -> Result<f64> {
    Ok(AsymptoticConstants::new(theta, phi)?.logdet(ell))
}

/// Large-ℓ expansion of H = d/dℓ ln det for φ < 1.
pub fn h_asym(ell: f64, theta: f64, phi: f64) -> Result<f64> {
    Ok(AsymptoticConstants::new(theta, phi)?.h(ell))
}

/// c = 2Ψ(1) − Ψ((1+θ)/2) − Ψ((1−θ)/2).
pub fn critical_c(theta: f64) -> Result<f64> {
    Ok(2.0 * digamma(1.0)? - digamma(0.5 * (1.0 + theta))? - digamma(0.5 * (1.0 - theta))?)
}

/// 2[Ψ((1+θ)/2) − Ψ((1−θ)/2) − 2Ψ(1)], the digamma combination as often
/// quoted. It disagrees with the determinant; see [`critical_c`].
pub fn critical_c_quoted(theta: f64) -> Result<f64> {
    Ok(2.0 * (digamma(0.5 * (1.0 + theta))? - digamma(0.5 * (1.0 - theta))? - 2.0 * digamma(1.0)?))
}

/// ln of π² 4^{−θ²} G⁸(½) G(1−θ) G(1+θ) / (G⁴(1−θ/2) G⁴(1+θ/2)).
///
/// This Barnes expression equals e^b/2, not e^b.
pub fn critical_b_barnes(theta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&abs(theta)) {
        return Err(domain(format!("need |theta| < 1, got {theta}")));
    }
    let g = log_barnes_g;
    Ok(2.0 * ln(PI) - theta * theta * 2.0 * LN_2
        + 8.0 * g(0.5)?
        + g(1.0 - theta)?
        + g(1.0 + theta)?
        - 4.0 * (g(1.0 - 0.5 * theta)? + g(1.0 + 0.5 * theta)?))
}

/// b = ∫₀^∞ [x e²(x) − (1 − e^{−x})/x] dx with e = e(·, θ, 1).
pub fn critical_b_integral(theta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&theta) {
        return Err(domain(format!("need 0 <= theta < 1, got {theta}")));
    }
    let upper = (45.0 / (1.0 - theta)).max(80.0);
    let panels = (upper / 2.0) as usize + 1;
    composite(
        |x| {
            let e = e_func(x, theta, 1.0);
            let sub = if x == 0.0 { 1.0 } else { -expm1(-x) / x };
            x * e * e - sub
        },
        0.0,
        upper,
        panels,
        16,
    )
}

/// Constants of the ξ = 1 law; b is the Barnes expression plus ln 2.
pub fn critical_constants(theta: f64) -> Result<CriticalConstants> {
    if !(0.0..1.0).contains(&theta) {
        return Err(domain(format!("need 0 <= theta < 1, got {theta}")));
    }
    Ok(CriticalConstants {
        a: 0.5 * (theta * theta - 1.0),
        b: critical_b_barnes(theta)? + LN_2,
        c: critical_c(theta)?,
    })
}

impl CriticalConstants {
    /// aℓ + ln(ℓ + c) + b.
    pub fn logdet(&self, ell: f64) -> f64 {
        self.a * ell + ln(ell + self.c) + self.b
    }

    /// a + 1/(ℓ + c).
    pub fn h(&self, ell: f64) -> f64 {
        self.a + 1.0 / (ell + self.c)
    }
}

/// κ(m) = −1/8 + (2/π²) arccos²(|m|/√2).
pub fn kappa(m: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&m) {
        return Err(domain(format!(
            "magnetization must lie in [-1, 1], got {m}"
        )));
    }
    if abs(m) == 1.0 {
        // acos(1/√2) rounds to a 1e-17 residue
        return Ok(0.0);
    }
    let a = acos(abs(m) / sqrt(2.0));
    Ok(-0.125 + 2.0 / (PI * PI) * a * a)
}

/// θ̂(q) = −1/8 + (2/π²) arccos²((2 − q)/(√2 q)).
pub fn dhp_exponent(q: f64) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(domain(format!("need q >= 1, got {q}")));
    }
    if q == 1.0 {
        return Ok(0.0);
    }
    let a = acos((2.0 - q) / (sqrt(2.0) * q));
    Ok(-0.125 + 2.0 / (PI * PI) * a * a)
}

/// m = 2/q − 1.
pub fn potts_ising_map(q: f64) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(domain(format!("need q >= 1, got {q}")));
    }
    Ok(2.0 / q - 1.0)
}

/// Exponent of P₀⁺ ∝ e^{−κℓ/2} in ℓ = ln(t₂/t₁).
pub fn half_space_rate(m: f64) -> Result<f64> {
    Ok(0.5 * kappa(m)?)
}
