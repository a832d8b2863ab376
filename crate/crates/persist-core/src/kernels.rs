//! The K_θ kernel family, its parity parts, Fourier transform, the
//! Wiener–Hopf symbol and factors, and the ξ ↔ φ uniformizer.
//!
//! K_θ(s) = cot(πθ/2)/π · sinh(θs)/sinh(s), normalized so that ∫K_θ = 1.
//! θ = 1/2 is the sech kernel 1/(2π cosh(s/2)).

use crate::error::{domain, Result};
use crate::fmath::{abs, acos, cos, cosh, exp, sqrt, tan, PI};
use crate::specfun::gamma;
use alloc::format;

/// Which part of the kernel acts.
///
/// `Even`/`Odd` select K^±(x,y) = ½(K(x−y) ± K(x+y)), the restriction of the
/// kernel on a symmetric interval to even/odd functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parity {
    /// The full difference kernel.
    #[default]
    None,
    /// Even part.
    Even,
    /// Odd part.
    Odd,
}

/// Translation-invariant kernel family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelFamily {
    /// K_θ with −1 < θ < 1.
    Theta(f64),
    /// ½ e^{−|s|}, whose symbol 1 − K̂ is the pure Fisher–Hartwig u²/(1+u²).
    Markov,
}

/// A thinned kernel with a parity selector. The scale ν is fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    family: KernelFamily,
    xi: f64,
    parity: Parity,
    // cot(πθ/2)/π, cached
    prefactor: f64,
}

impl KernelSpec {
    /// K_θ thinned by ξ.
    pub fn theta(theta: f64, xi: f64, parity: Parity) -> Result<Self> {
        check_theta(theta)?;
        check_xi(xi)?;
        let t = abs(theta);
        let prefactor = if t < THETA_ZERO {
            0.0
        } else {
            1.0 / (tan(PI * t / 2.0) * PI)
        };
        Ok(Self {
            family: KernelFamily::Theta(theta),
            xi,
            parity,
            prefactor,
        })
    }

    /// The Markov kernel ½e^{−|s|} thinned by ξ.
    pub fn markov(xi: f64, parity: Parity) -> Result<Self> {
        check_xi(xi)?;
        Ok(Self {
            family: KernelFamily::Markov,
            xi,
            parity,
            prefactor: 0.0,
        })
    }

    /// Same kernel with another parity.
    pub fn with_parity(self, parity: Parity) -> Self {
        Self { parity, ..self }
    }

    /// Same kernel with another thinning.
    pub fn with_xi(self, xi: f64) -> Result<Self> {
        check_xi(xi)?;
        Ok(Self { xi, ..self })
    }

    /// Kernel family.
    pub fn family(&self) -> KernelFamily {
        self.family
    }

    /// Thinning parameter ξ.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Parity selector.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// θ, or `None` for the Markov kernel.
    pub fn theta_value(&self) -> Option<f64> {
        match self.family {
            KernelFamily::Theta(t) => Some(t),
            KernelFamily::Markov => None,
        }
    }

    /// Unthinned difference kernel K(s).
    #[inline]
    pub fn k(&self, s: f64) -> f64 {
        match self.family {
            KernelFamily::Theta(t) => k_theta_unchecked(abs(t), self.prefactor, s),
            KernelFamily::Markov => markov_kernel(s),
        }
    }

    /// ξ·K(x−y) for `Parity::None`, ξ·(K(x−y) ± K(x+y))/2 for the parity parts.
    #[inline]
    pub fn entry(&self, x: f64, y: f64) -> f64 {
        match self.parity {
            Parity::None => self.xi * self.k(x - y),
            Parity::Even => 0.5 * self.xi * (self.k(x - y) + self.k(x + y)),
            Parity::Odd => 0.5 * self.xi * (self.k(x - y) - self.k(x + y)),
        }
    }
}

/// Below this |θ| the θ → 0 limit kernel (2/π²) s/sinh s is used.
const THETA_ZERO: f64 = 1e-9;

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && abs(theta) < 1.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "theta must satisfy |theta| < 1, got {theta}"
        )))
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if (0.0..=1.0).contains(&xi) {
        Ok(())
    } else {
        Err(domain(format!("xi must lie in [0, 1], got {xi}")))
    }
}

/// sinh(t s)/sinh(s) for 0 ≤ t < 1, stable for small and large |s|.
#[inline]
fn sinh_ratio(t: f64, s: f64) -> f64 {
    let a = abs(s);
    if a < 1e-4 {
        let a2 = a * a;
        return t * (1.0 + (t * t - 1.0) * a2 / 6.0);
    }
    // e^{(t-1)a} (1 - e^{-2ta}) / (1 - e^{-2a})
    exp((t - 1.0) * a) * (-libm::expm1(-2.0 * t * a)) / (-libm::expm1(-2.0 * a))
}

#[inline]
fn k_theta_unchecked(t: f64, prefactor: f64, s: f64) -> f64 {
    if t < THETA_ZERO {
        let a = abs(s);
        // (2/π²) s / sinh s
        let r = if a < 1e-4 {
            1.0 - a * a / 6.0
        } else {
            2.0 * a * exp(-a) / (-libm::expm1(-2.0 * a))
        };
        return 2.0 / (PI * PI) * r;
    }
    prefactor * sinh_ratio(t, s)
}

/// K_θ(s). Even in s and in θ; K_θ(0) = θ cot(πθ/2)/π and K_0(0) = 2/π².
pub fn k_theta(theta: f64, s: f64) -> Result<f64> {
    check_theta(theta)?;
    let t = abs(theta);
    let prefactor = if t < THETA_ZERO {
        0.0
    } else {
        1.0 / (tan(PI * t / 2.0) * PI)
    };
    Ok(k_theta_unchecked(t, prefactor, s))
}

/// The Markov kernel ½ e^{−|s|}.
pub fn markov_kernel(s: f64) -> f64 {
    0.5 * exp(-abs(s))
}

/// K̂_θ(u) = ∫ K_θ(s) e^{ius} ds = (1 + cos πθ)/(cosh πu + cos πθ).
pub fn fourier_k_theta(theta: f64, u: f64) -> Result<f64> {
    check_theta(theta)?;
    let c = cos(PI * theta);
    Ok((1.0 + c) / (cosh(PI * u) + c))
}

/// The Wiener–Hopf symbol (cosh πu + cos πφ)/(cosh πu + cos πθ) = 1 − ξ K̂_θ(u).
pub fn wh_symbol(u: f64, theta: f64, phi: f64) -> Result<f64> {
    check_order(theta, phi)?;
    Ok((cosh(PI * u) + cos(PI * phi)) / (cosh(PI * u) + cos(PI * theta)))
}

fn check_order(theta: f64, phi: f64) -> Result<()> {
    if (0.0..1.0).contains(&theta) && theta <= phi && phi <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "need 0 <= theta <= phi <= 1 and theta < 1, got theta={theta}, phi={phi}"
        )))
    }
}

/// Wiener–Hopf factor on the real axis:
/// Γ((1+θ)/2 − z) Γ((1−θ)/2 − z) / [Γ((1+φ)/2 − z) Γ((1−φ)/2 − z)].
pub fn wh_factor(z: f64, theta: f64, phi: f64) -> Result<f64> {
    check_order(theta, phi)?;
    let num = gamma(0.5 * (1.0 + theta) - z)? * gamma(0.5 * (1.0 - theta) - z)?;
    let den = gamma(0.5 * (1.0 + phi) - z)? * gamma(0.5 * (1.0 - phi) - z)?;
    if den == 0.0 || !den.is_finite() {
        return Err(domain(format!("wh_factor denominator degenerate at z={z}")));
    }
    Ok(num / den)
}

/// φ = (2/π) arccos(√(1−ξ) cos(πθ/2)).
pub fn phi_of_xi(xi: f64, theta: f64) -> Result<f64> {
    check_xi(xi)?;
    if !(0.0..1.0).contains(&theta) {
        return Err(domain(format!("theta must lie in [0, 1), got {theta}")));
    }
    let arg = sqrt(1.0 - xi) * cos(PI * theta / 2.0);
    Ok(2.0 / PI * acos(arg.clamp(-1.0, 1.0)))
}

/// ξ = (cos πθ − cos πφ)/(cos πθ + 1).
pub fn xi_of_phi(phi: f64, theta: f64) -> Result<f64> {
    check_order(theta, phi)?;
    let ct = cos(PI * theta);
    Ok((ct - cos(PI * phi)) / (ct + 1.0))
}
