//! Log-Gamma, Gamma, digamma, log Barnes G and a few stored constants.
//!
//! `ln Γ` comes from `libm`; digamma and Barnes G use the usual recurrence
//! shift to a large argument followed by the Stirling-type expansion.

use crate::error::{domain, Result};
use crate::fmath::{floor, ln, PI};
use alloc::format;

/// Euler's constant γ_E.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// ζ′(−1), tabulated.
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_929_213_919_660_242_78;

/// ln A of the Glaisher–Kinkelin constant, tabulated independently of
/// [`ZETA_PRIME_MINUS_ONE`].
pub const LN_GLAISHER: f64 = 0.248_754_477_033_784_262_547_252_993_576_0;

// Shift target for the asymptotic expansions.
const ASYMPTOTIC_FROM: f64 = 10.0;

fn check_positive(z: f64, what: &str) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(domain(format!(
            "{what} requires a finite positive argument, got {z}"
        )))
    }
}

/// ln Γ(z) for z > 0.
pub fn log_gamma(z: f64) -> Result<f64> {
    check_positive(z, "log_gamma")?;
    Ok(libm::lgamma(z))
}

/// Γ(z) for any real z that is not a non-positive integer.
///
/// Negative arguments are needed by the Widom–Dyson constant.
pub fn gamma(z: f64) -> Result<f64> {
    if !z.is_finite() || (z <= 0.0 && z == floor(z)) {
        return Err(domain(format!("gamma has a pole at {z}")));
    }
    Ok(libm::tgamma(z))
}

/// Ψ(z) = Γ′(z)/Γ(z) for z > 0.
pub fn digamma(z: f64) -> Result<f64> {
    check_positive(z, "digamma")?;
    let mut w = z;
    let mut shift = 0.0;
    while w < ASYMPTOTIC_FROM {
        shift += 1.0 / w;
        w += 1.0;
    }
    let w2 = 1.0 / (w * w);
    let series = w2
        * (1.0 / 12.0
            - w2 * (1.0 / 120.0
                - w2 * (1.0 / 252.0
                    - w2 * (1.0 / 240.0 - w2 * (1.0 / 132.0 - w2 * 691.0 / 32760.0)))));
    Ok(ln(w) - 0.5 / w - series - shift)
}

/// ln G(z+1) for large z by the asymptotic expansion.
fn log_barnes_g_shifted_asymptotic(z: f64) -> f64 {
    let lz = ln(z);
    let z2 = z * z;
    let iz2 = 1.0 / z2;
    // B_{2k+2} / (4k(k+1)) for k = 1..6
    const C: [f64; 6] = [
        -1.0 / 240.0,
        1.0 / 1008.0,
        -1.0 / 1440.0,
        1.0 / 1056.0,
        -691.0 / 327_600.0,
        7.0 / 1008.0,
    ];
    let mut tail = 0.0;
    let mut p = iz2;
    for c in C {
        tail += c * p;
        p *= iz2;
    }
    0.5 * z2 * lz - 0.75 * z2 + 0.5 * z * ln(2.0 * PI) - lz / 12.0 + ZETA_PRIME_MINUS_ONE + tail
}

/// ln G(z) for z > 0, where G(z+1) = Γ(z) G(z), G(1) = 1.
pub fn log_barnes_g(z: f64) -> Result<f64> {
    check_positive(z, "log_barnes_g")?;
    // ln G(z) = ln G(z+n) - sum_{j<n} ln Γ(z+j), with z+n-1 >= ASYMPTOTIC_FROM.
    let mut w = z;
    let mut acc = 0.0;
    while w - 1.0 < ASYMPTOTIC_FROM {
        acc += libm::lgamma(w);
        w += 1.0;
    }
    Ok(log_barnes_g_shifted_asymptotic(w - 1.0) - acc)
}

/// ln A_GK, the logarithm of the Glaisher–Kinkelin constant.
pub fn glaisher_log() -> f64 {
    LN_GLAISHER
}

#[cfg(test)]
pub(crate) fn close(a: f64, b: f64, tol: f64) -> bool {
    crate::fmath::abs(a - b) <= tol
}
