//! Gauss–Legendre rules and composite integration.

use crate::error::{domain, Result};
use crate::fmath::{abs, cos, PI};
use alloc::format;
use alloc::vec::Vec;

/// Nodes and weights of a quadrature rule on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Discretization {
    /// Left end.
    pub a: f64,
    /// Right end.
    pub b: f64,
    /// Increasing nodes in (a, b).
    pub nodes: Vec<f64>,
    /// Positive weights, summing to b − a.
    pub weights: Vec<f64>,
}

impl Discretization {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// `true` for an empty rule.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i).
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// n-point Gauss–Legendre rule mapped to (a, b).
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<Discretization> {
    if n < 2 {
        return Err(domain(format!("gauss_legendre needs n >= 2, got {n}")));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain(format!(
            "gauss_legendre needs a < b, got ({a}, {b})"
        )));
    }
    let mut t = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton.
        let mut x = cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if abs(dx) < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let wi = 2.0 / ((1.0 - x * x) * dp * dp);
        t[i] = -x;
        t[n - 1 - i] = x;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        t[n / 2] = 0.0;
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(Discretization {
        a,
        b,
        nodes: t.iter().map(|&x| mid + half * x).collect(),
        weights: w.iter().map(|&wi| half * wi).collect(),
    })
}

/// Trapezoid rule with n equally spaced nodes including both ends.
pub fn trapezoid(n: usize, a: f64, b: f64) -> Result<Discretization> {
    if n < 2 {
        return Err(domain(format!("trapezoid needs n >= 2, got {n}")));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain(format!("trapezoid needs a < b, got ({a}, {b})")));
    }
    let h = (b - a) / (n - 1) as f64;
    let nodes = (0..n)
        .map(|i| if i == n - 1 { b } else { a + i as f64 * h })
        .collect();
    let mut weights = alloc::vec![h; n];
    weights[0] = 0.5 * h;
    weights[n - 1] = 0.5 * h;
    Ok(Discretization {
        a,
        b,
        nodes,
        weights,
    })
}

/// ∫_a^b f by `panels` equal panels of an `order`-point Gauss–Legendre rule.
pub fn composite(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> Result<f64> {
    if panels == 0 {
        return Err(domain("composite needs at least one panel"));
    }
    if a == b {
        return Ok(0.0);
    }
    let rule = gauss_legendre(order, -1.0, 1.0)?;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let mut s = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            s += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * s;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::{exp, sqrt};

    #[test]
    fn two_point_rule() {
        let d = gauss_legendre(2, -1.0, 1.0).unwrap();
        assert!(abs(d.nodes[0] + 1.0 / sqrt(3.0)) < 1e-15);
        assert!(abs(d.nodes[1] - 1.0 / sqrt(3.0)) < 1e-15);
        assert!(abs(d.weights[0] - 1.0) < 1e-15 && abs(d.weights[1] - 1.0) < 1e-15);
    }

    #[test]
    fn weights_sum_and_ordering() {
        for n in [3, 10, 57, 200, 801] {
            let d = gauss_legendre(n, 0.0, 7.5).unwrap();
            let s: f64 = d.weights.iter().sum();
            assert!(abs(s - 7.5) < 1e-12, "n={n}: {s}");
            assert!(d.nodes.windows(2).all(|p| p[0] < p[1]));
            assert!(d.nodes[0] > 0.0 && d.nodes[n - 1] < 7.5);
        }
    }

    #[test]
    fn polynomial_exactness() {
        let d = gauss_legendre(40, 0.0, 1.0).unwrap();
        assert!(abs(d.integrate(|x| x * x * x * x) - 0.2) < 1e-14);
        let d = gauss_legendre(5, -2.0, 3.0).unwrap();
        // degree 9 is exact for 5 points
        let exact = (libm::pow(3.0, 10.0) - libm::pow(-2.0, 10.0)) / 10.0;
        assert!(abs(d.integrate(|x| libm::pow(x, 9.0)) - exact) < 1e-9);
    }

    #[test]
    fn trapezoid_rule() {
        let d = trapezoid(5, 0.0, 2.0).unwrap();
        assert_eq!(d.nodes, [0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(d.weights, [0.25, 0.5, 0.5, 0.5, 0.25]);
        assert!(abs(d.integrate(|x| 3.0 * x - 1.0) - 4.0) < 1e-15);
        assert!(trapezoid(1, 0.0, 1.0).is_err());
    }

    #[test]
    fn composite_exponential() {
        let v = composite(|x| exp(-x), 0.0, 30.0, 30, 10).unwrap();
        assert!(abs(v - (1.0 - exp(-30.0))) < 1e-14);
        assert!(gauss_legendre(1, 0.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
    }
}
