//! Third-order forward jets: a value together with its first three
//! derivatives along one parameter.
//!
//! Every map between the persistence ODE and the Painlevé objects is a
//! composition of elementary functions, so pushing jets through those maps
//! gives exact derivatives on the image curve without finite differences.

use crate::fmath::{cosh, exp, ln, sinh, sqrt};
use core::ops::{Add, Div, Mul, Neg, Sub};

/// `[f, f′, f″, f‴]` at one point. Entries that are not known are NaN and
/// stay confined to the orders that depend on them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; 4]);

impl Jet {
    /// Jet from explicit derivatives.
    pub const fn new(f: f64, f1: f64, f2: f64, f3: f64) -> Self {
        Jet([f, f1, f2, f3])
    }

    /// A constant.
    pub const fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0])
    }

    /// The independent variable itself at `x`.
    pub const fn var(x: f64) -> Self {
        Jet([x, 1.0, 0.0, 0.0])
    }

    /// f.
    pub fn v(&self) -> f64 {
        self.0[0]
    }

    /// f′.
    pub fn d1(&self) -> f64 {
        self.0[1]
    }

    /// f″.
    pub fn d2(&self) -> f64 {
        self.0[2]
    }

    /// f‴.
    pub fn d3(&self) -> f64 {
        self.0[3]
    }

    /// The jet of f′; its third derivative is unknown.
    pub fn deriv(&self) -> Self {
        Jet([self.0[1], self.0[2], self.0[3], f64::NAN])
    }

    /// g(f) given g and its first three derivatives at f.
    pub fn compose(&self, g: [f64; 4]) -> Self {
        let [_, a, b, c] = self.0;
        Jet([
            g[0],
            g[1] * a,
            g[2] * a * a + g[1] * b,
            g[3] * a * a * a + 3.0 * g[2] * a * b + g[1] * c,
        ])
    }

    /// 1/f.
    pub fn recip(&self) -> Self {
        let r = 1.0 / self.0[0];
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    /// √f, principal branch.
    pub fn sqrt(&self) -> Self {
        let v = self.0[0];
        let r = sqrt(v);
        self.compose([r, 0.5 / r, -0.25 / (r * v), 0.375 / (r * v * v)])
    }

    /// ln f.
    pub fn ln(&self) -> Self {
        let v = self.0[0];
        self.compose([ln(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v)])
    }

    /// e^f.
    pub fn exp(&self) -> Self {
        let e = exp(self.0[0]);
        self.compose([e, e, e, e])
    }

    /// sinh f.
    pub fn sinh(&self) -> Self {
        let (s, c) = (sinh(self.0[0]), cosh(self.0[0]));
        self.compose([s, c, s, c])
    }

    /// cosh f.
    pub fn cosh(&self) -> Self {
        let (s, c) = (sinh(self.0[0]), cosh(self.0[0]));
        self.compose([c, s, c, s])
    }

    /// f·f.
    pub fn sq(&self) -> Self {
        *self * *self
    }

    /// (f, df/dτ, d²f/dτ²) where f and τ are jets along the same parameter.
    pub fn wrt(&self, tau: &Jet) -> (f64, f64, f64) {
        let t1 = tau.0[1];
        let f1 = self.0[1] / t1;
        let f2 = (self.0[2] - f1 * tau.0[2]) / (t1 * t1);
        (self.0[0], f1, f2)
    }
}

impl From<f64> for Jet {
    fn from(c: f64) -> Self {
        Jet::constant(c)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet(core::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet(core::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|v| -v))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Jet([
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * a1 * b1 + a0 * b2,
            a3 * b0 + 3.0 * (a2 * b1 + a1 * b2) + a0 * b3,
        ])
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        let mut r = self;
        r.0[0] += c;
        r
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, c: f64) -> Jet {
        self + (-c)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        Jet(self.0.map(|v| v * c))
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, c: f64) -> Jet {
        Jet(self.0.map(|v| v / c))
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, j: Jet) -> Jet {
        j + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, j: Jet) -> Jet {
        -j + self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j * self
    }
}

impl Div<Jet> for f64 {
    type Output = Jet;
    fn div(self, j: Jet) -> Jet {
        j.recip() * self
    }
}
