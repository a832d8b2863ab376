//! The Cauchy problem for H(x) = d/dx ln det(I − ξK_θ) on [0, x], its
//! first integral, the sibling ODEs for R, S and R ± S, and the parity
//! determinants D^± rebuilt from a trajectory.
//!
//! The integrated equation is the explicit third-order form
//!
//! H‴ = H″²/H′ − 2H′² + 2(H² + H′)/sinh²x,
//!
//! written for the state (H, u, u′) with u = ln(−H′), so that H′ keeps full
//! relative precision when it becomes exponentially small. The first
//! integral
//!
//! (H″/(2H′) + coth x)² + H²/(sinh²x H′) + 2 coth x H + H′ = θ²
//!
//! is only monitored.

use crate::error::{domain, Error, Result};
use crate::fmath::{abs, cosh, exp, ln, sinh, sqrt, tanh};
use crate::jet::Jet;
use crate::kernels::{k_theta, phi_of_xi};
use crate::ode::{Dopri5, Tolerance};
use crate::quad::gauss_legendre;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Where the series start is placed.
pub const SERIES_START: f64 = 1e-3;

/// Initial value convention H(0⁺).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IcConvention {
    /// H(0⁺) = −ξ.
    MinusXi,
    /// H(0⁺) = −ξ K_θ(0), the value that matches the Fredholm determinant.
    #[default]
    DensityNormalized,
}

/// Integration parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    /// Kernel exponent θ, |θ| < 1.
    pub theta: f64,
    /// Thinning ξ ∈ [0, 1].
    pub xi: f64,
    /// Initial value convention.
    pub ic_convention: IcConvention,
    /// Last abscissa.
    pub x_max: f64,
    /// Relative and absolute local error tolerance.
    pub tol: f64,
    /// Spacing of the stored grid.
    pub grid_step: f64,
}

impl OdeConfig {
    /// Density-normalized configuration with default tolerance and grid.
    pub fn new(theta: f64, xi: f64, x_max: f64) -> Self {
        OdeConfig {
            theta,
            xi,
            ic_convention: IcConvention::DensityNormalized,
            x_max,
            tol: 1e-12,
            grid_step: 0.01,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(abs(self.theta) < 1.0) {
            return Err(domain(format!(
                "theta must satisfy |theta| < 1, got {}",
                self.theta
            )));
        }
        if !(0.0..=1.0).contains(&self.xi) {
            return Err(domain(format!("xi must lie in [0, 1], got {}", self.xi)));
        }
        if !(self.x_max > SERIES_START) || !self.x_max.is_finite() {
            return Err(domain(format!(
                "x_max must exceed {SERIES_START}, got {}",
                self.x_max
            )));
        }
        if !(self.tol > 0.0) || !(self.grid_step > 0.0) {
            return Err(domain("tol and grid_step must be positive"));
        }
        Ok(())
    }

    /// H(0⁺) under the configured convention.
    pub fn h0(&self) -> Result<f64> {
        Ok(match self.ic_convention {
            IcConvention::MinusXi => -self.xi,
            IcConvention::DensityNormalized => -self.xi * k_theta(self.theta, 0.0)?,
        })
    }
}

/// A solution of the Cauchy problem on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyTrajectory {
    /// θ used.
    pub theta: f64,
    /// ξ used.
    pub xi: f64,
    /// H(0⁺).
    pub h0: f64,
    /// Grid, starting at the series point [`SERIES_START`].
    pub x: Vec<f64>,
    /// H.
    pub h: Vec<f64>,
    /// H′.
    pub hp: Vec<f64>,
    /// H″.
    pub hpp: Vec<f64>,
    /// H‴ from the equation.
    pub hppp: Vec<f64>,
    /// First-integral residual per point.
    pub hazzidakis: Vec<f64>,
    // (H, ln(−H′), d ln(−H′)/dx) per point, for re-integration
    state: Vec<[f64; 3]>,
    tol: f64,
}

/// Taylor coefficients c_0..c_9 of H at x = 0 with H(0) = h0.
///
/// Regularity at the origin forces c_1 = −h0² and c_2 = h0³; the rest
/// follow order by order.
pub fn series_coefficients(theta: f64, h0: f64) -> [f64; 10] {
    let t2 = theta * theta;
    let t4 = t2 * t2;
    let t6 = t4 * t2;
    let t8 = t4 * t4;
    let a = h0;
    let a2 = a * a;
    let a3 = a2 * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let a8 = a4 * a4;
    [
        a,
        -a2,
        a3,
        -a2 * (9.0 * a2 + t2 - 1.0) / 9.0,
        a3 * (36.0 * a2 + 5.0 * t2 - 5.0) / 36.0,
        -a2 * (450.0 * a4 + 75.0 * a2 * t2 - 75.0 * a2 + 4.0 * t4 - 10.0 * t2 + 6.0) / 450.0,
        a3 * (2700.0 * a4 + 525.0 * a2 * t2 - 525.0 * a2 + 28.0 * t4 - 70.0 * t2 + 42.0) / 2700.0,
        -a2 * (396_900.0 * a6 + 88_200.0 * a4 * t2 - 88_200.0 * a4 + 5929.0 * a2 * t4
            - 14_210.0 * a2 * t2
            + 8281.0 * a2
            + 180.0 * t6
            - 840.0 * t4
            + 1260.0 * t2
            - 600.0)
            / 396_900.0,
        a3 * (1_587_600.0 * a6 + 396_900.0 * a4 * t2 - 396_900.0 * a4 + 32_193.0 * a2 * t4
            - 74_970.0 * a2 * t2
            + 42_777.0 * a2
            + 761.0 * t6
            - 3486.0 * t4
            + 5229.0 * t2
            - 2504.0)
            / 1_587_600.0,
        -a2 * (14_288_400.0 * a8 + 3_969_000.0 * a6 * t2 - 3_969_000.0 * a6 + 377_055.0 * a4 * t4
            - 859_950.0 * a4 * t2
            + 482_895.0 * a4
            + 13_490.0 * a2 * t6
            - 55_440.0 * a2 * t4
            + 75_810.0 * a2 * t2
            - 33_860.0 * a2
            + 224.0 * t8
            - 1680.0 * t6
            + 4704.0 * t4
            - 5600.0 * t2
            + 2352.0)
            / 14_288_400.0,
    ]
}

/// (H, H′, H″) from the series at small x.
fn series_eval(c: &[f64; 10], x: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (k, &ck) in c.iter().enumerate().rev() {
        let kf = k as f64;
        out[0] = out[0] * x + ck;
        if k >= 1 {
            out[1] = out[1] * x + kf * ck;
        }
        if k >= 2 {
            out[2] = out[2] * x + kf * (kf - 1.0) * ck;
        }
    }
    out
}

fn rhs(x: f64, y: &[f64; 3]) -> [f64; 3] {
    let [h, u, v] = *y;
    let e = exp(u);
    let sh = sinh(x);
    [-e, v, 2.0 * e + 2.0 * (1.0 - h * h * exp(-u)) / (sh * sh)]
}

/// H‴ recovered from the state.
fn third_derivative(x: f64, y: &[f64; 3]) -> f64 {
    let d = rhs(x, y);
    -exp(y[1]) * (d[2] + y[2] * y[2])
}

/// First-integral residual from the state; no division by H′.
fn hazzidakis_from_state(x: f64, y: &[f64; 3], theta: f64) -> f64 {
    let [h, u, v] = *y;
    let sh = sinh(x);
    let cth = 1.0 / tanh(x);
    let a = 0.5 * v + cth;
    a * a - h * h * exp(-u) / (sh * sh) + 2.0 * cth * h - exp(u) - theta * theta
}

/// (H″/(2H′) + coth x)² + H²/(sinh²x H′) + 2 coth x H + H′ − θ².
pub fn hazzidakis_residual(x: f64, h: f64, hp: f64, hpp: f64, theta: f64) -> Result<f64> {
    if hp == 0.0 || !(x > 0.0) {
        return Err(domain(format!(
            "first integral undefined at x = {x}, H' = {hp}"
        )));
    }
    let sh = sinh(x);
    let cth = 1.0 / tanh(x);
    let a = hpp / (2.0 * hp) + cth;
    Ok(a * a + h * h / (sh * sh * hp) + 2.0 * cth * h + hp - theta * theta)
}

fn tolerance(tol: f64) -> Tolerance {
    Tolerance {
        rtol: tol,
        atol: tol,
        max_step: 0.25,
    }
}

/// Integrate the Cauchy problem from the series start to `cfg.x_max`.
pub fn integrate_h(cfg: &OdeConfig) -> Result<CauchyTrajectory> {
    cfg.validate()?;
    let h0 = cfg.h0()?;
    let theta = cfg.theta;
    let mut tr = CauchyTrajectory {
        theta,
        xi: cfg.xi,
        h0,
        x: Vec::new(),
        h: Vec::new(),
        hp: Vec::new(),
        hpp: Vec::new(),
        hppp: Vec::new(),
        hazzidakis: Vec::new(),
        state: Vec::new(),
        tol: cfg.tol,
    };
    let n_grid = libm::ceil((cfg.x_max - 1e-12) / cfg.grid_step) as usize;
    let mut grid = Vec::with_capacity(n_grid + 1);
    grid.push(SERIES_START);
    for k in 1..=n_grid {
        let x = (k as f64 * cfg.grid_step).min(cfg.x_max);
        if x > SERIES_START {
            grid.push(x);
        }
    }
    if h0 == 0.0 {
        // ξ = 0: the determinant is identically one.
        for &x in &grid {
            tr.push_zero(x);
        }
        return Ok(tr);
    }
    let c = series_coefficients(theta, h0);
    let [hs, hps, hpps] = series_eval(&c, SERIES_START);
    let y0 = [hs, ln(-hps), hpps / hps];
    let mut ode = Dopri5::new(SERIES_START, y0, 1e-4, tolerance(cfg.tol));
    let mut f = rhs;
    let limit = (1e3 * cfg.tol).max(1e-8);
    for &x in &grid {
        ode.advance_to(&mut f, x)?;
        let y = *ode.y();
        let res = hazzidakis_from_state(x, &y, theta);
        if !(abs(res) <= limit) {
            return Err(Error::Integration {
                x,
                reason: format!("first-integral residual {res:e} exceeds {limit:e}"),
            });
        }
        if 0.5 * y[2] + 1.0 / tanh(x) <= 0.0 {
            return Err(Error::Branch {
                at: x,
                reason: String::from("H''/(2H') + coth x changed sign"),
            });
        }
        tr.push_state(x, y, res);
    }
    Ok(tr)
}

impl CauchyTrajectory {
    fn push_zero(&mut self, x: f64) {
        self.x.push(x);
        self.h.push(0.0);
        self.hp.push(0.0);
        self.hpp.push(0.0);
        self.hppp.push(0.0);
        self.hazzidakis.push(0.0);
        self.state.push([0.0, f64::NEG_INFINITY, 0.0]);
    }

    fn push_state(&mut self, x: f64, y: [f64; 3], res: f64) {
        let e = exp(y[1]);
        self.x.push(x);
        self.h.push(y[0]);
        self.hp.push(-e);
        self.hpp.push(-e * y[2]);
        self.hppp.push(third_derivative(x, &y));
        self.hazzidakis.push(res);
        self.state.push(y);
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.x.len()
    }

    /// `true` when the grid is empty.
    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Last grid abscissa.
    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap_or(&0.0)
    }

    /// `true` for the ξ = 0 bypass.
    pub fn is_trivial(&self) -> bool {
        self.h0 == 0.0
    }

    /// Jet (H, H′, H″, H‴) at grid point i.
    pub fn jet(&self, i: usize) -> Jet {
        Jet::new(self.h[i], self.hp[i], self.hpp[i], self.hppp[i])
    }

    /// S(x) = √(−H′) at grid point i.
    pub fn s(&self, i: usize) -> f64 {
        sqrt(-self.hp[i])
    }

    /// Largest |first-integral residual|.
    pub fn max_hazzidakis(&self) -> f64 {
        self.hazzidakis.iter().fold(0.0, |m, r| m.max(abs(*r)))
    }

    /// (H, H′, H″, H‴) at any x in (0, x_max], re-integrating from the
    /// nearest grid point to the left (or the series below the grid).
    pub fn eval(&self, x: f64) -> Result<[f64; 4]> {
        if !(x > 0.0) || x > self.x_max() * (1.0 + 1e-14) {
            return Err(domain(format!("x = {x} outside (0, {}]", self.x_max())));
        }
        if self.is_trivial() {
            return Ok([0.0; 4]);
        }
        if x <= SERIES_START {
            let c = series_coefficients(self.theta, self.h0);
            let [h, hp, hpp] = series_eval(&c, x);
            let mut h3 = 0.0;
            for k in (3..10).rev() {
                let kf = k as f64;
                h3 = h3 * x + kf * (kf - 1.0) * (kf - 2.0) * c[k];
            }
            return Ok([h, hp, hpp, h3]);
        }
        let i = self.x.partition_point(|&g| g <= x).saturating_sub(1);
        let mut y = self.state[i];
        if x > self.x[i] {
            let mut ode = Dopri5::new(self.x[i], y, 1e-3, tolerance(self.tol));
            ode.advance_to(&mut rhs, x)?;
            y = *ode.y();
        }
        let e = exp(y[1]);
        Ok([y[0], -e, -e * y[2], third_derivative(x, &y)])
    }

    /// ∫ from 0 to each grid point of f(H, S) with its first two x-derivatives
    /// supplied per point, by the two-point quintic Hermite rule.
    fn cumulative(&self, f: impl Fn(&[f64; 4], f64) -> [f64; 3]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        // head [0, SERIES_START] from the series
        let c = series_coefficients(self.theta, self.h0);
        let head = gauss_legendre(8, 0.0, SERIES_START)
            .map(|d| {
                d.integrate(|x| {
                    let [h, hp, _] = series_eval(&c, x);
                    f(&[h, hp, 0.0, 0.0], x)[0]
                })
            })
            .unwrap_or(0.0);
        let vals: Vec<[f64; 3]> = (0..self.len())
            .map(|i| {
                f(
                    &[self.h[i], self.hp[i], self.hpp[i], self.hppp[i]],
                    self.x[i],
                )
            })
            .collect();
        let mut acc = head;
        out.push(acc);
        for i in 1..self.len() {
            let dx = self.x[i] - self.x[i - 1];
            let (a, b) = (vals[i - 1], vals[i]);
            acc += 0.5 * dx * (a[0] + b[0])
                + dx * dx / 10.0 * (a[1] - b[1])
                + dx * dx * dx / 120.0 * (a[2] + b[2]);
            out.push(acc);
        }
        out
    }
}

/// Sign selector for the parity determinants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// D⁺ (even part).
    Plus,
    /// D⁻ (odd part).
    Minus,
}

/// ln D^±(ℓ) = ∫₀^ℓ (H ∓ √(−H′))/2 dx at 0 and at every grid point.
pub fn log_det_from_h(tr: &CauchyTrajectory, sign: Sign) -> Result<Vec<(f64, f64)>> {
    if tr.hp.iter().any(|&v| v > 0.0) {
        return Err(Error::Branch {
            at: 0.0,
            reason: String::from("H' > 0 on the trajectory"),
        });
    }
    let sg = match sign {
        Sign::Plus => -1.0,
        Sign::Minus => 1.0,
    };
    let trivial = tr.is_trivial();
    let vals = tr.cumulative(|d, _x| {
        let [h, hp, hpp, hppp] = *d;
        if trivial {
            return [0.0; 3];
        }
        // S = √(−H′), S′ = −H″/(2S), S″ = −(H‴ + 2S′²)/(2S)
        let s = sqrt(-hp);
        let s1 = -hpp / (2.0 * s);
        let s2 = -(hppp + 2.0 * s1 * s1) / (2.0 * s);
        [
            0.5 * (h + sg * s),
            0.5 * (hp + sg * s1),
            0.5 * (hpp + sg * s2),
        ]
    });
    let mut out = Vec::with_capacity(tr.len() + 1);
    out.push((0.0, 0.0));
    out.extend(tr.x.iter().copied().zip(vals));
    Ok(out)
}

/// D^±(ℓ) at 0 and at every grid point.
pub fn det_from_h(tr: &CauchyTrajectory, sign: Sign) -> Result<Vec<(f64, f64)>> {
    Ok(log_det_from_h(tr, sign)?
        .into_iter()
        .map(|(x, l)| (x, exp(l)))
        .collect())
}

/// ln D^± at a single ℓ ≤ x_max, interpolating inside the last grid step by
/// Gauss–Legendre on the re-integrated solution.
pub fn log_det_at(tr: &CauchyTrajectory, sign: Sign, ell: f64) -> Result<f64> {
    if ell == 0.0 || tr.is_trivial() {
        return Ok(0.0);
    }
    let table = log_det_from_h(tr, sign)?;
    let i = table.partition_point(|&(x, _)| x <= ell).saturating_sub(1);
    let (x0, l0) = table[i];
    if ell == x0 {
        return Ok(l0);
    }
    let sg = match sign {
        Sign::Plus => -1.0,
        Sign::Minus => 1.0,
    };
    let d = gauss_legendre(10, x0, ell)?;
    let mut acc = 0.0;
    for (&x, &w) in d.nodes.iter().zip(&d.weights) {
        let [h, hp, _, _] = tr.eval(x)?;
        acc += w * 0.5 * (h + sg * sqrt(-hp));
    }
    Ok(l0 + acc)
}

/// κ = −lim H, from the last grid point with the known approach to the
/// limit removed: H − A ∝ e^{−2(1−φ)x} for ξ < 1, H − a ≈ 1/(x + c) at ξ = 1.
pub fn kappa_from_trajectory(tr: &CauchyTrajectory) -> Result<f64> {
    if tr.is_trivial() {
        return Ok(0.0);
    }
    let x = tr.x_max();
    if x < 20.0 {
        return Err(Error::Numeric(format!(
            "kappa extrapolation needs x_max >= 20, got {x}"
        )));
    }
    let i = tr.len() - 1;
    let (h, hp) = (tr.h[i], tr.hp[i]);
    let phi = phi_of_xi(tr.xi, abs(tr.theta))?;
    let limit = if 1.0 - phi < 1e-12 {
        h - sqrt(-hp)
    } else {
        h + hp / (2.0 * (1.0 - phi))
    };
    Ok(-limit)
}

/// Which sibling equation to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiblingKind {
    /// Second-order equation for σ = sinh(2T) S.
    SOde,
    /// Second-order equation for R alone.
    ROde,
    /// Equation for μ = sinh(2T)(R ± S); `plus` selects the sign.
    MuOde {
        /// `true` for R + S.
        plus: bool,
    },
    /// First-order relation ρ′² − σ′² = 4ρ² − 4θ²σ².
    SumOfSquares,
}

/// Jets in T = x/2 of R(T) = −H(2T) and S(T) = √(−H′(2T)).
pub fn rs_jets(h: Jet) -> (Jet, Jet) {
    let scale = |j: Jet| Jet::new(j.0[0], 2.0 * j.0[1], 4.0 * j.0[2], 8.0 * j.0[3]);
    let r = scale(-h);
    let s = scale(-h.deriv()).sqrt();
    (r, s)
}

/// |Σ terms| / max |term| of the chosen sibling equation at one point.
pub fn sibling_residual_at(kind: SiblingKind, x: f64, h: Jet, theta: f64) -> Result<f64> {
    if h.d1() >= 0.0 {
        return Err(Error::Branch {
            at: x,
            reason: String::from("S is not real (H' >= 0)"),
        });
    }
    let t = 0.5 * x;
    let (r, s) = rs_jets(h);
    let tj = Jet::var(t) * 2.0;
    let sh = tj.sinh();
    let a = 2.0 * t;
    let cth = cosh(a) / sinh(a);
    let shv = sinh(a);
    let th2 = theta * theta;
    let terms: Vec<f64> = match kind {
        SiblingKind::SumOfSquares => {
            let rho = sh * r;
            let sig = sh * s;
            alloc::vec![
                rho.d1() * rho.d1(),
                -sig.d1() * sig.d1(),
                -4.0 * rho.v() * rho.v(),
                4.0 * th2 * sig.v() * sig.v(),
            ]
        }
        SiblingKind::ROde => {
            let lhs = r.d2() + 4.0 * cth * r.d1();
            let (r0, r1) = (r.v(), r.d1());
            alloc::vec![
                lhs * lhs,
                -8.0 * r1 * r1 * r1,
                -32.0 * cth * r0 * r1 * r1,
                -16.0 * th2 * r1 * r1,
                32.0 * (1.0 - cth * cth) * r0 * r0 * r1,
            ]
        }
        SiblingKind::SOde => {
            let sig = sh * s;
            let (g, g1, g2) = (sig.v(), sig.d1(), sig.d2());
            let lhs = g2 + 8.0 * g * g * g - 4.0 * th2 * g;
            let k = 16.0 * cth * cth * g * g;
            alloc::vec![
                lhs * lhs,
                -k * g1 * g1,
                -4.0 * k * g * g * g * g,
                4.0 * k * th2 * g * g
            ]
        }
        SiblingKind::MuOde { plus } => {
            let mu = if plus { sh * (r + s) } else { sh * (r - s) };
            let (m, m1, m2) = (mu.v(), mu.d1(), mu.d2());
            let lhs = m2 - 2.0 * cth * m1;
            alloc::vec![
                lhs * lhs,
                -4.0 * m1 * m1 * m1 / shv,
                4.0 * (1.0 - th2 - cth * cth) * m1 * m1,
                16.0 * cth / shv * m * m1 * m1,
                16.0 * th2 * cosh(a) / shv * m * m1,
                -16.0 / shv * m * m * m1,
                -16.0 * th2 * m * m,
            ]
        }
    };
    let sum: f64 = terms.iter().sum();
    let scale = terms.iter().fold(0.0f64, |acc, v| acc.max(abs(*v)));
    Ok(if scale == 0.0 { 0.0 } else { abs(sum) / scale })
}

/// Largest scaled sibling residual over grid points with x in [x_lo, x_hi].
pub fn siblings_residual(
    kind: SiblingKind,
    tr: &CauchyTrajectory,
    x_lo: f64,
    x_hi: f64,
) -> Result<f64> {
    if tr.is_trivial() {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for i in 0..tr.len() {
        let x = tr.x[i];
        if x < x_lo || x > x_hi {
            continue;
        }
        worst = worst.max(sibling_residual_at(kind, x, tr.jet(i), tr.theta)?);
    }
    Ok(worst)
}
