//! Painlevé VI objects attached to a persistence trajectory: residuals of
//! the rational equation, its sigma form and the Chazy form, Okamoto's
//! Hamiltonian and Lagrangian, the quadratic folding transformation, and the
//! curvature dictionary of the associated Bonnet surface.
//!
//! Everything is evaluated along a numerically integrated trajectory. The
//! maps x ↦ s, t and H ↦ h, q, Q, g are pushed through [`Jet`]s, so the
//! derivatives entering each residual are exact up to rounding.
//!
//! Conventions (ν = 1): s = (1 + coth x)/2 ∈ (1, ∞), h(s) = −H(x)/2, so that
//! dh/ds = H′ sinh²x = −g² with g = sinh x · √(−H′).

use crate::error::{domain, Error, Result};
use crate::fmath::{abs, exp, expm1, sinh, sqrt, tanh, PI};
use crate::jet::Jet;
use crate::resolvent_ode::CauchyTrajectory;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Signed monodromy exponents ⟨θα, θβ, θγ, θδ⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monodromy {
    /// θα (at s = ∞).
    pub theta_a: f64,
    /// θβ (at s = 0).
    pub theta_b: f64,
    /// θγ (at s = 1).
    pub theta_c: f64,
    /// θδ (at s = t).
    pub theta_d: f64,
}

/// Coefficients [α, β, γ, δ] of the rational equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PviCoefficients {
    /// α.
    pub alpha: f64,
    /// β.
    pub beta: f64,
    /// γ.
    pub gamma: f64,
    /// δ.
    pub delta: f64,
}

/// A sample (t, Q, dQ/dt, d²Q/dt²) of a solution of the rational equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PviPoint {
    /// Independent variable.
    pub t: f64,
    /// Position.
    pub q: f64,
    /// dQ/dt.
    pub qp: f64,
    /// d²Q/dt².
    pub qpp: f64,
}

/// A point (s, q, p) of Okamoto's Hamiltonian system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianPoint {
    /// Independent variable.
    pub s: f64,
    /// Position.
    pub q: f64,
    /// Impulsion.
    pub p: f64,
}

impl Monodromy {
    /// From the four exponents.
    pub const fn new(theta_a: f64, theta_b: f64, theta_c: f64, theta_d: f64) -> Self {
        Monodromy {
            theta_a,
            theta_b,
            theta_c,
            theta_d,
        }
    }

    /// Θ from θα + θβ + 2Θ + θγ + θδ = 1.
    pub fn big_theta(&self) -> f64 {
        0.5 * (1.0 - self.theta_a - self.theta_b - self.theta_c - self.theta_d)
    }

    /// [θα²/2, −θβ²/2, θγ²/2, (1 − θδ²)/2].
    pub fn coefficients(&self) -> PviCoefficients {
        PviCoefficients {
            alpha: 0.5 * self.theta_a * self.theta_a,
            beta: -0.5 * self.theta_b * self.theta_b,
            gamma: 0.5 * self.theta_c * self.theta_c,
            delta: 0.5 * (1.0 - self.theta_d * self.theta_d),
        }
    }

    /// The exchange θα ↔ θδ, θβ ↔ θγ.
    pub fn swap_ad(&self) -> Self {
        Monodromy::new(self.theta_d, self.theta_c, self.theta_b, self.theta_a)
    }

    /// Shift A of the sigma function: 4A = −θα² + (θδ − 1)² + 2(θβ + θγ)(θδ − 1).
    pub fn shift_a(&self) -> f64 {
        let d1 = self.theta_d - 1.0;
        0.25 * (-self.theta_a * self.theta_a + d1 * d1 + 2.0 * (self.theta_b + self.theta_c) * d1)
    }

    /// Shift B: 8B = θα² − θβ² + θγ² − (θδ − 1)² − 4θβ(θδ − 1).
    pub fn shift_b(&self) -> f64 {
        let d1 = self.theta_d - 1.0;
        0.125
            * (self.theta_a * self.theta_a - self.theta_b * self.theta_b
                + self.theta_c * self.theta_c
                - d1 * d1
                - 4.0 * self.theta_b * d1)
    }
}

impl PviCoefficients {
    /// (θα², θβ², θγ², θδ²) = (2α, −2β, 2γ, 1 − 2δ).
    pub fn squared_exponents(&self) -> [f64; 4] {
        [
            2.0 * self.alpha,
            -2.0 * self.beta,
            2.0 * self.gamma,
            1.0 - 2.0 * self.delta,
        ]
    }
}

/// Exponents {θ, 0, 0, 1 − θ} of the set-i system attached to K_θ.
pub fn set_i(theta: f64) -> Monodromy {
    Monodromy::new(theta, 0.0, 0.0, 1.0 - theta)
}

/// Exponents of the set-ii system: coefficients [0, −θ²/2, θ²/2, 0].
pub fn set_ii(theta: f64) -> Monodromy {
    Monodromy::new(0.0, theta, theta, 1.0)
}

/// Q″ minus the right-hand side of P_VI.
pub fn pvi_residual(pt: &PviPoint, c: &PviCoefficients) -> Result<f64> {
    let PviPoint { t, q, qp, qpp } = *pt;
    if t == 0.0 || t == 1.0 || q == 0.0 || q == 1.0 || q == t {
        return Err(domain(format!("singular point t = {t}, Q = {q}")));
    }
    let rhs = 0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / (q - t)) * qp * qp
        - (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (q - t)) * qp
        + q * (q - 1.0) * (q - t) / (t * t * (t - 1.0) * (t - 1.0))
            * (c.alpha
                + c.beta * t / (q * q)
                + c.gamma * (t - 1.0) / ((q - 1.0) * (q - 1.0))
                + c.delta * t * (t - 1.0) / ((q - t) * (q - t)));
    Ok(qpp - rhs)
}

/// h′(s(s−1)h″)² + (h′² − 2h′(sh′ − h) + b₁b₂b₃b₄)² − Π(h′ + b_j²).
pub fn sigma_residual(s: f64, h: f64, hp: f64, hpp: f64, b: [f64; 4]) -> f64 {
    let a = s * (s - 1.0) * hpp;
    let prod_b = b[0] * b[1] * b[2] * b[3];
    let m = hp * hp - 2.0 * hp * (s * hp - h) + prod_b;
    let prod: f64 = b.iter().map(|bj| hp + bj * bj).product();
    hp * a * a + m * m - prod
}

/// b-values (0, θ, 0, 0) for which the sigma form reduces to the Bonnet case.
pub fn bonnet_b(theta: f64) -> [f64; 4] {
    [0.0, theta, 0.0, 0.0]
}

/// (s(s−1)h″)² + 4h′(sh′ − h)((s−1)h′ − h) − θ²h′², the Bonnet sigma form.
pub fn bonnet_sigma_residual(s: f64, h: f64, hp: f64, hpp: f64, theta: f64) -> f64 {
    let a = s * (s - 1.0) * hpp;
    a * a + 4.0 * hp * (s * hp - h) * ((s - 1.0) * hp - h) - theta * theta * hp * hp
}

/// The mirror {s, q, h} ↦ {1 − s, 1 − q, −h}.
pub fn mirror(s: f64, q: f64, h: f64) -> (f64, f64, f64) {
    (1.0 - s, 1.0 - q, -h)
}

fn check_hamiltonian_point(s: f64, q: f64) -> Result<()> {
    if s == 0.0 || s == 1.0 || q == 0.0 || q == 1.0 || q == s {
        Err(domain(format!(
            "singular Hamiltonian point s = {s}, q = {q}"
        )))
    } else {
        Ok(())
    }
}

fn bracket(s: f64, q: f64, m: &Monodromy) -> f64 {
    m.theta_b / q + m.theta_c / (q - 1.0) + (m.theta_d - 1.0) / (q - s)
}

/// Okamoto's H_VI(p, q, s).
pub fn hamiltonian(pt: &HamiltonianPoint, m: &Monodromy) -> Result<f64> {
    let HamiltonianPoint { s, q, p } = *pt;
    check_hamiltonian_point(s, q)?;
    let th = m.big_theta();
    Ok(q * (q - 1.0) * (q - s) / (s * (s - 1.0))
        * (p * p - p * bracket(s, q, m) + (m.theta_a + th) * th / (q * (q - 1.0))))
}

/// p from (q, dq/ds) on the equations of motion.
pub fn impulsion(s: f64, q: f64, qp: f64, m: &Monodromy) -> Result<f64> {
    check_hamiltonian_point(s, q)?;
    Ok(0.5 * s * (s - 1.0) / (q * (q - 1.0) * (q - s)) * qp + 0.5 * bracket(s, q, m))
}

/// dq/ds = ∂H_VI/∂p.
pub fn velocity(pt: &HamiltonianPoint, m: &Monodromy) -> Result<f64> {
    let HamiltonianPoint { s, q, p } = *pt;
    check_hamiltonian_point(s, q)?;
    Ok(q * (q - 1.0) * (q - s) / (s * (s - 1.0)) * (2.0 * p - bracket(s, q, m)))
}

/// L = p dq/ds − H_VI with dq/ds from the equations of motion.
pub fn lagrangian(pt: &HamiltonianPoint, m: &Monodromy) -> Result<f64> {
    Ok(pt.p * velocity(pt, m)? - hamiltonian(pt, m)?)
}

/// L from (q, dq/ds), with p from [`impulsion`].
pub fn lagrangian_from_velocity(s: f64, q: f64, qp: f64, m: &Monodromy) -> Result<f64> {
    let p = impulsion(s, q, qp, m)?;
    lagrangian(&HamiltonianPoint { s, q, p }, m)
}

/// [θα² − (θβ + θγ + θδ − 1)²]/(4s(s−1)), the p-independent part of L.
/// It vanishes on the wall Θ = 0.
pub fn lagrangian_constant_term(s: f64, m: &Monodromy) -> f64 {
    let k = m.theta_b + m.theta_c + m.theta_d - 1.0;
    (m.theta_a * m.theta_a - k * k) / (4.0 * s * (s - 1.0))
}

/// `true` when |p| is below `tol`: the classical (Riccati) regime.
pub fn is_hypergeometric(p: f64, tol: f64) -> bool {
    abs(p) < tol
}

/// q = s − h/h′, the set-ii position.
pub fn q_from_h(s: f64, h: f64, hp: f64) -> Result<f64> {
    if hp == 0.0 {
        return Err(Error::Branch {
            at: s,
            reason: String::from("dh/ds = 0"),
        });
    }
    Ok(s - h / hp)
}

/// ¼ s²(s−1)² q′²/(q(q−1)(q−s)) − (θ²/4)(q−s)/(q(q−1)), the tau-function
/// expression of h in terms of the set-ii solution.
pub fn h_from_q(s: f64, q: f64, qp: f64, theta: f64) -> f64 {
    let ss = s * (s - 1.0);
    0.25 * ss * ss * qp * qp / (q * (q - 1.0) * (q - s))
        - 0.25 * theta * theta * (q - s) / (q * (q - 1.0))
}

/// Forward quadratic fold (P, Q, t) of {θα, θα, θδ, θδ} ↦ (p, q, s) of
/// {2θα, 0, 0, 2θδ}, with √t > 0.
pub fn fold_forward(pt: &HamiltonianPoint, theta_a: f64, theta_d: f64) -> Result<HamiltonianPoint> {
    let HamiltonianPoint {
        s: t,
        q: big_q,
        p: big_p,
    } = *pt;
    if !(t > 0.0) || big_q == 0.0 {
        return Err(Error::Branch {
            at: t,
            reason: String::from("fold needs t > 0 and Q != 0"),
        });
    }
    let r = sqrt(t);
    let den = big_q * big_q - t;
    if den == 0.0 {
        return Err(Error::Branch {
            at: t,
            reason: String::from("Q^2 = t"),
        });
    }
    Ok(HamiltonianPoint {
        s: 0.5 + 0.25 * (r + 1.0 / r),
        q: 0.5 + 0.25 * (r / big_q + big_q / r),
        p: 4.0 * r * big_q / den * (2.0 * big_p * big_q - (theta_a + theta_d - 0.5)),
    })
}

/// Inverse fold: given (p, q, s) and the chosen √t (one of the two roots of
/// √t + 1/√t = 4s − 2), return (P, Q, t). `plus` picks the root
/// Q = ((4q−2)√t + √disc)/2 of Q² − (4q−2)√t Q + t = 0.
pub fn fold_inverse(
    pt: &HamiltonianPoint,
    sqrt_t: f64,
    theta_a: f64,
    theta_d: f64,
    plus: bool,
) -> Result<HamiltonianPoint> {
    let HamiltonianPoint { s, q, p } = *pt;
    if !(sqrt_t > 0.0) {
        return Err(Error::Branch {
            at: s,
            reason: String::from("sqrt(t) must be positive"),
        });
    }
    let t = sqrt_t * sqrt_t;
    if abs(0.5 + 0.25 * (sqrt_t + 1.0 / sqrt_t) - s) > 1e-9 * abs(s).max(1.0) {
        return Err(domain(format!(
            "sqrt(t) = {sqrt_t} is not a preimage of s = {s}"
        )));
    }
    let bb = (4.0 * q - 2.0) * sqrt_t;
    let disc = bb * bb - 4.0 * t;
    if !(disc > 0.0) {
        return Err(Error::Branch {
            at: s,
            reason: format!("fold discriminant {disc:e} <= 0"),
        });
    }
    let big_q = 0.5 * (bb + if plus { sqrt(disc) } else { -sqrt(disc) });
    let two_pq = p * (big_q * big_q - t) / (4.0 * sqrt_t * big_q) + (theta_a + theta_d - 0.5);
    Ok(HamiltonianPoint {
        s: t,
        q: big_q,
        p: two_pq / (2.0 * big_q),
    })
}

/// √t < 1 with √t + 1/√t = 4s − 2, for s > 1.
pub fn small_sqrt_t(s: f64) -> Result<f64> {
    let a = 2.0 * s - 1.0;
    if !(a > 1.0) {
        return Err(domain(format!("need s > 1, got {s}")));
    }
    // a − √(a² − 1) = 1/(a + √(a² − 1))
    Ok(1.0 / (a + sqrt(a * a - 1.0)))
}

/// s(s−1)H_{2θα,0,0,2θδ}(p,q,s) − t(t−1)K/√t + (t−1)/(2√t)[PQ − (θα+θδ−½)(θδ−½)],
/// where K = H_{θα,θα,θδ,θδ}(P,Q,t). Vanishes on folded solutions.
pub fn fold_hamiltonian_defect(
    folded: &HamiltonianPoint,
    unfolded: &HamiltonianPoint,
    theta_a: f64,
    theta_d: f64,
) -> Result<f64> {
    let big = Monodromy::new(2.0 * theta_a, 0.0, 0.0, 2.0 * theta_d);
    let small = Monodromy::new(theta_a, theta_a, theta_d, theta_d);
    let s = folded.s;
    let t = unfolded.s;
    let r = sqrt(t);
    let lhs = s * (s - 1.0) * hamiltonian(folded, &big)?;
    let k = hamiltonian(unfolded, &small)?;
    let rhs = t * (t - 1.0) * k / r
        - (t - 1.0) / (2.0 * r)
            * (unfolded.p * unfolded.q - (theta_a + theta_d - 0.5) * (theta_d - 0.5));
    Ok(lhs - rhs)
}

/// C_VI residual (Bonnet instance) in rational form:
/// ½[g″ + (1/(2t) + 1/(t−1))g′ + (2g³ − θ²g)/(t(t−1)²)]²
/// − 2(1/(2t) − 1/(t−1))² g² [g′² + (g⁴ − θ²g²)/(t(t−1)²)].
pub fn chazy_residual(t: f64, g: f64, gp: f64, gpp: f64, theta: f64) -> Result<f64> {
    if t == 0.0 || t == 1.0 {
        return Err(domain(format!("C_VI is singular at t = {t}")));
    }
    let th2 = theta * theta;
    let w = t * (t - 1.0) * (t - 1.0);
    let l = gpp + (0.5 / t + 1.0 / (t - 1.0)) * gp + (2.0 * g * g * g - th2 * g) / w;
    let k = 0.5 / t - 1.0 / (t - 1.0);
    let r = 2.0 * k * k * g * g * (gp * gp + (g * g * g * g - th2 * g * g) / w);
    Ok(0.5 * l * l - r)
}

/// One mapped sample of a trajectory in the s variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaSample {
    /// ODE abscissa.
    pub x: f64,
    /// s(x) = (1 + coth x)/2.
    pub s: f64,
    /// h = −H/2.
    pub h: f64,
    /// dh/ds.
    pub hp: f64,
    /// d²h/ds².
    pub hpp: f64,
}

/// Jets along x of σ = s − 1 = 1/(e^{2x} − 1), h = −H/2 and h′ = dh/ds.
fn s_h_jets(x: f64, hj: Jet) -> (Jet, Jet, Jet) {
    let e = exp(2.0 * x);
    let sigma = Jet::new(expm1(2.0 * x), 2.0 * e, 4.0 * e, 8.0 * e).recip();
    let sh = Jet::var(x).sinh();
    let h = hj * -0.5;
    let hp = hj.deriv() * sh.sq();
    (sigma, h, hp)
}

fn sample_from_jets(x: f64, sigma: Jet, h: Jet) -> SigmaSample {
    let s = sigma + 1.0;
    let (hv, h1, h2) = h.wrt(&s);
    SigmaSample {
        x,
        s: s.v(),
        h: hv,
        hp: h1,
        hpp: h2,
    }
}

/// (s, h, dh/ds, d²h/ds²) along the trajectory on the branch s ∈ (1, ∞).
pub fn h_from_trajectory(tr: &CauchyTrajectory) -> Vec<SigmaSample> {
    (0..tr.len())
        .map(|i| {
            let (sigma, h, _) = s_h_jets(tr.x[i], tr.jet(i));
            sample_from_jets(tr.x[i], sigma, h)
        })
        .collect()
}

/// Set-i position and impulsion as jets along x, from (σ, h, h′).
///
/// Solves h = s(s−1)H_VI and h′ = −p²q(q−1) for {θ, 0, 0, 1−θ}. With
/// w = q − 1 and k = h − σh′ this is the quadratic
/// h′(h′ + θ²)w² + h′(2k + θ²)w + k² = 0, whose relevant root is taken in
/// cancellation-free form; then p = (k + h′w)/(θ w(1 + w)).
fn set_i_jets(sigma: Jet, h: Jet, hp: Jet, theta: f64) -> Result<(Jet, Jet)> {
    let th2 = theta * theta;
    let k = h - sigma * hp;
    let a = hp * (hp + th2);
    let b = hp * (k * 2.0 + th2);
    let c = k.sq();
    let disc = b.sq() - a * c * 4.0;
    if !(disc.v() > 0.0) {
        return Err(Error::Branch {
            at: sigma.v() + 1.0,
            reason: format!("set-i discriminant {:e}", disc.v()),
        });
    }
    let root = disc.sqrt();
    // w = (−b − √disc)/(2a) = 2c/(−b + √disc) when b < 0
    let w = if b.v() < 0.0 {
        c * 2.0 / (root - b)
    } else {
        (-b - root) / (a * 2.0)
    };
    let p = (k + hp * w) / (w * (w + 1.0) * theta);
    Ok((w + 1.0, p))
}

/// Jet of tanh(x/2).
fn tanh_half(x: f64) -> Jet {
    let th = tanh(0.5 * x);
    let d1 = 1.0 - th * th;
    (Jet::var(x) * 0.5).compose([th, d1, -2.0 * th * d1, d1 * (6.0 * th * th - 2.0)])
}

/// Set-i point (s, q, p) recovered pointwise from (s, h, h′) for θ > 0.
pub fn set_i_from_h(sigma: f64, h: f64, hp: f64, theta: f64) -> Result<HamiltonianPoint> {
    if !(theta > 0.0) {
        return Err(domain("set-i recovery needs theta > 0"));
    }
    let (q, p) = set_i_jets(
        Jet::constant(sigma),
        Jet::constant(h),
        Jet::constant(hp),
        theta,
    )?;
    Ok(HamiltonianPoint {
        s: 1.0 + sigma,
        q: q.v(),
        p: p.v(),
    })
}

/// Residual report of a mapped series.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ResidualSummary {
    /// Largest |residual| on the window.
    pub max_abs: f64,
    /// x where it occurred.
    pub at: f64,
    /// Number of points used.
    pub points: usize,
}

impl ResidualSummary {
    fn add(&mut self, x: f64, r: f64) {
        self.points += 1;
        if !(abs(r) <= self.max_abs) {
            self.max_abs = abs(r);
            self.at = x;
        }
    }
}

fn window_indices(tr: &CauchyTrajectory, x_lo: f64, x_hi: f64) -> impl Iterator<Item = usize> + '_ {
    (0..tr.len()).filter(move |&i| tr.x[i] >= x_lo && tr.x[i] <= x_hi)
}

/// Bonnet sigma-form residual of the mapped h over x ∈ [x_lo, x_hi].
pub fn sigma_residual_along(tr: &CauchyTrajectory, x_lo: f64, x_hi: f64) -> ResidualSummary {
    let mut out = ResidualSummary::default();
    for i in window_indices(tr, x_lo, x_hi) {
        let (sigma, h, _) = s_h_jets(tr.x[i], tr.jet(i));
        let smp = sample_from_jets(tr.x[i], sigma, h);
        out.add(
            smp.x,
            sigma_residual(smp.s, smp.h, smp.hp, smp.hpp, bonnet_b(tr.theta)),
        );
    }
    out
}

/// Set-ii q = s − h/h′ checked against P_VI [0, −θ²/2, θ²/2, 0] and the
/// tau-function expression for h. Returns (P_VI summary, tau summary).
pub fn set_ii_residuals(
    tr: &CauchyTrajectory,
    x_lo: f64,
    x_hi: f64,
) -> Result<(ResidualSummary, ResidualSummary)> {
    let coeffs = set_ii(tr.theta).coefficients();
    let mut pvi = ResidualSummary::default();
    let mut tau = ResidualSummary::default();
    for i in window_indices(tr, x_lo, x_hi) {
        let x = tr.x[i];
        let (sigma, h, hp) = s_h_jets(x, tr.jet(i));
        let s = sigma + 1.0;
        let q = s - h / hp;
        let (qv, q1, q2) = q.wrt(&s);
        pvi.add(
            x,
            pvi_residual(
                &PviPoint {
                    t: s.v(),
                    q: qv,
                    qp: q1,
                    qpp: q2,
                },
                &coeffs,
            )?,
        );
        tau.add(x, h.v() - h_from_q(s.v(), qv, q1, tr.theta));
    }
    Ok((pvi, tau))
}

/// Diagnostics of the set-i recovery and the double fold to [0, 0, 0, 0].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ManinReport {
    /// P_VI residual of the set-i q(s).
    pub set_i: ResidualSummary,
    /// h′ + p²q(q−1) along the set-i recovery.
    pub set_i_energy: ResidualSummary,
    /// P_VI residual of the quarter-side Q(t), t = tanh²(x/2).
    pub quarter: ResidualSummary,
    /// P_VI [0,0,0,0] residual of the doubly folded Q(T), T = coth²(x/2).
    pub manin: ResidualSummary,
    /// L_{0001}(T) dT/dt − 4 L_{¼⁴}(t).
    pub lagrangian_factor_four: ResidualSummary,
    /// L_i ds/dt − 2 L_{¼⁴}(t).
    pub lagrangian_factor_two: ResidualSummary,
    /// Folded Hamiltonian identity defect.
    pub hamiltonian_fold: ResidualSummary,
    /// 2PQ − g on the quarter side.
    pub metric_from_pq: ResidualSummary,
    /// min |Q − √t| on the quarter side.
    pub min_distance_sqrt_t: f64,
}

/// Set-i recovery, the inverse fold to {¼,¼,¼,¼} and the permuted second
/// fold to {0,0,0,1} at θ = ½, over x ∈ [x_lo, x_hi].
pub fn manin_verification_pipeline(
    tr: &CauchyTrajectory,
    x_lo: f64,
    x_hi: f64,
) -> Result<ManinReport> {
    if abs(tr.theta - 0.5) > 1e-15 {
        return Err(domain("the double fold needs theta = 1/2"));
    }
    if tr.is_trivial() {
        return Err(domain("the double fold needs xi > 0"));
    }
    let quarter_m = Monodromy::new(0.25, 0.25, 0.25, 0.25);
    let i_m = set_i(0.5);
    let manin_m = Monodromy::new(0.0, 0.0, 0.0, 1.0);
    let i_c = i_m.coefficients();
    let quarter_c = quarter_m.coefficients();
    let manin_c = manin_m.coefficients();
    let mut rep = ManinReport {
        min_distance_sqrt_t: f64::INFINITY,
        ..Default::default()
    };
    for i in window_indices(tr, x_lo, x_hi) {
        let x = tr.x[i];
        let (sigma, h, hp) = s_h_jets(x, tr.jet(i));
        let s = sigma + 1.0;
        let (q, p) = set_i_jets(sigma, h, hp, 0.5)?;
        let (qv, q1, q2) = q.wrt(&s);
        rep.set_i.add(
            x,
            pvi_residual(
                &PviPoint {
                    t: s.v(),
                    q: qv,
                    qp: q1,
                    qpp: q2,
                },
                &i_c,
            )?,
        );
        rep.set_i_energy
            .add(x, hp.v() + p.v() * p.v() * qv * (qv - 1.0));
        // inverse fold, √t = tanh(x/2)
        let rt = tanh_half(x);
        let t = rt.sq();
        let bb = (q * 4.0 - 2.0) * rt;
        let disc = bb.sq() - t * 4.0;
        if !(disc.v() > 0.0) {
            return Err(Error::Branch {
                at: x,
                reason: String::from("inverse fold discriminant <= 0"),
            });
        }
        let big_q = (bb + disc.sqrt()) * 0.5;
        let (qq, qq1, qq2) = big_q.wrt(&t);
        rep.quarter.add(
            x,
            pvi_residual(
                &PviPoint {
                    t: t.v(),
                    q: qq,
                    qp: qq1,
                    qpp: qq2,
                },
                &quarter_c,
            )?,
        );
        rep.min_distance_sqrt_t = rep.min_distance_sqrt_t.min(abs(qq - rt.v()));
        let big_p = impulsion(t.v(), qq, qq1, &quarter_m)?;
        let g = sinh(x) * sqrt(-tr.hp[i]);
        rep.metric_from_pq.add(x, 2.0 * big_p * qq - g);
        let folded = HamiltonianPoint {
            s: s.v(),
            q: qv,
            p: p.v(),
        };
        let unfolded = HamiltonianPoint {
            s: t.v(),
            q: qq,
            p: big_p,
        };
        rep.hamiltonian_fold
            .add(x, fold_hamiltonian_defect(&folded, &unfolded, 0.25, 0.25)?);
        // permutation s ↦ s/(s−1) = e^{2x}, q ↦ q/(q−1); second fold; permute back
        let qp = q / (q - 1.0);
        let rtp = Jet::var(x).exp();
        let s2 = (rtp + rtp.recip()) * 0.25 + 0.5;
        let q2b = (rtp / qp + qp / rtp) * 0.25 + 0.5;
        let big_t = s2 / (s2 - 1.0);
        let qm = q2b / (q2b - 1.0);
        let (mv, m1, m2) = qm.wrt(&big_t);
        rep.manin.add(
            x,
            pvi_residual(
                &PviPoint {
                    t: big_t.v(),
                    q: mv,
                    qp: m1,
                    qpp: m2,
                },
                &manin_c,
            )?,
        );
        let l_quarter = lagrangian_from_velocity(t.v(), qq, qq1, &quarter_m)?;
        let l_manin = lagrangian_from_velocity(big_t.v(), mv, m1, &manin_m)?;
        let l_i = lagrangian_from_velocity(s.v(), qv, q1, &i_m)?;
        rep.lagrangian_factor_four
            .add(x, l_manin * big_t.d1() / t.d1() - 4.0 * l_quarter);
        rep.lagrangian_factor_two
            .add(x, l_i * s.d1() / t.d1() - 2.0 * l_quarter);
    }
    Ok(rep)
}

/// Which square of the duplication variable the metric is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TBranch {
    /// t = tanh²(x/2) ∈ (0, 1).
    Tanh,
    /// t = coth²(x/2) ∈ (1, ∞).
    Coth,
}

/// (t, g, dg/dt, d²g/dt²) with g = sinh x · √(−H′), so dh/ds = −g².
pub fn metric_g(tr: &CauchyTrajectory, branch: TBranch) -> Result<Vec<[f64; 4]>> {
    let mut out = Vec::with_capacity(tr.len());
    for i in 0..tr.len() {
        let x = tr.x[i];
        let hj = tr.jet(i);
        if !(hj.d1() < 0.0) {
            return Err(Error::Branch {
                at: x,
                reason: String::from("H' >= 0, metric not real"),
            });
        }
        let g = Jet::var(x).sinh() * (-hj.deriv()).sqrt();
        let tj = match branch {
            TBranch::Tanh => tanh_half(x).sq(),
            TBranch::Coth => tanh_half(x).recip().sq(),
        };
        let (gv, g1, g2) = g.wrt(&tj);
        out.push([tj.v(), gv, g1, g2]);
    }
    Ok(out)
}

/// C_VI residual of the metric series over x ∈ [x_lo, x_hi].
pub fn chazy_residual_along(
    tr: &CauchyTrajectory,
    branch: TBranch,
    x_lo: f64,
    x_hi: f64,
) -> Result<ResidualSummary> {
    let series = metric_g(tr, branch)?;
    let mut out = ResidualSummary::default();
    for i in window_indices(tr, x_lo, x_hi) {
        let [t, g, g1, g2] = series[i];
        out.add(tr.x[i], chazy_residual(t, g, g1, g2, tr.theta)?);
    }
    Ok(out)
}

/// Transcendence diagnostics at θ > 0 over x ∈ [x_lo, x_hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranscendenceReport {
    /// min S(x) = √(−H′).
    pub min_s: f64,
    /// min |p| of the set-i impulsion.
    pub min_abs_p: f64,
    /// `true` when p keeps one sign on the window.
    pub p_keeps_sign: bool,
}

/// min S and the sign behaviour of the set-i impulsion on a window.
pub fn transcendence_diagnostics(
    tr: &CauchyTrajectory,
    x_lo: f64,
    x_hi: f64,
) -> Result<TranscendenceReport> {
    let mut rep = TranscendenceReport {
        min_s: f64::INFINITY,
        min_abs_p: f64::INFINITY,
        p_keeps_sign: true,
    };
    let mut sign = 0.0;
    for i in window_indices(tr, x_lo, x_hi) {
        rep.min_s = rep.min_s.min(tr.s(i));
        let (sigma, h, hp) = s_h_jets(tr.x[i], tr.jet(i));
        let pt = set_i_from_h(sigma.v(), h.v(), hp.v(), abs(tr.theta))?;
        rep.min_abs_p = rep.min_abs_p.min(abs(pt.p));
        let sg = if pt.p > 0.0 { 1.0 } else { -1.0 };
        if sign != 0.0 && sg != sign || pt.p == 0.0 {
            rep.p_keeps_sign = false;
        }
        sign = sg;
    }
    Ok(rep)
}

/// Curvature dictionary of the Bonnet surface and its Willmore energy.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    /// x grid.
    pub x: Vec<f64>,
    /// Mean curvature H.
    pub mean: Vec<f64>,
    /// Skew curvature L = √(−H′).
    pub skew: Vec<f64>,
    /// Gauss curvature K = H² − L².
    pub gauss: Vec<f64>,
    /// 2π ∫ L² dx over the grid (plus the series head).
    pub willmore_density: f64,
    /// 2π (H(0⁺) − H(x_max)).
    pub willmore_boundary: f64,
    /// 2π κ(m) − (1 − m²)/4 with κ = −H(x_max) and 1 − m² = ξ.
    pub willmore_printed: f64,
}

/// Per-point curvatures and the Willmore energy computed two ways, plus the
/// printed closed form for comparison.
pub fn geometry_report(tr: &CauchyTrajectory) -> GeometryReport {
    let n = tr.len();
    let skew: Vec<f64> = (0..n).map(|i| tr.s(i)).collect();
    let gauss = (0..n)
        .map(|i| tr.h[i] * tr.h[i] - skew[i] * skew[i])
        .collect();
    // ∫ −H′ with the Hermite rule on (−H′, −H″, −H‴); the head [0, x₀] is
    // H(0⁺) − H(x₀).
    let mut integral = if n > 0 { tr.h0 - tr.h[0] } else { 0.0 };
    for i in 1..n {
        let dx = tr.x[i] - tr.x[i - 1];
        let (a, b) = (i - 1, i);
        integral += -(0.5 * dx * (tr.hp[a] + tr.hp[b])
            + dx * dx / 10.0 * (tr.hpp[a] - tr.hpp[b])
            + dx * dx * dx / 120.0 * (tr.hppp[a] + tr.hppp[b]));
    }
    let h_end = if n > 0 { tr.h[n - 1] } else { 0.0 };
    GeometryReport {
        x: tr.x.clone(),
        mean: tr.h.clone(),
        skew,
        gauss,
        willmore_density: 2.0 * PI * integral,
        willmore_boundary: 2.0 * PI * (tr.h0 - h_end),
        willmore_printed: 2.0 * PI * (-h_end) - 0.25 * tr.xi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolvent_ode::{integrate_h, OdeConfig};

    fn traj(theta: f64, xi: f64, x_max: f64) -> CauchyTrajectory {
        integrate_h(&OdeConfig::new(theta, xi, x_max)).unwrap()
    }

    #[test]
    fn coefficient_round_trip_and_wall() {
        let m = Monodromy::new(0.3, -0.7, 0.2, 0.9);
        let sq = m.coefficients().squared_exponents();
        let e = [0.09, 0.49, 0.04, 0.81];
        for k in 0..4 {
            assert!(abs(sq[k] - e[k]) < 1e-15);
        }
        assert_eq!(Monodromy::new(0.25, 0.25, 0.25, 0.25).big_theta(), 0.0);
        assert_eq!(set_i(0.5).big_theta(), 0.0);
        assert_eq!(lagrangian_constant_term(3.0, &set_i(0.37)), 0.0);
        let c = set_ii(0.5).coefficients();
        assert_eq!(
            [c.alpha, c.beta, c.gamma, c.delta],
            [0.0, -0.125, 0.125, 0.0]
        );
    }

    #[test]
    fn trivial_solutions() {
        let zero = PviCoefficients {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 0.0,
        };
        let pt = PviPoint {
            t: 0.3,
            q: 2.5,
            qp: 0.0,
            qpp: 0.0,
        };
        assert_eq!(pvi_residual(&pt, &zero).unwrap(), 0.0);
        assert!(pvi_residual(
            &PviPoint {
                t: 0.3,
                q: 0.3,
                qp: 0.0,
                qpp: 0.0
            },
            &zero
        )
        .is_err());
        assert_eq!(sigma_residual(2.0, 0.0, 0.0, 0.0, bonnet_b(0.5)), 0.0);
        assert_eq!(chazy_residual(0.4, 0.0, 0.0, 0.0, 0.5).unwrap(), 0.0);
        assert_eq!(q_from_h(1.7, 0.0, -0.3).unwrap(), 1.7);
    }

    #[test]
    fn sqrt_t_is_algebraic_for_pairwise_equal_exponents() {
        // Q = √t solves P_VI for {a, a, d, d} whenever the exponents pair up
        for (a, d) in [(0.25, 0.25), (0.1, 0.4), (0.0, 0.5)] {
            let c = Monodromy::new(a, a, d, d).coefficients();
            for t in [0.2, 0.5, 0.8, 2.0] {
                let r = sqrt(t);
                let pt = PviPoint {
                    t,
                    q: r,
                    qp: 0.5 / r,
                    qpp: -0.25 / (r * t),
                };
                assert!(
                    abs(pvi_residual(&pt, &c).unwrap()) < 1e-13,
                    "a={a} d={d} t={t}"
                );
            }
        }
    }

    #[test]
    fn sigma_form_generic_matches_bonnet_form() {
        for (s, h, hp, hpp, th) in [(1.7, 0.2, -0.4, 0.3, 0.5), (3.2, -0.1, -2.0, 1.1, 0.2)] {
            let g = sigma_residual(s, h, hp, hpp, bonnet_b(th));
            let b = bonnet_sigma_residual(s, h, hp, hpp, th);
            assert!(abs(g - hp * b) < 1e-13);
            // mirror invariance of the Bonnet form
            let (ms, _, mh) = mirror(s, 0.0, h);
            let mb = bonnet_sigma_residual(ms, mh, hp, -hpp, th);
            assert!(abs(mb - b) < 1e-13);
        }
    }

    #[test]
    fn fold_round_trip() {
        let start = HamiltonianPoint {
            s: 0.36,
            q: 0.9,
            p: -0.7,
        };
        let f = fold_forward(&start, 0.25, 0.25).unwrap();
        let r = sqrt(start.s);
        assert!(abs(f.s - (0.5 + 0.25 * (r + 1.0 / r))) < 1e-15);
        let back_plus = fold_inverse(&f, r, 0.25, 0.25, true).unwrap();
        let back_minus = fold_inverse(&f, r, 0.25, 0.25, false).unwrap();
        let back = if abs(back_plus.q - start.q) < abs(back_minus.q - start.q) {
            back_plus
        } else {
            back_minus
        };
        assert!(abs(back.s - start.s) < 1e-14);
        assert!(abs(back.q - start.q) < 1e-12);
        assert!(abs(back.p - start.p) < 1e-12);
        // t = 1 maps to s = 1
        let one = fold_forward(
            &HamiltonianPoint {
                s: 1.0,
                q: 2.0,
                p: 0.1,
            },
            0.25,
            0.25,
        )
        .unwrap();
        assert_eq!(one.s, 1.0);
        // coth duplication: t = coth²(x/2) gives s = (1 + coth x)/2
        let x = 0.8;
        let c = 1.0 / tanh(0.5 * x);
        let f = fold_forward(
            &HamiltonianPoint {
                s: c * c,
                q: 2.0,
                p: 0.1,
            },
            0.25,
            0.25,
        )
        .unwrap();
        assert!(abs(f.s - 0.5 * (1.0 + 1.0 / tanh(x))) < 1e-14);
        assert!(abs(small_sqrt_t(f.s).unwrap() - tanh(0.5 * x)) < 1e-14);
    }

    #[test]
    fn mapped_h_satisfies_sigma_form() {
        let tr = traj(0.5, 0.5, 8.0);
        let r = sigma_residual_along(&tr, 0.25, 3.0);
        assert!(r.max_abs < 1e-6, "{r:?}");
        let series = h_from_trajectory(&tr);
        assert!(series.iter().all(|smp| smp.hp < 0.0 && smp.s > 1.0));
        let last = series.last().unwrap();
        assert!(abs(last.s - 1.0) < 1e-6);
        for smp in &series[..400] {
            let g2 = sinh(smp.x) * sinh(smp.x) * -tr.eval(smp.x).unwrap()[1];
            assert!(abs(smp.hp + g2) < 1e-9 * g2.max(1.0));
        }
    }

    #[test]
    fn set_ii_position_and_tau_form() {
        let tr = traj(0.5, 0.5, 4.0);
        let (pvi, tau) = set_ii_residuals(&tr, 0.25, 3.0).unwrap();
        assert!(pvi.max_abs < 1e-5, "{pvi:?}");
        assert!(tau.max_abs < 1e-6, "{tau:?}");
    }

    #[test]
    fn double_fold_reaches_manin() {
        let tr = traj(0.5, 1.0, 4.0);
        let rep = manin_verification_pipeline(&tr, 0.3, 3.0).unwrap();
        assert!(rep.set_i.max_abs < 1e-6, "{:?}", rep.set_i);
        assert!(rep.set_i_energy.max_abs < 1e-9, "{:?}", rep.set_i_energy);
        assert!(rep.quarter.max_abs < 1e-5, "{:?}", rep.quarter);
        assert!(rep.manin.max_abs < 1e-5, "{:?}", rep.manin);
        assert!(
            rep.lagrangian_factor_four.max_abs < 1e-6,
            "{:?}",
            rep.lagrangian_factor_four
        );
        assert!(
            rep.lagrangian_factor_two.max_abs < 1e-6,
            "{:?}",
            rep.lagrangian_factor_two
        );
        assert!(
            rep.hamiltonian_fold.max_abs < 1e-8,
            "{:?}",
            rep.hamiltonian_fold
        );
        assert!(
            rep.metric_from_pq.max_abs < 1e-8,
            "{:?}",
            rep.metric_from_pq
        );
        assert!(rep.min_distance_sqrt_t > 0.1);
    }

    #[test]
    fn chazy_on_both_branches() {
        let tr = traj(0.5, 0.5, 4.0);
        for b in [TBranch::Tanh, TBranch::Coth] {
            let r = chazy_residual_along(&tr, b, 0.25, 3.0).unwrap();
            assert!(r.max_abs < 1e-5, "{b:?}: {r:?}");
        }
    }

    #[test]
    fn transcendence_on_the_critical_trajectory() {
        let tr = traj(0.5, 1.0, 20.0);
        let rep = transcendence_diagnostics(&tr, 0.1, 20.0).unwrap();
        assert!(
            rep.min_s > 0.0 && rep.p_keeps_sign && rep.min_abs_p > 0.0,
            "{rep:?}"
        );
    }

    #[test]
    fn geometry_limits() {
        let tr = traj(0.5, 0.75, 40.0);
        let g = geometry_report(&tr);
        assert!(abs(g.willmore_density - g.willmore_boundary) < 1e-8);
        // 2πκ − ξ, while the printed form has ξ/4
        let kappa = 0.17140884018356643;
        assert!(abs(g.willmore_boundary - (2.0 * PI * kappa - 0.75)) < 1e-6);
        assert!(abs(g.willmore_printed - g.willmore_boundary - 0.5625) < 1e-6);
        assert!(*g.skew.last().unwrap() < 1e-3);
        let zero = traj(0.5, 0.0, 5.0);
        let g0 = geometry_report(&zero);
        assert_eq!(g0.willmore_boundary, 0.0);
        assert!(g0.skew.iter().all(|&l| l == 0.0));
    }
}
