//! Adaptive Dormand–Prince 5(4) integrator for small fixed-size systems.

use crate::error::{Error, Result};
use crate::fmath::{abs, powf};
use alloc::string::String;

/// Tolerances and step limits.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Relative tolerance.
    pub rtol: f64,
    /// Absolute tolerance.
    pub atol: f64,
    /// Upper bound on the step size.
    pub max_step: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rtol: 1e-10,
            atol: 1e-12,
            max_step: 0.5,
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights minus the embedded fourth-order ones
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrator state for y′ = f(x, y) with y ∈ ℝᴺ.
#[derive(Debug, Clone)]
pub struct Dopri5<const N: usize> {
    x: f64,
    y: [f64; N],
    h: f64,
    tol: Tolerance,
    steps: usize,
    rejected: usize,
}

impl<const N: usize> Dopri5<N> {
    /// Start at (x0, y0) with a first trial step `h0`.
    pub fn new(x0: f64, y0: [f64; N], h0: f64, tol: Tolerance) -> Self {
        Dopri5 {
            x: x0,
            y: y0,
            h: h0,
            tol,
            steps: 0,
            rejected: 0,
        }
    }

    /// Current abscissa.
    pub fn x(&self) -> f64 {
        self.x
    }

    /// Current state.
    pub fn y(&self) -> &[f64; N] {
        &self.y
    }

    /// Accepted and rejected step counts.
    pub fn counts(&self) -> (usize, usize) {
        (self.steps, self.rejected)
    }

    /// Advance exactly to `x_end` (≥ current x).
    pub fn advance_to<F>(&mut self, f: &mut F, x_end: f64) -> Result<()>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        while self.x < x_end {
            let remaining = x_end - self.x;
            let mut h = self.h.min(self.tol.max_step);
            let last = h >= remaining;
            if last {
                h = remaining;
            }
            // a tiny final step is legitimate (target a few ulps past a grid point)
            if !last && h <= 1e-14 * abs(self.x).max(1.0) {
                return Err(fail(self.x, "step size underflow"));
            }
            let (y_new, err) = self.trial(f, h);
            if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
                self.h = 0.25 * h;
                self.rejected += 1;
                if self.h <= 1e-14 * abs(self.x).max(1.0) {
                    return Err(fail(self.x, "non-finite state"));
                }
                continue;
            }
            let fac = if err == 0.0 {
                5.0
            } else {
                (0.9 * powf(err, -0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                self.x = if last { x_end } else { self.x + h };
                self.y = y_new;
                self.steps += 1;
                // keep the controller's proposal, not the clipped final step
                self.h = if last { self.h.max(h) } else { h * fac };
            } else {
                self.h = h * fac.min(1.0);
                self.rejected += 1;
            }
        }
        Ok(())
    }

    fn trial<F>(&self, f: &mut F, h: f64) -> ([f64; N], f64)
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let mut k = [[0.0; N]; 7];
        k[0] = f(self.x, &self.y);
        for s in 1..7 {
            let mut ys = self.y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[s] = f(self.x + C[s] * h, &ys);
        }
        // stage 7 is evaluated at the fifth-order solution (FSAL)
        let mut y_new = self.y;
        for (j, kj) in k.iter().enumerate().take(6) {
            for i in 0..N {
                y_new[i] += h * A[6][j] * kj[i];
            }
        }
        k[6] = f(self.x + h, &y_new);
        let mut err: f64 = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            let sc = self.tol.atol + self.tol.rtol * abs(self.y[i]).max(abs(y_new[i]));
            err = err.max(abs(h * e) / sc);
        }
        (y_new, err)
    }
}

fn fail(x: f64, reason: &str) -> Error {
    Error::Integration {
        x,
        reason: String::from(reason),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::{cos, exp, sin};

    #[test]
    fn harmonic_oscillator_period() {
        let tol = Tolerance {
            rtol: 1e-12,
            atol: 1e-14,
            max_step: 0.5,
        };
        let mut ode = Dopri5::new(0.0, [1.0, 0.0], 1e-3, tol);
        let mut f = |_x: f64, y: &[f64; 2]| [y[1], -y[0]];
        for k in 1..=10 {
            let x = k as f64;
            ode.advance_to(&mut f, x).unwrap();
            assert!(abs(ode.y()[0] - cos(x)) < 1e-10);
            assert!(abs(ode.y()[1] + sin(x)) < 1e-10);
        }
        assert_eq!(ode.x(), 10.0);
    }

    #[test]
    fn ulp_sized_final_step() {
        let mut ode = Dopri5::new(0.3, [1.0], 1e-3, Tolerance::default());
        let mut f = |_x: f64, y: &[f64; 1]| [y[0]];
        let end = 0.1 * 3.0;
        assert!(end > 0.3);
        ode.advance_to(&mut f, end).unwrap();
        assert_eq!(ode.x(), end);
    }

    #[test]
    fn logistic_against_closed_form() {
        let tol = Tolerance {
            rtol: 1e-11,
            atol: 1e-13,
            max_step: 1.0,
        };
        let mut ode = Dopri5::new(0.0, [0.1], 1e-2, tol);
        let mut f = |_x: f64, y: &[f64; 1]| [y[0] * (1.0 - y[0])];
        ode.advance_to(&mut f, 8.0).unwrap();
        let exact = 1.0 / (1.0 + 9.0 * exp(-8.0));
        assert!(abs(ode.y()[0] - exact) < 1e-10);
    }

    #[test]
    fn blow_up_is_reported() {
        let mut ode = Dopri5::new(0.0, [1.0], 1e-3, Tolerance::default());
        let mut f = |_x: f64, y: &[f64; 1]| [y[0] * y[0]];
        assert!(ode.advance_to(&mut f, 2.0).is_err());
    }
}
