//! Nyström evaluation of Fredholm determinants, spectra and resolvent
//! endpoint values on a finite interval.
//!
//! The matrix is always the symmetrized one, √w_i K(x_i, x_j) √w_j, so the
//! discrete spectrum is real. For the parity parts the operator on [0, T] is
//! the folded kernel ξ(K(x−y) ± K(x+y)), i.e. twice [`KernelSpec::entry`]:
//! that is exactly the restriction of K on [−T, T] to even or odd functions,
//! which makes det⁺·det⁻ the symmetric-interval determinant.
//!
//! Gauss–Legendre converges exponentially only for analytic kernels. The
//! Markov kernel e^{−|s|}/2 has a derivative jump on the diagonal, which
//! caps Gauss–Legendre at O(n⁻²). Its determinant is instead taken from
//! trapezoid Nyström matrices, whose nodes always contain the kink, on
//! three nested grids with two levels of Romberg extrapolation.

use crate::error::{domain, numeric, Error, Result};
use crate::fmath::{abs, ln, sqrt};
use crate::kernels::{KernelFamily, KernelSpec, Parity};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};

pub use crate::quad::{gauss_legendre, trapezoid, Discretization};

/// Smallest admissible eigenvalue of I − M before the evaluation is refused.
pub const MIN_GAP: f64 = 1e-10;

/// Default node count max(100, 12·length).
pub fn default_nodes(length: f64) -> usize {
    let n = libm::ceil(12.0 * abs(length)) as usize;
    n.max(100)
}

/// Eigenvalues of the Nyström matrix, largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Descending eigenvalues.
    pub eigenvalues: Vec<f64>,
}

/// Endpoint values R(T) = R(T, T) and S(T) = R(−T, T) of the resolvent
/// (I − ξK)⁻¹ξK on [−T, T].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventSample {
    /// Half-length.
    pub t: f64,
    /// Diagonal value at the endpoint.
    pub r: f64,
    /// Anti-diagonal value at the endpoint.
    pub s: f64,
    /// Smallest eigenvalue of the discretized I − ξK.
    pub gap: f64,
}

/// Matrix entry used for the operator: ξK(x−y) or the folded parity kernel.
#[inline]
fn operator_entry(spec: &KernelSpec, x: f64, y: f64) -> f64 {
    match spec.parity() {
        Parity::None => spec.entry(x, y),
        Parity::Even | Parity::Odd => 2.0 * spec.entry(x, y),
    }
}

/// Symmetrized Nyström matrix √w_i K(x_i, x_j) √w_j on a rule.
pub fn nystrom_matrix(spec: &KernelSpec, d: &Discretization) -> DMatrix<f64> {
    let n = d.len();
    let sw: Vec<f64> = d.weights.iter().map(|&w| sqrt(w)).collect();
    DMatrix::from_fn(n, n, |i, j| {
        sw[i] * operator_entry(spec, d.nodes[i], d.nodes[j]) * sw[j]
    })
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a <= b {
        Ok(())
    } else {
        Err(domain(format!(
            "interval must satisfy a <= b, got ({a}, {b})"
        )))
    }
}

/// Cholesky factor of I − M with the smallest eigenvalue checked.
fn factor(m: DMatrix<f64>, context: &str) -> Result<(Cholesky<f64, Dyn>, f64)> {
    let n = m.nrows();
    if m.iter().any(|v| !v.is_finite()) {
        return Err(numeric(format!("non-finite kernel value ({context})")));
    }
    let a = DMatrix::identity(n, n) - m;
    let Some(chol) = Cholesky::new(a.clone()) else {
        let gap = SymmetricEigen::new(a).eigenvalues.min();
        return Err(Error::IllConditioned {
            gap,
            context: context.to_string(),
        });
    };
    let gap = smallest_eigenvalue(&chol, n);
    if gap < MIN_GAP {
        return Err(Error::IllConditioned {
            gap,
            context: context.to_string(),
        });
    }
    Ok((chol, gap))
}

/// λ_min of a positive definite matrix by inverse iteration on its factor.
fn smallest_eigenvalue(chol: &Cholesky<f64, Dyn>, n: usize) -> f64 {
    // The top eigenvector of a positive kernel is positive, so the constant
    // vector overlaps it well.
    let mut v = DVector::from_element(n, 1.0 / sqrt(n as f64));
    let mut mu = 0.0;
    for _ in 0..40 {
        let w = chol.solve(&v);
        let next = v.dot(&w);
        let norm = w.norm();
        v = w / norm;
        if abs(next - mu) <= 1e-12 * next {
            mu = next;
            break;
        }
        mu = next;
    }
    1.0 / mu
}

/// ln det(I − ξK) on (a, b) with an n-point Gauss–Legendre rule, or at
/// most n trapezoid nodes with Romberg extrapolation for the Markov kernel.
pub fn log_fredholm_det(spec: &KernelSpec, a: f64, b: f64, n: usize) -> Result<f64> {
    check_interval(a, b)?;
    if a == b || spec.xi() == 0.0 {
        return Ok(0.0);
    }
    if spec.family() == KernelFamily::Markov {
        return romberg_log_det(spec, a, b, n);
    }
    let d = gauss_legendre(n, a, b)?;
    log_det_on(spec, &d)
}

fn log_det_on(spec: &KernelSpec, d: &Discretization) -> Result<f64> {
    let (chol, _) = factor(nystrom_matrix(spec, d), "fredholm_det")?;
    Ok(2.0
        * chol
            .l_dirty()
            .diagonal()
            .iter()
            .map(|&v| ln(v))
            .sum::<f64>())
}

/// Trapezoid Nyström on N/4, N/2 and N intervals, extrapolated in h².
fn romberg_log_det(spec: &KernelSpec, a: f64, b: f64, n: usize) -> Result<f64> {
    let intervals = (n.saturating_sub(1) / 4) * 4;
    if intervals < 4 {
        return Err(domain(format!("Romberg determinant needs n >= 5, got {n}")));
    }
    let mut level = [0.0; 3];
    for (k, m) in [intervals / 4, intervals / 2, intervals]
        .into_iter()
        .enumerate()
    {
        level[k] = log_det_on(spec, &trapezoid(m + 1, a, b)?)?;
    }
    let r1 = (4.0 * level[1] - level[0]) / 3.0;
    let r2 = (4.0 * level[2] - level[1]) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// det(I − ξK) on (a, b) with an n-point Gauss–Legendre rule.
pub fn fredholm_det(spec: &KernelSpec, a: f64, b: f64, n: usize) -> Result<f64> {
    Ok(libm::exp(log_fredholm_det(spec, a, b, n)?))
}

/// Top `k` eigenvalues of the thinned Nyström matrix, descending.
pub fn eigenvalues(spec: &KernelSpec, a: f64, b: f64, n: usize, k: usize) -> Result<Spectrum> {
    check_interval(a, b)?;
    if k > n {
        return Err(domain(format!("requested {k} eigenvalues from {n} nodes")));
    }
    if a == b {
        return Ok(Spectrum {
            eigenvalues: alloc::vec![0.0; k],
        });
    }
    let d = gauss_legendre(n, a, b)?;
    let m = nystrom_matrix(spec, &d);
    if m.iter().any(|v| !v.is_finite()) {
        return Err(numeric("non-finite kernel value (eigenvalues)"));
    }
    let mut ev: Vec<f64> = SymmetricEigen::try_new(m, f64::EPSILON, 0)
        .ok_or_else(|| numeric("symmetric eigensolver did not converge"))?
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev.truncate(k);
    Ok(Spectrum { eigenvalues: ev })
}

/// R(T) and S(T) for a parity-free kernel on [−T, T].
///
/// The resolvent column R(·, T) is solved at the nodes and carried to the
/// endpoints with the Nyström interpolant, which keeps the quadrature's
/// exponential accuracy (Gauss nodes never hit the endpoints).
pub fn resolvent_rs(spec: &KernelSpec, t: f64, n: usize) -> Result<ResolventSample> {
    if spec.parity() != Parity::None {
        return Err(domain("resolvent_rs needs a parity-free kernel"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain(format!("half-length must be >= 0, got {t}")));
    }
    let k0 = spec.entry(0.0, 0.0);
    if t == 0.0 || spec.xi() == 0.0 {
        return Ok(ResolventSample {
            t,
            r: k0,
            s: spec.entry(-t, t),
            gap: 1.0,
        });
    }
    let d = gauss_legendre(n, -t, t)?;
    let (chol, gap) = factor(nystrom_matrix(spec, &d), "resolvent_rs")?;
    let sw: Vec<f64> = d.weights.iter().map(|&w| sqrt(w)).collect();
    let rhs = DVector::from_fn(n, |i, _| sw[i] * spec.entry(d.nodes[i], t));
    let v = chol.solve(&rhs);
    let mut r = spec.entry(t, t);
    let mut s = spec.entry(-t, t);
    for j in 0..n {
        r += sw[j] * spec.entry(t, d.nodes[j]) * v[j];
        s += sw[j] * spec.entry(-t, d.nodes[j]) * v[j];
    }
    Ok(ResolventSample { t, r, s, gap })
}

/// Nodes x_i of [−T, T] and the resolvent diagonal R(x_i, x_i).
pub fn resolvent_diagonal(spec: &KernelSpec, t: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if spec.parity() != Parity::None {
        return Err(domain("resolvent_diagonal needs a parity-free kernel"));
    }
    if !(t > 0.0) {
        return Err(domain(format!("half-length must be > 0, got {t}")));
    }
    let d = gauss_legendre(n, -t, t)?;
    let m = nystrom_matrix(spec, &d);
    let (chol, _) = factor(m.clone(), "resolvent_diagonal")?;
    // W^{1/2} R W^{1/2} = (I − M)⁻¹ M
    let x = chol.solve(&m);
    let diag = (0..n).map(|i| x[(i, i)] / d.weights[i]).collect();
    Ok((d.nodes, diag))
}

/// H(ℓ) = d/dℓ ln det(I − ξK) on [0, ℓ], by a Richardson-extrapolated
/// centered difference with step max(1e−4, 1e−3·ℓ).
pub fn log_det_derivative(spec: &KernelSpec, ell: f64, n: usize) -> Result<f64> {
    if !(ell > 0.0) || !ell.is_finite() {
        return Err(domain(format!(
            "log_det_derivative needs ell > 0, got {ell}"
        )));
    }
    let mut h = (1e-3 * ell).max(1e-4);
    if h >= ell {
        h = 0.5 * ell;
    }
    if h < 1e-12 {
        return Err(numeric(format!("difference step underflow at ell = {ell}")));
    }
    let f = |x: f64| log_fredholm_det(spec, 0.0, x, n);
    let d1 = (f(ell + h)? - f(ell - h)?) / (2.0 * h);
    let d2 = (f(ell + 0.5 * h)? - f(ell - 0.5 * h)?) / h;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Two-point Janossy-type density R(T)² − S(T)².
pub fn janossy_two_point(spec: &KernelSpec, t: f64, n: usize) -> Result<f64> {
    if !(t > 0.0) {
        return Err(domain(format!("janossy_two_point needs T > 0, got {t}")));
    }
    let rs = resolvent_rs(spec, t, n)?;
    Ok(rs.r * rs.r - rs.s * rs.s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::{exp, PI};

    fn sech(xi: f64) -> KernelSpec {
        KernelSpec::theta(0.5, xi, Parity::None).unwrap()
    }

    #[test]
    fn empty_interval_and_zero_thinning() {
        assert_eq!(fredholm_det(&sech(0.7), 1.0, 1.0, 50).unwrap(), 1.0);
        assert_eq!(fredholm_det(&sech(0.0), 0.0, 5.0, 50).unwrap(), 1.0);
        assert!(fredholm_det(&sech(0.7), 2.0, 1.0, 50).is_err());
    }

    #[test]
    fn markov_oracle() {
        let spec = KernelSpec::markov(1.0, Parity::None).unwrap();
        for ell in [0.5, 1.0, 2.0, 5.0] {
            let d = fredholm_det(&spec, 0.0, ell, 200).unwrap();
            let exact = exp(-ell) * (1.0 + ell / 2.0);
            assert!(abs(d - exact) < 1e-8, "ell={ell}: {d} vs {exact}");
        }
    }

    #[test]
    fn sech_even_part_dual_quadrature_value() {
        // Clenshaw–Curtis (800 points) and Gauss–Legendre (100 points) reference
        let spec = KernelSpec::theta(0.5, 1.0, Parity::Even).unwrap();
        let d = fredholm_det(&spec, 0.0, 1.0, 100).unwrap();
        assert!(abs(d - 0.703_417_710_123_631_2) < 1e-9, "{d}");
    }

    #[test]
    fn parity_factorization_reference_values() {
        for (theta, xi, t, dp, dm, full) in [
            (
                0.5,
                0.5,
                2.0,
                0.739_667_583_864_141_1,
                0.944_520_565_278_235_5,
                0.698_631_244_429_348_7,
            ),
            (
                0.5,
                0.75,
                1.5,
                0.687_390_943_923_862,
                0.956_064_100_023_985_3,
                0.657_189_804_167_199_7,
            ),
            (
                0.0,
                0.5,
                1.0,
                0.815_217_349_875_608_2,
                0.982_345_553_677_872,
                0.800_825_138_931_363_1,
            ),
        ] {
            let base = KernelSpec::theta(theta, xi, Parity::None).unwrap();
            let e = fredholm_det(&base.with_parity(Parity::Even), 0.0, t, 120).unwrap();
            let o = fredholm_det(&base.with_parity(Parity::Odd), 0.0, t, 120).unwrap();
            let f = fredholm_det(&base, -t, t, 160).unwrap();
            assert!(abs(e - dp) < 1e-12, "{e} vs {dp}");
            assert!(abs(o - dm) < 1e-12, "{o} vs {dm}");
            assert!(abs(f - full) < 1e-12, "{f} vs {full}");
            assert!(abs(e * o - f) < 1e-12);
        }
    }

    #[test]
    fn spectral_form_and_union() {
        let spec = sech(0.8);
        let t = 2.5;
        let n = 80;
        let full = eigenvalues(&spec, -t, t, 2 * n, 2 * n).unwrap();
        let prod: f64 = full.eigenvalues.iter().map(|l| 1.0 - l).product();
        assert!(abs(prod - fredholm_det(&spec, -t, t, 2 * n).unwrap()) < 1e-12);
        let mut halves = eigenvalues(&spec.with_parity(Parity::Even), 0.0, t, n, 10)
            .unwrap()
            .eigenvalues;
        halves.extend(
            eigenvalues(&spec.with_parity(Parity::Odd), 0.0, t, n, 10)
                .unwrap()
                .eigenvalues,
        );
        halves.sort_by(|a, b| b.total_cmp(a));
        for k in 0..10 {
            assert!(abs(halves[k] - full.eigenvalues[k]) < 1e-8, "k={k}");
        }
        // trace: Σλ = ξ K(0) |I|
        let tr: f64 = full.eigenvalues.iter().sum();
        assert!(abs(tr - 0.8 / (2.0 * PI) * 2.0 * t) < 1e-12);
    }

    #[test]
    fn thinning_scales_spectrum() {
        let a = eigenvalues(&sech(1.0), 0.0, 3.0, 60, 5).unwrap();
        let b = eigenvalues(&sech(0.3), 0.0, 3.0, 60, 5).unwrap();
        for k in 0..5 {
            assert!(abs(0.3 * a.eigenvalues[k] - b.eigenvalues[k]) < 1e-14);
            assert!(a.eigenvalues[k] > 0.0 && a.eigenvalues[k] < 1.0);
        }
        assert!(a.eigenvalues.windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn resolvent_small_t_and_symmetry() {
        let spec = sech(0.6);
        let r0 = resolvent_rs(&spec, 0.0, 50).unwrap();
        assert!(abs(r0.r - 0.6 / (2.0 * PI)) < 1e-16);
        assert_eq!(r0.s, r0.r);
        let r = resolvent_rs(&spec, 1e-6, 40).unwrap();
        assert!(abs(r.r - r.s) < 1e-10 && abs(r.r - r0.r) < 1e-6);
        let (x, diag) = resolvent_diagonal(&spec, 2.0, 60).unwrap();
        for i in 0..x.len() {
            assert!(abs(diag[i] - diag[x.len() - 1 - i]) < 1e-10);
            assert!(diag[i] > 0.0);
        }
    }

    #[test]
    fn gaudin_relation() {
        let spec = sech(0.9);
        for t in [0.5, 1.5, 4.0] {
            let h = 1e-3;
            let rp = resolvent_rs(&spec, t + h, 120).unwrap().r;
            let rm = resolvent_rs(&spec, t - h, 120).unwrap().r;
            let s = resolvent_rs(&spec, t, 120).unwrap().s;
            let res = (rp - rm) / (2.0 * h) - 2.0 * s * s;
            assert!(abs(res) < 1e-6, "T={t}: {res}");
        }
    }

    #[test]
    fn log_det_derivative_is_minus_r_of_half_length() {
        let spec = sech(0.75);
        for ell in [0.5, 2.0, 6.0] {
            let h = log_det_derivative(&spec, ell, 120).unwrap();
            let r = resolvent_rs(&spec, ell / 2.0, 120).unwrap().r;
            assert!(abs(h + r) < 1e-8, "ell={ell}: {h} vs {r}");
        }
        let h = log_det_derivative(&spec, 1e-6, 20).unwrap();
        assert!(abs(h + 0.75 / (2.0 * PI)) < 1e-6);
    }

    #[test]
    fn janossy_positive_and_vanishing_at_zero() {
        let spec = sech(1.0);
        assert!(janossy_two_point(&spec, 1e-7, 30).unwrap().abs() < 1e-8);
        for t in [0.3, 1.0, 3.0, 8.0] {
            assert!(janossy_two_point(&spec, t, 120).unwrap() > 0.0);
        }
    }

    #[test]
    fn singular_operator_is_refused() {
        let err = factor(DMatrix::identity(4, 4), "test").unwrap_err();
        assert!(matches!(err, Error::IllConditioned { .. }));
        let almost = DMatrix::identity(4, 4) * (1.0 - 1e-12);
        assert!(matches!(
            factor(almost, "test"),
            Err(Error::IllConditioned { .. })
        ));
    }
}
