//! Eigenpairs of `ℓ = J - χ` by Galerkin projection onto the eigenbasis of
//! the unperturbed Jacobi operator `J`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{gauss_jacobi_rule, symmetric_eigen, SymmetricMatrix};
use crate::operator::{JacobiParams, OperatorSpec, Side};
use crate::scalar::{parity_sign, Real};
use crate::specfun::{jacobi_norms, jacobi_poly_all};

/// Sample points of the Richardson extrapolation for endpoint constants.
pub const RICHARDSON_STEPS: [f64; 3] = [1e-3, 5e-4, 2.5e-4];
const RICHARDSON_TOL: f64 = 1e-4;

/// Normalized eigenfunctions
/// `φ_n(t) = sin^{α+½}t cos^{β+½}t P_n^{(α,β)}(cos 2t) / N_n` of `J`.
#[derive(Debug, Clone)]
pub struct SpectralBasis<T> {
    params: JacobiParams<T>,
    norms: Vec<T>,
    mu_j: Vec<T>,
    /// `P_k(1)/N_k` and `P_k(-1)/N_k`.
    left_limits: Vec<T>,
    right_limits: Vec<T>,
}

/// `SpectralBasis` for `size` functions. `N_n² = 2^{-α-β-2} h_n`.
pub fn build_basis<T: Real>(params: JacobiParams<T>, size: usize) -> Result<SpectralBasis<T>> {
    if size == 0 {
        return Err(Error::InvalidParameter {
            field: "basis_size",
            reason: "must be at least 1".into(),
        });
    }
    let (a, b) = (params.alpha(), params.beta());
    let one = T::one();
    let two = T::lit(2.0);
    let scale = two.powf(-(a + b + two));
    let norms: Vec<T> = jacobi_norms(size, a, b)
        .into_iter()
        .map(|h| (scale * h).sqrt())
        .collect();
    let mu_j = (0..size)
        .map(|n| {
            let m = T::from_index(2 * n + 1);
            m * m + two * m * (a + b) + two * a * b + T::lit(0.5)
        })
        .collect();
    let mut left_limits = Vec::with_capacity(size);
    let mut right_limits = Vec::with_capacity(size);
    let (mut pa, mut pb) = (one, one);
    for (k, &norm) in norms.iter().enumerate() {
        if k > 0 {
            let kf = T::from_index(k);
            pa = pa * (kf + a) / kf;
            pb = pb * (kf + b) / kf;
        }
        left_limits.push(pa / norm);
        right_limits.push(parity_sign::<T>(k) * pb / norm);
    }
    Ok(SpectralBasis {
        params,
        norms,
        mu_j,
        left_limits,
        right_limits,
    })
}

impl<T: Real> SpectralBasis<T> {
    pub fn params(&self) -> &JacobiParams<T> {
        &self.params
    }

    pub fn size(&self) -> usize {
        self.norms.len()
    }

    pub fn norms(&self) -> &[T] {
        &self.norms
    }

    /// `μ_n^J = (2n+1)² + 2(2n+1)(α+β) + 2αβ + ½`.
    pub fn mu_j(&self) -> &[T] {
        &self.mu_j
    }

    /// Fills `out[k] = φ_k(t)` for every basis index.
    pub fn eval_all(&self, t: T, out: &mut [T]) {
        let half = T::lit(0.5);
        let envelope = t.sin().max(T::zero()).powf(self.params.alpha() + half)
            * t.cos().max(T::zero()).powf(self.params.beta() + half);
        self.polys_scaled((T::lit(2.0) * t).cos(), envelope, out);
    }

    /// Fills `out[k] = P_k(cos 2t) / N_k`, the basis without its envelope.
    pub fn eval_polys(&self, t: T, out: &mut [T]) {
        self.polys_scaled((T::lit(2.0) * t).cos(), T::one(), out);
    }

    /// `out[k] = scale · P_k(x) / N_k`.
    fn polys_scaled(&self, x: T, scale: T, out: &mut [T]) {
        let out = &mut out[..self.size()];
        jacobi_poly_all(self.params.alpha(), self.params.beta(), x, out);
        for (v, &n) in out.iter_mut().zip(&self.norms) {
            *v = *v * scale / n;
        }
    }

    pub fn eval(&self, k: usize, t: T) -> T {
        let mut out = vec![T::zero(); self.size()];
        self.eval_all(t, &mut out);
        out[k]
    }

    /// `φ_k(t)/t^{α+½}` (left) or `φ_k(t)/(π/2-t)^{β+½}` (right) at distance
    /// `h` from the endpoint; even in `h`.
    fn scaled_near_endpoint(&self, side: Side, h: T, out: &mut [T]) {
        let half = T::lit(0.5);
        let (a, b) = (self.params.alpha(), self.params.beta());
        let (x, envelope) = match side {
            Side::Left => ((T::lit(2.0) * h).cos(), (h.sin() / h).powf(a + half) * h.cos().powf(b + half)),
            Side::Right => (-(T::lit(2.0) * h).cos(), (h.sin() / h).powf(b + half) * h.cos().powf(a + half)),
        };
        self.polys_scaled(x, envelope, out);
    }

    /// `lim φ_k(t)/t^{α+½}` at `t → 0` (left) or the mirrored limit (right).
    pub fn endpoint_limits(&self, side: Side) -> &[T] {
        match side {
            Side::Left => &self.left_limits,
            Side::Right => &self.right_limits,
        }
    }
}

/// Refinement diagnostics of an [`EigenDecomposition`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport<T> {
    pub basis_size: usize,
    pub quad_points: usize,
    /// Largest relative eigenvalue change against the previous basis size,
    /// over the lower half of the previous usable range.
    pub eigenvalue_shift: Option<T>,
}

/// Eigenvalues and eigenvectors returned together with a flag telling
/// whether the spectrally inaccurate top quarter is included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flagged<V> {
    pub value: V,
    pub includes_tail: bool,
}

/// Galerkin eigenpairs `(μ_n, u_n)`, `u_n = Σ_k c_k^{(n)} φ_k`, ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T> {
    spec: OperatorSpec<T>,
    basis: SpectralBasis<T>,
    values: Vec<T>,
    /// Row-major `K x K`; column `n` holds `c^{(n)}`.
    coeffs: Vec<T>,
    usable: usize,
    report: ConvergenceReport<T>,
}

impl<T: Real> EigenDecomposition<T> {
    /// Assembles `diag(μ^J) - [∫χ φ_j φ_k]` with a `quad_points` Gauss–Jacobi
    /// rule in `x = cos 2t`, diagonalizes it and fixes signs so that
    /// `u_n(t)/t^{α+½} → c_n > 0`.
    pub fn solve(spec: &OperatorSpec<T>, basis_size: usize, quad_points: usize) -> Result<Self> {
        if basis_size < 8 {
            return Err(Error::InvalidParameter {
                field: "basis_size",
                reason: format!("need at least 8, got {basis_size}"),
            });
        }
        if quad_points < 2 * basis_size {
            return Err(Error::InvalidParameter {
                field: "quad_points",
                reason: format!("need at least 2 * basis_size = {}, got {quad_points}", 2 * basis_size),
            });
        }
        let params = *spec.params();
        let basis = build_basis(params, basis_size)?;
        let k = basis_size;
        let rule = gauss_jacobi_rule(quad_points, params.alpha(), params.beta())?;

        // Orthonormal polynomials times sqrt(w) at each node; the χ factor is
        // applied separately so its sign does not matter.
        let scale = T::lit(2.0).powf(-(params.alpha() + params.beta() + T::lit(2.0)));
        let mut table = vec![T::zero(); quad_points * k];
        let mut weights = Vec::with_capacity(quad_points);
        for (q, (x, w)) in rule.iter().enumerate() {
            let t = x.max(-T::one()).min(T::one()).acos() * T::lit(0.5);
            basis.polys_scaled(x, T::one(), &mut table[q * k..(q + 1) * k]);
            weights.push(w * scale * spec.chi_extended(t));
        }
        let mut x_mat = vec![T::zero(); k * k];
        for (q, &wq) in weights.iter().enumerate() {
            let row = &table[q * k..(q + 1) * k];
            for i in 0..k {
                let wi = wq * row[i];
                for j in i..k {
                    x_mat[i * k + j] += wi * row[j];
                }
            }
        }
        let mut entries = vec![T::zero(); k * k];
        for i in 0..k {
            for j in i..k {
                let v = if i == j { basis.mu_j[i] - x_mat[i * k + j] } else { -x_mat[i * k + j] };
                entries[i * k + j] = v;
                entries[j * k + i] = v;
            }
        }
        let m = SymmetricMatrix::from_row_major(k, entries)?;
        let eig = symmetric_eigen(&m)?;
        let mut coeffs = eig.vectors;
        for n in 0..k {
            let c: T = (0..k).map(|i| coeffs[i * k + n] * basis.left_limits[i]).sum();
            if c < T::zero() {
                for i in 0..k {
                    coeffs[i * k + n] = -coeffs[i * k + n];
                }
            }
        }
        Ok(Self {
            spec: spec.clone(),
            basis,
            values: eig.values,
            coeffs,
            usable: (3 * k) / 4,
            report: ConvergenceReport {
                basis_size,
                quad_points,
                eigenvalue_shift: None,
            },
        })
    }

    /// Re-solves with a larger basis and records the eigenvalue shift.
    pub fn refine(&self, basis_size: usize, quad_points: usize) -> Result<Self> {
        let mut next = Self::solve(&self.spec, basis_size, quad_points)?;
        let count = (self.usable / 2).max(1).min(next.values.len());
        let shift = (0..count)
            .map(|n| (next.values[n] - self.values[n]).abs() / self.values[n].abs().max(T::one()))
            .fold(T::zero(), T::max);
        next.report.eigenvalue_shift = Some(shift);
        Ok(next)
    }

    pub fn spec(&self) -> &OperatorSpec<T> {
        &self.spec
    }

    pub fn basis(&self) -> &SpectralBasis<T> {
        &self.basis
    }

    pub fn report(&self) -> &ConvergenceReport<T> {
        &self.report
    }

    /// Number of eigenpairs below the unreliable top quarter.
    pub fn usable(&self) -> usize {
        self.usable
    }

    /// `μ_n` over the usable range.
    pub fn eigenvalues(&self) -> &[T] {
        &self.values[..self.usable]
    }

    /// Every computed eigenvalue, flagged because the tail is inaccurate.
    pub fn all_eigenvalues(&self) -> Flagged<&[T]> {
        Flagged {
            value: &self.values,
            includes_tail: self.usable < self.values.len(),
        }
    }

    pub fn eigenvalue(&self, n: usize) -> Result<T> {
        self.check_index(n)?;
        Ok(self.values[n])
    }

    /// `σ_n = √μ_n` (zero if `μ_n` rounds below zero).
    pub fn sigma(&self, n: usize) -> Result<T> {
        Ok(self.eigenvalue(n)?.max(T::zero()).sqrt())
    }

    /// `c^{(n)}`, the coefficients of `u_n` in the basis `φ_k`.
    pub fn coefficients(&self, n: usize) -> Result<Vec<T>> {
        self.check_index(n)?;
        let k = self.basis.size();
        Ok((0..k).map(|i| self.coeffs[i * k + n]).collect())
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n < self.usable {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: n,
                usable: self.usable,
            })
        }
    }

    fn combine(&self, n: usize, phi: &[T]) -> T {
        let k = self.basis.size();
        (0..k).map(|i| self.coeffs[i * k + n] * phi[i]).sum()
    }

    /// `u_n(t)` on `[0, π/2]`.
    pub fn eigenfunction_at(&self, n: usize, t: T) -> Result<T> {
        self.check_index(n)?;
        self.eigenfunction_unchecked(n, t)
    }

    /// `u_n(t)` for any computed index, tail included.
    pub fn eigenfunction_unchecked(&self, n: usize, t: T) -> Result<T> {
        if n >= self.values.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                usable: self.values.len(),
            });
        }
        check_interval("eigenfunction_at", t)?;
        let mut phi = vec![T::zero(); self.basis.size()];
        self.basis.eval_all(t, &mut phi);
        Ok(self.combine(n, &phi))
    }

    /// `u_0(t), ..., u_{count-1}(t)` with one basis evaluation.
    pub fn eigenfunctions_at(&self, count: usize, t: T) -> Result<Vec<T>> {
        if count > self.usable {
            return Err(Error::IndexOutOfRange {
                index: count - 1,
                usable: self.usable,
            });
        }
        check_interval("eigenfunctions_at", t)?;
        let mut phi = vec![T::zero(); self.basis.size()];
        self.basis.eval_all(t, &mut phi);
        Ok(self.combine_first(count, &phi))
    }

    /// `u_n(t) / (sin^{α+½}t cos^{β+½}t)` for `n < count`: a polynomial in
    /// `cos 2t`, finite at both endpoints.
    pub fn polynomial_parts_at(&self, count: usize, t: T) -> Result<Vec<T>> {
        if count > self.usable {
            return Err(Error::IndexOutOfRange {
                index: count - 1,
                usable: self.usable,
            });
        }
        check_interval("polynomial_parts_at", t)?;
        let mut phi = vec![T::zero(); self.basis.size()];
        self.basis.eval_polys(t, &mut phi);
        Ok(self.combine_first(count, &phi))
    }

    fn combine_first(&self, count: usize, phi: &[T]) -> Vec<T> {
        let k = self.basis.size();
        let mut out = vec![T::zero(); count];
        for (i, &p) in phi.iter().enumerate() {
            let row = &self.coeffs[i * k..i * k + count];
            for (o, &c) in out.iter_mut().zip(row) {
                *o += c * p;
            }
        }
        out
    }

    /// `u_n(t)/t^{α+½}` (left) or `u_n(t)/(π/2-t)^{β+½}` (right), `h` being
    /// the distance to the endpoint.
    fn scaled_near_endpoint(&self, n: usize, side: Side, h: T) -> T {
        let mut phi = vec![T::zero(); self.basis.size()];
        self.basis.scaled_near_endpoint(side, h, &mut phi);
        self.combine(n, &phi)
    }

    /// `c_n = lim u_n(t)/t^{α+½}` (left) or `d_n = lim u_n(t)/(π/2-t)^{β+½}`
    /// (right) by two levels of Richardson extrapolation in `h²`.
    pub fn endpoint_constant(&self, n: usize, side: Side) -> Result<T> {
        self.check_index(n)?;
        let g: Vec<T> = RICHARDSON_STEPS
            .iter()
            .map(|&h| self.scaled_near_endpoint(n, side, T::lit(h)))
            .collect();
        let three = T::lit(3.0);
        let r1a = (T::lit(4.0) * g[1] - g[0]) / three;
        let r1b = (T::lit(4.0) * g[2] - g[1]) / three;
        let r2 = (T::lit(16.0) * r1b - r1a) / T::lit(15.0);
        let scale = r2.abs().max(T::min_positive_value());
        if (r2 - r1b).abs() > T::lit(RICHARDSON_TOL) * scale {
            return Err(Error::Extrapolation {
                n,
                previous: r1b.as_f64(),
                last: r2.as_f64(),
            });
        }
        Ok(r2)
    }

    /// The same limits summed exactly from `P_k(±1)`.
    pub fn endpoint_constant_series(&self, n: usize, side: Side) -> Result<T> {
        self.check_index(n)?;
        Ok(self.combine(n, self.basis.endpoint_limits(side)))
    }

    /// CSV with columns `n, mu_n, sigma_n, c_n, d_n` over the usable range;
    /// the endpoint constants are the exact series limits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,mu_n,sigma_n,c_n,d_n\n");
        for n in 0..self.usable {
            let mu = self.values[n];
            let c = self.combine(n, self.basis.endpoint_limits(Side::Left));
            let d = self.combine(n, self.basis.endpoint_limits(Side::Right));
            let _ = writeln!(out, "{n},{mu:e},{:e},{c:e},{d:e}", mu.max(T::zero()).sqrt());
        }
        out
    }
}

fn check_interval<T: Real>(function: &'static str, t: T) -> Result<()> {
    if t >= T::zero() && t <= T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: t.as_f64(),
            domain: "[0, π/2]",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gauss_legendre_rule;
    use crate::operator::PerturbationB;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn spec(a: f64, b: f64, coeffs: &[f64]) -> OperatorSpec<f64> {
        OperatorSpec::new(
            JacobiParams::new(a, b).unwrap(),
            PerturbationB::new(coeffs.to_vec()).unwrap(),
        )
        .unwrap()
    }

    fn sine_mode(n: usize, t: f64) -> f64 {
        2.0 / PI.sqrt() * (2.0 * (n + 1) as f64 * t).sin()
    }

    #[test]
    fn basis_eigenvalues_and_chebyshev_case() {
        let basis = build_basis(JacobiParams::new(0.5, 0.5).unwrap(), 30).unwrap();
        assert_eq!(basis.mu_j()[0], 4.0);
        let mut phi = vec![0.0; 30];
        for i in 1..400 {
            let t = FRAC_PI_2 * i as f64 / 400.0;
            basis.eval_all(t, &mut phi);
            for (n, &p) in phi.iter().enumerate() {
                assert!((p.abs() - sine_mode(n, t).abs()).abs() < 1e-10, "n = {n}, t = {t}");
            }
        }
    }

    #[test]
    fn basis_orthonormal_under_quadrature() {
        for &(a, b) in &[(0.6, 0.2), (-0.3, -0.4), (2.5, 1.0)] {
            let basis = build_basis(JacobiParams::new(a, b).unwrap(), 21).unwrap();
            let rule = gauss_jacobi_rule(40, a, b).unwrap();
            let scale = 2f64.powf(-a - b - 2.0);
            for m in 0..21 {
                for n in 0..21 {
                    let v: f64 = rule
                        .iter()
                        .map(|(x, w)| {
                            let mut p = vec![0.0; 21];
                            basis.polys_scaled(x, 1.0, &mut p);
                            w * scale * p[m] * p[n]
                        })
                        .sum();
                    let target = if m == n { 1.0 } else { 0.0 };
                    assert!((v - target).abs() < 1e-10, "({a},{b}) m={m} n={n}: {v}");
                }
            }
        }
    }

    #[test]
    fn basis_norm_matches_direct_quadrature() {
        let (a, b) = (0.6, 0.2);
        let basis = build_basis(JacobiParams::new(a, b).unwrap(), 6).unwrap();
        let gl = gauss_legendre_rule::<f64>(40).unwrap();
        for n in 0..6 {
            // substitute t = s² near 0 and π/2 - t = s² near π/2 to tame the
            // endpoint powers
            let left = gl.integrate_on(0.0, (FRAC_PI_4_HALF).sqrt(), |s| {
                2.0 * s * basis.eval(n, s * s).powi(2)
            });
            let right = gl.integrate_on(0.0, (FRAC_PI_4_HALF).sqrt(), |s| {
                2.0 * s * basis.eval(n, FRAC_PI_2 - s * s).powi(2)
            });
            let mid = gl.integrate_on(FRAC_PI_4_HALF, FRAC_PI_2 - FRAC_PI_4_HALF, |t| basis.eval(n, t).powi(2));
            assert!((left + mid + right - 1.0).abs() < 1e-10, "n = {n}: {}", left + mid + right);
        }
    }
    const FRAC_PI_4_HALF: f64 = std::f64::consts::FRAC_PI_8;

    #[test]
    fn constant_b_spectrum() {
        let d = EigenDecomposition::solve(&spec(0.5, 0.5, &[]), 16, 32).unwrap();
        assert!((d.eigenvalue(3).unwrap() - 60.0).abs() < 1e-10);
        for &(a, b) in &[(0.5, 0.5), (0.6, 0.2), (1.5, -0.25), (0.0, 0.0)] {
            let d = EigenDecomposition::solve(&spec(a, b, &[]), 128, 256).unwrap();
            for n in 0..=20 {
                let exact = 4.0 * n as f64 * (n as f64 + a + b + 1.0);
                let mu = d.eigenvalue(n).unwrap();
                assert!((mu - exact).abs() <= 1e-8 * exact.max(1.0), "({a},{b}) n={n}: {mu} vs {exact}");
            }
        }
    }

    #[test]
    fn constant_b_eigenfunctions_are_sines() {
        let d = EigenDecomposition::solve(&spec(0.5, 0.5, &[]), 40, 80).unwrap();
        for n in 0..=20 {
            let mut err: f64 = 0.0;
            for i in 0..=200 {
                let t = FRAC_PI_2 * i as f64 / 200.0;
                err = err.max((d.eigenfunction_at(n, t).unwrap() - sine_mode(n, t)).abs());
            }
            assert!(err < 1e-6, "n = {n}: {err}");
            let c = d.endpoint_constant(n, Side::Left).unwrap();
            let exact = 2.0 / PI.sqrt() * 2.0 * (n + 1) as f64;
            assert!((c - exact).abs() < 1e-8 * exact, "n = {n}: {c} vs {exact}");
        }
    }

    #[test]
    fn perturbed_bracket_and_orthonormality() {
        let s = spec(0.6, 0.2, &[0.2]);
        let d = EigenDecomposition::solve(&s, 64, 128).unwrap();
        let (lo, hi) = s.neg_chi_bounds();
        let mu_j = d.basis().mu_j();
        for (n, &mu) in d.eigenvalues().iter().enumerate() {
            assert!(mu >= mu_j[n] + lo - 1e-9 && mu <= mu_j[n] + hi + 1e-9, "n = {n}");
        }
        assert!(d.eigenvalues().windows(2).all(|w| w[0] < w[1]));
        for n in 0..d.usable() {
            let c = d.coefficients(n).unwrap();
            let norm: f64 = c.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            assert!(d.endpoint_constant_series(n, Side::Left).unwrap() > 0.0);
        }
        for m in 0..10 {
            for n in 0..10 {
                let cm = d.coefficients(m).unwrap();
                let cn = d.coefficients(n).unwrap();
                let dot: f64 = cm.iter().zip(&cn).map(|(x, y)| x * y).sum();
                let target = if m == n { 1.0 } else { 0.0 };
                assert!((dot - target).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn richardson_matches_series_limit() {
        let d = EigenDecomposition::solve(&spec(0.6, 0.2, &[0.2]), 64, 128).unwrap();
        for n in [0usize, 5, 17, 40] {
            for side in [Side::Left, Side::Right] {
                let r = d.endpoint_constant(n, side).unwrap();
                let s = d.endpoint_constant_series(n, side).unwrap();
                assert!((r - s).abs() < 1e-7 * s.abs(), "n = {n} {side:?}: {r} vs {s}");
            }
        }
    }

    #[test]
    fn tail_access_is_flagged() {
        let d = EigenDecomposition::solve(&spec(0.6, 0.2, &[0.2]), 16, 32).unwrap();
        assert_eq!(d.usable(), 12);
        assert!(matches!(d.eigenfunction_at(12, 0.3), Err(Error::IndexOutOfRange { .. })));
        assert!(d.eigenfunction_unchecked(15, 0.3).is_ok());
        assert!(d.all_eigenvalues().includes_tail);
        assert!(EigenDecomposition::solve(&spec(0.6, 0.2, &[]), 7, 32).is_err());
        assert!(EigenDecomposition::solve(&spec(0.6, 0.2, &[]), 16, 31).is_err());
    }

    #[test]
    fn refinement_is_stable() {
        let d = EigenDecomposition::solve(&spec(0.6, 0.2, &[0.2]), 64, 128).unwrap();
        let r = d.refine(96, 192).unwrap();
        assert!(r.report().eigenvalue_shift.unwrap() < 1e-8);
        assert_eq!(r.report().basis_size, 96);
    }

    #[test]
    fn batch_evaluation_matches_single() {
        let d = EigenDecomposition::solve(&spec(0.6, 0.2, &[0.2]), 32, 64).unwrap();
        let all = d.eigenfunctions_at(24, 0.41).unwrap();
        for (n, &v) in all.iter().enumerate() {
            assert!((v - d.eigenfunction_at(n, 0.41).unwrap()).abs() < 1e-13);
        }
        let csv = d.to_csv();
        assert!(csv.starts_with("n,mu_n,sigma_n,c_n,d_n\n"));
        assert_eq!(csv.lines().count(), 25);
    }
}
