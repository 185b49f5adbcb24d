//! Dense symmetric eigensolver (cyclic Jacobi rotations) and Gaussian
//! quadrature rules generated from the Jacobi recurrence (Golub–Welsch).

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::ln_gamma;

const MAX_SWEEPS: usize = 30;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Real> SymmetricMatrix<T> {
    /// Builds a matrix from row-major entries, replacing each off-diagonal
    /// pair by its mean so that `m[i][j] == m[j][i]` holds exactly.
    pub fn from_row_major(dim: usize, mut entries: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter {
                field: "dimension",
                reason: "must be at least 1".into(),
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidParameter {
                field: "entries",
                reason: format!("expected {} values, got {}", dim * dim, entries.len()),
            });
        }
        let half = T::lit(0.5);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let m = (entries[i * dim + j] + entries[j * dim + i]) * half;
                entries[i * dim + j] = m;
                entries[j * dim + i] = m;
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> T) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::from_row_major(dim, entries)
    }

    pub fn diagonal(values: &[T]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { T::zero() })
    }

    /// Symmetric tridiagonal matrix; `off[k]` couples rows `k` and `k + 1`.
    pub fn tridiagonal(diag: &[T], off: &[T]) -> Result<Self> {
        if off.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter {
                field: "off",
                reason: "off-diagonal must be one shorter than the diagonal".into(),
            });
        }
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                diag[i]
            } else if j == i + 1 {
                off[i]
            } else if i == j + 1 {
                off[j]
            } else {
                T::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    pub fn norm_frobenius(&self) -> T {
        self.entries.iter().map(|&x| x * x).sum::<T>().sqrt()
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    /// Row-major `dim x dim`; column `k` is the eigenvector of `values[k]`.
    pub vectors: Vec<T>,
    pub sweeps: usize,
}

impl<T: Real> SymmetricEigen<T> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Component `i` of eigenvector `k`.
    #[inline]
    pub fn vector_component(&self, i: usize, k: usize) -> T {
        self.vectors[i * self.dim() + k]
    }

    pub fn vector(&self, k: usize) -> Vec<T> {
        (0..self.dim()).map(|i| self.vector_component(i, k)).collect()
    }
}

/// Runs cyclic Jacobi sweeps on `a` (row-major, symmetric) until the
/// off-diagonal Frobenius norm drops below the tolerance. Rotations are
/// accumulated into the rows of `vt` (the transposed eigenvector matrix).
fn jacobi_sweeps<T: Real>(n: usize, a: &mut [T], mut vt: Option<&mut [T]>) -> Result<usize> {
    let frob = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    let target = T::lit(OFF_DIAGONAL_TOL) * frob;
    let off_norm = |a: &[T]| {
        let mut s = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        (s + s).sqrt()
    };
    if frob == T::zero() {
        return Ok(0);
    }
    let tiny = T::epsilon() * T::lit(1e-3);
    for sweep in 0..MAX_SWEEPS {
        if off_norm(a) <= target {
            return Ok(sweep);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                if apq.abs() <= tiny * (app.abs() * aqq.abs()).sqrt() {
                    a[p * n + q] = T::zero();
                    a[q * n + p] = T::zero();
                    continue;
                }
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // Rows p and q are contiguous; rotate them, then mirror into
                // the columns.
                {
                    let (head, tail) = a.split_at_mut(q * n);
                    let row_p = &mut head[p * n..(p + 1) * n];
                    let row_q = &mut tail[..n];
                    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
                        let (xp, yq) = (*x, *y);
                        *x = c * xp - s * yq;
                        *y = s * xp + c * yq;
                    }
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
                for k in 0..n {
                    if k != p && k != q {
                        a[k * n + p] = a[p * n + k];
                        a[k * n + q] = a[q * n + k];
                    }
                }
                if let Some(vt) = vt.as_deref_mut() {
                    let (head, tail) = vt.split_at_mut(q * n);
                    let row_p = &mut head[p * n..(p + 1) * n];
                    let row_q = &mut tail[..n];
                    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
                        let (xp, yq) = (*x, *y);
                        *x = c * xp - s * yq;
                        *y = s * xp + c * yq;
                    }
                }
            }
        }
    }
    let residual = off_norm(a);
    if residual <= target {
        Ok(MAX_SWEEPS)
    } else {
        Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
            norm: frob.as_f64(),
            off_diagonal: residual.as_f64(),
        })
    }
}

/// Full eigendecomposition of a symmetric matrix. Works on a private copy.
pub fn symmetric_eigen<T: Real>(m: &SymmetricMatrix<T>) -> Result<SymmetricEigen<T>> {
    let n = m.dim();
    let mut a = m.entries().to_vec();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let sweeps = jacobi_sweeps(n, &mut a, Some(&mut v))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![T::zero(); n * n];
    for (k, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + k] = v[src * n + i];
        }
    }
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Eigenvalues only, ascending.
pub fn symmetric_eigenvalues<T: Real>(m: &SymmetricMatrix<T>) -> Result<Vec<T>> {
    let n = m.dim();
    let mut a = m.entries().to_vec();
    jacobi_sweeps(n, &mut a, None)?;
    let mut values: Vec<T> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(values)
}

/// Number of eigenvalues below `x` of the symmetric tridiagonal matrix
/// (Sturm sequence of the leading principal minors).
fn sturm_count<T: Real>(diag: &[T], off: &[T], x: T) -> usize {
    let floor = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = T::one();
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - x } else { d - x - off[i - 1] * off[i - 1] / q };
        if q.abs() < floor {
            q = -floor;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// Eigenvalues, ascending, of a symmetric tridiagonal matrix by bisection
/// on Sturm counts inside the Gershgorin interval.
pub fn tridiagonal_eigenvalues<T: Real>(diag: &[T], off: &[T]) -> Vec<T> {
    let n = diag.len();
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1].abs() } else { T::zero() };
        let right = if i + 1 < n { off[i].abs() } else { T::zero() };
        left + right
    };
    let lo = (0..n).map(|i| diag[i] - radius(i)).fold(T::infinity(), T::min);
    let hi = (0..n).map(|i| diag[i] + radius(i)).fold(T::neg_infinity(), T::max);
    let tol = T::epsilon() * T::lit(2.0) * lo.abs().max(hi.abs()).max(T::min_positive_value());
    let mut values = Vec::with_capacity(n);
    let mut floor = lo;
    for k in 0..n {
        let (mut a, mut b) = (floor, hi);
        while b - a > tol {
            let mid = (a + b) * T::lit(0.5);
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(diag, off, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        let value = (a + b) * T::lit(0.5);
        values.push(value);
        floor = a;
    }
    values
}

/// Integration interval of a [`QuadratureRule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureDomain {
    /// `[-1, 1]`
    Symmetric,
    /// `[0, π/2]`
    QuarterPeriod,
}

/// Nodes (strictly increasing) and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    domain: QuadratureDomain,
}

impl<T: Real> QuadratureRule<T> {
    pub fn new(nodes: Vec<T>, weights: Vec<T>, domain: QuadratureDomain) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(Error::InvalidParameter {
                field: "weights",
                reason: "node and weight counts must match and be nonzero".into(),
            });
        }
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter {
                field: "nodes",
                reason: "nodes must be strictly increasing".into(),
            });
        }
        if weights.iter().any(|&w| !(w > T::zero())) {
            return Err(Error::InvalidParameter {
                field: "weights",
                reason: "weights must be positive".into(),
            });
        }
        Ok(Self {
            nodes,
            weights,
            domain,
        })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn domain(&self) -> QuadratureDomain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Sum of `w_i f(x_i)` over the rule.
    pub fn integrate(&self, mut f: impl FnMut(T) -> T) -> T {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Applies a Gauss–Legendre-type rule on `[-1, 1]` to `[a, b]`.
    pub fn integrate_on(&self, a: T, b: T, mut f: impl FnMut(T) -> T) -> T {
        debug_assert_eq!(self.domain, QuadratureDomain::Symmetric);
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        half * self.iter().map(|(x, w)| w * f(mid + half * x)).sum::<T>()
    }

    /// Composite rule over `[a, b]` with equal panels no wider than
    /// `max_width`.
    pub fn integrate_composite(&self, a: T, b: T, max_width: T, mut f: impl FnMut(T) -> T) -> T {
        if b <= a {
            return T::zero();
        }
        let panels = ((b - a) / max_width).ceil().to_usize().unwrap_or(1).max(1);
        let h = (b - a) / T::from_index(panels);
        (0..panels)
            .map(|i| {
                let lo = a + h * T::from_index(i);
                let hi = if i + 1 == panels { b } else { lo + h };
                self.integrate_on(lo, hi, &mut f)
            })
            .sum()
    }
}

/// Recurrence coefficients of the orthonormal Jacobi polynomials:
/// `x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}`.
/// Returns `(a_0..a_{q-1}, b_1..b_{q})` and the zeroth moment.
fn jacobi_recurrence<T: Real>(q: usize, alpha: T, beta: T) -> (Vec<T>, Vec<T>, T) {
    let one = T::one();
    let two = T::lit(2.0);
    let ab = alpha + beta;
    let diag = (0..q)
        .map(|k| {
            let s = two * T::from_index(k) + ab;
            if k == 0 {
                (beta - alpha) / (ab + two)
            } else {
                (beta * beta - alpha * alpha) / (s * (s + two))
            }
        })
        .collect();
    let off = (1..=q)
        .map(|k| {
            let kf = T::from_index(k);
            let s = two * kf + ab;
            if k == 1 {
                (T::lit(4.0) * (one + alpha) * (one + beta) / ((ab + two).powi(2) * (ab + T::lit(3.0)))).sqrt()
            } else {
                (T::lit(4.0) * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                    / (s * s * (s + one) * (s - one)))
                    .sqrt()
            }
        })
        .collect();
    let lg = |x: T| ln_gamma(x).expect("positive Gamma argument");
    let mu0 = ((ab + one) * T::LN_2() + lg(alpha + one) + lg(beta + one) - lg(ab + two)).exp();
    (diag, off, mu0)
}

/// `sum_k p_k(x)^2` over `k < q` together with `p_q(x)` and `p_q'(x)`.
fn orthonormal_sweep<T: Real>(x: T, diag: &[T], off: &[T], mu0: T) -> (T, T, T) {
    let q = diag.len();
    let mut p_prev = T::zero();
    let mut p = T::one() / mu0.sqrt();
    let mut d_prev = T::zero();
    let mut d = T::zero();
    let mut christoffel = T::zero();
    for k in 0..q {
        christoffel += p * p;
        let b_k = if k == 0 { T::zero() } else { off[k - 1] };
        let p_next = ((x - diag[k]) * p - b_k * p_prev) / off[k];
        let d_next = (p + (x - diag[k]) * d - b_k * d_prev) / off[k];
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (christoffel, p, d)
}

/// `q`-point Gauss–Jacobi rule for the weight `(1-x)^alpha (1+x)^beta`.
///
/// Nodes are the eigenvalues of the Jacobi matrix, found by Sturm bisection
/// and polished by a few Newton steps on the orthonormal polynomial; weights are the Christoffel numbers
/// `1 / sum_k p_k(x_i)^2`, which equal `mu_0 v_{0i}^2` from the eigenvectors.
pub fn gauss_jacobi_rule<T: Real>(q: usize, alpha: T, beta: T) -> Result<QuadratureRule<T>> {
    if q == 0 {
        return Err(Error::InvalidParameter {
            field: "q",
            reason: "at least one node required".into(),
        });
    }
    if !(alpha > -T::one()) || !(beta > -T::one()) {
        return Err(Error::InvalidParameter {
            field: "alpha/beta",
            reason: format!("need alpha, beta > -1, got ({alpha}, {beta})"),
        });
    }
    let (diag, off, mu0) = jacobi_recurrence(q, alpha, beta);
    let mut nodes = tridiagonal_eigenvalues(&diag, &off[..q - 1]);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (_, p, d) = orthonormal_sweep(*x, &diag, &off, mu0);
            if d == T::zero() {
                break;
            }
            let step = p / d;
            if !step.is_finite() || step.abs() > T::lit(1e-6) {
                break;
            }
            *x -= step;
        }
    }
    let weights = nodes
        .iter()
        .map(|&x| T::one() / orthonormal_sweep(x, &diag, &off, mu0).0)
        .collect();
    QuadratureRule::new(nodes, weights, QuadratureDomain::Symmetric)
}

/// `q`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_rule<T: Real>(q: usize) -> Result<QuadratureRule<T>> {
    gauss_jacobi_rule(q, T::zero(), T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_fn;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn max_residual(m: &SymmetricMatrix<f64>, e: &SymmetricEigen<f64>) -> (f64, f64) {
        let n = m.dim();
        let mut resid: f64 = 0.0;
        let mut ortho: f64 = 0.0;
        for k in 0..n {
            for i in 0..n {
                let mv: f64 = (0..n).map(|j| m.get(i, j) * e.vector_component(j, k)).sum();
                resid = resid.max((mv - e.values[k] * e.vector_component(i, k)).abs());
            }
            for l in 0..n {
                let dot: f64 = (0..n).map(|i| e.vector_component(i, k) * e.vector_component(i, l)).sum();
                let target = if k == l { 1.0 } else { 0.0 };
                ortho = ortho.max((dot - target).abs());
            }
        }
        (resid, ortho)
    }

    fn random_symmetric(n: usize, seed: u64) -> SymmetricMatrix<f64> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let entries = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        SymmetricMatrix::from_row_major(n, entries).unwrap()
    }

    #[test]
    fn symmetrization_is_exact() {
        let m = SymmetricMatrix::from_row_major(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert_eq!(m.get(0, 1), 2.5);
    }

    #[test]
    fn diagonal_matrix() {
        let m = SymmetricMatrix::<f64>::diagonal(&[1.0, 5.0, 2.0]).unwrap();
        let e = symmetric_eigen(&m).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 5.0]);
        let expected_rows = [0usize, 2, 1];
        for (k, &row) in expected_rows.iter().enumerate() {
            for i in 0..3 {
                let target = if i == row { 1.0 } else { 0.0 };
                assert_eq!(e.vector_component(i, k).abs(), target);
            }
        }
    }

    #[test]
    fn two_by_two() {
        let m = SymmetricMatrix::<f64>::from_row_major(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let e = symmetric_eigen(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn random_fifty() {
        let m = random_symmetric(50, 7);
        let e = symmetric_eigen(&m).unwrap();
        let (resid, ortho) = max_residual(&m, &e);
        assert!(resid <= 1e-10 * m.norm_inf(), "residual {resid}");
        assert!(ortho <= 1e-10, "orthonormality {ortho}");
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn reconstruction_up_to_three_hundred() {
        for &n in &[10usize, 120, 300] {
            let m = random_symmetric(n, n as u64);
            let e = symmetric_eigen(&m).unwrap();
            let mut err: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let r: f64 = (0..n)
                        .map(|k| e.vector_component(i, k) * e.values[k] * e.vector_component(j, k))
                        .sum();
                    err = err.max((r - m.get(i, j)).abs());
                }
            }
            assert!(err <= 1e-9 * m.norm_inf(), "n = {n}: {err}");
        }
    }

    #[test]
    fn legendre_small_rules() {
        let r1 = gauss_legendre_rule::<f64>(1).unwrap();
        assert!(r1.nodes()[0].abs() < 1e-15);
        assert!((r1.weights()[0] - 2.0).abs() < 1e-14);

        let r2 = gauss_legendre_rule::<f64>(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.nodes()[0] + s).abs() < 1e-15 && (r2.nodes()[1] - s).abs() < 1e-15);
        assert!((r2.weights()[0] - 1.0).abs() < 1e-14 && (r2.weights()[1] - 1.0).abs() < 1e-14);
        assert!((r2.integrate(|x| x * x) - 2.0 / 3.0).abs() < 2e-15);

        let r12 = gauss_legendre_rule::<f64>(12).unwrap();
        assert!((r12.integrate(f64::cos) - 2.0 * 1f64.sin()).abs() < 1e-12);
    }

    // m_{k+1} (alpha + beta + 2 + k) = (beta - alpha) m_k + k m_{k-1}, from
    // integrating x^k d/dx[(1-x)^{alpha+1} (1+x)^{beta+1}] by parts.
    fn jacobi_moments(count: usize, a: f64, b: f64) -> Vec<f64> {
        let m0 = 2f64.powf(a + b + 1.0) * gamma_fn(a + 1.0).unwrap() * gamma_fn(b + 1.0).unwrap()
            / gamma_fn(a + b + 2.0).unwrap();
        let mut m = vec![m0, m0 * (b - a) / (a + b + 2.0)];
        for k in 1..count {
            let next = ((b - a) * m[k] + k as f64 * m[k - 1]) / (a + b + 2.0 + k as f64);
            m.push(next);
        }
        m
    }

    #[test]
    fn gauss_jacobi_moments() {
        let (a, b) = (0.5, 0.25);
        let rule = gauss_jacobi_rule(20, a, b).unwrap();
        let moments = jacobi_moments(40, a, b);
        for (k, &mk) in moments.iter().enumerate().take(40) {
            let q = rule.integrate(|x| x.powi(k as i32));
            assert!((q - mk).abs() < 1e-12 * mk.abs().max(1e-3), "degree {k}: {q} vs {mk}");
        }
    }

    #[test]
    fn gauss_jacobi_zeroth_moment() {
        for &(q, a, b) in &[(1usize, 0.0, 0.0), (5, -0.5, -0.5), (17, 1.3, -0.2), (64, 2.0, 0.7), (300, -0.4, -0.45)] {
            let rule = gauss_jacobi_rule(q, a, b).unwrap();
            let total: f64 = rule.weights().iter().sum();
            let expected = 2f64.powf(a + b + 1.0) * gamma_fn(a + 1.0).unwrap() * gamma_fn(b + 1.0).unwrap()
                / gamma_fn(a + b + 2.0).unwrap();
            assert!((total - expected).abs() < 1e-12 * expected, "q = {q}");
            assert!(rule.nodes().iter().all(|&x| x > -1.0 && x < 1.0));
        }
    }

    #[test]
    fn chebyshev_first_kind_nodes() {
        // alpha = beta = -1/2: nodes cos((2i-1)π/(2q)), equal weights π/q.
        let q = 9;
        let rule = gauss_jacobi_rule(q, -0.5, -0.5).unwrap();
        for (i, (x, w)) in rule.iter().enumerate() {
            let k = q - i;
            let exact = ((2 * k - 1) as f64 * std::f64::consts::PI / (2 * q) as f64).cos();
            assert!((x - exact).abs() < 1e-14);
            assert!((w - std::f64::consts::PI / q as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_rules() {
        assert!(gauss_jacobi_rule::<f64>(0, 0.0, 0.0).is_err());
        assert!(gauss_jacobi_rule::<f64>(3, -1.0, 0.0).is_err());
        assert!(QuadratureRule::new(vec![0.0, 0.0], vec![1.0, 1.0], QuadratureDomain::Symmetric).is_err());
        assert!(QuadratureRule::new(vec![0.0, 1.0], vec![1.0, -1.0], QuadratureDomain::Symmetric).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn jacobi_nodes_inside_interval(q in 1usize..60, a in -0.95f64..3.0, b in -0.95f64..3.0) {
            let rule = gauss_jacobi_rule(q, a, b).unwrap();
            prop_assert!(rule.nodes().iter().all(|&x| x > -1.0 && x < 1.0));
            prop_assert!(rule.weights().iter().all(|&w| w > 0.0));
        }

        #[test]
        fn random_eigenpairs(n in 1usize..25, seed in any::<u64>()) {
            let m = random_symmetric(n, seed);
            let e = symmetric_eigen(&m).unwrap();
            let (resid, ortho) = max_residual(&m, &e);
            prop_assert!(resid <= 1e-10 * m.norm_inf().max(1e-300));
            prop_assert!(ortho <= 1e-10);
        }
    }
}
