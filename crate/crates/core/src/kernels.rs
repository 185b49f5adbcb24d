//! Finite trigonometric sums, summability weights, and the kernels
//! `D_N` (cosine basis) and `T_N` (eigenbasis) of the summability means.

use std::fmt::Write as _;

use crate::eigensolver::EigenDecomposition;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::ln_gamma;

const SINGULAR_SIN: f64 = 1e-12;
const PRODUCT_FORM_MAX_THETA: f64 = 20.0;

/// Weights `r(n, N)` of a summability method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummabilitySequence<T> {
    kind: SummabilityKind<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SummabilityKind<T> {
    Rectangular,
    Cesaro { theta: T },
}

impl<T: Real> SummabilitySequence<T> {
    pub fn rectangular() -> Self {
        Self {
            kind: SummabilityKind::Rectangular,
        }
    }

    pub fn cesaro(theta: T) -> Result<Self> {
        if !(theta >= T::zero()) || !theta.is_finite() {
            return Err(Error::InvalidParameter {
                field: "theta",
                reason: format!("Cesàro order must be finite and nonnegative, got {theta}"),
            });
        }
        Ok(Self {
            kind: SummabilityKind::Cesaro { theta },
        })
    }

    pub fn kind(&self) -> SummabilityKind<T> {
        self.kind
    }

    /// `r(n, N)`; zero for `n > N`.
    pub fn weight(&self, n: usize, big_n: usize) -> T {
        match self.kind {
            SummabilityKind::Rectangular => {
                if n <= big_n {
                    T::one()
                } else {
                    T::zero()
                }
            }
            SummabilityKind::Cesaro { theta } => cesaro_weight(theta, n, big_n),
        }
    }

    /// `r(0, N), ..., r(N, N)`; every later weight vanishes.
    pub fn weights(&self, big_n: usize) -> Vec<T> {
        (0..=big_n).map(|n| self.weight(n, big_n)).collect()
    }

    /// `Σ_{n=0}^{2N} |r(n, N) - r(n+1, N)|`.
    pub fn variation(&self, big_n: usize) -> T {
        (0..=2 * big_n)
            .map(|n| (self.weight(n, big_n) - self.weight(n + 1, big_n)).abs())
            .sum()
    }

    /// `lim_{N→∞} r(n, N)`, equal to 1 for both supported kinds.
    pub fn limit(&self) -> T {
        T::one()
    }
}

/// `A^θ_{N-n} / A^θ_N` with `A^θ_m = binom(m+θ, m)`, zero when `n > N`.
pub fn cesaro_weight<T: Real>(theta: T, n: usize, big_n: usize) -> T {
    if n > big_n {
        return T::zero();
    }
    if theta == T::zero() || n == 0 {
        return T::one();
    }
    let m = big_n - n;
    let int_theta = theta.round();
    if int_theta == theta && theta <= T::lit(PRODUCT_FORM_MAX_THETA) {
        let k_max = int_theta.to_usize().unwrap_or(0);
        return (1..=k_max).fold(T::one(), |acc, k| {
            acc * T::from_index(m + k) / T::from_index(big_n + k)
        });
    }
    let lg = |x: T| ln_gamma(x).expect("positive Gamma argument");
    let one = T::one();
    let mf = T::from_index(m);
    let nf = T::from_index(big_n);
    (lg(mf + theta + one) - lg(mf + one) - lg(nf + theta + one) + lg(nf + one)).exp()
}

/// The sums `Σ_{n=M}^{N} w_n f(2nt)` with `w_n ∈ {1, 1/n, (-1)^n, (-1)^n/n}`
/// and `f ∈ {cos, sin}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrigKind {
    C0,
    S0,
    C1,
    S1,
    C0m,
    S0m,
    C1m,
    S1m,
}

impl TrigKind {
    pub const ALL: [TrigKind; 8] = [
        TrigKind::C0,
        TrigKind::S0,
        TrigKind::C1,
        TrigKind::S1,
        TrigKind::C0m,
        TrigKind::S0m,
        TrigKind::C1m,
        TrigKind::S1m,
    ];

    /// Kinds carrying the `1/n` weight need `M ≥ 1`.
    pub fn needs_positive_m(self) -> bool {
        matches!(self, TrigKind::C1 | TrigKind::S1 | TrigKind::C1m | TrigKind::S1m)
    }
}

/// Reduces `t` modulo π into `(-π/2, π/2]`.
fn reduce_mod_pi<T: Real>(t: T) -> T {
    let pi = T::PI();
    let r = t - (t / pi).round() * pi;
    if r <= -T::FRAC_PI_2() {
        r + pi
    } else {
        r
    }
}

fn closed_zero<T: Real>(cosine: bool, m: usize, n: usize, t: T) -> T {
    let d = reduce_mod_pi(t);
    let count = T::from_index(n - m + 1);
    let s = d.sin();
    if s.abs() < T::lit(SINGULAR_SIN) {
        return if cosine { count } else { T::from_index(n + m) * count * d };
    }
    let phase = T::from_index(n + m) * d;
    let lead = if cosine { phase.cos() } else { phase.sin() };
    lead * (count * d).sin() / s
}

fn direct_one<T: Real>(cosine: bool, m: usize, n: usize, t: T) -> T {
    let d = reduce_mod_pi(t);
    (m..=n)
        .map(|k| {
            let arg = T::from_index(2 * k) * d;
            let f = if cosine { arg.cos() } else { arg.sin() };
            f / T::from_index(k)
        })
        .sum()
}

/// Evaluates one of the sums over `M ≤ n ≤ N`. `C0`/`S0` use their closed
/// forms, `C1`/`S1` direct summation, and the alternating variants the
/// half-period shifts of the plain ones.
pub fn trig_sum<T: Real>(kind: TrigKind, m: usize, n: usize, t: T) -> Result<T> {
    if m > n {
        return Err(Error::InvalidParameter {
            field: "M",
            reason: format!("need M <= N, got M = {m}, N = {n}"),
        });
    }
    if kind.needs_positive_m() && m == 0 {
        return Err(Error::InvalidParameter {
            field: "M",
            reason: "sums weighted by 1/n need M >= 1".into(),
        });
    }
    let half = T::lit(0.5);
    let q = T::FRAC_PI_2();
    Ok(match kind {
        TrigKind::C0 => closed_zero(true, m, n, t),
        TrigKind::S0 => closed_zero(false, m, n, t),
        TrigKind::C1 => direct_one(true, m, n, t),
        TrigKind::S1 => direct_one(false, m, n, t),
        TrigKind::C0m => half * (closed_zero(true, m, n, t + q) + closed_zero(true, m, n, q - t)),
        TrigKind::S0m => half * (closed_zero(false, m, n, t + q) - closed_zero(false, m, n, q - t)),
        TrigKind::C1m => half * (direct_one(true, m, n, t + q) + direct_one(true, m, n, t - q)),
        TrigKind::S1m => half * (direct_one(false, m, n, t + q) + direct_one(false, m, n, t - q)),
    })
}

/// `D_N(x, y) = (2/π) r(0,N) + (4/π) Σ_{n=1}^{n_cap} r(n,N) cos 2nx cos 2ny`.
pub fn dirichlet_kernel<T: Real>(r: &SummabilitySequence<T>, big_n: usize, x: T, y: T, n_cap: usize) -> T {
    let two_over_pi = T::FRAC_2_PI();
    let mut total = two_over_pi * r.weight(0, big_n);
    for n in 1..=n_cap {
        let w = r.weight(n, big_n);
        if w == T::zero() {
            continue;
        }
        let k = T::from_index(2 * n);
        total += T::lit(2.0) * two_over_pi * w * (k * x).cos() * (k * y).cos();
    }
    total
}

/// Rectangular `D_N` as `(2/π) C0_{0,N}(x-y) + (2/π) C0_{1,N}(x+y)`.
pub fn dirichlet_kernel_closed<T: Real>(big_n: usize, x: T, y: T) -> T {
    let minus = closed_zero(true, 0, big_n, x - y);
    let plus = if big_n >= 1 {
        closed_zero(true, 1, big_n, x + y)
    } else {
        T::zero()
    };
    T::FRAC_2_PI() * (minus + plus)
}

/// `D_N` with precomputed cosine tables `cos 2nx`, `cos 2ny`.
fn dirichlet_from_tables<T: Real>(weights: &[T], cx: &[T], cy: &[T]) -> T {
    let two_over_pi = T::FRAC_2_PI();
    let mut total = two_over_pi * weights[0];
    for n in 1..weights.len() {
        total += T::lit(2.0) * two_over_pi * weights[n] * cx[n] * cy[n];
    }
    total
}

/// `T_N(x, y) = Σ_{n=0}^{n_cap} r(n,N) u_n(x) u_n(y)`.
pub fn eigen_kernel<T: Real>(
    decomp: &EigenDecomposition<T>,
    r: &SummabilitySequence<T>,
    big_n: usize,
    x: T,
    y: T,
    n_cap: usize,
) -> Result<T> {
    let ux = decomp.eigenfunctions_at(n_cap + 1, x)?;
    let uy = decomp.eigenfunctions_at(n_cap + 1, y)?;
    Ok((0..=n_cap).map(|n| r.weight(n, big_n) * ux[n] * uy[n]).sum())
}

/// One row of a kernel-difference scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelDiffRow<T> {
    pub big_n: usize,
    pub max_abs_diff: T,
    pub argmax_y: T,
}

/// `max_y |T_N(x, y) - D_N(x, y)|` for each `N` of a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelDiffReport<T> {
    pub x: T,
    pub rows: Vec<KernelDiffRow<T>>,
}

impl<T: Real> KernelDiffReport<T> {
    /// Largest per-`N` maximum.
    pub fn overall_max(&self) -> T {
        self.rows.iter().map(|r| r.max_abs_diff).fold(T::zero(), T::max)
    }

    /// Max over the last quartile of rows divided by the max over the first.
    pub fn quartile_ratio(&self) -> T {
        let len = self.rows.len();
        let q = (len / 4).max(1);
        let first = self.rows[..q].iter().map(|r| r.max_abs_diff).fold(T::zero(), T::max);
        let last = self.rows[len - q..].iter().map(|r| r.max_abs_diff).fold(T::zero(), T::max);
        last / first
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,max_abs_diff,argmax_y\n");
        for row in &self.rows {
            let _ = writeln!(out, "{},{:e},{:e}", row.big_n, row.max_abs_diff, row.argmax_y);
        }
        out
    }
}

/// Scans `|T_N - D_N|` over `y_grid` at fixed interior `x` for each `N`.
pub fn kernel_diff_scan<T: Real>(
    decomp: &EigenDecomposition<T>,
    r: &SummabilitySequence<T>,
    x: T,
    n_list: &[usize],
    y_grid: &[T],
) -> Result<KernelDiffReport<T>> {
    let interior = |v: T| v > T::zero() && v < T::FRAC_PI_2();
    if !interior(x) {
        return Err(Error::Domain {
            function: "kernel_diff_scan",
            value: x.as_f64(),
            domain: "(0, π/2)",
        });
    }
    if let Some(&y) = y_grid.iter().find(|&&y| !interior(y)) {
        return Err(Error::Domain {
            function: "kernel_diff_scan",
            value: y.as_f64(),
            domain: "(0, π/2)",
        });
    }
    let Some(&n_max) = n_list.iter().max() else {
        return Ok(KernelDiffReport { x, rows: Vec::new() });
    };
    let count = n_max + 1;
    let cos_table = |v: T| -> Vec<T> { (0..count).map(|n| (T::from_index(2 * n) * v).cos()).collect() };
    let ux = decomp.eigenfunctions_at(count, x)?;
    let cx = cos_table(x);
    let mut uy = Vec::with_capacity(y_grid.len());
    let mut cy = Vec::with_capacity(y_grid.len());
    for &y in y_grid {
        uy.push(decomp.eigenfunctions_at(count, y)?);
        cy.push(cos_table(y));
    }
    let rows = n_list
        .iter()
        .map(|&big_n| {
            let w = r.weights(big_n);
            let mut best = KernelDiffRow {
                big_n,
                max_abs_diff: T::zero(),
                argmax_y: y_grid.first().copied().unwrap_or(x),
            };
            for (j, &y) in y_grid.iter().enumerate() {
                let t_n: T = (0..=big_n).map(|n| w[n] * ux[n] * uy[j][n]).sum();
                let d_n = dirichlet_from_tables(&w, &cx, &cy[j]);
                let diff = (t_n - d_n).abs();
                if diff > best.max_abs_diff {
                    best.max_abs_diff = diff;
                    best.argmax_y = y;
                }
            }
            best
        })
        .collect();
    Ok(KernelDiffReport { x, rows })
}
