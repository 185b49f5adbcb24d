//! Fourier coefficients in the eigenbasis and the cosine basis, the means
//! `T_N f` and `D_N f`, the weighted form `T^A_N f`, and equiconvergence
//! experiments.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::eigensolver::EigenDecomposition;
use crate::error::{Error, Result};
use crate::kernels::{SummabilityKind, SummabilitySequence};
use crate::linalg::{gauss_jacobi_rule, gauss_legendre_rule, QuadratureRule};
use crate::scalar::{linspace, Real};

const PANEL_ORDER: usize = 16;
/// Panels per oscillation period of the highest requested mode.
const PANELS_PER_PERIOD: usize = 8;
const MAX_PANEL: f64 = 0.05;
/// Geometric refinement levels of the first and last panel, where the
/// eigenfunctions behave like `t^{α+½}`.
const GRADING_LEVELS: usize = 40;
/// Coefficients below this (relative to the largest) are quadrature noise.
const NOISE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionKind<T> {
    /// `1` on `(a, b)`, `½` at `a` and `b`.
    Indicator { a: T, b: T },
    /// `exp(1 - 1/(1 - r²))` with `r = (x - center)/width`, zero for `|r| ≥ 1`.
    SmoothBump { center: T, width: T },
    /// `Σ c_i x^i`; empty coefficients give the zero function.
    Polynomial(Vec<T>),
    /// `cos(2kx)`
    CosineMode(usize),
}

/// Test function on `[0, π/2]` with its interior discontinuities.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFunction<T> {
    kind: FunctionKind<T>,
    breakpoints: Vec<T>,
}

impl<T: Real> PiecewiseFunction<T> {
    pub fn indicator(a: T, b: T) -> Result<Self> {
        if !(a > T::zero() && a < b && b < T::FRAC_PI_2()) {
            return Err(Error::InvalidParameter {
                field: "function",
                reason: format!("indicator needs 0 < a < b < π/2, got ({a}, {b})"),
            });
        }
        Ok(Self {
            kind: FunctionKind::Indicator { a, b },
            breakpoints: vec![a, b],
        })
    }

    pub fn smooth_bump(center: T, width: T) -> Result<Self> {
        if !(width > T::zero() && center - width > T::zero() && center + width < T::FRAC_PI_2()) {
            return Err(Error::InvalidParameter {
                field: "function",
                reason: format!("bump support ({}, {}) must lie inside (0, π/2)", center - width, center + width),
            });
        }
        Ok(Self {
            kind: FunctionKind::SmoothBump { center, width },
            breakpoints: Vec::new(),
        })
    }

    pub fn polynomial(coeffs: Vec<T>) -> Self {
        Self {
            kind: FunctionKind::Polynomial(coeffs),
            breakpoints: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::polynomial(Vec::new())
    }

    pub fn constant(c: T) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn cosine_mode(k: usize) -> Self {
        Self {
            kind: FunctionKind::CosineMode(k),
            breakpoints: Vec::new(),
        }
    }

    pub fn kind(&self) -> &FunctionKind<T> {
        &self.kind
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn eval(&self, x: T) -> T {
        match &self.kind {
            FunctionKind::Indicator { a, b } => {
                if x > *a && x < *b {
                    T::one()
                } else if x == *a || x == *b {
                    T::lit(0.5)
                } else {
                    T::zero()
                }
            }
            FunctionKind::SmoothBump { center, width } => {
                let r = (x - *center) / *width;
                let q = T::one() - r * r;
                if q <= T::zero() {
                    T::zero()
                } else {
                    (T::one() - q.recip()).exp()
                }
            }
            FunctionKind::Polynomial(c) => c.iter().rev().fold(T::zero(), |acc, &ci| acc * x + ci),
            FunctionKind::CosineMode(k) => (T::lit(2.0) * T::from_index(*k) * x).cos(),
        }
    }

    /// Smallest interval outside of which the function vanishes.
    pub fn support(&self) -> (T, T) {
        match &self.kind {
            FunctionKind::Indicator { a, b } => (*a, *b),
            FunctionKind::SmoothBump { center, width } => (*center - *width, *center + *width),
            _ => (T::zero(), T::FRAC_PI_2()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.kind, FunctionKind::Polynomial(c) if c.iter().all(|v| *v == T::zero()))
    }

    /// Whether the function vanishes on a neighbourhood of both endpoints.
    pub fn is_compactly_supported(&self) -> bool {
        self.is_zero() || matches!(self.kind, FunctionKind::Indicator { .. } | FunctionKind::SmoothBump { .. })
    }
}

impl<T: Real> fmt::Display for PiecewiseFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FunctionKind::Indicator { a, b } => write!(f, "indicator({a},{b})"),
            FunctionKind::SmoothBump { center, width } => write!(f, "bump({center},{width})"),
            FunctionKind::Polynomial(c) => {
                f.write_str("poly(")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
            FunctionKind::CosineMode(k) => write!(f, "cos({k})"),
        }
    }
}

impl<T: Real> FromStr for PiecewiseFunction<T> {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form, e.g. `indicator(0.3,0.8)`,
    /// `bump(0.7,0.25)`, `poly(1,0,-2)`, `cos(3)`; `zero` is `poly()`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidParameter {
            field: "function",
            reason,
        };
        let s = s.trim();
        if s == "zero" {
            return Ok(Self::zero());
        }
        let (name, rest) = s
            .split_once('(')
            .ok_or_else(|| bad(format!("expected name(args), got {s:?}")))?;
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| bad(format!("missing closing parenthesis in {s:?}")))?;
        let nums: Vec<f64> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<f64>().map_err(|e| bad(format!("{a:?}: {e}"))))
                .collect::<Result<_>>()?
        };
        let arity = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(bad(format!("{name} takes {k} arguments, got {}", nums.len())))
            }
        };
        match name.trim() {
            "indicator" => {
                arity(2)?;
                Self::indicator(T::lit(nums[0]), T::lit(nums[1]))
            }
            "bump" => {
                arity(2)?;
                Self::smooth_bump(T::lit(nums[0]), T::lit(nums[1]))
            }
            "poly" => Ok(Self::polynomial(nums.into_iter().map(T::lit).collect())),
            "cos" => {
                arity(1)?;
                let k = nums[0];
                if k < 0.0 || k.fract() != 0.0 {
                    return Err(bad(format!("cos mode must be a nonnegative integer, got {k}")));
                }
                Ok(Self::cosine_mode(k as usize))
            }
            other => Err(bad(format!("unknown function kind {other:?}"))),
        }
    }
}

/// Orthonormal system used for coefficients and means.
#[derive(Debug, Clone, Copy)]
pub enum Basis<'a, T> {
    Eigen(&'a EigenDecomposition<T>),
    /// `cos(2nx)`; coefficients are the unnormalized `∫ f cos 2ny dy`.
    Cosine,
}

enum Family<'a, T> {
    Eigen(&'a EigenDecomposition<T>),
    Polynomial(&'a EigenDecomposition<T>),
    Cosine,
}

impl<T: Real> Family<'_, T> {
    fn values(&self, count: usize, t: T) -> Result<Vec<T>> {
        match self {
            Family::Eigen(d) => d.eigenfunctions_at(count, t),
            Family::Polynomial(d) => d.polynomial_parts_at(count, t),
            Family::Cosine => Ok((0..count)
                .map(|n| (T::lit(2.0) * T::from_index(n) * t).cos())
                .collect()),
        }
    }

    fn graded(&self) -> bool {
        !matches!(self, Family::Cosine)
    }
}

/// Composite Gauss–Legendre nodes on `[lo, hi]`, split at `breaks`, with
/// geometric refinement of panels touching `0` or `π/2` when `graded`.
fn panel_nodes<T: Real>(rule: &QuadratureRule<T>, lo: T, hi: T, breaks: &[T], count: usize, graded: bool) -> Vec<(T, T)> {
    let period = T::PI() / T::from_index(count.max(1));
    let max_width = (period / T::from_index(PANELS_PER_PERIOD)).min(T::lit(MAX_PANEL));
    let mut cuts = vec![lo];
    cuts.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    cuts.push(hi);

    let mut out = Vec::new();
    let push_panel = |a: T, b: T, out: &mut Vec<(T, T)>| {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        out.extend(rule.iter().map(|(x, w)| (mid + half * x, half * w)));
    };
    for seg in cuts.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        if b <= a {
            continue;
        }
        let panels = ((b - a) / max_width).ceil().to_usize().unwrap_or(1).max(1);
        let h = (b - a) / T::from_index(panels);
        for i in 0..panels {
            let pa = a + h * T::from_index(i);
            let pb = if i + 1 == panels { b } else { pa + h };
            let at_left = graded && i == 0 && pa == T::zero();
            let at_right = graded && i + 1 == panels && pb == T::FRAC_PI_2();
            if at_left || at_right {
                let (anchor, dir) = if at_left { (pa, T::one()) } else { (pb, -T::one()) };
                let mut width = pb - pa;
                for _ in 0..GRADING_LEVELS {
                    let inner = anchor + dir * width * T::lit(0.5);
                    let outer = anchor + dir * width;
                    push_panel(inner.min(outer), inner.max(outer), &mut out);
                    width *= T::lit(0.5);
                }
                let tip = anchor + dir * width;
                push_panel(anchor.min(tip), anchor.max(tip), &mut out);
            } else {
                push_panel(pa, pb, &mut out);
            }
        }
    }
    out
}

fn project<T: Real>(
    family: Family<'_, T>,
    g: impl Fn(T) -> T,
    support: (T, T),
    breaks: &[T],
    count: usize,
) -> Result<Vec<T>> {
    let rule = gauss_legendre_rule::<T>(PANEL_ORDER)?;
    let mut acc = vec![T::zero(); count];
    if count == 0 {
        return Ok(acc);
    }
    for (t, w) in panel_nodes(&rule, support.0, support.1, breaks, count, family.graded()) {
        let gw = g(t) * w;
        if gw == T::zero() {
            continue;
        }
        for (a, v) in acc.iter_mut().zip(family.values(count, t)?) {
            *a += gw * v;
        }
    }
    Ok(acc)
}

/// Coefficients `0..count` of `f`: `∫ f u_n` (eigen) or `∫ f cos 2ny` (cosine).
pub fn coefficients<T: Real>(f: &PiecewiseFunction<T>, basis: Basis<'_, T>, count: usize) -> Result<Vec<T>> {
    let family = match basis {
        Basis::Eigen(d) => Family::Eigen(d),
        Basis::Cosine => Family::Cosine,
    };
    project(family, |t| f.eval(t), f.support(), f.breakpoints(), count)
}

pub fn coeff<T: Real>(f: &PiecewiseFunction<T>, basis: Basis<'_, T>, n: usize) -> Result<T> {
    Ok(coefficients(f, basis, n + 1)?[n])
}

/// Coefficients of one function in one basis, computed once up to a cutoff
/// and reused for every `N` below it.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientCache<T> {
    cosine: bool,
    values: Vec<T>,
}

impl<T: Real> CoefficientCache<T> {
    pub fn new(f: &PiecewiseFunction<T>, basis: Basis<'_, T>, cutoff: usize) -> Result<Self> {
        Ok(Self {
            cosine: matches!(basis, Basis::Cosine),
            values: coefficients(f, basis, cutoff + 1)?,
        })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn cutoff(&self) -> usize {
        self.values.len() - 1
    }

    /// `Σ_n r_{n,N} c_n φ_n(x)` with `φ_n` the values at `x` of the basis;
    /// the cosine basis gets the `2/π`, `4/π` normalization.
    fn sum_with(&self, weights: &[T], phi: &[T]) -> T {
        let two_over_pi = T::lit(2.0) / T::PI();
        weights
            .iter()
            .zip(&self.values)
            .zip(phi)
            .enumerate()
            .map(|(n, ((&w, &c), &p))| {
                let norm = if !self.cosine {
                    T::one()
                } else if n == 0 {
                    two_over_pi
                } else {
                    two_over_pi * T::lit(2.0)
                };
                norm * w * c * p
            })
            .sum()
    }
}

fn check_cutoff(big_n: usize, available: usize, field: &'static str) -> Result<()> {
    if big_n >= available {
        return Err(Error::IndexOutOfRange {
            index: big_n,
            usable: available,
        });
    }
    let _ = field;
    Ok(())
}

/// `T_N f` (eigen basis) or `D_N f` (cosine basis) on `x_grid`.
pub fn apply_means<T: Real>(
    f: &PiecewiseFunction<T>,
    basis: Basis<'_, T>,
    r: &SummabilitySequence<T>,
    big_n: usize,
    x_grid: &[T],
) -> Result<Vec<T>> {
    if let Basis::Eigen(d) = basis {
        check_cutoff(big_n, d.usable(), "N")?;
    }
    let cache = CoefficientCache::new(f, basis, big_n)?;
    means_from_cache(&cache, basis, r, big_n, x_grid)
}

/// Evaluates means from precomputed coefficients.
pub fn means_from_cache<T: Real>(
    cache: &CoefficientCache<T>,
    basis: Basis<'_, T>,
    r: &SummabilitySequence<T>,
    big_n: usize,
    x_grid: &[T],
) -> Result<Vec<T>> {
    check_cutoff(big_n, cache.values.len(), "N")?;
    let weights = r.weights(big_n);
    let family = match basis {
        Basis::Eigen(d) => Family::Eigen(d),
        Basis::Cosine => Family::Cosine,
    };
    x_grid
        .iter()
        .map(|&x| Ok(cache.sum_with(&weights, &family.values(big_n + 1, x)?)))
        .collect()
}

/// How the coefficients `F f(n) = ∫ f v_n A dt` of the weighted form are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneralRoute {
    /// `∫ (A^{1/2} f) u_n dt` on graded panels.
    Identity,
    /// `∫ f v_n A dt` on graded panels with `v_n = B^{-1/2} p_n`.
    Direct,
    /// Gauss–Jacobi in `x = cos 2t` with `points` nodes. Accurate only for
    /// functions smooth in `cos 2t`.
    GaussJacobi { points: usize },
}

/// `F f(n)` for `n < count`.
pub fn general_form_coefficients<T: Real>(
    f: &PiecewiseFunction<T>,
    decomp: &EigenDecomposition<T>,
    count: usize,
    route: GeneralRoute,
) -> Result<Vec<T>> {
    let spec = decomp.spec();
    let sqrt_a = |t: T| spec.weight_a_at(t).map(|a| a.sqrt()).unwrap_or(T::zero());
    match route {
        GeneralRoute::Identity => project(
            Family::Eigen(decomp),
            |t| sqrt_a(t) * f.eval(t),
            f.support(),
            f.breakpoints(),
            count,
        ),
        GeneralRoute::Direct => project(
            Family::Polynomial(decomp),
            |t| {
                let a = spec.weight_a_at(t).unwrap_or(T::zero());
                f.eval(t) * a / spec.perturbation().value(t).sqrt()
            },
            f.support(),
            f.breakpoints(),
            count,
        ),
        GeneralRoute::GaussJacobi { points } => {
            if count > decomp.usable() {
                return Err(Error::IndexOutOfRange {
                    index: count - 1,
                    usable: decomp.usable(),
                });
            }
            let (a, b) = (spec.params().alpha(), spec.params().beta());
            let rule = gauss_jacobi_rule(points, a, b)?;
            let scale = T::lit(2.0).powf(-a - b - T::lit(2.0));
            let mut acc = vec![T::zero(); count];
            for (x, w) in rule.iter() {
                let t = x.acos() * T::lit(0.5);
                let gw = scale * w * f.eval(t) * spec.perturbation().value(t).sqrt();
                if gw == T::zero() {
                    continue;
                }
                for (c, p) in acc.iter_mut().zip(decomp.polynomial_parts_at(count, t)?) {
                    *c += gw * p;
                }
            }
            Ok(acc)
        }
    }
}

fn check_interior<T: Real>(x_grid: &[T]) -> Result<()> {
    match x_grid.iter().find(|&&x| !(x > T::zero() && x < T::FRAC_PI_2())) {
        Some(&x) => Err(Error::Domain {
            function: "apply_means_general_form",
            value: x.as_f64(),
            domain: "(0, π/2)",
        }),
        None => Ok(()),
    }
}

/// `T^A_N f(x) = A^{-1/2}(x) T_N(A^{1/2} f)(x)` on an interior grid.
pub fn apply_means_general_form<T: Real>(
    f: &PiecewiseFunction<T>,
    decomp: &EigenDecomposition<T>,
    r: &SummabilitySequence<T>,
    big_n: usize,
    x_grid: &[T],
) -> Result<Vec<T>> {
    check_interior(x_grid)?;
    check_cutoff(big_n, decomp.usable(), "N")?;
    let cache = CoefficientCache {
        cosine: false,
        values: general_form_coefficients(f, decomp, big_n + 1, GeneralRoute::Identity)?,
    };
    let tn = means_from_cache(&cache, Basis::Eigen(decomp), r, big_n, x_grid)?;
    x_grid
        .iter()
        .zip(tn)
        .map(|(&x, v)| Ok(v / decomp.spec().weight_a_at(x)?.sqrt()))
        .collect()
}

/// `Σ r_{n,N} F f(n) v_n(x)` with directly computed `F f(n)` and `v_n`.
pub fn general_form_direct_sum<T: Real>(
    f: &PiecewiseFunction<T>,
    decomp: &EigenDecomposition<T>,
    r: &SummabilitySequence<T>,
    big_n: usize,
    x_grid: &[T],
) -> Result<Vec<T>> {
    check_interior(x_grid)?;
    check_cutoff(big_n, decomp.usable(), "N")?;
    let coeffs = general_form_coefficients(f, decomp, big_n + 1, GeneralRoute::Direct)?;
    let weights = r.weights(big_n);
    x_grid
        .iter()
        .map(|&x| {
            let p = decomp.polynomial_parts_at(big_n + 1, x)?;
            let inv_sqrt_b = decomp.spec().perturbation().value(x).sqrt().recip();
            Ok(weights.iter().zip(&coeffs).zip(&p).map(|((&w, &c), &v)| w * c * v).sum::<T>() * inv_sqrt_b)
        })
        .collect()
}

/// `T_N f`, `D_N f` and their difference at one grid point for the last `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint<T> {
    pub x: T,
    pub t_n: T,
    pub d_n: T,
    pub diff: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquiconvReport<T> {
    pub function: String,
    pub summability: String,
    pub gamma: (T, T),
    pub grid_points: usize,
    pub n_list: Vec<usize>,
    /// `max_{x ∈ Γ-grid} |T_N f(x) - D_N f(x)|` for each entry of `n_list`.
    pub e_n: Vec<T>,
    /// Values at the largest `N`.
    pub trace: Vec<TracePoint<T>>,
}

impl<T: Real> EquiconvReport<T> {
    /// Max of `e_N` over `N ∈ [lo, hi]`; `None` if no listed `N` falls there.
    pub fn window_max(&self, lo: usize, hi: usize) -> Option<T> {
        self.n_list
            .iter()
            .zip(&self.e_n)
            .filter(|(n, _)| (lo..=hi).contains(*n))
            .map(|(_, &e)| e)
            .reduce(T::max)
    }

    /// `late / early` window maxima; zero when both vanish.
    pub fn decay_ratio(&self, early: (usize, usize), late: (usize, usize)) -> Option<T> {
        let e = self.window_max(early.0, early.1)?;
        let l = self.window_max(late.0, late.1)?;
        Some(if e == T::zero() {
            if l == T::zero() {
                T::zero()
            } else {
                T::infinity()
            }
        } else {
            l / e
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,e_N\n");
        for (n, e) in self.n_list.iter().zip(&self.e_n) {
            let _ = writeln!(out, "{n},{e:e}");
        }
        out
    }

    pub fn trace_csv(&self) -> String {
        let mut out = String::from("x,T_N f,D_N f,diff\n");
        for p in &self.trace {
            let _ = writeln!(out, "{:e},{:e},{:e},{:e}", p.x, p.t_n, p.d_n, p.diff);
        }
        out
    }
}

fn describe<T: Real>(r: &SummabilitySequence<T>) -> String {
    match r.kind() {
        SummabilityKind::Rectangular => "rectangular".into(),
        SummabilityKind::Cesaro { theta } => format!("cesaro({theta})"),
    }
}

/// `e_N = max |T_N f - D_N f|` over `grid_points` equispaced points of `Γ`.
pub fn equiconv_experiment<T: Real>(
    f: &PiecewiseFunction<T>,
    decomp: &EigenDecomposition<T>,
    r: &SummabilitySequence<T>,
    n_list: &[usize],
    gamma: (T, T),
    grid_points: usize,
) -> Result<EquiconvReport<T>> {
    if !(gamma.0 > T::zero() && gamma.0 < gamma.1 && gamma.1 < T::FRAC_PI_2()) {
        return Err(Error::InvalidParameter {
            field: "gamma",
            reason: format!("need 0 < a < b < π/2, got [{}, {}]", gamma.0, gamma.1),
        });
    }
    if grid_points < 2 {
        return Err(Error::InvalidParameter {
            field: "grid_points",
            reason: "need at least 2 points".into(),
        });
    }
    let max_n = n_list.iter().copied().max().ok_or_else(|| Error::InvalidParameter {
        field: "n_list",
        reason: "empty".into(),
    })?;
    check_cutoff(max_n, decomp.usable(), "n_list")?;

    let grid = linspace(gamma.0, gamma.1, grid_points);
    let eigen = CoefficientCache::new(f, Basis::Eigen(decomp), max_n)?;
    let cosine = CoefficientCache::new(f, Basis::Cosine, max_n)?;
    let u_table = grid
        .iter()
        .map(|&x| decomp.eigenfunctions_at(max_n + 1, x))
        .collect::<Result<Vec<_>>>()?;
    let c_table = grid
        .iter()
        .map(|&x| Family::Cosine.values(max_n + 1, x))
        .collect::<Result<Vec<_>>>()?;

    let mut e_n = Vec::with_capacity(n_list.len());
    let mut trace = Vec::new();
    for &big_n in n_list {
        let weights = r.weights(big_n);
        let mut worst = T::zero();
        let last = big_n == max_n && trace.is_empty();
        for ((&x, u), c) in grid.iter().zip(&u_table).zip(&c_table) {
            let t_n = eigen.sum_with(&weights, u);
            let d_n = cosine.sum_with(&weights, c);
            let diff = t_n - d_n;
            worst = worst.max(diff.abs());
            if last {
                trace.push(TracePoint { x, t_n, d_n, diff });
            }
        }
        e_n.push(worst);
    }
    Ok(EquiconvReport {
        function: f.to_string(),
        summability: describe(r),
        gamma,
        grid_points,
        n_list: n_list.to_vec(),
        e_n,
        trace,
    })
}

/// Least-squares slope of `log|ĝ(n)|` against `log n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit<T> {
    /// `None` when every coefficient is below the noise floor.
    pub slope: Option<T>,
    /// Indices that entered the fit.
    pub used: Vec<usize>,
    /// Whether indices were dropped as quadrature noise.
    pub trimmed: bool,
}

impl<T: Real> DecayFit<T> {
    /// Decay at least as fast as `n^{-2}`; a skipped fit (all noise) counts.
    pub fn is_fast(&self) -> bool {
        self.slope.is_none_or(|s| s <= T::lit(-2.0))
    }
}

fn loglog_slope<T: Real>(points: &[(T, T)]) -> Option<T> {
    if points.len() < 2 {
        return None;
    }
    let m = T::from_index(points.len());
    let (sx, sy) = points.iter().fold((T::zero(), T::zero()), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = points.iter().fold((T::zero(), T::zero()), |(n, d), &(x, y)| {
        (n + (x - mx) * (y - my), d + (x - mx) * (x - mx))
    });
    Some(num / den)
}

/// Fits the decay of the eigen coefficients of `g` over `n_range`, dropping
/// entries at the quadrature noise floor.
pub fn coefficient_decay_check<T: Real>(
    g: &PiecewiseFunction<T>,
    decomp: &EigenDecomposition<T>,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<DecayFit<T>> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo == 0 || hi < lo {
        return Err(Error::InvalidParameter {
            field: "n_range",
            reason: "need 1 <= lo <= hi".into(),
        });
    }
    check_cutoff(hi, decomp.usable(), "n_range")?;
    let c = coefficients(g, Basis::Eigen(decomp), hi + 1)?;
    let scale = c.iter().fold(T::zero(), |m, v| m.max(v.abs())).max(T::one());
    let floor = T::lit(NOISE_FLOOR) * scale;
    let used: Vec<usize> = (lo..=hi).filter(|&n| c[n].abs() > floor).collect();
    let points: Vec<(T, T)> = used
        .iter()
        .map(|&n| (T::from_index(n).ln(), c[n].abs().ln()))
        .collect();
    Ok(DecayFit {
        slope: loglog_slope(&points),
        trimmed: used.len() < hi - lo + 1,
        used,
    })
}

/// `(4α+4)/(2α+3)`: the `L^p` exponent above which partial sums converge
/// almost everywhere.
pub fn ae_convergence_threshold<T: Real>(alpha: T) -> T {
    (T::lit(4.0) * alpha + T::lit(4.0)) / (T::lit(2.0) * alpha + T::lit(3.0))
}

/// `∫ f²` on the panel grid of `f`.
pub fn l2_norm_sq<T: Real>(f: &PiecewiseFunction<T>) -> Result<T> {
    let rule = gauss_legendre_rule::<T>(PANEL_ORDER)?;
    let (lo, hi) = f.support();
    Ok(panel_nodes(&rule, lo, hi, f.breakpoints(), 1, false)
        .into_iter()
        .map(|(t, w)| {
            let v = f.eval(t);
            w * v * v
        })
        .sum())
}

/// `Σ_n c_n² ‖φ_n‖^{-2}` from cached coefficients, which for an
/// orthogonal system approaches `∫ f²`.
pub fn coefficient_energy<T: Real>(cache: &CoefficientCache<T>) -> T {
    let two_over_pi = T::lit(2.0) / T::PI();
    cache
        .values
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            let norm = if !cache.cosine {
                T::one()
            } else if n == 0 {
                two_over_pi
            } else {
                T::lit(2.0) * two_over_pi
            };
            norm * c * c
        })
        .sum()
}
