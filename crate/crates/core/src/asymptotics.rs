//! Large-`n` expansions of `σ_n`, `u_n`, and the endpoint constants, and
//! residual scans comparing them with a computed eigendecomposition.

use std::fmt::{self, Write as _};

use crate::eigensolver::EigenDecomposition;
use crate::error::{Error, Result};
use crate::operator::{OperatorSpec, Side};
use crate::scalar::{linspace, parity_sign, Real};
use crate::specfun::{bessel_j, gamma_fn, BesselEvalPolicy};

/// Constants of the expansions, fixed by `(α, β, B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants<T> {
    /// `1 + α + β`
    pub nu: T,
    /// `απ/2 + π/4`
    pub lambda_left: T,
    /// `βπ/2 + π/4`
    pub lambda_right: T,
    pub theta_cap: T,
    /// `min(1, α + 1/2)`
    pub tau: T,
    /// `min(1, β + 1/2)`, for the mirrored family.
    pub tau_right: T,
}

impl<T: Real> AsymptoticConstants<T> {
    pub fn new(spec: &OperatorSpec<T>) -> Self {
        let (a, b) = (spec.params().alpha(), spec.params().beta());
        let half = T::lit(0.5);
        Self {
            nu: T::one() + a + b,
            lambda_left: a * T::FRAC_PI_2() + T::FRAC_PI_4(),
            lambda_right: b * T::FRAC_PI_2() + T::FRAC_PI_4(),
            theta_cap: spec.theta(),
            tau: (a + half).min(T::one()),
            tau_right: (b + half).min(T::one()),
        }
    }
}

/// `σ_n ≈ 2n + 1 + α + β - Θ/(4n)`.
pub fn predict_sigma<T: Real>(spec: &OperatorSpec<T>, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            field: "n",
            reason: "the two-term eigenvalue expansion needs n >= 1".into(),
        });
    }
    let (a, b) = (spec.params().alpha(), spec.params().beta());
    let nf = T::from_index(n);
    Ok(T::lit(2.0) * nf + T::one() + a + b - spec.theta() / (T::lit(4.0) * nf))
}

/// Which expansion of `u_n` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredictorForm {
    BesselLeft,
    BesselRight,
    CosineLeft,
    CosineRight,
}

impl PredictorForm {
    pub fn side(self) -> Side {
        match self {
            PredictorForm::BesselLeft | PredictorForm::CosineLeft => Side::Left,
            PredictorForm::BesselRight | PredictorForm::CosineRight => Side::Right,
        }
    }
}

/// Main terms of the expansion of `u_n(t)`.
///
/// Left forms take `t ∈ (0, π/4]`; right forms evaluate the mirrored
/// expansion at `s = π/2 - t ∈ (0, π/4]` with the `(-1)^n` factor. Cosine
/// forms additionally need the distance to the endpoint to be at least `1/n`.
pub fn predict_u<T: Real>(
    spec: &OperatorSpec<T>,
    constants: &AsymptoticConstants<T>,
    n: usize,
    sigma_n: T,
    t: T,
    form: PredictorForm,
) -> Result<T> {
    let side = form.side();
    let s = match side {
        Side::Left => t,
        Side::Right => T::FRAC_PI_2() - t,
    };
    if !(s > T::zero() && s <= T::FRAC_PI_4()) {
        return Err(Error::Domain {
            function: "predict_u",
            value: t.as_f64(),
            domain: "distance to the expansion endpoint in (0, π/4]",
        });
    }
    let (a, b) = (spec.params().alpha(), spec.params().beta());
    let (order, lambda) = match side {
        Side::Left => (a, constants.lambda_left),
        Side::Right => (b, constants.lambda_right),
    };
    let x_int = spec.x_integral_at(side, s)?;
    let sign = match side {
        Side::Left => T::one(),
        Side::Right => parity_sign(n),
    };
    let value = match form {
        PredictorForm::BesselLeft | PredictorForm::BesselRight => {
            let policy = BesselEvalPolicy::default();
            let z = sigma_n * s;
            let root = z.sqrt();
            let j0 = bessel_j(order, z, &policy)?;
            let j1 = bessel_j(order + T::one(), z, &policy)?;
            T::SQRT_2() * (root * j0 - T::lit(0.5) * x_int * root * j1 / sigma_n)
        }
        PredictorForm::CosineLeft | PredictorForm::CosineRight => {
            let nf = T::from_index(n);
            if n == 0 || s < nf.recip() * (T::one() - T::lit(1e-12)) {
                return Err(Error::Domain {
                    function: "predict_u",
                    value: t.as_f64(),
                    domain: "distance to the expansion endpoint in [1/n, π/4]",
                });
            }
            let phase = (T::lit(2.0) * nf + constants.nu) * s - lambda;
            let y0 = -(order * order - T::lit(0.25) + s * x_int - constants.theta_cap * s * s)
                / (T::lit(4.0) * T::PI().sqrt());
            T::lit(2.0) / T::PI().sqrt() * phase.cos() + y0 * T::lit(2.0) / (nf * s) * phase.sin()
        }
    };
    Ok(sign * value)
}

/// `c_n ≈ σ_n^{α+½}/(2^{α-½}Γ(α+1))`, `d_n ≈ (-1)^n σ_n^{β+½}/(2^{β-½}Γ(β+1))`.
pub fn predict_endpoint_constants<T: Real>(spec: &OperatorSpec<T>, n: usize, sigma_n: T) -> Result<(T, T)> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            field: "n",
            reason: "endpoint-constant expansions need n >= 1".into(),
        });
    }
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let one_side = |e: T| -> Result<T> { Ok(sigma_n.powf(e + half) / (two.powf(e - half) * gamma_fn(e + T::one())?)) };
    let c = one_side(spec.params().alpha())?;
    let d = parity_sign::<T>(n) * one_side(spec.params().beta())?;
    Ok((c, d))
}

/// The expansion whose residual a scan measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    Sigma2,
    UBesselLeft,
    UCosineLeft,
    UBesselRight,
    UCosineRight,
    Cn,
    Dn,
    DeltaP3,
    DeltaP4,
}

impl Lemma {
    pub const ALL: [Lemma; 9] = [
        Lemma::Sigma2,
        Lemma::UBesselLeft,
        Lemma::UCosineLeft,
        Lemma::UBesselRight,
        Lemma::UCosineRight,
        Lemma::Cn,
        Lemma::Dn,
        Lemma::DeltaP3,
        Lemma::DeltaP4,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Lemma::Sigma2 => "sigma2",
            Lemma::UBesselLeft => "u_bessel_left",
            Lemma::UCosineLeft => "u_cosine_left",
            Lemma::UBesselRight => "u_bessel_right",
            Lemma::UCosineRight => "u_cosine_right",
            Lemma::Cn => "cn",
            Lemma::Dn => "dn",
            Lemma::DeltaP3 => "delta_p3",
            Lemma::DeltaP4 => "delta_p4",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.tag() == tag)
    }

    fn form(self) -> Option<PredictorForm> {
        match self {
            Lemma::UBesselLeft => Some(PredictorForm::BesselLeft),
            Lemma::UCosineLeft => Some(PredictorForm::CosineLeft),
            Lemma::UBesselRight => Some(PredictorForm::BesselRight),
            Lemma::UCosineRight => Some(PredictorForm::CosineRight),
            _ => None,
        }
    }

    fn side(self) -> Side {
        match self {
            Lemma::UBesselRight | Lemma::UCosineRight | Lemma::Dn => Side::Right,
            _ => Side::Left,
        }
    }

    fn uses_grid(self) -> bool {
        !matches!(self, Lemma::Sigma2 | Lemma::Cn | Lemma::Dn)
    }

    /// Distance window `[lo, hi]` to the relevant endpoint where the
    /// expansion is checked; the P4 window is half-open at zero.
    fn window<T: Real>(self, n: usize) -> (T, T) {
        let inv = T::from_index(n).recip();
        match self {
            Lemma::DeltaP4 => (T::zero(), inv),
            _ => (inv, T::FRAC_PI_4()),
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Sample points of a scan.
#[derive(Debug, Clone, PartialEq)]
pub enum TGrid<T> {
    /// Fixed `t` values; points outside a lemma's window are skipped.
    Absolute(Vec<T>),
    /// `points` equally spaced distances spanning each lemma's window for the
    /// current `n` (excluding zero for the P4 window).
    PerN { points: usize },
}

impl<T: Real> TGrid<T> {
    fn distances(&self, lemma: Lemma, n: usize) -> (Vec<T>, usize) {
        let (lo, hi) = lemma.window::<T>(n);
        let in_window = |s: T| {
            if lemma == Lemma::DeltaP4 {
                s > lo && s <= hi
            } else {
                s >= lo && s <= hi
            }
        };
        match self {
            TGrid::Absolute(ts) => {
                let dist: Vec<T> = ts
                    .iter()
                    .map(|&t| match lemma.side() {
                        Side::Left => t,
                        Side::Right => T::FRAC_PI_2() - t,
                    })
                    .collect();
                let kept: Vec<T> = dist.iter().copied().filter(|&s| in_window(s)).collect();
                let skipped = dist.len() - kept.len();
                (kept, skipped)
            }
            TGrid::PerN { points } => {
                let points = (*points).max(1);
                let grid = if lemma == Lemma::DeltaP4 {
                    (1..=points).map(|i| hi * T::from_index(i) / T::from_index(points)).collect()
                } else {
                    linspace(lo, hi, points)
                };
                (grid, 0)
            }
        }
    }
}

/// Residual of one `n`: the grid maximum of the scaled residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualRow<T> {
    pub n: usize,
    /// `t` of the maximum; `None` for lemmas without a grid.
    pub t_max_at: Option<T>,
    pub raw_residual: T,
    pub scaled_residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport<T> {
    pub lemma: Lemma,
    pub rows: Vec<ResidualRow<T>>,
    /// Grid points dropped for lying outside the lemma's window.
    pub skipped: usize,
    /// Whether residuals were divided by `log(2/min(1, σ_n s))`.
    pub log_loosened: bool,
}

impl<T: Real> ResidualReport<T> {
    pub fn max_scaled(&self) -> T {
        upper_max(self.rows.iter().map(|r| r.scaled_residual))
    }

    pub fn scaled(&self) -> Vec<T> {
        self.rows.iter().map(|r| r.scaled_residual).collect()
    }

    /// Max over the upper half of the rows divided by the max over the lower half.
    pub fn halves_ratio(&self) -> T {
        halves_ratio(&self.scaled())
    }

    /// The boundedness verdict: upper-half max ≤ `factor` × lower-half max.
    pub fn is_bounded(&self, factor: T) -> bool {
        self.rows.iter().all(|r| r.scaled_residual.is_finite()) && self.halves_ratio() <= factor
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("lemma,n,t_max_at,raw_residual,scaled_residual\n");
        for r in &self.rows {
            let t = r.t_max_at.map(|t| format!("{t:e}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{:e},{:e}",
                self.lemma, r.n, t, r.raw_residual, r.scaled_residual
            );
        }
        out
    }
}

fn upper_max<T: Real>(values: impl Iterator<Item = T>) -> T {
    values.fold(T::zero(), T::max)
}

/// Splits `values` at `len/2` and returns `max(upper) / max(lower)`.
pub fn halves_ratio<T: Real>(values: &[T]) -> T {
    let mid = values.len() / 2;
    let lower = upper_max(values[..mid].iter().copied());
    let upper = upper_max(values[mid..].iter().copied());
    if lower == T::zero() {
        if upper == T::zero() {
            T::zero()
        } else {
            T::infinity()
        }
    } else {
        upper / lower
    }
}

/// Residuals of `lemma` for each `n` in `n_range`, maximized over the grid.
pub fn residual_scan<T: Real>(
    decomp: &EigenDecomposition<T>,
    lemma: Lemma,
    n_range: std::ops::RangeInclusive<usize>,
    t_grid: &TGrid<T>,
) -> Result<ResidualReport<T>> {
    let spec = decomp.spec();
    let constants = AsymptoticConstants::new(spec);
    let (a, b) = (spec.params().alpha(), spec.params().beta());
    let log_order = match lemma.side() {
        Side::Left => a,
        Side::Right => b,
    };
    let log_loosened = lemma.uses_grid() && log_order == T::zero();
    let needs_next = matches!(lemma, Lemma::DeltaP3 | Lemma::DeltaP4);
    let mut rows = Vec::new();
    let mut skipped = 0;

    for n in n_range {
        if n == 0 {
            return Err(Error::InvalidParameter {
                field: "n_range",
                reason: "expansions start at n = 1".into(),
            });
        }
        let last = if needs_next { n + 1 } else { n };
        if last >= decomp.usable() {
            return Err(Error::IndexOutOfRange {
                index: last,
                usable: decomp.usable(),
            });
        }
        let nf = T::from_index(n);
        let sigma = decomp.sigma(n)?;
        let row = match lemma {
            Lemma::Sigma2 => {
                let raw = (sigma - predict_sigma(spec, n)?).abs();
                ResidualRow {
                    n,
                    t_max_at: None,
                    raw_residual: raw,
                    scaled_residual: nf * nf * raw,
                }
            }
            Lemma::Cn | Lemma::Dn => {
                let (pc, pd) = predict_endpoint_constants(spec, n, sigma)?;
                let (computed, predicted) = if lemma == Lemma::Cn {
                    (decomp.endpoint_constant(n, Side::Left)?, pc)
                } else {
                    (decomp.endpoint_constant(n, Side::Right)?, pd)
                };
                let raw = (computed / predicted - T::one()).abs();
                ResidualRow {
                    n,
                    t_max_at: None,
                    raw_residual: raw,
                    scaled_residual: nf * nf * raw,
                }
            }
            _ => {
                let (dist, skip) = t_grid.distances(lemma, n);
                skipped += skip;
                let mut best = ResidualRow {
                    n,
                    t_max_at: None,
                    raw_residual: T::zero(),
                    scaled_residual: T::zero(),
                };
                for s in dist {
                    let t = match lemma.side() {
                        Side::Left => s,
                        Side::Right => T::FRAC_PI_2() - s,
                    };
                    let (raw, rate) = match lemma.form() {
                        Some(form) => {
                            let predicted = predict_u(spec, &constants, n, sigma, t, form)?;
                            let computed = decomp.eigenfunction_at(n, t)?;
                            let ns = nf * s;
                            ((computed - predicted).abs(), (ns * ns).recip())
                        }
                        None => {
                            let u = decomp.eigenfunctions_at(n + 2, t)?;
                            let diff = (u[n] - u[n + 1]).abs();
                            let rate = if lemma == Lemma::DeltaP3 {
                                s + nf.recip()
                            } else {
                                (nf * s).powf(constants.tau) / nf + (nf * nf).recip() + s
                            };
                            (diff, rate)
                        }
                    };
                    let mut scaled = raw / rate;
                    if log_loosened {
                        scaled /= (T::lit(2.0) / (sigma * s).min(T::one())).ln();
                    }
                    if scaled > best.scaled_residual || best.t_max_at.is_none() {
                        best = ResidualRow {
                            n,
                            t_max_at: Some(t),
                            raw_residual: raw,
                            scaled_residual: scaled,
                        };
                    }
                }
                best
            }
        };
        rows.push(row);
    }
    Ok(ResidualReport {
        lemma,
        rows,
        skipped,
        log_loosened,
    })
}

/// `max |u_n(t)|` over `n < n_count` and `points` equally spaced interior `t`.
pub fn uniform_bound<T: Real>(decomp: &EigenDecomposition<T>, n_count: usize, points: usize) -> Result<T> {
    let mut best = T::zero();
    for i in 1..=points {
        let t = T::FRAC_PI_2() * T::from_index(i) / T::from_index(points + 1);
        for v in decomp.eigenfunctions_at(n_count, t)? {
            best = best.max(v.abs());
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{JacobiParams, PerturbationB};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn spec(a: f64, b: f64, coeffs: &[f64]) -> OperatorSpec<f64> {
        OperatorSpec::new(
            JacobiParams::new(a, b).unwrap(),
            PerturbationB::new(coeffs.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn constants_and_sigma() {
        let s = spec(0.5, 0.5, &[]);
        let c = AsymptoticConstants::new(&s);
        assert_eq!(c.nu, 2.0);
        assert!((c.lambda_left - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(c.tau, 1.0);
        assert!((predict_sigma(&s, 10).unwrap() - 21.9).abs() < 1e-12);
        let exact = 480f64.sqrt();
        assert!(((exact - 21.9).abs() - 0.0089).abs() < 1e-4);
        let big = predict_sigma(&s, 1_000_000).unwrap() / 2e6;
        assert!((big - 1.0).abs() < 1e-5);
        assert!(predict_sigma(&s, 0).is_err());
    }

    #[test]
    fn cosine_main_term() {
        let s = spec(0.5, 0.5, &[]);
        let c = AsymptoticConstants::new(&s);
        // For B ≡ 1 and α = β = 1/2 the correction Y₀ vanishes identically:
        // α² - 1/4 = 0 and X₀(t) = 4t = Θt.
        for n in [10usize, 25] {
            for &t in &[0.2, 0.5, FRAC_PI_4] {
                let p = predict_u(&s, &c, n, 0.0, t, PredictorForm::CosineLeft).unwrap();
                let main = 2.0 / PI.sqrt() * ((2 * n + 2) as f64 * t).sin();
                assert!((p - main).abs() < 1e-10);
            }
        }
        assert!(predict_u(&s, &c, 10, 0.0, 0.05, PredictorForm::CosineLeft).is_err());
        assert!(predict_u(&s, &c, 10, 0.0, 1.0, PredictorForm::CosineLeft).is_err());
    }

    #[test]
    fn bessel_right_is_mirrored_left() {
        let s = spec(0.8, 0.8, &[0.0, 0.2]);
        let c = AsymptoticConstants::new(&s);
        for n in [7usize, 8] {
            let sigma = 2.0 * n as f64 + 2.6;
            let t = 1.3;
            let right = predict_u(&s, &c, n, sigma, t, PredictorForm::BesselRight).unwrap();
            let left = predict_u(&s, &c, n, sigma, FRAC_PI_2 - t, PredictorForm::BesselLeft).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((right - sign * left).abs() < 1e-12);
        }
    }

    #[test]
    fn bessel_second_term_at_zero() {
        // α = 1/2: J_{1/2}(z) = sqrt(2/(πz)) sin z vanishes at z = π.
        let s = spec(0.5, 0.5, &[0.1]);
        let c = AsymptoticConstants::new(&s);
        let sigma = 20.0;
        let t = PI / sigma;
        let x0 = s.x_integral_at(Side::Left, t).unwrap();
        let z = sigma * t;
        let j32 = (2.0 / (PI * z)).sqrt() * (z.sin() / z - z.cos());
        let expected = -std::f64::consts::SQRT_2 * 0.5 * x0 * z.sqrt() * j32 / sigma;
        let p = predict_u(&s, &c, 9, sigma, t, PredictorForm::BesselLeft).unwrap();
        assert!((p - expected).abs() < 1e-12);
    }

    #[test]
    fn endpoint_constant_predictions() {
        let s = spec(0.5, 0.5, &[]);
        let (c, d) = predict_endpoint_constants(&s, 3, 9.0).unwrap();
        assert!((c - 18.0 / PI.sqrt()).abs() < 1e-12);
        assert!((d + c).abs() < 1e-12);
        let s = spec(1.2, 0.3, &[0.1]);
        let sigma = 33.3;
        let (c, d) = predict_endpoint_constants(&s, 16, sigma).unwrap();
        let ratio = 2f64.powf(0.9) * gamma_fn(2.2).unwrap() / gamma_fn(1.3).unwrap() * sigma.powf(-0.9);
        assert!((d / c - ratio).abs() < 1e-12 * ratio);
    }

    #[test]
    fn sigma_residuals_are_bounded() {
        let s = spec(0.5, 0.5, &[]);
        let d = EigenDecomposition::solve(&s, 96, 192).unwrap();
        let report = residual_scan(&d, Lemma::Sigma2, 8..=60, &TGrid::PerN { points: 1 }).unwrap();
        assert!(report.is_bounded(2.0), "{}", report.halves_ratio());
        for row in &report.rows {
            let n = row.n as f64;
            let exact = 2.0 * (n * (n + 2.0)).sqrt();
            let expected = (exact - (2.0 * n + 2.0 - 1.0 / n)).abs();
            assert!((row.raw_residual - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn cosine_residual_at_fixed_t() {
        let s = spec(0.6, 0.2, &[0.2]);
        let d = EigenDecomposition::solve(&s, 96, 192).unwrap();
        let grid = TGrid::Absolute(vec![FRAC_PI_6]);
        let report = residual_scan(&d, Lemma::UCosineLeft, 16..=60, &grid).unwrap();
        assert!(report.is_bounded(2.0), "{}", report.halves_ratio());
        assert_eq!(report.skipped, 0);
        let csv = report.to_csv();
        assert!(csv.starts_with("lemma,n,t_max_at,raw_residual,scaled_residual\n"));
        let outside = TGrid::Absolute(vec![0.01, 1.2, FRAC_PI_6]);
        let r = residual_scan(&d, Lemma::UCosineLeft, 16..=20, &outside).unwrap();
        assert_eq!(r.skipped, 10);
    }

    #[test]
    fn delta_p4_fit_is_stable() {
        let s = spec(0.6, 0.2, &[0.2]);
        let d = EigenDecomposition::solve(&s, 96, 192).unwrap();
        let report = residual_scan(&d, Lemma::DeltaP4, 10..=60, &TGrid::PerN { points: 8 }).unwrap();
        assert!(report.is_bounded(2.0), "{}", report.halves_ratio());
    }

    #[test]
    fn uniform_bound_stable_under_refinement() {
        let s = spec(0.6, 0.2, &[0.2]);
        let d = EigenDecomposition::solve(&s, 96, 192).unwrap();
        let coarse = uniform_bound(&d, 61, 400).unwrap();
        let fine = uniform_bound(&d, 61, 800).unwrap();
        assert!((fine - coarse).abs() <= 0.1 * coarse);
    }

    #[test]
    fn halves_ratio_edge_cases() {
        assert_eq!(halves_ratio(&[1.0, 2.0, 1.0, 1.0]), 0.5);
        assert_eq!(halves_ratio::<f64>(&[0.0, 0.0]), 0.0);
        assert!(halves_ratio(&[0.0f64, 1.0]).is_infinite());
        assert_eq!(Lemma::from_tag("delta_p3"), Some(Lemma::DeltaP3));
    }
}
