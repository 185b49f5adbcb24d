//! Coefficients of the perturbed Jacobi operator
//! `-u'' + ((α²-¼)cot²t + (β²-¼)tan²t - χ(t)) u` on `(0, π/2)`.

use crate::error::{Error, Result};
use crate::linalg::{gauss_legendre_rule, QuadratureRule};
use crate::scalar::Real;

/// Maximum panel width for composite Gauss–Legendre integrals of χ and η.
pub const PANEL_WIDTH: f64 = 0.05;
const PANEL_ORDER: usize = 16;
const ENDPOINT_SWITCH: f64 = 1e-6;
const SERIES_SWITCH: f64 = 0.1;

/// Endpoint of `(0, π/2)` an object refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Exponents `(α, β)` with `α ≥ β > -1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> JacobiParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let half = T::lit(0.5);
        if !(alpha > -half) || !(beta > -half) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter {
                field: "alpha/beta",
                reason: format!("both exponents must be finite and exceed -1/2, got ({alpha}, {beta})"),
            });
        }
        if alpha < beta {
            return Err(Error::InvalidParameter {
                field: "alpha/beta",
                reason: format!(
                    "need alpha >= beta, got ({alpha}, {beta}); reflect t -> π/2 - t and swap the exponents"
                ),
            });
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }
}

/// `B(t) = 1 + Σ_k a_k cos(2kt)` with `Σ|a_k| < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationB<T> {
    coeffs: Vec<T>,
}

impl<T: Real> PerturbationB<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "b",
                reason: "coefficients must be finite".into(),
            });
        }
        let total: T = coeffs.iter().map(|c| c.abs()).sum();
        if !(total < T::one()) {
            return Err(Error::InvalidParameter {
                field: "b",
                reason: format!("sum of |a_k| is {total}, must be below 1 to keep B positive"),
            });
        }
        Ok(Self { coeffs })
    }

    /// `B ≡ 1`.
    pub fn constant() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == T::zero())
    }

    /// `(B, B', B'')` at `t`.
    pub fn eval(&self, t: T) -> (T, T, T) {
        let mut b = T::one();
        let mut d1 = T::zero();
        let mut d2 = T::zero();
        for (i, &a) in self.coeffs.iter().enumerate() {
            let w = T::from_index(2 * (i + 1));
            let (s, c) = (w * t).sin_cos();
            b += a * c;
            d1 -= a * w * s;
            d2 -= a * w * w * c;
        }
        (b, d1, d2)
    }

    pub fn value(&self, t: T) -> T {
        self.eval(t).0
    }
}

/// `cot²t - 1/t²`, by its Maclaurin series for small `t`.
pub fn cot2_minus_inv_sq<T: Real>(t: T) -> T {
    if t.abs() < T::lit(SERIES_SWITCH) {
        const C: [f64; 8] = [
            -2.0 / 3.0,
            1.0 / 15.0,
            2.0 / 189.0,
            1.0 / 675.0,
            2.0 / 10395.0,
            1382.0 / 58046625.0,
            4.0 / 1403325.0,
            3617.0 / 10854718875.0,
        ];
        let t2 = t * t;
        C.iter().rev().fold(T::zero(), |acc, &c| acc * t2 + T::lit(c))
    } else {
        let c = t.tan().recip();
        c * c - (t * t).recip()
    }
}

/// Operator data for fixed `(α, β, B)`, with `∫χ` and `Θ` cached.
#[derive(Debug, Clone)]
pub struct OperatorSpec<T> {
    params: JacobiParams<T>,
    b: PerturbationB<T>,
    chi_integral: T,
    theta: T,
    panel_rule: QuadratureRule<T>,
}

impl<T: Real> OperatorSpec<T> {
    pub fn new(params: JacobiParams<T>, b: PerturbationB<T>) -> Result<Self> {
        let panel_rule = gauss_legendre_rule(PANEL_ORDER)?;
        let mut spec = Self {
            params,
            b,
            chi_integral: T::zero(),
            theta: T::zero(),
            panel_rule,
        };
        let integral = spec.panel_rule.integrate_composite(
            T::zero(),
            T::FRAC_PI_2(),
            T::lit(PANEL_WIDTH),
            |t| spec.chi_extended(t),
        );
        let (a, bt) = (params.alpha, params.beta);
        spec.chi_integral = integral;
        spec.theta = a * a + bt * bt - T::lit(0.5) + T::lit(2.0) / T::PI() * integral;
        Ok(spec)
    }

    pub fn params(&self) -> &JacobiParams<T> {
        &self.params
    }

    pub fn perturbation(&self) -> &PerturbationB<T> {
        &self.b
    }

    /// `∫₀^{π/2} χ`.
    pub fn chi_integral(&self) -> T {
        self.chi_integral
    }

    /// `Θ = α² + β² - 1/2 + (2/π) ∫χ`.
    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn panel_rule(&self) -> &QuadratureRule<T> {
        &self.panel_rule
    }

    /// χ for any real `t`. B is even and π-periodic, so the formula is
    /// even about every multiple of π/2; products that are `0·∞` there
    /// are replaced by their limits.
    pub fn chi_extended(&self, t: T) -> T {
        let (alpha, beta) = (self.params.alpha, self.params.beta);
        let half = T::lit(0.5);
        let (b, d1, d2) = self.b.eval(t);
        let r = d1 / b;

        let quarter = T::FRAC_PI_2();
        let k = (t / quarter).round();
        let near = (t - k * quarter).abs() < T::lit(ENDPOINT_SWITCH);
        let odd = k.to_i64().map(|k| k.rem_euclid(2) == 1).unwrap_or(false);

        let cot_r = if near && !odd {
            d2 / b
        } else if near {
            T::zero()
        } else {
            r / t.tan()
        };
        let tan_r = if near && odd {
            -d2 / b
        } else if near {
            T::zero()
        } else {
            r * t.tan()
        };
        (beta + half) * tan_r - (alpha + half) * cot_r + T::lit(0.25) * r * r - half * d2 / b
            + T::lit(2.0) * alpha * beta
            + T::lit(2.0) * (alpha + beta)
            + T::lit(1.5)
    }

    /// χ on `[0, π/2]`; the endpoints return the analytic limits.
    pub fn chi_at(&self, t: T) -> Result<T> {
        if !(t >= T::zero() && t <= T::FRAC_PI_2()) {
            return Err(domain("chi_at", t, "[0, π/2]"));
        }
        Ok(self.chi_extended(t))
    }

    /// η₀ (left) or η₁ (right) on `[0, π/2)`.
    pub fn eta_at(&self, side: Side, t: T) -> Result<T> {
        if !(t >= T::zero() && t < T::FRAC_PI_2()) {
            return Err(domain("eta_at", t, "[0, π/2)"));
        }
        let q = T::lit(0.25);
        let (a2, b2) = (self.params.alpha.powi(2) - q, self.params.beta.powi(2) - q);
        let tan2 = t.tan().powi(2);
        let g = cot2_minus_inv_sq(t);
        Ok(match side {
            Side::Left => -a2 * g - b2 * tan2 + self.chi_extended(t),
            Side::Right => -b2 * g - a2 * tan2 + self.chi_extended(T::FRAC_PI_2() - t),
        })
    }

    /// `X₀(t) = ∫₀^t η₀` or `X₁(t) = ∫₀^t η₁`.
    pub fn x_integral_at(&self, side: Side, t: T) -> Result<T> {
        self.x_integral_between(side, T::zero(), t)
    }

    /// `∫_{t1}^{t2} η` for `0 ≤ t1 ≤ t2 < π/2`.
    pub fn x_integral_between(&self, side: Side, t1: T, t2: T) -> Result<T> {
        if !(t2 < T::FRAC_PI_2()) {
            return Err(domain("x_integral_at", t2, "[0, π/2)"));
        }
        if !(t1 >= T::zero() && t1 <= t2) {
            return Err(domain("x_integral_at", t1, "[0, t]"));
        }
        let mut failure = None;
        let value = self
            .panel_rule
            .integrate_composite(t1, t2, T::lit(PANEL_WIDTH), |s| match self.eta_at(side, s) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    T::zero()
                }
            });
        match failure {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }

    /// `A(t) = sin^{2α+1}t cos^{2β+1}t B(t)` on the open interval.
    pub fn weight_a_at(&self, t: T) -> Result<T> {
        if !(t > T::zero() && t < T::FRAC_PI_2()) {
            return Err(domain("weight_a_at", t, "(0, π/2)"));
        }
        let one = T::one();
        let two = T::lit(2.0);
        Ok(t.sin().powf(two * self.params.alpha + one)
            * t.cos().powf(two * self.params.beta + one)
            * self.b.value(t))
    }

    /// `(inf(-χ), sup(-χ))` over `[0, π/2]`: dense sampling followed by a
    /// golden-section refinement around the extreme samples.
    pub fn neg_chi_bounds(&self) -> (T, T) {
        if self.b.is_constant() {
            let c = -self.chi_extended(T::FRAC_PI_4());
            return (c, c);
        }
        let samples = 2048;
        let h = T::FRAC_PI_2() / T::from_index(samples);
        let values: Vec<T> = (0..=samples)
            .map(|i| self.chi_extended(h * T::from_index(i)))
            .collect();
        let argmin = index_of(&values, |a, b| a < b);
        let argmax = index_of(&values, |a, b| a > b);
        let refine = |i: usize, sign: T| {
            let lo = (h * T::from_index(i) - h).max(T::zero());
            let hi = (h * T::from_index(i) + h).min(T::FRAC_PI_2());
            let best = golden_min(lo, hi, |t| sign * self.chi_extended(t));
            (sign * best).min(sign * values[i]) * sign
        };
        let chi_min = refine(argmin, T::one());
        let chi_max = refine(argmax, -T::one());
        let chi_min = chi_min.min(values[argmin]);
        let chi_max = chi_max.max(values[argmax]);
        (-chi_max, -chi_min)
    }
}

fn domain<T: Real>(function: &'static str, value: T, domain: &'static str) -> Error {
    Error::Domain {
        function,
        value: value.as_f64(),
        domain,
    }
}

fn index_of<T: Real>(values: &[T], better: impl Fn(T, T) -> bool) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if better(v, values[best]) {
            best = i;
        }
    }
    best
}

/// Minimum value of `f` on `[a, b]` by golden-section search.
fn golden_min<T: Real>(mut a: T, mut b: T, f: impl Fn(T) -> T) -> T {
    let g = T::lit(0.618_033_988_749_895);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd).min(f(a)).min(f(b))
}
