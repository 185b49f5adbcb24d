//! Special functions: Gamma, Bessel functions of the first kind, and Jacobi
//! polynomials with their norms.

use crate::error::{Error, Result};
use crate::scalar::Real;

// Lanczos approximation, g = 7, nine coefficients (the set distributed with
// the GNU Scientific Library).
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Real>(z: T) -> T {
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += T::lit(c) / (z + T::from_index(i));
    }
    acc
}

fn check_positive<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: x.as_f64(),
            domain: "x > 0",
        })
    }
}

/// Gamma function for positive arguments.
pub fn gamma_fn<T: Real>(x: T) -> Result<T> {
    check_positive("gamma_fn", x)?;
    if x < T::lit(0.5) {
        return Ok(gamma_fn(x + T::one())? / x);
    }
    let z = x - T::one();
    let w = z + T::lit(LANCZOS_G + 0.5);
    // Split the power to delay overflow for large arguments.
    let half = w.powf((z + T::lit(0.5)) / T::lit(2.0));
    Ok((T::TAU()).sqrt() * half * (half * (-w).exp()) * lanczos_sum(z))
}

/// Natural logarithm of the Gamma function for positive arguments.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    check_positive("ln_gamma", x)?;
    if x < T::lit(0.5) {
        return Ok(ln_gamma(x + T::one())? - x.ln());
    }
    let z = x - T::one();
    let w = z + T::lit(LANCZOS_G + 0.5);
    Ok(T::lit(0.5) * T::TAU().ln() + (z + T::lit(0.5)) * w.ln() - w + lanczos_sum(z).ln())
}

/// Evaluation strategy for [`bessel_j`].
///
/// Below `series_cutoff` the ascending power series is summed (at most
/// `series_terms` terms). Above it the Hankel asymptotic expansion is used for
/// the two lowest orders sharing the fractional part of `nu`, followed by
/// upward recurrence, which is stable because the order never exceeds the
/// argument in that branch for the orders used here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEvalPolicy<T> {
    pub series_cutoff: T,
    pub series_terms: usize,
    pub asymptotic_terms: usize,
}

impl<T: Real> Default for BesselEvalPolicy<T> {
    fn default() -> Self {
        Self {
            series_cutoff: T::lit(12.0),
            series_terms: 30,
            asymptotic_terms: 20,
        }
    }
}

impl<T: Real> BesselEvalPolicy<T> {
    pub fn new(series_cutoff: T, series_terms: usize, asymptotic_terms: usize) -> Result<Self> {
        if !(series_cutoff > T::zero()) {
            return Err(Error::InvalidParameter {
                field: "series_cutoff",
                reason: format!("must be positive, got {series_cutoff}"),
            });
        }
        if series_terms == 0 || asymptotic_terms == 0 {
            return Err(Error::InvalidParameter {
                field: "series_terms/asymptotic_terms",
                reason: "term counts must be at least 1".into(),
            });
        }
        Ok(Self {
            series_cutoff,
            series_terms,
            asymptotic_terms,
        })
    }
}

fn bessel_series<T: Real>(nu: T, x: T, terms: usize) -> Result<T> {
    if x == T::zero() {
        return Ok(if nu == T::zero() { T::one() } else { T::zero() });
    }
    let half = x / T::lit(2.0);
    let q = -half * half;
    let mut term = half.powf(nu) / gamma_fn(nu + T::one())?;
    let mut sum = term;
    for k in 1..terms {
        let kf = T::from_index(k);
        term = term * q / (kf * (kf + nu));
        sum += term;
        if term.abs() <= T::epsilon() * T::lit(1e-3) * sum.abs() {
            break;
        }
    }
    Ok(sum)
}

fn bessel_hankel<T: Real>(nu: T, x: T, terms: usize) -> T {
    let mu = T::lit(4.0) * nu * nu;
    let eight_x = T::lit(8.0) * x;
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut last = T::infinity();
    // term_k = a_k(nu) / x^k; P collects even k with sign (-1)^(k/2), Q odd k.
    for k in 1..=(2 * terms) {
        let odd = T::from_index(2 * k - 1);
        term = term * (mu - odd * odd) / (T::from_index(k) * eight_x);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if term.abs() < T::epsilon() * T::lit(1e-2) {
            break;
        }
    }
    let omega = x - nu * T::FRAC_PI_2() - T::FRAC_PI_4();
    (T::lit(2.0) / (T::PI() * x)).sqrt() * (p * omega.cos() - q * omega.sin())
}

fn check_bessel_args<T: Real>(function: &'static str, nu: T, x: T) -> Result<()> {
    if !(nu >= T::zero()) || !nu.is_finite() {
        return Err(Error::Domain {
            function,
            value: nu.as_f64(),
            domain: "order nu >= 0",
        });
    }
    if !(x >= T::zero()) || !x.is_finite() {
        return Err(Error::Domain {
            function,
            value: x.as_f64(),
            domain: "argument x >= 0",
        });
    }
    Ok(())
}

/// Bessel function of the first kind `J_nu(x)` for `nu >= 0`, `x >= 0`.
pub fn bessel_j<T: Real>(nu: T, x: T, policy: &BesselEvalPolicy<T>) -> Result<T> {
    check_bessel_args("bessel_j", nu, x)?;
    if x <= policy.series_cutoff {
        return bessel_series(nu, x, policy.series_terms);
    }
    let steps = nu.floor();
    let frac = nu - steps;
    let steps = steps.to_usize().unwrap_or(0);
    let mut lower = bessel_hankel(frac, x, policy.asymptotic_terms);
    if steps == 0 {
        return Ok(lower);
    }
    let mut upper = bessel_hankel(frac + T::one(), x, policy.asymptotic_terms);
    for k in 1..steps {
        let order = frac + T::from_index(k);
        let next = T::lit(2.0) * order / x * upper - lower;
        lower = upper;
        upper = next;
    }
    Ok(upper)
}

/// Derivative `J'_nu(x)`.
///
/// For `nu >= 1` this is `(J_{nu-1} - J_{nu+1}) / 2`; below that the lower
/// neighbour has negative order and the equivalent `(nu/x) J_nu - J_{nu+1}` is
/// used, which is undefined at `x = 0`.
pub fn bessel_j_prime<T: Real>(nu: T, x: T, policy: &BesselEvalPolicy<T>) -> Result<T> {
    check_bessel_args("bessel_j_prime", nu, x)?;
    if nu >= T::one() {
        let below = bessel_j(nu - T::one(), x, policy)?;
        let above = bessel_j(nu + T::one(), x, policy)?;
        return Ok((below - above) / T::lit(2.0));
    }
    if x == T::zero() {
        return Err(Error::Domain {
            function: "bessel_j_prime",
            value: 0.0,
            domain: "x > 0 when nu < 1",
        });
    }
    Ok(nu / x * bessel_j(nu, x, policy)? - bessel_j(nu + T::one(), x, policy)?)
}

/// Jacobi polynomial `P_n^{(alpha, beta)}(x)` by three-term recurrence.
pub fn jacobi_poly<T: Real>(n: usize, alpha: T, beta: T, x: T) -> T {
    let mut values = vec![T::zero(); n + 1];
    jacobi_poly_all(alpha, beta, x, &mut values);
    values[n]
}

/// Fills `out[k] = P_k^{(alpha, beta)}(x)` for `k < out.len()`.
pub fn jacobi_poly_all<T: Real>(alpha: T, beta: T, x: T, out: &mut [T]) {
    debug_assert!(alpha > -T::one() && beta > -T::one());
    if out.is_empty() {
        return;
    }
    let two = T::lit(2.0);
    out[0] = T::one();
    if out.len() == 1 {
        return;
    }
    let ab = alpha + beta;
    out[1] = (alpha + T::one()) + (ab + two) * (x - T::one()) / two;
    for n in 1..out.len() - 1 {
        let nf = T::from_index(n);
        let s = two * nf + ab;
        let denom = two * (nf + T::one()) * (nf + ab + T::one()) * s;
        let a1 = (s + T::one()) * ((s + two) * s * x + alpha * alpha - beta * beta);
        let a2 = two * (nf + alpha) * (nf + beta) * (s + two);
        out[n + 1] = (a1 * out[n] - a2 * out[n - 1]) / denom;
    }
}

fn jacobi_norm_zero<T: Real>(alpha: T, beta: T) -> T {
    let ab1 = alpha + beta + T::one();
    let log = ab1 * T::LN_2() + ln_gamma(alpha + T::one()).expect("alpha > -1")
        + ln_gamma(beta + T::one()).expect("beta > -1")
        - ln_gamma(ab1 + T::one()).expect("alpha + beta > -2");
    log.exp()
}

/// `h_n = ∫_{-1}^{1} (1-x)^alpha (1+x)^beta P_n(x)^2 dx` from its Gamma-ratio
/// closed form.
pub fn jacobi_norm_h<T: Real>(n: usize, alpha: T, beta: T) -> T {
    if n == 0 {
        return jacobi_norm_zero(alpha, beta);
    }
    let nf = T::from_index(n);
    let ab = alpha + beta;
    let lg = |x: T| ln_gamma(x).expect("positive Gamma argument");
    let log = (ab + T::one()) * T::LN_2() - (T::lit(2.0) * nf + ab + T::one()).ln()
        + lg(nf + alpha + T::one())
        + lg(nf + beta + T::one())
        - lg(nf + ab + T::one())
        - lg(nf + T::one());
    log.exp()
}

/// `h_0, ..., h_{count-1}` by the ratio `h_n / h_{n-1}`, avoiding large
/// Gamma arguments.
pub fn jacobi_norms<T: Real>(count: usize, alpha: T, beta: T) -> Vec<T> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let ab = alpha + beta;
    out.push(jacobi_norm_zero(alpha, beta));
    for n in 1..count {
        let nf = T::from_index(n);
        let prev = out[n - 1];
        let ratio = if n == 1 {
            (T::one() + alpha) * (T::one() + beta) / (ab + T::lit(3.0))
        } else {
            let two_n = T::lit(2.0) * nf;
            (two_n + ab - T::one()) / (two_n + ab + T::one()) * (nf + alpha) * (nf + beta)
                / ((nf + ab) * nf)
        };
        out.push(prev * ratio);
    }
    out
}
