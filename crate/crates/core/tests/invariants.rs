use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use equiconv::eigensolver::EigenDecomposition;
use equiconv::expansion::{coefficient_energy, l2_norm_sq, Basis, CoefficientCache, PiecewiseFunction};
use equiconv::kernels::{eigen_kernel, trig_sum, SummabilitySequence, TrigKind};
use equiconv::linalg::gauss_jacobi_rule;
use equiconv::operator::{JacobiParams, OperatorSpec, PerturbationB, Side};
use equiconv::specfun::{gamma_fn, jacobi_poly};
use proptest::prelude::*;

fn perturbed() -> &'static EigenDecomposition<f64> {
    static D: OnceLock<EigenDecomposition<f64>> = OnceLock::new();
    D.get_or_init(|| {
        let spec = OperatorSpec::new(JacobiParams::new(0.6, 0.2).unwrap(), PerturbationB::new(vec![0.2, -0.05]).unwrap()).unwrap();
        EigenDecomposition::solve(&spec, 96, 192).unwrap()
    })
}

fn admissible() -> impl Strategy<Value = (f64, f64)> {
    (-0.45f64..2.0, 0.0f64..=1.0).prop_map(|(a, s)| (a, -0.45 + s * (a + 0.45)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trig_sums_match_direct_summation(k in 0usize..8, n in 1usize..150, frac in 0.0f64..=1.0, t in -4.0f64..4.0) {
        let kind = TrigKind::ALL[k];
        let lo = usize::from(kind.needs_positive_m());
        let m = lo + ((n - lo) as f64 * frac) as usize;
        let direct: f64 = (m..=n)
            .map(|j| {
                let jf = j as f64;
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let (c, s) = ((2.0 * jf * t).cos(), (2.0 * jf * t).sin());
                match kind {
                    TrigKind::C0 => c,
                    TrigKind::S0 => s,
                    TrigKind::C1 => c / jf,
                    TrigKind::S1 => s / jf,
                    TrigKind::C0m => sign * c,
                    TrigKind::S0m => sign * s,
                    TrigKind::C1m => sign * c / jf,
                    TrigKind::S1m => sign * s / jf,
                }
            })
            .sum();
        prop_assert!((trig_sum(kind, m, n, t).unwrap() - direct).abs() < 1e-10);
    }

    #[test]
    fn gauss_jacobi_is_exact_to_degree_2q_minus_1((a, b) in admissible(), q in 2usize..12, n in 0usize..6) {
        prop_assume!(2 * n < 2 * q);
        let rule = gauss_jacobi_rule(q, a, b).unwrap();
        // ∫ P_n P_0 w = 0 for n > 0 and the total mass for n = 0.
        let mass = 2f64.powf(a + b + 1.0) * gamma_fn(a + 1.0).unwrap() * gamma_fn(b + 1.0).unwrap()
            / gamma_fn(a + b + 2.0).unwrap();
        let v = rule.integrate(|x| jacobi_poly(n, a, b, x));
        let expected = if n == 0 { mass } else { 0.0 };
        prop_assert!((v - expected).abs() < 1e-12 * mass.max(1.0));
    }

    #[test]
    fn cesaro_weights_are_monotone_in_unit_interval(theta in 0.0f64..4.0, big_n in 0usize..300) {
        let r = SummabilitySequence::cesaro(theta).unwrap();
        let w = r.weights(big_n);
        prop_assert!((w[0] - 1.0).abs() < 1e-12);
        for pair in w.windows(2) {
            prop_assert!(pair[1] <= pair[0] + 1e-15 && pair[1] >= 0.0);
        }
        prop_assert_eq!(r.weight(big_n + 1, big_n), 0.0);
    }

    #[test]
    fn constant_b_quantities_are_closed_form((a, b) in admissible(), t in 0.0f64..FRAC_PI_2) {
        let s = OperatorSpec::new(JacobiParams::new(a, b).unwrap(), PerturbationB::constant()).unwrap();
        let chi = 2.0 * a * b + 2.0 * a + 2.0 * b + 1.5;
        prop_assert!((s.chi_at(t).unwrap() - chi).abs() < 1e-12);
        prop_assert!(s.weight_a_at(t.max(1e-9)).unwrap() > 0.0);
        prop_assert!((s.theta() - (a + b + 1.0).powi(2)).abs() < 1e-9);
        let x = s.x_integral_at(Side::Left, t).unwrap();
        prop_assert!(x.is_finite());
    }

    #[test]
    fn eigen_kernel_is_symmetric(x in 0.01f64..1.56, y in 0.01f64..1.56, big_n in 0usize..60, cesaro in any::<bool>()) {
        let d = perturbed();
        let r = if cesaro { SummabilitySequence::cesaro(1.0).unwrap() } else { SummabilitySequence::rectangular() };
        let xy = eigen_kernel(d, &r, big_n, x, y, big_n).unwrap();
        let yx = eigen_kernel(d, &r, big_n, y, x, big_n).unwrap();
        prop_assert!((xy - yx).abs() < 1e-10 * xy.abs().max(1.0));
        if !cesaro {
            prop_assert!(eigen_kernel(d, &r, big_n, x, x, big_n).unwrap() >= 0.0);
        }
    }

    #[test]
    fn function_descriptors_round_trip(c in 0.2f64..1.3, w in 0.05f64..0.25, a in 0.0f64..0.7, len in 0.05f64..0.8) {
        for f in [
            PiecewiseFunction::smooth_bump(c, w).unwrap(),
            PiecewiseFunction::indicator(a, a + len).unwrap(),
        ] {
            let back: PiecewiseFunction<f64> = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
        }
    }

    #[test]
    fn bessel_inequality_holds(a in 0.05f64..1.0, len in 0.1f64..0.5) {
        let f = PiecewiseFunction::indicator(a, (a + len).min(FRAC_PI_2)).unwrap();
        let norm = l2_norm_sq(&f).unwrap();
        for basis in [Basis::Cosine, Basis::Eigen(perturbed())] {
            let energy = coefficient_energy(&CoefficientCache::new(&f, basis, 60).unwrap());
            prop_assert!(energy <= norm * (1.0 + 1e-9));
            prop_assert!(energy >= 0.9 * norm);
        }
    }
}

#[test]
fn eigenvalues_increase_and_exceed_lower_bracket() {
    let d = perturbed();
    let mu = d.eigenvalues();
    assert!(mu.windows(2).all(|w| w[1] > w[0]));
    let (lo, _) = d.spec().neg_chi_bounds();
    for (n, (&m, &j)) in mu.iter().zip(d.basis().mu_j()).enumerate() {
        assert!(m >= j + lo - 1e-8, "n = {n}");
    }
    assert!((d.sigma(10).unwrap() - (2.0 * 10.0 + 1.8)).abs() < 0.5);
}
