use std::f64::consts::PI;

use num_complex::Complex;
use proptest::prelude::*;
use qes_core::numerics::{
    eig_general, log_gamma, poly_divide_exact, poly_mul, poly_roots, poly_shift, q_pochhammer_inf, CMatrix, Polynomial,
    Var,
};
use qes_core::Error;

type C = Complex<f64>;

fn cx() -> impl Strategy<Value = C> {
    (-2.0..2.0, -2.0..2.0).prop_map(|(re, im)| C::new(re, im))
}

/// Stirling series for `log Γ(w)`, accurate to rounding once `|w| > 40`.
fn stirling(w: C) -> C {
    let inv = w.inv();
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series
}

/// `log Γ(z)` by upward recursion to a Stirling anchor. Agrees with the
/// principal branch up to a multiple of `2πi`.
fn log_gamma_by_recursion(z: C) -> C {
    let n = 48;
    let mut acc = stirling(z + n as f64);
    for k in 0..n {
        acc -= (z + k as f64).ln();
    }
    acc
}

fn same_mod_2pi_i(a: C, b: C, tol: f64) -> bool {
    let turns = (a.im - b.im) / (2.0 * PI);
    (a.re - b.re).abs() <= tol && (turns - turns.round()).abs() * 2.0 * PI <= tol
}

#[test]
fn log_gamma_reference_values() {
    assert!(log_gamma(C::new(1.0, 0.0)).unwrap().norm() < 1e-14);
    let half = log_gamma(C::new(0.5, 0.0)).unwrap();
    assert!((half.re - 0.5723649429247001).abs() < 1e-13 && half.im.abs() < 1e-14);
    let z = C::new(3.0, 4.0);
    let got = log_gamma(z).unwrap();
    let want = log_gamma_by_recursion(z);
    assert!(same_mod_2pi_i(got, want, 1e-11), "{got} vs {want}");
    assert!(matches!(log_gamma(C::new(-2.0, 0.0)), Err(Error::PoleOfGamma { .. })));
}

#[test]
fn q_pochhammer_reference_values() {
    assert_eq!(q_pochhammer_inf(C::new(0.0, 0.0), 0.5).unwrap(), C::new(1.0, 0.0));
    assert!(q_pochhammer_inf(C::new(1.0, 0.0), 0.5).unwrap().norm() < 1e-15);
    let v = q_pochhammer_inf(C::new(0.5, 0.0), 0.5).unwrap();
    assert!((v.re - 0.2887880950866024).abs() < 1e-13 && v.im == 0.0);
    // (-1; 1/2)∞ by direct product
    let direct: f64 = (0..80).map(|n| 1.0 + 0.5f64.powi(n)).product();
    assert!((q_pochhammer_inf(C::new(-1.0, 0.0), 0.5).unwrap().re - direct).abs() < 1e-13 * direct);
    assert!(q_pochhammer_inf(C::new(0.5, 0.0), 1.0).is_err());
}

#[test]
fn polynomial_examples() {
    let x = |c: &[C]| Polynomial::new(c.to_vec(), Var::X);
    let (one, i) = (C::new(1.0, 0.0), C::new(0.0, 1.0));
    let z = C::new(0.0, 0.0);
    assert_eq!(poly_shift(&x(&[z, z, one]), -i).coeffs(), &[-one, -i * 2.0, one]);
    assert_eq!(poly_shift(&x(&[z, z, z, one]), i).coeffs(), &[-i, -one * 3.0, i * 3.0, one]);
    let prod = poly_mul(&poly_mul(&x(&[-one, one]), &x(&[one, one])), &x(&[-i, one]));
    assert_eq!(prod.coeffs(), &[i, -one, -i, one]);
    let p = x(&[one + 1e-3, z, one]);
    assert!(matches!(poly_divide_exact(&p, &x(&[-i, one]), 1e-9), Err(Error::InexactDivision { .. })));
    let mut r = poly_roots(&x(&[C::new(-6.0, 0.0), C::new(11.0, 0.0), C::new(-6.0, 0.0), one])).unwrap();
    r.sort_by(|a, b| a.re.total_cmp(&b.re));
    for (got, want) in r.iter().zip([1.0, 2.0, 3.0]) {
        assert!((got - C::new(want, 0.0)).norm() < 1e-12);
    }
}

/// Greedy matching distance between two root multisets.
fn matched_distance(a: &[C], b: &[C]) -> f64 {
    let mut left: Vec<C> = b.to_vec();
    let mut worst = 0.0_f64;
    for &r in a {
        let (k, d) =
            left.iter().enumerate().map(|(k, &s)| (k, (s - r).norm())).min_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
        worst = worst.max(d);
        left.swap_remove(k);
    }
    worst
}

proptest! {
    #[test]
    fn shift_round_trips(coeffs in prop::collection::vec(cx(), 1..13), re in -0.7..0.7, im in -0.7..0.7) {
        let (p, c) = (Polynomial::new(coeffs, Var::X), C::new(re, im));
        let back = poly_shift(&poly_shift(&p, c), -c);
        for k in 0..p.coeffs().len() {
            prop_assert!((back.coeff(k) - p.coeff(k)).norm() <= 1e-12 * p.norm_inf());
        }
    }

    // Up to degree 30 the intermediate coefficients grow like (1 + |c|)^n and
    // rounding scales with them, not with p.
    #[test]
    fn shift_round_trips_high_degree(coeffs in prop::collection::vec(cx(), 13..31), re in -0.7..0.7, im in -0.7..0.7) {
        let (p, c) = (Polynomial::new(coeffs, Var::X), C::new(re, im));
        let shifted = poly_shift(&p, c);
        let back = poly_shift(&shifted, -c);
        let n = p.coeffs().len() as f64;
        for k in 0..p.coeffs().len() {
            prop_assert!((back.coeff(k) - p.coeff(k)).norm() <= 1e-12 * n * shifted.norm_inf().max(p.norm_inf()));
        }
    }

    #[test]
    fn roots_round_trip(roots in prop::collection::vec(cx(), 1..21)) {
        let spread = roots.iter().enumerate().all(|(i, a)| roots[..i].iter().all(|b| (a - b).norm() >= 1e-3));
        prop_assume!(spread);
        let found = poly_roots(&Polynomial::from_roots(&roots, Var::X)).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        prop_assert!(matched_distance(&roots, &found) <= 1e-8);
    }

    #[test]
    fn exact_division_recovers_factor(a in prop::collection::vec(cx(), 1..8), b in prop::collection::vec(cx(), 1..6)) {
        let a = Polynomial::new(a, Var::X);
        let mut b = Polynomial::new(b, Var::X);
        prop_assume!(!a.is_zero());
        if b.leading().norm() < 0.1 {
            b = Polynomial::new([b.coeffs(), &[C::new(1.0, 0.0)]].concat(), Var::X);
        }
        let q = poly_divide_exact(&poly_mul(&a, &b), &b, 1e-9).unwrap();
        for k in 0..a.coeffs().len().max(q.coeffs().len()) {
            prop_assert!((q.coeff(k) - a.coeff(k)).norm() <= 1e-8 * a.norm_inf().max(1.0));
        }
    }

    #[test]
    fn eigenvalues_sum_to_trace(n in 1usize..65, seed in prop::collection::vec(cx(), 64 * 64)) {
        let rows: Vec<Vec<C>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
        let a = CMatrix::from_rows(&rows);
        let eig = eig_general(&a).unwrap();
        let sum: C = eig.eigenvalues.iter().sum();
        prop_assert!((sum - a.trace()).norm() <= 1e-9 * a.norm_fro().max(1.0));
        prop_assert!(eig.max_relative_residual(&a) <= 1e-10);
    }

    #[test]
    fn log_gamma_functional_equation(re in -6.0..12.0, im in -8.0..8.0) {
        let z = C::new(re, im);
        prop_assume!(im.abs() > 1e-3 || re > 0.01);
        let lhs = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        let turns = lhs.im / (2.0 * PI);
        prop_assert!(lhs.re.abs() <= 1e-11 * (1.0 + log_gamma(z).unwrap().re.abs()));
        prop_assert!((turns - turns.round()).abs() <= 1e-11 * (1.0 + z.norm()));
    }

    #[test]
    fn log_gamma_matches_recursion_oracle(re in 0.05..10.0, im in -10.0..10.0) {
        let z = C::new(re, im);
        let tol = 1e-11 * (1.0 + log_gamma_by_recursion(z).norm());
        prop_assert!(same_mod_2pi_i(log_gamma(z).unwrap(), log_gamma_by_recursion(z), tol));
    }

    #[test]
    fn q_pochhammer_functional_equation(a in cx(), q in 0.05..0.95) {
        let lhs = q_pochhammer_inf(a, q).unwrap();
        let rhs = (C::new(1.0, 0.0) - a) * q_pochhammer_inf(a * q, q).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(rhs.norm()).max(1e-300) + 1e-300);
    }
}
