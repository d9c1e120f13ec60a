//! Complex log-gamma and the infinite q-Pochhammer symbol.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

/// `B_{2k} / (2k (2k − 1))` for k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Real part above which the asymptotic series is used directly.
const STIRLING_THRESHOLD: f64 = 15.0;

/// Principal branch of `log Γ(z)`.
///
/// The argument is moved to `Re z ≥ 15` with the recurrence
/// `log Γ(z) = log Γ(z + n) − Σ log(z + k)`, which holds with principal logs
/// everywhere off the non-positive real axis, and the Stirling series is
/// summed there. On the negative real axis the value is the limit from above.
pub fn log_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if !is_finite(z) {
        return Err(Error::InvalidParameter("log_gamma of a non-finite argument".into()));
    }
    if z.im.is_zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Err(Error::PoleOfGamma { re: z.re.as_f64(), im: 0.0 });
    }
    let threshold = T::lit(STIRLING_THRESHOLD);
    let mut w = z;
    let mut correction = Complex::zero();
    while w.re < threshold {
        correction = correction + w.ln();
        w = w + Complex::one();
    }
    Ok(stirling(w) - correction)
}

fn stirling<T: Real>(w: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let half_ln_2pi = T::lit(0.918_938_533_204_672_8);
    let mut s = (w - Complex::new(half, T::zero())) * w.ln() - w + Complex::new(half_ln_2pi, T::zero());
    let winv = w.inv();
    let winv2 = winv * winv;
    let mut p = winv;
    for &c in STIRLING.iter() {
        s = s + p * T::lit(c);
        p = p * winv2;
    }
    s
}

/// Terms with `|a qⁿ|` below this are dropped.
const POCHHAMMER_CUTOFF: f64 = 1e-17;

/// `(a; q)∞ = ∏_{n≥0} (1 − a qⁿ)`, truncated at the first `n` with
/// `|a qⁿ| < 10⁻¹⁷`. Requires `0 < q < 1` and finite `a`.
pub fn q_pochhammer_inf<T: Real>(a: Complex<T>, q: T) -> Result<Complex<T>> {
    if !(q > T::zero() && q < T::one()) {
        return Err(Error::DivergentProduct(format!("q = {q} outside (0, 1)")));
    }
    if !is_finite(a) {
        return Err(Error::DivergentProduct("non-finite factor".into()));
    }
    let cutoff = T::lit(POCHHAMMER_CUTOFF);
    let mut prod = Complex::<T>::one();
    let mut term = a;
    while term.norm() >= cutoff {
        prod = prod * (Complex::<T>::one() - term);
        term = term * q;
    }
    Ok(prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cplx, cre};

    #[test]
    fn log_gamma_at_one_vanishes() {
        assert!(log_gamma(cre(1.0f64)).unwrap().norm() < 1e-14);
        assert!(log_gamma(cre(2.0f64)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn log_gamma_half_is_half_log_pi() {
        let v = log_gamma(cre(0.5f64)).unwrap();
        assert!((v.re - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        assert!((v.re - 0.572_364_942_9).abs() < 1e-10);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn log_gamma_factorial() {
        // Γ(11) = 10!
        let v = log_gamma(cre(11.0f64)).unwrap();
        assert!((v.re - 3_628_800f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn log_gamma_rejects_poles() {
        for z in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(cre(z)), Err(Error::PoleOfGamma { .. })));
        }
        assert!(log_gamma(cplx(-1.0, 1e-3)).is_ok());
    }

    #[test]
    fn log_gamma_reflection_on_real_axis() {
        // Γ(−1/2) = −2√π, so Re log Γ(−1/2) = ln(2√π)
        let v = log_gamma(cre(-0.5f64)).unwrap();
        assert!((v.re - (2.0 * std::f64::consts::PI.sqrt()).ln()).abs() < 1e-13);
    }

    #[test]
    fn pochhammer_trivial_cases() {
        assert_eq!(q_pochhammer_inf(cre(0.0f64), 0.5).unwrap(), cre(1.0));
        assert_eq!(q_pochhammer_inf(cre(1.0f64), 0.5).unwrap(), cre(0.0));
    }

    #[test]
    fn pochhammer_rejects_bad_q() {
        assert!(matches!(q_pochhammer_inf(cre(0.3f64), 1.0), Err(Error::DivergentProduct(_))));
        assert!(matches!(q_pochhammer_inf(cre(0.3f64), 0.0), Err(Error::DivergentProduct(_))));
        assert!(matches!(q_pochhammer_inf(cre(f64::NAN), 0.5), Err(Error::DivergentProduct(_))));
    }
}
