//! Laurent polynomials in `z` and the change of basis to powers of
//! `η = (z + 1/z)/2`.

use num_complex::Complex;
use num_traits::Zero;

use super::poly::{Polynomial, Var};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `z^low · poly(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent<T: Real> {
    poly: Polynomial<T>,
    low: i32,
}

impl<T: Real> Laurent<T> {
    pub fn new(poly: Polynomial<T>, low: i32) -> Self {
        Self { poly: poly.with_var(Var::Z), low }
    }

    pub fn from_polynomial(poly: Polynomial<T>) -> Self {
        Self::new(poly, 0)
    }

    pub fn zero() -> Self {
        Self::new(Polynomial::zero(Var::Z), 0)
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest power present, `None` for zero.
    pub fn high(&self) -> Option<i32> {
        self.poly.degree().map(|d| self.low + d as i32)
    }

    pub fn poly(&self) -> &Polynomial<T> {
        &self.poly
    }

    /// Coefficient of `z^n`.
    pub fn coeff(&self, n: i32) -> Complex<T> {
        if n < self.low {
            return Complex::zero();
        }
        self.poly.coeff((n - self.low) as usize)
    }

    pub fn norm_inf(&self) -> T {
        self.poly.norm_inf()
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.poly.eval(z) * z.powi(self.low)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.poly * &other.poly, self.low + other.low)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.poly.scale(s), self.low)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.poly.is_zero() {
            return other.clone();
        }
        if other.poly.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().unwrap().max(other.high().unwrap());
        let coeffs = (low..=high).map(|n| self.coeff(n) + other.coeff(n)).collect();
        Self::new(Polynomial::new(coeffs, Var::Z), low)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    /// `f(z) → f(s z)`.
    pub fn dilate(&self, s: Complex<T>) -> Self {
        let mut pw = s.powi(self.low);
        let coeffs = self
            .poly
            .coeffs()
            .iter()
            .map(|&c| {
                let v = c * pw;
                pw = pw * s;
                v
            })
            .collect();
        Self::new(Polynomial::new(coeffs, Var::Z), self.low)
    }

    /// Exact division by an ordinary polynomial with non-zero constant term.
    pub fn div_exact(&self, d: &Polynomial<T>, tol: T) -> Result<Self> {
        if d.coeff(0).is_zero() {
            return Err(Error::InvalidParameter("Laurent divisor must not vanish at z = 0".into()));
        }
        Ok(Self::new(self.poly.div_exact(&d.clone().with_var(Var::Z), tol)?, self.low))
    }

    /// [`Laurent::div_exact`] eliminating from the lowest power upwards.
    pub fn div_exact_ascending(&self, d: &Polynomial<T>, tol: T) -> Result<Self> {
        Ok(Self::new(self.poly.div_exact_ascending(&d.clone().with_var(Var::Z), tol)?, self.low))
    }

    /// Expands a polynomial in `η = (z + 1/z)/2` into powers of `z`.
    pub fn from_eta(p: &Polynomial<T>) -> Self {
        let mut out = Self::zero();
        let half = Complex::new(T::lit(0.5), T::zero());
        let eta = Self::new(Polynomial::new(vec![half, Complex::zero(), half], Var::Z), -1);
        let mut power = Self::new(Polynomial::one(Var::Z), 0);
        for &c in p.coeffs() {
            out = out.add(&power.scale(c));
            power = power.mul(&eta);
        }
        out
    }

    /// Re-expresses a symmetric Laurent polynomial in powers of `η`.
    ///
    /// Returns the η-polynomial together with the largest asymmetry
    /// `|c_n − c_{−n}|` found, which vanishes for parity-invariant input.
    pub fn to_eta(&self) -> (Polynomial<T>, T) {
        let Some(high) = self.high() else {
            return (Polynomial::zero(Var::Eta), T::zero());
        };
        let top = high.max(-self.low).max(0);
        let mut asym = T::zero();
        for n in 1..=top {
            asym = asym.max((self.coeff(n) - self.coeff(-n)).norm());
        }
        // peel the top power: η^n = 2^{-n} z^n + lower
        let mut rest = self.clone();
        let mut out = vec![Complex::zero(); top as usize + 1];
        let two = T::lit(2.0);
        for n in (0..=top).rev() {
            let c = if n == 0 { rest.coeff(0) } else { (rest.coeff(n) + rest.coeff(-n)) * (T::lit(0.5) * two.powi(n)) };
            out[n as usize] = c;
            let mono = Polynomial::monomial(n as usize, Var::Eta);
            rest = rest.sub(&Self::from_eta(&mono).scale(c));
        }
        (Polynomial::new(out, Var::Eta), asym)
    }
}
