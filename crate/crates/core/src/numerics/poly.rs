//! Dense complex polynomials in one variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::eigen::eigenvalues;
use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

/// Which variable the coefficients refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Eta,
    Z,
}

/// `coeffs[k]` multiplies `var^k`. The trailing coefficient is non-zero unless
/// the polynomial is zero, in which case `coeffs` is empty.
#[derive(Clone, PartialEq)]
pub struct Polynomial<T: Real> {
    coeffs: Vec<Complex<T>>,
    var: Var,
}

impl<T: Real> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{:?}](", self.var)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({} {:+}i)·^{}", c.re, c.im, k)?;
        }
        write!(f, ")")
    }
}

impl<T: Real> Polynomial<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>, var: Var) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, var }
    }

    pub fn from_real(coeffs: &[T], var: Var) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect(), var)
    }

    pub fn zero(var: Var) -> Self {
        Self { coeffs: Vec::new(), var }
    }

    pub fn constant(c: Complex<T>, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(Complex::one(), var)
    }

    /// `var^k`.
    pub fn monomial(k: usize, var: Var) -> Self {
        let mut c = vec![Complex::zero(); k + 1];
        c[k] = Complex::one();
        Self { coeffs: c, var }
    }

    /// Monic polynomial `∏ (var − r)`.
    pub fn from_roots(roots: &[Complex<T>], var: Var) -> Self {
        let mut c = vec![Complex::one()];
        for &r in roots {
            c.push(Complex::zero());
            for k in (1..c.len()).rev() {
                c[k] = c[k - 1] - r * c[k];
            }
            c[0] = -r * c[0];
        }
        Self::new(c, var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// Coefficient of `var^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs.last().copied().unwrap_or_else(Complex::zero)
    }

    pub fn norm_inf(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|&c| is_finite(c))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = Complex::zero();
        let mut dp = Complex::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect(), self.var)
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        let lead = self.leading();
        if lead.is_zero() {
            return self.clone();
        }
        let mut p = self.scale(lead.inv());
        if let Some(last) = p.coeffs.last_mut() {
            *last = Complex::one();
        }
        p
    }

    /// Taylor shift: returns `q` with `q(v) = p(v + c)`.
    ///
    /// Repeated synthetic division (the Pascal-triangle recurrence), exact up to
    /// rounding and free of any interpolation step.
    pub fn shift(&self, c: Complex<T>) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        if n <= 1 || c.is_zero() {
            return self.clone();
        }
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let upper = a[j + 1];
                a[j] = a[j] + c * upper;
            }
        }
        Self::new(a, self.var)
    }

    /// Convolution product.
    pub fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var);
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Self::new(out, self.var)
    }

    /// Long division by `d`; fails unless the remainder is at most
    /// `tol · ‖p‖∞`. The remainder itself is discarded.
    pub fn div_exact(&self, d: &Self, tol: T) -> Result<Self> {
        let dd = match d.degree() {
            Some(k) => k,
            None => return Err(Error::InvalidParameter("division by the zero polynomial".into())),
        };
        let Some(pd) = self.degree() else {
            return Ok(Self::zero(self.var));
        };
        let mut rem = self.coeffs.clone();
        let lead_inv = d.leading().inv();
        let mut quot = vec![Complex::zero(); if pd >= dd { pd - dd + 1 } else { 0 }];
        if pd >= dd {
            for k in (0..=pd - dd).rev() {
                let q = rem[k + dd] * lead_inv;
                quot[k] = q;
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j] - q * dc;
                }
                rem[k + dd] = Complex::zero();
            }
        }
        let r = rem.iter().take(dd).fold(T::zero(), |m, c| m.max(c.norm()));
        let bound = tol * self.norm_inf();
        if r > bound {
            return Err(Error::InexactDivision { remainder: r.as_f64(), bound: bound.as_f64() });
        }
        Ok(Self::new(quot, self.var))
    }

    /// Like [`Polynomial::div_exact`] but eliminating from the constant term
    /// upwards, which is the stable direction when the roots of `d` lie
    /// outside the unit circle. The remainder checked is the top part.
    pub fn div_exact_ascending(&self, d: &Self, tol: T) -> Result<Self> {
        let dd = match d.degree() {
            Some(k) => k,
            None => return Err(Error::InvalidParameter("division by the zero polynomial".into())),
        };
        if d.coeff(0).is_zero() {
            return Err(Error::InvalidParameter("ascending division needs d(0) ≠ 0".into()));
        }
        let Some(pd) = self.degree() else {
            return Ok(Self::zero(self.var));
        };
        if pd < dd {
            return self.div_exact(d, tol);
        }
        let n = pd - dd + 1;
        let mut rem = self.coeffs.clone();
        let c0_inv = d.coeff(0).inv();
        let mut quot = vec![Complex::zero(); n];
        for k in 0..n {
            let q = rem[k] * c0_inv;
            quot[k] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j] - q * dc;
            }
            rem[k] = Complex::zero();
        }
        let r = rem.iter().skip(n).fold(T::zero(), |m, c| m.max(c.norm()));
        let bound = tol * self.norm_inf();
        if r > bound {
            return Err(Error::InexactDivision { remainder: r.as_f64(), bound: bound.as_f64() });
        }
        Ok(Self::new(quot, self.var))
    }

    /// All roots with multiplicity, from the eigenvalues of the balanced
    /// companion matrix followed by a few guarded Newton steps on `p`.
    pub fn roots(&self) -> Result<Vec<Complex<T>>> {
        let Some(n) = self.degree() else {
            return Err(Error::InvalidParameter("roots of the zero polynomial".into()));
        };
        let norm = self.norm_inf();
        let lead = self.leading();
        if lead.norm() < T::lit(1e-14) * norm {
            return Err(Error::DegenerateLeadingCoefficient { leading: lead.norm().as_f64(), norm: norm.as_f64() });
        }
        match n {
            0 => return Ok(Vec::new()),
            1 => return Ok(vec![-self.coeffs[0] / self.coeffs[1]]),
            _ => {}
        }
        let inv = lead.inv();
        let mut comp = CMatrix::zeros(n);
        for j in 0..n {
            comp[(0, j)] = -self.coeffs[n - 1 - j] * inv;
        }
        for i in 1..n {
            comp[(i, i - 1)] = Complex::one();
        }
        let mut roots = eigenvalues(&comp)?;
        for r in roots.iter_mut() {
            *r = self.polish_root(*r);
        }
        Ok(roots)
    }

    fn polish_root(&self, mut r: Complex<T>) -> Complex<T> {
        let (mut pv, _) = self.eval_with_derivative(r);
        for _ in 0..4 {
            let (p, dp) = self.eval_with_derivative(r);
            if dp.is_zero() || p.is_zero() {
                break;
            }
            let cand = r - p / dp;
            let pc = self.eval(cand);
            if !is_finite(cand) || pc.norm() >= pv.norm() {
                break;
            }
            r = cand;
            pv = pc;
        }
        r
    }
}

impl<T: Real> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(), self.var)
    }
}

impl<T: Real> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect(), self.var)
    }
}

impl<T: Real> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        self.mul_poly(rhs)
    }
}

impl<T: Real> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect(), self.var)
    }
}

/// `q(v) = p(v + c)`.
pub fn poly_shift<T: Real>(p: &Polynomial<T>, c: Complex<T>) -> Polynomial<T> {
    p.shift(c)
}

pub fn poly_mul<T: Real>(p: &Polynomial<T>, q: &Polynomial<T>) -> Polynomial<T> {
    p.mul_poly(q)
}

pub fn poly_divide_exact<T: Real>(p: &Polynomial<T>, d: &Polynomial<T>, tol: T) -> Result<Polynomial<T>> {
    p.div_exact(d, tol)
}

pub fn poly_roots<T: Real>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>> {
    p.roots()
}
