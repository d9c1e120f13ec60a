//! Dense eigensolver for general (non-normal) complex matrices.
//!
//! Pipeline: diagonal balancing, Householder reduction to upper Hessenberg
//! form, single-shift complex QR iteration to Schur form `T = Zᴴ B Z`, then
//! eigenvectors of `T` by back-substitution mapped back through `Z` and the
//! balancing scale.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{abs1, Real};

/// Largest dimension accepted by [`eig_general`].
pub const MAX_DIM: usize = 256;

/// Eigenvalues with unit-norm eigenvectors, `eigenvectors[k]` pairing with
/// `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T: Real> {
    pub eigenvalues: Vec<Complex<T>>,
    pub eigenvectors: Vec<Vec<Complex<T>>>,
}

impl<T: Real> EigenDecomposition<T> {
    /// `max_k ‖A v_k − λ_k v_k‖₂ / ‖A‖_F`.
    pub fn max_relative_residual(&self, a: &CMatrix<T>) -> T {
        let scale = a.norm_fro().max(T::min_positive_value());
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(&lam, v)| {
                let av = a.mul_vec(v);
                av.iter().zip(v).map(|(&x, &y)| (x - y * lam).norm_sqr()).sum::<T>().sqrt() / scale
            })
            .fold(T::zero(), T::max)
    }
}

/// Full eigen-decomposition of a general complex matrix.
pub fn eig_general<T: Real>(a: &CMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = a.dim();
    if n > MAX_DIM {
        return Err(Error::InvalidParameter(format!("eigensolver dimension {n} exceeds {MAX_DIM}")));
    }
    let (mut h, scale) = balance(a);
    let mut z = hessenberg(&mut h, true);
    schur(&mut h, z.as_mut(), n)?;
    let z = z.expect("accumulated");
    let eigenvalues: Vec<Complex<T>> = (0..n).map(|i| h[(i, i)]).collect();
    let eigenvectors = (0..n)
        .map(|k| {
            let y = triangular_eigvec(&h, k);
            let mut v = z.mul_vec(&y);
            for (vi, &d) in v.iter_mut().zip(&scale) {
                *vi = *vi * d;
            }
            normalize(&mut v);
            v
        })
        .collect();
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// Eigenvalues only; skips the Schur vector accumulation.
pub fn eigenvalues<T: Real>(a: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = a.dim();
    if n > MAX_DIM {
        return Err(Error::InvalidParameter(format!("eigensolver dimension {n} exceeds {MAX_DIM}")));
    }
    let (mut h, _) = balance(a);
    hessenberg(&mut h, false);
    schur(&mut h, None, n)?;
    Ok((0..n).map(|i| h[(i, i)]).collect())
}

/// Parlett–Reinsch balancing with power-of-two factors. Returns `D⁻¹ A D`
/// and the diagonal of `D`.
fn balance<T: Real>(a: &CMatrix<T>) -> (CMatrix<T>, Vec<T>) {
    let n = a.dim();
    let mut b = a.clone();
    let mut d = vec![T::one(); n];
    let radix = T::lit(2.0);
    let radix2 = radix * radix;
    let mut converged = false;
    let mut sweeps = 0;
    while !converged && sweeps < 100 {
        converged = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c = c + abs1(b[(j, i)]);
                    r = r + abs1(b[(i, j)]);
                }
            }
            if c.is_zero() || r.is_zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f = f * radix;
                c = c * radix2;
            }
            g = r * radix;
            while c >= g {
                f = f / radix;
                c = c / radix2;
            }
            // c carries the f² factor here, so (c + r)/f is the balanced sum
            if (c + r) / f < T::lit(0.95) * s {
                converged = false;
                d[i] = d[i] * f;
                for j in 0..n {
                    b[(i, j)] = b[(i, j)] / Complex::new(f, T::zero());
                    b[(j, i)] = b[(j, i)] * Complex::new(f, T::zero());
                }
            }
        }
    }
    (b, d)
}

/// Householder reduction to upper Hessenberg form in place. Returns the
/// accumulated unitary `Q` (with `A = Q H Qᴴ`) when requested.
fn hessenberg<T: Real>(h: &mut CMatrix<T>, accumulate: bool) -> Option<CMatrix<T>> {
    let n = h.dim();
    let mut q = accumulate.then(|| CMatrix::identity(n));
    if n < 3 {
        return q;
    }
    for k in 0..n - 2 {
        let alpha_norm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<T>().sqrt();
        if alpha_norm.is_zero() {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.is_zero() { Complex::one() } else { x0 / x0.norm() };
        let alpha = -phase * alpha_norm;
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] = v[0] - alpha;
        let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        if vnorm.is_zero() {
            continue;
        }
        for c in v.iter_mut() {
            *c = *c / vnorm;
        }
        let two = T::lit(2.0);
        // left: H ← (I − 2vvᴴ) H
        for j in 0..n {
            let w = v.iter().enumerate().fold(Complex::zero(), |s, (t, vt)| s + vt.conj() * h[(k + 1 + t, j)]);
            for (t, vt) in v.iter().enumerate() {
                h[(k + 1 + t, j)] = h[(k + 1 + t, j)] - *vt * w * two;
            }
        }
        // right: H ← H (I − 2vvᴴ)
        let apply_right = |m: &mut CMatrix<T>| {
            for i in 0..n {
                let w = v.iter().enumerate().fold(Complex::<T>::zero(), |s, (t, vt)| s + m[(i, k + 1 + t)] * *vt);
                for (t, vt) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] = m[(i, k + 1 + t)] - w * vt.conj() * two;
                }
            }
        };
        apply_right(h);
        if let Some(q) = q.as_mut() {
            apply_right(q);
        }
        for i in k + 2..n {
            h[(i, k)] = Complex::zero();
        }
    }
    q
}

/// Givens rotation `G = [[c, s], [−s̄, c]]` with `G [a; b] = [r; 0]`.
fn givens<T: Real>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    if b.is_zero() {
        return (T::one(), Complex::zero());
    }
    if a.is_zero() {
        return (T::zero(), Complex::one());
    }
    let an = a.norm();
    let norm = an.hypot(b.norm());
    let c = an / norm;
    let s = (a / an) * b.conj() / norm;
    (c, s)
}

/// Shifted QR iteration on an upper Hessenberg matrix, leaving the upper
/// triangular Schur factor in `h`. Rotations are applied to the full rows and
/// columns so that `h` is a true Schur form, and accumulated into `z`.
fn schur<T: Real>(h: &mut CMatrix<T>, mut z: Option<&mut CMatrix<T>>, n: usize) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    let eps = T::epsilon();
    let hnorm = h.norm_max().max(T::min_positive_value());
    let max_iter = 40 * n * n.max(2);
    let mut total = 0usize;
    let mut hi = n - 1;
    let mut its = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let s = abs1(h[(l - 1, l - 1)]) + abs1(h[(l, l)]);
            let s = if s.is_zero() { hnorm } else { s };
            if abs1(h[(l, l - 1)]) <= eps * s {
                h[(l, l - 1)] = Complex::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        total += 1;
        if total > max_iter {
            return Err(Error::NoConvergence { dim: n, iterations: total });
        }
        let mu = if its.is_multiple_of(10) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex::new(abs1(h[(hi, hi - 1)]) * T::lit(0.75), T::zero())
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in l..hi {
            let (x, y) = if k == l { (h[(l, l)] - mu, h[(l + 1, l)]) } else { (h[(k, k - 1)], h[(k + 1, k - 1)]) };
            let (c, s) = givens(x, y);
            let cc = Complex::new(c, T::zero());
            let col0 = if k == l { l } else { k - 1 };
            for j in col0..n {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = cc * a + s * b;
                h[(k + 1, j)] = -s.conj() * a + cc * b;
            }
            if k > l {
                h[(k + 1, k - 1)] = Complex::zero();
            }
            let row_end = (k + 2).min(hi);
            for i in 0..=row_end {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * cc + b * s.conj();
                h[(i, k + 1)] = -a * s + b * cc;
            }
            if let Some(z) = z.as_deref_mut() {
                for i in 0..n {
                    let a = z[(i, k)];
                    let b = z[(i, k + 1)];
                    z[(i, k)] = a * cc + b * s.conj();
                    z[(i, k + 1)] = -a * s + b * cc;
                }
            }
        }
    }
    Ok(())
}

fn wilkinson<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let m = (a + d) * half;
    let disc = ((a - d) * (a - d) * T::lit(0.25) + b * c).sqrt();
    let l1 = m + disc;
    let l2 = m - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvector of an upper triangular `t` for its `k`-th diagonal entry,
/// by back-substitution with `y_k = 1` and `y_j = 0` for `j > k`.
fn triangular_eigvec<T: Real>(t: &CMatrix<T>, k: usize) -> Vec<Complex<T>> {
    let n = t.dim();
    let lam = t[(k, k)];
    let small = (T::epsilon() * t.norm_max()).max(T::min_positive_value());
    let big = T::one() / (T::epsilon() * T::epsilon() * T::epsilon());
    let mut y = vec![Complex::<T>::zero(); n];
    y[k] = Complex::one();
    for j in (0..k).rev() {
        let mut s = Complex::<T>::zero();
        for m in j + 1..=k {
            s = s + t[(j, m)] * y[m];
        }
        let mut den = t[(j, j)] - lam;
        if den.norm() < small {
            den = Complex::new(small, T::zero());
        }
        y[j] = -s / den;
        if y[j].norm() > big {
            let f = Complex::new(T::one() / y[j].norm(), T::zero());
            for v in y.iter_mut().take(k + 1) {
                *v = *v * f;
            }
        }
    }
    y
}

fn normalize<T: Real>(v: &mut [Complex<T>]) {
    let nrm = v.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
    if nrm > T::zero() {
        for c in v.iter_mut() {
            *c = *c / nrm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cplx, cre};

    #[test]
    fn diagonal_matrix() {
        let a = CMatrix::<f64>::diag(&[cre(2.0), cre(3.0)]);
        let mut ev = eig_general(&a).unwrap().eigenvalues;
        ev.sort_by(crate::scalar::cmp_re_im);
        assert!((ev[0] - cre(2.0)).norm() < 1e-14);
        assert!((ev[1] - cre(3.0)).norm() < 1e-14);
    }

    #[test]
    fn symmetric_two_by_two() {
        // characteristic polynomial λ² − 4
        let a = CMatrix::<f64>::from_rows(&[vec![cre(0.0), cre(-2.0)], vec![cre(-2.0), cre(0.0)]]);
        let dec = eig_general(&a).unwrap();
        let mut ev = dec.eigenvalues.clone();
        ev.sort_by(crate::scalar::cmp_re_im);
        assert!((ev[0] + cre(2.0)).norm() < 1e-14);
        assert!((ev[1] - cre(2.0)).norm() < 1e-14);
        assert!(dec.max_relative_residual(&a) < 1e-14);
    }

    #[test]
    fn one_by_one() {
        let a = CMatrix::<f64>::diag(&[cplx(7.0, 1.0)]);
        let dec = eig_general(&a).unwrap();
        assert_eq!(dec.eigenvalues, vec![cplx(7.0, 1.0)]);
        assert!((dec.eigenvectors[0][0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_normal_jordan_like_block() {
        let a = CMatrix::<f64>::from_rows(&[
            vec![cre(1.0), cre(1e3), cre(0.0)],
            vec![cre(0.0), cre(2.0), cre(1e3)],
            vec![cre(1e-3), cre(0.0), cre(3.0)],
        ]);
        let dec = eig_general(&a).unwrap();
        assert!(dec.max_relative_residual(&a) < 1e-12);
        let tr: Complex<f64> = dec.eigenvalues.iter().sum();
        assert!((tr - a.trace()).norm() < 1e-10 * a.norm_fro());
    }

    #[test]
    fn too_large_is_rejected() {
        let a = CMatrix::<f64>::identity(MAX_DIM + 1);
        assert!(eig_general(&a).is_err());
    }
}
