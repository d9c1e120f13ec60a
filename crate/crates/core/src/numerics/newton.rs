//! Damped Newton iteration for square complex systems with a central
//! finite-difference Jacobian.

use num_complex::Complex;

use super::matrix::{solve_linear, CMatrix};
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    /// Stop once `‖F‖∞` is at or below this.
    pub tol: f64,
    pub max_iter: usize,
    pub max_halvings: usize,
    /// Relative finite-difference step, `h = rel_step · max(1, |x_k|)`.
    pub rel_step: f64,
    /// Jacobians with a larger 1-norm condition estimate are rejected.
    pub max_condition: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 100, max_halvings: 20, rel_step: 1e-6, max_condition: 1e12 }
    }
}

/// Outcome of a successful solve.
#[derive(Debug, Clone)]
pub struct NewtonReport<T: Real> {
    pub x: Vec<Complex<T>>,
    pub residual: T,
    pub iterations: usize,
}

fn inf_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |m, c| if is_finite(*c) { m.max(c.norm()) } else { T::infinity() })
}

/// Central-difference Jacobian, column `k` from `±h` steps along the real axis
/// of `x_k` (valid for residuals analytic in each variable).
pub fn fd_jacobian<T, F>(f: &F, x: &[Complex<T>], rel_step: T) -> CMatrix<T>
where
    T: Real,
    F: Fn(&[Complex<T>]) -> Vec<Complex<T>>,
{
    let n = x.len();
    let mut cols = Vec::with_capacity(n);
    let mut xp = x.to_vec();
    for k in 0..n {
        let h = rel_step * T::one().max(x[k].norm());
        let hc = Complex::new(h, T::zero());
        xp[k] = x[k] + hc;
        let fp = f(&xp);
        xp[k] = x[k] - hc;
        let fm = f(&xp);
        xp[k] = x[k];
        let two_h = Complex::new(h + h, T::zero());
        cols.push(fp.iter().zip(&fm).map(|(&a, &b)| (a - b) / two_h).collect());
    }
    CMatrix::from_columns(&cols)
}

/// Solves `F(x) = 0` from `x0`. Steps are halved (up to `max_halvings` times)
/// whenever the full step fails to reduce `‖F‖∞`.
pub fn newton_solve<T, F>(f: F, x0: &[Complex<T>], opts: &NewtonOptions) -> Result<NewtonReport<T>>
where
    T: Real,
    F: Fn(&[Complex<T>]) -> Vec<Complex<T>>,
{
    match newton_best(f, x0, opts) {
        (report, None) => Ok(report),
        (_, Some(err)) => Err(err),
    }
}

/// Like [`newton_solve`] but always hands back the best iterate reached,
/// together with the reason iteration stopped short of `opts.tol`.
pub fn newton_best<T, F>(f: F, x0: &[Complex<T>], opts: &NewtonOptions) -> (NewtonReport<T>, Option<Error>)
where
    T: Real,
    F: Fn(&[Complex<T>]) -> Vec<Complex<T>>,
{
    let n = x0.len();
    let tol = T::lit(opts.tol);
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    assert_eq!(fx.len(), n, "residual must be square");
    let mut res = inf_norm(&fx);
    if n == 0 || res <= tol {
        return (NewtonReport { x, residual: res, iterations: 0 }, None);
    }
    for iter in 1..=opts.max_iter {
        let jac = fd_jacobian(&f, &x, T::lit(opts.rel_step));
        let rhs: Vec<Complex<T>> = fx.iter().map(|&v| -v).collect();
        let stop = |x, res, err| (NewtonReport { x, residual: res, iterations: iter - 1 }, Some(err));
        let Some((dx, cond)) = solve_linear(&jac, &rhs) else {
            return stop(x, res, Error::SingularJacobian { condition: f64::INFINITY });
        };
        if cond.is_nan() || cond > T::lit(opts.max_condition) {
            return stop(x, res, Error::SingularJacobian { condition: cond.as_f64() });
        }
        let mut step = T::one();
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let cand: Vec<Complex<T>> = x.iter().zip(&dx).map(|(&xi, &d)| xi + d * step).collect();
            let fc = f(&cand);
            let rc = inf_norm(&fc);
            if rc < res {
                x = cand;
                fx = fc;
                res = rc;
                accepted = true;
                break;
            }
            step = step * T::lit(0.5);
        }
        if res <= tol {
            return (NewtonReport { x, residual: res, iterations: iter }, None);
        }
        if !accepted {
            return (
                NewtonReport { x, residual: res, iterations: iter },
                Some(Error::NoConvergence { dim: n, iterations: iter }),
            );
        }
    }
    let err = Error::NoConvergence { dim: n, iterations: opts.max_iter };
    (NewtonReport { x, residual: res, iterations: opts.max_iter }, Some(err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cplx, cre};

    #[test]
    fn square_root_of_minus_one() {
        let r = newton_solve(
            |x: &[Complex<f64>]| vec![x[0] * x[0] + cre(1.0)],
            &[cplx(0.0, 0.9)],
            &NewtonOptions::default(),
        )
        .unwrap();
        assert!((r.x[0] - cplx(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn linear_converges_quickly() {
        let r =
            newton_solve(|x: &[Complex<f64>]| vec![x[0] - cre(5.0)], &[cre(0.0)], &NewtonOptions::default()).unwrap();
        // one exact step up to finite-difference rounding in the Jacobian
        assert!(r.iterations <= 2);
        assert!((r.x[0] - cre(5.0)).norm() < 1e-12);
    }

    #[test]
    fn two_by_two_system() {
        // x + y = 3, xy = 2 with the (1, 2) branch selected by the seed
        let f = |v: &[Complex<f64>]| vec![v[0] + v[1] - cre(3.0), v[0] * v[1] - cre(2.0)];
        let r = newton_solve(f, &[cre(0.9), cre(2.2)], &NewtonOptions::default()).unwrap();
        assert!((r.x[0] - cre(1.0)).norm() < 1e-10);
        assert!((r.x[1] - cre(2.0)).norm() < 1e-10);
    }

    #[test]
    fn fixed_point_needs_no_iterations() {
        let r =
            newton_solve(|x: &[Complex<f64>]| vec![x[0] - cre(2.0)], &[cre(2.0)], &NewtonOptions::default()).unwrap();
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn duplicated_equations_are_singular() {
        let f = |v: &[Complex<f64>]| vec![v[0] + v[1] - cre(3.0), v[0] + v[1] - cre(3.5)];
        let e = newton_solve(f, &[cre(1.0), cre(1.0)], &NewtonOptions::default()).unwrap_err();
        assert!(matches!(e, Error::SingularJacobian { .. }));
    }
}
