//! Pseudo ground state `φ₀²`, its zero-mode identity, and pointwise
//! residuals of the difference Schrödinger equation.
//!
//! Everything here is evaluated point by point from `V`, `V*` and the shifts;
//! none of it goes through the polynomial algebra of the operator module.

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bethe::BetheSolution;
use crate::error::{Error, Result};
use crate::models::{eta, eta_of_z, ModelFamily, ModelParams, ModelSpec, PotentialKind};
use crate::numerics::{log_gamma, q_pochhammer_inf};
use crate::scalar::{cplx, is_finite, Real};

/// Grid points must stay this far from poles and from the ends of the domain.
pub const POLE_CLEARANCE: f64 = 1e-3;
/// Accepted relative residual of the squared zero-mode identity.
pub const ZERO_MODE_TOL: f64 = 1e-10;
/// Accepted pointwise Schrödinger residual.
pub const SCHRODINGER_TOL: f64 = 1e-8;
/// Largest `|Im φ₀²| / |φ₀²|` still counted as real.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Sample points for the wavefunction layer.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<T: Real> {
    pub points: Vec<Complex<T>>,
}

impl<T: Real> GridSpec<T> {
    /// Checks the points against the family's domain: `Re x > 0` for the
    /// centrifugal models, `0 < Re x < π` for the q-model.
    pub fn new(spec: &ModelSpec<T>, points: Vec<Complex<T>>) -> Result<Self> {
        let clear = T::lit(POLE_CLEARANCE);
        for &x in &points {
            if !is_finite(x) {
                return Err(Error::InvalidParameter("non-finite grid point".into()));
            }
            let ok = match spec.family() {
                ModelFamily::TrigQ => x.re >= clear && x.re <= T::PI() - clear,
                f if f.is_centrifugal() => x.re >= clear,
                _ => true,
            };
            if !ok {
                return Err(Error::InvalidParameter(format!(
                    "grid point {} + {}i outside the {} domain",
                    x.re,
                    x.im,
                    spec.family()
                )));
            }
        }
        Ok(Self { points })
    }

    /// `n` evenly spaced real points on a default window for the family.
    pub fn uniform(spec: &ModelSpec<T>, n: usize) -> Result<Self> {
        let (lo, hi) = match spec.family() {
            ModelFamily::TrigQ => (T::lit(0.1), T::PI() - T::lit(0.1)),
            f if f.is_centrifugal() => (T::lit(0.1), T::lit(4.0)),
            _ => (T::lit(-3.0), T::lit(3.0)),
        };
        let points = (0..n)
            .map(|k| {
                let t = if n > 1 { T::from_usize_lossy(k) / T::from_usize_lossy(n - 1) } else { T::lit(0.5) };
                cplx(lo + (hi - lo) * t, T::zero())
            })
            .collect();
        Self::new(spec, points)
    }
}

fn q_of<T: Real>(spec: &ModelSpec<T>) -> T {
    match spec.params {
        ModelParams::TrigQ { q, .. } => q,
        _ => unreachable!("q of an x-family"),
    }
}

/// `φ₀(x)²`, computed without square roots.
pub fn phi0_squared<T: Real>(spec: &ModelSpec<T>, x: Complex<T>) -> Result<Complex<T>> {
    let pot = spec.potential();
    let i = Complex::<T>::i();
    if let PotentialKind::QTrig { q } = pot.kind {
        let z = (i * x).exp();
        let w = z.inv();
        let mut num = q_pochhammer_inf(z * z, q)? * q_pochhammer_inf(w * w, q)?;
        for &p in &pot.factors {
            num = num / (q_pochhammer_inf(p * z, q)? * q_pochhammer_inf(p.conj() * w, q)?);
        }
        return Ok(num);
    }
    let ix = i * x;
    let mut log = Complex::<T>::zero();
    for &p in &pot.factors {
        log = log + log_gamma(p + ix)? + log_gamma(p.conj() - ix)?;
    }
    if let ModelParams::MpCrossed { beta, .. } = spec.params {
        log = log + x * (beta + beta);
    }
    if pot.kind == PotentialKind::Centrifugal {
        let two_ix = ix + ix;
        log = log - log_gamma(two_ix)? - log_gamma(-two_ix)?;
    }
    Ok(log.exp())
}

fn normalised<T: Real>(lhs: Complex<T>, rhs: Complex<T>) -> T {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(T::min_positive_value())
}

/// Squared zero-mode identity `V*(x − i/2) φ₀²(x − i/2) = V(x + i/2) φ₀²(x + i/2)`
/// (half q-shifts `z → q^{±1/2} z` for the q-model), as a relative residual.
pub fn zero_mode_residual<T: Real>(spec: &ModelSpec<T>, x: Complex<T>) -> Result<T> {
    let pot = spec.potential();
    let half = T::lit(0.5);
    if let PotentialKind::QTrig { q } = pot.kind {
        // x → x ∓ (i/2) ln q moves z → q^{±1/2} z
        let shift = Complex::i() * (q.ln() * half);
        let (xs, xv) = (x - shift, x + shift);
        let lhs = pot.vstar(xs)? * phi0_squared(spec, xs)?;
        let rhs = pot.v(xv)? * phi0_squared(spec, xv)?;
        return Ok(normalised(lhs, rhs));
    }
    let shift = Complex::i() * half;
    let (xs, xv) = (x - shift, x + shift);
    let lhs = pot.vstar(xs)? * phi0_squared(spec, xs)?;
    let rhs = pot.v(xv)? * phi0_squared(spec, xv)?;
    Ok(normalised(lhs, rhs))
}

/// `Ψ` at a point given its `η` value (and `x` for the odd prefactor).
fn psi_at<T: Real>(sol: &BetheSolution<T>, x: Complex<T>, eta_x: Complex<T>) -> Complex<T> {
    let base = if sol.spec.has_odd_prefactor() { x } else { Complex::one() };
    sol.roots.roots_eta.iter().fold(base, |acc, &e| acc * (eta_x - e))
}

/// The eigenfunction `Ψ(x)` of a solution.
pub fn psi<T: Real>(sol: &BetheSolution<T>, x: Complex<T>) -> Complex<T> {
    psi_at(sol, x, eta(&sol.spec, x))
}

/// Real and positive up to [`POSITIVITY_TOL`].
pub fn is_positive<T: Real>(phi0sq: Complex<T>) -> bool {
    phi0sq.re > T::zero() && phi0sq.im.abs() <= T::lit(POSITIVITY_TOL) * phi0sq.norm()
}

/// `|H̃Ψ(x) − EΨ(x)|` relative to the size of the individual terms.
pub fn schrodinger_residual<T: Real>(spec: &ModelSpec<T>, sol: &BetheSolution<T>, x: Complex<T>) -> Result<T> {
    let pot = spec.potential();
    let i = Complex::<T>::i();
    let p0 = psi(sol, x);
    let (pm, pp) = if spec.family() == ModelFamily::TrigQ {
        let q = q_of(spec);
        let z = (i * x).exp();
        // V pairs with z → qz, V* with z → z/q
        (psi_at(sol, x, eta_of_z(z * q)), psi_at(sol, x, eta_of_z(z / q)))
    } else {
        let (xm, xp) = (x - i, x + i);
        (psi_at(sol, xm, eta(spec, xm)), psi_at(sol, xp, eta(spec, xp)))
    };
    let v = pot.v(x)?;
    let vs = pot.vstar(x)?;
    let alpha = spec.compensation_alpha(x);
    let e = if is_finite(sol.e_formula) { sol.e_formula } else { sol.e_oracle };
    let h = v * (pm - p0) + vs * (pp - p0) + alpha * p0;
    let local = v.norm() * (pm.norm() + p0.norm()) + vs.norm() * (pp.norm() + p0.norm()) + (alpha * p0).norm();
    let scale = (e * p0).norm().max(local).max(T::min_positive_value());
    Ok((h - e * p0).norm() / scale)
}

/// One row of the `grid` output.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridRow {
    pub x: [f64; 2],
    pub phi0sq: [f64; 2],
    pub psi: [f64; 2],
    pub residual: f64,
}

/// Evaluates `φ₀²`, `Ψ` and the Schrödinger residual on every grid point.
pub fn evaluate_grid<T: Real>(sol: &BetheSolution<T>, grid: &GridSpec<T>) -> Result<Vec<GridRow>> {
    let pair = |c: Complex<T>| [c.re.as_f64() + 0.0, c.im.as_f64() + 0.0];
    grid.points
        .par_iter()
        .map(|&x| {
            Ok(GridRow {
                x: pair(x),
                phi0sq: pair(phi0_squared(&sol.spec, x)?),
                psi: pair(psi(sol, x)),
                residual: schrodinger_residual(&sol.spec, sol, x)?.as_f64(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::solve;
    use crate::models::Sector;
    use crate::scalar::cre;

    #[test]
    fn trivial_values() {
        let mp =
            ModelSpec::new(ModelParams::MpCrossed { a1: cre(1.0), a2: cre(1.0), beta: 0.0 }, 0, Sector::Full).unwrap();
        assert!((phi0_squared(&mp, cre(0.0)).unwrap() - cre(1.0)).norm() < 1e-13);
        let s = ModelSpec::new(ModelParams::SexticI { a: 1.0, b: 1.0, c: 1.0 }, 0, Sector::Even).unwrap();
        assert!((phi0_squared(&s, cre(0.0)).unwrap() - cre(1.0)).norm() < 1e-13);
    }

    #[test]
    fn zero_mode_examples() {
        let s = ModelSpec::new(ModelParams::SexticI { a: 0.8, b: 0.8, c: 0.8 }, 0, Sector::Even).unwrap();
        assert!(zero_mode_residual(&s, cre(0.0)).unwrap() < 1e-14);
        let s = ModelSpec::new(ModelParams::SexticI { a: 1.0, b: 2.0, c: 3.0 }, 0, Sector::Even).unwrap();
        assert!(zero_mode_residual(&s, cre(0.7)).unwrap() <= 1e-10);
        let q = ModelSpec::new(ModelParams::TrigQ { a: 0.3, b: 0.0, c: 0.0, d: 0.0, e: 0.0, q: 0.5 }, 0, Sector::Full)
            .unwrap();
        assert!(zero_mode_residual(&q, cre(1.0)).unwrap() <= 1e-10);
    }

    #[test]
    fn hand_derived_pair() {
        let spec = ModelSpec::new(
            ModelParams::MpCrossed { a1: cre(1.0), a2: cre(1.0), beta: std::f64::consts::FRAC_PI_2 },
            1,
            Sector::Full,
        )
        .unwrap();
        let sols = solve(&spec).unwrap();
        let top = &sols[1];
        assert!(schrodinger_residual(&spec, top, cre(0.3)).unwrap() <= 1e-12);
        let mut wrong = top.clone();
        wrong.e_formula += 1.0;
        assert!(schrodinger_residual(&spec, &wrong, cre(0.3)).unwrap() > 1e-3);
    }

    #[test]
    fn grid_domain_checks() {
        let q = ModelSpec::new(ModelParams::TrigQ { a: 0.3, b: 0.1, c: 0.0, d: 0.0, e: 0.0, q: 0.5 }, 0, Sector::Full)
            .unwrap();
        assert!(GridSpec::new(&q, vec![cre(0.0)]).is_err());
        assert!(GridSpec::new(&q, vec![cre(1.0)]).is_ok());
        assert_eq!(GridSpec::uniform(&q, 5).unwrap().points.len(), 5);
    }
}
