//! The similarity-transformed Hamiltonian as exact polynomial algebra, and its
//! matrix on the invariant subspace in the monomial η-basis.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{centrifugal_denominators, ModelFamily, ModelSpec, PotentialKind, Sector};
use crate::numerics::laurent::Laurent;
use crate::numerics::{CMatrix, Polynomial, Var};
use crate::scalar::{cplx, cre, to_pair, Real};

/// Relative remainder allowed when cancelling the kinematic denominators.
pub const DIVISION_TOL: f64 = 1e-10;
/// Relative size of out-of-subspace components tolerated in a matrix column.
pub const LEAK_TOL: f64 = 1e-10;

/// `H̃ ψ` for a polynomial `ψ`.
///
/// For the x-families `ψ` is a polynomial in `x` and so is the result. For
/// the q-model `ψ` and the result are polynomials in `η = cos x`; the action
/// itself runs on Laurent polynomials in `z`, see [`apply_htilde_laurent`].
pub fn apply_htilde<T: Real>(spec: &ModelSpec<T>, psi: &Polynomial<T>) -> Result<Polynomial<T>> {
    match spec.family() {
        ModelFamily::TrigQ => {
            if psi.var() != Var::Eta {
                return Err(Error::InvalidParameter("q-model polynomials are in eta".into()));
            }
            let out = apply_htilde_laurent(spec, &Laurent::from_eta(psi))?;
            Ok(out.to_eta().0)
        }
        _ => {
            if psi.var() != Var::X {
                return Err(Error::InvalidParameter("polynomial must be in x".into()));
            }
            apply_htilde_x(spec, psi)
        }
    }
}

fn apply_htilde_x<T: Real>(spec: &ModelSpec<T>, psi: &Polynomial<T>) -> Result<Polynomial<T>> {
    let pot = spec.potential();
    let i = cplx(T::zero(), T::one());
    let down = &psi.shift(-i) - psi;
    let up = &psi.shift(i) - psi;
    let num = pot.numerator_x();
    let num_star = pot.numerator_star_x();
    let kinetic = match pot.kind {
        PotentialKind::Plain => &(&num * &down) + &(&num_star * &up),
        PotentialKind::Centrifugal => {
            let (d, ds) = centrifugal_denominators::<T>();
            let total = &(&(&num * &ds) * &down) + &(&(&num_star * &d) * &up);
            total.div_exact(&(&d * &ds), T::lit(DIVISION_TOL))?
        }
        PotentialKind::QTrig { .. } => unreachable!("q-model handled in z"),
    };
    let eta = match spec.family() {
        ModelFamily::MpCrossed => Polynomial::monomial(1, Var::X),
        _ => Polynomial::monomial(2, Var::X),
    };
    let alpha = eta.scale(cre(spec.alpha_coefficient()));
    Ok(&kinetic + &(&alpha * psi))
}

/// `H̃ ψ` for the q-model on a Laurent polynomial in `z`: the shifts are
/// `z → q z` (with `V`) and `z → z / q` (with `V*`), and the kinematic
/// denominators `(1 − z²)(1 − q z²)` and their conjugates cancel exactly.
pub fn apply_htilde_laurent<T: Real>(spec: &ModelSpec<T>, psi: &Laurent<T>) -> Result<Laurent<T>> {
    let pot = spec.potential();
    let PotentialKind::QTrig { q } = pot.kind else {
        return Err(Error::UnsupportedFamily(spec.family().to_string()));
    };
    let one = cre(T::one());
    let down = psi.dilate(cre(q)).sub(psi);
    let up = psi.dilate(cre(q.recip())).sub(psi);
    // V = A(z)/D(z) with D = (1 − z²)(1 − q z²)
    // V* = z⁴ A*(1/z) / E(z) with E = (z² − 1)(z² − q)
    let a = Laurent::from_polynomial(pot.numerator_z());
    let a_star_coeffs: Vec<Complex<T>> = a.poly().coeffs().iter().rev().map(|c| c.conj()).collect();
    let deg = a.poly().degree().unwrap_or(0) as i32;
    // A*(1/z) = z^{-deg} · reversed conjugate coefficients
    let a_star = Laurent::new(Polynomial::new(a_star_coeffs, Var::Z), -deg);
    let z = Complex::zero();
    let d = Polynomial::new(vec![one, z, -(one + cre(q)), z, cre(q)], Var::Z);
    let e = Polynomial::new(vec![cre(q), z, -(one + cre(q)), z, one], Var::Z);
    let z4 = Laurent::new(Polynomial::one(Var::Z), 4);
    let term1 = a.mul(&Laurent::from_polynomial(e.clone())).mul(&down);
    let term2 = a_star.mul(&z4).mul(&Laurent::from_polynomial(d.clone())).mul(&up);
    // roots of E lie on or inside the unit circle, roots of D on or outside:
    // each division runs in its stable direction
    let tol = T::lit(DIVISION_TOL);
    let kinetic = term1.add(&term2).div_exact(&e, tol)?.div_exact_ascending(&d, tol)?;
    // α η ψ with η = (z + 1/z)/2
    let half = cre(T::lit(0.5));
    let eta = Laurent::new(Polynomial::new(vec![half, z, half], Var::Z), -1);
    let alpha = eta.scale(cre(spec.alpha_coefficient())).mul(psi);
    Ok(kinetic.add(&alpha))
}

/// `H̃` restricted to the invariant subspace. Column `k` holds the η-basis
/// coordinates of `H̃` applied to basis function `k` (`η^k`, or `x η^k` in the
/// odd sextic sector).
#[derive(Debug, Clone)]
pub struct OperatorMatrix<T: Real> {
    pub spec: ModelSpec<T>,
    pub dim: usize,
    pub matrix: CMatrix<T>,
}

/// Basis function `k` of the sector as a polynomial in `x`.
pub fn basis_polynomial<T: Real>(spec: &ModelSpec<T>, k: usize) -> Polynomial<T> {
    match (spec.family(), spec.sector) {
        (ModelFamily::MpCrossed, _) => Polynomial::monomial(k, Var::X),
        (ModelFamily::TrigQ, _) => Polynomial::monomial(k, Var::Eta),
        (_, Sector::Odd) => Polynomial::monomial(2 * k + 1, Var::X),
        _ => Polynomial::monomial(2 * k, Var::X),
    }
}

/// Coordinates of an x-polynomial in the η-basis of the sector plus the size
/// of whatever does not fit (wrong-parity coefficients).
fn x_to_eta<T: Real>(spec: &ModelSpec<T>, p: &Polynomial<T>) -> (Vec<Complex<T>>, T) {
    match spec.family() {
        ModelFamily::MpCrossed => (p.coeffs().to_vec(), T::zero()),
        _ => {
            let offset = usize::from(spec.sector == Sector::Odd);
            let mut out = Vec::new();
            let mut stray = T::zero();
            for (k, &c) in p.coeffs().iter().enumerate() {
                if k >= offset && (k - offset) % 2 == 0 {
                    out.push(c);
                } else {
                    stray = stray.max(c.norm());
                }
            }
            (out, stray)
        }
    }
}

/// Image of basis function `k` in η-coordinates, with the size of any
/// component that is not representable in the sector.
fn column_image<T: Real>(spec: &ModelSpec<T>, k: usize) -> Result<(Vec<Complex<T>>, T)> {
    let basis = basis_polynomial(spec, k);
    if spec.family() == ModelFamily::TrigQ {
        // a z ↔ 1/z asymmetric image is not a polynomial in η
        let (image, asym) = apply_htilde_laurent(spec, &Laurent::from_eta(&basis))?.to_eta();
        return Ok((image.coeffs().to_vec(), asym));
    }
    Ok(x_to_eta(spec, &apply_htilde(spec, &basis)?))
}

pub fn build_matrix<T: Real>(spec: &ModelSpec<T>) -> Result<OperatorMatrix<T>> {
    let dim = spec.sector_dimension()?;
    let mut cols = Vec::with_capacity(dim);
    for k in 0..dim {
        let (mut coords, stray) = column_image(spec, k)?;
        let norm = coords.iter().fold(stray, |m, c| m.max(c.norm()));
        let overflow = coords.iter().skip(dim).fold(stray, |m, c| m.max(c.norm()));
        if overflow > T::lit(LEAK_TOL) * norm {
            return Err(Error::SubspaceLeak { column: k, overflow: overflow.as_f64(), norm: norm.as_f64() });
        }
        coords.resize(dim, Complex::zero());
        cols.push(coords);
    }
    Ok(OperatorMatrix { spec: *spec, dim, matrix: CMatrix::from_columns(&cols) })
}

/// Matrix of `H̃` on `span{1, x, …, x^degree}` in the plain monomial basis
/// (no parity reduction). Fails with `SubspaceLeak` if the span is not
/// invariant.
pub fn monomial_matrix<T: Real>(spec: &ModelSpec<T>, degree: usize) -> Result<CMatrix<T>> {
    if spec.family() == ModelFamily::TrigQ {
        return Err(Error::UnsupportedFamily(spec.family().to_string()));
    }
    let dim = degree + 1;
    let mut cols = Vec::with_capacity(dim);
    for k in 0..dim {
        let image = apply_htilde_x(spec, &Polynomial::monomial(k, Var::X))?;
        let mut coords = image.coeffs().to_vec();
        let norm = coords.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        let overflow = coords.iter().skip(dim).fold(T::zero(), |m, c| m.max(c.norm()));
        if overflow > T::lit(LEAK_TOL) * norm {
            return Err(Error::SubspaceLeak { column: k, overflow: overflow.as_f64(), norm: norm.as_f64() });
        }
        coords.resize(dim, Complex::zero());
        cols.push(coords);
    }
    Ok(CMatrix::from_columns(&cols))
}

/// Wire form of a matrix: `entries` lists `[re, im]` pairs in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDump {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn dump(&self) -> MatrixDump {
        let mut entries = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries.push(to_pair(self.matrix[(i, j)]));
            }
        }
        MatrixDump { dim: self.dim, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelParams;

    fn mp(a1: f64, a2: f64, beta: f64, m: usize) -> ModelSpec<f64> {
        ModelSpec::new(ModelParams::MpCrossed { a1: cre(a1), a2: cre(a2), beta }, m, Sector::Full).unwrap()
    }

    fn assert_poly(p: &Polynomial<f64>, want: &[Complex<f64>], tol: f64) {
        let n = p.coeffs().len().max(want.len());
        for k in 0..n {
            let w = want.get(k).copied().unwrap_or_default();
            assert!((p.coeff(k) - w).norm() <= tol, "coefficient {k}: {:?} vs {:?}", p.coeff(k), w);
        }
    }

    #[test]
    fn constant_maps_to_compensation_only() {
        for beta in [0.3, 1.0, -0.7] {
            for m in [0, 1, 3] {
                let spec = mp(1.0, 1.0, beta, m);
                let out = apply_htilde(&spec, &Polynomial::one(Var::X)).unwrap();
                assert_poly(&out, &[cre(0.0), cre(-2.0 * m as f64 * beta.sin())], 1e-14);
            }
        }
    }

    #[test]
    fn linear_at_quarter_turn() {
        let spec = mp(1.0, 1.0, std::f64::consts::FRAC_PI_2, 1);
        let out = apply_htilde(&spec, &Polynomial::monomial(1, Var::X)).unwrap();
        assert_poly(&out, &[cre(-2.0)], 1e-14);
    }

    #[test]
    fn small_matrices() {
        let m0 = build_matrix(&mp(1.0, 1.0, 0.4, 0)).unwrap();
        assert_eq!(m0.dim, 1);
        assert!(m0.matrix[(0, 0)].norm() < 1e-15);

        let m1 = build_matrix(&mp(1.0, 1.0, std::f64::consts::FRAC_PI_2, 1)).unwrap();
        let want = [[0.0, -2.0], [-2.0, 0.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert!((m1.matrix[(i, j)] - cre(w)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sextic_escapes_above_the_subspace() {
        let spec = ModelSpec::new(ModelParams::SexticI { a: 1.0, b: 2.0, c: 3.0 }, 2, Sector::Even).unwrap();
        let out = apply_htilde(&spec, &Polynomial::monomial(3, Var::X)).unwrap();
        assert_eq!(out.degree(), Some(5));
        let inside = apply_htilde(&spec, &Polynomial::monomial(2, Var::X)).unwrap();
        assert!(inside.degree().unwrap() <= 2);
    }

    #[test]
    fn undeformed_q_model_is_triangular() {
        let spec =
            ModelSpec::new(ModelParams::TrigQ { a: 0.0, b: 0.0, c: 0.0, d: 0.0, e: 0.0, q: 0.5 }, 2, Sector::Full)
                .unwrap();
        let om = build_matrix(&spec).unwrap();
        assert!(om.matrix.max_below_diagonal() < 1e-12);
        for (k, want) in [0.0, 1.0, 3.0].into_iter().enumerate() {
            assert!((om.matrix[(k, k)] - cre(want)).norm() < 1e-12, "{:?}", om.matrix[(k, k)]);
        }
    }

    #[test]
    fn centrifugal_type_one_degree_one() {
        // column 1 of the M = 1 matrix is (−e₄, e₂) of the numerator parameters
        let (b, c, d, e, f) = (0.7, 1.1, 1.3, 0.9, 1.6);
        let spec = ModelSpec::new(ModelParams::CentrifugalI { b, c, d, e, f }, 1, Sector::Full).unwrap();
        let om = build_matrix(&spec).unwrap();
        let p = [b, c, d, e, f];
        let mut e2 = 0.0;
        let mut e4 = 0.0;
        for i in 0..5 {
            for j in i + 1..5 {
                e2 += p[i] * p[j];
            }
            e4 += p.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| v).product::<f64>();
        }
        assert!(om.matrix[(0, 0)].norm() < 1e-12);
        assert!((om.matrix[(1, 0)] - cre(1.0)).norm() < 1e-12);
        assert!((om.matrix[(0, 1)] + cre(e4)).norm() < 1e-10);
        assert!((om.matrix[(1, 1)] - cre(e2)).norm() < 1e-10);
    }

    #[test]
    fn dump_is_row_major() {
        let om = build_matrix(&mp(1.0, 1.0, 0.3, 1)).unwrap();
        let d = om.dump();
        assert_eq!(d.dim, 2);
        assert_eq!(d.entries[1], to_pair(om.matrix[(0, 1)]));
        assert_eq!(d.entries[2], to_pair(om.matrix[(1, 0)]));
    }
}
