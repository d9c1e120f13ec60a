//! Brute-force spectral oracle: diagonalise the operator matrix, turn
//! eigenvectors into monic η-polynomials and extract Bethe roots from them.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::models::{ModelFamily, ModelSpec};
use crate::numerics::{eig_general, CMatrix, Polynomial, Var};
use crate::operator::OperatorMatrix;
use crate::scalar::{cmp_re_im, Real};

/// Relative eigenvalue separation below which a pair is flagged degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// Absolute root separation below which two roots are flagged coincident.
pub const ROOT_COLLISION_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct OracleEigenpair<T: Real> {
    pub eigenvalue: Complex<T>,
    /// Monic polynomial in `η`; the eigenfunction is this times `x` when
    /// `prefactor_parity` is set.
    pub eigenpoly: Polynomial<T>,
    pub prefactor_parity: bool,
    /// Another eigenvalue lies within the degeneracy tolerance.
    pub degenerate: bool,
}

impl<T: Real> OracleEigenpair<T> {
    pub fn degree(&self) -> usize {
        self.eigenpoly.degree().unwrap_or(0)
    }
}

/// Bethe roots in `x` and the matching `η` values.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet<T: Real> {
    pub roots_x: Vec<Complex<T>>,
    pub roots_eta: Vec<Complex<T>>,
}

impl<T: Real> RootSet<T> {
    pub fn empty() -> Self {
        Self { roots_x: Vec::new(), roots_eta: Vec::new() }
    }

    /// Builds a root set from `x` values, computing `η` and normalising each
    /// root to its representative.
    pub fn from_x(spec: &ModelSpec<T>, xs: &[Complex<T>]) -> Self {
        let roots_x: Vec<Complex<T>> = xs.iter().map(|&x| representative(spec, x)).collect();
        let roots_eta = roots_x.iter().map(|&x| crate::models::eta(spec, x)).collect();
        Self { roots_x, roots_eta }
    }

    /// Builds a root set from `η` values.
    pub fn from_eta(spec: &ModelSpec<T>, etas: &[Complex<T>]) -> Self {
        let roots_x = etas.iter().map(|&e| x_from_eta(spec, e)).collect();
        Self { roots_x, roots_eta: etas.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.roots_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots_x.is_empty()
    }

    /// `z_l = e^{i x_l}`.
    pub fn roots_z(&self) -> Vec<Complex<T>> {
        self.roots_x.iter().map(|&x| (x * Complex::i()).exp()).collect()
    }

    pub fn sum_eta(&self) -> Complex<T> {
        self.roots_eta.iter().fold(Complex::zero(), |s, &e| s + e)
    }

    /// Closest pair in `η`, if any pair is nearer than `tol`.
    pub fn closest_pair_within(&self, tol: T) -> Option<(usize, usize, T)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in 0..self.roots_eta.len() {
            for j in i + 1..self.roots_eta.len() {
                let d = (self.roots_eta[i] - self.roots_eta[j]).norm();
                if d < tol && best.is_none_or(|b| d < b.2) {
                    best = Some((i, j, d));
                }
            }
        }
        best
    }
}

/// Canonical representative of a root: `Re x > 0`, or `Re x = 0` with
/// `Im x ≥ 0`, for the families where `±x` are equivalent; for the q-model
/// the root with `|z| ≤ 1`, ties broken by `Im z ≥ 0`.
pub fn representative<T: Real>(spec: &ModelSpec<T>, x: Complex<T>) -> Complex<T> {
    match spec.family() {
        ModelFamily::MpCrossed => x,
        ModelFamily::TrigQ => x_from_eta(spec, x.cos()),
        _ => {
            if x.re < T::zero() || (x.re.is_zero() && x.im < T::zero()) {
                -x
            } else {
                x
            }
        }
    }
}

/// Representative `x` with `η(x) = e`.
pub fn x_from_eta<T: Real>(spec: &ModelSpec<T>, e: Complex<T>) -> Complex<T> {
    match spec.family() {
        ModelFamily::MpCrossed => e,
        ModelFamily::TrigQ => {
            // z² − 2ηz + 1 = 0, the two roots are z and 1/z
            let s = (e * e - Complex::one()).sqrt();
            let (z1, z2) = (e + s, e - s);
            let (n1, n2) = (z1.norm(), z2.norm());
            let tie = (n1 - n2).abs() <= T::lit(1e-14) * (n1 + n2);
            let z = if tie {
                if z1.im >= T::zero() {
                    z1
                } else {
                    z2
                }
            } else if n1 < n2 {
                // the small root suffers cancellation, take it from the large one
                z2.inv()
            } else {
                z1.inv()
            };
            // x = −i ln z
            -Complex::<T>::i() * z.ln()
        }
        _ => {
            let x = e.sqrt();
            if x.re < T::zero() || (x.re.is_zero() && x.im < T::zero()) {
                -x
            } else {
                x
            }
        }
    }
}

fn sort_and_flag<T: Real>(pairs: &mut [OracleEigenpair<T>], scale: T) {
    pairs.sort_by(|a, b| cmp_re_im(&a.eigenvalue, &b.eigenvalue));
    let tol = T::lit(DEGENERACY_TOL) * scale;
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if (pairs[i].eigenvalue - pairs[j].eigenvalue).norm() < tol {
                pairs[i].degenerate = true;
                pairs[j].degenerate = true;
            }
        }
    }
}

/// All eigenpairs of the operator matrix, sorted by `(Re λ, Im λ)`.
///
/// At exactly solvable points the matrix is upper triangular; the eigenvalues
/// are then its diagonal and the eigenvector for diagonal entry `m` is
/// obtained by back-substitution, giving an eigenpolynomial of degree `m`.
pub fn oracle_spectrum<T: Real>(om: &OperatorMatrix<T>) -> Result<Vec<OracleEigenpair<T>>> {
    let a = &om.matrix;
    let norm = a.norm_max();
    let scale = T::one().max(norm);
    let odd = om.spec.has_odd_prefactor();
    let triangular = om.spec.is_exactly_solvable() && a.max_below_diagonal() <= T::lit(1e-12) * scale;
    let mut pairs: Vec<OracleEigenpair<T>> = if triangular {
        (0..om.dim)
            .map(|m| OracleEigenpair {
                eigenvalue: a[(m, m)],
                eigenpoly: Polynomial::new(back_substitute(a, m), Var::Eta),
                prefactor_parity: odd,
                degenerate: false,
            })
            .collect()
    } else {
        let eig = eig_general(a)?;
        eig.eigenvalues
            .iter()
            .zip(&eig.eigenvectors)
            .map(|(&lambda, v)| OracleEigenpair {
                eigenvalue: lambda,
                eigenpoly: Polynomial::new(v.clone(), Var::Eta).monic(),
                prefactor_parity: odd,
                degenerate: false,
            })
            .collect()
    };
    sort_and_flag(&mut pairs, scale);
    Ok(pairs)
}

/// Eigenvector of an upper-triangular matrix for diagonal entry `m`, with
/// `v_m = 1` and `v_k = 0` above `m`.
fn back_substitute<T: Real>(a: &CMatrix<T>, m: usize) -> Vec<Complex<T>> {
    let lambda = a[(m, m)];
    let tiny = T::epsilon() * T::one().max(a.norm_max());
    let mut v = vec![Complex::<T>::zero(); m + 1];
    v[m] = Complex::<T>::one();
    for j in (0..m).rev() {
        let s = (j + 1..=m).fold(Complex::<T>::zero(), |s, k| s + a[(j, k)] * v[k]);
        let mut den = a[(j, j)] - lambda;
        if den.norm() < tiny {
            den = Complex::new(tiny, T::zero());
        }
        v[j] = -s / den;
    }
    v
}

/// Bethe roots of an oracle eigenpolynomial, as representatives.
pub fn extract_roots<T: Real>(pair: &OracleEigenpair<T>, spec: &ModelSpec<T>) -> Result<RootSet<T>> {
    let expected = spec.root_count();
    let deg = pair.degree();
    if deg > expected || (deg < expected && !spec.is_exactly_solvable()) {
        return Err(Error::RootCountMismatch { got: deg, expected });
    }
    if deg == 0 {
        return Ok(RootSet::empty());
    }
    // roots far from the origin leave the monic polynomial with huge low
    // coefficients; rescale η → s·η so no coefficient exceeds the leading one
    let p = &pair.eigenpoly;
    let s = (0..deg).map(|k| p.coeff(k).norm().powf(T::one() / T::from_usize_lossy(deg - k))).fold(T::one(), T::max);
    let scaled: Vec<Complex<T>> = (0..=deg).map(|k| p.coeff(k) * s.powi(k as i32 - deg as i32)).collect();
    let etas: Vec<Complex<T>> = Polynomial::new(scaled, Var::Eta).roots()?.into_iter().map(|r| r * s).collect();
    Ok(RootSet::from_eta(spec, &etas))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ModelParams, Sector};
    use crate::operator::build_matrix;
    use crate::scalar::{cplx, cre};

    fn mp(a1: f64, a2: f64, beta: f64, m: usize) -> ModelSpec<f64> {
        ModelSpec::new(ModelParams::MpCrossed { a1: cre(a1), a2: cre(a2), beta }, m, Sector::Full).unwrap()
    }

    #[test]
    fn two_level_crossed_model() {
        let spec = mp(1.0, 1.0, std::f64::consts::FRAC_PI_2, 1);
        let pairs = oracle_spectrum(&build_matrix(&spec).unwrap()).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!((pairs[0].eigenvalue - cre(-2.0)).norm() < 1e-12);
        assert!((pairs[1].eigenvalue - cre(2.0)).norm() < 1e-12);
        let p = &pairs[1].eigenpoly;
        assert_eq!(p.coeff(1), cre(1.0));
        assert!((p.coeff(0) - cre(-1.0)).norm() < 1e-12);
        let roots = extract_roots(&pairs[1], &spec).unwrap();
        assert!((roots.roots_x[0] - cre(1.0)).norm() < 1e-12);
    }

    #[test]
    fn degree_zero_has_a_single_pair() {
        let spec = mp(1.3, 0.7, 0.4, 0);
        let pairs = oracle_spectrum(&build_matrix(&spec).unwrap()).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].eigenpoly, Polynomial::one(Var::Eta));
        assert!(extract_roots(&pairs[0], &spec).unwrap().is_empty());
    }

    #[test]
    fn exactly_solvable_crossed_model() {
        let spec = mp(1.0, 1.0, 0.0, 3);
        let pairs = oracle_spectrum(&build_matrix(&spec).unwrap()).unwrap();
        for (m, pair) in pairs.iter().enumerate() {
            let want = (m * (m + 3)) as f64;
            assert!((pair.eigenvalue - cre(want)).norm() < 1e-10, "{:?}", pair.eigenvalue);
            assert_eq!(pair.degree(), m);
        }
    }

    #[test]
    fn root_representatives() {
        let sextic = ModelSpec::new(ModelParams::SexticI { a: 1.0, b: 1.0, c: 1.0 }, 2, Sector::Even).unwrap();
        let pair = OracleEigenpair {
            eigenvalue: cre(0.0),
            eigenpoly: Polynomial::new(vec![cre(-4.0), cre(1.0)], Var::Eta),
            prefactor_parity: false,
            degenerate: false,
        };
        let r = extract_roots(&pair, &sextic).unwrap();
        assert!((r.roots_x[0] - cre(2.0)).norm() < 1e-14);

        let q = ModelSpec::new(ModelParams::TrigQ { a: 0.1, b: 0.2, c: 0.3, d: 0.0, e: 0.1, q: 0.5 }, 1, Sector::Full)
            .unwrap();
        let pair = OracleEigenpair { eigenpoly: Polynomial::new(vec![cre(-1.0), cre(1.0)], Var::Eta), ..pair };
        let r = extract_roots(&pair, &q).unwrap();
        assert!(r.roots_x[0].norm() < 1e-7);
        assert!((r.roots_z()[0] - cre(1.0)).norm() < 1e-7);

        // negative η gives a purely imaginary representative in the upper half plane
        assert!((x_from_eta(&sextic, cre(-9.0)) - cplx(0.0, 3.0)).norm() < 1e-14);
        assert_eq!(representative(&sextic, cplx(-1.0, 2.0)), cplx(1.0, -2.0));
        // |z| ≤ 1 for the q-model
        let x = x_from_eta(&q, cre(3.0));
        assert!((x * Complex::i()).exp().norm() <= 1.0);
    }
}
