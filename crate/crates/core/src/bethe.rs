//! Bethe ansatz equations in cross-multiplied form, Newton polishing of root
//! sets and the closed-form eigenvalue-from-roots formulas.
//!
//! At a root `x_j` of the eigenfunction `Ψ(x) = ∏ (η(x) − η_l)` the
//! eigenvalue equation reduces to `V(x_j) Ψ(x_j − i) + V*(x_j) Ψ(x_j + i) = 0`.
//! After cancelling the kinematic factors this reads `L_j = R_j` with
//!
//! ```text
//! L_j = K(x_j)  ∏_{l≠j} (η(x_j − i) − η_l)
//! R_j = K*(x_j) ∏_{l≠j} (η(x_j + i) − η_l)
//! ```
//!
//! where `K` is `V` (crossed model), `V (2ix + 1)` (sextic, times `x − i` in
//! the odd sector) or the bare numerator of `V` (centrifugal). The q-model
//! uses `z = e^{ix}`, shifts `z → qz` and `z → z/q`, and
//! `K = ∏ (1 − p z)`, `K* = z⁴ ∏ (1 − p*/z)`.

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{
    eta, eta_of_z, symmetric_coefficients, ModelFamily, ModelParams, ModelSpec, Potential, Restriction,
};
use crate::numerics::{newton_best, NewtonOptions};
use crate::operator::build_matrix;
use crate::scalar::{cmp_re_im, cplx, cre, Real};
use crate::spectral::{extract_roots, oracle_spectrum, OracleEigenpair, RootSet};

/// Acceptance thresholds. Every field can be overridden by callers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Largest normalised BAE residual accepted for a solution.
    pub residual: f64,
    /// `|E_formula − E_oracle| ≤ eigenvalue · max(1, |E_oracle|)`.
    pub eigenvalue: f64,
    /// Newton polishing stops once every residual is at or below this.
    pub polish_target: f64,
    /// Roots closer than this in `η` are treated as coincident.
    pub root_collision: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { residual: 1e-9, eigenvalue: 1e-8, polish_target: 1e-11, root_collision: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFlags {
    /// Polishing reached the target residual (or the seed already had).
    pub polished: bool,
    /// Degenerate eigenvalue or coincident roots.
    pub degenerate: bool,
    pub jacobian_singular: bool,
    pub no_convergence: bool,
    /// Root extraction from the eigenpolynomial failed; roots are empty.
    pub extraction_failed: bool,
}

#[derive(Debug, Clone)]
pub struct BetheSolution<T: Real> {
    pub spec: ModelSpec<T>,
    pub roots: RootSet<T>,
    pub e_formula: Complex<T>,
    pub e_oracle: Complex<T>,
    /// One normalised residual per root.
    pub residuals: Vec<T>,
    pub flags: SolutionFlags,
}

impl<T: Real> BetheSolution<T> {
    pub fn discrepancy(&self) -> T {
        (self.e_formula - self.e_oracle).norm()
    }

    pub fn residual_max(&self) -> T {
        self.residuals.iter().fold(T::zero(), |m, &r| m.max(r))
    }

    /// Both the BAE and the eigenvalue formula hold within `tol`.
    pub fn passes(&self, tol: &Tolerances) -> bool {
        let scale = T::one().max(self.e_oracle.norm());
        !self.flags.extraction_failed
            && self.residual_max() <= T::lit(tol.residual)
            && self.discrepancy() <= T::lit(tol.eigenvalue) * scale
    }
}

/// Kinematics of one family: the `K`, `K*` factors and the shifted `η`s.
struct Kinematics<T: Real> {
    spec: ModelSpec<T>,
    pot: Potential<T>,
}

impl<T: Real> Kinematics<T> {
    fn new(spec: &ModelSpec<T>) -> Self {
        Self { spec: *spec, pot: spec.potential() }
    }

    fn q(&self) -> T {
        match self.spec.params {
            ModelParams::TrigQ { q, .. } => q,
            _ => unreachable!("q of an x-family"),
        }
    }

    /// `(K, K*, η(x − i), η(x + i))` at `x` for the x-families.
    fn at_x(&self, x: Complex<T>) -> Result<[Complex<T>; 4]> {
        let i = Complex::i();
        let (xm, xp) = (x - i, x + i);
        let (em, ep) = (eta(&self.spec, xm), eta(&self.spec, xp));
        let fam = self.spec.family();
        let (k, ks) = if fam.is_centrifugal() {
            let ix = i * x;
            let n = self.pot.factors.iter().fold(self.pot.phase, |acc, &p| acc * (p + ix));
            let ns = self.pot.factors.iter().fold(self.pot.phase.conj(), |acc, &p| acc * (p.conj() - ix));
            (n, ns)
        } else {
            let v = self.pot.v(x)?;
            let vs = self.pot.vstar(x)?;
            if fam.is_sextic() {
                let two_ix = i * x * T::lit(2.0);
                let (mut k, mut ks) = (v * (two_ix + T::one()), vs * (two_ix - T::one()));
                if self.spec.has_odd_prefactor() {
                    k = k * xm;
                    ks = ks * xp;
                }
                (k, ks)
            } else {
                (v, vs)
            }
        };
        Ok([k, ks, em, ep])
    }

    /// Same for the q-model at `z`.
    fn at_z(&self, z: Complex<T>) -> Result<[Complex<T>; 4]> {
        if z.is_zero() {
            return Err(Error::PoleOfPotential { re: 0.0, im: f64::NEG_INFINITY });
        }
        let q = self.q();
        let w = z.inv();
        let k = self.pot.factors.iter().fold(Complex::<T>::one(), |acc, &p| acc * (Complex::<T>::one() - p * z));
        let ks = self.pot.factors.iter().fold(z.powi(4), |acc, &p| acc * (Complex::<T>::one() - p.conj() * w));
        Ok([k, ks, eta_of_z(z * q), eta_of_z(z / q)])
    }

    /// `(L_j, R_j)` given the kinematic tuple at root `j` and all `η_l`.
    fn sides(kin: [Complex<T>; 4], j: usize, etas: &[Complex<T>]) -> (Complex<T>, Complex<T>) {
        let [k, ks, em, ep] = kin;
        let mut l = k;
        let mut r = ks;
        for (idx, &e) in etas.iter().enumerate() {
            if idx != j {
                l = l * (em - e);
                r = r * (ep - e);
            }
        }
        (l, r)
    }

    fn all_sides(&self, roots: &RootSet<T>) -> Result<Vec<(Complex<T>, Complex<T>)>> {
        let etas = &roots.roots_eta;
        if self.spec.family() == ModelFamily::TrigQ {
            roots.roots_z().iter().enumerate().map(|(j, &z)| Ok(Self::sides(self.at_z(z)?, j, etas))).collect()
        } else {
            roots.roots_x.iter().enumerate().map(|(j, &x)| Ok(Self::sides(self.at_x(x)?, j, etas))).collect()
        }
    }
}

fn normalised<T: Real>(l: Complex<T>, r: Complex<T>) -> T {
    let scale = l.norm().max(r.norm()).max(T::min_positive_value());
    (l - r).norm() / scale
}

/// `|L_j − R_j| / max(|L_j|, |R_j|)` for every root.
pub fn bae_residual<T: Real>(spec: &ModelSpec<T>, roots: &RootSet<T>) -> Result<Vec<T>> {
    bae_residual_with(spec, roots, &Tolerances::default())
}

pub fn bae_residual_with<T: Real>(spec: &ModelSpec<T>, roots: &RootSet<T>, tol: &Tolerances) -> Result<Vec<T>> {
    if let Some((i, j, d)) = roots.closest_pair_within(T::lit(tol.root_collision)) {
        return Err(Error::DegenerateRoots { i, j, distance: d.as_f64() });
    }
    let sides = Kinematics::new(spec).all_sides(roots)?;
    Ok(sides.into_iter().map(|(l, r)| normalised(l, r)).collect())
}

/// Unknowns used by Newton for a family/sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unknowns {
    X,
    Eta,
    /// `x` for the q-model, evaluated through `z = e^{ix}`; steps in `x` are
    /// relative steps in `z`, which keeps roots near `z = 0` well scaled.
    LogZ,
}

fn unknowns_for<T: Real>(spec: &ModelSpec<T>) -> Unknowns {
    match spec.family() {
        ModelFamily::MpCrossed => Unknowns::X,
        ModelFamily::TrigQ => Unknowns::LogZ,
        f if f.is_sextic() && spec.has_odd_prefactor() => Unknowns::X,
        _ => Unknowns::Eta,
    }
}

/// Raw analytic residual `g_j` whose zeros are the BAE solutions.
fn raw_system<T: Real>(kin: &Kinematics<T>, unknowns: Unknowns, vars: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = vars.len();
    let mut out = Vec::with_capacity(n);
    let etas: Vec<Complex<T>> = match unknowns {
        Unknowns::X => vars.iter().map(|&x| eta(&kin.spec, x)).collect(),
        Unknowns::Eta => vars.to_vec(),
        Unknowns::LogZ => vars.iter().map(|&x| x.cos()).collect(),
    };
    let nan = cplx(T::nan(), T::nan());
    for (j, &v) in vars.iter().enumerate().take(n) {
        let tuple = match unknowns {
            Unknowns::LogZ => kin.at_z((Complex::<T>::i() * v).exp()),
            Unknowns::X => kin.at_x(v),
            Unknowns::Eta => kin.at_x(v.sqrt()),
        };
        let Ok(tuple) = tuple else {
            out.push(nan);
            continue;
        };
        let (l, r) = Kinematics::sides(tuple, j, &etas);
        let mut g = l - r;
        // L − R is odd in x for the centrifugal families
        if unknowns == Unknowns::Eta && kin.spec.family().is_centrifugal() {
            g = g / vars[j].sqrt();
        }
        out.push(g);
    }
    out
}

fn roots_from_vars<T: Real>(spec: &ModelSpec<T>, unknowns: Unknowns, vars: &[Complex<T>]) -> RootSet<T> {
    match unknowns {
        Unknowns::X | Unknowns::LogZ => RootSet::from_x(spec, vars),
        Unknowns::Eta => RootSet::from_eta(spec, vars),
    }
}

fn vars_from_roots<T: Real>(unknowns: Unknowns, roots: &RootSet<T>) -> Vec<Complex<T>> {
    match unknowns {
        Unknowns::X | Unknowns::LogZ => roots.roots_x.clone(),
        Unknowns::Eta => roots.roots_eta.clone(),
    }
}

/// Outcome of [`newton_polish`]: the best root set found and how it was
/// reached.
#[derive(Debug, Clone)]
pub struct Polished<T: Real> {
    pub roots: RootSet<T>,
    pub residuals: Vec<T>,
    pub flags: SolutionFlags,
}

/// Newton iteration on the cross-multiplied system in the sector's natural
/// unknowns (`x`, `η` or `z`), each equation scaled by the size of its two
/// sides at the seed. Never fails: when polishing stalls, the better of the
/// seed and the last accepted iterate is returned with a flag.
pub fn newton_polish<T: Real>(spec: &ModelSpec<T>, seed: &RootSet<T>, tol: &Tolerances) -> Polished<T> {
    let kin = Kinematics::new(spec);
    let target = T::lit(tol.polish_target);
    let residual_of = |rs: &RootSet<T>| -> Option<Vec<T>> {
        let sides = kin.all_sides(rs).ok()?;
        Some(sides.into_iter().map(|(l, r)| normalised(l, r)).collect())
    };
    let max_of = |v: &[T]| v.iter().fold(T::zero(), |m, &r| m.max(r));
    let seed_res = residual_of(seed);
    let mut flags = SolutionFlags {
        degenerate: seed.closest_pair_within(T::lit(tol.root_collision)).is_some(),
        ..SolutionFlags::default()
    };
    if flags.degenerate {
        // coincident roots are not a Bethe state; nothing to polish
        flags.jacobian_singular = true;
        let residuals = seed_res.unwrap_or_else(|| vec![T::infinity(); seed.len()]);
        return Polished { roots: seed.clone(), residuals, flags };
    }
    if let Some(r) = &seed_res {
        if max_of(r) <= target {
            flags.polished = true;
            return Polished { roots: seed.clone(), residuals: r.clone(), flags };
        }
    }
    let unknowns = unknowns_for(spec);
    let x0 = vars_from_roots(unknowns, seed);
    let g0 = raw_system(&kin, unknowns, &x0);
    let scales: Vec<T> = match kin.all_sides(seed) {
        Ok(sides) => sides
            .iter()
            .zip(&g0)
            .zip(&x0)
            .map(|(((l, r), _), &v)| {
                let mut s = l.norm().max(r.norm());
                if unknowns == Unknowns::Eta && spec.family().is_centrifugal() {
                    s = s / v.sqrt().norm().max(T::min_positive_value());
                }
                s.max(T::min_positive_value())
            })
            .collect(),
        Err(_) => vec![T::one(); x0.len()],
    };
    let f = |v: &[Complex<T>]| -> Vec<Complex<T>> {
        raw_system(&kin, unknowns, v).into_iter().zip(&scales).map(|(g, &s)| g / s).collect()
    };
    let opts = NewtonOptions { tol: tol.polish_target * 1e-2, ..NewtonOptions::default() };
    let (report, err) = newton_best(f, &x0, &opts);
    match err {
        Some(Error::SingularJacobian { .. }) => flags.jacobian_singular = true,
        Some(_) => flags.no_convergence = true,
        None => {}
    }
    let candidate = roots_from_vars(spec, unknowns, &report.x);
    let cand_res = residual_of(&candidate);
    let better = match (&cand_res, &seed_res) {
        (Some(c), Some(s)) => max_of(c) <= max_of(s),
        (Some(_), None) => true,
        _ => false,
    };
    let (roots, residuals) = if better && !flags.jacobian_singular {
        (candidate, cand_res.unwrap_or_default())
    } else {
        (seed.clone(), seed_res.unwrap_or_else(|| vec![T::infinity(); seed.len()]))
    };
    flags.polished = !flags.jacobian_singular && max_of(&residuals) <= target;
    flags.degenerate |= roots.closest_pair_within(T::lit(tol.root_collision)).is_some();
    Polished { roots, residuals, flags }
}

fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    (0..k).fold(T::one(), |acc, i| acc * T::from_usize_lossy(n - i) / T::from_usize_lossy(i + 1))
}

/// Elementary symmetric polynomials `e_0..e_n` of real values.
fn elementary<T: Real>(vals: &[T]) -> Vec<T> {
    let mut e = vec![T::one()];
    for &v in vals {
        let mut next = vec![T::zero(); e.len() + 1];
        for (k, &c) in e.iter().enumerate() {
            next[k] = next[k] + c;
            next[k + 1] = next[k + 1] + c * v;
        }
        e = next;
    }
    e
}

/// Eigenvalue of the solution with the given roots, from the family's closed
/// form. At exactly solvable points the degree is the number of roots.
pub fn eigenvalue_from_roots<T: Real>(spec: &ModelSpec<T>, roots: &RootSet<T>) -> Result<Complex<T>> {
    let n_roots = roots.len();
    let expected = spec.root_count();
    if n_roots > expected || (n_roots < expected && !spec.is_exactly_solvable()) {
        return Err(Error::RootCountMismatch { got: n_roots, expected });
    }
    let mi = if spec.is_exactly_solvable() && !spec.family().is_sextic() { n_roots } else { spec.m };
    let m = T::from_usize_lossy(mi);
    let one = T::one();
    let two = T::lit(2.0);
    let sum_eta = roots.sum_eta();

    if let Some(r) = spec.restriction {
        let params: Vec<T> = spec.params.named_values().iter().map(|(_, v)| v.re).collect();
        return Ok(match r {
            Restriction::MeixnerPollaczek => {
                let ModelParams::MpCrossed { beta, .. } = spec.params else { unreachable!() };
                cre(two * m * beta.cos())
            }
            Restriction::Wilson => cre(m * (m + params[0] + params[1] + params[2] + params[3] - one)),
            Restriction::ContinuousDualHahn => cre(m),
        });
    }

    Ok(match spec.params {
        ModelParams::MpCrossed { a1, a2, beta } => {
            let ph = Complex::from_polar(one, -beta);
            cre(m * (m - one) * beta.cos())
                + ((a1 + a2) * ph + (a1.conj() + a2.conj()) * ph.conj()) * m
                + sum_eta * (two * beta.sin())
        }
        ModelParams::SexticI { a, b, c } => {
            let e = elementary(&[a, b, c]);
            cre(m * (m - one) * (m - two) / T::lit(3.0) + e[1] * m * (m - one) + two * e[2] * m) - sum_eta * T::lit(4.0)
        }
        ModelParams::SexticII { .. } => {
            let d = symmetric_coefficients(spec)?;
            let mut e = Complex::<T>::zero();
            for j in 1..=4 {
                e = e + d.delta(j) * (two * binomial::<T>(mi, j));
            }
            e - sum_eta * (d.delta(3) * T::lit(4.0) + cre(T::lit(4.0) * m - T::lit(6.0)))
        }
        ModelParams::CentrifugalI { b, c, d, e, f } => {
            let el = elementary(&[b, c, d, e, f]);
            cre(two / T::lit(3.0) * m * (m - one) * (m - two) + (el[1] + T::lit(0.5)) * m * (m - one) + el[2] * m)
                - sum_eta
        }
        ModelParams::CentrifugalII { .. } => {
            let d = symmetric_coefficients(spec)?;
            d.delta(3) * binomial::<T>(mi, 1)
                + (d.delta(4) * two + d.delta(5)) * binomial::<T>(mi, 2)
                + (d.delta(5) + Complex::one()) * (T::lit(4.0) * binomial::<T>(mi, 3))
                + cre(T::lit(8.0) * binomial::<T>(mi, 4))
                - sum_eta * (d.delta(5) + cre(two * (m - one)))
        }
        ModelParams::TrigQ { a, b, c, d, e, q } => {
            let el = elementary(&[a, b, c, d, e]);
            let qm = q.powi(mi as i32);
            cre(el[4] / q * (qm - one) + one / qm - one) - sum_eta * (two * el[5] * qm / q * (one - one / q))
        }
    })
}

/// How root sets are seeded in [`solve_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedMode {
    /// Roots of the oracle eigenpolynomials.
    #[default]
    Oracle,
    /// Continuation from the exactly solvable point (crossed model in `β`,
    /// q-model in `a`). Produces the single branch that starts at the
    /// top-degree exactly solvable eigenfunction.
    Homotopy,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub tolerances: Tolerances,
    pub seed: SeedMode,
}

pub fn solve<T: Real>(spec: &ModelSpec<T>) -> Result<Vec<BetheSolution<T>>> {
    solve_with(spec, &SolveOptions::default())
}

pub fn solve_with<T: Real>(spec: &ModelSpec<T>, opts: &SolveOptions) -> Result<Vec<BetheSolution<T>>> {
    let om = build_matrix(spec)?;
    let pairs = oracle_spectrum(&om)?;
    let mut out = match opts.seed {
        SeedMode::Oracle => pairs.par_iter().map(|p| solve_pair(spec, p, &opts.tolerances)).collect(),
        SeedMode::Homotopy => vec![homotopy_solution(spec, &pairs, &opts.tolerances)?],
    };
    out.sort_by(|a: &BetheSolution<T>, b| cmp_re_im(&a.e_oracle, &b.e_oracle));
    Ok(out)
}

fn solve_pair<T: Real>(spec: &ModelSpec<T>, pair: &OracleEigenpair<T>, tol: &Tolerances) -> BetheSolution<T> {
    let mut flags = SolutionFlags { degenerate: pair.degenerate, ..SolutionFlags::default() };
    let seed = match extract_roots(pair, spec) {
        Ok(r) => r,
        Err(_) => {
            flags.extraction_failed = true;
            return BetheSolution {
                spec: *spec,
                roots: RootSet::empty(),
                e_formula: cplx(T::nan(), T::nan()),
                e_oracle: pair.eigenvalue,
                residuals: Vec::new(),
                flags,
            };
        }
    };
    let polished = newton_polish(spec, &seed, tol);
    flags.polished = polished.flags.polished;
    flags.degenerate |= polished.flags.degenerate;
    flags.jacobian_singular = polished.flags.jacobian_singular;
    flags.no_convergence = polished.flags.no_convergence;
    let e_formula = eigenvalue_from_roots(spec, &polished.roots).unwrap_or_else(|_| cplx(T::nan(), T::nan()));
    BetheSolution {
        spec: *spec,
        roots: polished.roots,
        e_formula,
        e_oracle: pair.eigenvalue,
        residuals: polished.residuals,
        flags,
    }
}

/// Number of continuation steps before any step halving.
const HOMOTOPY_STEPS: usize = 16;
const HOMOTOPY_MAX_REFINE: usize = 8;

/// Continuation path `t ∈ [0, 1] ↦ spec(t)` with `spec(0)` exactly solvable.
fn homotopy_spec<T: Real>(spec: &ModelSpec<T>, t: T) -> Result<ModelSpec<T>> {
    match spec.params {
        ModelParams::MpCrossed { a1, a2, beta } => {
            Ok(spec.with_params(ModelParams::MpCrossed { a1, a2, beta: beta * t }))
        }
        ModelParams::TrigQ { a, b, c, d, e, q } => Ok(spec.with_params(ModelParams::TrigQ { a: a * t, b, c, d, e, q })),
        _ => Err(Error::UnsupportedFamily(format!("homotopy seeding of {}", spec.family()))),
    }
}

fn homotopy_solution<T: Real>(
    spec: &ModelSpec<T>,
    pairs: &[OracleEigenpair<T>],
    tol: &Tolerances,
) -> Result<BetheSolution<T>> {
    let start = homotopy_spec(spec, T::zero())?;
    let top =
        oracle_spectrum(&build_matrix(&start)?)?.into_iter().max_by_key(|p| p.degree()).expect("non-empty spectrum");
    let mut roots = extract_roots(&top, &start)?;
    let mut t = T::zero();
    let mut step = T::one() / T::from_usize_lossy(HOMOTOPY_STEPS);
    let mut refinements = 0;
    let mut flags = SolutionFlags::default();
    let mut last = None;
    while t < T::one() {
        let next_t = (t + step).min(T::one());
        let s = homotopy_spec(spec, next_t)?;
        let p = newton_polish(&s, &roots, tol);
        let ok = p.flags.polished || p.residuals.iter().all(|&r| r <= T::lit(tol.residual));
        if ok {
            t = next_t;
            roots = p.roots.clone();
            last = Some(p);
        } else {
            refinements += 1;
            if refinements > HOMOTOPY_MAX_REFINE {
                flags.no_convergence = true;
                break;
            }
            step = step * T::lit(0.5);
        }
    }
    let (residuals, pflags) = match last {
        Some(p) if t >= T::one() => (p.residuals, p.flags),
        _ => (bae_residual_with(spec, &roots, tol).unwrap_or_default(), flags),
    };
    flags.polished = pflags.polished && !flags.no_convergence;
    flags.degenerate = pflags.degenerate;
    flags.jacobian_singular = pflags.jacobian_singular;
    let e_formula = eigenvalue_from_roots(spec, &roots)?;
    let e_oracle = pairs
        .iter()
        .map(|p| p.eigenvalue)
        .min_by(|a, b| (a - e_formula).norm().partial_cmp(&(b - e_formula).norm()).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap_or(e_formula);
    Ok(BetheSolution { spec: *spec, roots, e_formula, e_oracle, residuals, flags })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Sector;

    fn mp(a1: f64, a2: f64, beta: f64, m: usize) -> ModelSpec<f64> {
        ModelSpec::new(ModelParams::MpCrossed { a1: cre(a1), a2: cre(a2), beta }, m, Sector::Full).unwrap()
    }

    #[test]
    fn two_level_residuals() {
        let spec = mp(1.0, 1.0, std::f64::consts::FRAC_PI_2, 1);
        let good = RootSet::from_x(&spec, &[cre(1.0)]);
        assert!(bae_residual(&spec, &good).unwrap()[0] < 1e-15);
        let bad = RootSet::from_x(&spec, &[cre(0.5)]);
        assert!((bae_residual(&spec, &bad).unwrap()[0] - 1.2).abs() < 1e-12);
    }

    #[test]
    fn two_level_eigenvalue() {
        let spec = mp(1.0, 1.0, std::f64::consts::FRAC_PI_2, 1);
        let e = eigenvalue_from_roots(&spec, &RootSet::from_x(&spec, &[cre(1.0)])).unwrap();
        assert!((e - cre(2.0)).norm() < 1e-14);
    }

    #[test]
    fn crossed_model_without_phase() {
        let spec = mp(1.0, 1.0, 0.0, 2);
        let roots = RootSet::from_x(&spec, &[cplx(0.3, 1.0), cre(-2.0)]);
        let e = eigenvalue_from_roots(&spec, &roots).unwrap();
        assert!((e - cre(10.0)).norm() < 1e-13);
    }

    #[test]
    fn q_model_degree_zero() {
        let spec =
            ModelSpec::new(ModelParams::TrigQ { a: 0.3, b: 0.2, c: -0.4, d: 0.1, e: 0.5, q: 0.6 }, 0, Sector::Full)
                .unwrap();
        assert!(eigenvalue_from_roots(&spec, &RootSet::empty()).unwrap().norm() < 1e-15);
    }

    #[test]
    fn coincident_roots_are_rejected() {
        let spec = mp(1.0, 1.2, 0.4, 2);
        let roots = RootSet::from_x(&spec, &[cre(0.5), cre(0.5)]);
        assert!(matches!(bae_residual(&spec, &roots), Err(Error::DegenerateRoots { .. })));
        let p = newton_polish(&spec, &roots, &Tolerances::default());
        assert!(p.flags.jacobian_singular);
        assert_eq!(p.roots, roots);
    }

    #[test]
    fn solve_two_level() {
        let sols = solve(&mp(1.0, 1.0, std::f64::consts::FRAC_PI_2, 1)).unwrap();
        assert_eq!(sols.len(), 2);
        assert!((sols[0].roots.roots_x[0] - cre(-1.0)).norm() < 1e-12);
        assert!((sols[0].e_formula - cre(-2.0)).norm() < 1e-12);
        assert!((sols[1].roots.roots_x[0] - cre(1.0)).norm() < 1e-12);
        assert!((sols[1].e_formula - cre(2.0)).norm() < 1e-12);
        assert!(sols.iter().all(|s| s.residual_max() <= 1e-12));
    }

    #[test]
    fn solve_degree_zero() {
        let sols = solve(&mp(0.8, 1.3, 0.6, 0)).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].roots.is_empty());
        assert!(sols[0].e_formula.norm() < 1e-15);
    }

    #[test]
    fn solve_sextic_even_pair() {
        let spec = ModelSpec::new(ModelParams::SexticI { a: 1.0, b: 1.0, c: 1.0 }, 2, Sector::Even).unwrap();
        let sols = solve(&spec).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            assert!(s.discrepancy() <= 1e-8 * f64::max(s.e_oracle.norm(), 1.0), "{s:?}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<f64>(5, 2), 10.0);
        assert_eq!(binomial::<f64>(3, 4), 0.0);
        assert_eq!(binomial::<f64>(4, 0), 1.0);
    }
}
