//! Exactly solvable limits and restrictions: closed-form spectra and the
//! reduced Bethe equations of the Askey-scheme polynomials.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bethe::{bae_residual_with, solve, Tolerances};
use crate::error::{Error, Result};
use crate::models::{ModelFamily, ModelParams, ModelSpec, Restriction};
use crate::operator::build_matrix;
use crate::scalar::{cre, Real};
use crate::spectral::{extract_roots, oracle_spectrum};

/// Relative agreement demanded of exact limits.
pub const EXACT_TOL: f64 = 1e-9;
/// First-order budget: asymptotic cases pass when `gap · large ≤ ASYMPTOTIC_BUDGET · max(1, |E|)`.
pub const ASYMPTOTIC_BUDGET: f64 = 1e2;
/// Smallest `large` accepted for asymptotic cases.
pub const MIN_LARGE: f64 = 1e3;
/// Parameter offset used to show the reduced equations discriminate.
pub const PERTURBATION: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LimitTag {
    /// Crossed model at `β = 0`: continuous Hahn.
    ChFromMp,
    /// Crossed model, `a₂ → ∞`: Meixner–Pollaczek.
    MpFromMp,
    /// First sextic model, `a → ∞`: continuous Hahn in `x`.
    ChFromSextic,
    /// First sextic model, `a = b → ∞`.
    MpFromSextic,
    /// First centrifugal model, `f → ∞`: Wilson.
    Wilson,
    /// First centrifugal model, `e = f → ∞`: continuous dual Hahn.
    Cdh,
    /// q-model at `e = 0`: Askey–Wilson.
    Aw,
    /// q-model with `d = e = 0` (and possibly more parameters zero).
    QUniversal,
}

impl LimitTag {
    pub const ALL: [LimitTag; 8] = [
        LimitTag::ChFromMp,
        LimitTag::MpFromMp,
        LimitTag::ChFromSextic,
        LimitTag::MpFromSextic,
        LimitTag::Wilson,
        LimitTag::Cdh,
        LimitTag::Aw,
        LimitTag::QUniversal,
    ];

    pub fn base_family(self) -> ModelFamily {
        match self {
            LimitTag::ChFromMp | LimitTag::MpFromMp => ModelFamily::MpCrossed,
            LimitTag::ChFromSextic | LimitTag::MpFromSextic => ModelFamily::SexticI,
            LimitTag::Wilson | LimitTag::Cdh => ModelFamily::CentrifugalI,
            LimitTag::Aw | LimitTag::QUniversal => ModelFamily::TrigQ,
        }
    }

    pub fn is_asymptotic(self) -> bool {
        matches!(
            self,
            LimitTag::MpFromMp | LimitTag::ChFromSextic | LimitTag::MpFromSextic | LimitTag::Wilson | LimitTag::Cdh
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            LimitTag::ChFromMp => "ch-from-mp",
            LimitTag::MpFromMp => "mp-from-mp",
            LimitTag::ChFromSextic => "ch-from-sextic",
            LimitTag::MpFromSextic => "mp-from-sextic",
            LimitTag::Wilson => "wilson",
            LimitTag::Cdh => "cdh",
            LimitTag::Aw => "aw",
            LimitTag::QUniversal => "q-universal",
        }
    }
}

impl fmt::Display for LimitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LimitTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        LimitTag::ALL
            .into_iter()
            .find(|t| t.name() == norm)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown limit case `{s}`")))
    }
}

/// A limit or restriction of a base model. `scale` divides the eigenvalues
/// before they are compared with the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitCase<T: Real> {
    pub tag: LimitTag,
    pub base_spec: ModelSpec<T>,
    pub scale: Complex<T>,
}

fn params_of<T: Real>(spec: &ModelSpec<T>) -> Vec<T> {
    spec.params.named_values().iter().map(|(_, v)| v.re).collect()
}

impl<T: Real> LimitCase<T> {
    pub fn new(tag: LimitTag, base_spec: ModelSpec<T>) -> Result<Self> {
        if base_spec.family() != tag.base_family() {
            return Err(Error::InvalidParameter(format!(
                "limit {tag} needs a {} model, got {}",
                tag.base_family(),
                base_spec.family()
            )));
        }
        if base_spec.restriction.is_some() {
            return Err(Error::InvalidParameter("limit cases start from an unrestricted model".into()));
        }
        let zero_needed: &[(&str, usize)] = match tag {
            LimitTag::Aw => &[("e", 4)],
            LimitTag::QUniversal => &[("d", 3), ("e", 4)],
            _ => &[],
        };
        let p = params_of(&base_spec);
        for &(name, idx) in zero_needed {
            if !p[idx].is_zero() {
                return Err(Error::InvalidParameter(format!("limit {tag} needs {name} = 0")));
            }
        }
        if tag == LimitTag::ChFromMp {
            let ModelParams::MpCrossed { beta, .. } = base_spec.params else { unreachable!() };
            if !beta.is_zero() {
                return Err(Error::InvalidParameter("limit ch-from-mp needs beta = 0".into()));
            }
        }
        let scale = match base_spec.params {
            ModelParams::MpCrossed { a2, .. } if tag == LimitTag::MpFromMp => a2,
            ModelParams::SexticI { a, .. } if tag == LimitTag::ChFromSextic => cre(a),
            ModelParams::SexticI { a, b, .. } if tag == LimitTag::MpFromSextic => cre(a * b),
            ModelParams::CentrifugalI { f, .. } if tag == LimitTag::Wilson => cre(f),
            ModelParams::CentrifugalI { e, f, .. } if tag == LimitTag::Cdh => cre(e * f),
            _ => cre(T::one()),
        };
        Ok(Self { tag, base_spec, scale })
    }

    /// The same case with its divergent parameters set to `large`.
    pub fn at_large(&self, large: T) -> Result<Self> {
        let spec = self.base_spec;
        let params = match (self.tag, spec.params) {
            (LimitTag::MpFromMp, ModelParams::MpCrossed { a1, beta, .. }) => {
                ModelParams::MpCrossed { a1, a2: cre(large), beta }
            }
            (LimitTag::ChFromSextic, ModelParams::SexticI { b, c, .. }) => ModelParams::SexticI { a: large, b, c },
            (LimitTag::MpFromSextic, ModelParams::SexticI { c, .. }) => ModelParams::SexticI { a: large, b: large, c },
            (LimitTag::Wilson, ModelParams::CentrifugalI { b, c, d, e, .. }) => {
                ModelParams::CentrifugalI { b, c, d, e, f: large }
            }
            (LimitTag::Cdh, ModelParams::CentrifugalI { b, c, d, .. }) => {
                ModelParams::CentrifugalI { b, c, d, e: large, f: large }
            }
            _ => return Ok(*self),
        };
        Self::new(self.tag, spec.with_params(params))
    }

    /// Degrees present in the limit spectrum: `0..=M`, or the degrees of
    /// the sector's parity for the sextic model.
    pub fn degrees(&self) -> Vec<usize> {
        let m = self.base_spec.m;
        if self.base_spec.family().is_sextic() {
            (0..=m).filter(|k| k % 2 == m % 2).collect()
        } else {
            (0..=m).collect()
        }
    }

    /// The restricted model whose polynomials satisfy the reduced equations.
    pub fn restricted_spec(&self) -> Result<ModelSpec<T>> {
        let spec = self.base_spec;
        match self.tag {
            LimitTag::ChFromMp | LimitTag::Aw | LimitTag::QUniversal => Ok(spec),
            LimitTag::MpFromMp => spec.with_restriction(Restriction::MeixnerPollaczek),
            LimitTag::Wilson => spec.with_restriction(Restriction::Wilson),
            LimitTag::Cdh => spec.with_restriction(Restriction::ContinuousDualHahn),
            LimitTag::ChFromSextic | LimitTag::MpFromSextic => {
                Err(Error::UnsupportedFamily(format!("reduced equations for limit {}", self.tag)))
            }
        }
    }
}

/// Closed-form eigenvalue of the degree-`m` limit polynomial.
pub fn closed_form_e<T: Real>(case: &LimitCase<T>, m: usize) -> Complex<T> {
    let mm = T::from_usize_lossy(m);
    let one = T::one();
    let two = T::lit(2.0);
    let p = params_of(&case.base_spec);
    match (case.tag, case.base_spec.params) {
        (LimitTag::ChFromMp, ModelParams::MpCrossed { a1, a2, .. }) => {
            let s = a1 + a2 + a1.conj() + a2.conj();
            (s + mm - one) * mm
        }
        (LimitTag::MpFromMp, ModelParams::MpCrossed { beta, .. }) => cre(two * mm * beta.cos()),
        (LimitTag::ChFromSextic, _) => cre(mm * (mm + two * (p[1] + p[2]) - one)),
        (LimitTag::MpFromSextic, _) => cre(two * mm),
        (LimitTag::Wilson, _) => cre(mm * (mm + p[0] + p[1] + p[2] + p[3] - one)),
        (LimitTag::Cdh, _) => cre(mm),
        (LimitTag::Aw, ModelParams::TrigQ { a, b, c, d, q, .. }) => {
            cre((q.powi(-(m as i32)) - one) * (one - a * b * c * d * q.powi(m as i32 + 1)))
        }
        (LimitTag::QUniversal, ModelParams::TrigQ { q, .. }) => cre(q.powi(-(m as i32)) - one),
        _ => unreachable!("limit case with an incompatible base model"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitEntry {
    pub m: usize,
    pub computed: [f64; 2],
    pub expected: [f64; 2],
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitReport {
    pub tag: LimitTag,
    /// `None` for exact cases.
    pub large: Option<f64>,
    pub entries: Vec<LimitEntry>,
    pub worst_gap: f64,
    /// Allowed gap: relative for exact cases, `budget / large` otherwise.
    pub tolerance: f64,
    /// `worst_gap · large` for asymptotic cases.
    pub first_order_constant: Option<f64>,
    pub pass: bool,
}

impl LimitReport {
    pub fn worst(&self) -> Option<&LimitEntry> {
        self.entries.iter().max_by(|a, b| a.gap.total_cmp(&b.gap))
    }

    pub fn into_result(self) -> Result<Self> {
        if self.pass {
            return Ok(self);
        }
        let w = self.worst().cloned().expect("failing report has entries");
        Err(Error::LimitViolation { m: w.m, computed: w.computed[0], expected: w.expected[0], gap: w.gap })
    }
}

/// Compares the spectrum of the (rescaled) case with the closed forms.
/// Violations are reported in the returned report rather than as errors.
pub fn limit_report<T: Real>(case: &LimitCase<T>, large: T) -> Result<LimitReport> {
    let asymptotic = case.tag.is_asymptotic();
    if asymptotic && large < T::lit(MIN_LARGE) {
        return Err(Error::InvalidParameter(format!("large must be at least {MIN_LARGE}")));
    }
    let case = if asymptotic { case.at_large(large)? } else { *case };
    let spec = case.base_spec;
    let sols = solve(&spec)?;
    let degrees = case.degrees();

    // exact cases: degree of each eigenpolynomial identifies the closed form;
    // asymptotic cases: both lists sorted by real part
    let mut computed: Vec<(usize, Complex<T>)> = Vec::with_capacity(sols.len());
    if asymptotic {
        let mut es: Vec<Complex<T>> = sols.iter().map(|s| s.e_oracle / case.scale).collect();
        es.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal));
        let mut ds: Vec<(usize, Complex<T>)> = degrees.iter().map(|&m| (m, closed_form_e(&case, m))).collect();
        ds.sort_by(|a, b| a.1.re.partial_cmp(&b.1.re).unwrap_or(std::cmp::Ordering::Equal));
        computed.extend(ds.iter().map(|d| d.0).zip(es));
    } else {
        let pairs = oracle_spectrum(&build_matrix(&spec)?)?;
        for p in pairs {
            let m = if spec.family().is_sextic() { 2 * p.degree() + spec.m % 2 } else { p.degree() };
            computed.push((m, p.eigenvalue / case.scale));
        }
    }
    computed.sort_by_key(|c| c.0);

    let mut entries = Vec::with_capacity(computed.len());
    let mut pass = computed.len() == degrees.len();
    let mut worst_rel = 0.0_f64;
    let mut max_e = 1.0_f64;
    for &(m, e) in &computed {
        let expected = closed_form_e(&case, m);
        let gap = (e - expected).norm().as_f64();
        max_e = max_e.max(expected.norm().as_f64());
        worst_rel = worst_rel.max(gap / expected.norm().as_f64().max(1.0));
        entries.push(LimitEntry {
            m,
            computed: [e.re.as_f64(), e.im.as_f64()],
            expected: [expected.re.as_f64(), expected.im.as_f64()],
            gap,
        });
    }
    let worst_gap = entries.iter().map(|e| e.gap).fold(0.0, f64::max);
    let (tolerance, constant) = if asymptotic {
        let l = large.as_f64();
        let tol = ASYMPTOTIC_BUDGET * max_e / l;
        pass &= worst_gap <= tol;
        (tol, Some(worst_gap * l))
    } else {
        pass &= worst_rel <= EXACT_TOL;
        (EXACT_TOL, None)
    };
    Ok(LimitReport {
        tag: case.tag,
        large: asymptotic.then(|| large.as_f64()),
        entries,
        worst_gap,
        tolerance,
        first_order_constant: constant,
        pass,
    })
}

/// [`limit_report`] turned into an error on violation.
pub fn verify_limit<T: Real>(case: &LimitCase<T>, large: T) -> Result<LimitReport> {
    limit_report(case, large)?.into_result()
}

#[derive(Debug, Clone, Serialize)]
pub struct ReducedBaeReport {
    pub tag: LimitTag,
    /// Degree of each polynomial checked, with its largest residual.
    pub residuals: Vec<(usize, f64)>,
    pub residual_max: f64,
    /// Same roots, first parameter offset by [`PERTURBATION`].
    pub perturbed_residual_max: f64,
    pub pass: bool,
}

/// Oracle zeros of every restricted polynomial of degree `1..=M` checked
/// against the (automatically reduced) Bethe equations.
pub fn reduced_bae_check<T: Real>(case: &LimitCase<T>) -> Result<ReducedBaeReport> {
    let spec = case.restricted_spec()?;
    let perturbed = perturb(&spec);
    let tol = Tolerances::default();
    let pairs = oracle_spectrum(&build_matrix(&spec)?)?;
    let mut residuals = Vec::new();
    let mut perturbed_max = f64::INFINITY;
    for p in pairs.iter().filter(|p| p.degree() > 0) {
        let roots = extract_roots(p, &spec)?;
        let r = bae_residual_with(&spec, &roots, &tol)?.into_iter().fold(T::zero(), T::max);
        let rp = bae_residual_with(&perturbed, &roots, &tol)?.into_iter().fold(T::zero(), T::max);
        residuals.push((p.degree(), r.as_f64()));
        perturbed_max = perturbed_max.min(rp.as_f64());
    }
    let residual_max = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
    let pass = residual_max <= EXACT_TOL;
    if residuals.is_empty() {
        perturbed_max = 0.0;
    }
    Ok(ReducedBaeReport { tag: case.tag, residuals, residual_max, perturbed_residual_max: perturbed_max, pass })
}

/// Offsets the first parameter by [`PERTURBATION`]. For the crossed model the
/// offset goes to `a₁`, which the restriction keeps.
fn perturb<T: Real>(spec: &ModelSpec<T>) -> ModelSpec<T> {
    let d = T::lit(PERTURBATION);
    let params = match spec.params {
        ModelParams::MpCrossed { a1, a2, beta } => ModelParams::MpCrossed { a1: a1 + d, a2, beta },
        ModelParams::SexticI { a, b, c } => ModelParams::SexticI { a: a + d, b, c },
        ModelParams::SexticII { a, b, c, d: dd } => ModelParams::SexticII { a: a + d, b, c, d: dd },
        ModelParams::CentrifugalI { b, c, d: dd, e, f } => ModelParams::CentrifugalI { b: b + d, c, d: dd, e, f },
        ModelParams::CentrifugalII { a, b, c, d: dd, e, f } => {
            ModelParams::CentrifugalII { a: a + d, b, c, d: dd, e, f }
        }
        ModelParams::TrigQ { a, b, c, d: dd, e, q } => ModelParams::TrigQ { a: a + d, b, c, d: dd, e, q },
    };
    spec.with_params(params)
}
