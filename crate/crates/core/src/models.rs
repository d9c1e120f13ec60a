//! The six model families: potentials, sinusoidal coordinates, compensation
//! terms, parameter ranges and sectors.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::eigen::MAX_DIM;
use crate::numerics::{Polynomial, Var};
use crate::scalar::{cplx, cre, imag_unit, is_finite, Real};

/// Parameters of the centrifugal families may not come closer than this to ½.
pub const HALF_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelFamily {
    #[serde(rename = "mp-crossed", alias = "MP_CROSSED")]
    MpCrossed,
    #[serde(rename = "sextic-i", alias = "SEXTIC_I")]
    SexticI,
    #[serde(rename = "sextic-ii", alias = "SEXTIC_II")]
    SexticII,
    #[serde(rename = "centrifugal-i", alias = "CENTRIFUGAL_I")]
    CentrifugalI,
    #[serde(rename = "centrifugal-ii", alias = "CENTRIFUGAL_II")]
    CentrifugalII,
    #[serde(rename = "trig-q", alias = "TRIG_Q")]
    TrigQ,
}

impl ModelFamily {
    pub const ALL: [ModelFamily; 6] = [
        ModelFamily::MpCrossed,
        ModelFamily::SexticI,
        ModelFamily::SexticII,
        ModelFamily::CentrifugalI,
        ModelFamily::CentrifugalII,
        ModelFamily::TrigQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelFamily::MpCrossed => "mp-crossed",
            ModelFamily::SexticI => "sextic-i",
            ModelFamily::SexticII => "sextic-ii",
            ModelFamily::CentrifugalI => "centrifugal-i",
            ModelFamily::CentrifugalII => "centrifugal-ii",
            ModelFamily::TrigQ => "trig-q",
        }
    }

    pub fn is_sextic(self) -> bool {
        matches!(self, ModelFamily::SexticI | ModelFamily::SexticII)
    }

    pub fn is_centrifugal(self) -> bool {
        matches!(self, ModelFamily::CentrifugalI | ModelFamily::CentrifugalII)
    }

    /// Parameter names in canonical order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ModelFamily::MpCrossed => &["a1", "a2", "beta"],
            ModelFamily::SexticI => &["a", "b", "c"],
            ModelFamily::SexticII => &["a", "b", "c", "d"],
            ModelFamily::CentrifugalI => &["b", "c", "d", "e", "f"],
            ModelFamily::CentrifugalII => &["a", "b", "c", "d", "e", "f"],
            ModelFamily::TrigQ => &["a", "b", "c", "d", "e", "q"],
        }
    }
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModelFamily::ALL
            .into_iter()
            .find(|f| f.name() == s || f.name().replace('-', "_").eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Document(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams<T: Real> {
    MpCrossed { a1: Complex<T>, a2: Complex<T>, beta: T },
    SexticI { a: T, b: T, c: T },
    SexticII { a: T, b: T, c: T, d: T },
    CentrifugalI { b: T, c: T, d: T, e: T, f: T },
    CentrifugalII { a: T, b: T, c: T, d: T, e: T, f: T },
    TrigQ { a: T, b: T, c: T, d: T, e: T, q: T },
}

impl<T: Real> ModelParams<T> {
    pub fn family(&self) -> ModelFamily {
        match self {
            ModelParams::MpCrossed { .. } => ModelFamily::MpCrossed,
            ModelParams::SexticI { .. } => ModelFamily::SexticI,
            ModelParams::SexticII { .. } => ModelFamily::SexticII,
            ModelParams::CentrifugalI { .. } => ModelFamily::CentrifugalI,
            ModelParams::CentrifugalII { .. } => ModelFamily::CentrifugalII,
            ModelParams::TrigQ { .. } => ModelFamily::TrigQ,
        }
    }

    /// `(name, value)` in canonical order.
    pub fn named_values(&self) -> Vec<(&'static str, Complex<T>)> {
        let vals: Vec<Complex<T>> = match *self {
            ModelParams::MpCrossed { a1, a2, beta } => vec![a1, a2, cre(beta)],
            ModelParams::SexticI { a, b, c } => vec![cre(a), cre(b), cre(c)],
            ModelParams::SexticII { a, b, c, d } => [a, b, c, d].map(cre).to_vec(),
            ModelParams::CentrifugalI { b, c, d, e, f } => [b, c, d, e, f].map(cre).to_vec(),
            ModelParams::CentrifugalII { a, b, c, d, e, f } => [a, b, c, d, e, f].map(cre).to_vec(),
            ModelParams::TrigQ { a, b, c, d, e, q } => [a, b, c, d, e, q].map(cre).to_vec(),
        };
        self.family().param_names().iter().copied().zip(vals).collect()
    }

    /// Builds parameters from named values. Every name of the family is
    /// required and no other name is accepted.
    pub fn from_named(family: ModelFamily, values: &BTreeMap<String, Complex<T>>) -> Result<Self> {
        for k in values.keys() {
            if !family.param_names().contains(&k.as_str()) {
                return Err(Error::Document(format!("unknown parameter {k:?} for {family}")));
            }
        }
        let get = |name: &str| -> Result<Complex<T>> {
            values.get(name).copied().ok_or_else(|| Error::Document(format!("missing parameter {name:?} for {family}")))
        };
        let real = |name: &str| -> Result<T> {
            let v = get(name)?;
            if !v.im.is_zero() {
                return Err(Error::InvalidParameter(format!("{name} must be real for {family}")));
            }
            Ok(v.re)
        };
        Ok(match family {
            ModelFamily::MpCrossed => ModelParams::MpCrossed { a1: get("a1")?, a2: get("a2")?, beta: real("beta")? },
            ModelFamily::SexticI => ModelParams::SexticI { a: real("a")?, b: real("b")?, c: real("c")? },
            ModelFamily::SexticII => {
                ModelParams::SexticII { a: real("a")?, b: real("b")?, c: real("c")?, d: real("d")? }
            }
            ModelFamily::CentrifugalI => {
                ModelParams::CentrifugalI { b: real("b")?, c: real("c")?, d: real("d")?, e: real("e")?, f: real("f")? }
            }
            ModelFamily::CentrifugalII => ModelParams::CentrifugalII {
                a: real("a")?,
                b: real("b")?,
                c: real("c")?,
                d: real("d")?,
                e: real("e")?,
                f: real("f")?,
            },
            ModelFamily::TrigQ => ModelParams::TrigQ {
                a: real("a")?,
                b: real("b")?,
                c: real("c")?,
                d: real("d")?,
                e: real("e")?,
                q: real("q")?,
            },
        })
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in self.named_values() {
            if !is_finite(v) {
                return Err(Error::InvalidParameter(format!("{name} is not finite")));
            }
        }
        let positive = |name: &str, v: T| -> Result<()> {
            if v > T::zero() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} = {v} must be positive")))
            }
        };
        match *self {
            ModelParams::MpCrossed { a1, a2, .. } => {
                positive("Re a1", a1.re)?;
                positive("Re a2", a2.re)?;
            }
            ModelParams::SexticI { .. } | ModelParams::SexticII { .. } => {
                for (name, v) in self.named_values() {
                    positive(name, v.re)?;
                }
            }
            ModelParams::CentrifugalI { .. } | ModelParams::CentrifugalII { .. } => {
                for (name, v) in self.named_values() {
                    positive(name, v.re)?;
                    if (v.re - T::lit(0.5)).abs() <= T::lit(HALF_EXCLUSION) {
                        return Err(Error::InvalidParameter(format!("{name} = {} is too close to 1/2", v.re)));
                    }
                }
            }
            ModelParams::TrigQ { q, .. } => {
                for (name, v) in self.named_values().into_iter().take(5) {
                    if v.re.abs() >= T::one() || v.re.is_nan() {
                        return Err(Error::InvalidParameter(format!("|{name}| = {} must be below 1", v.re.abs())));
                    }
                }
                if !(q > T::zero() && q < T::one()) {
                    return Err(Error::InvalidParameter(format!("q = {q} must lie in (0, 1)")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Full,
    Even,
    Odd,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Full => "full",
            Sector::Even => "even",
            Sector::Odd => "odd",
        })
    }
}

impl Sector {
    /// The sextic models need the sector matching the parity of `M`; every
    /// other family has only the full sector.
    pub fn check(self, fam: ModelFamily, m: usize) -> Result<()> {
        match (fam.is_sextic(), self) {
            (true, Sector::Even) if m.is_multiple_of(2) => Ok(()),
            (true, Sector::Odd) if m % 2 == 1 => Ok(()),
            (true, Sector::Full) => Err(Error::SectorMismatch(format!("{fam} needs an even or odd sector"))),
            (true, s) => Err(Error::SectorMismatch(format!("{s} sector needs M of matching parity, got M = {m}"))),
            (false, Sector::Full) => Ok(()),
            (false, s) => Err(Error::SectorMismatch(format!("{fam} has no {s} sector"))),
        }
    }
}

impl std::str::FromStr for Sector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Sector::Full),
            "even" => Ok(Sector::Even),
            "odd" => Ok(Sector::Odd),
            _ => Err(Error::InvalidParameter(format!("unknown sector `{s}`"))),
        }
    }
}

/// Exactly solvable variants obtained by deleting numerator factors of the
/// potential and dropping the compensation term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Restriction {
    /// Crossed model with the `a2` factor removed: `V = (a1 + ix) e^{-iβ}`.
    MeixnerPollaczek,
    /// Centrifugal type I with the `f` factor removed.
    Wilson,
    /// Centrifugal type I with the `e` and `f` factors removed.
    ContinuousDualHahn,
}

impl Restriction {
    pub fn base_family(self) -> ModelFamily {
        match self {
            Restriction::MeixnerPollaczek => ModelFamily::MpCrossed,
            Restriction::Wilson | Restriction::ContinuousDualHahn => ModelFamily::CentrifugalI,
        }
    }
}

/// A complete problem statement: family parameters, the degree `M` of the
/// invariant subspace and the sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec<T: Real> {
    pub params: ModelParams<T>,
    pub m: usize,
    pub sector: Sector,
    pub restriction: Option<Restriction>,
}

impl<T: Real> ModelSpec<T> {
    pub fn new(params: ModelParams<T>, m: usize, sector: Sector) -> Result<Self> {
        let spec = Self::new_unchecked(params, m, sector);
        spec.check_sector()?;
        params.validate()?;
        if spec.dimension() > MAX_DIM {
            return Err(Error::InvalidParameter(format!("M = {m} exceeds the supported subspace size")));
        }
        Ok(spec)
    }

    /// Skips every range check. Used for formal limits that sit outside the
    /// admissible parameter region.
    #[doc(hidden)]
    pub fn new_unchecked(params: ModelParams<T>, m: usize, sector: Sector) -> Self {
        Self { params, m, sector, restriction: None }
    }

    /// Crossed model with `a2 = a1*`.
    pub fn mp_conjugate_pair(a1: Complex<T>, beta: T, m: usize) -> Result<Self> {
        Self::new(ModelParams::MpCrossed { a1, a2: a1.conj(), beta }, m, Sector::Full)
    }

    pub fn with_restriction(mut self, r: Restriction) -> Result<Self> {
        if r.base_family() != self.family() {
            return Err(Error::UnsupportedFamily(format!("{r:?} restriction of {}", self.family())));
        }
        self.restriction = Some(r);
        Ok(self)
    }

    pub fn with_params(mut self, params: ModelParams<T>) -> Self {
        self.params = params;
        self
    }

    pub fn with_degree(mut self, m: usize) -> Self {
        self.m = m;
        self
    }

    pub fn family(&self) -> ModelFamily {
        self.params.family()
    }

    fn check_sector(&self) -> Result<()> {
        self.sector.check(self.family(), self.m)
    }

    /// Dimension of the invariant subspace.
    pub fn sector_dimension(&self) -> Result<usize> {
        self.check_sector()?;
        Ok(self.dimension())
    }

    pub(crate) fn dimension(&self) -> usize {
        match self.sector {
            Sector::Full => self.m + 1,
            Sector::Even => self.m / 2 + 1,
            Sector::Odd => self.m.div_ceil(2),
        }
    }

    /// Number of Bethe roots of a top-degree eigenfunction.
    pub fn root_count(&self) -> usize {
        self.dimension() - 1
    }

    /// Eigenfunctions carry an extra factor `x` (odd sextic sector).
    pub fn has_odd_prefactor(&self) -> bool {
        self.sector == Sector::Odd
    }

    /// The compensation term vanishes identically, so the operator preserves
    /// the degree of every polynomial.
    pub fn is_exactly_solvable(&self) -> bool {
        self.alpha_coefficient().is_zero()
    }

    /// `α_M(x) = coefficient · η(x)`.
    pub fn alpha_coefficient(&self) -> T {
        if self.restriction.is_some() {
            return T::zero();
        }
        let m = T::from_usize_lossy(self.m);
        let two = T::lit(2.0);
        match self.params {
            ModelParams::MpCrossed { beta, .. } => -two * m * beta.sin(),
            ModelParams::SexticI { .. } => two * m,
            ModelParams::SexticII { a, b, c, d } => m * (m - T::one() + two * (a + b + c + d)),
            ModelParams::CentrifugalI { .. } => m,
            ModelParams::CentrifugalII { a, b, c, d, e, f } => m * (m - T::one() + a + b + c + d + e + f),
            ModelParams::TrigQ { a, b, c, d, e, q } => {
                -two * a * b * c * d * e / q * (T::one() - q.powi(self.m as i32))
            }
        }
    }

    pub fn compensation_alpha(&self, x: Complex<T>) -> Complex<T> {
        eta(self, x) * self.alpha_coefficient()
    }

    pub(crate) fn potential(&self) -> Potential<T> {
        Potential::of(self)
    }
}

/// Sinusoidal coordinate: `x`, `x²` or `cos x`.
pub fn eta<T: Real>(spec: &ModelSpec<T>, x: Complex<T>) -> Complex<T> {
    match spec.family() {
        ModelFamily::MpCrossed => x,
        ModelFamily::TrigQ => x.cos(),
        _ => x * x,
    }
}

/// `η` as a function of `z = e^{ix}` for the q-model.
pub(crate) fn eta_of_z<T: Real>(z: Complex<T>) -> Complex<T> {
    (z + z.inv()) * T::lit(0.5)
}

pub fn potential_v<T: Real>(spec: &ModelSpec<T>, x: Complex<T>) -> Result<Complex<T>> {
    spec.potential().v(x)
}

/// Analytic conjugate: parameters conjugated, `x` kept as is.
pub fn potential_vstar<T: Real>(spec: &ModelSpec<T>, x: Complex<T>) -> Result<Complex<T>> {
    spec.potential().vstar(x)
}

pub fn compensation_alpha<T: Real>(spec: &ModelSpec<T>, x: Complex<T>) -> Complex<T> {
    spec.compensation_alpha(x)
}

pub fn sector_dimension<T: Real>(spec: &ModelSpec<T>) -> Result<usize> {
    spec.sector_dimension()
}

/// `Δ_j` with `∏ (p + ix) = Σ_j Δ_j (ix)^j` over the numerator parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricCoefficients<T: Real> {
    pub deltas: Vec<Complex<T>>,
}

impl<T: Real> SymmetricCoefficients<T> {
    pub fn delta(&self, j: usize) -> Complex<T> {
        self.deltas.get(j).copied().unwrap_or_else(Complex::zero)
    }
}

pub fn symmetric_coefficients<T: Real>(spec: &ModelSpec<T>) -> Result<SymmetricCoefficients<T>> {
    match spec.family() {
        ModelFamily::SexticII | ModelFamily::CentrifugalII => {}
        f => return Err(Error::UnsupportedFamily(f.to_string())),
    }
    let mut deltas = vec![Complex::<T>::one()];
    for (_, p) in spec.params.named_values() {
        // multiply by (p + y)
        let mut next = vec![Complex::zero(); deltas.len() + 1];
        for (j, &c) in deltas.iter().enumerate() {
            next[j] = next[j] + c * p;
            next[j + 1] = next[j + 1] + c;
        }
        deltas = next;
    }
    Ok(SymmetricCoefficients { deltas })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum PotentialKind<T: Real> {
    /// Polynomial in `x`.
    Plain,
    /// Polynomial numerator over `2ix(2ix + 1)`.
    Centrifugal,
    /// `∏ (1 − p z)` over `(1 − z²)(1 − q z²)`, `z = e^{ix}`.
    QTrig { q: T },
}

/// `V(x) = phase · ∏ (p + ix) / den(x)` or the q-analogue, with the
/// restriction already applied.
#[derive(Debug, Clone)]
pub(crate) struct Potential<T: Real> {
    pub kind: PotentialKind<T>,
    pub factors: Vec<Complex<T>>,
    pub phase: Complex<T>,
}

impl<T: Real> Potential<T> {
    fn of(spec: &ModelSpec<T>) -> Self {
        let mut factors: Vec<Complex<T>> = spec.params.named_values().into_iter().map(|(_, v)| v).collect();
        let mut phase = Complex::one();
        let kind = match spec.params {
            ModelParams::MpCrossed { beta, .. } => {
                factors.truncate(2);
                phase = Complex::from_polar(T::one(), -beta);
                PotentialKind::Plain
            }
            ModelParams::SexticI { .. } | ModelParams::SexticII { .. } => PotentialKind::Plain,
            ModelParams::CentrifugalI { .. } | ModelParams::CentrifugalII { .. } => PotentialKind::Centrifugal,
            ModelParams::TrigQ { q, .. } => {
                factors.truncate(5);
                PotentialKind::QTrig { q }
            }
        };
        match spec.restriction {
            Some(Restriction::MeixnerPollaczek) => factors.truncate(1),
            Some(Restriction::Wilson) => factors.truncate(4),
            Some(Restriction::ContinuousDualHahn) => factors.truncate(3),
            None => {}
        }
        Self { kind, factors, phase }
    }

    fn pole(x: Complex<T>) -> Error {
        Error::PoleOfPotential { re: x.re.as_f64(), im: x.im.as_f64() }
    }

    pub fn v(&self, x: Complex<T>) -> Result<Complex<T>> {
        match self.kind {
            PotentialKind::QTrig { .. } => self.v_z((imag_unit::<T>() * x).exp()).map_err(|_| Self::pole(x)),
            _ => {
                let ix = imag_unit::<T>() * x;
                let num = self.factors.iter().fold(self.phase, |acc, &p| acc * (p + ix));
                self.divide_centrifugal(num, ix, x)
            }
        }
    }

    pub fn vstar(&self, x: Complex<T>) -> Result<Complex<T>> {
        match self.kind {
            PotentialKind::QTrig { .. } => self.vstar_z((imag_unit::<T>() * x).exp()).map_err(|_| Self::pole(x)),
            _ => {
                let mix = -imag_unit::<T>() * x;
                let num = self.factors.iter().fold(self.phase.conj(), |acc, &p| acc * (p.conj() + mix));
                self.divide_centrifugal(num, mix, x)
            }
        }
    }

    /// Divides by `y (y + 1)` with `y = ±2ix` for the centrifugal kind.
    fn divide_centrifugal(&self, num: Complex<T>, half_y: Complex<T>, x: Complex<T>) -> Result<Complex<T>> {
        if self.kind != PotentialKind::Centrifugal {
            return Ok(num);
        }
        let y = half_y * T::lit(2.0);
        let den = y * (y + T::one());
        if den.is_zero() {
            return Err(Self::pole(x));
        }
        Ok(num / den)
    }

    /// q-model potential as a function of `z`.
    pub fn v_z(&self, z: Complex<T>) -> Result<Complex<T>> {
        let PotentialKind::QTrig { q } = self.kind else { unreachable!("v_z on a non-q potential") };
        let num = self.factors.iter().fold(Complex::<T>::one(), |acc, &p| acc * (Complex::<T>::one() - p * z));
        let z2 = z * z;
        let den = (Complex::<T>::one() - z2) * (Complex::<T>::one() - z2 * q);
        if den.is_zero() {
            return Err(Error::PoleOfPotential { re: z.re.as_f64(), im: z.im.as_f64() });
        }
        Ok(num / den)
    }

    /// Analytic conjugate of [`Self::v_z`]: `z → 1/z`, conjugated parameters.
    pub fn vstar_z(&self, z: Complex<T>) -> Result<Complex<T>> {
        let PotentialKind::QTrig { q } = self.kind else { unreachable!("vstar_z on a non-q potential") };
        let w = z.inv();
        let num = self.factors.iter().fold(Complex::<T>::one(), |acc, &p| acc * (Complex::<T>::one() - p.conj() * w));
        let w2 = w * w;
        let den = (Complex::<T>::one() - w2) * (Complex::<T>::one() - w2 * q);
        if den.is_zero() || !is_finite(w) {
            return Err(Error::PoleOfPotential { re: z.re.as_f64(), im: z.im.as_f64() });
        }
        Ok(num / den)
    }

    /// `phase · ∏ (p + ix)` as a polynomial in `x`.
    pub fn numerator_x(&self) -> Polynomial<T> {
        let mut p = Polynomial::constant(self.phase, Var::X);
        for &a in &self.factors {
            p = &p * &Polynomial::new(vec![a, imag_unit()], Var::X);
        }
        p
    }

    /// `phase* · ∏ (p* − ix)`.
    pub fn numerator_star_x(&self) -> Polynomial<T> {
        let mut p = Polynomial::constant(self.phase.conj(), Var::X);
        for &a in &self.factors {
            p = &p * &Polynomial::new(vec![a.conj(), -imag_unit::<T>()], Var::X);
        }
        p
    }

    /// `∏ (1 − p z)` as a polynomial in `z`.
    pub fn numerator_z(&self) -> Polynomial<T> {
        let mut p = Polynomial::one(Var::Z);
        for &a in &self.factors {
            p = &p * &Polynomial::new(vec![Complex::one(), -a], Var::Z);
        }
        p
    }
}

/// `2ix (2ix + 1)` and its analytic conjugate `(−2ix)(−2ix + 1)`.
pub(crate) fn centrifugal_denominators<T: Real>() -> (Polynomial<T>, Polynomial<T>) {
    let d = Polynomial::new(vec![Complex::zero(), cplx(T::zero(), T::lit(2.0)), cre(T::lit(-4.0))], Var::X);
    let ds = Polynomial::new(vec![Complex::zero(), cplx(T::zero(), T::lit(-2.0)), cre(T::lit(-4.0))], Var::X);
    (d, ds)
}

/// A complex number on the wire: a bare number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Real(f64),
    Complex([f64; 2]),
}

impl ParamValue {
    fn to_complex<T: Real>(self) -> Complex<T> {
        match self {
            ParamValue::Real(v) => cre(T::lit(v)),
            ParamValue::Complex([re, im]) => cplx(T::lit(re), T::lit(im)),
        }
    }
}

/// JSON form of a [`ModelSpec`]. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub family: ModelFamily,
    pub params: BTreeMap<String, ParamValue>,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(default = "default_sector")]
    pub sector: Sector,
}

fn default_sector() -> Sector {
    Sector::Full
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_spec<T: Real>(&self) -> Result<ModelSpec<T>> {
        let values = self.params.iter().map(|(k, v)| (k.clone(), v.to_complex())).collect();
        let params = ModelParams::from_named(self.family, &values)?;
        ModelSpec::new(params, self.m, self.sector)
    }

    pub fn from_spec<T: Real>(spec: &ModelSpec<T>) -> Self {
        let params = spec
            .params
            .named_values()
            .into_iter()
            .map(|(k, v)| {
                let val = if matches!(spec.params, ModelParams::MpCrossed { .. }) && k != "beta" {
                    ParamValue::Complex([v.re.as_f64(), v.im.as_f64()])
                } else {
                    ParamValue::Real(v.re.as_f64())
                };
                (k.to_string(), val)
            })
            .collect();
        Self { family: spec.family(), params, m: spec.m, sector: spec.sector }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sextic_i(a: f64, b: f64, c: f64, m: usize, sector: Sector) -> ModelSpec<f64> {
        ModelSpec::new(ModelParams::SexticI { a, b, c }, m, sector).unwrap()
    }

    fn mp(a1: f64, a2: f64, beta: f64, m: usize) -> ModelSpec<f64> {
        ModelSpec::new(ModelParams::MpCrossed { a1: cre(a1), a2: cre(a2), beta }, m, Sector::Full).unwrap()
    }

    fn trig_zero(q: f64, m: usize) -> ModelSpec<f64> {
        ModelSpec::new(ModelParams::TrigQ { a: 0.0, b: 0.0, c: 0.0, d: 0.0, e: 0.0, q }, m, Sector::Full).unwrap()
    }

    #[test]
    fn potential_values_at_origin() {
        assert!((potential_v(&mp(1.0, 1.0, 0.0, 1), cre(0.0)).unwrap() - cre(1.0)).norm() < 1e-15);
        assert!((potential_v(&sextic_i(1.0, 2.0, 3.0, 2, Sector::Even), cre(0.0)).unwrap() - cre(6.0)).norm() < 1e-15);
    }

    #[test]
    fn undeformed_q_potential() {
        let spec = trig_zero(0.5, 1);
        let x = cplx(0.7, 0.1);
        let z = (imag_unit::<f64>() * x).exp();
        let want = ((cre(1.0) - z * z) * (cre(1.0) - z * z * 0.5)).inv();
        assert!((potential_v(&spec, x).unwrap() - want).norm() < 1e-14);
    }

    #[test]
    fn potential_poles() {
        let spec =
            ModelSpec::new(ModelParams::CentrifugalI { b: 1.0, c: 1.2, d: 1.4, e: 1.6, f: 1.8 }, 1, Sector::Full)
                .unwrap();
        assert!(matches!(potential_v(&spec, cre(0.0)), Err(Error::PoleOfPotential { .. })));
        assert!(matches!(potential_v(&spec, cplx(0.0, 0.5)), Err(Error::PoleOfPotential { .. })));
        assert!(matches!(potential_v(&trig_zero(0.5, 1), cre(0.0)), Err(Error::PoleOfPotential { .. })));
    }

    #[test]
    fn sinusoidal_coordinates() {
        assert_eq!(eta(&sextic_i(1.0, 1.0, 1.0, 2, Sector::Even), cre(2.0)), cre(4.0));
        assert_eq!(eta(&mp(1.0, 1.0, 0.0, 1), cplx(3.0, 1.0)), cplx(3.0, 1.0));
        assert_eq!(eta(&trig_zero(0.5, 1), cre(0.0)), cre(1.0));
    }

    #[test]
    fn compensation_terms() {
        let s = mp(1.0, 1.0, std::f64::consts::FRAC_PI_2, 1);
        assert!((compensation_alpha(&s, cre(1.5)) - cre(-3.0)).norm() < 1e-14);
        let s = ModelSpec::new(ModelParams::SexticII { a: 1.0, b: 1.0, c: 1.0, d: 1.0 }, 2, Sector::Even).unwrap();
        assert_eq!(compensation_alpha(&s, cre(1.0)), cre(18.0));
        for spec in [mp(1.0, 2.0, 0.4, 0), trig_zero(0.5, 0), sextic_i(1.0, 1.0, 1.0, 0, Sector::Even)] {
            assert!(compensation_alpha(&spec, cplx(0.3, 0.2)).is_zero());
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(mp(1.0, 1.0, 0.1, 4).sector_dimension().unwrap(), 5);
        assert_eq!(sextic_i(1.0, 1.0, 1.0, 6, Sector::Even).sector_dimension().unwrap(), 4);
        assert_eq!(sextic_i(1.0, 1.0, 1.0, 7, Sector::Odd).sector_dimension().unwrap(), 4);
    }

    #[test]
    fn sector_parity_is_enforced() {
        let p = ModelParams::SexticI { a: 1.0, b: 1.0, c: 1.0 };
        assert!(matches!(ModelSpec::new(p, 5, Sector::Even), Err(Error::SectorMismatch(_))));
        assert!(matches!(ModelSpec::new(p, 4, Sector::Odd), Err(Error::SectorMismatch(_))));
        assert!(matches!(ModelSpec::new(p, 4, Sector::Full), Err(Error::SectorMismatch(_))));
        let q = ModelParams::MpCrossed { a1: cre(1.0), a2: cre(1.0), beta: 0.1 };
        assert!(matches!(ModelSpec::new(q, 2, Sector::Even), Err(Error::SectorMismatch(_))));
    }

    #[test]
    fn parameter_ranges() {
        let bad = [
            ModelParams::MpCrossed { a1: cplx(-0.1, 1.0), a2: cre(1.0), beta: 0.0 },
            ModelParams::SexticI { a: 0.0, b: 1.0, c: 1.0 },
            ModelParams::CentrifugalI { b: 0.5 + 1e-7, c: 1.0, d: 1.0, e: 1.0, f: 1.0 },
            ModelParams::TrigQ { a: 1.0, b: 0.0, c: 0.0, d: 0.0, e: 0.0, q: 0.5 },
            ModelParams::TrigQ { a: 0.0, b: 0.0, c: 0.0, d: 0.0, e: 0.0, q: 1.0 },
        ];
        for p in bad {
            let sector = if p.family().is_sextic() { Sector::Odd } else { Sector::Full };
            assert!(matches!(ModelSpec::new(p, 1, sector), Err(Error::InvalidParameter(_))), "{p:?}");
        }
        let ok = ModelParams::CentrifugalI { b: 0.5 + 2e-6, c: 1.0, d: 1.0, e: 1.0, f: 1.0 };
        assert!(ModelSpec::new(ok, 1, Sector::Full).is_ok());
    }

    #[test]
    fn symmetric_coefficients_by_expansion() {
        let s = ModelSpec::new(ModelParams::SexticII { a: 1.0, b: 1.0, c: 1.0, d: 1.0 }, 0, Sector::Even).unwrap();
        let d = symmetric_coefficients(&s).unwrap().deltas;
        assert_eq!(d, [1.0, 4.0, 6.0, 4.0, 1.0].map(cre).to_vec());

        let s = ModelSpec::new(ModelParams::SexticII { a: 1.0, b: 2.0, c: 3.0, d: 4.0 }, 0, Sector::Even).unwrap();
        let d = symmetric_coefficients(&s).unwrap();
        assert_eq!(d.delta(3), cre(10.0));
        assert_eq!(d.delta(0), cre(24.0));

        let zero = ModelParams::CentrifugalII { a: 0.0, b: 0.0, c: 0.0, d: 0.0, e: 0.0, f: 0.0 };
        let d = symmetric_coefficients(&ModelSpec::new_unchecked(zero, 1, Sector::Full)).unwrap().deltas;
        let mut want = vec![cre(0.0); 7];
        want[6] = cre(1.0);
        assert_eq!(d, want);

        assert!(matches!(
            symmetric_coefficients(&sextic_i(1.0, 1.0, 1.0, 0, Sector::Even)),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn document_round_trip_and_strictness() {
        let text = r#"{"family": "mp-crossed", "params": {"a1": [1.0, 0.5], "a2": 1.0, "beta": 0.3}, "M": 3}"#;
        let doc = ModelDocument::from_json(text).unwrap();
        let spec: ModelSpec<f64> = doc.to_spec().unwrap();
        assert_eq!(spec.m, 3);
        assert_eq!(ModelDocument::from_spec(&spec).to_spec::<f64>().unwrap(), spec);

        let extra = r#"{"family": "sextic-i", "params": {"a": 1, "b": 1, "c": 1}, "M": 2, "sector": "even", "x": 1}"#;
        assert!(ModelDocument::from_json(extra).is_err());
        let unknown = r#"{"family": "sextic-i", "params": {"a": 1, "b": 1, "c": 1, "z": 2}, "M": 2, "sector": "even"}"#;
        assert!(ModelDocument::from_json(unknown).unwrap().to_spec::<f64>().is_err());
        let missing = r#"{"family": "sextic-i", "params": {"a": 1, "b": 1}, "M": 2, "sector": "even"}"#;
        assert!(ModelDocument::from_json(missing).unwrap().to_spec::<f64>().is_err());
    }

    #[test]
    fn restriction_must_match_family() {
        assert!(mp(1.0, 1.0, 0.3, 2).with_restriction(Restriction::Wilson).is_err());
        let r = mp(1.0, 2.0, 0.3, 2).with_restriction(Restriction::MeixnerPollaczek).unwrap();
        assert!(r.is_exactly_solvable());
        assert_eq!(r.potential().factors.len(), 1);
    }
}
