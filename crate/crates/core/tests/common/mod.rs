//! Random valid parameters shared by the property tests.
#![allow(dead_code)]

use num_complex::Complex;
use qes_core::models::{ModelFamily, ModelParams, ModelSpec, Sector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex<f64>;

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

fn away_from_half(r: &mut ChaCha8Rng) -> f64 {
    loop {
        let v: f64 = r.gen_range(0.2..1.6);
        if (v - 0.5).abs() > 0.05 {
            return v;
        }
    }
}

/// Valid parameters of `family` drawn from `seed`. With `real` the crossed
/// model uses `a2 = a1*`, the configuration with a real spectrum.
pub fn params(family: ModelFamily, seed: u64, real: bool) -> ModelParams<f64> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut pos = || r.gen_range(0.3..1.5);
    match family {
        ModelFamily::MpCrossed => {
            let a1 = C::new(r.gen_range(0.3..1.5), r.gen_range(-0.5..0.5));
            let a2 = if real { a1.conj() } else { C::new(r.gen_range(0.3..1.5), r.gen_range(-0.5..0.5)) };
            ModelParams::MpCrossed { a1, a2, beta: r.gen_range(-1.3..1.3) }
        }
        ModelFamily::SexticI => ModelParams::SexticI { a: pos(), b: pos(), c: pos() },
        ModelFamily::SexticII => ModelParams::SexticII { a: pos(), b: pos(), c: pos(), d: pos() },
        ModelFamily::CentrifugalI => {
            let [b, c, d, e, f] = [(); 5].map(|_| away_from_half(&mut r));
            ModelParams::CentrifugalI { b, c, d, e, f }
        }
        ModelFamily::CentrifugalII => {
            let [a, b, c, d, e, f] = [(); 6].map(|_| away_from_half(&mut r));
            ModelParams::CentrifugalII { a, b, c, d, e, f }
        }
        ModelFamily::TrigQ => {
            let [a, b, c, d, e] = [(); 5].map(|_| r.gen_range(-0.7..0.7));
            ModelParams::TrigQ { a, b, c, d, e, q: r.gen_range(0.3..0.8) }
        }
    }
}

pub fn sector_for(family: ModelFamily, m: usize) -> Sector {
    match (family.is_sextic(), m % 2) {
        (false, _) => Sector::Full,
        (true, 0) => Sector::Even,
        (true, _) => Sector::Odd,
    }
}

pub fn spec(family: ModelFamily, seed: u64, m: usize) -> ModelSpec<f64> {
    ModelSpec::new(params(family, seed, false), m, sector_for(family, m)).unwrap()
}

pub fn family_strategy() -> impl proptest::strategy::Strategy<Value = ModelFamily> {
    proptest::sample::select(ModelFamily::ALL.to_vec())
}
