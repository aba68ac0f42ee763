//! Seeded random Schwarz functions and class members.
//!
//! Every draw owns a ChaCha stream derived from `(seed, index)`, so a
//! sample can be regenerated from its per-sample seed alone, independent of
//! how many threads produced its neighbours.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{build_member, ClassMember, ClassParams, Provenance};
use crate::series::TruncatedSeries;

/// Zeros of random Blaschke factors are drawn in `|z| <= MAX_ZERO_MODULUS`.
pub const MAX_ZERO_MODULUS: f64 = 0.8;

/// Default Blaschke degree cap.
pub const MAX_DEFAULT_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    /// Number of Blaschke factors besides the forced zero at the origin.
    pub degree: usize,
    pub count: usize,
    pub params: ClassParams,
    /// Truncation order of the generated series.
    pub order: usize,
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.count == 0 {
            return Err(Error::Invalid("sample count must be at least 1".into()));
        }
        if self.degree > MAX_DEFAULT_DEGREE {
            return Err(Error::Invalid(format!(
                "Blaschke degree {} exceeds {MAX_DEFAULT_DEGREE}",
                self.degree
            )));
        }
        Ok(())
    }

    /// Seed of the `index`-th draw.
    pub fn member_seed(&self, index: usize) -> u64 {
        derive_seed(self.seed, index)
    }
}

/// SplitMix64 finaliser of `seed + index * golden`.
pub fn derive_seed(seed: u64, index: usize) -> u64 {
    let mut x = seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn rng_for_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// `w(z) = rotation * z * prod_j (z_j - z) / (1 - conj(z_j) z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzFunction {
    pub zeros: Vec<Complex64>,
    pub rotation: Complex64,
    pub series: TruncatedSeries,
}

impl SchwarzFunction {
    pub fn new(zeros: Vec<Complex64>, rotation: Complex64, order: usize) -> Result<Self> {
        if let Some(z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(Error::Invalid(format!("Blaschke zero {z} is not inside the unit disk")));
        }
        if (rotation.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("rotation {rotation} is not unimodular")));
        }
        let order = order.max(1);
        let mut series = TruncatedSeries::identity(order).scale(rotation);
        for &zj in &zeros {
            let mut num = TruncatedSeries::constant(zj, order).into_coeffs();
            num[1] = Complex64::new(-1.0, 0.0);
            let mut den = TruncatedSeries::one(order).into_coeffs();
            den[1] = -zj.conj();
            let factor = TruncatedSeries::new(num)?.div(&TruncatedSeries::new(den)?)?;
            series = series.mul(&factor);
        }
        Ok(Self { zeros, rotation, series })
    }

    /// The pure rotation `w(z) = e^{i gamma} z`.
    pub fn rotation(gamma: f64, order: usize) -> Result<Self> {
        Self::new(Vec::new(), Complex64::from_polar(1.0, gamma), order)
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Same function expanded to a different order.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::new(self.zeros.clone(), self.rotation, order)
    }

    /// Closed-form value, independent of the series expansion.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.rotation * z, |acc, &zj| acc * (zj - z) / (1.0 - zj.conj() * z))
    }
}

pub fn random_schwarz<R: Rng + ?Sized>(cfg: &SampleConfig, rng: &mut R) -> Result<SchwarzFunction> {
    let zeros = (0..cfg.degree)
        .map(|_| {
            // uniform in the disk of radius MAX_ZERO_MODULUS
            let rho = MAX_ZERO_MODULUS * rng.random::<f64>().sqrt();
            Complex64::from_polar(rho, rng.random_range(-PI..PI))
        })
        .collect();
    let rotation = Complex64::from_polar(1.0, rng.random_range(-PI..PI));
    SchwarzFunction::new(zeros, rotation, cfg.order)
}

/// `p = L_0(a, b; w)`, computed as the series quotient `(1 + a w) / (1 + b w)`.
pub fn sample_p(cfg: &SampleConfig, w: &SchwarzFunction) -> Result<TruncatedSeries> {
    cfg.params.validate()?;
    let one = TruncatedSeries::one(w.series.order());
    let num = one.add(&w.series.scale(Complex64::new(cfg.params.a, 0.0)));
    let den = one.add(&w.series.scale(Complex64::new(cfg.params.b, 0.0)));
    num.div(&den)
}

pub fn sample_member(cfg: &SampleConfig, w: &SchwarzFunction) -> Result<ClassMember> {
    let p = sample_p(cfg, w)?;
    let mut member = build_member(&p, &cfg.params)?;
    member.provenance = Some(Provenance { p, schwarz: Some(w.clone()), seed: None });
    Ok(member)
}

/// Draws the member with per-sample seed `seed`.
pub fn member_from_seed(cfg: &SampleConfig, seed: u64) -> Result<ClassMember> {
    let mut rng = rng_for_seed(seed);
    let w = random_schwarz(cfg, &mut rng)?;
    let mut member = sample_member(cfg, &w)?;
    if let Some(prov) = member.provenance.as_mut() {
        prov.seed = Some(seed);
    }
    Ok(member)
}

/// `cfg.count` members in index order.
pub fn draw_members(cfg: &SampleConfig) -> Result<Vec<ClassMember>> {
    cfg.validate()?;
    (0..cfg.count).map(|i| member_from_seed(cfg, cfg.member_seed(i))).collect()
}

/// Re-expands a member built from a known Schwarz function at a new order.
/// Members without one are truncated or returned unchanged.
pub fn rebuild_member(member: &ClassMember, order: usize) -> Result<ClassMember> {
    let Some(prov) = &member.provenance else {
        return Ok(member.clone());
    };
    let Some(w) = &prov.schwarz else {
        return Ok(member.clone());
    };
    let w = w.with_order(order)?;
    let cfg = SampleConfig { seed: 0, degree: w.degree(), count: 1, params: member.params, order };
    let mut rebuilt = sample_member(&cfg, &w)?;
    if let Some(p) = rebuilt.provenance.as_mut() {
        p.seed = prov.seed;
    }
    Ok(rebuilt)
}
