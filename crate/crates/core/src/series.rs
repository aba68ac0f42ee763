//! Truncated complex Taylor series about the origin.
//!
//! A [`TruncatedSeries`] of order `N` holds the coefficients `c_0..c_N`.
//! Binary operations between series of different orders truncate to the
//! shorter one; nothing is ever zero-padded.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::baernstein::CircleSamples;
use crate::error::{Error, Result};

/// Tolerance used when a normalised constant term (`c_0 = 1`) is required.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

/// A point `z = r e^{i theta}` strictly inside the unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvaluationPoint {
    r: f64,
    theta: f64,
}

impl EvaluationPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        check_radius(r)?;
        if !(-PI..=PI).contains(&theta) {
            return Err(Error::Angle(theta));
        }
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::Radius(r))
    }
}

pub(crate) fn check_grid(m: usize) -> Result<()> {
    if m >= 4 && m % 2 == 0 {
        Ok(())
    } else {
        Err(Error::Grid(m))
    }
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Builds a series of the given order from a coefficient generator.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        Self::new((0..=order).map(f).collect())
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(Complex64::new(0.0, 0.0), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The identity function `z` (zero at order 0).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient `c_k`, or zero past the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self { coeffs: self.coeffs[..keep].to_vec() }
    }

    /// Applies `c_k -> f(k, c_k)`.
    pub fn map_indexed(&self, mut f: impl FnMut(usize, Complex64) -> Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().enumerate().map(|(k, &c)| f(k, c)).collect() }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map_indexed(|_, c| c * factor)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * other.coeffs[k - j]).sum())
            .collect();
        Self { coeffs }
    }

    /// Series quotient `self / other`; requires `other(0) != 0`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let d0 = other.coeffs[0];
        if d0.norm() == 0.0 {
            return Err(Error::SingularDivision);
        }
        let n = self.order().min(other.order());
        let mut q = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let acc: Complex64 = (0..k).map(|j| q[j] * other.coeffs[k - j]).sum();
            q.push((self.coeffs[k] - acc) / d0);
        }
        Self::new(q)
    }

    /// The Euler operator `z d/dz`: `c_k -> k c_k`.
    pub fn theta_op(&self) -> Self {
        self.map_indexed(|k, c| c * k as f64)
    }

    /// Multiplication by `z`; the order grows by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// `d/dz`; the order drops by one (an order-0 series maps to zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self { coeffs: (1..=self.order()).map(|k| self.coeffs[k] * k as f64).collect() }
    }

    /// Series of `conj(s(conj z))`.
    pub fn conj_coeffs(&self) -> Self {
        self.map_indexed(|_, c| c.conj())
    }

    /// Series of `s(e^{i gamma} z)`.
    pub fn rotate(&self, gamma: f64) -> Self {
        self.map_indexed(|k, c| c * Complex64::from_polar(1.0, k as f64 * gamma))
    }

    fn require_constant(&self, expected: f64) -> Result<()> {
        let found = self.coeffs[0];
        if (found - expected).norm() > NORMALIZATION_TOL {
            return Err(Error::ConstantTerm { expected, found });
        }
        Ok(())
    }

    /// Principal logarithm of a series with `c_0 = 1`.
    pub fn log_series(&self) -> Result<Self> {
        self.require_constant(1.0)?;
        let n = self.order();
        let s = &self.coeffs;
        // From s * (z L') = z s': k L_k = k s_k - sum_{j<k} j L_j s_{k-j}.
        let mut l = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 1..=n {
            let acc: Complex64 = (1..k).map(|j| l[j] * j as f64 * s[k - j]).sum();
            l[k] = s[k] - acc / k as f64;
        }
        Self::new(l)
    }

    /// Exponential of a series; `e^{c_0}` multiplies the result.
    pub fn exp_series(&self) -> Result<Self> {
        let n = self.order();
        let l = &self.coeffs;
        let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
        e[0] = l[0].exp();
        for k in 1..=n {
            let acc: Complex64 = (1..=k).map(|j| l[j] * j as f64 * e[k - j]).sum();
            e[k] = acc / k as f64;
        }
        Self::new(e)
    }

    /// Real power `s^beta` of a series with `c_0 = 1` (principal branch).
    pub fn pow_real(&self, beta: f64) -> Result<Self> {
        self.require_constant(1.0)?;
        if beta == 0.0 {
            return Ok(Self::one(self.order()));
        }
        if beta == 1.0 {
            return Ok(self.clone());
        }
        self.log_series()?.scale(Complex64::new(beta, 0.0)).exp_series()
    }

    /// `self ∘ inner`, by Horner's scheme on series; requires `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::ConstantTerm { expected: 0.0, found: inner.coeffs[0] });
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Horner evaluation at an arbitrary complex point.
    pub fn evaluate_at(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn evaluate(&self, p: &EvaluationPoint) -> Complex64 {
        self.evaluate_at(p.z())
    }

    /// Values on the uniform grid `theta_j = -pi + 2 pi j / m`, `j = 0..m`.
    ///
    /// Coefficients are folded modulo `m` before a single inverse FFT, so the
    /// result is exact (up to rounding) for any truncation order.
    pub fn evaluate_circle(&self, r: f64, m: usize) -> Result<CircleSamples<Complex64>> {
        check_radius(r)?;
        check_grid(m)?;
        // e^{i k theta_j} = (-1)^k e^{2 pi i j k / m}
        let mut bins = vec![Complex64::new(0.0, 0.0); m];
        let mut rk = 1.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            bins[k % m] += c * (rk * sign);
            rk *= r;
        }
        let fft = FftPlanner::new().plan_fft(m, FftDirection::Inverse);
        fft.process(&mut bins);
        CircleSamples::new(bins, r)
    }

    /// Estimated truncation error on `|z| = r` from a growth model fitted to
    /// the held coefficients.
    pub fn tail_bound(&self, r: f64) -> f64 {
        GrowthModel::fit(self).tail(self.order(), r)
    }
}

/// Coefficient growth model `|c_k| <= scale * k^exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthModel {
    pub scale: f64,
    pub exponent: f64,
}

impl GrowthModel {
    /// Fits the model to the coefficient envelope on the upper half and
    /// upper quarter of the index range.
    pub fn fit(s: &TruncatedSeries) -> Self {
        let n = s.order();
        let abs: Vec<f64> = s.coeffs().iter().map(|c| c.norm()).collect();
        if n == 0 {
            return Self { scale: abs[0], exponent: 0.0 };
        }
        let envelope = |lo: usize, hi: usize| -> Option<(usize, f64)> {
            (lo..=hi).map(|k| (k, abs[k])).max_by(|x, y| x.1.total_cmp(&y.1))
        };
        let upper = envelope(n / 2 + 1, n).expect("non-empty range");
        if upper.1 == 0.0 {
            return Self { scale: 0.0, exponent: 0.0 };
        }
        let exponent = match (n / 4 + 1 <= n / 2).then(|| envelope(n / 4 + 1, n / 2)).flatten() {
            Some((k1, e1)) if e1 > 0.0 => {
                ((upper.1 / e1).ln() / (upper.0 as f64 / k1 as f64).ln()).clamp(-50.0, 50.0)
            }
            _ => 0.0,
        };
        let scale = (n / 2 + 1..=n)
            .map(|k| abs[k] / (k as f64).powf(exponent))
            .fold(0.0, f64::max);
        Self { scale, exponent }
    }

    /// `sum_{k > order} scale * k^exponent * r^k`, summed until negligible.
    pub fn tail(&self, order: usize, r: f64) -> f64 {
        if self.scale == 0.0 || r == 0.0 {
            return 0.0;
        }
        let ln_r = r.ln();
        let ln_scale = self.scale.ln();
        let mut sum = 0.0;
        let mut k = order + 1;
        loop {
            let kf = k as f64;
            let term = (ln_scale + self.exponent * kf.ln() + kf * ln_r).exp();
            sum += term;
            // past the peak of k^m r^k every later term is smaller
            let decreasing = self.exponent <= 0.0 || kf > -self.exponent / ln_r;
            if decreasing && term <= 1e-18 * sum.max(f64::MIN_POSITIVE) {
                break;
            }
            if k > order + 10_000_000 {
                break;
            }
            k += 1;
        }
        sum
    }
}

/// Rebuilds a series at doubling orders until its fitted tail on `|z| = r`
/// drops below `tol` or `max_order` is reached.
pub fn refine_order(
    start: usize,
    max_order: usize,
    r: f64,
    tol: f64,
    mut build: impl FnMut(usize) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    let mut order = start.max(1);
    loop {
        let s = build(order)?;
        if s.tail_bound(r) <= tol || order >= max_order {
            return Ok(s);
        }
        order = (order * 2).min(max_order);
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
