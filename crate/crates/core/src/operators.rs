//! Salagean derivative, the averaging iteration, Janowski generators and
//! the class `T_n^alpha[a, b]`.
//!
//! Functions of the form `z^alpha G(z)` are never materialised; every
//! operator acts on the ratio `G` (with `G(0) = 1`) through
//! `D^n (z^alpha G) = z^alpha (alpha + theta)^n G`, where `theta = z d/dz`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::baernstein::CircleSamples;
use crate::error::{Error, Result};
use crate::sampling::SchwarzFunction;
use crate::series::TruncatedSeries;

/// Default circle grid used by membership tests.
pub const DEFAULT_GRID: usize = 4096;

/// Relative slack on the Schwarz-lemma bound `|w(z)| <= |z|`.
pub const SUBORDINATION_TOL: f64 = 1e-9;

/// Parameters `(alpha, n, a, b)` of the class `T_n^alpha[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    pub alpha: f64,
    pub n: u32,
    pub a: f64,
    pub b: f64,
}

impl ClassParams {
    pub fn new(alpha: f64, n: u32, a: f64, b: f64) -> Result<Self> {
        let p = Self { alpha, n, a, b };
        p.validate()?;
        Ok(p)
    }

    /// `alpha > 0` and `-1 <= b < a <= 1`.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Params(format!("alpha = {} must be positive", self.alpha)));
        }
        validate_janowski(self.a, self.b)
    }

    /// Additionally requires `0 < alpha <= 1` and `n >= 1`, the range in
    /// which the integral-means inequalities are stated.
    pub fn validate_theorem_range(&self) -> Result<()> {
        self.validate()?;
        if self.alpha > 1.0 {
            return Err(Error::Params(format!("alpha = {} exceeds 1", self.alpha)));
        }
        if self.n == 0 {
            return Err(Error::Params("n must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_n(&self, n: u32) -> Self {
        Self { n, ..*self }
    }
}

pub fn validate_janowski(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && -1.0 <= b && b < a && a <= 1.0 {
        Ok(())
    } else {
        Err(Error::Params(format!("need -1 <= b < a <= 1, got a = {a}, b = {b}")))
    }
}

/// Where a class member came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    /// The `P[a, b]` element the member was built from.
    pub p: TruncatedSeries,
    /// Schwarz function with `p = L_0(a, b; w)`, when known.
    pub schwarz: Option<SchwarzFunction>,
    /// Per-sample seed when the member was drawn at random.
    pub seed: Option<u64>,
}

/// A member `f(z) = z g(z)` of `T_n^alpha[a, b]`, stored through `g = f / z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassMember {
    pub g_series: TruncatedSeries,
    pub params: ClassParams,
    pub provenance: Option<Provenance>,
}

impl ClassMember {
    pub fn order(&self) -> usize {
        self.g_series.order()
    }

    /// `f = z g`, of order one higher than `g`.
    pub fn f_series(&self) -> TruncatedSeries {
        self.g_series.mul_z()
    }

    /// `f' = g + z g'`, i.e. coefficients `(k + 1) g_k`.
    pub fn f_prime(&self) -> TruncatedSeries {
        self.g_series.map_indexed(|k, c| c * (k + 1) as f64)
    }

    pub fn seed(&self) -> Option<u64> {
        self.provenance.as_ref().and_then(|p| p.seed)
    }
}

/// `D^n f`: coefficient map `a_k -> k^n a_k`.
pub fn salagean(f: &TruncatedSeries, n: u32) -> TruncatedSeries {
    f.map_indexed(|k, c| c * (k as f64).powi(n as i32))
}

fn require_normalized(p: &TruncatedSeries) -> Result<()> {
    let found = p.coeff(0);
    if (found - 1.0).norm() > crate::series::NORMALIZATION_TOL {
        return Err(Error::ConstantTerm { expected: 1.0, found });
    }
    Ok(())
}

fn require_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Params(format!("alpha = {alpha} must be positive")))
    }
}

/// n-fold averaging `p -> (alpha / z^alpha) int_0^z t^(alpha-1) p(t) dt`,
/// in closed form `c_k -> c_k (alpha / (alpha + k))^n`.
pub fn iterate_coeff(p: &TruncatedSeries, alpha: f64, n: u32) -> Result<TruncatedSeries> {
    require_normalized(p)?;
    require_alpha(alpha)?;
    Ok(p.map_indexed(|k, c| c * (alpha / (alpha + k as f64)).powi(n as i32)))
}

/// Inverse of [`iterate_coeff`]: `c_k -> c_k ((alpha + k) / alpha)^n`.
pub fn deiterate_coeff(p_n: &TruncatedSeries, alpha: f64, n: u32) -> Result<TruncatedSeries> {
    require_normalized(p_n)?;
    require_alpha(alpha)?;
    Ok(p_n.map_indexed(|k, c| c * ((alpha + k as f64) / alpha).powi(n as i32)))
}

/// `L_0(a, b; z) = (1 + a z) / (1 + b z)`: `c_0 = 1`, `c_k = (a - b)(-b)^(k-1)`.
pub fn janowski_l0(a: f64, b: f64, order: usize) -> Result<TruncatedSeries> {
    validate_janowski(a, b)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    let mut c = a - b;
    for _ in 1..=order {
        coeffs.push(Complex64::new(c, 0.0));
        c *= -b;
    }
    TruncatedSeries::new(coeffs)
}

/// `L_n(a, b; z)`, the n-fold average of `L_0`.
pub fn janowski_ln(params: &ClassParams, order: usize) -> Result<TruncatedSeries> {
    params.validate()?;
    iterate_coeff(&janowski_l0(params.a, params.b, order)?, params.alpha, params.n)
}

/// `D^n f(z)^alpha / (alpha^n z^alpha)` as a series with constant term 1.
pub fn geometric_condition(member: &ClassMember) -> Result<TruncatedSeries> {
    let params = &member.params;
    let ratio_power = member.g_series.pow_real(params.alpha)?;
    deiterate_coeff(&ratio_power, params.alpha, params.n)
}

/// The member `f` with `f^alpha / z^alpha = p_n`, the n-fold average of `p`.
pub fn build_member(p: &TruncatedSeries, params: &ClassParams) -> Result<ClassMember> {
    params.validate()?;
    let p_n = iterate_coeff(p, params.alpha, params.n)?;
    let g_series = p_n.pow_real(1.0 / params.alpha)?;
    Ok(ClassMember {
        g_series,
        params: *params,
        provenance: Some(Provenance { p: p.clone(), schwarz: None, seed: None }),
    })
}

/// Adds `delta` to the Taylor coefficient `a_k` of `f` (`k >= 2`). The
/// recorded generating function is replaced by the geometric condition of
/// the perturbed map; the seed is kept.
pub fn perturb_coefficient(member: &ClassMember, k: usize, delta: Complex64) -> Result<ClassMember> {
    if k < 2 || k > member.order() + 1 {
        return Err(Error::Invalid(format!("coefficient a_{k} is not adjustable at order {}", member.order())));
    }
    let mut coeffs = member.g_series.coeffs().to_vec();
    coeffs[k - 1] += delta;
    let mut out = ClassMember { g_series: TruncatedSeries::new(coeffs)?, params: member.params, provenance: None };
    let p = geometric_condition(&out)?;
    out.provenance = Some(Provenance { p, schwarz: None, seed: member.seed() });
    Ok(out)
}

/// Result of testing `p ≺ L_0(a, b; .)` on a circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Subordination {
    pub holds: bool,
    /// `max_j |w(theta_j)|` with `w = L_0^{-1}(p)`; infinite on a pole.
    pub sup_modulus: f64,
    pub witness_theta: f64,
    pub witness_index: usize,
    pub radius: f64,
}

/// Pulls `p` back through `L_0^{-1}(p) = (p - 1) / (a - b p)` and checks
/// `|w| <= r (1 + tol)` on every grid point of the circle `|z| = r`.
pub fn subordination_check(
    samples: &CircleSamples<Complex64>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Subordination> {
    validate_janowski(a, b)?;
    let r = samples.radius();
    let mut out = Subordination {
        holds: true,
        sup_modulus: 0.0,
        witness_theta: samples.theta(0),
        witness_index: 0,
        radius: r,
    };
    for (j, &p) in samples.values().iter().enumerate() {
        let den = a - b * p;
        let w = (p - 1.0) / den;
        let modulus = if w.is_finite() { w.norm() } else { f64::INFINITY };
        if modulus > out.sup_modulus {
            out.sup_modulus = modulus;
            out.witness_theta = samples.theta(j);
            out.witness_index = j;
        }
    }
    out.holds = out.sup_modulus <= r * (1.0 + tol);
    Ok(out)
}

/// Tests `p_n ∈ P_n[a, b]` by exact de-iteration followed by
/// subordination to `L_0(a, b; .)` on `|z| = r`.
pub fn membership_pn(p_n: &TruncatedSeries, params: &ClassParams, r: f64) -> Result<Subordination> {
    membership_pn_on_grid(p_n, params, r, DEFAULT_GRID)
}

pub fn membership_pn_on_grid(
    p_n: &TruncatedSeries,
    params: &ClassParams,
    r: f64,
    m: usize,
) -> Result<Subordination> {
    params.validate()?;
    let p = deiterate_coeff(p_n, params.alpha, params.n)?;
    subordination_check(&p.evaluate_circle(r, m)?, params.a, params.b, SUBORDINATION_TOL)
}

/// Tests `f ∈ T_n^alpha[a, b]` through its geometric condition on `|z| = r`.
pub fn membership_tn(member: &ClassMember, r: f64) -> Result<Subordination> {
    membership_tn_on_grid(member, r, DEFAULT_GRID)
}

pub fn membership_tn_on_grid(member: &ClassMember, r: f64, m: usize) -> Result<Subordination> {
    member.params.validate()?;
    let q = geometric_condition(member)?;
    subordination_check(&q.evaluate_circle(r, m)?, member.params.a, member.params.b, SUBORDINATION_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs).unwrap()
    }

    fn max_diff(s: &TruncatedSeries, t: &TruncatedSeries) -> f64 {
        let n = s.order().min(t.order());
        (0..=n).map(|k| (s.coeff(k) - t.coeff(k)).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn params_validation() {
        assert!(ClassParams::new(0.5, 1, 1.0, -1.0).is_ok());
        assert!(ClassParams::new(0.5, 1, 0.5, 0.5).is_err());
        assert!(ClassParams::new(0.5, 1, 1.2, 0.0).is_err());
        assert!(ClassParams::new(0.0, 1, 1.0, 0.0).is_err());
        let p = ClassParams::new(2.0, 0, 1.0, 0.0).unwrap();
        assert!(p.validate_theorem_range().is_err());
        assert!(ClassParams::new(1.0, 0, 1.0, 0.0).unwrap().validate_theorem_range().is_err());
    }

    #[test]
    fn salagean_examples() {
        let f = real(&[0.0, 1.0, 0.3, -0.2]);
        assert_eq!(salagean(&f, 0), f);
        assert_eq!(salagean(&real(&[0.0, 1.0, 1.0]), 2), real(&[0.0, 1.0, 4.0]));
        let koebe = TruncatedSeries::from_fn(10, |k| c(k as f64)).unwrap();
        let d = salagean(&koebe, 1);
        for k in 0..=10 {
            assert_eq!(d.coeff(k), c((k * k) as f64));
        }
        // D f = z f'
        let f = real(&[0.0, 1.0, 0.5, 0.25, -1.0]);
        assert_eq!(salagean(&f, 1), f.derivative().mul_z().truncate(4));
    }

    #[test]
    fn iteration_examples() {
        let p = real(&[1.0, 2.0, 2.0]);
        assert_eq!(iterate_coeff(&p, 0.7, 0).unwrap(), p);
        let p1 = iterate_coeff(&p, 1.0, 1).unwrap();
        assert!(max_diff(&p1, &real(&[1.0, 1.0, 2.0 / 3.0])) < 1e-15);
        assert_eq!(deiterate_coeff(&p, 0.7, 0).unwrap(), p);
        let back = deiterate_coeff(&iterate_coeff(&p, 0.3, 3).unwrap(), 0.3, 3).unwrap();
        assert!(max_diff(&back, &p) < 1e-13);
        assert!(iterate_coeff(&real(&[2.0, 1.0]), 1.0, 1).is_err());
    }

    #[test]
    fn iteration_matches_defining_integral() {
        // p_1(z) = int_0^1 alpha u^(alpha-1) p(uz) du with alpha = 1: midpoint rule
        let p = real(&[1.0, 2.0, 2.0]);
        let z = Complex64::new(0.3, 0.4);
        let steps = 20_000;
        let integral: Complex64 = (0..steps)
            .map(|i| {
                let u = (i as f64 + 0.5) / steps as f64;
                p.evaluate_at(u * z)
            })
            .sum::<Complex64>()
            / steps as f64;
        let p1 = iterate_coeff(&p, 1.0, 1).unwrap();
        assert!((p1.evaluate_at(z) - integral).norm() < 1e-8);
    }

    #[test]
    fn janowski_l0_examples() {
        assert_eq!(janowski_l0(1.0, 0.0, 3).unwrap(), real(&[1.0, 1.0, 0.0, 0.0]));
        assert_eq!(janowski_l0(1.0, -1.0, 3).unwrap(), real(&[1.0, 2.0, 2.0, 2.0]));
        assert!(janowski_l0(0.0, 0.0, 3).is_err());
        let (a, b) = (0.4, -0.7);
        let l0 = janowski_l0(a, b, 400).unwrap();
        for i in 0..50 {
            let z = Complex64::from_polar(0.9 * (i as f64 / 50.0), 0.37 * i as f64);
            let exact = (1.0 + a * z) / (1.0 + b * z);
            assert!((l0.evaluate_at(z) - exact).norm() < 1e-12);
        }
    }

    #[test]
    fn janowski_l1_closed_form() {
        // L_1(1, -1) with alpha = 1 is -1 - (2 / z) log(1 - z).
        let params = ClassParams::new(1.0, 1, 1.0, -1.0).unwrap();
        let l1 = janowski_ln(&params, 30).unwrap();
        for k in 1..=30 {
            assert!((l1.coeff(k) - c(2.0 / (k as f64 + 1.0))).norm() < 1e-15);
        }
        let z = Complex64::new(0.2, -0.3);
        let big = janowski_ln(&params, 200).unwrap();
        let closed = -1.0 - 2.0 / z * (1.0 - z).ln();
        assert!((big.evaluate_at(z) - closed).norm() < 1e-12);
        let back = deiterate_coeff(&l1, 1.0, 1).unwrap();
        assert!(max_diff(&back, &janowski_l0(1.0, -1.0, 30).unwrap()) < 1e-14);
    }

    #[test]
    fn build_member_examples() {
        let params = ClassParams::new(0.4, 2, 0.9, -0.5).unwrap();
        let m = build_member(&TruncatedSeries::one(16), &params).unwrap();
        assert!(max_diff(&m.g_series, &TruncatedSeries::one(16)) < 1e-15);

        // n = alpha = 1: f' = L_0(a, b; z)
        let params = ClassParams::new(1.0, 1, 0.9, -0.5).unwrap();
        let l0 = janowski_l0(0.9, -0.5, 24).unwrap();
        let m = build_member(&l0, &params).unwrap();
        assert!(max_diff(&m.f_prime(), &l0) < 1e-14);
        assert!(max_diff(&m.f_series().derivative(), &l0) < 1e-14);
    }

    #[test]
    fn geometric_condition_examples() {
        let p = real(&[1.0, 0.5, -0.2, 0.1, 0.05]);
        let params = ClassParams::new(0.3, 2, 0.8, -0.6).unwrap();
        let m = build_member(&p, &params).unwrap();
        assert!(max_diff(&geometric_condition(&m).unwrap(), &p) < 1e-10);

        let params0 = ClassParams::new(0.5, 0, 0.8, -0.6).unwrap();
        let m0 = ClassMember { g_series: real(&[1.0, 0.2, 0.1]), params: params0, provenance: None };
        let expected = m0.g_series.pow_real(0.5).unwrap();
        assert!(max_diff(&geometric_condition(&m0).unwrap(), &expected) < 1e-15);

        // alpha = n = 1: D f / z = f'
        let params1 = ClassParams::new(1.0, 1, 0.8, -0.6).unwrap();
        let m1 = ClassMember { g_series: real(&[1.0, 0.2, 0.1, -0.3]), params: params1, provenance: None };
        assert!(max_diff(&geometric_condition(&m1).unwrap(), &m1.f_series().derivative()) < 1e-15);
    }

    #[test]
    fn subordination_examples() {
        let (a, b, r) = (0.8, -0.5, 0.9);
        let l0 = janowski_l0(a, b, 600).unwrap();
        let exact = subordination_check(&l0.evaluate_circle(r, 1024).unwrap(), a, b, 1e-9).unwrap();
        assert!(exact.holds);
        assert!((exact.sup_modulus - r).abs() < 1e-10);

        let scaled = l0.compose(&TruncatedSeries::identity(600).scale(Complex64::new(0.3, -0.6))).unwrap();
        assert!(subordination_check(&scaled.evaluate_circle(r, 1024).unwrap(), a, b, 1e-9).unwrap().holds);

        let eps = 0.2;
        let bad = real(&[1.0, (a - b) * (1.0 + eps)]);
        let out = subordination_check(&bad.evaluate_circle(r, 1024).unwrap(), a, b, 1e-9).unwrap();
        assert!(!out.holds);
        assert!(out.sup_modulus >= (1.0 + eps) * r - 1e-12);

        // p hits a / b: pole of the inverse map
        let pole = CircleSamples::new(vec![c(-1.6); 4], 0.5).unwrap();
        let out = subordination_check(&pole, a, b, 1e-9).unwrap();
        assert!(!out.holds && out.sup_modulus.is_infinite());
    }

    #[test]
    fn membership_examples() {
        let params = ClassParams::new(0.5, 2, 0.7, -0.9).unwrap();
        let ln = janowski_ln(&params, 256).unwrap();
        assert!(membership_pn(&ln, &params, 0.6).unwrap().holds);
        let (a, b) = (params.a, params.b);
        let bad = real(&[1.0, 2.0 * (a - b), 0.0]);
        assert!(!membership_pn(&bad, &params, 0.6).unwrap().holds);

        let identity = ClassMember { g_series: TruncatedSeries::one(32), params, provenance: None };
        assert!(membership_tn(&identity, 0.9).unwrap().holds);

        let koebe_params = ClassParams::new(1.0, 1, 0.2, 0.0).unwrap();
        let koebe = ClassMember {
            g_series: TruncatedSeries::from_fn(128, |k| c(k as f64 + 1.0)).unwrap(),
            params: koebe_params,
            provenance: None,
        };
        assert!(!membership_tn(&koebe, 0.3).unwrap().holds);
    }

    #[test]
    fn perturbed_extremal_leaves_the_class() {
        let params = ClassParams::new(1.0, 1, 1.0, -1.0).unwrap();
        let p = janowski_l0(1.0, -1.0, 128).unwrap();
        let member = build_member(&p, &params).unwrap();
        let bumped = perturb_coefficient(&member, 2, c(0.05)).unwrap();
        assert!((bumped.g_series.coeff(1) - member.g_series.coeff(1) - c(0.05)).norm() < 1e-15);
        assert!(!membership_tn(&bumped, 0.6).unwrap().holds);
        assert!(perturb_coefficient(&member, 1, c(0.05)).is_err());
        assert!(perturb_coefficient(&member, 130, c(0.05)).is_err());
    }
}
