//! Executable checks of the integral-means inequalities for
//! `T_n^alpha[a, b]` and of the lemmas behind them.
//!
//! Each check returns a [`VerificationReport`] with `margin = rhs - lhs`
//! and `pass` decided against a tolerance recorded on the report.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::baernstein::{
    generator_log_modulus, hinge_family, integral_mean, koebe_ratio_log_modulus, majorant_samples,
    rearrange_sym_decreasing, star_dominates, star_function, CircleSamples, ConvexTestFn,
};
use crate::error::{Error, Result};
use crate::operators::{
    iterate_coeff, membership_tn_on_grid, ClassMember, ClassParams, SUBORDINATION_TOL,
};
use crate::sampling::{
    member_from_seed, rebuild_member, sample_member, SampleConfig, SchwarzFunction,
};
use crate::series::{check_radius, TruncatedSeries, DEFAULT_ORDER};

/// Tolerances used by the checks.
pub mod tolerance {
    /// Integral means: `margin >= -INTEGRAL_REL * (1 + |rhs|)`.
    pub const INTEGRAL_REL: f64 = 1e-8;
    /// Star-function domination, absolute.
    pub const STAR_ABS: f64 = 1e-6;
    /// Coefficientwise series identities.
    pub const IDENTITY_ABS: f64 = 1e-10;
    /// Highest coefficient compared by the series identity check.
    pub const IDENTITY_MAX_K: usize = 40;
    /// Discrete subadditivity of star functions.
    pub const SUBADDITIVITY_ABS: f64 = 1e-12;
}

/// Series order and circle grid used by a check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Precision {
    /// Starting truncation order; raised per radius until the tail is small.
    pub order: usize,
    pub grid: usize,
    /// Target truncation error of `f'` on the circle.
    pub tail_tol: f64,
    pub max_order: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Self { order: DEFAULT_ORDER, grid: 4096, tail_tol: 1e-13, max_order: 8192 }
    }
}

impl Precision {
    /// Re-expands a sampled member at doubling orders until the fitted tail
    /// of `f'` on `|z| = r` is below `tail_tol`.
    pub fn resolve(&self, member: &ClassMember, r: f64) -> Result<ClassMember> {
        check_radius(r)?;
        let mut current = if member.order() < self.order {
            rebuild_member(member, self.order)?
        } else {
            member.clone()
        };
        let rebuildable = member.provenance.as_ref().is_some_and(|p| p.schwarz.is_some());
        while rebuildable
            && current.order() < self.max_order
            && current.f_prime().tail_bound(r) > self.tail_tol
        {
            current = rebuild_member(&current, (current.order() * 2).min(self.max_order))?;
        }
        Ok(current)
    }
}

/// `+log` (first inequality) or `-log` (second inequality).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn apply(self, s: CircleSamples<f64>) -> CircleSamples<f64> {
        match self {
            Sign::Plus => s,
            Sign::Minus => s.negated(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub params: Option<ClassParams>,
    pub r: f64,
    pub phi: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    pub seed: u64,
    #[serde(rename = "N")]
    pub order: usize,
    #[serde(rename = "M")]
    pub grid: usize,
    #[serde(skip)]
    pub tol: f64,
    /// Grid angle where the underlying comparison is tightest.
    #[serde(skip)]
    pub witness_theta: Option<f64>,
}

impl VerificationReport {
    fn from_margin(check_name: String, lhs: f64, rhs: f64, margin: f64, tol: f64) -> Self {
        Self {
            check_name,
            params: None,
            r: 0.0,
            phi: String::new(),
            lhs,
            rhs,
            margin,
            pass: margin >= -tol,
            seed: 0,
            order: 0,
            grid: 0,
            tol,
            witness_theta: None,
        }
    }

    fn with_context(mut self, params: &ClassParams, r: f64, seed: Option<u64>, order: usize, grid: usize) -> Self {
        self.params = Some(*params);
        self.r = r;
        self.seed = seed.unwrap_or(0);
        self.order = order;
        self.grid = grid;
        self
    }
}

/// Which test functions the integral-mean checks run.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiFamily {
    /// Hinges `max(x - t, 0)` with `t` spanning `[min - 1, max + 1]` of both integrands.
    pub hinge_points: usize,
    pub exp_rates: Vec<f64>,
}

impl Default for PhiFamily {
    fn default() -> Self {
        Self { hinge_points: 41, exp_rates: vec![0.5, 1.0, 2.0] }
    }
}

impl PhiFamily {
    pub fn build(&self, g: &CircleSamples<f64>, h: &CircleSamples<f64>) -> Result<Vec<ConvexTestFn>> {
        let lo = g.min().min(h.min()) - 1.0;
        let hi = g.max().max(h.max()) + 1.0;
        let mut phis = hinge_family(lo, hi, self.hinge_points);
        for &rate in &self.exp_rates {
            phis.push(ConvexTestFn::exp(rate)?);
        }
        Ok(phis)
    }
}

/// `(± log|f'|, ± majorant)` on `|z| = r`.
pub fn theorem_integrands(
    member: &ClassMember,
    r: f64,
    grid: usize,
    sign: Sign,
) -> Result<(CircleSamples<f64>, CircleSamples<f64>)> {
    member.params.validate_theorem_range()?;
    check_radius(r)?;
    let lhs = member.f_prime().evaluate_circle(r, grid)?.log_modulus()?;
    let rhs = majorant_samples(&member.params, r, grid)?;
    Ok((sign.apply(lhs), sign.apply(rhs)))
}

fn theorem_name(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "theorem1",
        Sign::Minus => "theorem2",
    }
}

fn integral_report(
    name: String,
    member: &ClassMember,
    lhs_samples: &CircleSamples<f64>,
    rhs_samples: &CircleSamples<f64>,
    phi: &ConvexTestFn,
    witness: Option<f64>,
) -> VerificationReport {
    let lhs = integral_mean(lhs_samples, phi);
    let rhs = integral_mean(rhs_samples, phi);
    let tol = tolerance::INTEGRAL_REL * (1.0 + rhs.abs());
    let mut report = VerificationReport::from_margin(name, lhs, rhs, rhs - lhs, tol)
        .with_context(&member.params, lhs_samples.radius(), member.seed(), member.order(), lhs_samples.len());
    report.phi = phi.to_string();
    report.witness_theta = witness;
    report
}

fn star_witness(lhs: &CircleSamples<f64>, rhs: &CircleSamples<f64>) -> Result<f64> {
    Ok(star_dominates(&star_function(lhs), &star_function(rhs), 0.0)?.theta)
}

fn check_theorem(member: &ClassMember, r: f64, phi: &ConvexTestFn, grid: usize, sign: Sign) -> Result<VerificationReport> {
    let (lhs, rhs) = theorem_integrands(member, r, grid, sign)?;
    let witness = star_witness(&lhs, &rhs)?;
    Ok(integral_report(theorem_name(sign).into(), member, &lhs, &rhs, phi, Some(witness)))
}

/// `int Phi(log|f'|) <= int Phi(log|L_{n-1} (k/z)^{1-alpha}|)` on `|z| = r`.
pub fn check_theorem1(member: &ClassMember, r: f64, phi: &ConvexTestFn, grid: usize) -> Result<VerificationReport> {
    check_theorem(member, r, phi, grid, Sign::Plus)
}

/// The same comparison with both logarithms negated.
pub fn check_theorem2(member: &ClassMember, r: f64, phi: &ConvexTestFn, grid: usize) -> Result<VerificationReport> {
    check_theorem(member, r, phi, grid, Sign::Minus)
}

/// Both inequalities for every test function of `family`, sharing the samples.
pub fn theorem_reports(
    member: &ClassMember,
    r: f64,
    grid: usize,
    family: &PhiFamily,
    tag: &str,
) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let (lhs, rhs) = theorem_integrands(member, r, grid, sign)?;
        let witness = star_witness(&lhs, &rhs)?;
        for phi in family.build(&lhs, &rhs)? {
            let name = format!("{}{tag}", theorem_name(sign));
            out.push(integral_report(name, member, &lhs, &rhs, &phi, Some(witness)));
        }
    }
    Ok(out)
}

fn star_report(
    name: String,
    lhs: &CircleSamples<f64>,
    rhs: &CircleSamples<f64>,
    params: &ClassParams,
    seed: Option<u64>,
    order: usize,
) -> Result<VerificationReport> {
    let d = star_dominates(&star_function(lhs), &star_function(rhs), tolerance::STAR_ABS)?;
    let mut report = VerificationReport::from_margin(name, d.lhs, d.rhs, -d.max_violation, tolerance::STAR_ABS)
        .with_context(params, lhs.radius(), seed, order, lhs.len());
    report.phi = "star".into();
    report.witness_theta = Some(d.theta);
    Ok(report)
}

/// `(± log|p_n|)* <= (± log|L_n|)*` for `p_n` the n-fold average of `p`.
pub fn check_corollary1(
    p: &TruncatedSeries,
    params: &ClassParams,
    r: f64,
    sign: Sign,
    grid: usize,
) -> Result<VerificationReport> {
    subordinate_star_check(format!("corollary1[{sign}]"), p, params, r, sign, grid, None)
}

/// The subharmonic pair `log|p_n| ≺ log|L_n|` compared through star functions.
pub fn check_lemma4(p: &TruncatedSeries, params: &ClassParams, r: f64, grid: usize) -> Result<VerificationReport> {
    subordinate_star_check("lemma4".into(), p, params, r, Sign::Plus, grid, None)
}

fn subordinate_star_check(
    name: String,
    p: &TruncatedSeries,
    params: &ClassParams,
    r: f64,
    sign: Sign,
    grid: usize,
    seed: Option<u64>,
) -> Result<VerificationReport> {
    params.validate()?;
    let p_n = iterate_coeff(p, params.alpha, params.n)?;
    let lhs = sign.apply(p_n.evaluate_circle(r, grid)?.log_modulus()?);
    let rhs = sign.apply(generator_log_modulus(params, r, grid)?);
    star_report(name, &lhs, &rhs, params, seed, p.order())
}

/// `f'` against `p_{n-1} (f / z)^{1 - alpha}` coefficientwise for `k <= 40`.
pub fn check_identity3(member: &ClassMember) -> Result<VerificationReport> {
    let params = &member.params;
    if params.n == 0 {
        return Err(Error::Params("the derivative identity needs n >= 1".into()));
    }
    let prov = member
        .provenance
        .as_ref()
        .ok_or_else(|| Error::Invalid("member has no recorded generating function".into()))?;
    let lhs = member.f_prime();
    let p_prev = iterate_coeff(&prov.p, params.alpha, params.n - 1)?;
    let rhs = p_prev.mul(&member.g_series.pow_real(1.0 - params.alpha)?);
    let top = tolerance::IDENTITY_MAX_K.min(lhs.order()).min(rhs.order());
    let (worst_k, worst) = (0..=top)
        .map(|k| (k, (lhs.coeff(k) - rhs.coeff(k)).norm()))
        .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let tol = tolerance::IDENTITY_ABS;
    let mut report = VerificationReport::from_margin("identity3".into(), worst, tol, tol - worst, 0.0)
        .with_context(params, 0.0, member.seed(), member.order(), 0);
    report.phi = format!("coeff[k={worst_k}]");
    report.tol = tol;
    Ok(report)
}

/// Rotation angle of the extremal function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremalSpec {
    pub params: ClassParams,
    pub gamma: f64,
}

/// The member with `f^alpha / z^alpha = L_n(a, b; e^{i gamma} z)`, i.e. the
/// rotation `e^{-i gamma} f_0(e^{i gamma} z)` of the extremal `f_0`.
pub fn build_extremal(spec: &ExtremalSpec, order: usize) -> Result<ClassMember> {
    if !(-PI..PI).contains(&spec.gamma) {
        return Err(Error::Angle(spec.gamma));
    }
    let w = SchwarzFunction::rotation(spec.gamma, order)?;
    let cfg = SampleConfig { seed: 0, degree: 0, count: 1, params: spec.params, order };
    sample_member(&cfg, &w)
}

/// `(± log|f|)* <= (± log|k|)*` with `k` the Koebe function.
pub fn check_lemma2(member: &ClassMember, r: f64, sign: Sign, grid: usize) -> Result<VerificationReport> {
    member.params.validate()?;
    if member.params.n == 0 {
        return Err(Error::Params("the univalent comparison needs n >= 1".into()));
    }
    let log_r = r.ln();
    let lhs = member.g_series.evaluate_circle(r, grid)?.log_modulus()?.map(|v| v + log_r);
    let rhs = koebe_ratio_log_modulus(r, grid)?.map(|v| v + log_r);
    star_report(
        format!("lemma2[{sign}]"),
        &sign.apply(lhs),
        &sign.apply(rhs),
        &member.params,
        member.seed(),
        member.order(),
    )
}

/// `(g + h)* <= g* + h*`, with equality required when both inputs are
/// already symmetric decreasing.
pub fn check_lemma3(g: &CircleSamples<f64>, h: &CircleSamples<f64>) -> Result<VerificationReport> {
    let sum = g.add(h)?;
    let (sg, sh, ss) = (star_function(g), star_function(h), star_function(&sum));
    let aligned = rearrange_sym_decreasing(g) == *g && rearrange_sym_decreasing(h) == *h;
    let mut worst = (f64::NEG_INFINITY, 0.0, 0.0, 0.0);
    for k in 0..ss.len() {
        let bound = sg.values()[k] + sh.values()[k];
        let d = if aligned { (ss.values()[k] - bound).abs() } else { ss.values()[k] - bound };
        if d > worst.0 {
            worst = (d, ss.theta_grid()[k], ss.values()[k], bound);
        }
    }
    let tol = tolerance::SUBADDITIVITY_ABS;
    let name = if aligned { "lemma3[equality]" } else { "lemma3" };
    let mut report = VerificationReport::from_margin(name.into(), worst.2, worst.3, -worst.0, tol);
    report.r = g.radius();
    report.grid = g.len();
    report.phi = "star".into();
    report.witness_theta = Some(worst.1);
    Ok(report)
}

/// Membership of `f` through its geometric condition; `lhs = sup |w|`, `rhs = r`.
pub fn check_membership(member: &ClassMember, r: f64, grid: usize) -> Result<VerificationReport> {
    let s = membership_tn_on_grid(member, r, grid)?;
    let tol = r * SUBORDINATION_TOL;
    let mut report = VerificationReport::from_margin("membership_tn".into(), s.sup_modulus, r, r - s.sup_modulus, tol)
        .with_context(&member.params, r, member.seed(), member.order(), grid);
    report.pass = s.holds;
    report.phi = "subordination".into();
    report.witness_theta = Some(s.witness_theta);
    Ok(report)
}

/// Every check that applies to one member at one radius. The member is
/// re-expanded to the order `precision` requires for `r` first.
pub fn verify_member(
    member: &ClassMember,
    r: f64,
    precision: &Precision,
    family: &PhiFamily,
) -> Result<Vec<VerificationReport>> {
    let m = precision.resolve(member, r)?;
    let grid = precision.grid;
    let mut out = vec![check_membership(&m, r, grid)?];
    out.extend(theorem_reports(&m, r, grid, family, "")?);
    if let Some(prov) = &m.provenance {
        for sign in [Sign::Plus, Sign::Minus] {
            out.push(subordinate_star_check(
                format!("corollary1[{sign}]"),
                &prov.p,
                &m.params,
                r,
                sign,
                grid,
                m.seed(),
            )?);
        }
        out.push(subordinate_star_check("lemma4".into(), &prov.p, &m.params, r, Sign::Plus, grid, m.seed())?);
    }
    for sign in [Sign::Plus, Sign::Minus] {
        out.push(check_lemma2(&m, r, sign, grid)?);
    }
    Ok(out)
}

/// Named parameter specialisations of the inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParticularCase {
    /// `n = 1`, free `alpha`: majorant `L_0(a, b) (k/z)^{1-alpha}`.
    NEqualsOne,
    /// `alpha = 1`, free `n`: majorant `L_{n-1}(a, b)` alone.
    AlphaEqualsOne,
    /// `n = alpha = 1`: majorant `L_0(a, b)`.
    Both,
    /// `n = 1`, `(a, b) = (1, -1)`.
    Caratheodory,
}

impl ParticularCase {
    pub fn tag(self) -> &'static str {
        match self {
            Self::NEqualsOne => "case_i",
            Self::AlphaEqualsOne => "case_ii",
            Self::Both => "case_iii",
            Self::Caratheodory => "remark",
        }
    }

    /// Human-readable form of the reduced majorant.
    pub fn majorant(params: &ClassParams) -> &'static str {
        match (params.n, params.alpha == 1.0) {
            (1, true) => "log|L0(a,b)|",
            (1, false) => "log|L0(a,b)(k/z)^(1-alpha)|",
            (_, true) => "log|L_{n-1}(a,b)|",
            (_, false) => "log|L_{n-1}(a,b)(k/z)^(1-alpha)|",
        }
    }

    /// Parameter sets exercised for a given `(a, b)`.
    pub fn params(self, a: f64, b: f64) -> Result<Vec<ClassParams>> {
        match self {
            Self::NEqualsOne => [0.25, 0.5, 1.0].iter().map(|&al| ClassParams::new(al, 1, a, b)).collect(),
            Self::AlphaEqualsOne => (1..=3).map(|n| ClassParams::new(1.0, n, a, b)).collect(),
            Self::Both => Ok(vec![ClassParams::new(1.0, 1, a, b)?]),
            Self::Caratheodory => [0.5, 1.0].iter().map(|&al| ClassParams::new(al, 1, 1.0, -1.0)).collect(),
        }
    }

    pub const ALL: [ParticularCase; 4] =
        [Self::NEqualsOne, Self::AlphaEqualsOne, Self::Both, Self::Caratheodory];
}

/// Runs both inequalities on the extremal (`gamma = 0`) and on one random
/// member for every particular case. Check names carry the case tag and
/// the reduced majorant, e.g. `theorem1/case_ii/extremal[log|L_{n-1}(a,b)|]`.
pub fn run_particular_cases(
    a: f64,
    b: f64,
    r: f64,
    precision: &Precision,
    family: &PhiFamily,
    seed: u64,
) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for case in ParticularCase::ALL {
        for (i, params) in case.params(a, b)?.into_iter().enumerate() {
            let majorant = ParticularCase::majorant(&params);
            let extremal = build_extremal(&ExtremalSpec { params, gamma: 0.0 }, precision.order)?;
            let cfg = SampleConfig { seed, degree: 2, count: 1, params, order: precision.order };
            let random = member_from_seed(&cfg, cfg.member_seed(i))?;
            for (kind, member) in [("extremal", extremal), ("random", random)] {
                let m = precision.resolve(&member, r)?;
                let tag = format!("/{}/{kind}[{majorant}]", case.tag());
                out.extend(theorem_reports(&m, r, precision.grid, family, &tag)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::janowski_l0;
    use crate::sampling::draw_members;
    use num_complex::Complex64;

    fn quick() -> Precision {
        Precision { grid: 1024, ..Precision::default() }
    }

    #[test]
    fn extremal_equality_n_alpha_one() {
        let params = ClassParams::new(1.0, 1, 0.6, -0.8).unwrap();
        let p = quick();
        let f0 = p.resolve(&build_extremal(&ExtremalSpec { params, gamma: 0.0 }, 64).unwrap(), 0.9).unwrap();
        for phi in [ConvexTestFn::Linear, ConvexTestFn::exp(2.0).unwrap(), ConvexTestFn::hinge(0.1).unwrap()] {
            for report in [check_theorem1(&f0, 0.9, &phi, p.grid).unwrap(), check_theorem2(&f0, 0.9, &phi, p.grid).unwrap()] {
                assert!(report.margin.abs() < 1e-10, "{report:?}");
                assert!(report.pass);
            }
        }
    }

    #[test]
    fn identity_member_degenerate_case() {
        // f = z: both sides are 2 pi Phi(0) when alpha = 1 and L_{n-1} == 1 is
        // approached; here only the left side is exact.
        let params = ClassParams::new(1.0, 2, 0.5, 0.0).unwrap();
        let f = ClassMember { g_series: TruncatedSeries::one(32), params, provenance: None };
        let r = check_theorem1(&f, 0.5, &ConvexTestFn::exp(1.0).unwrap(), 256).unwrap();
        assert!((r.lhs - 2.0 * PI).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn theorem_rejects_out_of_range_params() {
        let params = ClassParams::new(1.5, 1, 0.5, 0.0).unwrap();
        let f = ClassMember { g_series: TruncatedSeries::one(8), params, provenance: None };
        assert!(check_theorem1(&f, 0.5, &ConvexTestFn::Linear, 64).is_err());
    }

    #[test]
    fn identity3_examples() {
        let params = ClassParams::new(0.5, 2, 0.7, -0.4).unwrap();
        let one = crate::operators::build_member(&TruncatedSeries::one(50), &params).unwrap();
        let report = check_identity3(&one).unwrap();
        assert!(report.pass && report.lhs < 1e-15);

        let cfg = SampleConfig { seed: 3, degree: 3, count: 4, params, order: 64 };
        for m in draw_members(&cfg).unwrap() {
            assert!(check_identity3(&m).unwrap().pass);
        }
        // alpha = 1: f' = p_{n-1}
        let params = ClassParams::new(1.0, 2, 0.7, -0.4).unwrap();
        let cfg = SampleConfig { params, ..cfg };
        let m = draw_members(&cfg).unwrap().remove(0);
        let p1 = iterate_coeff(&m.provenance.as_ref().unwrap().p, 1.0, 1).unwrap();
        let fp = m.f_prime();
        for k in 0..=40 {
            assert!((fp.coeff(k) - p1.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn extremal_antiderivative() {
        // gamma = 0, n = alpha = 1, (a, b) = (1, -1): f0 = -z - 2 log(1 - z)
        let params = ClassParams::new(1.0, 1, 1.0, -1.0).unwrap();
        let f0 = build_extremal(&ExtremalSpec { params, gamma: 0.0 }, 40).unwrap();
        let f = f0.f_series();
        assert!((f.coeff(1) - 1.0).norm() < 1e-15);
        for k in 2..=40 {
            assert!((f.coeff(k) - 2.0 / k as f64).norm() < 1e-14);
        }
        assert!(build_extremal(&ExtremalSpec { params, gamma: PI }, 8).is_err());
    }

    #[test]
    fn corollary_equality_for_generator() {
        let params = ClassParams::new(0.5, 2, 0.9, -0.3).unwrap();
        let l0 = janowski_l0(0.9, -0.3, 256).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let report = check_corollary1(&l0, &params, 0.8, sign, 1024).unwrap();
            assert!(report.pass);
            assert!(report.margin.abs() < 1e-12);
        }
    }

    #[test]
    fn lemma2_examples() {
        let params = ClassParams::new(1.0, 1, 1.0, -1.0).unwrap();
        let koebe = ClassMember {
            g_series: TruncatedSeries::from_fn(800, |k| Complex64::new(k as f64 + 1.0, 0.0)).unwrap(),
            params,
            provenance: None,
        };
        for sign in [Sign::Plus, Sign::Minus] {
            let rep = check_lemma2(&koebe, 0.6, sign, 512).unwrap();
            assert!(rep.pass && rep.margin.abs() < 1e-10, "{rep:?}");
        }
        let identity = ClassMember { g_series: TruncatedSeries::one(8), params, provenance: None };
        let rep = check_lemma2(&identity, 0.6, Sign::Plus, 512).unwrap();
        // tight only at theta = 0 and theta = pi (equal means)
        assert!(rep.pass && rep.margin.abs() < 1e-12);
        let log_f = CircleSamples::from_fn(0.6, 512, |_| 0.6f64.ln()).unwrap();
        let log_k = koebe_ratio_log_modulus(0.6, 512).unwrap().map(|v| v + 0.6f64.ln());
        let gap = star_function(&log_k).value_at(PI / 2.0) - star_function(&log_f).value_at(PI / 2.0);
        assert!(gap > 0.1);
    }

    #[test]
    fn lemma3_examples() {
        let g = CircleSamples::new(vec![0.4, -1.0, 2.0, 0.3, 0.0, 1.0], 0.5).unwrap();
        let rep = check_lemma3(&g, &g.negated()).unwrap();
        assert!(rep.pass && rep.check_name == "lemma3");
        let (gb, hb) = (rearrange_sym_decreasing(&g), rearrange_sym_decreasing(&g.map(|v| v * v)));
        let rep = check_lemma3(&gb, &hb).unwrap();
        assert_eq!(rep.check_name, "lemma3[equality]");
        assert!(rep.pass);
    }

    #[test]
    fn member_suite_passes() {
        let params = ClassParams::new(0.5, 2, 0.8, -0.6).unwrap();
        let cfg = SampleConfig { seed: 17, degree: 2, count: 2, params, order: 64 };
        let family = PhiFamily { hinge_points: 9, exp_rates: vec![1.0] };
        for m in draw_members(&cfg).unwrap() {
            for r in [0.3, 0.9] {
                let reports = verify_member(&m, r, &quick(), &family).unwrap();
                assert!(reports.iter().all(|rep| rep.pass), "{:?}", reports.iter().find(|r| !r.pass));
            }
        }
    }

    #[test]
    fn particular_cases_pass_and_tag_majorants() {
        let family = PhiFamily { hinge_points: 5, exp_rates: vec![1.0] };
        let reports = run_particular_cases(0.7, -0.5, 0.6, &quick(), &family, 5).unwrap();
        assert!(reports.iter().all(|r| r.pass));
        let case_iii: Vec<_> =
            reports.iter().filter(|r| r.check_name.contains("case_iii/extremal")).collect();
        assert!(!case_iii.is_empty());
        assert!(case_iii.iter().all(|r| r.margin.abs() < 1e-10));
        assert!(reports
            .iter()
            .filter(|r| r.check_name.contains("case_ii/"))
            .all(|r| r.check_name.contains("[log|L")));
        assert!(reports.iter().any(|r| r.check_name.starts_with("theorem2/remark")));
    }

    #[test]
    fn resolve_raises_order_at_large_radius() {
        let params = ClassParams::new(0.5, 1, 1.0, -1.0).unwrap();
        let cfg = SampleConfig { seed: 1, degree: 1, count: 1, params, order: 64 };
        let m = draw_members(&cfg).unwrap().remove(0);
        let p = Precision::default();
        assert_eq!(p.resolve(&m, 0.3).unwrap().order(), 64);
        let hi = p.resolve(&m, 0.9).unwrap();
        assert!(hi.order() > 64);
        assert!(hi.f_prime().tail_bound(0.9) <= p.tail_tol);
    }
}
