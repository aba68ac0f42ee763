//! Star functions, symmetric decreasing rearrangements and integral means
//! of functions sampled on a circle `|z| = r`.
//!
//! For a real function `g` on `[-pi, pi]` the star function is
//! `g*(theta) = sup { int_E g : |E| = 2 theta }`. On a uniform grid of `M`
//! cells the supremum over unions of cells is attained by the `m` largest
//! samples, so `g*(m pi / M) = (2 pi / M) * (sum of the m largest values)`.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{janowski_ln, ClassParams};
use crate::series::{check_grid, check_radius, refine_order, DEFAULT_ORDER};

/// Smallest modulus accepted before taking a logarithm.
pub const MIN_MODULUS: f64 = 1e-300;

/// Truncation tolerance used when Janowski generators are evaluated on a circle.
pub const GENERATOR_TAIL_TOL: f64 = 1e-15;

/// Order cap for adaptively refined series.
pub const MAX_ORDER: usize = 1 << 14;

/// Values of a function on the grid `theta_j = -pi + 2 pi j / M`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleSamples<T = f64> {
    values: Vec<T>,
    radius: f64,
}

impl<T> CircleSamples<T> {
    pub fn new(values: Vec<T>, radius: f64) -> Result<Self> {
        check_grid(values.len())?;
        Ok(Self { values, radius })
    }

    pub fn from_fn(radius: f64, m: usize, mut f: impl FnMut(f64) -> T) -> Result<Self> {
        check_grid(m)?;
        let values = (0..m).map(|j| f(grid_theta(j, m))).collect();
        Ok(Self { values, radius })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cell width `2 pi / M`.
    pub fn step(&self) -> f64 {
        2.0 * PI / self.values.len() as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        grid_theta(j, self.values.len())
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|j| self.theta(j))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> CircleSamples<U> {
        CircleSamples { values: self.values.iter().map(f).collect(), radius: self.radius }
    }

    fn same_grid<U>(&self, other: &CircleSamples<U>) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::GridMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }
}

fn grid_theta(j: usize, m: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / m as f64
}

impl CircleSamples<Complex64> {
    /// `log |v|` samples; a modulus below [`MIN_MODULUS`] is a hard error.
    pub fn log_modulus(&self) -> Result<CircleSamples<f64>> {
        let mut out = Vec::with_capacity(self.len());
        for (j, v) in self.values.iter().enumerate() {
            let m = v.norm();
            if !m.is_finite() {
                return Err(Error::NonFinite { index: j });
            }
            if m < MIN_MODULUS {
                return Err(Error::ZeroOnGrid { theta: self.theta(j) });
            }
            out.push(m.ln());
        }
        Ok(CircleSamples { values: out, radius: self.radius })
    }
}

impl CircleSamples<f64> {
    pub fn negated(&self) -> Self {
        self.map(|v| -v)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|v| v * factor)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { values, radius: self.radius })
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Trapezoid integral over the period.
    pub fn integral(&self) -> f64 {
        self.step() * self.values.iter().sum::<f64>()
    }

    /// CSV with columns `theta,value`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        crate::report::write_curve_csv(out, self.thetas().zip(self.values.iter().copied()))
    }
}

/// Discretised star function on `theta_k = k pi / M`, `k = 0..=M`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarFunction {
    theta_grid: Vec<f64>,
    values: Vec<f64>,
}

impl StarFunction {
    pub fn theta_grid(&self) -> &[f64] {
        &self.theta_grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Linear interpolation at `theta` in `[0, pi]` (clamped).
    pub fn value_at(&self, theta: f64) -> f64 {
        let k_max = self.values.len() - 1;
        let x = (theta.clamp(0.0, PI) / PI) * k_max as f64;
        let k = (x.floor() as usize).min(k_max - 1);
        let frac = x - k as f64;
        self.values[k] * (1.0 - frac) + self.values[k + 1] * frac
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        crate::report::write_curve_csv(
            out,
            self.theta_grid.iter().copied().zip(self.values.iter().copied()),
        )
    }
}

/// Convex nondecreasing test functions `Phi` on the real line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConvexTestFn {
    /// `max(x - t, 0)`
    Hinge { t: f64 },
    /// `exp(lambda x)`, `lambda > 0`
    Exp { lambda: f64 },
    /// `x`
    Linear,
}

impl ConvexTestFn {
    pub fn hinge(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Invalid(format!("hinge threshold {t} is not finite")));
        }
        Ok(Self::Hinge { t })
    }

    pub fn exp(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Invalid(format!("exp rate {lambda} must be positive")));
        }
        Ok(Self::Exp { lambda })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Self::Hinge { t } => (x - t).max(0.0),
            Self::Exp { lambda } => (lambda * x).exp(),
            Self::Linear => x,
        }
    }
}

impl fmt::Display for ConvexTestFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hinge { t } => write!(f, "hinge({t:.16e})"),
            Self::Exp { lambda } => write!(f, "exp({lambda})"),
            Self::Linear => write!(f, "linear"),
        }
    }
}

/// `count` hinge functions with thresholds evenly spaced on `[lo, hi]`.
pub fn hinge_family(lo: f64, hi: f64, count: usize) -> Vec<ConvexTestFn> {
    match count {
        0 => Vec::new(),
        1 => vec![ConvexTestFn::Hinge { t: lo }],
        _ => (0..count)
            .map(|i| ConvexTestFn::Hinge { t: lo + (hi - lo) * i as f64 / (count - 1) as f64 })
            .collect(),
    }
}

pub fn star_function(g: &CircleSamples<f64>) -> StarFunction {
    let m = g.len();
    let mut sorted = g.values().to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let step = g.step();
    let mut values = Vec::with_capacity(m + 1);
    let mut acc = 0.0;
    values.push(0.0);
    for v in sorted {
        acc += v;
        values.push(step * acc);
    }
    let theta_grid = (0..=m).map(|k| PI * k as f64 / m as f64).collect();
    StarFunction { theta_grid, values }
}

/// Grid indices ordered by distance from `theta = 0`, positive side first
/// within each pair; `theta = -pi` comes last.
fn symmetric_positions(m: usize) -> impl Iterator<Item = usize> {
    let mid = m / 2;
    std::iter::once(mid)
        .chain((1..mid).flat_map(move |d| [mid + d, mid - d]))
        .chain(std::iter::once(0))
}

/// Equimeasurable rearrangement that is largest at `theta = 0` and
/// nonincreasing in `|theta|`. Paired grid points `+-theta` receive adjacent
/// sorted values, the larger on the positive side.
pub fn rearrange_sym_decreasing(g: &CircleSamples<f64>) -> CircleSamples<f64> {
    let mut sorted = g.values().to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut values = vec![0.0; g.len()];
    for (pos, v) in symmetric_positions(g.len()).zip(sorted) {
        values[pos] = v;
    }
    CircleSamples { values, radius: g.radius() }
}

/// `int_{-pi}^{pi} Phi(g(theta)) d theta` by the periodic trapezoid rule.
pub fn integral_mean(g: &CircleSamples<f64>, phi: &ConvexTestFn) -> f64 {
    let step = g.step();
    match *phi {
        ConvexTestFn::Exp { lambda } if lambda * g.max() > 600.0 => {
            let top = lambda * g.max();
            let rest: f64 = g.values().iter().map(|v| (lambda * v - top).exp()).sum();
            (top + (step * rest).ln()).exp()
        }
        _ => step * g.values().iter().map(|&v| phi.eval(v)).sum::<f64>(),
    }
}

/// `log |L_{n-1}(a, b; z) (k(z) / z)^{1 - alpha}|` on `|z| = r`, where
/// `k(z) = z / (1 - z)^2` is the Koebe function.
pub fn majorant_samples(params: &ClassParams, r: f64, m: usize) -> Result<CircleSamples<f64>> {
    params.validate()?;
    if params.n == 0 {
        return Err(Error::Params("the majorant needs n >= 1".into()));
    }
    check_radius(r)?;
    check_grid(m)?;
    let generator = generator_log_modulus(&params.with_n(params.n - 1), r, m)?;
    let koebe_exponent = 1.0 - params.alpha;
    if koebe_exponent == 0.0 {
        return Ok(generator);
    }
    let koebe = koebe_ratio_log_modulus(r, m)?;
    generator.add(&koebe.scaled(koebe_exponent))
}

/// `log |L_n(a, b; z)|` on `|z| = r`; closed form for `n = 0`.
pub fn generator_log_modulus(params: &ClassParams, r: f64, m: usize) -> Result<CircleSamples<f64>> {
    params.validate()?;
    if params.n == 0 {
        let (a, b) = (params.a, params.b);
        return CircleSamples::from_fn(r, m, |theta| {
            let z = Complex64::from_polar(r, theta);
            ((1.0 + a * z) / (1.0 + b * z)).norm().ln()
        });
    }
    let series = refine_order(DEFAULT_ORDER, MAX_ORDER, r, GENERATOR_TAIL_TOL, |order| {
        janowski_ln(params, order)
    })?;
    series.evaluate_circle(r, m)?.log_modulus()
}

/// `log |k(z) / z| = -2 log |1 - z|` on `|z| = r`.
pub fn koebe_ratio_log_modulus(r: f64, m: usize) -> Result<CircleSamples<f64>> {
    CircleSamples::from_fn(r, m, |theta| -2.0 * (Complex64::new(1.0, 0.0) - Complex64::from_polar(r, theta)).norm().ln())
}

/// Outcome of a pointwise star-function comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domination {
    pub holds: bool,
    /// `max_theta (lhs - rhs)`; nonpositive when the domination is clean.
    pub max_violation: f64,
    pub theta: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Checks `lhs(theta) <= rhs(theta) + tol` on the common grid.
pub fn star_dominates(lhs: &StarFunction, rhs: &StarFunction, tol: f64) -> Result<Domination> {
    if lhs.len() != rhs.len() {
        return Err(Error::GridMismatch { left: lhs.len(), right: rhs.len() });
    }
    let mut worst = Domination {
        holds: true,
        max_violation: f64::NEG_INFINITY,
        theta: 0.0,
        lhs: 0.0,
        rhs: 0.0,
    };
    for k in 0..lhs.len() {
        let d = lhs.values[k] - rhs.values[k];
        if d > worst.max_violation {
            worst = Domination {
                holds: true,
                max_violation: d,
                theta: lhs.theta_grid[k],
                lhs: lhs.values[k],
                rhs: rhs.values[k],
            };
        }
    }
    worst.holds = worst.max_violation <= tol;
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn samples(values: &[f64]) -> CircleSamples<f64> {
        CircleSamples::new(values.to_vec(), 0.5).unwrap()
    }

    /// Maximum over all subsets of size `m` of the sum, by enumeration.
    fn brute_force_star(values: &[f64]) -> Vec<f64> {
        let m = values.len();
        let mut best = vec![f64::NEG_INFINITY; m + 1];
        for mask in 0u32..(1 << m) {
            let size = mask.count_ones() as usize;
            let sum: f64 = (0..m).filter(|&i| mask & (1 << i) != 0).map(|i| values[i]).sum();
            best[size] = best[size].max(sum);
        }
        let step = 2.0 * PI / m as f64;
        best.into_iter().map(|s| s * step).collect()
    }

    #[test]
    fn constant_star_is_linear() {
        let g = samples(&[1.5; 8]);
        let star = star_function(&g);
        for (theta, v) in star.theta_grid().iter().zip(star.values()) {
            assert!((v - 2.0 * theta * 1.5).abs() < 1e-14);
        }
    }

    #[test]
    fn four_point_example() {
        let star = star_function(&samples(&[3.0, 1.0, 2.0, 0.0]));
        let half_pi = PI / 2.0;
        assert!((star.value_at(PI / 4.0) - 3.0 * half_pi).abs() < 1e-14);
        assert!((star.value_at(PI) - 6.0 * half_pi).abs() < 1e-14);
        assert_eq!(star.values()[0], 0.0);
        assert_eq!(star.values(), brute_force_star(&[3.0, 1.0, 2.0, 0.0]).as_slice());
    }

    #[test]
    fn star_matches_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [4, 8, 12] {
            let v: Vec<f64> = (0..m).map(|_| rng.random_range(-2.0..2.0)).collect();
            let star = star_function(&samples(&v));
            let brute = brute_force_star(&v);
            for (a, b) in star.values().iter().zip(&brute) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cosine_star_converges() {
        let g = CircleSamples::from_fn(0.5, 4096, f64::cos).unwrap();
        let star = star_function(&g);
        let err = star
            .theta_grid()
            .iter()
            .zip(star.values())
            .map(|(t, v)| (v - 2.0 * t.sin()).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-5, "max error {err}");
    }

    #[test]
    fn rearrangement_examples() {
        let g = samples(&[3.0, 1.0, 2.0, 0.0]);
        let bar = rearrange_sym_decreasing(&g);
        // positions: theta=0 (j=2), theta=pi/2 (j=3), theta=-pi/2 (j=1), theta=-pi (j=0)
        assert_eq!(bar.values(), &[0.0, 1.0, 3.0, 2.0]);
        assert_eq!(rearrange_sym_decreasing(&bar), bar);
        assert_eq!(star_function(&bar), star_function(&g));
    }

    #[test]
    fn rearrangement_integrates_to_star() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = 64;
        let g = samples(&(0..m).map(|_| rng.random_range(-1.0..1.0)).collect::<Vec<_>>());
        let bar = rearrange_sym_decreasing(&g);
        let star = star_function(&g);
        // cells around theta = 0 in order of distance
        let mut acc = 0.0;
        for (count, pos) in symmetric_positions(m).enumerate() {
            acc += bar.values()[pos] * g.step();
            assert!((acc - star.values()[count + 1]).abs() < 1e-12);
        }
    }

    #[test]
    fn integral_mean_examples() {
        let g = samples(&[0.7; 16]);
        assert!((integral_mean(&g, &ConvexTestFn::Linear) - 2.0 * PI * 0.7).abs() < 1e-14);
        assert_eq!(integral_mean(&g, &ConvexTestFn::hinge(1.0).unwrap()), 0.0);
        assert!(ConvexTestFn::exp(0.0).is_err());
        let big = samples(&[700.0, 0.0, 0.0, 0.0]);
        let v = integral_mean(&big, &ConvexTestFn::exp(1.0).unwrap());
        assert!(((v.ln() - 700.0) - (PI / 2.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn koebe_derivative_mean_against_refined_grid() {
        // log |k'| with k'(z) = (1 + z) / (1 - z)^3 at r = 0.5, Phi = exp(1).
        let r = 0.5;
        let log_kp = |m: usize| {
            CircleSamples::from_fn(r, m, |t| {
                let z = Complex64::from_polar(r, t);
                ((1.0 + z) / (1.0 - z).powi(3)).norm().ln()
            })
            .unwrap()
        };
        let phi = ConvexTestFn::exp(1.0).unwrap();
        let reference = integral_mean(&log_kp(256), &phi);
        let fine = integral_mean(&log_kp(4096), &phi);
        assert!((fine - reference).abs() < 1e-9);
        // sum_k (k^2 r^{k-1})^2 * 2pi is the L^2 mean; here check the L^1 mean is sane
        assert!(reference > 2.0 * PI);
    }

    #[test]
    fn log_modulus_rejects_zero() {
        let s = CircleSamples::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)], 0.5)
            .unwrap();
        assert!(matches!(s.log_modulus(), Err(Error::ZeroOnGrid { .. })));
    }

    #[test]
    fn majorant_reductions() {
        let r = 0.6;
        let m = 256;
        // alpha = 1: log |L_{n-1}|
        let p = ClassParams::new(1.0, 2, 0.8, -0.3).unwrap();
        let maj = majorant_samples(&p, r, m).unwrap();
        let gen = generator_log_modulus(&p.with_n(1), r, m).unwrap();
        assert_eq!(maj, gen);
        // n = alpha = 1: closed form log |(1 + a z) / (1 + b z)|
        let p = ClassParams::new(1.0, 1, 0.8, -0.3).unwrap();
        let maj = majorant_samples(&p, r, m).unwrap();
        for (t, v) in maj.thetas().zip(maj.values()) {
            let z = Complex64::from_polar(r, t);
            assert!((v - ((1.0 + 0.8 * z) / (1.0 - 0.3 * z)).norm().ln()).abs() < 1e-14);
        }
        assert!(majorant_samples(&ClassParams::new(1.0, 0, 0.8, -0.3).unwrap(), r, m).is_err());
    }

    #[test]
    fn koebe_identity() {
        // log|k'| - log|L0(1,-1)| = log|k/z|
        let (r, m) = (0.7, 128);
        let koebe = koebe_ratio_log_modulus(r, m).unwrap();
        for (t, v) in koebe.thetas().zip(koebe.values()) {
            let z = Complex64::from_polar(r, t);
            let kp = (1.0 + z) / (1.0 - z).powi(3);
            let l0 = (1.0 + z) / (1.0 - z);
            assert!((kp.norm().ln() - l0.norm().ln() - v).abs() < 1e-12);
        }
    }

    #[test]
    fn domination_examples() {
        let g = samples(&[0.3, -1.0, 2.0, 0.5, 0.0, 1.0]);
        let sg = star_function(&g);
        let d = star_dominates(&sg, &sg, 0.0).unwrap();
        assert!(d.holds);
        assert_eq!(d.max_violation, 0.0);

        let h = g.map(|v| v + 0.25);
        assert!(star_dominates(&sg, &star_function(&h), 0.0).unwrap().holds);
        assert!(!star_dominates(&star_function(&h), &sg, 1e-6).unwrap().holds);

        let shuffled = samples(&[1.0, 0.0, 0.5, 2.0, -1.0, 0.3]);
        let ss = star_function(&shuffled);
        assert!(star_dominates(&sg, &ss, 1e-12).unwrap().holds);
        assert!(star_dominates(&ss, &sg, 1e-12).unwrap().holds);

        let other = star_function(&samples(&[0.0; 4]));
        assert!(matches!(star_dominates(&sg, &other, 0.0), Err(Error::GridMismatch { .. })));
    }

    fn arb_samples(m: usize) -> impl Strategy<Value = CircleSamples<f64>> {
        prop::collection::vec(-3.0..3.0f64, m).prop_map(|v| CircleSamples::new(v, 0.5).unwrap())
    }

    proptest! {
        #[test]
        fn star_endpoints_and_concavity(g in arb_samples(32)) {
            let star = star_function(&g);
            prop_assert_eq!(star.values()[0], 0.0);
            prop_assert!((star.values()[32] - g.integral()).abs() < 1e-12);
            for w in star.values().windows(3) {
                prop_assert!(w[2] - 2.0 * w[1] + w[0] <= 1e-12);
            }
        }

        #[test]
        fn star_is_rearrangement_invariant(g in arb_samples(24), rot in 0usize..24) {
            let mut v = g.values().to_vec();
            v.rotate_left(rot);
            v.reverse();
            let permuted = CircleSamples::new(v, 0.5).unwrap();
            let a = star_function(&g);
            let b = star_function(&permuted);
            for (x, y) in a.values().iter().zip(b.values()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
            let bar = rearrange_sym_decreasing(&g);
            for (x, y) in a.values().iter().zip(star_function(&bar).values()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }

        #[test]
        fn star_domination_implies_mean_inequality(g in arb_samples(32), shift in 0.0..0.5f64, h0 in arb_samples(32)) {
            // h is g raised by a nonnegative bump so that h* >= g*
            let h = g.add(&h0.map(|v| shift * v.abs())).unwrap();
            let (sg, sh) = (star_function(&g), star_function(&h));
            prop_assume!(star_dominates(&sg, &sh, 1e-12).unwrap().holds);
            let lo = g.min().min(h.min()) - 1.0;
            let hi = g.max().max(h.max()) + 1.0;
            let mut phis = hinge_family(lo, hi, 41);
            phis.extend([0.5, 1.0, 2.0].map(|l| ConvexTestFn::exp(l).unwrap()));
            for phi in phis {
                let (a, b) = (integral_mean(&g, &phi), integral_mean(&h, &phi));
                prop_assert!(a <= b + 1e-10 * (1.0 + b.abs()));
            }
        }
    }
}
