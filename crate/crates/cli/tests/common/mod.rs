//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use starmeans::operators::ClassParams;
use starmeans::sampling::derive_seed;
use starmeans::Complex64;

/// Deterministic uniform draws in `[0, 1)` from a seed.
pub struct Draws {
    seed: u64,
    index: usize,
}

impl Draws {
    pub fn new(seed: u64) -> Self {
        Self { seed, index: 0 }
    }

    pub fn next_f64(&mut self) -> f64 {
        self.index += 1;
        (derive_seed(self.seed, self.index) >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn int(&mut self, lo: u32, hi_inclusive: u32) -> u32 {
        lo + ((hi_inclusive - lo + 1) as f64 * self.next_f64()) as u32
    }

    /// `-1 <= b < a <= 1`, with the endpoints `a = 1`, `b = -1` drawn now and then.
    pub fn janowski_pair(&mut self) -> (f64, f64) {
        let b = if self.next_f64() < 0.2 { -1.0 } else { self.range(-1.0, 0.9) };
        let a = if self.next_f64() < 0.2 { 1.0 } else { self.range(b + 0.05, 1.0) };
        (a, b)
    }

    /// Parameters in the range where the inequalities hold: `0 < alpha <= 1`, `n >= 1`.
    pub fn theorem_params(&mut self) -> ClassParams {
        let alpha = if self.next_f64() < 0.2 { 1.0 } else { self.range(0.05, 1.0) };
        let n = self.int(1, 3);
        let (a, b) = self.janowski_pair();
        ClassParams::new(alpha, n, a, b).unwrap()
    }

    /// A point with `|z| <= rho_max`, uniform in the disk.
    pub fn disk_point(&mut self, rho_max: f64) -> Complex64 {
        let rho = rho_max * self.next_f64().sqrt();
        Complex64::from_polar(rho, self.range(-std::f64::consts::PI, std::f64::consts::PI))
    }
}

/// Gauss-Legendre nodes and weights on `[0, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = 0.5 * (1.0 - x);
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// `L_n(a, b; z)` from the defining integral
/// `L_n(z) = int_0^1 alpha u^(alpha - 1) L_{n-1}(u z) du`, applied recursively
/// down to `L_0 = (1 + a z) / (1 + b z)`. The substitution `u = t^(4 / alpha)`
/// turns the weight into `4 t^3` and removes the endpoint singularity.
pub fn janowski_by_quadrature(params: &ClassParams, z: Complex64, rule: &(Vec<f64>, Vec<f64>)) -> Complex64 {
    fn level(params: &ClassParams, n: u32, z: Complex64, rule: &(Vec<f64>, Vec<f64>)) -> Complex64 {
        if n == 0 {
            return (1.0 + params.a * z) / (1.0 + params.b * z);
        }
        let p = 4.0 / params.alpha;
        rule.0
            .iter()
            .zip(&rule.1)
            .map(|(&t, &w)| w * 4.0 * t.powi(3) * level(params, n - 1, z * t.powf(p), rule))
            .sum()
    }
    level(params, params.n, z, rule)
}

/// `max_{|E| = k} sum_{j in E} g_j * step` by enumerating every subset.
pub fn brute_force_star(values: &[f64], step: f64) -> Vec<f64> {
    let m = values.len();
    let mut best = vec![f64::NEG_INFINITY; m + 1];
    for mask in 0u32..(1 << m) {
        let k = mask.count_ones() as usize;
        let sum: f64 = (0..m).filter(|j| mask & (1 << j) != 0).map(|j| values[j]).sum();
        best[k] = best[k].max(sum * step);
    }
    best
}
