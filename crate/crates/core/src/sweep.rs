//! Parameter sweeps of the integral-means inequalities.
//!
//! A sweep expands a parameter grid into independent [`SweepPoint`]s. Points
//! can be evaluated in any order or in parallel; concatenating their rows in
//! point order gives the canonical output.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{ClassMember, ClassParams};
use crate::report::fmt_f64;
use crate::sampling::{derive_seed, member_from_seed, SampleConfig, MAX_DEFAULT_DEGREE};
use crate::verification::{build_extremal, theorem_reports, ExtremalSpec, PhiFamily, Precision};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub alphas: Vec<f64>,
    pub ns: Vec<u32>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub radii: Vec<f64>,
    /// Random members per parameter combination.
    pub samples: usize,
    pub degree: usize,
    pub seed: u64,
    /// Adds the extremal member (`gamma = 0`) for every combination.
    pub include_extremal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MemberSource {
    Extremal,
    Random { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub params: ClassParams,
    pub r: f64,
    pub degree: usize,
    pub member: MemberSource,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub case: &'static str,
    pub member: &'static str,
    pub check: String,
    pub alpha: f64,
    pub n: u32,
    pub a: f64,
    pub b: f64,
    pub r: f64,
    pub phi: String,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

pub const SWEEP_COLUMNS: [&str; 14] =
    ["case", "member", "check", "alpha", "n", "a", "b", "r", "phi", "seed", "lhs", "rhs", "margin", "pass"];

/// Particular-case tag of a parameter set.
pub fn case_tag(params: &ClassParams) -> &'static str {
    match (params.n, params.alpha == 1.0) {
        (1, true) => "case_iii",
        (1, false) => "case_i",
        (_, true) => "case_ii",
        _ => "general",
    }
}

impl SweepGrid {
    /// Cross product of the parameter lists; every combination must lie in
    /// the range where the inequalities are stated.
    pub fn params(&self) -> Result<Vec<ClassParams>> {
        if self.alphas.is_empty() || self.ns.is_empty() || self.a.is_empty() || self.b.is_empty() {
            return Err(Error::Invalid("parameter grid is empty".into()));
        }
        if self.radii.is_empty() {
            return Err(Error::Invalid("no radii given".into()));
        }
        let mut out = Vec::new();
        for &alpha in &self.alphas {
            for &n in &self.ns {
                for &a in &self.a {
                    for &b in &self.b {
                        let p = ClassParams::new(alpha, n, a, b)?;
                        p.validate_theorem_range()?;
                        out.push(p);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Seed of the `i`-th random member of the `param_index`-th combination.
    pub fn member_seed(&self, param_index: usize, i: usize) -> u64 {
        derive_seed(self.seed, param_index * self.samples + i)
    }

    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        let params = self.params()?;
        if self.degree > MAX_DEFAULT_DEGREE {
            return Err(Error::Invalid(format!("Blaschke degree {} exceeds {MAX_DEFAULT_DEGREE}", self.degree)));
        }
        let mut points = Vec::new();
        for (pi, p) in params.iter().enumerate() {
            for &r in &self.radii {
                let mut push = |member| points.push(SweepPoint { params: *p, r, degree: self.degree, member });
                if self.include_extremal {
                    push(MemberSource::Extremal);
                }
                for i in 0..self.samples {
                    push(MemberSource::Random { seed: self.member_seed(pi, i) });
                }
            }
        }
        Ok(points)
    }
}

impl SweepPoint {
    pub fn label(&self) -> &'static str {
        match self.member {
            MemberSource::Extremal => "extremal",
            MemberSource::Random { .. } => "random",
        }
    }

    pub fn seed(&self) -> u64 {
        match self.member {
            MemberSource::Extremal => 0,
            MemberSource::Random { seed } => seed,
        }
    }

    /// The member at truncation order `order`.
    pub fn member(&self, order: usize) -> Result<ClassMember> {
        match self.member {
            MemberSource::Extremal => build_extremal(&ExtremalSpec { params: self.params, gamma: 0.0 }, order),
            MemberSource::Random { seed } => {
                let cfg = SampleConfig { seed: 0, degree: self.degree, count: 1, params: self.params, order };
                member_from_seed(&cfg, seed)
            }
        }
    }
}

pub fn run_point(point: &SweepPoint, precision: &Precision, family: &PhiFamily) -> Result<Vec<SweepRow>> {
    let params = point.params;
    let (label, seed) = (point.label(), point.seed());
    let member = precision.resolve(&point.member(precision.order)?, point.r)?;
    let reports = theorem_reports(&member, point.r, precision.grid, family, "")?;
    Ok(reports
        .into_iter()
        .map(|rep| SweepRow {
            case: case_tag(&params),
            member: label,
            check: rep.check_name,
            alpha: params.alpha,
            n: params.n,
            a: params.a,
            b: params.b,
            r: point.r,
            phi: rep.phi,
            seed,
            lhs: rep.lhs,
            rhs: rep.rhs,
            margin: rep.margin,
            pass: rep.pass,
        })
        .collect())
}

/// Evaluates every point in order.
pub fn run_sweep(grid: &SweepGrid, precision: &Precision, family: &PhiFamily) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for point in grid.points()? {
        rows.extend(run_point(&point, precision, family)?);
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let err = |e: csv::Error| Error::Invalid(format!("csv output failed: {e}"));
    w.write_record(SWEEP_COLUMNS).map_err(err)?;
    for r in rows {
        w.write_record([
            r.case.to_string(),
            r.member.to_string(),
            r.check.clone(),
            fmt_f64(r.alpha),
            r.n.to_string(),
            fmt_f64(r.a),
            fmt_f64(r.b),
            fmt_f64(r.r),
            r.phi.clone(),
            r.seed.to_string(),
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.margin),
            r.pass.to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("write failed: {e}")))
}
