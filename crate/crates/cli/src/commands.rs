use rayon::prelude::*;
use starmeans::baernstein::{
    generator_log_modulus, majorant_samples, rearrange_sym_decreasing, star_function, CircleSamples, StarFunction,
};
use starmeans::operators::{janowski_ln, perturb_coefficient, ClassParams};
use starmeans::sampling::{member_from_seed, SampleConfig};
use starmeans::series::TruncatedSeries;
use starmeans::sweep::{run_point, SweepPoint, SweepRow};
use starmeans::verification::{
    check_identity3, check_lemma3, run_particular_cases, theorem_integrands, verify_member, Sign, VerificationReport,
};
use starmeans::Complex64;

use crate::config::{RunConfig, Scope};
use crate::table::{Cell, Table};
use crate::CliError;

/// Functions whose star function `cmd_star` can tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StarSelector {
    /// `log|f'|` for the extremal and the random members.
    Derivative,
    /// `log|L_n(a, b)|`.
    Generator,
    /// `log|L_{n-1}(a, b) (k/z)^{1-alpha}|`.
    Majorant,
    /// `cos(theta)`, whose star function is `2 sin(theta)`.
    Cos,
    /// The constant 1, whose star function is `2 theta`.
    Constant,
}

impl StarSelector {
    fn name(self) -> &'static str {
        match self {
            Self::Derivative => "log|f'|",
            Self::Generator => "log|L_n|",
            Self::Majorant => "majorant",
            Self::Cos => "cos",
            Self::Constant => "constant",
        }
    }
}

fn core_err(e: starmeans::Error) -> CliError {
    CliError::Numeric(e.to_string())
}

fn param_cells(p: &ClassParams) -> [Cell; 4] {
    [Cell::Float(p.alpha), Cell::Int(p.n.into()), Cell::Float(p.a), Cell::Float(p.b)]
}

/// Coefficients of `L_n`, `L_{n-1}` and the majorant series
/// `L_{n-1} (k/z)^{1-alpha}`, one row per `k` and parameter set.
pub fn cmd_series(cfg: &RunConfig) -> Result<Table, CliError> {
    cfg.validate(Scope::Class)?;
    let mut table = Table::new(&[
        "alpha", "n", "a", "b", "k", "re_ln", "im_ln", "re_prev", "im_prev", "re_majorant", "im_majorant",
    ]);
    let koebe_ratio = TruncatedSeries::from_fn(cfg.order, |k| Complex64::new(k as f64 + 1.0, 0.0)).map_err(core_err)?;
    for p in cfg.params() {
        let ln = janowski_ln(&p, cfg.order).map_err(core_err)?;
        let prev_and_majorant = if p.n >= 1 {
            let prev = janowski_ln(&p.with_n(p.n - 1), cfg.order).map_err(core_err)?;
            let majorant = prev.mul(&koebe_ratio.pow_real(1.0 - p.alpha).map_err(core_err)?);
            Some((prev, majorant))
        } else {
            None
        };
        for k in 0..=cfg.order {
            let mut row: Vec<Cell> = param_cells(&p).into();
            row.push(Cell::Int(k as u64));
            let c = ln.coeff(k);
            row.extend([Cell::Float(c.re), Cell::Float(c.im)]);
            match &prev_and_majorant {
                Some((prev, maj)) => {
                    let (c, d) = (prev.coeff(k), maj.coeff(k));
                    row.extend([c.re, c.im, d.re, d.im].map(Cell::Float));
                }
                None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]),
            }
            table.push(row);
        }
    }
    Ok(table)
}

/// Taylor coefficients `a_1 .. a_{N+1}` of the sampled members.
pub fn cmd_sample(cfg: &RunConfig) -> Result<Table, CliError> {
    cfg.validate(Scope::Class)?;
    let grid = cfg.sweep_grid();
    let mut table = Table::new(&["alpha", "n", "a", "b", "index", "seed", "degree", "k", "re_a", "im_a"]);
    let jobs: Vec<(usize, usize, ClassParams)> = cfg
        .params()
        .into_iter()
        .enumerate()
        .flat_map(|(pi, p)| (0..cfg.samples).map(move |i| (pi, i, p)))
        .collect();
    let members = jobs
        .par_iter()
        .map(|&(pi, i, params)| {
            let sc = SampleConfig { seed: cfg.seed, degree: cfg.degree, count: 1, params, order: cfg.order };
            member_from_seed(&sc, grid.member_seed(pi, i))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(core_err)?;
    for ((_, i, p), m) in jobs.iter().zip(&members) {
        let f = m.f_series();
        for k in 1..=f.order() {
            let mut row: Vec<Cell> = param_cells(p).into();
            let c = f.coeff(k);
            row.extend([
                Cell::Int(*i as u64),
                Cell::Int(m.seed().unwrap_or(0)),
                Cell::Int(cfg.degree as u64),
                Cell::Int(k as u64),
                Cell::Float(c.re),
                Cell::Float(c.im),
            ]);
            table.push(row);
        }
    }
    Ok(table)
}

fn push_star(table: &mut Table, function: &str, member: &str, p: Option<&ClassParams>, r: Option<f64>, seed: Option<u64>, star: &StarFunction) {
    for (&theta, &value) in star.theta_grid().iter().zip(star.values()) {
        let mut row = vec![Cell::from(function), Cell::from(member)];
        match p {
            Some(p) => row.extend(param_cells(p)),
            None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]),
        }
        row.push(r.map_or(Cell::Empty, Cell::Float));
        row.push(seed.map_or(Cell::Empty, Cell::Int));
        row.extend([Cell::Float(theta), Cell::Float(value)]);
        table.push(row);
    }
}

/// Star functions on `theta_k = k pi / M` for the selected function.
pub fn cmd_star(cfg: &RunConfig, selector: StarSelector) -> Result<Table, CliError> {
    let mut table = Table::new(&["function", "member", "alpha", "n", "a", "b", "r", "seed", "theta", "star"]);
    let name = selector.name();
    match selector {
        StarSelector::Cos | StarSelector::Constant => {
            if cfg.grid < 2 {
                return Err(CliError::Config(format!("grid size {} is too small", cfg.grid)));
            }
            let samples = CircleSamples::from_fn(1.0, cfg.grid, |t| match selector {
                StarSelector::Cos => t.cos(),
                _ => 1.0,
            })
            .map_err(core_err)?;
            push_star(&mut table, name, "", None, None, None, &star_function(&samples));
            return Ok(table);
        }
        _ => cfg.validate(Scope::Inequalities)?,
    }
    let precision = cfg.precision();
    match selector {
        StarSelector::Derivative => {
            let points = cfg.sweep_grid().points().map_err(core_err)?;
            let stars = points
                .par_iter()
                .map(|pt| {
                    let m = precision.resolve(&pt.member(precision.order)?, pt.r)?;
                    let (g, _) = theorem_integrands(&m, pt.r, cfg.grid, Sign::Plus)?;
                    Ok(star_function(&g))
                })
                .collect::<starmeans::Result<Vec<_>>>()
                .map_err(core_err)?;
            for (pt, star) in points.iter().zip(&stars) {
                push_star(&mut table, name, pt.label(), Some(&pt.params), Some(pt.r), Some(pt.seed()), star);
            }
        }
        _ => {
            let jobs: Vec<(ClassParams, f64)> =
                cfg.params().into_iter().flat_map(|p| cfg.radii.iter().map(move |&r| (p, r))).collect();
            let stars = jobs
                .par_iter()
                .map(|(p, r)| {
                    let g = if selector == StarSelector::Generator {
                        generator_log_modulus(p, *r, cfg.grid)?
                    } else {
                        majorant_samples(p, *r, cfg.grid)?
                    };
                    Ok(star_function(&g))
                })
                .collect::<starmeans::Result<Vec<_>>>()
                .map_err(core_err)?;
            for ((p, r), star) in jobs.iter().zip(&stars) {
                push_star(&mut table, name, "", Some(p), Some(*r), None, star);
            }
        }
    }
    Ok(table)
}

/// Sweep rows in grid order; points are evaluated in parallel.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>, CliError> {
    cfg.validate(Scope::Inequalities)?;
    let points = cfg.sweep_grid().points().map_err(core_err)?;
    let precision = cfg.precision();
    let family = cfg.family();
    let chunks = points
        .par_iter()
        .map(|pt| run_point(pt, &precision, &family))
        .collect::<starmeans::Result<Vec<_>>>()
        .map_err(core_err)?;
    Ok(chunks.into_iter().flatten().collect())
}

fn verify_point(
    cfg: &RunConfig,
    pt: &SweepPoint,
    perturb: Option<f64>,
) -> starmeans::Result<Vec<VerificationReport>> {
    let precision = cfg.precision();
    let mut member = precision.resolve(&pt.member(precision.order)?, pt.r)?;
    if let Some(delta) = perturb {
        member = perturb_coefficient(&member, 2, Complex64::new(delta, 0.0))?;
    }
    let mut reports = verify_member(&member, pt.r, &precision, &cfg.family())?;
    if pt.r == cfg.radii[0] {
        reports.push(check_identity3(&member)?);
    }
    let (g, h) = theorem_integrands(&member, pt.r, cfg.grid, Sign::Plus)?;
    reports.push(check_lemma3(&g, &h)?);
    reports.push(check_lemma3(&rearrange_sym_decreasing(&g), &rearrange_sym_decreasing(&h))?);
    Ok(reports)
}

/// The full suite: every member check over the grid, then the named
/// particular cases for each `(a, b)` and radius. `perturb` adds a real
/// offset to `a_2` of every grid member.
pub fn cmd_verify(cfg: &RunConfig, perturb: Option<f64>) -> Result<Vec<VerificationReport>, CliError> {
    cfg.validate(Scope::Inequalities)?;
    if perturb.is_some_and(|d| !d.is_finite()) {
        return Err(CliError::Config("perturbation must be finite".into()));
    }
    let points = cfg.sweep_grid().points().map_err(core_err)?;
    let mut reports: Vec<VerificationReport> = points
        .par_iter()
        .map(|pt| verify_point(cfg, pt, perturb))
        .collect::<starmeans::Result<Vec<_>>>()
        .map_err(core_err)?
        .into_iter()
        .flatten()
        .collect();
    let precision = cfg.precision();
    let family = cfg.family();
    let cases: Vec<(f64, f64, f64)> =
        cfg.janowski_pairs().into_iter().flat_map(|(a, b)| cfg.radii.iter().map(move |&r| (a, b, r))).collect();
    let case_reports = cases
        .par_iter()
        .map(|&(a, b, r)| run_particular_cases(a, b, r, &precision, &family, cfg.seed))
        .collect::<starmeans::Result<Vec<_>>>()
        .map_err(core_err)?;
    reports.extend(case_reports.into_iter().flatten());
    Ok(reports)
}
