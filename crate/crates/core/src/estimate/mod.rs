//! Matching-distance estimation by the foliation method.
//!
//! The naive estimator scans a rectangle of filtering-line parameters; the
//! reduced estimator evaluates only the slope-1 segment plus the sampled
//! candidate set `U`, which by the realizer characterisation suffices to
//! attain the distance. The verification harness runs both and checks the
//! reduction never loses value.

mod report;

pub use report::{load_report, parse_report, save_report, write_report};

use rayon::prelude::*;

use crate::complex::{
    component_sup_norms, compute_diagram_with, sup_norm_difference, BifilteredComplex,
    ReductionScratch,
};
use crate::diagram::bottleneck;
use crate::error::{Error, Result};
use crate::geometry::{ExtendedReal, LineParam};
use crate::grid::ExtendedParetoGrid;
use crate::special::{assemble_u, CandidatePoint, GridPair, ParamRegion};

/// `C̄`: the largest vertex-value max-norm over both complexes; the matching
/// distance is realised with `|b| ≤ C̄`.
pub fn compute_cbar(cx1: &BifilteredComplex, cx2: &BifilteredComplex) -> f64 {
    let norm = |cx: &BifilteredComplex| {
        cx.values()
            .iter()
            .map(|&(a, b)| a.abs().max(b.abs()))
            .fold(0.0f64, f64::max)
    };
    norm(cx1).max(norm(cx2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMethod {
    Naive,
    Reduced,
}

impl EstimateMethod {
    pub fn label(&self) -> &'static str {
        match self {
            EstimateMethod::Naive => "naive",
            EstimateMethod::Reduced => "reduced",
        }
    }
}

/// Estimator parameters. `cbar` must dominate both inputs' sup norms;
/// `epsilon_boundary` is the margin excluded around `a ∈ {0,1}` in the naive
/// scan (the open strip suffices; boundary behaviour is checked separately).
#[derive(Clone, Debug)]
pub struct EstimatorConfig {
    pub cbar: f64,
    pub resolution_a: usize,
    pub resolution_b: usize,
    /// Comparison tolerance for verification checks.
    pub tol: f64,
    pub epsilon_boundary: f64,
    /// Restrict comparisons to a single homology degree.
    pub degree: Option<usize>,
    /// Lattice for the special/curve-set scans of the reduced estimator.
    pub special_resolution: (usize, usize),
    /// Residual tolerance for special-witness detection.
    pub special_tol: f64,
}

impl EstimatorConfig {
    /// Defaults sized for desk-scale experiments, with `cbar` computed from
    /// the inputs.
    pub fn for_complexes(cx1: &BifilteredComplex, cx2: &BifilteredComplex) -> Self {
        EstimatorConfig {
            cbar: compute_cbar(cx1, cx2),
            resolution_a: 64,
            resolution_b: 64,
            tol: 1e-3,
            epsilon_boundary: 0.01,
            degree: None,
            special_resolution: (48, 48),
            special_tol: 1e-6,
        }
    }

    pub fn validate(&self, cx1: &BifilteredComplex, cx2: &BifilteredComplex) -> Result<()> {
        let needed = compute_cbar(cx1, cx2);
        if self.cbar < needed {
            return Err(Error::InvalidConfig(format!(
                "cbar = {} is below the inputs' sup norm {}",
                self.cbar, needed
            )));
        }
        if self.resolution_a < 2 || self.resolution_b < 2 {
            return Err(Error::InvalidConfig(format!(
                "resolutions ({}, {}) must be at least 2",
                self.resolution_a, self.resolution_b
            )));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.tol) || !positive(self.special_tol) {
            return Err(Error::InvalidConfig("tolerances must be positive".to_string()));
        }
        if !(self.epsilon_boundary > 0.0 && self.epsilon_boundary < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "boundary margin {} outside ]0, 1/2[",
                self.epsilon_boundary
            )));
        }
        Ok(())
    }
}

/// Bottleneck cost of one filtering line, per compared degree and overall.
#[derive(Clone, Debug)]
pub struct LineCost {
    pub line: LineParam,
    pub per_degree: Vec<(usize, ExtendedReal)>,
    pub cost: ExtendedReal,
}

/// Estimator output: the distance estimate with its realizer and the whole
/// per-line profile.
#[derive(Clone, Debug)]
pub struct EstimateReport {
    pub value: ExtendedReal,
    pub realizer: LineParam,
    pub per_line: Vec<LineCost>,
    pub method: EstimateMethod,
    /// First line whose bottleneck cost is infinite, if any.
    pub infinite_witness: Option<LineParam>,
}

impl EstimateReport {
    fn from_profile(
        per_line: Vec<LineCost>,
        method: EstimateMethod,
    ) -> Result<EstimateReport> {
        if per_line.is_empty() {
            return Err(Error::InvalidConfig("no lines to evaluate".to_string()));
        }
        let mut best = 0usize;
        for (i, lc) in per_line.iter().enumerate() {
            if lc.cost > per_line[best].cost {
                best = i;
            }
        }
        let infinite_witness = per_line
            .iter()
            .find(|lc| lc.cost.is_infinite())
            .map(|lc| lc.line);
        Ok(EstimateReport {
            value: per_line[best].cost,
            realizer: per_line[best].line,
            per_line,
            method,
            infinite_witness,
        })
    }
}

/// Bottleneck costs between the two complexes' diagrams along many lines.
/// Lines are independent tasks over the immutable complexes; the profile is
/// returned in input order, so the result is deterministic.
pub fn evaluate_lines(
    cx1: &BifilteredComplex,
    cx2: &BifilteredComplex,
    lines: &[LineParam],
    degree: Option<usize>,
) -> Result<Vec<LineCost>> {
    let max_degree = cx1.dimension().max(cx2.dimension());
    lines
        .par_iter()
        .map_init(
            || (ReductionScratch::new(cx1), ReductionScratch::new(cx2)),
            |(s1, s2), &line| {
                let d1 = compute_diagram_with(cx1, line, Some(max_degree), s1)?;
                let d2 = compute_diagram_with(cx2, line, Some(max_degree), s2)?;
                let mut per_degree = Vec::new();
                let mut cost = ExtendedReal::finite(0.0);
                for k in 0..=max_degree {
                    if let Some(d) = degree {
                        if k != d {
                            continue;
                        }
                    }
                    let empty1;
                    let empty2;
                    let dk1 = if k < d1.len() {
                        &d1[k]
                    } else {
                        empty1 = crate::diagram::PersistenceDiagram::empty(k);
                        &empty1
                    };
                    let dk2 = if k < d2.len() {
                        &d2[k]
                    } else {
                        empty2 = crate::diagram::PersistenceDiagram::empty(k);
                        &empty2
                    };
                    let m = bottleneck(dk1, dk2);
                    if m.cost > cost {
                        cost = m.cost;
                    }
                    per_degree.push((k, m.cost));
                }
                Ok(LineCost {
                    line,
                    per_degree,
                    cost,
                })
            },
        )
        .collect()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Max of the per-line bottleneck distances over the full parameter grid
/// `[ε, 1-ε] × [-C̄, C̄]`.
pub fn naive_estimate(
    cx1: &BifilteredComplex,
    cx2: &BifilteredComplex,
    config: &EstimatorConfig,
) -> Result<EstimateReport> {
    config.validate(cx1, cx2)?;
    let mut lines = Vec::with_capacity(config.resolution_a * config.resolution_b);
    for a in linspace(
        config.epsilon_boundary,
        1.0 - config.epsilon_boundary,
        config.resolution_a,
    ) {
        for b in linspace(-config.cbar, config.cbar, config.resolution_b) {
            lines.push(LineParam::new(a, b)?);
        }
    }
    let profile = evaluate_lines(cx1, cx2, &lines, config.degree)?;
    EstimateReport::from_profile(profile, EstimateMethod::Naive)
}

/// Candidate lines of the reduced estimator: the slope-1 segment plus the
/// sampled set `U`.
pub fn reduced_candidate_lines(
    grid1: &ExtendedParetoGrid,
    grid2: &ExtendedParetoGrid,
    config: &EstimatorConfig,
) -> Result<(Vec<LineParam>, Vec<CandidatePoint>)> {
    let mut lines: Vec<LineParam> = linspace(-config.cbar, config.cbar, config.resolution_b)
        .into_iter()
        .map(|b| LineParam::new(0.5, b))
        .collect::<Result<_>>()?;
    let grids = GridPair::new(grid1, grid2);
    let region = ParamRegion::interior(config.cbar, config.epsilon_boundary);
    let u = assemble_u(&grids, region, config.special_resolution, config.special_tol)?;
    lines.extend(u.iter().map(|c| c.param));
    lines.sort_by(|p, q| (p.a(), p.b()).partial_cmp(&(q.a(), q.b())).unwrap());
    lines.dedup_by(|p, q| p.a() == q.a() && p.b() == q.b());
    Ok((lines, u))
}

/// Max of the per-line bottleneck distances over the reduced candidate set.
pub fn reduced_estimate(
    cx1: &BifilteredComplex,
    cx2: &BifilteredComplex,
    grid1: &ExtendedParetoGrid,
    grid2: &ExtendedParetoGrid,
    config: &EstimatorConfig,
) -> Result<EstimateReport> {
    config.validate(cx1, cx2)?;
    let (lines, _) = reduced_candidate_lines(grid1, grid2, config)?;
    let profile = evaluate_lines(cx1, cx2, &lines, config.degree)?;
    EstimateReport::from_profile(profile, EstimateMethod::Reduced)
}

/// Outcome of running both estimators: the reduction passes when it loses at
/// most `tol` against the full scan.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub naive: EstimateReport,
    pub reduced: EstimateReport,
    pub tol: f64,
    pub pass: bool,
}

pub fn verify_main_theorem(
    cx1: &BifilteredComplex,
    cx2: &BifilteredComplex,
    grid1: &ExtendedParetoGrid,
    grid2: &ExtendedParetoGrid,
    config: &EstimatorConfig,
) -> Result<VerifyReport> {
    let naive = naive_estimate(cx1, cx2, config)?;
    let reduced = reduced_estimate(cx1, cx2, grid1, grid2, config)?;
    let pass = reduced.value.to_f64() >= naive.value.to_f64() - config.tol;
    Ok(VerifyReport {
        naive,
        reduced,
        tol: config.tol,
        pass,
    })
}

/// The realizer slope bound: when the matching distance comes close enough
/// to the sup-norm distance, the realizer's slope parameter must exceed
/// `‖φ₁-ψ₁‖∞ / (‖φ₁-ψ₁‖∞ + ‖φ₂-ψ₂‖∞)`.
#[derive(Clone, Debug)]
pub struct RealizerBoundReport {
    pub component_norms: (f64, f64),
    pub sup_norm: f64,
    pub estimate: ExtendedReal,
    pub realizer_a: f64,
    pub ratio: f64,
    pub hypothesis_holds: bool,
    /// `None` when the hypothesis fails and the check is skipped.
    pub bound_satisfied: Option<bool>,
    /// Set when the estimate matches the sup norm within `tol` and the
    /// second component dominates.
    pub corollary_applicable: bool,
}

pub fn realizer_bound_check(
    cx1: &BifilteredComplex,
    cx2: &BifilteredComplex,
    report: &EstimateReport,
    tol: f64,
) -> Result<RealizerBoundReport> {
    let (n1, n2) = component_sup_norms(cx1, cx2)?;
    let sup = sup_norm_difference(cx1, cx2)?;
    let ratio = if n1 + n2 > 0.0 { n1 / (n1 + n2) } else { 0.0 };
    let estimate = report.value;
    let hypothesis_holds = match estimate.value() {
        Some(d) => sup - d < n2 - n1,
        None => false,
    };
    let corollary_applicable = match estimate.value() {
        Some(d) => (d - sup).abs() <= tol && n2 > n1,
        None => false,
    };
    let bound_satisfied =
        (hypothesis_holds || corollary_applicable).then(|| report.realizer.a() > ratio);
    Ok(RealizerBoundReport {
        component_norms: (n1, n2),
        sup_norm: sup,
        estimate,
        realizer_a: report.realizer.a(),
        ratio,
        hypothesis_holds,
        bound_satisfied,
        corollary_applicable,
    })
}

/// Boundary profiles at `a ∈ {0, 1}` against the slope-1 segment: the
/// supremum over the open strip equals the closed-strip supremum, so every
/// boundary value must be dominated.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub slope1: Vec<LineCost>,
    pub vertical: Vec<LineCost>,
    pub horizontal: Vec<LineCost>,
    pub slope1_max: ExtendedReal,
    pub boundary_max: ExtendedReal,
    pub tol: f64,
    pub pass: bool,
}

pub fn boundary_domination_check(
    cx1: &BifilteredComplex,
    cx2: &BifilteredComplex,
    config: &EstimatorConfig,
) -> Result<BoundaryReport> {
    config.validate(cx1, cx2)?;
    let bs = linspace(-config.cbar, config.cbar, config.resolution_b);
    let mk = |a: f64| -> Result<Vec<LineParam>> {
        bs.iter().map(|&b| LineParam::new(a, b)).collect()
    };
    let slope1 = evaluate_lines(cx1, cx2, &mk(0.5)?, config.degree)?;
    let vertical = evaluate_lines(cx1, cx2, &mk(0.0)?, config.degree)?;
    let horizontal = evaluate_lines(cx1, cx2, &mk(1.0)?, config.degree)?;
    let max_of = |profile: &[LineCost]| {
        profile
            .iter()
            .map(|lc| lc.cost)
            .max()
            .unwrap_or(ExtendedReal::finite(0.0))
    };
    let slope1_max = max_of(&slope1);
    let boundary_max = max_of(&vertical).max(max_of(&horizontal));
    let pass = boundary_max.to_f64() <= slope1_max.to_f64() + config.tol;
    Ok(BoundaryReport {
        slope1,
        vertical,
        horizontal,
        slope1_max,
        boundary_max,
        tol: config.tol,
        pass,
    })
}
