use serde::Serialize;

use crate::dispersion::{
    default_k_max, linear_k_grid, sample_branches, BranchSet, DEFAULT_ASYMPTOTE_TOLERANCE,
    DEFAULT_SAMPLES,
};
use crate::error::Error;
use crate::exec::{map_ordered, Execution};
use crate::material::{
    characteristic_scales, validate_definiteness, CharacteristicScales, MaterialParameters,
};

use super::{
    analytic_gap, edge_agreement, gap_condition, numeric_gaps, BandGapError, GapClauses,
    GapInterval, DEFAULT_CEILING_FACTOR, DEFAULT_MIN_WIDTH_FRACTION,
};

/// Knobs for one run. `None` means the derived default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub k_max: Option<f64>,
    pub samples: usize,
    pub omega_ceiling: Option<f64>,
    pub min_width: Option<f64>,
    pub asymptote_tolerance: f64,
    pub execution: Execution,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            k_max: None,
            samples: DEFAULT_SAMPLES,
            omega_ceiling: None,
            min_width: None,
            asymptote_tolerance: DEFAULT_ASYMPTOTE_TOLERANCE,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandGapReport {
    pub parameters: MaterialParameters,
    pub scales: CharacteristicScales,
    /// `mu_c0` in Pa.
    pub mu_c_threshold: f64,
    pub clauses: GapClauses,
    pub analytic_gap: Option<GapInterval>,
    pub numeric_gaps: Vec<GapInterval>,
    pub omega_ceiling: f64,
    /// Largest relative edge mismatch between the analytic gap and the
    /// numeric gap overlapping it; `None` when either is missing.
    pub agreement: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub scales: CharacteristicScales,
    pub branches: BranchSet,
    pub report: BandGapReport,
}

fn require_definite(params: &MaterialParameters) -> Result<CharacteristicScales, Error> {
    let report = validate_definiteness(params);
    if !report.passed() {
        return Err(Error::Indefinite(report));
    }
    Ok(characteristic_scales(params)?)
}

/// Samples all branches on the configured grid. Requires a positive-definite
/// parameter set.
pub fn sample(
    params: &MaterialParameters,
    options: &AnalysisOptions,
) -> Result<(CharacteristicScales, BranchSet), Error> {
    let scales = require_definite(params)?;
    let k_max = options.k_max.unwrap_or_else(|| default_k_max(&scales));
    let grid = linear_k_grid(k_max, options.samples)?;
    let branches = sample_branches(
        params,
        &scales,
        &grid,
        options.asymptote_tolerance,
        options.execution,
    )?;
    Ok((scales, branches))
}

/// Full pipeline: definiteness, scales, branches, gap condition, and the
/// analytic and numeric gaps.
pub fn analyze(params: &MaterialParameters, options: &AnalysisOptions) -> Result<Analysis, Error> {
    let (scales, branches) = sample(params, options)?;
    let condition = gap_condition(params)?;
    let omega_ceiling = options
        .omega_ceiling
        .unwrap_or(DEFAULT_CEILING_FACTOR * scales.max_cutoff());
    let min_width = options
        .min_width
        .unwrap_or(DEFAULT_MIN_WIDTH_FRACTION * omega_ceiling);
    let analytic = analytic_gap(&scales, condition.clauses.all());
    let numeric = numeric_gaps(&branches.branches, omega_ceiling, min_width)?;
    let agreement = analytic.as_ref().and_then(|a| edge_agreement(a, &numeric));
    let report = BandGapReport {
        parameters: *params,
        scales,
        mu_c_threshold: condition.threshold,
        clauses: condition.clauses,
        analytic_gap: analytic,
        numeric_gaps: numeric,
        omega_ceiling,
        agreement,
    };
    Ok(Analysis {
        scales,
        branches,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCase {
    /// `mu_c / mu_c0`.
    pub factor: f64,
    pub mu_c: f64,
    pub report: BandGapReport,
}

/// Runs the pipeline once per factor with `mu_c = factor * mu_c0`, keeping
/// the input order. Cases run concurrently under [`Execution::Parallel`].
pub fn sweep_mu_c(
    base: &MaterialParameters,
    factors: &[f64],
    options: &AnalysisOptions,
) -> Result<Vec<SweepCase>, Error> {
    let threshold = sweep_threshold(base)?;
    let cases: Vec<(f64, f64)> = factors
        .iter()
        .map(|&f| {
            if f.is_finite() && f > 0.0 {
                Ok((f, f * threshold))
            } else {
                Err(BandGapError::InvalidFactor(f))
            }
        })
        .collect::<Result<_, _>>()?;
    run_cases(base, &cases, options)
}

/// Same as [`sweep_mu_c`] with absolute couple moduli (Pa).
pub fn sweep_mu_c_values(
    base: &MaterialParameters,
    mu_c_values: &[f64],
    options: &AnalysisOptions,
) -> Result<Vec<SweepCase>, Error> {
    let threshold = sweep_threshold(base)?;
    let cases: Vec<(f64, f64)> = mu_c_values
        .iter()
        .map(|&mu_c| {
            if mu_c.is_finite() && mu_c > 0.0 {
                Ok((mu_c / threshold, mu_c))
            } else {
                Err(BandGapError::InvalidFactor(mu_c / threshold))
            }
        })
        .collect::<Result<_, _>>()?;
    run_cases(base, &cases, options)
}

fn sweep_threshold(base: &MaterialParameters) -> Result<f64, Error> {
    require_definite(base)?;
    Ok(gap_condition(base)?.threshold)
}

fn run_cases(
    base: &MaterialParameters,
    cases: &[(f64, f64)],
    options: &AnalysisOptions,
) -> Result<Vec<SweepCase>, Error> {
    map_ordered(options.execution, cases, |&(factor, mu_c)| {
        let params = base.with_mu_c(mu_c)?;
        let analysis = analyze(&params, options)?;
        Ok(SweepCase {
            factor,
            mu_c,
            report: analysis.report,
        })
    })
    .into_iter()
    .collect()
}
