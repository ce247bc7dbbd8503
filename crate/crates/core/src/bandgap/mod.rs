//! Band gaps: the closed-form existence condition, the analytic gap, and
//! gaps read off sampled branches.
//!
//! A band gap is a frequency range that no branch of any family (longitudinal,
//! transverse or uncoupled) covers. With positive `lambda_e` and `lambda_h`
//! the acoustic branches flatten onto `omega_l` and `omega_t` while every
//! optic branch starts at one of the cutoffs `omega_s`, `omega_r`,
//! `omega_p`, so a global gap opens exactly when the lowest cutoff rises
//! above `omega_l`. The figure discussion this is usually quoted from says
//! "any type of wave can propagate" in `[omega_l, omega_s]`; the same
//! paragraph calls that range a band gap, so it is read as "no wave".

mod interval;
mod pipeline;

use serde::Serialize;
use thiserror::Error;

use crate::dispersion::{BranchLabel, DispersionBranch};
use crate::material::{CharacteristicScales, MaterialParameters};

pub use pipeline::{
    analyze, sample, sweep_mu_c, sweep_mu_c_values, Analysis, AnalysisOptions, BandGapReport,
    SweepCase,
};

/// Gaps narrower than this fraction of the ceiling are dropped by default.
pub const DEFAULT_MIN_WIDTH_FRACTION: f64 = 1e-6;

/// Default ceiling as a multiple of the largest cutoff.
pub const DEFAULT_CEILING_FACTOR: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BandGapError {
    #[error(
        "band-gap conditions are only established for lambda_e > 0 and lambda_h > 0 \
         (got lambda_e = {lambda_e} Pa, lambda_h = {lambda_h} Pa)"
    )]
    OutsideStatedRegime { lambda_e: f64, lambda_h: f64 },
    #[error("branch {label} ends at {terminal} rad/s below the ceiling {ceiling} rad/s without saturating")]
    CeilingTooLow {
        label: BranchLabel,
        terminal: f64,
        ceiling: f64,
    },
    #[error("frequency ceiling must be finite and positive, got {0}")]
    InvalidCeiling(f64),
    #[error("sweep factor must be finite and positive, got {0}")]
    InvalidFactor(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapSource {
    Analytic,
    Numeric,
}

/// A forbidden frequency band `(low, high)` in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapInterval {
    pub low: f64,
    pub high: f64,
    pub source: GapSource,
}

impl GapInterval {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

/// The three simultaneous requirements for a global gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapClauses {
    /// `0 < mu_e < inf`
    pub mu_e_positive: bool,
    /// `0 < lambda_h < 2 mu_e`
    pub lambda_h_below_two_mu_e: bool,
    /// `mu_c > mu_c0`
    pub mu_c_above_threshold: bool,
}

impl GapClauses {
    pub fn all(&self) -> bool {
        self.mu_e_positive && self.lambda_h_below_two_mu_e && self.mu_c_above_threshold
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapCondition {
    /// `mu_c0 = (lambda_h + 2 mu_h) / 2`, in Pa.
    pub threshold: f64,
    pub clauses: GapClauses,
}

pub fn gap_condition(params: &MaterialParameters) -> Result<GapCondition, BandGapError> {
    let (lambda_e, lambda_h) = (params.lambda_e(), params.lambda_h());
    if !(lambda_e > 0.0 && lambda_h > 0.0) {
        return Err(BandGapError::OutsideStatedRegime { lambda_e, lambda_h });
    }
    let mu_e = params.mu_e();
    let threshold = (lambda_h + 2.0 * params.mu_h()) / 2.0;
    Ok(GapCondition {
        threshold,
        clauses: GapClauses {
            mu_e_positive: mu_e > 0.0 && mu_e.is_finite(),
            lambda_h_below_two_mu_e: 0.0 < lambda_h && lambda_h < 2.0 * mu_e,
            mu_c_above_threshold: params.mu_c() > threshold,
        },
    })
}

/// The predicted gap `(max(omega_l, omega_t), min(omega_s, omega_r, omega_p))`
/// when the gap condition holds.
pub fn analytic_gap(scales: &CharacteristicScales, clauses_pass: bool) -> Option<GapInterval> {
    if !clauses_pass {
        return None;
    }
    let low = scales.omega_l.max(scales.omega_t);
    let high = scales.omega_s.min(scales.omega_r).min(scales.omega_p);
    (low < high).then_some(GapInterval {
        low,
        high,
        source: GapSource::Analytic,
    })
}

/// Frequency bands inside `[0, omega_ceiling]` covered by none of the
/// sampled branches.
///
/// Each branch covers `[min omega, max omega]`; saturating branches extend
/// to their asymptote and growing ones to the ceiling. Gaps narrower than
/// `min_width` are discarded.
pub fn numeric_gaps(
    branches: &[DispersionBranch],
    omega_ceiling: f64,
    min_width: f64,
) -> Result<Vec<GapInterval>, BandGapError> {
    if !(omega_ceiling.is_finite() && omega_ceiling > 0.0) {
        return Err(BandGapError::InvalidCeiling(omega_ceiling));
    }
    let mut covered = Vec::with_capacity(branches.len());
    for branch in branches {
        let Some((low, high)) = branch.omega_range() else {
            continue;
        };
        let high = match branch.asymptote {
            Some(limit) => high.max(limit),
            None if high < omega_ceiling => {
                return Err(BandGapError::CeilingTooLow {
                    label: branch.label,
                    terminal: high,
                    ceiling: omega_ceiling,
                })
            }
            None => omega_ceiling,
        };
        covered.push((low, high.min(omega_ceiling)));
    }
    let cover = interval::union(covered);
    Ok(interval::complement(&cover, 0.0, omega_ceiling)
        .into_iter()
        .filter(|(lo, hi)| hi - lo >= min_width)
        .map(|(low, high)| GapInterval {
            low,
            high,
            source: GapSource::Numeric,
        })
        .collect())
}

/// Largest relative edge mismatch between the analytic gap and the numeric
/// gap overlapping it most.
pub fn edge_agreement(analytic: &GapInterval, numeric: &[GapInterval]) -> Option<f64> {
    numeric
        .iter()
        .map(|g| (g, g.high.min(analytic.high) - g.low.max(analytic.low)))
        .filter(|(_, overlap)| *overlap > 0.0)
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(g, _)| {
            let low = (g.low - analytic.low).abs() / analytic.low;
            let high = (g.high - analytic.high).abs() / analytic.high;
            low.max(high)
        })
}
