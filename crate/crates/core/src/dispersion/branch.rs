use serde::{Deserialize, Serialize};

use crate::exec::{map_ordered, Execution};
use crate::material::{CharacteristicScales, MaterialParameters};

use super::{coupled_omegas, uncoupled_omega, BranchLabel, DispersionError, WaveFamily};

pub const DEFAULT_SAMPLES: usize = 1001;

/// Relative growth over the saturation window below which a branch counts
/// as flattening onto a horizontal asymptote.
pub const DEFAULT_ASYMPTOTE_TOLERANCE: f64 = 1e-3;

pub const MIN_BRANCH_SAMPLES: usize = 16;

/// Number of trailing samples over which saturation is judged.
const SATURATION_WINDOW: usize = 10;

/// Velocities below this are ignored when choosing the default `k_max`.
const MIN_VELOCITY: f64 = 1e-12;

/// Non-monotone steps smaller than this fraction of the branch maximum are
/// rounding noise.
const MONOTONICITY_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub k: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionBranch {
    pub label: BranchLabel,
    pub multiplicity: u8,
    pub points: Vec<BranchPoint>,
    /// Frequency at `k = 0`.
    pub cutoff: f64,
    /// Finite large-k limit, when the branch saturates.
    pub asymptote: Option<f64>,
}

impl DispersionBranch {
    pub fn new(label: BranchLabel, points: Vec<BranchPoint>) -> Self {
        let cutoff = points.first().map_or(0.0, |p| p.omega);
        Self {
            label,
            multiplicity: label.multiplicity(),
            points,
            cutoff,
            asymptote: None,
        }
    }

    pub fn omega_range(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .map(|p| p.omega)
            .fold(None, |acc, w| match acc {
                None => Some((w, w)),
                Some((lo, hi)) => Some((lo.min(w), hi.max(w))),
            })
    }

    pub fn terminal(&self) -> Option<BranchPoint> {
        self.points.last().copied()
    }
}

/// A non-monotone step on a sampled branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityWarning {
    pub label: BranchLabel,
    pub k: f64,
    pub delta_omega: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchSet {
    pub branches: Vec<DispersionBranch>,
    pub warnings: Vec<MonotonicityWarning>,
}

impl BranchSet {
    pub fn get(&self, label: BranchLabel) -> Option<&DispersionBranch> {
        self.branches.iter().find(|b| b.label == label)
    }
}

/// `10 max(omega_p, omega_s, omega_r) / min(c_m, c_s, c_p)`: far enough
/// that every linearly growing branch clears all cutoffs and saturating
/// branches sit close to their asymptotes.
pub fn default_k_max(scales: &CharacteristicScales) -> f64 {
    let slowest = [scales.c_m, scales.c_s, scales.c_p]
        .into_iter()
        .filter(|&c| c >= MIN_VELOCITY)
        .fold(f64::INFINITY, f64::min);
    10.0 * scales.max_cutoff() / slowest
}

pub fn linear_k_grid(k_max: f64, samples: usize) -> Result<Vec<f64>, DispersionError> {
    if samples < 2 || !(k_max.is_finite() && k_max > 0.0) {
        return Err(DispersionError::InvalidGrid);
    }
    let last = (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            if i == samples - 1 {
                k_max
            } else {
                k_max * (i as f64) / last
            }
        })
        .collect())
}

pub fn default_k_grid(scales: &CharacteristicScales) -> Result<Vec<f64>, DispersionError> {
    linear_k_grid(default_k_max(scales), DEFAULT_SAMPLES)
}

fn validate_grid(k_grid: &[f64]) -> Result<(), DispersionError> {
    match k_grid.first() {
        Some(&0.0) => {}
        _ => return Err(DispersionError::InvalidGrid),
    }
    let increasing = k_grid.windows(2).all(|w| w[1].is_finite() && w[1] > w[0]);
    if increasing {
        Ok(())
    } else {
        Err(DispersionError::InvalidGrid)
    }
}

/// Samples all nine branches on `k_grid`.
///
/// Within each coupled family the roots are assigned to branches by
/// ascending order at every `k`, so crossing branches swap names rather
/// than being tracked through the crossing. Transverse branches are stored
/// once with multiplicity two. Saturating branches get their asymptote
/// filled in via [`detect_asymptote`] when the grid is long enough.
pub fn sample_branches(
    params: &MaterialParameters,
    scales: &CharacteristicScales,
    k_grid: &[f64],
    asymptote_tolerance: f64,
    exec: Execution,
) -> Result<BranchSet, DispersionError> {
    validate_grid(k_grid)?;
    let rows = map_ordered(exec, k_grid, |&k| -> Result<[f64; 9], DispersionError> {
        let l = coupled_omegas(WaveFamily::Longitudinal, params, scales, k)?;
        let t = coupled_omegas(WaveFamily::Transverse, params, scales, k)?;
        let u = uncoupled_omega(scales, k);
        // order matches BranchLabel::ALL
        Ok([l[0], l[1], l[2], t[0], t[1], t[2], u[1].1, u[0].1, u[2].1])
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let mut branches = Vec::with_capacity(BranchLabel::ALL.len());
    let mut warnings = Vec::new();
    for (column, label) in BranchLabel::ALL.into_iter().enumerate() {
        let points: Vec<BranchPoint> = k_grid
            .iter()
            .zip(&rows)
            .map(|(&k, row)| BranchPoint {
                k,
                omega: row[column],
            })
            .collect();
        let mut branch = DispersionBranch::new(label, points);
        warnings.extend(monotonicity_warnings(&branch));
        if branch.points.len() >= MIN_BRANCH_SAMPLES {
            branch.asymptote = detect_asymptote(&branch, asymptote_tolerance)?;
        }
        branches.push(branch);
    }
    Ok(BranchSet { branches, warnings })
}

fn monotonicity_warnings(branch: &DispersionBranch) -> Vec<MonotonicityWarning> {
    let peak = branch.omega_range().map_or(0.0, |(_, hi)| hi.abs());
    branch
        .points
        .windows(2)
        .filter_map(|w| {
            let delta = w[1].omega - w[0].omega;
            (delta < -MONOTONICITY_SLACK * peak).then_some(MonotonicityWarning {
                label: branch.label,
                k: w[1].k,
                delta_omega: delta,
            })
        })
        .collect()
}

/// Returns the horizontal asymptote of a saturating branch, or `None` when
/// the branch keeps growing.
///
/// A branch saturates when its relative growth across the last ten samples
/// is below `tolerance`. The asymptote is then extrapolated from three
/// samples near the end of the grid, assuming `omega² = a + b/k² + c/k⁴` at
/// large `k`; it never lies below the terminal sample.
pub fn detect_asymptote(
    branch: &DispersionBranch,
    tolerance: f64,
) -> Result<Option<f64>, DispersionError> {
    let n = branch.points.len();
    if n < MIN_BRANCH_SAMPLES {
        return Err(DispersionError::InsufficientSamples {
            needed: MIN_BRANCH_SAMPLES,
            got: n,
        });
    }
    let last = branch.points[n - 1];
    let window_start = branch.points[n - SATURATION_WINDOW];
    let growth = if last.omega == 0.0 {
        (last.omega - window_start.omega).abs()
    } else {
        ((last.omega - window_start.omega) / last.omega).abs()
    };
    if growth.is_nan() || growth >= tolerance {
        return Ok(None);
    }
    let extrapolated = extrapolate_limit(&branch.points).unwrap_or(last.omega);
    let rising = last.omega >= window_start.omega;
    Ok(Some(if rising {
        extrapolated.max(last.omega)
    } else {
        extrapolated.min(last.omega)
    }))
}

fn nearest_index(points: &[BranchPoint], k: f64) -> usize {
    points.partition_point(|p| p.k < k).min(points.len() - 1)
}

/// Quadratic interpolation of `omega²` in `x = 1/k²`, evaluated at `x = 0`.
fn extrapolate_limit(points: &[BranchPoint]) -> Option<f64> {
    let last = points.len() - 1;
    let k_end = points[last].k;
    let picks = [
        last,
        nearest_index(points, 0.8 * k_end),
        nearest_index(points, 0.6 * k_end),
    ];
    if picks[1] >= picks[0] || picks[2] >= picks[1] || points[picks[2]].k <= 0.0 {
        return None;
    }
    let x: Vec<f64> = picks.iter().map(|&i| points[i].k.powi(-2)).collect();
    let s: Vec<f64> = picks.iter().map(|&i| points[i].omega.powi(2)).collect();
    let mut limit = 0.0;
    for i in 0..3 {
        let mut weight = 1.0;
        for j in 0..3 {
            if i != j {
                weight *= (0.0 - x[j]) / (x[i] - x[j]);
            }
        }
        limit += weight * s[i];
    }
    (limit.is_finite() && limit >= 0.0).then(|| limit.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::characteristic_scales;

    fn reference(mu_c: f64) -> (MaterialParameters, CharacteristicScales) {
        let p = MaterialParameters::reference(mu_c).unwrap();
        let s = characteristic_scales(&p).unwrap();
        (p, s)
    }

    fn sampled(mu_c: f64) -> (CharacteristicScales, BranchSet) {
        let (p, s) = reference(mu_c);
        let grid = default_k_grid(&s).unwrap();
        let set = sample_branches(
            &p,
            &s,
            &grid,
            DEFAULT_ASYMPTOTE_TOLERANCE,
            Execution::Sequential,
        )
        .unwrap();
        (s, set)
    }

    #[test]
    fn grid_shape() {
        let g = linear_k_grid(10.0, 11).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 10.0);
        assert!(linear_k_grid(10.0, 1).is_err());
        assert!(linear_k_grid(-1.0, 10).is_err());
    }

    #[test]
    fn default_k_max_uses_slowest_velocity() {
        let (_, s) = reference(300e6);
        let want = 10.0 * s.omega_p / s.c_m;
        assert_eq!(default_k_max(&s), want);
        let mut flat = s;
        flat.c_m = 0.0;
        assert_eq!(default_k_max(&flat), 10.0 * s.omega_p / s.c_s);
    }

    #[test]
    fn rejects_grids_not_starting_at_zero() {
        let (p, s) = reference(300e6);
        let tol = DEFAULT_ASYMPTOTE_TOLERANCE;
        let seq = Execution::Sequential;
        assert_eq!(
            sample_branches(&p, &s, &[1.0, 2.0], tol, seq),
            Err(DispersionError::InvalidGrid)
        );
        assert_eq!(
            sample_branches(&p, &s, &[0.0, 2.0, 2.0], tol, seq),
            Err(DispersionError::InvalidGrid)
        );
        assert_eq!(
            sample_branches(&p, &s, &[], tol, seq),
            Err(DispersionError::InvalidGrid)
        );
    }

    #[test]
    fn cutoffs_at_zero_wavenumber() {
        let (s, set) = sampled(300e6);
        let cutoff = |l| set.get(l).unwrap().cutoff;
        assert_eq!(set.branches.len(), 9);
        assert_eq!(cutoff(BranchLabel::LA), 0.0);
        assert_eq!(cutoff(BranchLabel::LO1), s.omega_s);
        assert_eq!(cutoff(BranchLabel::LO2), s.omega_p);
        assert_eq!(cutoff(BranchLabel::TA), 0.0);
        assert_eq!(cutoff(BranchLabel::TO1), s.omega_s.min(s.omega_r));
        assert_eq!(cutoff(BranchLabel::TO2), s.omega_s.max(s.omega_r));
        assert_eq!(cutoff(BranchLabel::TRO), s.omega_r);
        assert_eq!(cutoff(BranchLabel::TSO), s.omega_s);
        assert_eq!(cutoff(BranchLabel::TCVO), s.omega_s);
        for b in &set.branches {
            assert_eq!(b.cutoff, b.points[0].omega);
            assert!(b.points.windows(2).all(|w| w[1].k > w[0].k));
        }
    }

    #[test]
    fn acoustic_branches_saturate() {
        let (s, set) = sampled(300e6);
        let la = set.get(BranchLabel::LA).unwrap();
        let ta = set.get(BranchLabel::TA).unwrap();
        let la_limit = la.asymptote.expect("LA saturates");
        let ta_limit = ta.asymptote.expect("TA saturates");
        assert!(
            (la_limit - s.omega_l).abs() <= 1e-6 * s.omega_l,
            "{la_limit}"
        );
        assert!(
            (ta_limit - s.omega_t).abs() <= 1e-6 * s.omega_t,
            "{ta_limit}"
        );
        assert!((la.terminal().unwrap().omega - s.omega_l).abs() <= 0.02 * s.omega_l);
        for label in [
            BranchLabel::LO1,
            BranchLabel::LO2,
            BranchLabel::TSO,
            BranchLabel::TRO,
        ] {
            assert_eq!(set.get(label).unwrap().asymptote, None, "{label}");
        }
        assert!(set.warnings.is_empty(), "{:?}", set.warnings);
    }

    #[test]
    fn short_branches_are_rejected() {
        let branch = DispersionBranch::new(
            BranchLabel::LA,
            (0..15)
                .map(|i| BranchPoint {
                    k: i as f64,
                    omega: 1.0,
                })
                .collect(),
        );
        assert_eq!(
            detect_asymptote(&branch, 1e-3),
            Err(DispersionError::InsufficientSamples {
                needed: 16,
                got: 15
            })
        );
    }

    #[test]
    fn flat_branch_is_its_own_asymptote() {
        let branch = DispersionBranch::new(
            BranchLabel::TRO,
            (0..32)
                .map(|i| BranchPoint {
                    k: i as f64,
                    omega: 5.0,
                })
                .collect(),
        );
        assert_eq!(detect_asymptote(&branch, 1e-3).unwrap(), Some(5.0));
    }

    #[test]
    fn decreasing_step_is_flagged() {
        let mut branch = DispersionBranch::new(
            BranchLabel::LO1,
            (0..20)
                .map(|i| BranchPoint {
                    k: i as f64,
                    omega: i as f64,
                })
                .collect(),
        );
        branch.points[7].omega = 3.0;
        let warnings = monotonicity_warnings(&branch);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].k, 7.0);
        assert_eq!(warnings[0].delta_omega, -3.0);
    }

    #[test]
    fn sequential_and_parallel_sampling_agree() {
        let (p, s) = reference(450e6);
        let grid = default_k_grid(&s).unwrap();
        let tol = DEFAULT_ASYMPTOTE_TOLERANCE;
        let a = sample_branches(&p, &s, &grid, tol, Execution::Sequential).unwrap();
        let b = sample_branches(&p, &s, &grid, tol, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
