//! Constitutive parameters of the relaxed micromorphic continuum.
//!
//! All values are stored in SI units: moduli in Pa, `alpha_c` in Pa·m²,
//! `rho` in kg/m³ and the micro-inertia `eta` in kg/m. Unit conversion
//! happens at the configuration boundary, never here.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance below which a homogenization denominator counts as zero.
const DEGENERATE_DENOMINATOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaterialError {
    #[error("parameter `{name}` is not a finite number ({value})")]
    NonFinite { name: &'static str, value: f64 },
    #[error("parameter `{name}` must be strictly positive, got {value}")]
    NonPositiveDensity { name: &'static str, value: f64 },
    #[error("negative radicand while computing `{0}`; the parameter set is not positive definite")]
    NegativeRadicand(&'static str),
    #[error("homogenization is degenerate: denominator of `{0}` vanishes")]
    DegenerateHomogenization(&'static str),
    #[error("micro modulus mu_h = {mu_h} Pa must exceed the macroscopic modulus mu = {mu_macro} Pa (and mu >= 0)")]
    InvalidOrdering { mu_macro: f64, mu_h: f64 },
}

/// Plain field bundle used to construct a validated [`MaterialParameters`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterValues {
    pub mu_e: f64,
    pub lambda_e: f64,
    pub mu_c: f64,
    pub mu_h: f64,
    pub lambda_h: f64,
    pub alpha_c: f64,
    pub rho: f64,
    pub eta: f64,
}

/// The six constitutive moduli plus macroscopic density and micro-inertia.
///
/// Construction guarantees finiteness and strictly positive `rho` and `eta`.
/// Positive-definiteness of the strain energy is *not* enforced here; use
/// [`validate_definiteness`] to obtain a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParameterValues", into = "ParameterValues")]
pub struct MaterialParameters {
    values: ParameterValues,
}

impl MaterialParameters {
    pub fn new(values: ParameterValues) -> Result<Self, MaterialError> {
        let fields = [
            ("mu_e", values.mu_e),
            ("lambda_e", values.lambda_e),
            ("mu_c", values.mu_c),
            ("mu_h", values.mu_h),
            ("lambda_h", values.lambda_h),
            ("alpha_c", values.alpha_c),
            ("rho", values.rho),
            ("eta", values.eta),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(MaterialError::NonFinite { name, value });
            }
        }
        for (name, value) in [("rho", values.rho), ("eta", values.eta)] {
            if value <= 0.0 {
                return Err(MaterialError::NonPositiveDensity { name, value });
            }
        }
        Ok(Self { values })
    }

    /// The reference parameter set used throughout the examples and tests
    /// (soft homogenized matrix with 2 mm inclusions and a 3 mm internal
    /// length), with the Cosserat couple modulus supplied by the caller.
    pub fn reference(mu_c: f64) -> Result<Self, MaterialError> {
        Self::new(ParameterValues {
            mu_e: 200e6,
            lambda_e: 400e6,
            mu_c,
            mu_h: 100e6,
            lambda_h: 100e6,
            alpha_c: 1.8e3,
            rho: 2500.0,
            eta: 1e-2,
        })
    }

    pub fn values(&self) -> ParameterValues {
        self.values
    }

    pub fn mu_e(&self) -> f64 {
        self.values.mu_e
    }

    pub fn lambda_e(&self) -> f64 {
        self.values.lambda_e
    }

    pub fn mu_c(&self) -> f64 {
        self.values.mu_c
    }

    pub fn mu_h(&self) -> f64 {
        self.values.mu_h
    }

    pub fn lambda_h(&self) -> f64 {
        self.values.lambda_h
    }

    pub fn alpha_c(&self) -> f64 {
        self.values.alpha_c
    }

    pub fn rho(&self) -> f64 {
        self.values.rho
    }

    pub fn eta(&self) -> f64 {
        self.values.eta
    }

    /// Copy with a different Cosserat couple modulus.
    pub fn with_mu_c(&self, mu_c: f64) -> Result<Self, MaterialError> {
        Self::new(ParameterValues {
            mu_c,
            ..self.values
        })
    }

    /// Copy with every modulus (including `alpha_c`) multiplied by `factor`.
    pub fn scale_moduli(&self, factor: f64) -> Result<Self, MaterialError> {
        let v = self.values;
        Self::new(ParameterValues {
            mu_e: v.mu_e * factor,
            lambda_e: v.lambda_e * factor,
            mu_c: v.mu_c * factor,
            mu_h: v.mu_h * factor,
            lambda_h: v.lambda_h * factor,
            alpha_c: v.alpha_c * factor,
            ..v
        })
    }
}

impl TryFrom<ParameterValues> for MaterialParameters {
    type Error = MaterialError;

    fn try_from(values: ParameterValues) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<MaterialParameters> for ParameterValues {
    fn from(params: MaterialParameters) -> Self {
        params.values
    }
}

/// One of the six inequalities required for a positive-definite strain energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefinitenessCondition {
    MuEPositive,
    MuCNonNegative,
    BulkEPositive,
    MuHPositive,
    BulkHPositive,
    AlphaCPositive,
}

impl DefinitenessCondition {
    pub const ALL: [DefinitenessCondition; 6] = [
        DefinitenessCondition::MuEPositive,
        DefinitenessCondition::MuCNonNegative,
        DefinitenessCondition::BulkEPositive,
        DefinitenessCondition::MuHPositive,
        DefinitenessCondition::BulkHPositive,
        DefinitenessCondition::AlphaCPositive,
    ];

    pub fn expression(self) -> &'static str {
        match self {
            DefinitenessCondition::MuEPositive => "mu_e > 0",
            DefinitenessCondition::MuCNonNegative => "mu_c >= 0",
            DefinitenessCondition::BulkEPositive => "3*lambda_e + 2*mu_e > 0",
            DefinitenessCondition::MuHPositive => "mu_h > 0",
            DefinitenessCondition::BulkHPositive => "3*lambda_h + 2*mu_h > 0",
            DefinitenessCondition::AlphaCPositive => "alpha_c > 0",
        }
    }

    /// Left-hand side of the inequality; the condition holds when this is
    /// positive (or non-negative for `mu_c`).
    fn margin(self, p: &MaterialParameters) -> f64 {
        match self {
            DefinitenessCondition::MuEPositive => p.mu_e(),
            DefinitenessCondition::MuCNonNegative => p.mu_c(),
            DefinitenessCondition::BulkEPositive => 3.0 * p.lambda_e() + 2.0 * p.mu_e(),
            DefinitenessCondition::MuHPositive => p.mu_h(),
            DefinitenessCondition::BulkHPositive => 3.0 * p.lambda_h() + 2.0 * p.mu_h(),
            DefinitenessCondition::AlphaCPositive => p.alpha_c(),
        }
    }

    fn admits_zero(self) -> bool {
        matches!(self, DefinitenessCondition::MuCNonNegative)
    }
}

impl fmt::Display for DefinitenessCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.expression())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionResult {
    pub condition: DefinitenessCondition,
    pub margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefinitenessReport {
    pub results: Vec<ConditionResult>,
}

impl DefinitenessReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Evaluates every positive-definiteness inequality. Never fails; the report
/// carries the margin of each condition so callers can see how close a
/// parameter set sits to the admissibility boundary.
pub fn validate_definiteness(params: &MaterialParameters) -> DefinitenessReport {
    let results = DefinitenessCondition::ALL
        .iter()
        .map(|&condition| {
            let margin = condition.margin(params);
            let passed = if condition.admits_zero() {
                margin >= 0.0
            } else {
                margin > 0.0
            };
            ConditionResult {
                condition,
                margin,
                passed,
            }
        })
        .collect();
    DefinitenessReport { results }
}

/// Characteristic velocities (m/s) and frequencies (rad/s).
///
/// `omega_s`, `omega_r`, `omega_p` are the optic cutoffs; `omega_l` and
/// `omega_t` are the horizontal asymptotes of the longitudinal and
/// transverse acoustic branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicScales {
    pub c_m: f64,
    pub c_s: f64,
    pub c_p: f64,
    pub omega_s: f64,
    pub omega_p: f64,
    pub omega_r: f64,
    pub omega_l: f64,
    pub omega_t: f64,
}

impl CharacteristicScales {
    pub fn max_cutoff(&self) -> f64 {
        self.omega_p.max(self.omega_s).max(self.omega_r)
    }
}

fn checked_sqrt(name: &'static str, radicand: f64) -> Result<f64, MaterialError> {
    if radicand < 0.0 {
        Err(MaterialError::NegativeRadicand(name))
    } else {
        Ok(radicand.sqrt())
    }
}

pub fn characteristic_scales(
    p: &MaterialParameters,
) -> Result<CharacteristicScales, MaterialError> {
    let eta = p.eta();
    let rho = p.rho();
    let bulk_e = 3.0 * p.lambda_e() + 2.0 * p.mu_e();
    let bulk_h = 3.0 * p.lambda_h() + 2.0 * p.mu_h();
    Ok(CharacteristicScales {
        c_m: checked_sqrt("c_m", p.alpha_c() / eta)?,
        c_s: checked_sqrt("c_s", (p.mu_e() + p.mu_c()) / rho)?,
        c_p: checked_sqrt("c_p", (p.lambda_e() + 2.0 * p.mu_e()) / rho)?,
        omega_s: checked_sqrt("omega_s", 2.0 * (p.mu_e() + p.mu_h()) / eta)?,
        omega_p: checked_sqrt("omega_p", (bulk_e + bulk_h) / eta)?,
        omega_r: checked_sqrt("omega_r", 2.0 * p.mu_c() / eta)?,
        omega_l: checked_sqrt("omega_l", (p.lambda_h() + 2.0 * p.mu_h()) / eta)?,
        omega_t: checked_sqrt("omega_t", p.mu_h() / eta)?,
    })
}

/// Homogenized (macroscopic) Lamé parameters, in Pa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacroLame {
    pub lambda_macro: f64,
    pub mu_macro: f64,
}

fn is_degenerate(denominator: f64, a: f64, b: f64) -> bool {
    denominator.abs() <= DEGENERATE_DENOMINATOR * (a.abs() + b.abs()) || denominator == 0.0
}

/// Macroscopic Lamé parameters from the micro set: `mu` is the harmonic-mean
/// combination of `mu_e` and `mu_h`, and the bulk-like combination `2mu + 3lambda`
/// combines `2mu_e + 3lambda_e` with `2mu_h + 3lambda_h` the same way.
pub fn macro_from_micro(p: &MaterialParameters) -> Result<MacroLame, MaterialError> {
    let (mu_e, mu_h) = (p.mu_e(), p.mu_h());
    let mu_sum = mu_e + mu_h;
    if is_degenerate(mu_sum, mu_e, mu_h) {
        return Err(MaterialError::DegenerateHomogenization("mu"));
    }
    let bulk_e = 2.0 * mu_e + 3.0 * p.lambda_e();
    let bulk_h = 2.0 * mu_h + 3.0 * p.lambda_h();
    let bulk_sum = bulk_e + bulk_h;
    if is_degenerate(bulk_sum, bulk_e, bulk_h) {
        return Err(MaterialError::DegenerateHomogenization("2*mu + 3*lambda"));
    }
    let mu_macro = mu_e * mu_h / mu_sum;
    let bulk_macro = bulk_h * bulk_e / bulk_sum;
    Ok(MacroLame {
        lambda_macro: (bulk_macro - 2.0 * mu_macro) / 3.0,
        mu_macro,
    })
}

/// Inverts the shear channel of the homogenization: `mu_e = mu_h mu / (mu_h - mu)`.
pub fn micro_from_macro(mu_macro: f64, mu_h: f64) -> Result<f64, MaterialError> {
    if !(mu_macro >= 0.0 && mu_h > mu_macro) {
        return Err(MaterialError::InvalidOrdering { mu_macro, mu_h });
    }
    Ok(mu_h * mu_macro / (mu_h - mu_macro))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const MPA: f64 = 1e6;

    fn reference_set(mu_c: f64) -> MaterialParameters {
        MaterialParameters::reference(mu_c).unwrap()
    }

    #[test]
    fn reference_set_is_definite() {
        let report = validate_definiteness(&reference_set(300.0 * MPA));
        assert!(report.passed());
        assert_eq!(report.results.len(), 6);
    }

    #[test]
    fn zero_couple_modulus_is_admissible() {
        let report = validate_definiteness(&reference_set(0.0));
        assert!(report.passed());
        let mu_c = report
            .results
            .iter()
            .find(|r| r.condition == DefinitenessCondition::MuCNonNegative)
            .unwrap();
        assert_eq!(mu_c.margin, 0.0);
    }

    #[test]
    fn negative_mu_h_fails_exactly_one_condition() {
        let values = ParameterValues {
            mu_h: -1.0,
            ..reference_set(300.0 * MPA).values()
        };
        let report = validate_definiteness(&MaterialParameters::new(values).unwrap());
        assert!(!report.passed());
        let failed: Vec<_> = report.failures().map(|r| r.condition).collect();
        assert_eq!(failed, vec![DefinitenessCondition::MuHPositive]);
        let bulk_h = report
            .results
            .iter()
            .find(|r| r.condition == DefinitenessCondition::BulkHPositive)
            .unwrap();
        assert_eq!(bulk_h.margin, 3.0 * 100e6 - 2.0);
    }

    #[test]
    fn construction_rejects_bad_densities() {
        let v = reference_set(0.0).values();
        assert!(matches!(
            MaterialParameters::new(ParameterValues { eta: 0.0, ..v }),
            Err(MaterialError::NonPositiveDensity { name: "eta", .. })
        ));
        assert!(matches!(
            MaterialParameters::new(ParameterValues { rho: -1.0, ..v }),
            Err(MaterialError::NonPositiveDensity { name: "rho", .. })
        ));
        assert!(matches!(
            MaterialParameters::new(ParameterValues {
                mu_e: f64::NAN,
                ..v
            }),
            Err(MaterialError::NonFinite { name: "mu_e", .. })
        ));
    }

    #[test]
    fn reference_scales() {
        let s = characteristic_scales(&reference_set(300.0 * MPA)).unwrap();
        assert_relative_eq!(s.omega_l, (300e6f64 / 1e-2).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(s.omega_l, 1.7321e5, max_relative = 1e-4);
        assert_relative_eq!(s.omega_s, 2.4495e5, max_relative = 1e-4);
        assert_relative_eq!(s.omega_r, 2.4495e5, max_relative = 1e-4);
        assert_relative_eq!(s.omega_t, 1.0e5, max_relative = 1e-15);
        assert_relative_eq!(s.c_m, 424.26, max_relative = 1e-5);
    }

    #[test]
    fn omega_r_vanishes_with_mu_c() {
        let s = characteristic_scales(&reference_set(0.0)).unwrap();
        assert_eq!(s.omega_r, 0.0);
        let s = characteristic_scales(&reference_set(1.0)).unwrap();
        assert!(s.omega_r > 0.0);
    }

    #[test]
    fn negative_radicand_is_reported() {
        let v = ParameterValues {
            mu_h: -1.0,
            ..reference_set(300.0 * MPA).values()
        };
        let err = characteristic_scales(&MaterialParameters::new(v).unwrap()).unwrap_err();
        assert_eq!(err, MaterialError::NegativeRadicand("omega_t"));
    }

    #[test]
    fn reference_macro_moduli() {
        let lame = macro_from_micro(&reference_set(300.0 * MPA)).unwrap();
        assert!((lame.mu_macro / MPA - 66.7).abs() <= 0.05);
        assert!((lame.lambda_macro / MPA - 82.5).abs() <= 0.1);
        assert!(100.0 * MPA > lame.mu_macro);
    }

    #[test]
    fn stiff_micro_limit_recovers_mu_e() {
        let v = ParameterValues {
            mu_h: 1e12 * 200e6,
            ..reference_set(0.0).values()
        };
        let lame = macro_from_micro(&MaterialParameters::new(v).unwrap()).unwrap();
        assert_relative_eq!(lame.mu_macro, 200e6, max_relative = 1e-6);
    }

    #[test]
    fn degenerate_homogenization() {
        let v = ParameterValues {
            mu_e: 100e6,
            mu_h: -100e6,
            ..reference_set(0.0).values()
        };
        assert_eq!(
            macro_from_micro(&MaterialParameters::new(v).unwrap()),
            Err(MaterialError::DegenerateHomogenization("mu"))
        );
    }

    #[test]
    fn micro_from_macro_examples() {
        assert_relative_eq!(
            micro_from_macro(200.0 / 3.0 * MPA, 100.0 * MPA).unwrap(),
            200.0 * MPA,
            max_relative = 1e-12
        );
        assert_eq!(micro_from_macro(0.0, 100.0 * MPA).unwrap(), 0.0);
        assert_relative_eq!(
            micro_from_macro(50.0 * MPA, 100.0 * MPA).unwrap(),
            100.0 * MPA,
            max_relative = 1e-15
        );
        assert!(matches!(
            micro_from_macro(100.0 * MPA, 100.0 * MPA),
            Err(MaterialError::InvalidOrdering { .. })
        ));
    }

    prop_compose! {
        fn definite_params()(
            mu_e in 1e6..1e9f64,
            lambda_e_frac in -0.6..3.0f64,
            mu_c in 0.0..1e9f64,
            mu_h in 1e6..1e9f64,
            lambda_h_frac in -0.6..3.0f64,
            alpha_c in 1e1..1e5f64,
            rho in 500.0..2e4f64,
            eta in 1e-4..1.0f64,
        ) -> MaterialParameters {
            MaterialParameters::new(ParameterValues {
                mu_e,
                lambda_e: lambda_e_frac * mu_e,
                mu_c,
                mu_h,
                lambda_h: lambda_h_frac * mu_h,
                alpha_c,
                rho,
                eta,
            })
            .unwrap()
        }
    }

    proptest! {
        #[test]
        fn shear_channel_round_trip(p in definite_params()) {
            prop_assume!(validate_definiteness(&p).passed());
            let lame = macro_from_micro(&p).unwrap();
            let mu_e = micro_from_macro(lame.mu_macro, p.mu_h()).unwrap();
            prop_assert!((mu_e - p.mu_e()).abs() <= 1e-12 * p.mu_e());
        }

        #[test]
        fn frequency_ordering_for_positive_lambdas(
            p in definite_params(),
        ) {
            prop_assume!(p.lambda_e() > 0.0 && p.lambda_h() > 0.0);
            let s = characteristic_scales(&p).unwrap();
            prop_assert!(s.omega_p > s.omega_s);
            prop_assert!(s.omega_s > s.omega_t);
            prop_assert!(s.omega_l > s.omega_t);
        }

        #[test]
        fn scales_are_covariant(p in definite_params(), a in 1e-3..1e3f64) {
            let s = characteristic_scales(&p).unwrap();
            let t = characteristic_scales(&p.scale_moduli(a).unwrap()).unwrap();
            let root = a.sqrt();
            for (x, y) in [
                (s.c_m, t.c_m), (s.c_s, t.c_s), (s.c_p, t.c_p),
                (s.omega_s, t.omega_s), (s.omega_p, t.omega_p), (s.omega_r, t.omega_r),
                (s.omega_l, t.omega_l), (s.omega_t, t.omega_t),
            ] {
                prop_assert!((y - root * x).abs() <= 1e-12 * (root * x).abs().max(f64::MIN_POSITIVE));
            }
        }

        #[test]
        fn definite_sets_have_real_scales(p in definite_params()) {
            prop_assume!(validate_definiteness(&p).passed());
            prop_assert!(characteristic_scales(&p).is_ok());
        }
    }
}
