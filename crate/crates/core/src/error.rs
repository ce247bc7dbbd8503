use thiserror::Error;

use crate::bandgap::BandGapError;
use crate::config::ConfigError;
use crate::dispersion::DispersionError;
use crate::material::{DefinitenessReport, MaterialError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Material(#[from] MaterialError),
    #[error(transparent)]
    Dispersion(#[from] DispersionError),
    #[error(transparent)]
    BandGap(#[from] BandGapError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("parameter set is not positive definite: {}", failed_conditions(.0))]
    Indefinite(DefinitenessReport),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn failed_conditions(report: &DefinitenessReport) -> String {
    report
        .failures()
        .map(|r| format!("{} violated (margin {:e})", r.condition, r.margin))
        .collect::<Vec<_>>()
        .join(", ")
}
