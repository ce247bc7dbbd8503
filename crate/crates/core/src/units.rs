//! The small unit vocabulary accepted at the configuration boundary.

use std::f64::consts::TAU;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// Pa
    Pressure,
    /// m
    Length,
    /// kg/m³
    Density,
    /// kg/m (micro-inertia)
    LineDensity,
    /// Pa·m²
    PressureArea,
}

impl Dimension {
    pub fn si_unit(self) -> Unit {
        match self {
            Dimension::Pressure => Unit::Pa,
            Dimension::Length => Unit::M,
            Dimension::Density => Unit::KgPerM3,
            Dimension::LineDensity => Unit::KgPerM,
            Dimension::PressureArea => Unit::PaM2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Pa,
    MPa,
    GPa,
    M,
    Mm,
    KgPerM3,
    KgPerM,
    PaM2,
    MPaM2,
}

impl Unit {
    pub fn parse(text: &str) -> Option<Unit> {
        let unit = match text.trim() {
            "Pa" => Unit::Pa,
            "MPa" => Unit::MPa,
            "GPa" => Unit::GPa,
            "m" => Unit::M,
            "mm" => Unit::Mm,
            "kg/m3" | "kg/m^3" | "kg/m³" => Unit::KgPerM3,
            "kg/m" => Unit::KgPerM,
            "Pa·m2" | "Pa*m2" | "Pa m2" | "Pa·m²" => Unit::PaM2,
            "MPa·m2" | "MPa*m2" | "MPa m2" | "MPa·m²" => Unit::MPaM2,
            _ => return None,
        };
        Some(unit)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Pa => "Pa",
            Unit::MPa => "MPa",
            Unit::GPa => "GPa",
            Unit::M => "m",
            Unit::Mm => "mm",
            Unit::KgPerM3 => "kg/m3",
            Unit::KgPerM => "kg/m",
            Unit::PaM2 => "Pa·m2",
            Unit::MPaM2 => "MPa·m2",
        }
    }

    pub fn dimension(self) -> Dimension {
        match self {
            Unit::Pa | Unit::MPa | Unit::GPa => Dimension::Pressure,
            Unit::M | Unit::Mm => Dimension::Length,
            Unit::KgPerM3 => Dimension::Density,
            Unit::KgPerM => Dimension::LineDensity,
            Unit::PaM2 | Unit::MPaM2 => Dimension::PressureArea,
        }
    }

    /// Multiplier taking a value in this unit to SI.
    pub fn to_si(self) -> f64 {
        match self {
            Unit::Pa | Unit::M | Unit::KgPerM3 | Unit::KgPerM | Unit::PaM2 => 1.0,
            Unit::MPa | Unit::MPaM2 => 1e6,
            Unit::GPa => 1e9,
            Unit::Mm => 1e-3,
        }
    }

    /// `value` in this unit, converted to SI. SI units pass through exactly.
    pub fn convert(self, value: f64) -> f64 {
        let factor = self.to_si();
        if factor == 1.0 {
            value
        } else {
            value * factor
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Splits `"300MPa"`, `"300 MPa"` or `"3e8"` into a number and an optional
/// unit string.
pub fn split_quantity(text: &str) -> Option<(f64, Option<&str>)> {
    let text = text.trim();
    // longest prefix that parses as a float
    let split = (1..=text.len())
        .rev()
        .filter(|&i| text.is_char_boundary(i))
        .find(|&i| text[..i].trim_end().parse::<f64>().is_ok())?;
    let value: f64 = text[..split].trim_end().parse().ok()?;
    let rest = text[split..].trim();
    Some((value, (!rest.is_empty()).then_some(rest)))
}

/// Angular frequency to cycles per second. Every Hz value in reports and
/// curves goes through this function.
pub fn hz_from_rad_per_s(omega: f64) -> f64 {
    omega / TAU
}
