//! CSV and JSON emitters. Every Hz value goes through
//! [`hz_from_rad_per_s`].

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

use crate::bandgap::{BandGapReport, GapInterval, SweepCase};
use crate::dispersion::DispersionBranch;
use crate::units::hz_from_rad_per_s;

pub const CURVE_HEADER: &str = "branch,multiplicity,k_rad_per_m,omega_rad_per_s,frequency_hz";

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRecord {
    pub branch: &'static str,
    pub multiplicity: u8,
    pub k_rad_per_m: f64,
    pub omega_rad_per_s: f64,
    pub frequency_hz: f64,
}

/// Rows of all branches, ordered by label text and then by k.
pub fn curve_records(branches: &[DispersionBranch]) -> Vec<CurveRecord> {
    let mut rows: Vec<CurveRecord> = branches
        .iter()
        .flat_map(|b| {
            b.points.iter().map(move |p| CurveRecord {
                branch: b.label.as_str(),
                multiplicity: b.multiplicity,
                k_rad_per_m: p.k,
                omega_rad_per_s: p.omega,
                frequency_hz: hz_from_rad_per_s(p.omega),
            })
        })
        .collect();
    rows.sort_by(|a, b| {
        a.branch
            .cmp(b.branch)
            .then(a.k_rad_per_m.total_cmp(&b.k_rad_per_m))
    });
    rows
}

/// Writes the curves CSV and returns the number of data rows.
pub fn emit_curves<W: Write>(branches: &[DispersionBranch], mut out: W) -> io::Result<usize> {
    let rows = curve_records(branches);
    let mut buf = io::BufWriter::new(&mut out);
    writeln!(buf, "{CURVE_HEADER}")?;
    for r in &rows {
        writeln!(
            buf,
            "{},{},{},{},{}",
            r.branch, r.multiplicity, r.k_rad_per_m, r.omega_rad_per_s, r.frequency_hz
        )?;
    }
    buf.flush()?;
    Ok(rows.len())
}

fn gap_json(gap: &GapInterval) -> Value {
    json!({
        "low_rad_per_s": gap.low,
        "high_rad_per_s": gap.high,
        "low_hz": hz_from_rad_per_s(gap.low),
        "high_hz": hz_from_rad_per_s(gap.high),
        "source": gap.source,
    })
}

pub fn gap_report_json(report: &BandGapReport) -> Value {
    let c = report.clauses;
    json!({
        "mu_c0_pa": report.mu_c_threshold,
        "clauses": {
            "mu_e_positive": c.mu_e_positive,
            "lambda_h_below_two_mu_e": c.lambda_h_below_two_mu_e,
            "mu_c_above_threshold": c.mu_c_above_threshold,
            "all": c.all(),
        },
        "analytic_gap": report.analytic_gap.as_ref().map(gap_json),
        "numeric_gaps": report.numeric_gaps.iter().map(gap_json).collect::<Vec<_>>(),
        "agreement": report.agreement,
        "omega_ceiling_rad_per_s": report.omega_ceiling,
        "parameters_si": report.parameters,
        "scales": report.scales,
    })
}

pub fn sweep_json(cases: &[SweepCase]) -> Value {
    Value::Array(
        cases
            .iter()
            .map(|c| {
                json!({
                    "factor": c.factor,
                    "mu_c_pa": c.mu_c,
                    "report": gap_report_json(&c.report),
                })
            })
            .collect(),
    )
}

/// Pretty JSON with a trailing newline. Object keys come out sorted.
pub fn write_json<W: Write>(value: &Value, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()
}
