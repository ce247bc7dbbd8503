use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cubic::Cubic;
use crate::material::{CharacteristicScales, MaterialParameters};

/// The three decoupled sets of plane-wave equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveFamily {
    /// `(u_1, P^D, P^S)`
    Longitudinal,
    /// `(u_xi, P_(1xi), P_[1xi])`, identical for `xi = 2, 3`.
    Transverse,
    /// `P_(23)`, `P_[23]` and `P^V`, each on its own.
    Uncoupled,
}

/// Transverse polarization direction. Both produce the same matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Second,
    Third,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionMatrix {
    pub entries: [[Complex64; 3]; 3],
    /// Per entry, the sum of the magnitudes of its additive parts (so a
    /// diagonal entry `-omega² + b` contributes `omega² + |b|`).
    pub magnitudes: [[f64; 3]; 3],
    pub family: WaveFamily,
}

impl DispersionMatrix {
    /// The six signed permutation products of the Leibniz expansion.
    pub fn expansion_terms(&self) -> [Complex64; 6] {
        let a = &self.entries;
        [
            a[0][0] * a[1][1] * a[2][2],
            a[0][1] * a[1][2] * a[2][0],
            a[0][2] * a[1][0] * a[2][1],
            -(a[0][2] * a[1][1] * a[2][0]),
            -(a[0][0] * a[1][2] * a[2][1]),
            -(a[0][1] * a[1][0] * a[2][2]),
        ]
    }

    pub fn determinant(&self) -> Complex64 {
        self.expansion_terms().iter().sum()
    }

    /// Sum of the magnitudes of every monomial in the fully expanded
    /// determinant. Determinant residuals are judged against this, since the
    /// rows carry different physical dimensions and near a root the signed
    /// terms cancel.
    pub fn expansion_scale(&self) -> f64 {
        let m = &self.magnitudes;
        m[0][0] * m[1][1] * m[2][2]
            + m[0][1] * m[1][2] * m[2][0]
            + m[0][2] * m[1][0] * m[2][1]
            + m[0][2] * m[1][1] * m[2][0]
            + m[0][0] * m[1][2] * m[2][1]
            + m[0][1] * m[1][0] * m[2][2]
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

fn off_diagonal_magnitudes(entries: &[[Complex64; 3]; 3], diagonal: [f64; 3]) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = if i == j {
                diagonal[i]
            } else {
                entries[i][j].norm()
            };
        }
    }
    m
}

/// Longitudinal matrix acting on the amplitudes of `(u_1, P^D, P^S)`.
pub fn build_longitudinal_matrix(
    p: &MaterialParameters,
    s: &CharacteristicScales,
    k: f64,
    omega: f64,
) -> DispersionMatrix {
    let (rho, eta) = (p.rho(), p.eta());
    let bulk_e = 3.0 * p.lambda_e() + 2.0 * p.mu_e();
    let w2 = omega * omega;
    let k2 = k * k;
    let cm2 = s.c_m * s.c_m;
    let entries = [
        [
            re(-w2 + s.c_p * s.c_p * k2),
            im(k * 2.0 * p.mu_e() / rho),
            im(k * bulk_e / rho),
        ],
        [
            im(-k * (4.0 / 3.0) * p.mu_e() / eta),
            re(-w2 + k2 * cm2 / 3.0 + s.omega_s * s.omega_s),
            re(-(2.0 / 3.0) * k2 * cm2),
        ],
        [
            im(-k * bulk_e / (3.0 * eta)),
            re(-k2 * cm2 / 3.0),
            re(-w2 + (2.0 / 3.0) * k2 * cm2 + s.omega_p * s.omega_p),
        ],
    ];
    let diagonal = [
        w2 + s.c_p * s.c_p * k2,
        w2 + k2 * cm2 / 3.0 + s.omega_s * s.omega_s,
        w2 + (2.0 / 3.0) * k2 * cm2 + s.omega_p * s.omega_p,
    ];
    DispersionMatrix {
        magnitudes: off_diagonal_magnitudes(&entries, diagonal),
        entries,
        family: WaveFamily::Longitudinal,
    }
}

/// Transverse matrix acting on `(u_xi, P_(1xi), P_[1xi])`; rows two and
/// three carry the doubled `-2 omega²` and `2 omega_s²`, `2 omega_r²` terms.
pub fn build_transverse_matrix(
    p: &MaterialParameters,
    s: &CharacteristicScales,
    k: f64,
    omega: f64,
) -> DispersionMatrix {
    let (rho, eta) = (p.rho(), p.eta());
    let w2 = omega * omega;
    let k2 = k * k;
    let cm2 = s.c_m * s.c_m;
    let wr2 = s.omega_r * s.omega_r;
    let entries = [
        [
            re(-w2 + k2 * s.c_s * s.c_s),
            im(k * 2.0 * p.mu_e() / rho),
            im(-k * (eta / rho) * wr2),
        ],
        [
            im(-k * 2.0 * p.mu_e() / eta),
            re(-2.0 * w2 + k2 * cm2 + 2.0 * s.omega_s * s.omega_s),
            re(k2 * cm2),
        ],
        [
            im(k * wr2),
            re(k2 * cm2),
            re(-2.0 * w2 + k2 * cm2 + 2.0 * wr2),
        ],
    ];
    let diagonal = [
        w2 + k2 * s.c_s * s.c_s,
        2.0 * w2 + k2 * cm2 + 2.0 * s.omega_s * s.omega_s,
        2.0 * w2 + k2 * cm2 + 2.0 * wr2,
    ];
    DispersionMatrix {
        magnitudes: off_diagonal_magnitudes(&entries, diagonal),
        entries,
        family: WaveFamily::Transverse,
    }
}

/// Transverse matrix for a given polarization. `xi = 2` and `xi = 3` share
/// one construction.
pub fn transverse_matrix_for(
    _polarization: Polarization,
    p: &MaterialParameters,
    s: &CharacteristicScales,
    k: f64,
    omega: f64,
) -> DispersionMatrix {
    build_transverse_matrix(p, s, k, omega)
}

/// `det A(k, omega)` written as a cubic in `s = omega²`.
///
/// Each matrix has the shape `B - s D` with `D` diagonal, and with the
/// wave-number couplings in the first row and column of the form
/// `B_1j = i k g_1j`, `B_j1 = -i k g_j1`. Expanding gives
///
/// ```text
/// det = det B - s (d1 M11 + d2 M22 + d3 M33)
///             + s² (d1 d2 B33 + d1 d3 B22 + d2 d3 B11) - s³ d1 d2 d3
/// ```
///
/// with `M_ii` the principal 2×2 minors of `B`, where every product that
/// pairs an `i k` entry with a `-i k` entry is real.
#[derive(Debug, Clone, Copy)]
struct Expansion {
    d: [f64; 3],
    b11: f64,
    b22: f64,
    b33: f64,
    b23: f64,
    b32: f64,
    g12: f64,
    g13: f64,
    g21: f64,
    g31: f64,
    k2: f64,
}

impl Expansion {
    fn longitudinal(p: &MaterialParameters, s: &CharacteristicScales, k: f64) -> Self {
        let k2 = k * k;
        let cm2k2 = s.c_m * s.c_m * k2;
        let bulk_e = 3.0 * p.lambda_e() + 2.0 * p.mu_e();
        Self {
            d: [1.0, 1.0, 1.0],
            b11: s.c_p * s.c_p * k2,
            b22: cm2k2 / 3.0 + s.omega_s * s.omega_s,
            b33: 2.0 * cm2k2 / 3.0 + s.omega_p * s.omega_p,
            b23: -2.0 * cm2k2 / 3.0,
            b32: -cm2k2 / 3.0,
            g12: 2.0 * p.mu_e() / p.rho(),
            g13: bulk_e / p.rho(),
            g21: 4.0 * p.mu_e() / (3.0 * p.eta()),
            g31: bulk_e / (3.0 * p.eta()),
            k2,
        }
    }

    fn transverse(p: &MaterialParameters, s: &CharacteristicScales, k: f64) -> Self {
        let k2 = k * k;
        let cm2k2 = s.c_m * s.c_m * k2;
        let wr2 = s.omega_r * s.omega_r;
        Self {
            d: [1.0, 2.0, 2.0],
            b11: s.c_s * s.c_s * k2,
            b22: cm2k2 + 2.0 * s.omega_s * s.omega_s,
            b33: cm2k2 + 2.0 * wr2,
            b23: cm2k2,
            b32: cm2k2,
            g12: 2.0 * p.mu_e() / p.rho(),
            g13: -(p.eta() / p.rho()) * wr2,
            g21: 2.0 * p.mu_e() / p.eta(),
            g31: -wr2,
            k2,
        }
    }

    fn cubic(&self) -> Cubic {
        let [d1, d2, d3] = self.d;
        let k2 = self.k2;
        let m11 = self.b22 * self.b33 - self.b23 * self.b32;
        let m22 = self.b11 * self.b33 - k2 * self.g13 * self.g31;
        let m33 = self.b11 * self.b22 - k2 * self.g12 * self.g21;
        let det_b = self.b11 * m11 - k2 * self.g12 * self.g21 * self.b33
            + k2 * self.g12 * self.g31 * self.b23
            + k2 * self.g13 * self.g21 * self.b32
            - k2 * self.g13 * self.g31 * self.b22;
        Cubic::new([
            det_b,
            -(d1 * m11 + d2 * m22 + d3 * m33),
            d1 * d2 * self.b33 + d1 * d3 * self.b22 + d2 * d3 * self.b11,
            -d1 * d2 * d3,
        ])
    }

    /// Largest diagonal ratio `B_ii / d_i`, a proxy for the largest root.
    fn root_scale(&self) -> f64 {
        (self.b11 / self.d[0])
            .abs()
            .max((self.b22 / self.d[1]).abs())
            .max((self.b33 / self.d[2]).abs())
    }
}

/// Closed-form determinant polynomial in `s = omega²` together with a scale
/// of the same order as its largest root.
pub(crate) fn determinant_cubic(
    family: WaveFamily,
    p: &MaterialParameters,
    s: &CharacteristicScales,
    k: f64,
) -> (Cubic, f64) {
    let expansion = match family {
        WaveFamily::Longitudinal => Expansion::longitudinal(p, s, k),
        WaveFamily::Transverse => Expansion::transverse(p, s, k),
        WaveFamily::Uncoupled => unreachable!("uncoupled branches have closed forms"),
    };
    (expansion.cubic(), expansion.root_scale())
}

/// Coefficients `[c0, c1, c2, c3]` of `det A` as a polynomial in `omega²`.
pub fn determinant_coefficients(
    family: WaveFamily,
    p: &MaterialParameters,
    s: &CharacteristicScales,
    k: f64,
) -> Option<[f64; 4]> {
    match family {
        WaveFamily::Uncoupled => None,
        _ => Some(determinant_cubic(family, p, s, k).0.coeffs),
    }
}
