use crate::material::{CharacteristicScales, MaterialParameters};

use super::matrix::determinant_cubic;
use super::{BranchLabel, DispersionError, WaveFamily};

/// Imaginary part allowed on a companion eigenvalue, relative to the
/// largest root of the rescaled cubic.
pub const IMAG_TOLERANCE: f64 = 1e-6;

/// Roots of the rescaled cubic in `[-NEGATIVE_CLAMP, 0)` are rounding noise
/// around a zero frequency and are clamped to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

/// The three uncoupled optic branches at wavenumber `k`, always in the
/// order TSO, TRO, TCVO.
pub fn uncoupled_omega(scales: &CharacteristicScales, k: f64) -> [(BranchLabel, f64); 3] {
    let spatial = k * k * scales.c_m * scales.c_m;
    let shear = (scales.omega_s * scales.omega_s + spatial).sqrt();
    let rotation = (scales.omega_r * scales.omega_r + spatial).sqrt();
    [
        (BranchLabel::TSO, shear),
        (BranchLabel::TRO, rotation),
        (BranchLabel::TCVO, shear),
    ]
}

/// Cutoffs of a coupled family, read off the diagonal matrix at `k = 0`.
fn cutoffs(family: WaveFamily, scales: &CharacteristicScales) -> [f64; 3] {
    let mut roots = match family {
        WaveFamily::Longitudinal => [0.0, scales.omega_s, scales.omega_p],
        _ => [0.0, scales.omega_s, scales.omega_r],
    };
    roots.sort_by(f64::total_cmp);
    roots
}

/// The three non-negative frequencies solving `det A(k, omega) = 0` for a
/// coupled family, ascending.
///
/// The determinant is a cubic in `s = omega²`; it is rescaled so its roots
/// are of order one and solved through its companion matrix.
pub fn coupled_omegas(
    family: WaveFamily,
    params: &MaterialParameters,
    scales: &CharacteristicScales,
    k: f64,
) -> Result<[f64; 3], DispersionError> {
    if family == WaveFamily::Uncoupled {
        return Err(DispersionError::NotCoupled);
    }
    if !(k.is_finite() && k >= 0.0) {
        return Err(DispersionError::InvalidWavenumber(k));
    }
    if k == 0.0 {
        return Ok(cutoffs(family, scales));
    }
    let (cubic, scale) = determinant_cubic(family, params, scales, k);
    if !(scale.is_finite() && scale > 0.0) {
        return Err(DispersionError::RootExtraction { family, k });
    }
    let roots = cubic
        .rescaled(scale)
        .real_roots(IMAG_TOLERANCE)
        .map_err(|e| match e {
            crate::cubic::CubicRootError::ComplexPair { re, im } => {
                DispersionError::ComplexRootPair {
                    family,
                    k,
                    re: re * scale,
                    im: im * scale,
                }
            }
            crate::cubic::CubicRootError::Degenerate => {
                DispersionError::RootExtraction { family, k }
            }
        })?;
    let mut omegas = [0.0; 3];
    for (omega, t) in omegas.iter_mut().zip(roots) {
        if t < -NEGATIVE_CLAMP {
            return Err(DispersionError::NegativeSquaredFrequency {
                family,
                k,
                value: t * scale,
            });
        }
        *omega = (t.max(0.0) * scale).sqrt();
    }
    Ok(omegas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::matrix::{build_longitudinal_matrix, build_transverse_matrix};
    use crate::material::characteristic_scales;

    fn setup(mu_c: f64) -> (MaterialParameters, CharacteristicScales) {
        let p = MaterialParameters::reference(mu_c).unwrap();
        let s = characteristic_scales(&p).unwrap();
        (p, s)
    }

    #[test]
    fn uncoupled_cutoffs() {
        let (_, s) = setup(300e6);
        let at_zero = uncoupled_omega(&s, 0.0);
        assert_eq!(at_zero[0], (BranchLabel::TSO, s.omega_s));
        assert_eq!(at_zero[1], (BranchLabel::TRO, s.omega_r));
        assert_eq!(at_zero[2], (BranchLabel::TCVO, s.omega_s));
    }

    #[test]
    fn uncoupled_without_curvature_stiffness_is_flat() {
        let (_, mut s) = setup(300e6);
        s.c_m = 0.0;
        for k in [0.0, 1.0, 1e4] {
            let w = uncoupled_omega(&s, k);
            assert_eq!(w[0].1, s.omega_s);
            assert_eq!(w[1].1, s.omega_r);
        }
    }

    #[test]
    fn uncoupled_reference_value() {
        let (_, s) = setup(300e6);
        // omega_s² = 6e10, k² c_m² = 1e6 * 1.8e5 = 1.8e11
        let tso = uncoupled_omega(&s, 1000.0)[0].1;
        assert!((tso - 2.4e11f64.sqrt()).abs() <= 1e-12 * tso);
        assert!((tso - 4.8990e5).abs() <= 1e-4 * 4.8990e5);
    }

    #[test]
    fn zero_wavenumber_cutoffs() {
        let (p, s) = setup(450e6);
        let l = coupled_omegas(WaveFamily::Longitudinal, &p, &s, 0.0).unwrap();
        assert_eq!(l, [0.0, s.omega_s, s.omega_p]);
        let t = coupled_omegas(WaveFamily::Transverse, &p, &s, 0.0).unwrap();
        assert_eq!(t, [0.0, s.omega_s.min(s.omega_r), s.omega_s.max(s.omega_r)]);
    }

    #[test]
    fn roots_annihilate_the_determinant() {
        let (p, s) = setup(300e6);
        for k in [1e-3, 1.0, 500.0, 1.08e4] {
            for family in [WaveFamily::Longitudinal, WaveFamily::Transverse] {
                let roots = coupled_omegas(family, &p, &s, k).unwrap();
                assert!(roots[0] <= roots[1] && roots[1] <= roots[2]);
                for w in roots {
                    let a = match family {
                        WaveFamily::Longitudinal => build_longitudinal_matrix(&p, &s, k, w),
                        _ => build_transverse_matrix(&p, &s, k, w),
                    };
                    assert!(
                        a.determinant().norm() <= 1e-8 * a.expansion_scale(),
                        "{family:?} k={k} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_bad_wavenumbers() {
        let (p, s) = setup(300e6);
        assert!(matches!(
            coupled_omegas(WaveFamily::Longitudinal, &p, &s, -1.0),
            Err(DispersionError::InvalidWavenumber(_))
        ));
        assert!(matches!(
            coupled_omegas(WaveFamily::Transverse, &p, &s, f64::NAN),
            Err(DispersionError::InvalidWavenumber(_))
        ));
        assert!(matches!(
            coupled_omegas(WaveFamily::Uncoupled, &p, &s, 1.0),
            Err(DispersionError::NotCoupled)
        ));
    }
}
