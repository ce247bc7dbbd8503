//! Real roots of a cubic via the eigenvalues of its companion matrix.

use nalgebra::Matrix3;

/// `c[0] + c[1] x + c[2] x² + c[3] x³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    pub coeffs: [f64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CubicRootError {
    /// Leading coefficient is zero (or not finite).
    Degenerate,
    /// A conjugate pair whose imaginary part exceeds the tolerance.
    ComplexPair { re: f64, im: f64 },
}

impl Cubic {
    pub fn new(coeffs: [f64; 4]) -> Self {
        Self { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let [c0, c1, c2, c3] = self.coeffs;
        ((c3 * x + c2) * x + c1) * x + c0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let [_, c1, c2, c3] = self.coeffs;
        (3.0 * c3 * x + 2.0 * c2) * x + c1
    }

    /// Substitutes `x = scale * t`, returning the cubic in `t`.
    pub fn rescaled(&self, scale: f64) -> Self {
        let [c0, c1, c2, c3] = self.coeffs;
        Self::new([
            c0,
            c1 * scale,
            c2 * scale * scale,
            c3 * scale * scale * scale,
        ])
    }

    fn companion(&self) -> Option<Matrix3<f64>> {
        let [c0, c1, c2, c3] = self.coeffs;
        if c3 == 0.0 || !c3.is_finite() {
            return None;
        }
        let (a0, a1, a2) = (c0 / c3, c1 / c3, c2 / c3);
        #[rustfmt::skip]
        let m = Matrix3::new(
            0.0, 0.0, -a0,
            1.0, 0.0, -a1,
            0.0, 1.0, -a2,
        );
        Some(m)
    }

    /// All three roots, required to be real, in ascending order.
    ///
    /// `imag_tolerance` is relative to the largest root magnitude (floored at
    /// one), so callers should rescale the cubic to roots of order unity
    /// first. Each root gets one Newton step, kept only when it lowers the
    /// residual; near a double root the step is usually rejected and the
    /// eigenvalue estimate stands.
    pub fn real_roots(&self, imag_tolerance: f64) -> Result<[f64; 3], CubicRootError> {
        let companion = self.companion().ok_or(CubicRootError::Degenerate)?;
        let eigen = companion.complex_eigenvalues();
        let magnitude = eigen.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
        let mut roots = [0.0; 3];
        for (slot, z) in roots.iter_mut().zip(eigen.iter()) {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(CubicRootError::Degenerate);
            }
            if z.im.abs() > imag_tolerance * magnitude {
                return Err(CubicRootError::ComplexPair { re: z.re, im: z.im });
            }
            *slot = self.polish(z.re);
        }
        roots.sort_by(f64::total_cmp);
        Ok(roots)
    }

    fn polish(&self, x: f64) -> f64 {
        let slope = self.derivative(x);
        if slope == 0.0 || !slope.is_finite() {
            return x;
        }
        let candidate = x - self.eval(x) / slope;
        if candidate.is_finite() && self.eval(candidate).abs() < self.eval(x).abs() {
            candidate
        } else {
            x
        }
    }
}
