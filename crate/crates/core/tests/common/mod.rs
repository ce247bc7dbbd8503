//! Test-only reference implementation: characteristic frequencies from raw
//! moduli, dispersion matrices assembled entry by entry, complex cofactor
//! determinants and a bracketing root scan. Nothing here calls the library's
//! cubic expansion or companion solver.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use relaxed_micromorphic::material::{MaterialParameters, ParameterValues};

pub const REFERENCE: ParameterValues = ParameterValues {
    mu_e: 200e6,
    lambda_e: 400e6,
    mu_c: 300e6,
    mu_h: 100e6,
    lambda_h: 100e6,
    alpha_c: 1.8e3,
    rho: 2500.0,
    eta: 1e-2,
};

#[derive(Debug, Clone, Copy)]
pub struct Cutoffs {
    pub omega_s: f64,
    pub omega_p: f64,
    pub omega_r: f64,
}

pub fn cutoffs(v: &ParameterValues) -> Cutoffs {
    Cutoffs {
        omega_s: (2.0 * (v.mu_e + v.mu_h) / v.eta).sqrt(),
        omega_p: ((3.0 * v.lambda_e + 2.0 * v.mu_e + 3.0 * v.lambda_h + 2.0 * v.mu_h) / v.eta)
            .sqrt(),
        omega_r: (2.0 * v.mu_c / v.eta).sqrt(),
    }
}

/// A positive-definite parameter set with every modulus spread over a few
/// decades, including negative Lamé parameters where definiteness allows.
pub fn random_parameters<R: Rng>(rng: &mut R, allow_zero_mu_c: bool) -> MaterialParameters {
    let log = |rng: &mut R, lo: f64, hi: f64| 10f64.powf(rng.random_range(lo..hi));
    let mu_e = log(rng, 6.0, 10.0);
    let mu_h = log(rng, 6.0, 10.0);
    let lambda_e = rng.random_range(-0.6..3.0) * mu_e;
    let lambda_h = rng.random_range(-0.6..3.0) * mu_h;
    let mu_c = if allow_zero_mu_c && rng.random_bool(0.1) {
        0.0
    } else {
        log(rng, 5.0, 10.0)
    };
    MaterialParameters::new(ParameterValues {
        mu_e,
        lambda_e,
        mu_c,
        mu_h,
        lambda_h,
        alpha_c: log(rng, 0.0, 5.0),
        rho: log(rng, 2.5, 4.5),
        eta: log(rng, -4.0, 0.0),
    })
    .unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Longitudinal,
    Transverse,
}

type M3 = [[Complex64; 3]; 3];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The dispersion matrix at `(k, omega)` written straight from the moduli.
pub fn matrix(family: Family, v: &ParameterValues, k: f64, omega: f64) -> M3 {
    let ParameterValues {
        mu_e,
        lambda_e,
        mu_c,
        mu_h,
        lambda_h,
        alpha_c,
        rho,
        eta,
    } = *v;
    let w2 = omega * omega;
    let k2 = k * k;
    let a = alpha_c / eta;
    match family {
        Family::Longitudinal => {
            let bulk = 3.0 * lambda_e + 2.0 * mu_e;
            let bulk_h = 3.0 * lambda_h + 2.0 * mu_h;
            [
                [
                    c(-w2 + (lambda_e + 2.0 * mu_e) / rho * k2, 0.0),
                    c(0.0, 2.0 * mu_e * k / rho),
                    c(0.0, bulk * k / rho),
                ],
                [
                    c(0.0, -4.0 * mu_e * k / (3.0 * eta)),
                    c(-w2 + a * k2 / 3.0 + 2.0 * (mu_e + mu_h) / eta, 0.0),
                    c(-2.0 * a * k2 / 3.0, 0.0),
                ],
                [
                    c(0.0, -bulk * k / (3.0 * eta)),
                    c(-a * k2 / 3.0, 0.0),
                    c(-w2 + 2.0 * a * k2 / 3.0 + (bulk + bulk_h) / eta, 0.0),
                ],
            ]
        }
        Family::Transverse => [
            [
                c(-w2 + (mu_e + mu_c) / rho * k2, 0.0),
                c(0.0, 2.0 * mu_e * k / rho),
                c(0.0, -2.0 * mu_c * k / rho),
            ],
            [
                c(0.0, -2.0 * mu_e * k / eta),
                c(-2.0 * w2 + a * k2 + 4.0 * (mu_e + mu_h) / eta, 0.0),
                c(a * k2, 0.0),
            ],
            [
                c(0.0, 2.0 * mu_c * k / eta),
                c(a * k2, 0.0),
                c(-2.0 * w2 + a * k2 + 4.0 * mu_c / eta, 0.0),
            ],
        ],
    }
}

pub fn det(m: &M3) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Upper bound on every root from Gershgorin discs of `D^-1 B`.
fn omega_bound(family: Family, v: &ParameterValues, k: f64) -> f64 {
    let b = matrix(family, v, k, 0.0);
    let d = match family {
        Family::Longitudinal => [1.0, 1.0, 1.0],
        Family::Transverse => [1.0, 2.0, 2.0],
    };
    (0..3)
        .map(|i| b[i].iter().map(|z| z.norm()).sum::<f64>() / d[i])
        .fold(0.0, f64::max)
        .sqrt()
        * 1.01
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The three roots of `Re det A(k, ·)` on `[0, bound]`, found by a
/// sign-change scan in `omega²` on a geometric grid (roots can spread over
/// many decades), refined until three brackets appear.
pub fn scan_roots(family: Family, v: &ParameterValues, k: f64) -> Option<[f64; 3]> {
    let bound = omega_bound(family, v, k);
    let f = |s: f64| det(&matrix(family, v, k, s.max(0.0).sqrt())).re;
    let s_max = bound * bound;
    let s_min = s_max * 1e-24;
    let mut steps = 1024;
    while steps <= 1 << 20 {
        let ratio = (s_max / s_min).powf(1.0 / steps as f64);
        let mut roots = Vec::with_capacity(3);
        let mut prev_s = 0.0;
        let mut prev = f(0.0);
        if prev == 0.0 {
            roots.push(0.0);
        }
        for i in 0..=steps {
            let s = s_min * ratio.powi(i);
            let cur = f(s);
            if cur == 0.0 {
                roots.push(s);
            } else if prev != 0.0 && (cur > 0.0) != (prev > 0.0) {
                roots.push(bisect(&f, prev_s, s));
            }
            prev = cur;
            prev_s = s;
        }
        if roots.len() == 3 {
            let mut out = [0.0; 3];
            for (o, s) in out.iter_mut().zip(&roots) {
                *o = s.sqrt();
            }
            return Some(out);
        }
        steps *= 4;
    }
    None
}

/// Relative difference with an absolute floor for roots at zero.
pub fn rel_diff(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}
