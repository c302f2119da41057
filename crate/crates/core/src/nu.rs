//! Parametric Nikiforov–Uvarov machinery for equations of the form
//!
//! ```text
//! ψ''(s) + (c₁ − c₂s)/(s(1 − c₃s)) ψ'(s) + (−ξ₁s² + ξ₂s − ξ₃)/(s²(1 − c₃s)²) ψ(s) = 0
//! ```
//!
//! `c₁, c₂, c₃` are treated as free inputs. The MREY radial problem maps onto
//! `c₁ = c₂ = c₃ = 1` (see [`mrey_coefficients`]).
//!
//! [`solve_energy_oracle`] inverts the quantization condition numerically; it
//! never touches the closed-form energy and is what the closed form is checked
//! against.

use crate::error::{Error, Result};
use crate::numeric::roots::{brent, BrentSettings};
use crate::params::{centrifugal, dimensionless_params, PhysicalConstants, PotentialParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuDerived {
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    pub c7: f64,
    pub c8: f64,
    pub c9: f64,
    pub c10: f64,
    pub c11: f64,
    pub c12: f64,
    pub c13: f64,
}

/// Exponents and Jacobi parameters of
/// `ψ(s) = s^{s_exponent} (1 − c₃s)^{one_minus_s_exponent} P_n^{(jacobi_a, jacobi_b)}(1 − 2c₃s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveShape {
    pub s_exponent: f64,
    pub one_minus_s_exponent: f64,
    pub jacobi_a: f64,
    pub jacobi_b: f64,
}

impl WaveShape {
    pub fn is_normalizable(&self) -> bool {
        self.s_exponent > 0.0 && self.one_minus_s_exponent > 0.0
    }
}

pub fn derive_constants(coeffs: &NuCoefficients) -> Result<NuDerived> {
    let NuCoefficients {
        c1,
        c2,
        c3,
        xi1,
        xi2,
        xi3,
    } = *coeffs;
    let c4 = 0.5 * (1.0 - c1);
    let c5 = 0.5 * (c2 - 2.0 * c3);
    let c6 = c5 * c5 + xi1;
    let c7 = 2.0 * c4 * c5 - xi2;
    let c8 = c4 * c4 + xi3;
    let c9 = c3 * c7 + c3 * c3 * c8 + c6;
    if !(c8 >= 0.0 && c9 >= 0.0) {
        return Err(Error::ComplexBranch { c8, c9 });
    }
    let (r8, r9) = (c8.sqrt(), c9.sqrt());
    Ok(NuDerived {
        c4,
        c5,
        c6,
        c7,
        c8,
        c9,
        c10: c1 + 2.0 * c4 + 2.0 * r8,
        c11: c2 - 2.0 * c5 + 2.0 * (r9 + c3 * r8),
        c12: c4 + r8,
        c13: c5 - (r9 + c3 * r8),
    })
}

/// Left-hand side of the NU energy condition; zero at an eigenvalue.
pub fn quantization_residual(coeffs: &NuCoefficients, derived: &NuDerived, n: u32) -> f64 {
    let c2 = coeffs.c2;
    let c3 = coeffs.c3;
    let NuDerived { c5, c7, c8, c9, .. } = *derived;
    let nf = n as f64;
    let (r8, r9) = (c8.sqrt(), c9.sqrt());
    c2 * nf - (2.0 * nf + 1.0) * c5
        + (2.0 * nf + 1.0) * (r9 + c3 * r8)
        + nf * (nf - 1.0) * c3
        + c7
        + 2.0 * c3 * c8
        + 2.0 * (c8 * c9).sqrt()
}

pub fn wave_shape(derived: &NuDerived, c3: f64) -> Result<WaveShape> {
    if c3 == 0.0 {
        return Err(Error::Domain("c3 = 0: wave shape undefined".into()));
    }
    Ok(WaveShape {
        s_exponent: derived.c12,
        one_minus_s_exponent: -derived.c12 - derived.c13 / c3,
        jacobi_a: derived.c10 - 1.0,
        jacobi_b: derived.c11 / c3 - derived.c10 - 1.0,
    })
}

/// NU coefficients of the Greene–Aldrich-approximated MREY radial equation
/// in `s = e^{−αr}`, for a given trial energy.
pub fn mrey_coefficients(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    l: u32,
    energy: f64,
) -> NuCoefficients {
    let d = dimensionless_params(params, consts, energy);
    mrey_coefficients_xi(params, consts, l, d.xi_sq)
}

/// As [`mrey_coefficients`], parametrized by ξ² = −2μE/ℏ²α² instead of E.
pub fn mrey_coefficients_xi(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    l: u32,
    xi_sq: f64,
) -> NuCoefficients {
    let d = dimensionless_params(params, consts, 0.0);
    NuCoefficients {
        c1: 1.0,
        c2: 1.0,
        c3: 1.0,
        xi1: xi_sq - d.x2 + d.x3,
        xi2: 2.0 * xi_sq + d.x1 + d.x3,
        xi3: xi_sq + centrifugal(l),
    }
}

fn residual_of(coeffs: &NuCoefficients, n: u32) -> Result<f64> {
    let derived = derive_constants(coeffs)?;
    Ok(quantization_residual(coeffs, &derived, n))
}

/// Numerically inverts the quantization condition over an energy bracket.
pub fn solve_energy_oracle<F>(mapping: F, n: u32, bracket: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> NuCoefficients,
{
    let (lo, hi) = bracket;
    let f_lo = residual_of(&mapping(lo), n)?;
    let f_hi = residual_of(&mapping(hi), n)?;
    if f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
        return Err(Error::NoRootInBracket { lo, hi });
    }
    let mut branch_error = None;
    let root = brent(
        |e| match residual_of(&mapping(e), n) {
            Ok(v) => v,
            Err(err) => {
                branch_error.get_or_insert(err);
                f64::NAN
            }
        },
        lo,
        hi,
        &BrentSettings::default(),
    );
    if let Some(err) = branch_error {
        return Err(err);
    }
    root
}

/// Bound-state energy of the MREY problem found purely from the quantization
/// condition: ξ² is bracketed by a geometric scan over (0, ∞) and refined with
/// Brent's method. Returns [`Error::NoRootInBracket`] when no bound root exists.
pub fn solve_mrey_energy(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    n: u32,
    l: u32,
) -> Result<f64> {
    let residual = |xi_sq: f64| residual_of(&mrey_coefficients_xi(params, consts, l, xi_sq), n);

    // The residual grows monotonically with √c8 = √(ξ² + l(l+1)), so a
    // single sign change on ξ² ≥ 0 is all there is.
    let r0 = residual(0.0)?;
    if r0 >= 0.0 {
        if r0 == 0.0 {
            return Ok(0.0);
        }
        return Err(Error::NoRootInBracket {
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let mut hi = 1.0;
    let mut doublings = 0;
    while residual(hi)? < 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 1000 || !hi.is_finite() {
            return Err(Error::NoRootInBracket {
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
    }
    let lo = if doublings == 0 { 0.0 } else { hi / 2.0 };
    let xi_sq = brent(
        |x| residual(x).unwrap_or(f64::NAN),
        lo,
        hi,
        &BrentSettings::default(),
    )?;
    let scale = consts.hbar * consts.hbar * params.alpha * params.alpha / (2.0 * consts.mu);
    Ok(-xi_sq * scale)
}
