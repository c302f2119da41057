//! Closed-form MREY bound-state energies, the Manning-Rosen and exponential
//! Yukawa special cases, and the stationary point of E(n).
//!
//! Energies are always returned as raw formula values; physical admissibility
//! is reported through [`EnergyLevel::valid_bound_state`] and
//! [`EnergyLevel::marginal`].

use crate::error::{Error, Result};
use crate::numeric::roots::{brent, BrentSettings};
use crate::params::{
    centrifugal, dimensionless_params, spectral_coefficients, PhysicalConstants, PotentialParams,
    SpectralCoefficients,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub n: u32,
    pub l: u32,
    pub energy: f64,
    /// u > 0 and ξ² > 0 (strict).
    pub valid_bound_state: bool,
    /// ξ² = 0 with u ≥ 0: the level sits exactly at the threshold.
    pub marginal: bool,
    /// √c₈ = √(ξ² + l(l+1)) as implied by the closed form; may be negative.
    pub u_value: f64,
    pub xi_sq: f64,
}

/// Level `n` for angular momentum `l` from precomputed coefficients.
pub fn level_from_coefficients(coeffs: &SpectralCoefficients, n: u32, l: u32) -> EnergyLevel {
    let rho = n as f64 + coeffs.delta;
    let u = -(rho * rho + coeffs.q3) / (2.0 * rho);
    let xi_sq = u * u - centrifugal(l);
    let tol = 64.0 * f64::EPSILON * (u * u).max(1.0);
    let marginal = u >= -tol && xi_sq.abs() <= tol;
    EnergyLevel {
        n,
        l,
        energy: coeffs.energy_at(n as f64),
        valid_bound_state: !marginal && u > 0.0 && xi_sq > 0.0,
        marginal,
        u_value: u,
        xi_sq,
    }
}

/// `E = Q₁ − Q₂[(n+δ) + Q₃/(n+δ)]²`.
pub fn energy(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    n: u32,
    l: u32,
) -> Result<EnergyLevel> {
    let coeffs = spectral_coefficients(params, consts, l)?;
    Ok(level_from_coefficients(&coeffs, n, l))
}

/// The expanded single-fraction energy expression, coded without reference to
/// Q₁…Q₃ or δ.
pub fn energy_long_form(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    n: u32,
    l: u32,
) -> Result<f64> {
    let d = dimensionless_params(params, consts, 0.0);
    let ll = centrifugal(l);
    let radicand = 1.0 + 4.0 * ll - 4.0 * d.x1 - 4.0 * d.x2;
    if radicand < 0.0 {
        return Err(Error::NoRealDelta { radicand });
    }
    let root = radicand.sqrt();
    let nf = n as f64;
    let scale = consts.hbar * consts.hbar * params.alpha * params.alpha / (2.0 * consts.mu);
    let num = (nf * nf + nf + 0.5) + (nf + 0.5) * root + 2.0 * ll - d.x1 - d.x3;
    let den = 2.0 * nf + 1.0 + root;
    Ok(-scale * (num / den).powi(2) + scale * ll)
}

/// Manning-Rosen energy (A₃ = 0).
pub fn energy_manning_rosen(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    n: u32,
    l: u32,
) -> Result<f64> {
    if params.a3 != 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Manning-Rosen energy needs a3 = 0, got {}",
            params.a3
        )));
    }
    let h2a2 = consts.hbar * consts.hbar * params.alpha * params.alpha;
    let ll = centrifugal(l);
    let y1 = 2.0 * consts.mu * params.a1 / h2a2;
    let y2 = 2.0 * consts.mu * params.a2 / h2a2;
    let radicand = 1.0 - 4.0 * y1 - 4.0 * y2 + 4.0 * ll;
    if radicand < 0.0 {
        return Err(Error::NoRealDelta { radicand });
    }
    let p = n as f64 + 0.5 + 0.5 * radicand.sqrt();
    let bracket = (p * p + y2 + ll) / p;
    Ok(h2a2 * ll / (2.0 * consts.mu) - h2a2 / (8.0 * consts.mu) * bracket * bracket)
}

/// Exponential Yukawa energy (A₁ = A₂ = 0).
pub fn energy_yukawa(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    n: u32,
    l: u32,
) -> Result<f64> {
    if params.a1 != 0.0 || params.a2 != 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Yukawa energy needs a1 = a2 = 0, got ({}, {})",
            params.a1, params.a2
        )));
    }
    let h2a2 = consts.hbar * consts.hbar * params.alpha * params.alpha;
    let ll = centrifugal(l);
    let nf = n as f64;
    let root = (1.0 + 4.0 * ll).sqrt();
    let y3 = 2.0 * consts.mu * params.a3 / (consts.hbar * consts.hbar * params.alpha);
    let num = (nf * nf + nf + 0.5) + (nf + 0.5) * root - y3 + 2.0 * ll;
    let den = 2.0 * nf + 1.0 + root;
    let scale = h2a2 / (2.0 * consts.mu);
    Ok(scale * ll - scale * (num / den).powi(2))
}

/// Continuous n at which dE/dn = 0, i.e. (n + δ)² = |Q₃|, clamped at 0.
pub fn lambda_max(coeffs: &SpectralCoefficients) -> Result<f64> {
    if coeffs.q3 == 0.0 {
        return Err(Error::NoStationaryPoint);
    }
    Ok((coeffs.q3.abs().sqrt() - coeffs.delta).max(0.0))
}

/// Locates the maximum of E(n) on `[0, 10(√|Q₃| + δ)]` from a fourth-order
/// central-difference derivative, without using the closed form.
pub fn lambda_max_numerical(coeffs: &SpectralCoefficients) -> Result<f64> {
    if coeffs.q3 == 0.0 {
        return Err(Error::NoStationaryPoint);
    }
    let hi = 10.0 * (coeffs.q3.abs().sqrt() + coeffs.delta);
    let h = 1e-5 * hi.max(1.0);
    let e = |n: f64| coeffs.energy_at(n);
    let slope =
        |n: f64| (8.0 * (e(n + h) - e(n - h)) - (e(n + 2.0 * h) - e(n - 2.0 * h))) / (12.0 * h);
    let s0 = slope(0.0);
    if s0 <= 0.0 {
        return Ok(0.0);
    }
    let settings = BrentSettings {
        xtol: 1e-13,
        ..BrentSettings::default()
    };
    brent(slope, 0.0, hi, &settings)
}

#[derive(Debug, Clone)]
pub struct SpectrumTable {
    /// Sorted by (l, n).
    pub rows: Vec<EnergyLevel>,
    pub params: PotentialParams,
    pub consts: PhysicalConstants,
    /// Angular momenta whose coefficients could not be built.
    pub errors: Vec<(u32, Error)>,
}

impl SpectrumTable {
    pub fn get(&self, n: u32, l: u32) -> Option<&EnergyLevel> {
        self.rows.iter().find(|r| r.n == n && r.l == l)
    }
}

pub fn spectrum_table(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    n_max: u32,
    l_max: u32,
) -> SpectrumTable {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for l in 0..=l_max {
        match spectral_coefficients(params, consts, l) {
            Ok(c) => rows.extend((0..=n_max).map(|n| level_from_coefficients(&c, n, l))),
            Err(e) => errors.push((l, e)),
        }
    }
    SpectrumTable {
        rows,
        params: *params,
        consts: *consts,
        errors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nu::solve_mrey_energy;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const C: PhysicalConstants = PhysicalConstants::NATURAL;

    fn pp(a1: f64, a2: f64, a3: f64, alpha: f64) -> PotentialParams {
        PotentialParams::new(a1, a2, a3, alpha).unwrap()
    }

    #[test]
    fn default_potential_levels() {
        let p = pp(0.0, 0.0, 1.0, 0.5);
        let g = energy(&p, &C, 0, 0).unwrap();
        assert_eq!(g.energy, -0.28125);
        assert_eq!((g.u_value, g.xi_sq), (1.5, 2.25));
        assert!(g.valid_bound_state && !g.marginal);

        let m = energy(&p, &C, 1, 0).unwrap();
        assert_eq!(m.energy, 0.0);
        assert!(m.marginal && !m.valid_bound_state);

        let e2 = energy(&p, &C, 2, 0).unwrap();
        assert_relative_eq!(e2.energy, -0.03125 * 25.0 / 9.0, max_relative = 1e-15);
        assert!(!e2.valid_bound_state && e2.u_value < 0.0);
    }

    #[test]
    fn free_case_is_never_bound() {
        let g = energy(&pp(0.0, 0.0, 0.0, 0.5), &C, 0, 0).unwrap();
        assert_eq!((g.energy, g.u_value), (-0.03125, -0.5));
        assert!(!g.valid_bound_state);
        let t = spectrum_table(&pp(0.0, 0.0, 0.0, 0.5), &C, 5, 3);
        assert!(t.rows.iter().all(|r| !r.valid_bound_state));
    }

    #[test]
    fn manning_rosen_hand_value() {
        let p = pp(0.01, 0.01, 0.0, 0.5);
        let e = energy_manning_rosen(&p, &C, 0, 0).unwrap();
        assert_relative_eq!(e, -0.0253125, max_relative = 1e-14);
        assert_relative_eq!(
            energy(&p, &C, 0, 0).unwrap().energy,
            e,
            max_relative = 1e-14
        );
        assert!(energy_manning_rosen(&pp(0.0, 0.0, 1.0, 0.5), &C, 0, 0).is_err());
    }

    #[test]
    fn yukawa_hand_value_and_coulomb_limit() {
        assert_eq!(
            energy_yukawa(&pp(0.0, 0.0, 1.0, 0.5), &C, 0, 0).unwrap(),
            -0.28125
        );
        for n in 0..3 {
            let e = energy_yukawa(&pp(0.0, 0.0, 1.0, 1e-4), &C, n, 0).unwrap();
            let coulomb = -0.5 / ((n + 1) as f64).powi(2);
            assert!((e - coulomb).abs() < 1e-3, "n={n}: {e}");
        }
        assert!(energy_yukawa(&pp(0.1, 0.0, 1.0, 0.5), &C, 0, 0).is_err());
    }

    #[test]
    fn lambda_max_examples() {
        let c = SpectralCoefficients::from_raw(0.0, 0.03125, -4.0, 1.0).unwrap();
        assert_eq!(lambda_max(&c).unwrap(), 1.0);
        let c = SpectralCoefficients::from_raw(0.0, 0.03125, 4.0, 0.8).unwrap();
        assert_relative_eq!(lambda_max(&c).unwrap(), 1.2, max_relative = 1e-15);
        let c = SpectralCoefficients::from_raw(0.0, 0.03125, 0.25, 1.0).unwrap();
        assert_eq!(lambda_max(&c).unwrap(), 0.0);
        assert_eq!(lambda_max_numerical(&c).unwrap(), 0.0);
        let c = SpectralCoefficients::from_raw(0.0, 0.03125, 0.0, 1.0).unwrap();
        assert_eq!(lambda_max(&c), Err(Error::NoStationaryPoint));
    }

    #[test]
    fn table_shape_and_order() {
        let t = spectrum_table(&pp(0.0, 0.0, 1.0, 0.5), &C, 5, 3);
        assert_eq!(t.rows.len(), 24);
        assert!(t.errors.is_empty());
        let keys: Vec<_> = t.rows.iter().map(|r| (r.l, r.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
        assert_eq!(t.get(0, 0).unwrap().energy, -0.28125);
    }

    #[test]
    fn table_records_per_l_failures() {
        // radicand 1 + 4l(l+1) − 64·(a1+a2)/... is negative for small l only
        let t = spectrum_table(&pp(0.1, 0.1, 0.0, 0.5), &C, 2, 3);
        assert!(!t.errors.is_empty());
        assert!(t
            .errors
            .iter()
            .all(|(_, e)| matches!(e, Error::NoRealDelta { .. })));
        assert_eq!(t.rows.len() + 3 * t.errors.len(), 12);
    }

    #[test]
    fn second_difference_is_minus_two_q2_when_q3_vanishes() {
        let c = SpectralCoefficients::from_raw(0.0, 0.03125, 0.0, 1.0).unwrap();
        for n in 1..10 {
            let d2 = c.energy_at(n as f64 + 1.0) - 2.0 * c.energy_at(n as f64)
                + c.energy_at(n as f64 - 1.0);
            assert_eq!(d2, -0.0625);
        }
    }

    #[test]
    fn energies_rise_with_n_on_the_bound_window() {
        // deep Yukawa well: four bound levels, each less bound than the last
        let p = pp(0.0, 0.0, 5.0, 0.5);
        let levels: Vec<_> = (0..4).map(|n| energy(&p, &C, n, 0).unwrap()).collect();
        assert!(levels.iter().all(|l| l.valid_bound_state));
        assert!(levels.windows(2).all(|w| w[1].energy > w[0].energy));
    }

    proptest! {
        #[test]
        fn compact_and_long_forms_agree(
            a1 in -0.05f64..0.05, a2 in -0.05f64..0.05, a3 in -3.0f64..3.0,
            alpha in 0.1f64..1.0, n in 0u32..8, l in 0u32..4,
        ) {
            let p = pp(a1, a2, a3, alpha);
            if let Ok(level) = energy(&p, &C, n, l) {
                let long = energy_long_form(&p, &C, n, l).unwrap();
                let q1 = spectral_coefficients(&p, &C, l).unwrap().q1;
                let scale = level.energy.abs().max(q1).max(f64::MIN_POSITIVE);
                prop_assert!((long - level.energy).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn energy_never_exceeds_q1(
            a1 in -1.0f64..1.0, a2 in -1.0f64..1.0, a3 in -5.0f64..5.0,
            alpha in 0.05f64..2.0, n in 0u32..20, l in 0u32..5,
        ) {
            let p = pp(a1, a2, a3, alpha);
            if let Ok(c) = spectral_coefficients(&p, &C, l) {
                prop_assert!(level_from_coefficients(&c, n, l).energy <= c.q1);
            }
        }

        #[test]
        fn bound_levels_match_the_quantization_root(
            a3 in 0.5f64..4.0, alpha in 0.1f64..1.0, n in 0u32..4, l in 0u32..3,
        ) {
            let p = pp(0.0, 0.0, a3, alpha);
            let level = energy(&p, &C, n, l).unwrap();
            prop_assume!(level.valid_bound_state);
            let root = solve_mrey_energy(&p, &C, n, l).unwrap();
            prop_assert!((root - level.energy).abs() <= 1e-9 * level.energy.abs());
        }

        #[test]
        fn lambda_max_numerical_matches_closed_form(
            q3 in -50.0f64..50.0, delta in 0.5f64..3.0,
        ) {
            prop_assume!(q3.abs() > 1e-3);
            let c = SpectralCoefficients::from_raw(0.0, 0.03125, q3, delta).unwrap();
            let exact = lambda_max(&c).unwrap();
            let numeric = lambda_max_numerical(&c).unwrap();
            prop_assert!((exact - numeric).abs() <= 1e-8 * exact.max(1.0), "{exact} vs {numeric}");
        }
    }
}
