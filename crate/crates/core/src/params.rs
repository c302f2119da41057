//! Physical constants, potential parameters and the coefficient layer shared by
//! every other module.
//!
//! The potential is
//!
//! ```text
//! V(r) = −(A₁e^{−αr} + A₂e^{−2αr}) / (1 − e^{−αr})² − A₃e^{−αr}/r
//! ```
//!
//! A₁ and A₂ carry units of energy and A₃ of energy·length. The original
//! literature calls all three "dimensionless parameters"; here they are treated
//! as dimensional couplings expressed in whatever unit system ℏ and μ define.

use crate::error::{Error, Result};

/// Below this value of αr the Manning-Rosen denominator `1 − e^{−αr}` has lost
/// all precision.
pub const MIN_ALPHA_R: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    /// Reduced mass.
    pub mu: f64,
    pub k_boltzmann: f64,
}

impl PhysicalConstants {
    /// ℏ = μ = k = 1.
    pub const NATURAL: Self = Self {
        hbar: 1.0,
        mu: 1.0,
        k_boltzmann: 1.0,
    };

    pub fn new(hbar: f64, mu: f64, k_boltzmann: f64) -> Result<Self> {
        let c = Self {
            hbar,
            mu,
            k_boltzmann,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("mu", self.mu),
            ("k", self.k_boltzmann),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// 2μ/ℏ², the factor converting energies into the radial equation's units.
    pub fn two_mu_over_hbar_sq(&self) -> f64 {
        2.0 * self.mu / (self.hbar * self.hbar)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::NATURAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    /// Screening parameter (inverse length).
    pub alpha: f64,
}

impl PotentialParams {
    pub fn new(a1: f64, a2: f64, a3: f64, alpha: f64) -> Result<Self> {
        let p = Self { a1, a2, a3, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite and strictly positive, got {}",
                self.alpha
            )));
        }
        for (name, v) in [("a1", self.a1), ("a2", self.a2), ("a3", self.a3)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }
}

/// l(l+1).
pub fn centrifugal(l: u32) -> f64 {
    let l = l as f64;
    l * (l + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    /// −2μE/ℏ²α²
    pub xi_sq: f64,
    /// 2μA₁/ℏ²α²
    pub x1: f64,
    /// 2μA₂/ℏ²α²
    pub x2: f64,
    /// 2μA₃/ℏ²α
    pub x3: f64,
}

/// Compact-form coefficients of the energy formula
/// `E = Q₁ − Q₂[(n+δ) + Q₃/(n+δ)]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralCoefficients {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub delta: f64,
    /// 1 + 4l(l+1) − 8μA₁/ℏ²α² − 8μA₂/ℏ²α²
    pub radicand: f64,
}

impl SpectralCoefficients {
    /// Builds coefficients directly, bypassing the potential. Used for
    /// synthetic spectra (e.g. Q₂ = 0 gives a constant spectrum).
    pub fn from_raw(q1: f64, q2: f64, q3: f64, delta: f64) -> Result<Self> {
        if !(q1.is_finite() && q2.is_finite() && q3.is_finite() && delta.is_finite()) {
            return Err(Error::InvalidParameter(
                "non-finite spectral coefficient".into(),
            ));
        }
        if delta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delta must be strictly positive, got {delta}"
            )));
        }
        if q2 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "q2 must be non-negative, got {q2}"
            )));
        }
        let root = 2.0 * delta - 1.0;
        Ok(Self {
            q1,
            q2,
            q3,
            delta,
            radicand: root * root,
        })
    }

    /// Continuous-n energy `Q₁ − Q₂(ρ + Q₃/ρ)²` with ρ = n + δ.
    pub fn energy_at(&self, n: f64) -> f64 {
        let rho = n + self.delta;
        let p = rho + self.q3 / rho;
        self.q1 - self.q2 * p * p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    General,
    ManningRosen,
    ExponentialYukawa,
    Free,
}

/// The Manning-Rosen part, −(A₁e^{−αr} + A₂e^{−2αr})/(1 − e^{−αr})².
pub fn manning_rosen_part(params: &PotentialParams, r: f64) -> Result<f64> {
    check_radius(params, r)?;
    let s = (-params.alpha * r).exp();
    let one_minus_s = -(-params.alpha * r).exp_m1();
    finite(
        -(params.a1 * s + params.a2 * s * s) / (one_minus_s * one_minus_s),
        r,
    )
}

/// The exponential Yukawa part, −A₃e^{−αr}/r.
pub fn yukawa_part(params: &PotentialParams, r: f64) -> Result<f64> {
    check_radius(params, r)?;
    finite(-params.a3 * (-params.alpha * r).exp() / r, r)
}

pub fn evaluate_potential(params: &PotentialParams, r: f64) -> Result<f64> {
    check_radius(params, r)?;
    let s = (-params.alpha * r).exp();
    let d = 1.0 - s;
    let v = -(params.a1 * s + params.a2 * s * s) / (d * d) - params.a3 * s / r;
    finite(v, r)
}

fn check_radius(params: &PotentialParams, r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!(
            "radius must be finite and positive, got {r}"
        )));
    }
    if params.alpha * r < MIN_ALPHA_R {
        return Err(Error::Domain(format!(
            "alpha*r = {} is below {MIN_ALPHA_R}; the Manning-Rosen denominator underflows",
            params.alpha * r
        )));
    }
    Ok(())
}

fn finite(v: f64, r: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("potential is not finite at r = {r}")))
    }
}

pub fn classify_special_case(params: &PotentialParams) -> SpecialCase {
    let mr = params.a1 != 0.0 || params.a2 != 0.0;
    let yk = params.a3 != 0.0;
    match (mr, yk) {
        (false, false) => SpecialCase::Free,
        (true, false) => SpecialCase::ManningRosen,
        (false, true) => SpecialCase::ExponentialYukawa,
        (true, true) => SpecialCase::General,
    }
}

/// Greene–Aldrich replacements for the centrifugal and Coulomb-like terms:
/// `1/r² ≈ α²/(1 − e^{−αr})²` and `1/r ≈ α/(1 − e^{−αr})`.
///
/// The numerator is α² (not α²e^{−αr}); both variants appear in the
/// literature and this one is what the NU mapping below is built on.
pub fn greene_aldrich(alpha: f64, r: f64) -> (f64, f64) {
    let d = -(-alpha * r).exp_m1();
    (alpha * alpha / (d * d), alpha / d)
}

pub fn dimensionless_params(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    energy: f64,
) -> DimensionlessParams {
    let k = consts.two_mu_over_hbar_sq();
    let a2 = params.alpha * params.alpha;
    DimensionlessParams {
        xi_sq: -k * energy / a2,
        x1: k * params.a1 / a2,
        x2: k * params.a2 / a2,
        x3: k * params.a3 / params.alpha,
    }
}

pub fn spectral_coefficients(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    l: u32,
) -> Result<SpectralCoefficients> {
    let ll = centrifugal(l);
    let hb2a2 = consts.hbar * consts.hbar * params.alpha * params.alpha;
    let radicand =
        1.0 + 4.0 * ll - 8.0 * consts.mu * params.a1 / hb2a2 - 8.0 * consts.mu * params.a2 / hb2a2;
    if radicand.is_nan() || radicand < 0.0 {
        return Err(Error::NoRealDelta { radicand });
    }
    Ok(SpectralCoefficients {
        q1: hb2a2 * ll / (2.0 * consts.mu),
        q2: hb2a2 / (8.0 * consts.mu),
        q3: 2.0 * consts.mu * params.a2 / hb2a2
            - 2.0 * consts.mu * params.a3 / (consts.hbar * consts.hbar * params.alpha)
            + ll,
        delta: 0.5 + 0.5 * radicand.sqrt(),
        radicand,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pp(a1: f64, a2: f64, a3: f64, alpha: f64) -> PotentialParams {
        PotentialParams::new(a1, a2, a3, alpha).unwrap()
    }

    #[test]
    fn potential_hand_values() {
        assert!(
            evaluate_potential(&pp(1.0, 1.0, 1.0, 1.0), 100.0)
                .unwrap()
                .abs()
                < 1e-12
        );
        assert_relative_eq!(
            evaluate_potential(&pp(0.0, 0.0, 1.0, 0.5), 1.0).unwrap(),
            -0.606_530_659_7,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            evaluate_potential(&pp(1.0, 0.0, 0.0, 1.0), 2f64.ln()).unwrap(),
            -2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn potential_rejects_tiny_radius() {
        let p = pp(1.0, 0.0, 0.0, 1.0);
        assert!(matches!(
            evaluate_potential(&p, 1e-16),
            Err(Error::Domain(_))
        ));
        assert!(matches!(evaluate_potential(&p, 0.0), Err(Error::Domain(_))));
        assert!(matches!(
            evaluate_potential(&p, -1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn constructors_validate() {
        assert!(PotentialParams::new(0.0, 0.0, 1.0, 0.0).is_err());
        assert!(PotentialParams::new(f64::NAN, 0.0, 1.0, 0.5).is_err());
        assert!(PhysicalConstants::new(1.0, -1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn special_case_tags() {
        assert_eq!(
            classify_special_case(&pp(1.0, 2.0, 0.0, 0.3)),
            SpecialCase::ManningRosen
        );
        assert_eq!(
            classify_special_case(&pp(0.0, 0.0, 3.0, 0.3)),
            SpecialCase::ExponentialYukawa
        );
        assert_eq!(
            classify_special_case(&pp(0.0, 0.0, 0.0, 0.3)),
            SpecialCase::Free
        );
        assert_eq!(
            classify_special_case(&pp(1.0, 0.0, 3.0, 0.3)),
            SpecialCase::General
        );
        assert_eq!(
            classify_special_case(&pp(0.0, -1.0, 0.0, 0.3)),
            SpecialCase::ManningRosen
        );
    }

    #[test]
    fn greene_aldrich_values() {
        let (inv_r2, _) = greene_aldrich(0.5, 0.001);
        assert!((inv_r2 * 1e-6 - 1.0).abs() < 1e-3);
        let (inv_r2, inv_r) = greene_aldrich(0.5, 1.0);
        assert_relative_eq!(
            inv_r2,
            0.25 / (1.0 - (-0.5f64).exp()).powi(2),
            max_relative = 1e-14
        );
        // 1.614798 to six places; quoted elsewhere as ≈ 1.614800
        assert!((inv_r2 - 1.614_798).abs() < 5e-7);
        assert!((inv_r - 1.270_747).abs() < 5e-7);
    }

    #[test]
    fn greene_aldrich_error_grows_with_alpha_r() {
        let alpha = 0.7;
        let mut prev = 0.0;
        for i in 1..=200 {
            let ar = i as f64 / 200.0;
            let r = ar / alpha;
            let (approx, _) = greene_aldrich(alpha, r);
            let rel = (approx * r * r - 1.0).abs();
            assert!(rel > prev, "not monotone at alpha*r = {ar}");
            prev = rel;
        }
    }

    #[test]
    fn dimensionless_hand_values() {
        let c = PhysicalConstants::NATURAL;
        let d = dimensionless_params(&pp(0.0, 0.0, 1.0, 0.5), &c, 0.0);
        assert_eq!(d.x3, 4.0);
        assert_eq!(d.xi_sq, 0.0);
        assert_eq!(d.x1, 0.0);
        assert_eq!(d.x2, 0.0);
    }

    #[test]
    fn spectral_coefficient_hand_values() {
        let c = PhysicalConstants::NATURAL;
        let q = spectral_coefficients(&pp(0.0, 0.0, 1.0, 0.5), &c, 0).unwrap();
        assert_eq!((q.q1, q.q2, q.q3, q.delta), (0.0, 0.03125, -4.0, 1.0));

        // radicand 1 + 4·l(l+1) = 9 for l = 1
        let q = spectral_coefficients(&pp(0.0, 0.0, 0.0, 0.37), &c, 1).unwrap();
        assert_eq!(q.radicand, 9.0);
        assert_eq!(q.delta, 2.0);
        assert_eq!(q.q3, 2.0);

        let err = spectral_coefficients(&pp(1.0, 1.0, 0.0, 0.5), &c, 0).unwrap_err();
        assert_eq!(err, Error::NoRealDelta { radicand: -63.0 });
    }

    #[test]
    fn from_raw_rejects_bad_delta() {
        assert!(SpectralCoefficients::from_raw(0.0, 0.1, 1.0, 0.0).is_err());
        assert!(SpectralCoefficients::from_raw(0.0, -0.1, 1.0, 1.0).is_err());
        assert!(SpectralCoefficients::from_raw(-1.0, 0.0, 0.0, 1.0).is_ok());
    }

    proptest! {
        #[test]
        fn coefficient_invariants(
            a1 in -2.0..0.05f64, a2 in -2.0..0.05f64, a3 in -5.0..5.0f64,
            alpha in 0.05..2.0f64, l in 0u32..6, hbar in 0.5..2.0f64, mu in 0.5..2.0f64,
        ) {
            let c = PhysicalConstants::new(hbar, mu, 1.0).unwrap();
            let p = pp(a1, a2, a3, alpha);
            if let Ok(q) = spectral_coefficients(&p, &c, l) {
                prop_assert!(q.q2 > 0.0);
                prop_assert_eq!(q.q1 == 0.0, l == 0);
                prop_assert!(q.q1 >= 0.0);
                prop_assert!(q.delta >= 0.5);
                prop_assert!(q.radicand >= 0.0);
            }
        }

        #[test]
        fn dimensionless_is_linear(
            a1 in -3.0..3.0f64, a2 in -3.0..3.0f64, a3 in -3.0..3.0f64,
            e in -3.0..3.0f64, alpha in 0.05..2.0f64, scale in 0.1..10.0f64,
        ) {
            let c = PhysicalConstants::new(1.3, 0.7, 1.0).unwrap();
            let base = dimensionless_params(&pp(a1, a2, a3, alpha), &c, e);
            let scaled = dimensionless_params(&pp(scale * a1, scale * a2, scale * a3, alpha), &c, scale * e);
            let close = |x: f64, y: f64| (x - scale * y).abs() <= 1e-12 * (1.0 + x.abs());
            prop_assert!(close(scaled.x1, base.x1));
            prop_assert!(close(scaled.x2, base.x2));
            prop_assert!(close(scaled.x3, base.x3));
            prop_assert!(close(scaled.xi_sq, base.xi_sq));
        }

        #[test]
        fn potential_is_additive(
            a1 in -3.0..3.0f64, a2 in -3.0..3.0f64, a3 in -3.0..3.0f64,
            alpha in 0.05..2.0f64, r in 0.01..30.0f64,
        ) {
            let p = pp(a1, a2, a3, alpha);
            let total = evaluate_potential(&p, r).unwrap();
            let parts = manning_rosen_part(&p, r).unwrap() + yukawa_part(&p, r).unwrap();
            prop_assert!((total - parts).abs() <= 1e-10 * (1.0 + total.abs()));
        }
    }
}
