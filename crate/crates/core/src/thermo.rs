//! Canonical partition function over the vibrational levels and the derived
//! thermodynamic functions.
//!
//! The classical-limit partition function is
//!
//! ```text
//! Z(β, λ) = ∫₀^λ e^{−βE(n)} dn,   E(n) = Q₁ − Q₂(ρ + Q₃/ρ)²,  ρ = n + δ
//! ```
//!
//! E(n) is concave, so the Boltzmann weight peaks at one of the two ends of
//! [0, λ]. Every integral here is taken relative to that end: the exponent is
//! written as a factored difference E(n) − E_ref, which stays accurate when
//! βE itself is ~1e6, and the constant part −βE_ref is carried in
//! double-double precision. Z is therefore handled as a [`LogPartition`].

use crate::error::{Error, Result};
use crate::numeric::dd::DoubleDouble;
use crate::numeric::quadrature::{graded_breaks, integrate_vec_breaks, QuadSettings};
use crate::params::SpectralCoefficients;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoInput {
    pub coeffs: SpectralCoefficients,
    /// Upper end of the n integration range.
    pub lambda: f64,
    pub beta: f64,
    pub k_boltzmann: f64,
}

impl ThermoInput {
    pub fn new(
        coeffs: SpectralCoefficients,
        lambda: f64,
        beta: f64,
        k_boltzmann: f64,
    ) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and positive, got {lambda}"
            )));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite and non-negative, got {beta}"
            )));
        }
        if !(k_boltzmann.is_finite() && k_boltzmann > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "k must be finite and positive, got {k_boltzmann}"
            )));
        }
        Ok(Self {
            coeffs,
            lambda,
            beta,
            k_boltzmann,
        })
    }

    pub fn with_beta(self, beta: f64) -> Self {
        Self { beta, ..self }
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        Self { lambda, ..self }
    }

    fn require_positive_beta(&self) -> Result<()> {
        if self.beta > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "thermodynamic properties need beta > 0, got {}",
                self.beta
            )))
        }
    }
}

/// `Z = e^{prefactor} · integral`, kept in this split form because Z itself
/// overflows for large β·λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPartition {
    pub prefactor: DoubleDouble,
    pub integral: f64,
    pub ln_integral: f64,
}

impl LogPartition {
    pub fn ln_value(&self) -> f64 {
        (self.prefactor + self.ln_integral).to_f64()
    }

    /// Z itself; a range error when it does not fit in an f64.
    pub fn value(&self) -> Result<f64> {
        let scale = self.prefactor.to_f64().exp();
        let direct = scale * self.integral;
        let z = if scale.is_finite() && direct.is_finite() {
            direct
        } else {
            self.ln_value().exp()
        };
        if z.is_finite() {
            Ok(z)
        } else {
            Err(Error::Range(format!(
                "Z = exp({}) overflows; use the logarithm",
                self.ln_value()
            )))
        }
    }

    /// ln(Z_self / Z_other) without forming either value.
    pub fn ln_ratio(&self, other: &LogPartition) -> f64 {
        (self.prefactor - other.prefactor).to_f64() + (self.ln_integral - other.ln_integral)
    }
}

/// The heavier end of [0, λ] and its energy.
#[derive(Debug, Clone, Copy)]
struct Reference {
    /// +1 when the reference is n = 0, −1 when it is n = λ.
    sign: f64,
    n_ref: f64,
    rho_ref: DoubleDouble,
    e_ref: DoubleDouble,
}

fn dd_energy(c: &SpectralCoefficients, rho: DoubleDouble) -> DoubleDouble {
    let p = rho + DoubleDouble::from(c.q3) / rho;
    DoubleDouble::from(c.q1) - p * p * c.q2
}

fn reference(input: &ThermoInput) -> Reference {
    let c = &input.coeffs;
    let lo = DoubleDouble::from(c.delta);
    let hi = DoubleDouble::from(input.lambda) + c.delta;
    let (e_lo, e_hi) = (dd_energy(c, lo), dd_energy(c, hi));
    if (e_hi - e_lo).to_f64() < 0.0 {
        Reference {
            sign: -1.0,
            n_ref: input.lambda,
            rho_ref: hi,
            e_ref: e_hi,
        }
    } else {
        Reference {
            sign: 1.0,
            n_ref: 0.0,
            rho_ref: lo,
            e_ref: e_lo,
        }
    }
}

fn settings() -> QuadSettings {
    QuadSettings {
        rel_tol: 1e-12,
        abs_tol: 0.0,
        ..QuadSettings::default()
    }
}

/// Offsets t ∈ [0, λ] from the reference end, graded towards both ends.
fn offset_breaks(lambda: f64) -> Vec<f64> {
    let half = 0.5 * lambda;
    let first = lambda * 1e-10;
    let mut b = graded_breaks(0.0, half, 0.0, first);
    b.pop();
    b.extend(graded_breaks(half, lambda, lambda, first));
    b
}

/// E(n) − E_ref ≥ 0 in factored form, for n = n_ref + d.
fn excitation(c: &SpectralCoefficients, r: &Reference, t: f64) -> f64 {
    let d = r.sign * t;
    let n = r.n_ref + d;
    let rho = n + c.delta;
    let rho_ref = r.rho_ref.to_f64();
    let q = c.q3 / (rho * rho_ref);
    (-c.q2 * d * (1.0 - q) * (rho + rho_ref) * (1.0 + q)).max(0.0)
}

/// `Σ e^{−βE_n}` with the smallest energy factored out.
pub fn ln_partition_discrete(energies: &[f64], beta: f64) -> Result<LogPartition> {
    if energies.is_empty() {
        return Err(Error::InvalidParameter("no energies to sum".into()));
    }
    if energies.iter().any(|e| !e.is_finite()) || !beta.is_finite() {
        return Err(Error::InvalidParameter("non-finite energy or beta".into()));
    }
    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let sum: f64 = energies.iter().map(|e| (-beta * (e - e_min)).exp()).sum();
    Ok(LogPartition {
        prefactor: DoubleDouble::from(-beta) * e_min,
        integral: sum,
        ln_integral: sum.ln(),
    })
}

pub fn partition_discrete(energies: &[f64], beta: f64) -> Result<f64> {
    ln_partition_discrete(energies, beta)?.value()
}

/// E_n for n = 0..=⌊λ⌋.
pub fn discrete_energies(coeffs: &SpectralCoefficients, lambda: f64) -> Vec<f64> {
    let top = lambda.floor().max(0.0) as u64;
    (0..=top).map(|n| coeffs.energy_at(n as f64)).collect()
}

fn zero_beta(input: &ThermoInput) -> LogPartition {
    LogPartition {
        prefactor: DoubleDouble::default(),
        integral: input.lambda,
        ln_integral: input.lambda.ln(),
    }
}

/// Z in the ρ-expanded form
/// `e^{β(2Q₂Q₃ − Q₁)} ∫_δ^{λ+δ} e^{β(Q₂ρ² + Q₂Q₃²/ρ²)} dρ`.
pub fn ln_partition_integral(input: &ThermoInput) -> Result<LogPartition> {
    if input.beta == 0.0 {
        return Ok(zero_beta(input));
    }
    let c = &input.coeffs;
    let beta = input.beta;
    let r = reference(input);
    let rho_ref = r.rho_ref;
    let g_ref =
        rho_ref * rho_ref * c.q2 + DoubleDouble::from(c.q2 * c.q3 * c.q3) / (rho_ref * rho_ref);
    let prefactor =
        DoubleDouble::from(beta) * (2.0 * c.q2 * c.q3 - c.q1) + DoubleDouble::from(beta) * g_ref;
    let rr = rho_ref.to_f64();
    let out = integrate_vec_breaks(
        |t| {
            let d = r.sign * t;
            let rho = rr + d;
            let ratio = c.q3 / (rho * rr);
            [(beta * c.q2 * d * (rho + rr) * (1.0 - ratio * ratio)).exp()]
        },
        &offset_breaks(input.lambda),
        &settings(),
    )?;
    Ok(LogPartition {
        prefactor,
        integral: out.value[0],
        ln_integral: out.value[0].ln(),
    })
}

pub fn partition_integral(input: &ThermoInput) -> Result<f64> {
    ln_partition_integral(input)?.value()
}

/// Z as `∫₀^λ e^{−βE(n)} dn` with E(n) taken straight from the compact energy.
pub fn ln_partition_integral_direct(input: &ThermoInput) -> Result<LogPartition> {
    Ok(boltzmann_moments(input)?.ln_z)
}

pub fn partition_integral_direct(input: &ThermoInput) -> Result<f64> {
    ln_partition_integral_direct(input)?.value()
}

/// Unnormalized Boltzmann moments of the excitation ε = E − E_ref:
/// m_k = ∫₀^λ ε^k e^{−βε} dn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub ln_z: LogPartition,
    pub e_ref: DoubleDouble,
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
}

impl Moments {
    pub fn mean_excitation(&self) -> f64 {
        self.m1 / self.m0
    }

    pub fn variance(&self) -> f64 {
        let mean = self.m1 / self.m0;
        (self.m2 / self.m0 - mean * mean).max(0.0)
    }
}

pub fn boltzmann_moments(input: &ThermoInput) -> Result<Moments> {
    let c = input.coeffs;
    let beta = input.beta;
    let r = reference(input);
    let out = integrate_vec_breaks(
        |t| {
            let eps = excitation(&c, &r, t);
            let w = (-beta * eps).exp();
            [w, eps * w, eps * eps * w]
        },
        &offset_breaks(input.lambda),
        &settings(),
    )?;
    let [m0, m1, m2] = out.value;
    let ln_z = if beta == 0.0 {
        zero_beta(input)
    } else {
        LogPartition {
            prefactor: -(DoubleDouble::from(beta) * r.e_ref),
            integral: m0,
            ln_integral: m0.ln(),
        }
    };
    Ok(Moments {
        ln_z,
        e_ref: r.e_ref,
        m0,
        m1,
        m2,
    })
}

/// U = −∂ln Z/∂β as the Boltzmann-weighted mean of E(n).
pub fn mean_energy(input: &ThermoInput) -> Result<f64> {
    input.require_positive_beta()?;
    let m = boltzmann_moments(input)?;
    Ok(m.e_ref.to_f64() + m.mean_excitation())
}

/// S = k ln Z + kβU.
pub fn entropy(input: &ThermoInput) -> Result<f64> {
    input.require_positive_beta()?;
    let m = boltzmann_moments(input)?;
    Ok(entropy_from(&m, input))
}

fn entropy_from(m: &Moments, input: &ThermoInput) -> f64 {
    let beta = input.beta;
    let u_ref = DoubleDouble::from(m.e_ref.to_f64());
    // ln Z + βU with the reference energy cancelled in double-double
    let cancel = (m.ln_z.prefactor + DoubleDouble::from(beta) * u_ref).to_f64();
    input.k_boltzmann * (cancel + m.ln_z.ln_integral + beta * m.mean_excitation())
}

/// F = −ln Z / β.
pub fn free_energy(input: &ThermoInput) -> Result<f64> {
    input.require_positive_beta()?;
    let ln_z = ln_partition_integral(input)?;
    Ok(-ln_z.ln_value() / input.beta)
}

/// C = kβ²(⟨E²⟩ − ⟨E⟩²).
pub fn heat_capacity(input: &ThermoInput) -> Result<f64> {
    input.require_positive_beta()?;
    let m = boltzmann_moments(input)?;
    Ok(input.k_boltzmann * input.beta * input.beta * m.variance())
}

/// The five functions at one (β, λ). Z is +∞ when it overflows; ln Z is kept
/// alongside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub beta: f64,
    pub lambda: f64,
    pub ln_z: f64,
    pub z: f64,
    pub u: f64,
    pub s: f64,
    pub f: f64,
    pub c: f64,
}

pub fn evaluate(input: &ThermoInput) -> Result<ThermoPoint> {
    input.require_positive_beta()?;
    let m = boltzmann_moments(input)?;
    let beta = input.beta;
    let ln_z = m.ln_z.ln_value();
    Ok(ThermoPoint {
        beta,
        lambda: input.lambda,
        ln_z,
        z: ln_z.exp(),
        u: m.e_ref.to_f64() + m.mean_excitation(),
        s: entropy_from(&m, input),
        f: -ln_z / beta,
        c: input.k_boltzmann * beta * beta * m.variance(),
    })
}

/// Finite-difference derivatives of ln Z at β ± h, h = rel_step·β, built from
/// one quadrature of the difference integrands
/// `w·4sinh²(hε/2)` and `w·expm1(∓hε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDifferences {
    /// −[ln Z(β+h) − ln Z(β−h)]/2h
    pub mean_energy: f64,
    /// kβ²[ln Z(β+h) − 2 ln Z(β) + ln Z(β−h)]/h²
    pub heat_capacity: f64,
}

pub fn finite_differences(input: &ThermoInput, rel_step: f64) -> Result<FiniteDifferences> {
    input.require_positive_beta()?;
    let c = input.coeffs;
    let beta = input.beta;
    let h = rel_step * beta;
    let r = reference(input);
    let out = integrate_vec_breaks(
        |t| {
            let eps = excitation(&c, &r, t);
            let w = (-beta * eps).exp();
            let half = (0.5 * h * eps).sinh();
            [
                w,
                4.0 * half * half * w,
                (-h * eps).exp_m1() * w,
                (h * eps).exp_m1() * w,
            ]
        },
        &offset_breaks(input.lambda),
        &settings(),
    )?;
    let [z, s2, d_plus, d_minus] = out.value;
    let second = (s2 / z + d_plus * d_minus / (z * z)).ln_1p();
    let first = ((d_plus / z).ln_1p() - (d_minus / z).ln_1p()) / (2.0 * h);
    Ok(FiniteDifferences {
        mean_energy: r.e_ref.to_f64() - first,
        heat_capacity: input.k_boltzmann * beta * beta * second / (h * h),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Beta,
    Lambda,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    Beta { grid: Vec<f64>, lambda: f64 },
    Lambda { grid: Vec<f64>, beta: f64 },
}

#[derive(Debug, Clone)]
pub struct ThermoCurve {
    pub sweep_variable: SweepVariable,
    /// The value held fixed (λ for a β sweep, β for a λ sweep).
    pub fixed: f64,
    pub grid: Vec<f64>,
    /// One point per grid value that evaluated successfully, in grid order.
    pub points: Vec<ThermoPoint>,
    pub errors: Vec<(f64, Error)>,
}

impl ThermoCurve {
    pub fn column(&self, pick: fn(&ThermoPoint) -> f64) -> Vec<f64> {
        self.points.iter().map(pick).collect()
    }
}

pub fn thermo_curve(
    coeffs: &SpectralCoefficients,
    k_boltzmann: f64,
    sweep: &Sweep,
) -> Result<ThermoCurve> {
    let (variable, grid, fixed) = match sweep {
        Sweep::Beta { grid, lambda } => (SweepVariable::Beta, grid, *lambda),
        Sweep::Lambda { grid, beta } => (SweepVariable::Lambda, grid, *beta),
    };
    if grid.is_empty() {
        return Err(Error::InvalidParameter("sweep grid is empty".into()));
    }
    if grid
        .windows(2)
        .any(|w| w[1] <= w[0] || w[1].is_nan() || w[0].is_nan())
    {
        return Err(Error::InvalidParameter(
            "sweep grid must be strictly increasing".into(),
        ));
    }
    let mut points = Vec::with_capacity(grid.len());
    let mut errors = Vec::new();
    for &g in grid {
        let (beta, lambda) = match variable {
            SweepVariable::Beta => (g, fixed),
            SweepVariable::Lambda => (fixed, g),
        };
        match ThermoInput::new(*coeffs, lambda, beta, k_boltzmann).and_then(|i| evaluate(&i)) {
            Ok(p) => points.push(p),
            Err(e) => errors.push((g, e)),
        }
    }
    Ok(ThermoCurve {
        sweep_variable: variable,
        fixed,
        grid: grid.clone(),
        points,
        errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::logspace;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn default_coeffs() -> SpectralCoefficients {
        SpectralCoefficients::from_raw(0.0, 0.03125, -4.0, 1.0).unwrap()
    }

    fn flat(q1: f64) -> SpectralCoefficients {
        SpectralCoefficients::from_raw(q1, 0.0, 0.0, 1.0).unwrap()
    }

    fn input(c: SpectralCoefficients, lambda: f64, beta: f64) -> ThermoInput {
        ThermoInput::new(c, lambda, beta, 1.0).unwrap()
    }

    #[test]
    fn discrete_sums() {
        assert_relative_eq!(
            partition_discrete(&[0.3; 5], 1.0).unwrap(),
            5.0 * (-0.3f64).exp(),
            max_relative = 1e-15
        );
        assert_eq!(
            partition_discrete(&[1.0, -2.0, 7.0, 0.0, 3.0], 0.0).unwrap(),
            5.0
        );
        let e = discrete_energies(&default_coeffs(), 1.0);
        assert_eq!(e, vec![-0.28125, 0.0]);
        assert_relative_eq!(
            partition_discrete(&e, 1.0).unwrap(),
            0.28125f64.exp() + 1.0,
            max_relative = 1e-15
        );
        assert!(matches!(
            partition_discrete(&[-1000.0], 1.0),
            Err(Error::Range(_))
        ));
        let big = ln_partition_discrete(&[-1000.0, -999.0], 1.0).unwrap();
        assert_relative_eq!(
            big.ln_value(),
            1000.0 + (-1.0f64).exp().ln_1p(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn constant_spectrum_closed_forms() {
        let i = input(flat(-1.0), 5.0, 1.0);
        assert_relative_eq!(
            partition_integral(&i).unwrap(),
            5.0 * 1f64.exp(),
            max_relative = 1e-12
        );
        assert_relative_eq!(entropy(&i).unwrap(), 5f64.ln(), max_relative = 1e-12);
        assert_eq!(heat_capacity(&i).unwrap(), 0.0);
        assert_relative_eq!(mean_energy(&i).unwrap(), -1.0, max_relative = 1e-15);
        assert_relative_eq!(
            free_energy(&i).unwrap(),
            -1.0 - 5f64.ln(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn zero_beta_gives_the_interval_length() {
        let i = input(default_coeffs(), 5.0, 0.0);
        assert_eq!(partition_integral(&i).unwrap(), 5.0);
        assert_eq!(partition_integral_direct(&i).unwrap(), 5.0);
        assert!(mean_energy(&i).is_err());
        let tiny = input(default_coeffs(), 700.0, 1e-12);
        assert_relative_eq!(
            partition_integral(&tiny).unwrap(),
            700.0,
            max_relative = 1e-6
        );
    }

    #[test]
    fn mean_energy_tends_to_the_plain_average() {
        let c = default_coeffs();
        let lambda = 3.0;
        // ∫₀^λ E dn by parts of the square: Q₁λ − Q₂∫(ρ² + 2Q₃ + Q₃²/ρ²) dρ
        let (a, b) = (c.delta, lambda + c.delta);
        let avg = c.q1
            - c.q2
                * ((b.powi(3) - a.powi(3)) / 3.0
                    + 2.0 * c.q3 * lambda
                    + c.q3 * c.q3 * (1.0 / a - 1.0 / b))
                / lambda;
        let u = mean_energy(&input(c, lambda, 1e-8)).unwrap();
        assert!((u - avg).abs() < 1e-7 * avg.abs());
    }

    #[test]
    fn two_integral_forms_agree_across_the_grid() {
        let c = default_coeffs();
        for beta in logspace(0.1, 100.0, 7) {
            for lambda in [1.0, 5.0, 20.0, 100.0, 700.0] {
                let i = input(c, lambda, beta);
                let a = ln_partition_integral(&i).unwrap();
                let b = ln_partition_integral_direct(&i).unwrap();
                assert!(a.ln_ratio(&b).abs() < 1e-10, "beta={beta} lambda={lambda}");
            }
        }
    }

    #[test]
    fn identities_and_finite_differences() {
        let c = default_coeffs();
        for beta in logspace(0.1, 100.0, 6) {
            for lambda in [1.0, 20.0, 700.0] {
                let i = input(c, lambda, beta);
                let p = evaluate(&i).unwrap();
                let tf = p.u - p.s / beta;
                assert!((p.f - tf).abs() <= 1e-9 * p.f.abs(), "F: {beta} {lambda}");
                assert!(p.c >= 0.0);
                let fd = finite_differences(&i, 1e-4).unwrap();
                assert!(
                    (fd.heat_capacity - p.c).abs() <= 1e-6 * p.c,
                    "C: {beta} {lambda}"
                );
                assert!(
                    (fd.mean_energy - p.u).abs() <= 1e-6 * p.u.abs(),
                    "U: {beta} {lambda}"
                );
            }
        }
    }

    #[test]
    fn overflowing_z_stays_finite_in_logs() {
        let i = input(default_coeffs(), 700.0, 100.0);
        assert!(matches!(partition_integral(&i), Err(Error::Range(_))));
        let p = evaluate(&i).unwrap();
        assert!(p.z.is_infinite() && p.ln_z > 1e6);
        assert!(p.u.is_finite() && p.s.is_finite() && p.c.is_finite());
    }

    #[test]
    fn euler_maclaurin_endpoint_correction() {
        let c = default_coeffs();
        let slope = |n: f64| {
            let rho = n + c.delta;
            -2.0 * c.q2 * (rho + c.q3 / rho) * (1.0 - c.q3 / (rho * rho))
        };
        for lambda in [20.0, 100.0] {
            for beta in [0.001, 0.01, 0.1] {
                let i = input(c, lambda, beta);
                let integral = ln_partition_integral(&i).unwrap();
                let e = discrete_energies(&c, lambda);
                let disc = ln_partition_discrete(&e, beta).unwrap();
                // Σ f ≈ ∫ f + (f(0) + f(λ))/2 + (f'(λ) − f'(0))/12, in units of ∫ f
                let f = |n: f64| ((-beta * c.energy_at(n)) - integral.ln_value()).exp();
                let df = |n: f64| -beta * slope(n) * f(n);
                let correction = 0.5 * (f(0.0) + f(lambda)) + (df(lambda) - df(0.0)) / 12.0;
                let rel = disc.ln_ratio(&integral).exp() - 1.0 - correction;
                assert!(
                    rel.abs() <= 0.5 / lambda,
                    "lambda={lambda} beta={beta}: {rel}"
                );
            }
        }
    }

    #[test]
    fn curves_keep_going_past_bad_points() {
        let c = default_coeffs();
        let curve = thermo_curve(
            &c,
            1.0,
            &Sweep::Lambda {
                grid: vec![1.0, 2.0, 3.0],
                beta: 0.0,
            },
        )
        .unwrap();
        assert_eq!(curve.errors.len(), 3);
        let curve = thermo_curve(
            &c,
            1.0,
            &Sweep::Beta {
                grid: logspace(0.1, 10.0, 5),
                lambda: 1.0,
            },
        )
        .unwrap();
        assert_eq!(curve.points.len(), 5);
        let z = curve.column(|p| p.ln_z);
        assert!(z.windows(2).all(|w| w[1] > w[0]));
        assert!(thermo_curve(
            &c,
            1.0,
            &Sweep::Beta {
                grid: vec![1.0, 1.0],
                lambda: 1.0
            }
        )
        .is_err());
        assert!(thermo_curve(
            &c,
            1.0,
            &Sweep::Beta {
                grid: vec![],
                lambda: 1.0
            }
        )
        .is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn mean_energy_is_bracketed_and_c_is_nonnegative(
            q3 in -30.0f64..30.0, delta in 0.5f64..3.0, lambda in 0.5f64..200.0, beta in 0.01f64..50.0,
        ) {
            let c = SpectralCoefficients::from_raw(0.0, 0.03125, q3, delta).unwrap();
            let i = input(c, lambda, beta);
            let p = evaluate(&i).unwrap();
            let (e0, e1) = (c.energy_at(0.0), c.energy_at(lambda));
            let stationary = (q3.abs().sqrt() - delta).clamp(0.0, lambda);
            let e_max = e0.max(e1).max(c.energy_at(stationary));
            let tol = 1e-12 * e0.abs().max(e1.abs()).max(1.0);
            prop_assert!(p.u >= e0.min(e1) - tol && p.u <= e_max + tol);
            prop_assert!(p.c >= 0.0);
        }

        #[test]
        fn z_grows_with_lambda(beta in 0.01f64..20.0, lambda in 1.0f64..100.0) {
            let c = default_coeffs();
            let a = ln_partition_integral(&input(c, lambda, beta)).unwrap();
            let b = ln_partition_integral(&input(c, lambda * 1.01, beta)).unwrap();
            prop_assert!(b.ln_ratio(&a) > 0.0);
        }
    }
}
