//! Radial wavefunctions
//!
//! ```text
//! ψ(r) = N (e^{−αr})^β (1 − e^{−αr})^ζ P_n^{(2β, 2ζ−1)}(1 − 2e^{−αr})
//! ```
//!
//! with β = √(ξ² + l(l+1)) and ζ = ½ + √(¼ + l(l+1) − x₁ − x₂), normalized
//! numerically on (0, ∞).

use crate::error::{Error, Result};
use crate::numeric::quadrature::{integrate, QuadSettings};
use crate::params::{centrifugal, dimensionless_params, PhysicalConstants, PotentialParams};
use crate::spectrum::{energy, EnergyLevel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: u32,
    pub a: f64,
    pub b: f64,
}

impl JacobiParams {
    pub fn new(n: u32, a: f64, b: f64) -> Result<Self> {
        if !(a > -1.0 && b > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi parameters must exceed -1, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { n, a, b })
    }
}

/// P_n^{(a,b)}(x) by the three-term recurrence.
pub fn jacobi_eval(p: &JacobiParams, x: f64) -> f64 {
    let JacobiParams { n, a, b } = *p;
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for k in 1..n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
        let c2 = (s + 1.0) * (s * (s + 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a) * (k + b) * (s + 2.0);
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialWave {
    pub beta_exp: f64,
    pub zeta_exp: f64,
    pub jacobi: JacobiParams,
    pub norm: f64,
    pub level: EnergyLevel,
    pub params: PotentialParams,
    pub consts: PhysicalConstants,
    /// Radius beyond which ∫ψ² is below 1e−13 of the total.
    pub extent: f64,
}

impl RadialWave {
    pub fn value(&self, r: f64) -> f64 {
        let ar = self.params.alpha * r;
        let s = (-ar).exp();
        let one_minus_s = -(-ar).exp_m1();
        self.norm
            * s.powf(self.beta_exp)
            * one_minus_s.powf(self.zeta_exp)
            * jacobi_eval(&self.jacobi, 1.0 - 2.0 * s)
    }

    /// The same profile with a different overall constant.
    pub fn with_norm(&self, norm: f64) -> Self {
        Self { norm, ..*self }
    }
}

pub fn build_wave(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    level: &EnergyLevel,
) -> Result<RadialWave> {
    if !level.valid_bound_state {
        return Err(Error::Domain(format!(
            "level n = {}, l = {} is not a strictly bound state",
            level.n, level.l
        )));
    }
    let ll = centrifugal(level.l);
    let d = dimensionless_params(params, consts, level.energy);
    let beta_sq = d.xi_sq + ll;
    let zeta_sq = 0.25 + ll - d.x1 - d.x2;
    if !(beta_sq > 0.0 && zeta_sq >= 0.0) {
        return Err(Error::Domain(format!(
            "non-real exponents: beta^2 = {beta_sq}, (zeta - 1/2)^2 = {zeta_sq}"
        )));
    }
    let beta_exp = beta_sq.sqrt();
    let zeta_exp = 0.5 + zeta_sq.sqrt();
    let mut wave = RadialWave {
        beta_exp,
        zeta_exp,
        jacobi: JacobiParams::new(level.n, 2.0 * beta_exp, 2.0 * zeta_exp - 1.0)?,
        norm: 1.0,
        level: *level,
        params: *params,
        consts: *consts,
        extent: 0.0,
    };
    wave.extent = integration_extent(&wave)?;
    wave.norm = normalize(&wave)?;
    Ok(wave)
}

/// Convenience: closed-form level plus wave.
pub fn wave_for(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    n: u32,
    l: u32,
) -> Result<RadialWave> {
    let level = energy(params, consts, n, l)?;
    build_wave(params, consts, &level)
}

fn settings() -> QuadSettings {
    QuadSettings::default().with_initial_intervals(64)
}

fn norm_sq_on(wave: &RadialWave, r_max: f64) -> Result<f64> {
    let out = integrate(|r| wave.value(r).powi(2), 0.0, r_max, &settings())?;
    Ok(out.value[0])
}

/// Doubles R until the exponential tail estimate ψ(R)²/(2αβ) is negligible.
fn integration_extent(wave: &RadialWave) -> Result<f64> {
    let alpha = wave.params.alpha;
    let decay = 2.0 * alpha * wave.beta_exp;
    let mut r_max = (2.0 * (wave.jacobi.n as f64 + 1.0) / alpha).max(10.0 / decay);
    for _ in 0..60 {
        let total = norm_sq_on(wave, r_max)?;
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::Domain(format!(
                "profile is not integrable (got {total})"
            )));
        }
        let tail = wave.value(r_max).powi(2) / decay;
        if tail < 1e-13 * total {
            return Ok(r_max);
        }
        r_max *= 2.0;
    }
    Err(Error::Domain("wave does not decay".into()))
}

/// 1/√∫₀^∞ ψ² dr for the wave as currently scaled.
pub fn normalize(wave: &RadialWave) -> Result<f64> {
    let extent = if wave.extent > 0.0 {
        wave.extent
    } else {
        integration_extent(wave)?
    };
    let total = norm_sq_on(wave, extent)?;
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::Domain(format!(
            "profile is not integrable (got {total})"
        )));
    }
    Ok(1.0 / total.sqrt())
}

/// Evenly spaced grid on (0, extent] with `per_unit` points per unit of αr.
pub fn node_grid(wave: &RadialWave, per_unit: usize) -> Vec<f64> {
    let alpha = wave.params.alpha;
    let count = ((alpha * wave.extent) * per_unit as f64).ceil().max(2.0) as usize;
    let step = wave.extent / count as f64;
    (1..=count).map(|k| k as f64 * step).collect()
}

/// Strict sign changes of ψ over the grid; exact zeros are skipped.
pub fn count_nodes(wave: &RadialWave, grid: &[f64]) -> Result<usize> {
    let alpha = wave.params.alpha;
    if grid
        .windows(2)
        .any(|w| w[1] <= w[0] || w[1].is_nan() || w[0].is_nan())
    {
        return Err(Error::Resolution("grid must be strictly increasing".into()));
    }
    if let Some(w) = grid
        .windows(2)
        .find(|w| alpha * (w[1] - w[0]) > 1e-3 * (1.0 + 1e-9))
    {
        return Err(Error::Resolution(format!(
            "grid spacing {} exceeds 1e-3/alpha",
            w[1] - w[0]
        )));
    }
    let mut nodes = 0;
    let mut last = 0.0f64;
    for &r in grid {
        let v = wave.value(r);
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            nodes += 1;
        }
        last = v;
    }
    Ok(nodes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualForm {
    /// Greene–Aldrich substitutes for 1/r² and 1/r, the equation ψ solves.
    Approximated,
    Exact,
}

/// max |ψ'' + k(r)ψ| / max |ψ''| over 200 points on (0, extent], with ψ''
/// from a fourth-order central stencil.
pub fn ode_residual(wave: &RadialWave, form: ResidualForm) -> Result<f64> {
    let p = &wave.params;
    let c = &wave.consts;
    let alpha = p.alpha;
    let ll = centrifugal(wave.level.l);
    let two_mu = c.two_mu_over_hbar_sq();
    let k_of = |r: f64| -> f64 {
        let s = (-alpha * r).exp();
        let d = -(-alpha * r).exp_m1();
        let mr = (p.a1 * s + p.a2 * s * s) / (d * d);
        let (inv_r, inv_r2) = match form {
            ResidualForm::Approximated => (alpha / d, alpha * alpha / (d * d)),
            ResidualForm::Exact => (1.0 / r, 1.0 / (r * r)),
        };
        two_mu * (wave.level.energy + mr + p.a3 * s * inv_r) - ll * inv_r2
    };
    let samples = 200;
    let mut worst_res = 0.0f64;
    let mut worst_lead = 0.0f64;
    for i in 1..=samples {
        let r = wave.extent * i as f64 / samples as f64;
        let h = (1e-4 / alpha).min(r / 10.0);
        let f = |x: f64| wave.value(x);
        let d2 = (-f(r + 2.0 * h) + 16.0 * f(r + h) - 30.0 * f(r) + 16.0 * f(r - h)
            - f(r - 2.0 * h))
            / (12.0 * h * h);
        let res = d2 + k_of(r) * f(r);
        if !res.is_finite() {
            return Err(Error::Domain(format!("non-finite residual at r = {r}")));
        }
        worst_res = worst_res.max(res.abs());
        worst_lead = worst_lead.max(d2.abs());
    }
    Ok(worst_res / worst_lead)
}

/// ⟨ψ_i|ψ_j⟩ for the valid levels among n = 0..=n_max at fixed l. Returns the
/// n labels used and the (symmetric) matrix.
pub fn overlap_matrix(
    params: &PotentialParams,
    consts: &PhysicalConstants,
    l: u32,
    n_max: u32,
) -> Result<(Vec<u32>, Vec<Vec<f64>>)> {
    let mut waves = Vec::new();
    for n in 0..=n_max {
        let level = energy(params, consts, n, l)?;
        if level.valid_bound_state {
            waves.push(build_wave(params, consts, &level)?);
        }
    }
    let mut m = vec![vec![0.0; waves.len()]; waves.len()];
    for i in 0..waves.len() {
        for j in i..waves.len() {
            let r_max = waves[i].extent.max(waves[j].extent);
            let v = integrate(
                |r| waves[i].value(r) * waves[j].value(r),
                0.0,
                r_max,
                &settings(),
            )?
            .value[0];
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    Ok((waves.iter().map(|w| w.jacobi.n).collect(), m))
}
