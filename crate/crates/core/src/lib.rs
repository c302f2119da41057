//! Bound states and thermodynamics of the Manning-Rosen plus exponential
//! Yukawa (MREY) potential
//!
//! ```text
//! V(r) = −(A₁e^{−αr} + A₂e^{−2αr}) / (1 − e^{−αr})² − A₃e^{−αr}/r
//! ```
//!
//! solved with the parametric Nikiforov–Uvarov method under the Greene–Aldrich
//! approximation.
//!
//! * [`params`]: constants, couplings, the potential and the spectral
//!   coefficients Q₁, Q₂, Q₃, δ.
//! * [`nu`]: the generic NU constants and the numerical energy oracle.
//! * [`spectrum`]: closed-form energies, special cases, λ_max.
//! * [`wavefunction`]: Jacobi-polynomial radial functions.
//! * [`thermo`]: partition function, U, S, F, C.
//! * [`recover`]: coupling recovery from tabulated spectra.

pub mod error;
pub mod nu;
pub mod numeric;
pub mod params;
pub mod recover;
pub mod spectrum;
pub mod thermo;
pub mod wavefunction;

pub use error::{Error, Result};
pub use nu::{NuCoefficients, NuDerived, WaveShape};
pub use params::{
    DimensionlessParams, PhysicalConstants, PotentialParams, QuantumNumbers, SpecialCase,
    SpectralCoefficients,
};
pub use spectrum::{EnergyLevel, SpectrumTable};
pub use thermo::{LogPartition, Sweep, SweepVariable, ThermoCurve, ThermoInput, ThermoPoint};
pub use wavefunction::{JacobiParams, RadialWave, ResidualForm};
