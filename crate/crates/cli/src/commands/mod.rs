//! One module per subcommand. Each exposes the data it produces as a
//! function of the effective [`RunConfig`](crate::RunConfig) and a `run` that
//! writes it out.

pub mod figures;
pub mod recover;
pub mod spectrum;
pub mod table;
pub mod verify;
pub mod wavefunction;
