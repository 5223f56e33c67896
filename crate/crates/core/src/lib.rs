//! Numerical laboratory for the Riemann `xi` function read as a scattering
//! matrix: `zeta` and `xi` in log form, critical-line zeros with
//! argument-principle cross-checks, `S(s) = xi(2s)/xi(-2s)` and its Jost
//! function, dispersion reconstruction on the real momentum line, the
//! inverse-square potential, and the Hadamard product.

pub mod cli;
pub mod dispersion;
pub mod hadamard;
pub mod numerics;
pub mod quantum;
pub mod scattering;
pub mod specfun;
pub mod zeros;
pub mod zeta;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] numerics::NumericsError),
    #[error(transparent)]
    SpecFun(#[from] specfun::SpecFunError),
    #[error(transparent)]
    Zeta(#[from] zeta::ZetaError),
    #[error(transparent)]
    Zeros(#[from] zeros::ZerosError),
    #[error(transparent)]
    Scattering(#[from] scattering::ScatteringError),
    #[error(transparent)]
    Dispersion(#[from] dispersion::DispersionError),
    #[error(transparent)]
    Quantum(#[from] quantum::QuantumError),
    #[error(transparent)]
    Hadamard(#[from] hadamard::HadamardError),
}

pub type Result<T> = std::result::Result<T, Error>;
