use alloc::vec::Vec;

use nalgebra::Vector4;

use crate::C64;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error("degenerate Hamiltonian: detuning and Rabi frequency are both zero")]
    DegenerateHamiltonian,
    #[error("non-positive frequency {0} (sideband below zero, the carrier must dominate the dressed splitting)")]
    NonPositiveFrequency(f64),
    #[error("non-physical state: minimum eigenvalue {0}")]
    NonPhysicalState(f64),
    #[error("negative rate {0}")]
    NegativeRate(f64),
    #[error("quadrature did not reach tolerance (estimate {value}, error {error})")]
    QuadratureFailure { value: f64, error: f64 },
    #[error("principal-value integrand is not integrable at zero frequency: {0}")]
    DivergentIntegral(&'static str),
    #[error("unsupported principal-value method: {0}")]
    UnsupportedMethod(&'static str),
    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },
    #[error("null space of the generator has dimension {dimension}")]
    DegenerateNullSpace {
        dimension: usize,
        /// Orthonormal basis of the numerical null space, in vectorized form.
        basis: Vec<Vector4<C64>>,
    },
    #[error("generator has no spectral gap")]
    NoGap,
    #[error("total secular rate is zero")]
    ZeroTotalRate,
    #[error("target state has a degenerate spectrum")]
    DegenerateSpectrum,
    #[error("target state violates the purity condition (residual {0})")]
    IncompatibleTarget(f64),
    #[error("no physical thermal occupation exists for x = {0}")]
    NoPhysicalSolution(f64),
    #[error("mixing angle is pi/2, compensation is singular")]
    SingularAngle,
}

pub type Result<T> = core::result::Result<T, Error>;
