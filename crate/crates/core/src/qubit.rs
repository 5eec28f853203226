//! Qubit states, the driven Hamiltonian and its dressed basis.
//!
//! Matrices are written in the ordered basis `(|e>, |g>)`, so that
//! `sigma_z = diag(+1, -1)` and `sigma_+ = |e><g|`. The vectorization used by
//! the generators depends on this ordering, see [`crate::liouvillian`].

use core::f64::consts::{PI, TAU};

use nalgebra::{Matrix2, Vector2, Vector4};
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::C64;

/// Default bound on `max(|delta|, omega) / omega_l` for the rotating-wave approximation.
pub const DEFAULT_RWA_THRESHOLD: f64 = 0.01;

/// Tolerance on hermiticity and unit trace accepted by [`QubitState::new`].
pub const STATE_TOL: f64 = 1e-10;

/// Eigenvalues above `-PHYSICAL_TOL` count as nonnegative.
pub const PHYSICAL_TOL: f64 = 1e-10;

/// Eigenvalues below `-FIDELITY_REJECT_TOL` make [`fidelity`] fail.
pub const FIDELITY_REJECT_TOL: f64 = 1e-6;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub fn sigma_x() -> Matrix2<C64> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn sigma_y() -> Matrix2<C64> {
    Matrix2::new(ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO)
}

pub fn sigma_z() -> Matrix2<C64> {
    Matrix2::new(ONE, ZERO, ZERO, -ONE)
}

/// Raising operator `|e><g|`.
pub fn sigma_plus() -> Matrix2<C64> {
    Matrix2::new(ZERO, ONE, ZERO, ZERO)
}

/// Lowering operator `|g><e|`.
pub fn sigma_minus() -> Matrix2<C64> {
    Matrix2::new(ZERO, ZERO, ONE, ZERO)
}

/// Laser and qubit parameters. Frequencies are angular, with `hbar = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ControlField {
    /// Detuning `omega_0 - omega_l`.
    pub delta: f64,
    /// Rabi frequency.
    pub omega: f64,
    /// Laser phase in `[0, 2 pi)`.
    pub phi: f64,
    /// Laser frequency.
    pub omega_l: f64,
    /// Qubit frequency.
    pub omega_0: f64,
}

impl ControlField {
    /// Builds a field from detuning, Rabi frequency, phase and laser frequency.
    /// The qubit frequency follows as `omega_l + delta`; the phase is wrapped
    /// into `[0, 2 pi)`.
    pub fn new(delta: f64, omega: f64, phi: f64, omega_l: f64) -> Result<Self> {
        let finite = |v: f64, name| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: "must be finite",
                })
            }
        };
        finite(delta, "delta")?;
        finite(omega, "omega")?;
        finite(phi, "phi")?;
        finite(omega_l, "omega_l")?;
        if omega < 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega",
                reason: "Rabi frequency must be nonnegative",
            });
        }
        if omega_l <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega_l",
                reason: "laser frequency must be positive",
            });
        }
        let omega_0 = omega_l + delta;
        if omega_0 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega_0",
                reason: "qubit frequency must be positive",
            });
        }
        let mut phi = phi % TAU;
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self {
            delta,
            omega,
            phi,
            omega_l,
            omega_0,
        })
    }

    /// `max(|delta|, omega) / omega_l`; the rotating-wave approximation needs this small.
    pub fn rwa_ratio(&self) -> f64 {
        self.delta.abs().max(self.omega) / self.omega_l
    }

    /// `false` when the rotating-wave ratio reaches `threshold`. This is a warning only.
    pub fn rwa_valid(&self, threshold: f64) -> bool {
        self.rwa_ratio() < threshold
    }

    /// Same field with a different Rabi frequency.
    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.delta, omega, self.phi, self.omega_l)
    }

    /// Same field with a different phase.
    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        Self::new(self.delta, self.omega, phi, self.omega_l)
    }

    /// `H_S = (delta sigma_z + omega sigma_x) / 2` in the frame that absorbs the laser phase.
    pub fn hamiltonian(&self) -> Matrix2<C64> {
        (sigma_z() * C64::from(self.delta) + sigma_x() * C64::from(self.omega)) * C64::from(0.5)
    }

    /// Unitary that restores the laser phase: `rho_eg -> exp(-i phi) rho_eg`.
    pub fn phase_unitary(&self) -> Matrix2<C64> {
        let half = 0.5 * self.phi;
        Matrix2::new(
            C64::from_polar(1.0, -half),
            ZERO,
            ZERO,
            C64::from_polar(1.0, half),
        )
    }

    /// Hamiltonian with the laser phase restored, `V H_S V^dagger`.
    pub fn hamiltonian_with_phase(&self) -> Matrix2<C64> {
        let v = self.phase_unitary();
        v * self.hamiltonian() * v.adjoint()
    }
}

/// Eigenbasis of the driven Hamiltonian.
///
/// `|phi_+> = C |e> + S |g>` and `|phi_-> = C |g> - S |e>` with splitting `nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DressedBasis {
    pub nu: f64,
    pub theta: f64,
    pub c: f64,
    pub s: f64,
}

/// Diagonalizes the driven Hamiltonian of `field`.
pub fn dressed_basis(field: &ControlField) -> Result<DressedBasis> {
    DressedBasis::from_detuning(field.delta, field.omega)
}

impl DressedBasis {
    /// `theta = 2 arctan[(nu - delta) / omega]`, evaluated as `atan2(omega, delta)`
    /// so that the undriven limits (`theta = 0` for `delta > 0`, `pi` for
    /// `delta < 0`) are reached without cancellation.
    pub fn from_detuning(delta: f64, omega: f64) -> Result<Self> {
        if delta == 0.0 && omega == 0.0 {
            return Err(Error::DegenerateHamiltonian);
        }
        let nu = delta.hypot(omega);
        let theta = omega.atan2(delta);
        let (s, c) = (0.5 * theta).sin_cos();
        Ok(Self { nu, theta, c, s })
    }

    /// Basis with a given mixing angle and splitting, for rate-only studies.
    pub fn from_angle(theta: f64, nu: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(nu > 0.0) {
            return Err(Error::InvalidParameter {
                name: "theta",
                reason: "mixing angle must lie in [0, pi] and nu must be positive",
            });
        }
        let (s, c) = (0.5 * theta).sin_cos();
        Ok(Self { nu, theta, c, s })
    }

    pub fn c2(&self) -> f64 {
        self.c * self.c
    }

    pub fn s2(&self) -> f64 {
        self.s * self.s
    }

    pub fn plus_state(&self) -> Vector2<C64> {
        Vector2::new(C64::from(self.c), C64::from(self.s))
    }

    pub fn minus_state(&self) -> Vector2<C64> {
        Vector2::new(C64::from(-self.s), C64::from(self.c))
    }

    /// `|phi_+><phi_-|`.
    pub fn sigma_plus(&self) -> Matrix2<C64> {
        self.plus_state() * self.minus_state().adjoint()
    }

    /// `|phi_-><phi_+|`.
    pub fn sigma_minus(&self) -> Matrix2<C64> {
        self.minus_state() * self.plus_state().adjoint()
    }

    /// `|phi_+><phi_+| - |phi_-><phi_-|`.
    pub fn sigma_z(&self) -> Matrix2<C64> {
        self.projector_plus() - self.projector_minus()
    }

    pub fn projector_plus(&self) -> Matrix2<C64> {
        self.plus_state() * self.plus_state().adjoint()
    }

    pub fn projector_minus(&self) -> Matrix2<C64> {
        self.minus_state() * self.minus_state().adjoint()
    }
}

/// Coefficients expressing the bare operators through the dressed eigenoperators:
///
/// `sigma_+- = c2 s~_+- + minus_s2 s~_-+ + sc s~_z` and
/// `sigma_z = cos_theta s~_z + minus_sin_theta s~_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenoperatorTable {
    pub c2: f64,
    pub minus_s2: f64,
    pub sc: f64,
    pub cos_theta: f64,
    pub minus_sin_theta: f64,
}

pub fn eigenoperator_decomposition(basis: &DressedBasis) -> EigenoperatorTable {
    EigenoperatorTable {
        c2: basis.c2(),
        minus_s2: -basis.s2(),
        sc: basis.s * basis.c,
        cos_theta: basis.theta.cos(),
        minus_sin_theta: -basis.theta.sin(),
    }
}

impl EigenoperatorTable {
    pub fn sigma_plus(&self, basis: &DressedBasis) -> Matrix2<C64> {
        basis.sigma_plus() * C64::from(self.c2)
            + basis.sigma_minus() * C64::from(self.minus_s2)
            + basis.sigma_z() * C64::from(self.sc)
    }

    pub fn sigma_minus(&self, basis: &DressedBasis) -> Matrix2<C64> {
        basis.sigma_minus() * C64::from(self.c2)
            + basis.sigma_plus() * C64::from(self.minus_s2)
            + basis.sigma_z() * C64::from(self.sc)
    }

    pub fn sigma_z(&self, basis: &DressedBasis) -> Matrix2<C64> {
        let sx = basis.sigma_plus() + basis.sigma_minus();
        basis.sigma_z() * C64::from(self.cos_theta) + sx * C64::from(self.minus_sin_theta)
    }
}

/// Bloch vector `(2 Re rho_eg, -2 Im rho_eg, 2 rho_ee - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlochVector {
    pub rx: f64,
    pub ry: f64,
    pub rz: f64,
}

impl BlochVector {
    pub const fn new(rx: f64, ry: f64, rz: f64) -> Self {
        Self { rx, ry, rz }
    }

    pub fn norm(&self) -> f64 {
        (self.rx * self.rx + self.ry * self.ry + self.rz * self.rz).sqrt()
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        let (dx, dy, dz) = (self.rx - other.rx, self.ry - other.ry, self.rz - other.rz);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// Rotation about the z axis by `angle`.
    pub fn rotate_z(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.rx - s * self.ry, s * self.rx + c * self.ry, self.rz)
    }
}

/// Eigen-decomposition of a 2x2 Hermitian matrix. Eigenvalues are ascending and
/// the columns of the returned unitary are the matching eigenvectors.
pub fn hermitian_eigen(m: &Matrix2<C64>) -> ([f64; 2], Matrix2<C64>) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let mean = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let babs = b.norm();
    let r = half_diff.hypot(babs);
    if r == 0.0 {
        return ([mean, mean], Matrix2::identity());
    }
    // Upper eigenvector (cos(alpha/2), exp(-i beta) sin(alpha/2)) with
    // tan(alpha) = |b| / half_diff and b = |b| exp(i beta).
    let alpha = babs.atan2(half_diff);
    let (sa, ca) = (0.5 * alpha).sin_cos();
    let phase = if babs > 0.0 { b / babs } else { ONE };
    let upper = Vector2::new(C64::from(ca), phase.conj() * sa);
    let lower = Vector2::new(-phase * sa, C64::from(ca));
    let mut vecs = Matrix2::zeros();
    vecs.set_column(0, &lower);
    vecs.set_column(1, &upper);
    ([mean - r, mean + r], vecs)
}

/// Square root of a positive semidefinite Hermitian matrix; negative
/// eigenvalues are clipped to zero.
pub fn psd_sqrt(m: &Matrix2<C64>) -> Matrix2<C64> {
    let (vals, vecs) = hermitian_eigen(m);
    let root = Matrix2::from_diagonal(&Vector2::new(
        C64::from(vals[0].max(0.0).sqrt()),
        C64::from(vals[1].max(0.0).sqrt()),
    ));
    vecs * root * vecs.adjoint()
}

fn hermitize(m: &Matrix2<C64>) -> Matrix2<C64> {
    (m + m.adjoint()) * C64::from(0.5)
}

/// Density matrix of the qubit in the `(|e>, |g>)` basis.
///
/// Hermiticity and unit trace are enforced on construction; positivity is not,
/// because non-secular generators can produce states with a negative
/// eigenvalue. Use [`QubitState::is_physical`] to check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    rho: Matrix2<C64>,
}

impl QubitState {
    pub fn new(rho: Matrix2<C64>) -> Result<Self> {
        if rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "rho",
                reason: "entries must be finite",
            });
        }
        if (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max) > STATE_TOL {
            return Err(Error::InvalidParameter {
                name: "rho",
                reason: "density matrix must be Hermitian",
            });
        }
        if (rho.trace() - ONE).norm() > STATE_TOL {
            return Err(Error::InvalidParameter {
                name: "rho",
                reason: "density matrix must have unit trace",
            });
        }
        Ok(Self {
            rho: hermitize(&rho),
        })
    }

    /// Hermitian part of `rho`, without any trace check.
    pub(crate) fn from_matrix_unchecked(rho: Matrix2<C64>) -> Self {
        Self {
            rho: hermitize(&rho),
        }
    }

    pub fn excited() -> Self {
        Self {
            rho: Matrix2::new(ONE, ZERO, ZERO, ZERO),
        }
    }

    pub fn ground() -> Self {
        Self {
            rho: Matrix2::new(ZERO, ZERO, ZERO, ONE),
        }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            rho: Matrix2::identity() * C64::from(0.5),
        }
    }

    /// `|psi><psi|` for a nonzero (not necessarily normalized) ket.
    pub fn pure(psi: &Vector2<C64>) -> Result<Self> {
        let norm = psi.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParameter {
                name: "psi",
                reason: "state vector must be nonzero and finite",
            });
        }
        let psi = psi / C64::from(norm);
        Ok(Self::from_matrix_unchecked(psi * psi.adjoint()))
    }

    /// Diagonal state in the dressed basis with weight `p_plus` on `|phi_+>`.
    pub fn dressed_mixture(basis: &DressedBasis, p_plus: f64) -> Self {
        Self::from_matrix_unchecked(
            basis.projector_plus() * C64::from(p_plus)
                + basis.projector_minus() * C64::from(1.0 - p_plus),
        )
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.rho
    }

    pub fn rho_ee(&self) -> f64 {
        self.rho[(0, 0)].re
    }

    pub fn rho_eg(&self) -> C64 {
        self.rho[(0, 1)]
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn purity(&self) -> f64 {
        (self.rho * self.rho).trace().re
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> [f64; 2] {
        hermitian_eigen(&self.rho).0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Both eigenvalues at least `-PHYSICAL_TOL`.
    pub fn is_physical(&self) -> bool {
        self.min_eigenvalue() >= -PHYSICAL_TOL
    }

    /// Row-major vectorization `(rho_ee, rho_eg, rho_ge, rho_gg)`.
    pub fn to_vec(&self) -> Vector4<C64> {
        Vector4::new(
            self.rho[(0, 0)],
            self.rho[(0, 1)],
            self.rho[(1, 0)],
            self.rho[(1, 1)],
        )
    }

    pub fn from_vec(v: &Vector4<C64>) -> Result<Self> {
        Self::new(Matrix2::new(v[0], v[1], v[2], v[3]))
    }

    pub fn bloch(&self) -> BlochVector {
        let eg = self.rho_eg();
        BlochVector {
            rx: 2.0 * eg.re,
            ry: -2.0 * eg.im,
            rz: self.rho[(0, 0)].re - self.rho[(1, 1)].re,
        }
    }

    pub fn from_bloch(v: &BlochVector) -> Self {
        let ee = 0.5 * (1.0 + v.rz);
        let eg = C64::new(0.5 * v.rx, -0.5 * v.ry);
        Self {
            rho: Matrix2::new(C64::from(ee), eg, eg.conj(), C64::from(1.0 - ee)),
        }
    }

    /// `U rho U^dagger`.
    pub fn transform(&self, u: &Matrix2<C64>) -> Self {
        Self::from_matrix_unchecked(u * self.rho * u.adjoint())
    }
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`, evaluated with the
/// qubit identity `Tr(rho sigma) + 2 sqrt(det rho det sigma)`, which stays
/// accurate for nearly pure states.
///
/// Slightly negative eigenvalues (down to `-FIDELITY_REJECT_TOL`) are clipped.
pub fn fidelity(rho: &QubitState, sigma: &QubitState) -> Result<f64> {
    for state in [rho, sigma] {
        let min = state.min_eigenvalue();
        if min < -FIDELITY_REJECT_TOL {
            return Err(Error::NonPhysicalState(min));
        }
    }
    let det = |m: &Matrix2<C64>| (m[(0, 0)].re * m[(1, 1)].re - m[(0, 1)].norm_sqr()).max(0.0);
    let overlap = (rho.matrix() * sigma.matrix()).trace().re;
    let f = overlap + 2.0 * (det(rho.matrix()) * det(sigma.matrix())).sqrt();
    Ok(f.clamp(0.0, 1.0))
}
