//! Analytic steady states and the comparisons built on them.

use alloc::vec::Vec;

use nalgebra::Matrix2;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dynamics::steady_state;
use crate::error::{Error, Result};
use crate::liouvillian::{build_fdme, build_mme_nonsecular, build_mme_secular, GeneratorKind, Liouvillian};
use crate::qubit::{dressed_basis, fidelity, hermitian_eigen, sigma_minus, sigma_plus, BlochVector, ControlField, DressedBasis, QubitState};
use crate::reservoir::{
    fixed_dissipator_rates, rate_set, RateSet, ReservoirOptions, SidebandRates, SpectralDensity, Thermal,
};
use crate::C64;

/// `gamma_fd / delta` standing in for a negligible fixed-dissipator rate in
/// generators, which need `gamma_fd > 0` for a unique steady state.
pub const NEGLIGIBLE_GAMMA_FD: f64 = 1e-6;

/// Where the bath rates come from.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ReservoirModel {
    /// Rates and principal values from a spectral density at a temperature.
    Spectral {
        density: SpectralDensity,
        thermal: Thermal,
        options: ReservoirOptions,
    },
    /// `x = gamma_- / gamma_+` held fixed for every dressed splitting, see
    /// [`SidebandRates::from_ratio`]. No principal-value terms.
    FixedRatio { x: f64, gamma_0: f64, n: f64 },
    /// Sideband rates given directly. No principal-value terms.
    Explicit(SidebandRates),
}

impl ReservoirModel {
    pub fn rates(&self, field: &ControlField, basis: &DressedBasis) -> Result<RateSet> {
        match self {
            Self::Spectral {
                density,
                thermal,
                options,
            } => rate_set(density, thermal, field, basis, options),
            Self::FixedRatio { x, gamma_0, n } => {
                Ok(RateSet::from_sidebands(SidebandRates::from_ratio(*x, *gamma_0, *n)?, basis))
            }
            Self::Explicit(sb) => Ok(RateSet::from_sidebands(*sb, basis)),
        }
    }

    /// `(gamma_fd, n_fd)`: the bath seen by the undriven qubit. Without a
    /// spectral density the carrier rate stands in for `gamma_fd`.
    pub fn fd_rates(&self, field: &ControlField) -> Result<(f64, f64)> {
        match self {
            Self::Spectral { density, thermal, .. } => fixed_dissipator_rates(density, thermal, field),
            Self::FixedRatio { gamma_0, n, .. } => Ok((*gamma_0, *n)),
            Self::Explicit(sb) => Ok((sb.gamma_zero, sb.n_zero)),
        }
    }
}

/// Generator of the requested kind for one control point.
pub fn build_generator(
    kind: GeneratorKind,
    model: &ReservoirModel,
    field: &ControlField,
    include_lamb: bool,
) -> Result<Liouvillian> {
    match kind {
        GeneratorKind::Fdme => {
            let (g, n) = model.fd_rates(field)?;
            build_fdme(field, g, n)
        }
        GeneratorKind::MmeSecular => {
            let basis = dressed_basis(field)?;
            build_mme_secular(field, &basis, &model.rates(field, &basis)?, include_lamb)
        }
        GeneratorKind::MmeNonsecular => {
            let basis = dressed_basis(field)?;
            build_mme_nonsecular(field, &basis, &model.rates(field, &basis)?)
        }
        GeneratorKind::Custom => Err(Error::InvalidParameter {
            name: "kind",
            reason: "custom generators have no builder",
        }),
    }
}

/// Closed-form fixed-dissipator steady state, phase included.
pub fn fd_steady_analytic(field: &ControlField, gamma_fd: f64, n_fd: f64) -> Result<QubitState> {
    if !(gamma_fd >= 0.0) || !(n_fd >= 0.0) || !gamma_fd.is_finite() || !n_fd.is_finite() {
        return Err(Error::InvalidParameter {
            name: "gamma_fd",
            reason: "rate and occupation must be nonnegative",
        });
    }
    let (d, o) = (field.delta, field.omega);
    let m = 1.0 + 2.0 * n_fd;
    let den = gamma_fd * gamma_fd * m * m + 4.0 * d * d + 2.0 * o * o;
    if den == 0.0 {
        return Err(Error::DegenerateHamiltonian);
    }
    let ee = n_fd / m + o * o / m / den;
    let eg = C64::new(2.0 * d / m, gamma_fd) * (-o / den) * C64::from_polar(1.0, -field.phi);
    Ok(state_from(ee, eg))
}

fn state_from(ee: f64, eg: C64) -> QubitState {
    QubitState::from_matrix_unchecked(Matrix2::new(C64::from(ee), eg, eg.conj(), C64::from(1.0 - ee)))
}

/// Secular steady state: the dressed mixture with weights
/// `g_minus / (g_plus + g_minus)` on `|phi_+>`, rotated back and phase-restored.
pub fn mme_secular_steady_analytic(basis: &DressedBasis, rates: &RateSet, phi: f64) -> Result<QubitState> {
    let (gm, gp) = (rates.secular.minus, rates.secular.plus);
    let total = gm + gp;
    if !(total > 0.0) {
        return Err(Error::ZeroTotalRate);
    }
    let rho = QubitState::dressed_mixture(basis, gm / total);
    let half = 0.5 * phi;
    let v = Matrix2::new(C64::from_polar(1.0, -half), C64::from(0.0), C64::from(0.0), C64::from_polar(1.0, half));
    Ok(rho.transform(&v))
}

/// Secular steady state when every occupation equals `n_fd`, written through
/// the rate ratio `x = gamma_- / gamma_+`:
///
/// `rho_ee = n/(1+2n) + S^2 C^2/(1+2n) (S^2 x + C^2)/(S^4 x + C^4)`,
/// `rho_eg = S C/(1+2n) (S^4 x - C^4)/(S^4 x + C^4) exp(-i phi)`.
pub fn secular_uniform_closed_form(basis: &DressedBasis, x: f64, n_fd: f64, phi: f64) -> Result<QubitState> {
    if !(x >= 0.0) || !(n_fd >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "x",
            reason: "ratio and occupation must be nonnegative",
        });
    }
    let (c2, s2) = (basis.c2(), basis.s2());
    let (c4, s4) = (c2 * c2, s2 * s2);
    let den = s4 * x + c4;
    if den == 0.0 {
        return Err(Error::ZeroTotalRate);
    }
    let m = 1.0 + 2.0 * n_fd;
    let ee = n_fd / m + s2 * c2 / m * (s2 * x + c2) / den;
    let eg = C64::from_polar(basis.s * basis.c / m * (s4 * x - c4) / den, -phi);
    Ok(state_from(ee, eg))
}

/// `gamma n L[sigma_+] + gamma (1 + n) L[sigma_-]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FdDissipator {
    pub gamma_fd: f64,
    pub n_fd: f64,
}

impl FdDissipator {
    pub fn new(gamma_fd: f64, n_fd: f64) -> Result<Self> {
        if !(gamma_fd >= 0.0) || !(n_fd >= 0.0) {
            return Err(Error::NegativeRate(gamma_fd.min(n_fd)));
        }
        Ok(Self { gamma_fd, n_fd })
    }

    pub fn apply(&self, rho: &Matrix2<C64>) -> Matrix2<C64> {
        let lind = |x: Matrix2<C64>, rate: f64| {
            let xdx = x.adjoint() * x;
            (x * rho * x.adjoint() - (xdx * rho + rho * xdx) * C64::from(0.5)) * C64::from(rate)
        };
        lind(sigma_plus(), self.gamma_fd * self.n_fd) + lind(sigma_minus(), self.gamma_fd * (1.0 + self.n_fd))
    }

    fn scale(&self) -> f64 {
        self.gamma_fd * (1.0 + 2.0 * self.n_fd)
    }
}

/// `|Tr(rho D(rho))|`: zero exactly when some Hamiltonian makes `rho` a
/// steady state of `D`.
pub fn fd_purity_condition(rho: &QubitState, d: &FdDissipator) -> f64 {
    (rho.matrix() * d.apply(rho.matrix())).trace().re.abs()
}

/// Relative purity-condition residual tolerated by [`control_for_target`].
pub const PURITY_TOL: f64 = 1e-9;

/// Hamiltonian `H` with `-i [H, rho] + D(rho) = 0`, built in the eigenbasis of
/// the target: `H_ab = i <a|D(rho)|b> / (l_a - l_b)` off the diagonal.
pub fn control_for_target(rho: &QubitState, d: &FdDissipator) -> Result<Matrix2<C64>> {
    let (vals, vecs) = hermitian_eigen(rho.matrix());
    if (vals[1] - vals[0]).abs() < 1e-12 {
        return Err(Error::DegenerateSpectrum);
    }
    let residual = fd_purity_condition(rho, d);
    if residual > PURITY_TOL * d.scale().max(f64::MIN_POSITIVE) {
        return Err(Error::IncompatibleTarget(residual));
    }
    let dm = vecs.adjoint() * d.apply(rho.matrix()) * vecs;
    let i = C64::new(0.0, 1.0);
    let mut h = Matrix2::zeros();
    h[(0, 1)] = i * dm[(0, 1)] / (vals[0] - vals[1]);
    h[(1, 0)] = i * dm[(1, 0)] / (vals[1] - vals[0]);
    Ok(vecs * h * vecs.adjoint())
}

/// `2 (r_x^2 + r_y^2) + (2 r_z + 1)^2 - 1`; zero on the zero-temperature
/// fixed-dissipator ellipsoid.
pub fn ellipsoid_residual(r: &BlochVector) -> f64 {
    2.0 * (r.rx * r.rx + r.ry * r.ry) + (2.0 * r.rz + 1.0).powi(2) - 1.0
}

/// How steady states are obtained in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SteadyMethod {
    /// Closed forms; the fixed dissipator is taken with `gamma_fd = 0`.
    #[default]
    Analytic,
    /// Null space of the generator.
    NullSpace,
}

/// Control grid of a sweep: every `(omega / delta, phi)` pair at fixed `delta`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepGrid {
    pub delta: f64,
    pub omega_l: f64,
    pub omega_over_delta: Vec<f64>,
    pub phis: Vec<f64>,
}

impl SweepGrid {
    pub fn fields(&self) -> Result<Vec<ControlField>> {
        let mut out = Vec::with_capacity(self.omega_over_delta.len() * self.phis.len());
        for &phi in &self.phis {
            for &r in &self.omega_over_delta {
                out.push(ControlField::new(self.delta, r * self.delta.abs(), phi, self.omega_l)?);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepPoint {
    pub omega_over_delta: f64,
    pub phi: f64,
    pub bloch: BlochVector,
    /// `gamma_- / gamma_+` at this point; `None` for the fixed dissipator.
    pub x: Option<f64>,
    /// Fidelity with the negligible-rate fixed-dissipator state at the same
    /// control point and temperature; `None` when the state is not physical.
    pub fidelity: Option<f64>,
    pub physical: bool,
    /// Null-space residual, when the null space was used.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepResult {
    pub kind: GeneratorKind,
    pub method: SteadyMethod,
    pub points: Vec<SweepPoint>,
}

/// Steady state for one control point.
pub fn steady_point(
    kind: GeneratorKind,
    model: &ReservoirModel,
    field: &ControlField,
    method: SteadyMethod,
    include_lamb: bool,
) -> Result<(QubitState, Option<f64>)> {
    match (method, kind) {
        (SteadyMethod::Analytic, GeneratorKind::Fdme) => {
            let (_, n) = model.fd_rates(field)?;
            Ok((fd_steady_analytic(field, 0.0, n)?, None))
        }
        (SteadyMethod::Analytic, GeneratorKind::MmeSecular) => {
            let basis = dressed_basis(field)?;
            let rates = model.rates(field, &basis)?;
            Ok((mme_secular_steady_analytic(&basis, &rates, field.phi)?, None))
        }
        (SteadyMethod::Analytic, _) => Err(Error::UnsupportedMethod(
            "no closed-form steady state for this generator",
        )),
        (SteadyMethod::NullSpace, _) => {
            let l = build_generator(kind, model, field, include_lamb)?;
            let ss = steady_state(&l)?;
            Ok((ss.state, Some(ss.residual)))
        }
    }
}

/// Steady Bloch vectors over a control grid, in grid order (phi outer, omega inner).
pub fn ellipsoid_sweep(
    kind: GeneratorKind,
    model: &ReservoirModel,
    grid: &SweepGrid,
    method: SteadyMethod,
    include_lamb: bool,
) -> Result<SweepResult> {
    let mut points = Vec::new();
    for field in grid.fields()? {
        let (state, residual) = steady_point(kind, model, &field, method, include_lamb)?;
        let (_, n) = model.fd_rates(&field)?;
        let reference = fd_steady_analytic(&field, 0.0, n)?;
        let physical = state.is_physical();
        let x = match kind {
            GeneratorKind::Fdme => None,
            _ => {
                let basis = dressed_basis(&field)?;
                Some(model.rates(&field, &basis)?.ratio())
            }
        };
        points.push(SweepPoint {
            omega_over_delta: field.omega / field.delta.abs(),
            phi: field.phi,
            bloch: state.bloch(),
            x,
            fidelity: fidelity(&state, &reference).ok(),
            physical,
            residual,
        });
    }
    Ok(SweepResult { kind, method, points })
}

/// Fidelity between the zero-temperature fixed-dissipator state (negligible
/// `gamma_fd`) and the secular state at fixed `x`, rows indexed by `log10 x`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FidelityMap {
    pub omega_over_delta: Vec<f64>,
    pub log10_x: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

pub fn fidelity_map(omega_over_delta: &[f64], log10_x: &[f64], delta: f64, phi: f64) -> Result<FidelityMap> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            reason: "fidelity map is defined for positive detuning",
        });
    }
    let mut values = Vec::with_capacity(log10_x.len());
    for &lx in log10_x {
        let x = 10f64.powf(lx);
        let mut row = Vec::with_capacity(omega_over_delta.len());
        for &r in omega_over_delta {
            // The absolute laser frequency does not enter either closed form.
            let field = ControlField::new(delta, r * delta, phi, 1e3 * delta * (1.0 + r))?;
            let basis = dressed_basis(&field)?;
            let fd = fd_steady_analytic(&field, 0.0, 0.0)?;
            let rates = RateSet::from_sidebands(SidebandRates::from_ratio(x, 1.0, 0.0)?, &basis);
            let sec = mme_secular_steady_analytic(&basis, &rates, phi)?;
            row.push(fidelity(&fd, &sec)?);
        }
        values.push(row);
    }
    Ok(FidelityMap {
        omega_over_delta: omega_over_delta.to_vec(),
        log10_x: log10_x.to_vec(),
        values,
    })
}

/// Occupation `n_fd` that brings the secular state at ratio `x` back onto the
/// zero-temperature flat-spectrum state:
/// `n = C^4 S^4 (1 - x) / ((C^2 - S^2)(C^4 + x S^4))`.
pub fn thermal_compensation(x: f64, basis: &DressedBasis) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x",
            reason: "rate ratio must be nonnegative",
        });
    }
    if x > 1.0 {
        return Err(Error::NoPhysicalSolution(x));
    }
    let (c2, s2) = (basis.c2(), basis.s2());
    let diff = c2 - s2;
    if diff.abs() < 1e-12 {
        return Err(Error::SingularAngle);
    }
    let (c4, s4) = (c2 * c2, s2 * s2);
    let n = c4 * s4 * (1.0 - x) / (diff * (c4 + x * s4));
    if n < 0.0 {
        return Err(Error::NoPhysicalSolution(x));
    }
    Ok(n)
}

/// `n` points from `a` to `b`, both included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` points from `10^a` to `10^b`, evenly spaced in the exponent.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a, b, n).into_iter().map(|e| 10f64.powf(e)).collect()
}

/// Default `omega / delta` grid, `logspace(-1, 2, 200)`.
pub fn default_omega_grid() -> Vec<f64> {
    logspace(-1.0, 2.0, 200)
}

/// Default `log10 x` grid, 81 steps over `[-2, 2]`.
pub fn default_log10_x_grid() -> Vec<f64> {
    linspace(-2.0, 2.0, 81)
}

/// Lorentzian peaked on the qubit frequency with a given fixed-dissipator rate.
pub fn lorentzian_on_resonance(field: &ControlField, gamma_fd: f64, lambda: f64) -> Result<SpectralDensity> {
    SpectralDensity::lorentzian(gamma_fd, lambda, field.omega_0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::BlochVector;
    use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn field(delta: f64, omega: f64, phi: f64) -> ControlField {
        ControlField::new(delta, omega, phi, 1000.0).unwrap()
    }

    fn max_abs(m: &Matrix2<C64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn fd_analytic_examples() {
        let n = 0.3;
        let s = fd_steady_analytic(&field(1.0, 0.0, 0.0), 0.1, n).unwrap();
        assert!(close(s.rho_ee(), n / (1.0 + 2.0 * n), 1e-15));
        assert_eq!(s.rho_eg(), C64::from(0.0));

        let b = fd_steady_analytic(&field(1.0, SQRT_2, PI), 0.0, 0.0).unwrap().bloch();
        assert!(close(b.rx, FRAC_1_SQRT_2, 1e-15));
        assert!(close(b.ry, 0.0, 1e-15));
        assert!(close(b.rz, -0.5, 1e-15));
    }

    #[test]
    fn secular_reference_values() {
        let f = field(1.0, SQRT_2, PI);
        let basis = dressed_basis(&f).unwrap();
        for (x, e) in [(0.1, [0.805, 0.0, -0.569]), (10.0, [0.134, 0.0, -0.095])] {
            let r = RateSet::from_sidebands(SidebandRates::from_ratio(x, 1e-3, 0.0).unwrap(), &basis);
            let b = mme_secular_steady_analytic(&basis, &r, PI).unwrap().bloch();
            assert!(close(b.rx, e[0], 1e-3) && close(b.ry, e[1], 1e-12) && close(b.rz, e[2], 1e-3), "{b:?}");
        }
        // Flat bath: same point as the fixed dissipator.
        let r = RateSet::from_sidebands(SidebandRates::uniform(1e-3, 0.0).unwrap(), &basis);
        let sec = mme_secular_steady_analytic(&basis, &r, PI).unwrap().bloch();
        let fd = fd_steady_analytic(&f, 0.0, 0.0).unwrap().bloch();
        assert!(sec.distance(&fd) < 1e-15);
    }

    #[test]
    fn zero_rates_rejected() {
        let basis = DressedBasis::from_detuning(1.0, 1.0).unwrap();
        let r = RateSet::from_sidebands(SidebandRates::uniform(0.0, 0.0).unwrap(), &basis);
        assert!(matches!(mme_secular_steady_analytic(&basis, &r, 0.0), Err(Error::ZeroTotalRate)));
    }

    #[test]
    fn purity_condition_examples() {
        let g = 0.2;
        let d = FdDissipator::new(g, 0.0).unwrap();
        let s = fd_steady_analytic(&field(0.7, 1.1, 0.4), g, 0.0).unwrap();
        assert!(fd_purity_condition(&s, &d) < 1e-12);
        assert!(close(fd_purity_condition(&QubitState::excited(), &d), g, 1e-15));
        // Tr D(rho) = 0, so the maximally mixed state gives exactly zero.
        assert!(fd_purity_condition(&QubitState::maximally_mixed(), &d) < 1e-16);
    }

    #[test]
    fn control_reconstruction() {
        for (delta, omega, phi, g, n) in [(1.0, 1.3, 0.0, 0.05, 0.0), (-0.5, 0.4, 2.0, 0.3, 0.7)] {
            let f = field(delta, omega, phi);
            let d = FdDissipator::new(g, n).unwrap();
            let target = fd_steady_analytic(&f, g, n).unwrap();
            let h = control_for_target(&target, &d).unwrap();
            assert!(max_abs(&(h - h.adjoint())) < 1e-14);
            let rho = target.matrix();
            let i = C64::new(0.0, 1.0);
            let res = (h * rho - rho * h) * (-i) + d.apply(rho);
            assert!(max_abs(&res) < 1e-10);
            // H_S differs from the reconstruction only by terms commuting with rho.
            let diff = f.hamiltonian_with_phase() - h;
            assert!(max_abs(&(diff * rho - rho * diff)) < 1e-10);
        }
        let d = FdDissipator::new(0.1, 0.0).unwrap();
        assert!(matches!(
            control_for_target(&QubitState::maximally_mixed(), &d),
            Err(Error::DegenerateSpectrum)
        ));
        assert!(matches!(
            control_for_target(&QubitState::excited(), &d),
            Err(Error::IncompatibleTarget(_))
        ));
    }

    #[test]
    fn ellipsoid_over_default_grid() {
        let grid = SweepGrid {
            delta: 1.0,
            omega_l: 1e4,
            omega_over_delta: default_omega_grid(),
            phis: alloc::vec![0.0, PI],
        };
        let model = ReservoirModel::FixedRatio { x: 1.0, gamma_0: 0.0, n: 0.0 };
        let sweep = ellipsoid_sweep(GeneratorKind::Fdme, &model, &grid, SteadyMethod::Analytic, true).unwrap();
        assert_eq!(sweep.points.len(), 400);
        for p in &sweep.points {
            assert!(ellipsoid_residual(&p.bloch).abs() < 1e-10);
            assert!(close(p.fidelity.unwrap(), 1.0, 1e-12));
        }
    }

    #[test]
    fn fixed_ratio_sweep_passes_reference_point() {
        let grid = SweepGrid {
            delta: 1.0,
            omega_l: 1e3,
            omega_over_delta: alloc::vec![0.5, SQRT_2, 3.0],
            phis: alloc::vec![PI],
        };
        let model = ReservoirModel::FixedRatio { x: 0.1, gamma_0: 1e-3, n: 0.0 };
        let sweep = ellipsoid_sweep(GeneratorKind::MmeSecular, &model, &grid, SteadyMethod::Analytic, true).unwrap();
        let p = &sweep.points[1];
        assert!(close(p.bloch.rx, 0.805, 1e-3) && close(p.bloch.rz, -0.569, 1e-3));
        assert!(close(p.x.unwrap(), 0.1, 1e-14));
    }

    #[test]
    fn lorentzian_sweep_tails_approach_fd() {
        let delta = 1.0;
        let omega_l = 1e4;
        let f0 = ControlField::new(delta, 0.0, 0.0, omega_l).unwrap();
        let model = ReservoirModel::Spectral {
            density: lorentzian_on_resonance(&f0, 1e-3, delta).unwrap(),
            thermal: Thermal::zero(),
            options: ReservoirOptions::default(),
        };
        let grid = SweepGrid {
            delta,
            omega_l,
            omega_over_delta: alloc::vec![1e-3, 1.0, 1e3],
            phis: alloc::vec![PI],
        };
        let sweep = ellipsoid_sweep(GeneratorKind::MmeSecular, &model, &grid, SteadyMethod::Analytic, true).unwrap();
        let f: Vec<f64> = sweep.points.iter().map(|p| p.fidelity.unwrap()).collect();
        assert!(f[0] > 1.0 - 1e-6);
        assert!(f[2] > f[1]);
        assert!(f[1] < 0.995);
    }

    #[test]
    fn nonsecular_coherence_grows_with_drive() {
        // Lorentzian centred one width above the laser: r_x -> gamma_l omega / (8 delta^2)
        // at zero temperature, so positivity breaks near omega / delta = 8 delta / gamma_l.
        let wl = 1e5;
        let f0 = ControlField::new(1.0, 0.0, 0.0, wl).unwrap();
        let gl = 0.03;
        let model = ReservoirModel::Spectral {
            density: lorentzian_on_resonance(&f0, gl, 1.0).unwrap(),
            thermal: Thermal::zero(),
            options: ReservoirOptions::default(),
        };
        let at = |r: f64| {
            let f = ControlField::new(1.0, r, 0.0, wl).unwrap();
            steady_point(GeneratorKind::MmeNonsecular, &model, &f, SteadyMethod::NullSpace, true).unwrap().0
        };
        let s = at(3000.0);
        assert!(close(s.bloch().rx / (gl * 3000.0), 0.125, 1e-3));
        assert!(at(200.0).is_physical());
        assert!(!at(400.0).is_physical());
    }

    #[test]
    fn fidelity_map_structure() {
        let om = alloc::vec![0.0, 0.1, 1.0, SQRT_2, 10.0];
        let lx = alloc::vec![-1.0, 0.0, 1.0];
        let m = fidelity_map(&om, &lx, 1.0, PI).unwrap();
        for v in &m.values[1] {
            assert!(close(*v, 1.0, 1e-12));
        }
        for row in &m.values {
            assert!(close(row[0], 1.0, 1e-15));
            for v in row {
                assert!((0.0..=1.0).contains(v));
            }
        }
    }

    #[test]
    fn compensation_examples() {
        let b = DressedBasis::from_detuning(1.0, SQRT_2).unwrap();
        assert!(close(thermal_compensation(0.1, &b).unwrap(), 0.0691, 5e-4));
        assert_eq!(thermal_compensation(1.0, &b).unwrap(), 0.0);
        let b0 = DressedBasis::from_detuning(1.0, 0.0).unwrap();
        assert_eq!(thermal_compensation(0.3, &b0).unwrap(), 0.0);
        assert!(matches!(thermal_compensation(2.0, &b), Err(Error::NoPhysicalSolution(_))));
        let res = DressedBasis::from_detuning(0.0, 1.0).unwrap();
        assert!(matches!(thermal_compensation(0.5, &res), Err(Error::SingularAngle)));
        let neg = DressedBasis::from_detuning(-1.0, 1.0).unwrap();
        assert!(matches!(thermal_compensation(0.5, &neg), Err(Error::NoPhysicalSolution(_))));
    }

    #[test]
    fn grids() {
        assert_eq!(linspace(0.0, 1.0, 3), alloc::vec![0.0, 0.5, 1.0]);
        let g = default_omega_grid();
        assert_eq!(g.len(), 200);
        assert!(close(g[0], 0.1, 1e-15) && close(g[199], 100.0, 1e-12));
        assert_eq!(default_log10_x_grid().len(), 81);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn fd_analytic_matches_null_space(
            delta in 0.1f64..3.0, neg in prop::bool::ANY, ratio in 0.0f64..20.0,
            phi in 0.0f64..6.28, g in 1e-3f64..1.0, n in 0.0f64..2.0,
        ) {
            let d = if neg { -delta } else { delta };
            let f = ControlField::new(d, ratio * delta, phi, 1e3).unwrap();
            let exact = fd_steady_analytic(&f, g, n).unwrap();
            let ss = steady_state(&build_fdme(&f, g, n).unwrap()).unwrap();
            prop_assert!(exact.bloch().distance(&ss.state.bloch()) < 1e-10);
            prop_assert!(ss.residual < 1e-10);
        }

        #[test]
        fn secular_analytic_matches_null_space(
            delta in 0.1f64..3.0, ratio in 0.01f64..20.0, phi in 0.0f64..6.28,
            g in prop::array::uniform3(1e-3f64..1.0), n in 0.0f64..2.0, lamb in prop::bool::ANY,
        ) {
            let f = ControlField::new(delta, ratio * delta, phi, 1e3).unwrap();
            let basis = dressed_basis(&f).unwrap();
            let mut r = RateSet::from_sidebands(SidebandRates::explicit(g[0], g[1], g[2], n).unwrap(), &basis);
            r.lamb.plus = 0.01 * g[0];
            let exact = mme_secular_steady_analytic(&basis, &r, phi).unwrap();
            let ss = steady_state(&build_mme_secular(&f, &basis, &r, lamb).unwrap()).unwrap();
            prop_assert!(exact.bloch().distance(&ss.state.bloch()) < 1e-10);
        }

        #[test]
        fn uniform_closed_form_is_exact(
            theta in 0.0f64..3.14, x in 0.0f64..20.0, n in 0.0f64..3.0, phi in 0.0f64..6.28,
        ) {
            let basis = DressedBasis::from_angle(theta, 1.0).unwrap();
            let sb = SidebandRates::explicit(1.0, x, 0.5, n).unwrap();
            let r = RateSet::from_sidebands(sb, &basis);
            let a = mme_secular_steady_analytic(&basis, &r, phi).unwrap();
            let b = secular_uniform_closed_form(&basis, x, n, phi).unwrap();
            prop_assert!(a.bloch().distance(&b.bloch()) < 1e-12);
        }

        #[test]
        fn ellipsoid_identity(delta in 0.01f64..10.0, ratio in 0.0f64..1e3, phi in 0.0f64..6.28) {
            let f = ControlField::new(delta, ratio * delta, phi, 1e6).unwrap();
            let b = fd_steady_analytic(&f, 0.0, 0.0).unwrap().bloch();
            prop_assert!(ellipsoid_residual(&b).abs() < 1e-10);
        }

        #[test]
        fn phase_rotates_about_z(
            ratio in 0.0f64..10.0, x in 0.05f64..20.0, phi in 0.0f64..3.0, shift in 0.0f64..3.0,
        ) {
            let model = ReservoirModel::FixedRatio { x, gamma_0: 1e-3, n: 0.0 };
            let grid = |p: f64| SweepGrid { delta: 1.0, omega_l: 1e3, omega_over_delta: alloc::vec![ratio], phis: alloc::vec![p] };
            for kind in [GeneratorKind::Fdme, GeneratorKind::MmeSecular] {
                let a = ellipsoid_sweep(kind, &model, &grid(phi), SteadyMethod::Analytic, true).unwrap();
                let b = ellipsoid_sweep(kind, &model, &grid(phi + shift), SteadyMethod::Analytic, true).unwrap();
                let ra = a.points[0].bloch.rotate_z(shift);
                prop_assert!(ra.distance(&b.points[0].bloch) < 1e-12);
            }
        }

        #[test]
        fn compensation_restores_flat_state(ratio in 0.1f64..3.0, x in 0.0f64..1.0, phi in 0.0f64..6.28) {
            let basis = DressedBasis::from_detuning(1.0, ratio).unwrap();
            let n = thermal_compensation(x, &basis).unwrap();
            let warm = secular_uniform_closed_form(&basis, x, n, phi).unwrap();
            let cold = secular_uniform_closed_form(&basis, 1.0, 0.0, phi).unwrap();
            prop_assert!(warm.bloch().distance(&cold.bloch()) < 1e-10);
        }

        #[test]
        fn fidelity_map_nonincreasing_in_log_x(ratio in 1.0f64..20.0) {
            let lx = linspace(-2.0, 2.0, 41);
            let m = fidelity_map(&[ratio], &lx, 1.0, 0.0).unwrap();
            let col: Vec<f64> = m.values.iter().map(|r| r[0]).collect();
            for k in 0..20 {
                // Moving away from x = 1 on either side.
                prop_assert!(col[k] <= col[k + 1] + 1e-12);
                prop_assert!(col[40 - k] <= col[39 - k] + 1e-12);
            }
        }
    }

    #[test]
    fn rotate_helper() {
        let v = BlochVector::new(1.0, 0.0, 0.0).rotate_z(PI / 2.0);
        assert!(close(v.ry, 1.0, 1e-15));
    }
}
