//! Time evolution, steady states and relaxation times of a generator.

use alloc::vec::Vec;

use nalgebra::{Matrix2, Matrix4, Vector4};
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::liouvillian::Liouvillian;
use crate::qubit::{BlochVector, QubitState};
use crate::C64;

/// Singular-value threshold, relative to the dissipative scale, below which a
/// direction counts as null.
pub const NULL_SPACE_TOL: f64 = 1e-8;

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Step-size control for [`evolve_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    pub rtol: f64,
    pub atol: f64,
    /// First trial step; chosen from the generator norm when `None`.
    pub initial_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
            initial_step: None,
            max_steps: 50_000_000,
        }
    }
}

/// Sampled solution of `d vec(rho) / dt = L vec(rho)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QubitState>,
    pub bloch: Vec<BlochVector>,
    pub physical: Vec<bool>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&QubitState> {
        self.states.last()
    }

    fn push(&mut self, t: f64, y: &Vector4<C64>) {
        let m = Matrix2::new(y[0], y[1], y[2], y[3]);
        let state = QubitState::from_matrix_unchecked((m + m.adjoint()) * C64::from(0.5));
        self.times.push(t);
        self.bloch.push(state.bloch());
        self.physical.push(state.is_physical());
        self.states.push(state);
    }
}

fn error_norm(err: &Vector4<C64>, y0: &Vector4<C64>, y1: &Vector4<C64>, opts: &EvolveOptions) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        let scale = opts.atol + opts.rtol * y0[i].norm().max(y1[i].norm());
        let e = err[i].norm() / scale;
        acc += e * e;
    }
    (acc / 4.0).sqrt()
}

fn max_norm(m: &Matrix4<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// [`evolve_with`] at the default tolerances (relative 1e-9, absolute 1e-12).
pub fn evolve(l: &Liouvillian, rho0: &QubitState, t_grid: &[f64]) -> Result<Trajectory> {
    evolve_with(l, rho0, t_grid, &EvolveOptions::default())
}

/// Adaptive Dormand-Prince integration; `rho0` is the state at `t_grid[0]` and
/// every later grid point is filled from the dense-output interpolant.
pub fn evolve_with(l: &Liouvillian, rho0: &QubitState, t_grid: &[f64], opts: &EvolveOptions) -> Result<Trajectory> {
    if t_grid.is_empty() {
        return Err(Error::InvalidParameter {
            name: "t_grid",
            reason: "empty time grid",
        });
    }
    if !(t_grid[0] >= 0.0) || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "t_grid",
            reason: "times must be finite and start at t >= 0",
        });
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter {
            name: "t_grid",
            reason: "times must be strictly increasing",
        });
    }

    let a = *l.matrix();
    let n = t_grid.len();
    let mut traj = Trajectory {
        times: Vec::with_capacity(n),
        states: Vec::with_capacity(n),
        bloch: Vec::with_capacity(n),
        physical: Vec::with_capacity(n),
    };
    let mut y = rho0.to_vec();
    traj.push(t_grid[0], &y);
    if n == 1 {
        return Ok(traj);
    }

    let t_end = t_grid[n - 1];
    let mut t = t_grid[0];
    let norm = max_norm(&a);
    if norm == 0.0 {
        for &tk in &t_grid[1..] {
            traj.push(tk, &y);
        }
        return Ok(traj);
    }
    let mut h = opts
        .initial_step
        .unwrap_or(0.01 * opts.rtol.powf(0.2) / norm)
        .min(t_end - t);
    let mut next = 1;
    let mut k1 = a * y;
    let mut steps = 0usize;
    let c = |x: f64| C64::from(x);

    while next < n {
        steps += 1;
        if steps > opts.max_steps || h <= 1e-14 * t.abs().max(1.0 / norm) {
            return Err(Error::StepSizeUnderflow { t });
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        let hc = c(h);
        let k2 = a * (y + k1 * c(h * A21));
        let k3 = a * (y + (k1 * c(A31) + k2 * c(A32)) * hc);
        let k4 = a * (y + (k1 * c(A41) + k2 * c(A42) + k3 * c(A43)) * hc);
        let k5 = a * (y + (k1 * c(A51) + k2 * c(A52) + k3 * c(A53) + k4 * c(A54)) * hc);
        let k6 = a * (y + (k1 * c(A61) + k2 * c(A62) + k3 * c(A63) + k4 * c(A64) + k5 * c(A65)) * hc);
        let y1 = y + (k1 * c(A71) + k3 * c(A73) + k4 * c(A74) + k5 * c(A75) + k6 * c(A76)) * hc;
        let k7 = a * y1;
        let err_vec = (k1 * c(E1) + k3 * c(E3) + k4 * c(E4) + k5 * c(E5) + k6 * c(E6) + k7 * c(E7)) * hc;
        let err = error_norm(&err_vec, &y, &y1, opts);

        if err <= 1.0 {
            let t1 = if last { t_end } else { t + h };
            if next < n && t_grid[next] <= t1 {
                let cont1 = y1 - y;
                let cont2 = k1 * hc - cont1;
                let cont3 = cont1 - k7 * hc - cont2;
                let cont4 = (k1 * c(D1) + k3 * c(D3) + k4 * c(D4) + k5 * c(D5) + k6 * c(D6) + k7 * c(D7)) * hc;
                while next < n && t_grid[next] <= t1 {
                    let tk = t_grid[next];
                    let yk = if tk == t1 {
                        y1
                    } else {
                        let s = (tk - t) / h;
                        let s1 = 1.0 - s;
                        y + (cont1 + (cont2 + (cont3 + cont4 * c(s1)) * c(s)) * c(s1)) * c(s)
                    };
                    traj.push(tk, &yk);
                    next += 1;
                }
            }
            t = t1;
            y = y1;
            k1 = k7;
            let fac = if err == 0.0 { 10.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 10.0) };
            h *= fac;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
        }
    }
    Ok(traj)
}

/// Result of [`steady_state`].
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub state: QubitState,
    /// `|| L vec(rho) ||`.
    pub residual: f64,
    /// Both eigenvalues nonnegative within tolerance.
    pub physical: bool,
}

/// Orthonormal basis of the numerical null space.
///
/// A singular value counts as zero below `NULL_SPACE_TOL` times the largest
/// singular value of the Hermitian part of `L` (the coherent part is
/// anti-Hermitian and does not set the scale), floored at rounding level of
/// the full matrix.
pub fn null_space(l: &Liouvillian) -> Vec<Vector4<C64>> {
    let m = l.matrix();
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.max();
    let herm = (m + m.adjoint()) * C64::from(0.5);
    let sdis = herm.singular_values().max();
    let cut = (NULL_SPACE_TOL * sdis).max(64.0 * f64::EPSILON * smax);
    let mut out = Vec::new();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s <= cut {
            let row = vt.row(k);
            out.push(Vector4::new(row[0].conj(), row[1].conj(), row[2].conj(), row[3].conj()));
        }
    }
    out
}

/// Unit-trace null vector of `L`.
///
/// The null-space dimension is read off the singular values; a space of
/// dimension above one is reported with its basis. The vector itself is the
/// solution of `L` with its first row (redundant by trace preservation)
/// replaced by the trace condition, polished by one refinement step.
pub fn steady_state(l: &Liouvillian) -> Result<SteadyState> {
    let a = *l.matrix();
    if max_norm(&a) == 0.0 {
        return Err(Error::DegenerateNullSpace {
            dimension: 4,
            basis: (0..4)
                .map(|k| {
                    let mut v = Vector4::zeros();
                    v[k] = C64::from(1.0);
                    v
                })
                .collect(),
        });
    }
    let basis = null_space(l);
    if basis.len() > 1 {
        return Err(Error::DegenerateNullSpace {
            dimension: basis.len(),
            basis,
        });
    }
    let one = C64::from(1.0);
    let zero = C64::from(0.0);
    let mut m = a;
    m.set_row(0, &nalgebra::RowVector4::new(one, zero, zero, one));
    let rhs = Vector4::new(one, zero, zero, zero);
    let lu = m.lu();
    let mut x = match lu.solve(&rhs) {
        Some(x) => x,
        None => return Err(Error::DegenerateNullSpace { dimension: 1, basis }),
    };
    if let Some(dx) = lu.solve(&(rhs - m * x)) {
        x += dx;
    }
    let rho = Matrix2::new(x[0], x[1], x[2], x[3]);
    let rho = (rho + rho.adjoint()) * C64::from(0.5);
    let rho = rho / rho.trace();
    let state = QubitState::from_matrix_unchecked(rho);
    let residual = (a * state.to_vec()).norm();
    Ok(SteadyState {
        physical: state.is_physical(),
        state,
        residual,
    })
}

/// Real matrix of `L` acting on the coefficients `(c_0, c_x, c_y, c_z)` of
/// `rho = c_0 I + c_x sigma_x + c_y sigma_y + c_z sigma_z`.
pub fn pauli_matrix(l: &Liouvillian) -> Matrix4<f64> {
    let (o, one, i) = (C64::from(0.0), C64::from(1.0), C64::new(0.0, 1.0));
    // Columns are vec(I), vec(sigma_x), vec(sigma_y), vec(sigma_z).
    let p = Matrix4::new(
        one, o, o, one, //
        o, one, -i, o, //
        o, one, i, o, //
        one, o, o, -one,
    );
    let r = p.adjoint() * l.matrix() * p * C64::from(0.5);
    r.map(|z| z.re)
}

/// `1 / |Re lambda_2|`, `lambda_2` being the slowest decaying nonzero eigenvalue.
pub fn relaxation_time(l: &Liouvillian) -> Result<f64> {
    let r = pauli_matrix(l);
    let scale = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Err(Error::NoGap);
    }
    let eig = r.complex_eigenvalues();
    let mut ev: Vec<C64> = eig.iter().copied().collect();
    // The stationary eigenvalue is the one closest to zero.
    let (k0, _) = ev
        .iter()
        .enumerate()
        .fold((0, f64::MAX), |acc, (k, z)| if z.norm() < acc.1 { (k, z.norm()) } else { acc });
    ev.remove(k0);
    let slowest = ev.iter().map(|z| z.re).fold(f64::MIN, f64::max);
    if !(slowest < -1e-13 * scale) {
        return Err(Error::NoGap);
    }
    Ok(-1.0 / slowest)
}
