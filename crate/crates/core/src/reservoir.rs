//! Bath models and every coefficient the dissipators need.
//!
//! The driven qubit samples the spectral density at three frequencies, the
//! carrier `omega_l` and the sidebands `omega_l +- nu`. Decay rates come from
//! the values there (`gamma_p = 2 pi J(omega_l + p nu)`), the Hermitian
//! corrections from principal-value transforms of `J` weighted by the thermal
//! occupation.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quadrature::{self, Tolerance};
use crate::qubit::{ControlField, DressedBasis};

/// Lorentzian widths below `DEFAULT_MARKOV_RATIO * gamma_l` break the Markov assumption.
pub const DEFAULT_MARKOV_RATIO: f64 = 100.0;

/// Breakpoints beyond the Lorentzian centre, in units of its half-width.
const LORENTZIAN_BREAKS: [f64; 5] = [1.0, 5.0, 25.0, 50.0, 250.0];

/// Spectral density `J(omega)`, evaluated for `omega > 0` only.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SpectralDensity {
    Flat {
        level: f64,
    },
    /// `J = gamma_l / (2 pi) * lambda^2 / ((omega_c - omega)^2 + lambda^2)`.
    Lorentzian {
        gamma_l: f64,
        lambda: f64,
        omega_c: f64,
    },
    Tabulated(TabulatedDensity),
}

fn check_positive(v: f64, name: &'static str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: "must be positive and finite",
        })
    }
}

impl SpectralDensity {
    pub fn flat(level: f64) -> Result<Self> {
        if !(level >= 0.0) || !level.is_finite() {
            return Err(Error::InvalidParameter {
                name: "level",
                reason: "flat spectral density must be nonnegative",
            });
        }
        Ok(Self::Flat { level })
    }

    pub fn lorentzian(gamma_l: f64, lambda: f64, omega_c: f64) -> Result<Self> {
        check_positive(gamma_l, "gamma_l")?;
        check_positive(lambda, "lambda")?;
        check_positive(omega_c, "omega_c")?;
        Ok(Self::Lorentzian {
            gamma_l,
            lambda,
            omega_c,
        })
    }

    pub fn tabulated(omega: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        TabulatedDensity::new(omega, values).map(Self::Tabulated)
    }

    /// `J(omega)`. Fails for `omega <= 0`, which is where a sideband lands
    /// when the dressed splitting is not small against the carrier.
    pub fn eval(&self, omega: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(Error::NonPositiveFrequency(omega));
        }
        Ok(self.value(omega))
    }

    /// Decay rate `2 pi J(omega)`.
    pub fn rate(&self, omega: f64) -> Result<f64> {
        self.eval(omega).map(|j| TAU * j)
    }

    fn value(&self, omega: f64) -> f64 {
        match self {
            Self::Flat { level } => *level,
            Self::Lorentzian {
                gamma_l,
                lambda,
                omega_c,
            } => {
                let d = omega_c - omega;
                gamma_l / TAU * lambda * lambda / (d * d + lambda * lambda)
            }
            Self::Tabulated(t) => t.eval(omega),
        }
    }

    /// Markov check for the Lorentzian, `lambda / gamma_l >= min_ratio`; other models pass.
    pub fn markov_valid(&self, min_ratio: f64) -> bool {
        match self {
            Self::Lorentzian { gamma_l, lambda, .. } => lambda / gamma_l >= min_ratio,
            _ => true,
        }
    }

    fn peak(&self) -> f64 {
        match self {
            Self::Flat { level } => *level,
            Self::Lorentzian { gamma_l, .. } => gamma_l / TAU,
            Self::Tabulated(t) => t.values.iter().copied().fold(0.0, f64::max),
        }
    }
}

/// `J(omega)`, see [`SpectralDensity::eval`].
pub fn eval_spectral_density(density: &SpectralDensity, omega: f64) -> Result<f64> {
    density.eval(omega)
}

/// Sampled spectral density with monotone piecewise-cubic (Fritsch-Carlson)
/// interpolation. Zero outside the sampled range.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TabulatedDensity {
    omega: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl TabulatedDensity {
    pub fn new(omega: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if omega.len() != values.len() || omega.len() < 2 {
            return Err(Error::InvalidParameter {
                name: "tabulated",
                reason: "need at least two (omega, J) samples of equal length",
            });
        }
        if omega.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "tabulated",
                reason: "sample frequencies must be positive",
            });
        }
        if omega.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter {
                name: "tabulated",
                reason: "sample frequencies must be strictly increasing",
            });
        }
        if values.iter().any(|j| !(*j >= 0.0) || !j.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "tabulated",
                reason: "sampled J must be nonnegative",
            });
        }
        let slopes = pchip_slopes(&omega, &values);
        Ok(Self {
            omega,
            values,
            slopes,
        })
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn upper(&self) -> f64 {
        self.omega[self.omega.len() - 1]
    }

    pub fn eval(&self, w: f64) -> f64 {
        let n = self.omega.len();
        if w < self.omega[0] || w > self.omega[n - 1] {
            return 0.0;
        }
        let k = match self.omega.binary_search_by(|x| x.total_cmp(&w)) {
            Ok(i) => return self.values[i],
            Err(i) => i - 1,
        };
        let h = self.omega[k + 1] - self.omega[k];
        let t = (w - self.omega[k]) / h;
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (d0, d1) = (self.slopes[k] * h, self.slopes[k + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * d0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * d1;
        v.max(0.0)
    }
}

fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    if n == 2 {
        return alloc::vec![delta[0], delta[0]];
    }
    let mut d = alloc::vec![0.0; n];
    for k in 1..n - 1 {
        if delta[k - 1] * delta[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s * d0 <= 0.0 {
            0.0
        } else if d0 * d1 <= 0.0 && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    d[0] = end(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

/// Bath temperature in frequency units (`k_B = hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Thermal {
    pub temperature: f64,
}

impl Thermal {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature >= 0.0) || !temperature.is_finite() {
            return Err(Error::InvalidParameter {
                name: "temperature",
                reason: "must be finite and nonnegative",
            });
        }
        Ok(Self { temperature })
    }

    pub fn zero() -> Self {
        Self { temperature: 0.0 }
    }

    /// Temperature at which the occupation at `omega` equals `n`.
    pub fn from_occupation(n: f64, omega: f64) -> Result<Self> {
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "occupation must be finite and nonnegative",
            });
        }
        check_positive(omega, "omega")?;
        if n == 0.0 {
            return Ok(Self::zero());
        }
        Self::new(omega / (1.0 / n).ln_1p())
    }

    fn occupation_unchecked(&self, omega: f64) -> f64 {
        if self.temperature == 0.0 {
            0.0
        } else {
            1.0 / (omega / self.temperature).exp_m1()
        }
    }
}

/// Bose-Einstein occupation `1 / (exp(omega / T) - 1)`, exactly zero at `T = 0`.
pub fn thermal_occupation(omega: f64, thermal: &Thermal) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::NonPositiveFrequency(omega));
    }
    Ok(thermal.occupation_unchecked(omega))
}

/// The three bath frequencies `omega_l + p nu`, `p = +1, -1, 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sideband {
    Plus,
    Minus,
    Zero,
}

impl Sideband {
    pub const ALL: [Sideband; 3] = [Sideband::Plus, Sideband::Minus, Sideband::Zero];

    pub fn frequency(self, field: &ControlField, basis: &DressedBasis) -> f64 {
        match self {
            Sideband::Plus => field.omega_l + basis.nu,
            Sideband::Minus => field.omega_l - basis.nu,
            Sideband::Zero => field.omega_l,
        }
    }
}

/// Bath rates `gamma_p = 2 pi J(omega_l + p nu)` and occupations `n_p` at the sidebands.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SidebandRates {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub gamma_zero: f64,
    pub n_plus: f64,
    pub n_minus: f64,
    pub n_zero: f64,
}

impl SidebandRates {
    /// Same rate and occupation at all three frequencies (flat bath).
    pub fn uniform(gamma: f64, n: f64) -> Result<Self> {
        Self::explicit(gamma, gamma, gamma, n)
    }

    /// Explicit rates sharing one occupation `n`.
    pub fn explicit(gamma_plus: f64, gamma_minus: f64, gamma_zero: f64, n: f64) -> Result<Self> {
        for (v, name) in [
            (gamma_plus, "gamma_plus"),
            (gamma_minus, "gamma_minus"),
            (gamma_zero, "gamma_zero"),
            (n, "n"),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: "rates and occupations must be nonnegative",
                });
            }
        }
        Ok(Self {
            gamma_plus,
            gamma_minus,
            gamma_zero,
            n_plus: n,
            n_minus: n,
            n_zero: n,
        })
    }

    /// Rates with a prescribed ratio `x = gamma_- / gamma_+`, normalized so that
    /// `gamma_+ gamma_- = gamma_0^2`; the carrier rate is `gamma_0`.
    pub fn from_ratio(x: f64, gamma_0: f64, n: f64) -> Result<Self> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::InvalidParameter {
                name: "x",
                reason: "rate ratio must be positive",
            });
        }
        let root = x.sqrt();
        Self::explicit(gamma_0 / root, gamma_0 * root, gamma_0, n)
    }

    /// `x = gamma_- / gamma_+`.
    pub fn ratio(&self) -> f64 {
        self.gamma_minus / self.gamma_plus
    }
}

/// `(gamma_p, n_p)` at `omega_l + nu`, `omega_l - nu` and `omega_l`.
///
/// With `uniform_occupation` every `n_p` is replaced by `n(omega_0)`.
pub fn sideband_rates(
    density: &SpectralDensity,
    thermal: &Thermal,
    field: &ControlField,
    basis: &DressedBasis,
    uniform_occupation: bool,
) -> Result<SidebandRates> {
    let minus = Sideband::Minus.frequency(field, basis);
    if !(minus > 0.0) {
        return Err(Error::NonPositiveFrequency(minus));
    }
    let mut gamma = [0.0; 3];
    let mut n = [0.0; 3];
    let n_fd = thermal_occupation(field.omega_0, thermal)?;
    for (i, band) in Sideband::ALL.iter().enumerate() {
        let w = band.frequency(field, basis);
        gamma[i] = density.rate(w)?;
        n[i] = if uniform_occupation {
            n_fd
        } else {
            thermal_occupation(w, thermal)?
        };
    }
    Ok(SidebandRates {
        gamma_plus: gamma[0],
        gamma_minus: gamma[1],
        gamma_zero: gamma[2],
        n_plus: n[0],
        n_minus: n[1],
        n_zero: n[2],
    })
}

/// Fixed-dissipator rate and occupation, `(2 pi J(omega_0), n(omega_0))`.
pub fn fixed_dissipator_rates(
    density: &SpectralDensity,
    thermal: &Thermal,
    field: &ControlField,
) -> Result<(f64, f64)> {
    Ok((
        density.rate(field.omega_0)?,
        thermal_occupation(field.omega_0, thermal)?,
    ))
}

/// Rates of the secular dissipator
/// `g_minus L[s~_+] + g_plus L[s~_-] + g_z L[s~_z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SecularRates {
    pub minus: f64,
    pub plus: f64,
    pub z: f64,
}

pub fn secular_rates(sb: &SidebandRates, basis: &DressedBasis) -> SecularRates {
    let (c2, s2) = (basis.c2(), basis.s2());
    let (c4, s4) = (c2 * c2, s2 * s2);
    SecularRates {
        minus: c4 * sb.gamma_plus * sb.n_plus + s4 * sb.gamma_minus * (1.0 + sb.n_minus),
        plus: c4 * sb.gamma_plus * (1.0 + sb.n_plus) + s4 * sb.gamma_minus * sb.n_minus,
        z: s2 * c2 * sb.gamma_zero * (1.0 + 2.0 * sb.n_zero),
    }
}

/// Real parts of the five non-secular coefficients. Field names follow the
/// operator pairs: `pp` is `(+,+)`, `zp` is `(z,+)`, `pz` is `(+,z)` and so on.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NonSecularRates {
    pub pp: f64,
    pub zp: f64,
    pub zm: f64,
    pub pz: f64,
    pub mz: f64,
}

pub fn nonsecular_rates(sb: &SidebandRates, basis: &DressedBasis) -> NonSecularRates {
    let (c, s) = (basis.c, basis.s);
    let (c2, s2) = (c * c, s * s);
    let cs = c * s;
    let (gp, gm, g0) = (sb.gamma_plus, sb.gamma_minus, sb.gamma_zero);
    let (np, nm, n0) = (sb.n_plus, sb.n_minus, sb.n_zero);
    NonSecularRates {
        pp: -0.5 * c2 * s2 * (gm * (1.0 + 2.0 * nm) + gp * (1.0 + 2.0 * np)),
        zp: -0.5 * cs * (gp * np * c2 - gm * (1.0 + nm) * s2),
        zm: -0.5 * cs * (gp * (1.0 + np) * c2 - gm * nm * s2),
        pz: -0.5 * g0 * cs * ((1.0 + n0) * c2 - n0 * s2),
        mz: -0.5 * g0 * cs * (n0 * c2 - (1.0 + n0) * s2),
    }
}

/// Lamb-shift Hamiltonian `s_+ s~_+ s~_- + s_- s~_- s~_+ + s_z s~_z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LambShift {
    pub plus: f64,
    pub minus: f64,
    pub z: f64,
}

/// Imaginary partners `s_ij` of the non-secular coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NonSecularShifts {
    pub pp: f64,
    pub zp: f64,
    pub zm: f64,
    pub pz: f64,
    pub mz: f64,
}

/// How principal-value transforms of `J` are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PvMethod {
    /// Singularity subtraction plus adaptive quadrature over `(0, inf)`.
    #[default]
    Numerical,
    /// Whole-line Hilbert transform of the Lorentzian,
    /// `(gamma_l / 2) lambda (e - omega_c) / ((e - omega_c)^2 + lambda^2)`.
    /// Accurate when `omega_c` and the pole are far above `lambda`.
    LorentzianClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PvConfig {
    pub method: PvMethod,
    pub tolerance: Tolerance,
    /// Half-width of the subtraction window; defaults to `min(lambda, pole) / 10`.
    pub half_width: Option<f64>,
}

impl Default for PvConfig {
    fn default() -> Self {
        Self {
            method: PvMethod::Numerical,
            tolerance: Tolerance::default(),
            half_width: None,
        }
    }
}

/// Options shared by every rate computation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReservoirOptions {
    /// Replace every `n(omega)` by `n(omega_0)`, in rates and in principal values.
    pub uniform_occupation: bool,
    pub pv: PvConfig,
}

/// Thermal weight multiplying `J` inside a principal-value transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    One,
    Occupation,
    OnePlusOccupation,
}

/// `P int_0^inf J(w) weight(w) / (pole - w) dw`.
///
/// The flat spectrum is the infinite-width limit of a Lorentzian, for which
/// every such transform vanishes; it returns zero.
pub fn pv_transform(
    density: &SpectralDensity,
    thermal: &Thermal,
    weight: Weight,
    pole: f64,
    cfg: &PvConfig,
) -> Result<f64> {
    if !(pole > 0.0) {
        return Err(Error::NonPositiveFrequency(pole));
    }
    let thermal_weight = thermal.temperature > 0.0 && weight != Weight::One;
    match density {
        SpectralDensity::Flat { .. } => return Ok(0.0),
        SpectralDensity::Lorentzian {
            gamma_l,
            lambda,
            omega_c,
        } => {
            if cfg.method == PvMethod::LorentzianClosedForm {
                if thermal_weight {
                    return Err(Error::UnsupportedMethod(
                        "closed form needs a frequency-independent occupation",
                    ));
                }
                let d = pole - omega_c;
                let scale = match weight {
                    Weight::Occupation => 0.0,
                    _ => 1.0,
                };
                return Ok(scale * 0.5 * gamma_l * lambda * d / (d * d + lambda * lambda));
            }
            if thermal_weight {
                // n(w) ~ T / w while J(0+) > 0: logarithmic divergence at w = 0.
                return Err(Error::DivergentIntegral(
                    "thermal occupation diverges at zero frequency where the Lorentzian is nonzero",
                ));
            }
            if weight == Weight::Occupation {
                return Ok(0.0);
            }
            let mut breaks: Vec<f64> = Vec::with_capacity(2 * LORENTZIAN_BREAKS.len() + 1);
            breaks.push(*omega_c);
            for k in LORENTZIAN_BREAKS {
                breaks.push(omega_c + k * lambda);
                if omega_c - k * lambda > 0.0 {
                    breaks.push(omega_c - k * lambda);
                }
            }
            let h = cfg.half_width.unwrap_or(0.1 * lambda.min(pole));
            let f = |w: f64| density.value(w);
            let tol = Tolerance {
                abs: cfg.tolerance.abs.max(1e-13 * density.peak()),
                ..cfg.tolerance
            };
            quadrature::principal_value(&f, pole, None, Some(h), &breaks, &tol).map(|e| e.value)
        }
        SpectralDensity::Tabulated(t) => {
            if cfg.method == PvMethod::LorentzianClosedForm {
                return Err(Error::UnsupportedMethod(
                    "closed form applies to Lorentzian densities only",
                ));
            }
            let f = |w: f64| {
                let j = t.eval(w);
                let n = if thermal.temperature > 0.0 {
                    thermal.occupation_unchecked(w)
                } else {
                    0.0
                };
                j * match weight {
                    Weight::One => 1.0,
                    Weight::Occupation => n,
                    Weight::OnePlusOccupation => 1.0 + n,
                }
            };
            let breaks: &[f64] = if t.omega.len() <= 512 { &t.omega } else { &[] };
            let tol = Tolerance {
                abs: cfg.tolerance.abs.max(1e-13 * density.peak()),
                ..cfg.tolerance
            };
            quadrature::principal_value(&f, pole, Some(t.upper()), cfg.half_width, breaks, &tol)
                .map(|e| e.value)
        }
    }
}

/// Principal-value kernels at the three sidebands:
/// `I1 = P int J (1 + n) / (e - w)` and `I2 = P int J n / (e - w)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PvKernels {
    /// `[plus, minus, zero]`
    pub one_plus_n: [f64; 3],
    pub n: [f64; 3],
}

pub fn pv_kernels(
    density: &SpectralDensity,
    thermal: &Thermal,
    field: &ControlField,
    basis: &DressedBasis,
    opts: &ReservoirOptions,
) -> Result<PvKernels> {
    let mut k = PvKernels::default();
    if matches!(density, SpectralDensity::Flat { .. }) {
        return Ok(k);
    }
    let n_fd = thermal_occupation(field.omega_0, thermal)?;
    for (i, band) in Sideband::ALL.iter().enumerate() {
        let pole = band.frequency(field, basis);
        if !(pole > 0.0) {
            return Err(Error::NonPositiveFrequency(pole));
        }
        if opts.uniform_occupation || thermal.temperature == 0.0 {
            let bare = pv_transform(density, &Thermal::zero(), Weight::One, pole, &opts.pv)?;
            let n = if opts.uniform_occupation { n_fd } else { 0.0 };
            k.one_plus_n[i] = (1.0 + n) * bare;
            k.n[i] = n * bare;
        } else {
            k.one_plus_n[i] = pv_transform(density, thermal, Weight::OnePlusOccupation, pole, &opts.pv)?;
            k.n[i] = pv_transform(density, thermal, Weight::Occupation, pole, &opts.pv)?;
        }
    }
    Ok(k)
}

impl PvKernels {
    pub fn lamb_shift(&self, basis: &DressedBasis) -> LambShift {
        let (c2, s2) = (basis.c2(), basis.s2());
        let (c4, s4) = (c2 * c2, s2 * s2);
        let [ip, im, i0] = self.one_plus_n;
        let [np, nm, n0] = self.n;
        LambShift {
            plus: c4 * ip - s4 * nm,
            minus: s4 * im - c4 * np,
            z: s2 * c2 * (i0 - n0),
        }
    }

    pub fn nonsecular_shifts(&self, basis: &DressedBasis) -> NonSecularShifts {
        let (c2, s2) = (basis.c2(), basis.s2());
        let cs = basis.c * basis.s;
        let [ip, im, i0] = self.one_plus_n;
        let [np, nm, n0] = self.n;
        NonSecularShifts {
            pp: -c2 * s2 * ((im + nm) - (ip + np)),
            zp: cs * (s2 * im + c2 * np),
            zm: -cs * (s2 * nm + c2 * ip),
            pz: -cs * (c2 * i0 + s2 * n0),
            mz: cs * (c2 * n0 + s2 * i0),
        }
    }
}

/// `(s_+, s_-, s_z)` of the Lamb-shift Hamiltonian.
pub fn lamb_shift(
    density: &SpectralDensity,
    thermal: &Thermal,
    field: &ControlField,
    basis: &DressedBasis,
    opts: &ReservoirOptions,
) -> Result<LambShift> {
    pv_kernels(density, thermal, field, basis, opts).map(|k| k.lamb_shift(basis))
}

/// The five `s_ij` of the non-secular dissipator.
pub fn nonsecular_pv_terms(
    density: &SpectralDensity,
    thermal: &Thermal,
    field: &ControlField,
    basis: &DressedBasis,
    opts: &ReservoirOptions,
) -> Result<NonSecularShifts> {
    pv_kernels(density, thermal, field, basis, opts).map(|k| k.nonsecular_shifts(basis))
}

/// Every coefficient of the microscopic generators at one control point.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateSet {
    pub sidebands: SidebandRates,
    pub secular: SecularRates,
    pub nonsecular: NonSecularRates,
    pub lamb: LambShift,
    pub shifts: NonSecularShifts,
}

impl RateSet {
    /// Rates from explicit sideband values, with all principal-value terms zero.
    pub fn from_sidebands(sidebands: SidebandRates, basis: &DressedBasis) -> Self {
        Self {
            sidebands,
            secular: secular_rates(&sidebands, basis),
            nonsecular: nonsecular_rates(&sidebands, basis),
            lamb: LambShift::default(),
            shifts: NonSecularShifts::default(),
        }
    }

    /// `x = gamma_- / gamma_+` of the underlying bath.
    pub fn ratio(&self) -> f64 {
        self.sidebands.ratio()
    }
}

/// Full coefficient set for a spectral density.
pub fn rate_set(
    density: &SpectralDensity,
    thermal: &Thermal,
    field: &ControlField,
    basis: &DressedBasis,
    opts: &ReservoirOptions,
) -> Result<RateSet> {
    let sidebands = sideband_rates(density, thermal, field, basis, opts.uniform_occupation)?;
    let kernels = pv_kernels(density, thermal, field, basis, opts)?;
    Ok(RateSet {
        lamb: kernels.lamb_shift(basis),
        shifts: kernels.nonsecular_shifts(basis),
        ..RateSet::from_sidebands(sidebands, basis)
    })
}

/// Whole-line Hilbert transform of the Lorentzian, `P int_R J(w) / (pole - w) dw`.
pub fn lorentzian_full_line(gamma_l: f64, lambda: f64, omega_c: f64, pole: f64) -> f64 {
    let d = pole - omega_c;
    PI * lambda * d / (d * d + lambda * lambda) * gamma_l / TAU
}
