//! Adaptive Gauss-Kronrod quadrature and Cauchy principal values.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights, with
// the embedded 7-point Gauss weights on the odd Kronrod nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Requested accuracy: converged when `error <= max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-8,
            abs: 1e-14,
            max_subdivisions: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// One integration range with its own integrand.
pub struct Piece<'a> {
    pub f: &'a dyn Fn(f64) -> f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    splittable: bool,
}

/// 15-point Kronrod rule with the QUADPACK error heuristic.
fn kronrod15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let value = res_k * half;
    let res_abs = res_abs * scale;
    let res_asc = res_asc * scale;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

/// Globally adaptive integration over a set of pieces sharing one error budget.
pub fn integrate_pieces(pieces: &[Piece<'_>], tol: &Tolerance) -> Result<Estimate> {
    let mut segments: Vec<Segment> = Vec::with_capacity(64);
    for (i, p) in pieces.iter().enumerate() {
        if !(p.b > p.a) {
            continue;
        }
        let (value, error) = kronrod15(p.f, p.a, p.b);
        segments.push(Segment {
            piece: i,
            a: p.a,
            b: p.b,
            value,
            error,
            splittable: true,
        });
    }
    let mut splits = 0usize;
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureFailure { value, error });
        }
        if error <= tol.abs.max(tol.rel * value.abs()) {
            return Ok(Estimate { value, error });
        }
        let worst = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.splittable)
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i);
        let Some(idx) = worst else {
            return Err(Error::QuadratureFailure { value, error });
        };
        if splits >= tol.max_subdivisions {
            return Err(Error::QuadratureFailure { value, error });
        }
        let seg = segments[idx];
        let mid = 0.5 * (seg.a + seg.b);
        let width_floor = 256.0 * f64::EPSILON * seg.a.abs().max(seg.b.abs()).max(f64::MIN_POSITIVE);
        if seg.b - seg.a <= width_floor {
            segments[idx].splittable = false;
            continue;
        }
        let f = pieces[seg.piece].f;
        let (v1, e1) = kronrod15(f, seg.a, mid);
        let (v2, e2) = kronrod15(f, mid, seg.b);
        segments[idx] = Segment {
            b: mid,
            value: v1,
            error: e1,
            ..seg
        };
        segments.push(Segment {
            a: mid,
            value: v2,
            error: e2,
            ..seg
        });
        splits += 1;
    }
}

/// Integrates `f` over `[a, b]`, splitting first at the interior `breaks`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: &Tolerance) -> Result<Estimate> {
    let mut points: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    points.push(a);
    points.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    points.push(b);
    points.sort_by(f64::total_cmp);
    points.dedup();
    let pieces: Vec<Piece<'_>> = points
        .windows(2)
        .map(|w| Piece { f, a: w[0], b: w[1] })
        .collect();
    integrate_pieces(&pieces, tol)
}

/// Integrand for `[a, inf)` mapped onto `(0, 1]` with `x = a + (1 - t) / t`.
pub fn semi_infinite<'a>(f: &'a dyn Fn(f64) -> f64, a: f64) -> impl Fn(f64) -> f64 + 'a {
    move |t: f64| {
        let x = a + (1.0 - t) / t;
        f(x) / (t * t)
    }
}

/// Cauchy principal value `P int_0^upper f(w) / (pole - w) dw`.
///
/// The singular part is removed by folding a symmetric window
/// `[pole - h, pole + h]` onto `[0, h]`, where the integrand
/// `(f(pole - u) - f(pole + u)) / u` is regular. The remaining ranges are
/// integrated adaptively; `upper = None` integrates to infinity through a
/// change of variables beyond the last breakpoint. `half_width` defaults to
/// `pole / 10`.
pub fn principal_value(
    f: &dyn Fn(f64) -> f64,
    pole: f64,
    upper: Option<f64>,
    half_width: Option<f64>,
    breaks: &[f64],
    tol: &Tolerance,
) -> Result<Estimate> {
    if !(pole > 0.0) || !pole.is_finite() {
        return Err(Error::NonPositiveFrequency(pole));
    }
    let regular = |w: f64| f(w) / (pole - w);
    if let Some(u) = upper {
        if pole > u {
            return integrate(&regular, 0.0, u, breaks, tol);
        }
        if pole == u {
            return Err(Error::DivergentIntegral("pole at the upper integration limit"));
        }
    }
    let mut h = half_width.unwrap_or(0.1 * pole).min(0.5 * pole);
    if let Some(u) = upper {
        h = h.min(0.5 * (u - pole));
    }
    if !(h > 0.0) {
        return Err(Error::InvalidParameter {
            name: "half_width",
            reason: "principal-value window must be positive",
        });
    }
    let folded = |u: f64| (f(pole - u) - f(pole + u)) / u;

    let lo = pole - h;
    let hi = pole + h;
    let mut left: Vec<f64> = Vec::new();
    left.push(0.0);
    left.extend(breaks.iter().copied().filter(|&x| x > 0.0 && x < lo));
    left.push(lo);
    left.sort_by(f64::total_cmp);
    left.dedup();

    let last_break = breaks.iter().copied().fold(hi, f64::max);
    let right_end = match upper {
        Some(u) => u,
        None => last_break.max(2.0 * pole),
    };
    let mut right: Vec<f64> = Vec::new();
    right.push(hi);
    right.extend(breaks.iter().copied().filter(|&x| x > hi && x < right_end));
    right.push(right_end);
    right.sort_by(f64::total_cmp);
    right.dedup();

    let tail = semi_infinite(&regular, right_end);
    let mut pieces: Vec<Piece<'_>> = Vec::new();
    for w in left.windows(2) {
        pieces.push(Piece { f: &regular, a: w[0], b: w[1] });
    }
    pieces.push(Piece { f: &folded, a: 0.0, b: h });
    for w in right.windows(2) {
        pieces.push(Piece { f: &regular, a: w[0], b: w[1] });
    }
    if upper.is_none() {
        pieces.push(Piece { f: &tail, a: 0.0, b: 1.0 });
    }
    integrate_pieces(&pieces, tol)
}
