//! 4x4 generators acting on the row-major vectorization
//! `vec(rho) = (rho_ee, rho_eg, rho_ge, rho_gg)`.
//!
//! With this stacking `vec(X rho Y) = (X kron Y^T) vec(rho)`.
//!
//! Every builder works in the frame where the laser phase is absent (real
//! dressed states) and conjugates the result with `V kron conj(V)`, `V` being
//! [`ControlField::phase_unitary`].

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::qubit::{sigma_minus, sigma_plus, ControlField, DressedBasis, QubitState};
use crate::reservoir::RateSet;
use crate::C64;

#[cfg(test)]
const ZERO: C64 = C64::new(0.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GeneratorKind {
    Fdme,
    MmeSecular,
    MmeNonsecular,
    /// Assembled by hand from a matrix.
    Custom,
}

/// Inputs a generator was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Snapshot {
    None,
    Fdme {
        field: ControlField,
        gamma_fd: f64,
        n_fd: f64,
    },
    Mme {
        field: ControlField,
        basis: DressedBasis,
        rates: RateSet,
        include_lamb: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    matrix: Matrix4<C64>,
    kind: GeneratorKind,
    params: Snapshot,
}

/// `X kron Y`.
pub fn kron(x: &Matrix2<C64>, y: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, c| x[(r / 2, c / 2)] * y[(r % 2, c % 2)])
}

/// Superoperator of `rho -> X rho Y`.
pub fn sandwich(x: &Matrix2<C64>, y: &Matrix2<C64>) -> Matrix4<C64> {
    kron(x, &y.transpose())
}

/// Superoperator of `rho -> -i [H, rho]`.
pub fn commutator_term(h: &Matrix2<C64>) -> Matrix4<C64> {
    let id = Matrix2::identity();
    (sandwich(h, &id) - sandwich(&id, h)) * (-I)
}

/// Superoperator of `rate * (X rho X^dagger - {X^dagger X, rho} / 2)`.
pub fn lindblad_term(x: &Matrix2<C64>, rate: f64) -> Result<Matrix4<C64>> {
    if !(rate >= 0.0) || !rate.is_finite() {
        return Err(Error::NegativeRate(rate));
    }
    Ok(lindblad_unchecked(x, rate))
}

fn lindblad_unchecked(x: &Matrix2<C64>, rate: f64) -> Matrix4<C64> {
    let id = Matrix2::identity();
    let xdx = x.adjoint() * x;
    let half = C64::from(0.5);
    (sandwich(x, &x.adjoint()) - sandwich(&xdx, &id) * half - sandwich(&id, &xdx) * half)
        * C64::from(rate)
}

/// `c X rho Y + conj(c) Y^dagger rho X^dagger`.
fn with_adjoint(c: C64, x: &Matrix2<C64>, y: &Matrix2<C64>) -> Matrix4<C64> {
    sandwich(x, y) * c + sandwich(&y.adjoint(), &x.adjoint()) * c.conj()
}

fn restore_phase(field: &ControlField, l: Matrix4<C64>) -> Matrix4<C64> {
    if field.phi == 0.0 {
        return l;
    }
    let v = field.phase_unitary();
    let s = kron(&v, &v.map(|z| z.conj()));
    s * l * s.adjoint()
}

impl Liouvillian {
    /// Wraps an arbitrary matrix; no structural checks.
    pub fn from_matrix(matrix: Matrix4<C64>) -> Self {
        Self {
            matrix,
            kind: GeneratorKind::Custom,
            params: Snapshot::None,
        }
    }

    pub fn zero() -> Self {
        Self::from_matrix(Matrix4::zeros())
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.matrix
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn params(&self) -> &Snapshot {
        &self.params
    }

    /// `L(rho)` as a matrix.
    pub fn apply(&self, rho: &Matrix2<C64>) -> Matrix2<C64> {
        let v = self.matrix * nalgebra::Vector4::new(rho[(0, 0)], rho[(0, 1)], rho[(1, 0)], rho[(1, 1)]);
        Matrix2::new(v[0], v[1], v[2], v[3])
    }

    /// Largest modulus of `vec(I)^T L`; zero for a trace-preserving generator.
    pub fn trace_defect(&self) -> f64 {
        (0..4)
            .map(|c| (self.matrix[(0, c)] + self.matrix[(3, c)]).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `L(rho^dagger) - L(rho)^dagger` over the matrix-unit basis.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..4 {
            let mut e = Matrix2::zeros();
            e[(k / 2, k % 2)] = C64::from(1.0);
            let d = self.apply(&e.adjoint()) - self.apply(&e).adjoint();
            worst = worst.max(d.iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        worst
    }

    /// Row-major `[[ (re, im); 4 ]; 4]` view, for export.
    pub fn rows(&self) -> [[(f64, f64); 4]; 4] {
        let mut out = [[(0.0, 0.0); 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                let z = self.matrix[(r, c)];
                *cell = (z.re, z.im);
            }
        }
        out
    }
}

/// Fixed-dissipator generator
/// `-i [H_S, rho] + gamma n L[sigma_+] + gamma (1 + n) L[sigma_-]`.
pub fn build_fdme(field: &ControlField, gamma_fd: f64, n_fd: f64) -> Result<Liouvillian> {
    if !(n_fd >= 0.0) || !n_fd.is_finite() {
        return Err(Error::InvalidParameter {
            name: "n_fd",
            reason: "occupation must be nonnegative",
        });
    }
    let l = commutator_term(&field.hamiltonian())
        + lindblad_term(&sigma_plus(), gamma_fd * n_fd)?
        + lindblad_term(&sigma_minus(), gamma_fd * (1.0 + n_fd))?;
    Ok(Liouvillian {
        matrix: restore_phase(field, l),
        kind: GeneratorKind::Fdme,
        params: Snapshot::Fdme {
            field: *field,
            gamma_fd,
            n_fd,
        },
    })
}

fn secular_part(field: &ControlField, basis: &DressedBasis, rates: &RateSet, include_lamb: bool) -> Result<Matrix4<C64>> {
    let mut h = field.hamiltonian();
    if include_lamb {
        h += basis.projector_plus() * C64::from(rates.lamb.plus)
            + basis.projector_minus() * C64::from(rates.lamb.minus)
            + Matrix2::identity() * C64::from(rates.lamb.z);
    }
    Ok(commutator_term(&h)
        + lindblad_term(&basis.sigma_plus(), rates.secular.minus)?
        + lindblad_term(&basis.sigma_minus(), rates.secular.plus)?
        + lindblad_term(&basis.sigma_z(), rates.secular.z)?)
}

/// Secular microscopic generator: `-i [H_S + H_LS, rho]` plus Lindblad terms on
/// the dressed ladder operators. `include_lamb` toggles `H_LS`.
pub fn build_mme_secular(
    field: &ControlField,
    basis: &DressedBasis,
    rates: &RateSet,
    include_lamb: bool,
) -> Result<Liouvillian> {
    let l = secular_part(field, basis, rates, include_lamb)?;
    Ok(Liouvillian {
        matrix: restore_phase(field, l),
        kind: GeneratorKind::MmeSecular,
        params: Snapshot::Mme {
            field: *field,
            basis: *basis,
            rates: *rates,
            include_lamb,
        },
    })
}

/// Full microscopic generator: the secular part with `H_LS` plus the
/// couplings between dressed populations and coherences. Trace and
/// Hermiticity are preserved; complete positivity is not guaranteed.
pub fn build_mme_nonsecular(field: &ControlField, basis: &DressedBasis, rates: &RateSet) -> Result<Liouvillian> {
    let sp = basis.sigma_plus();
    let sm = basis.sigma_minus();
    let sz = basis.sigma_z();
    let g = &rates.nonsecular;
    let s = &rates.shifts;
    let c = |re: f64, im: f64| C64::new(re, im);

    let mut l = secular_part(field, basis, rates, true)?;
    l += with_adjoint(c(g.pp, s.pp), &sp, &sp);
    for (coef, a) in [(c(g.pz, s.pz), &sp), (c(g.mz, s.mz), &sm)] {
        // (a sz) rho - sz rho a
        l += with_adjoint(coef, &(a * sz), &Matrix2::identity());
        l += with_adjoint(-coef, &sz, a);
    }
    for (coef, a) in [(c(g.zp, s.zp), &sp), (c(g.zm, s.zm), &sm)] {
        // (sz a) rho - a rho sz
        l += with_adjoint(coef, &(sz * a), &Matrix2::identity());
        l += with_adjoint(-coef, a, &sz);
    }
    Ok(Liouvillian {
        matrix: restore_phase(field, l),
        kind: GeneratorKind::MmeNonsecular,
        params: Snapshot::Mme {
            field: *field,
            basis: *basis,
            rates: *rates,
            include_lamb: true,
        },
    })
}

/// `L(rho)` applied to a state.
pub fn apply_to_state(l: &Liouvillian, rho: &QubitState) -> Matrix2<C64> {
    l.apply(rho.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::{dressed_basis, sigma_x, sigma_z};
    use crate::reservoir::{
        pv_kernels, rate_set, sideband_rates, ReservoirOptions, SidebandRates, SpectralDensity, Thermal,
    };
    use core::f64::consts::{PI, SQRT_2, TAU};
    use nalgebra::Vector4;
    use proptest::prelude::*;

    fn max_abs(m: &Matrix4<C64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn max_abs2(m: &Matrix2<C64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn vec_of(m: &Matrix2<C64>) -> Vector4<C64> {
        Vector4::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
    }

    #[test]
    fn vectorization_round_trip() {
        let x = Matrix2::new(C64::new(1.0, 2.0), C64::new(-0.5, 0.1), C64::new(0.3, 0.0), C64::new(0.0, -1.0));
        let y = Matrix2::new(C64::new(0.2, 0.0), C64::new(1.0, 1.0), C64::new(-2.0, 0.5), C64::new(0.7, 0.3));
        let r = Matrix2::new(C64::new(0.6, 0.0), C64::new(0.1, 0.2), C64::new(0.1, -0.2), C64::new(0.4, 0.0));
        let lhs = sandwich(&x, &y) * vec_of(&r);
        assert!((lhs - vec_of(&(x * r * y))).norm() < 1e-14);
        let s = QubitState::new(r).unwrap();
        assert_eq!(s.to_vec(), vec_of(&r));
    }

    #[test]
    fn lindblad_examples() {
        let rate = 0.7;
        let l = lindblad_term(&sigma_minus(), rate).unwrap();
        let out = l * Vector4::new(C64::from(1.0), ZERO, ZERO, ZERO);
        let expected = Vector4::new(C64::from(-rate), ZERO, ZERO, C64::from(rate));
        assert!((out - expected).norm() < 1e-15);

        let l = lindblad_term(&sigma_plus(), rate).unwrap();
        let out = l * Vector4::new(ZERO, ZERO, ZERO, C64::from(1.0));
        let expected = Vector4::new(C64::from(rate), ZERO, ZERO, C64::from(-rate));
        assert!((out - expected).norm() < 1e-15);

        let l = lindblad_term(&sigma_z(), rate).unwrap();
        let out = l * Vector4::new(C64::from(0.3), ZERO, ZERO, C64::from(0.7));
        assert!(out.norm() < 1e-15);

        assert!(matches!(lindblad_term(&sigma_z(), -1.0), Err(Error::NegativeRate(_))));
    }

    fn field(delta: f64, omega: f64, phi: f64) -> ControlField {
        ControlField::new(delta, omega, phi, 1000.0).unwrap()
    }

    fn null_vector(l: &Matrix4<C64>) -> Matrix2<C64> {
        let svd = l.svd(false, true);
        let vt = svd.v_t.unwrap();
        let (k, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .fold((0, f64::MAX), |acc, (i, v)| if *v < acc.1 { (i, *v) } else { acc });
        let row = vt.row(k);
        let v = Vector4::new(row[0].conj(), row[1].conj(), row[2].conj(), row[3].conj());
        let m = Matrix2::new(v[0], v[1], v[2], v[3]);
        let m = m / m.trace();
        (m + m.adjoint()) * C64::from(0.5)
    }

    #[test]
    fn fdme_examples() {
        let f = field(1.0, 0.0, 0.0);
        let l = build_fdme(&f, 0.01, 0.0).unwrap();
        let rho = null_vector(l.matrix());
        assert!((rho - QubitState::ground().matrix()).iter().all(|z| z.norm() < 1e-12));

        let f = field(1.0, SQRT_2, PI);
        let l = build_fdme(&f, 1e-7, 0.0).unwrap();
        let b = QubitState::new(null_vector(l.matrix())).unwrap().bloch();
        assert!((b.rx - 1.0 / SQRT_2).abs() < 1e-6);
        assert!(b.ry.abs() < 1e-6);
        assert!((b.rz + 0.5).abs() < 1e-6);

        let n = 0.4;
        let f = field(0.0, 0.0, 0.0);
        let l = build_fdme(&f, 0.1, n).unwrap();
        let rho = null_vector(l.matrix());
        assert!((rho[(0, 0)].re - n / (1.0 + 2.0 * n)).abs() < 1e-12);
    }

    #[test]
    fn phase_conjugation_matches_phased_hamiltonian() {
        let f = field(0.8, 1.3, 2.1);
        let l = build_fdme(&f, 0.05, 0.2).unwrap();
        let direct = commutator_term(&f.hamiltonian_with_phase())
            + lindblad_term(&sigma_plus(), 0.05 * 0.2).unwrap()
            + lindblad_term(&sigma_minus(), 0.05 * 1.2).unwrap();
        assert!(max_abs(&(l.matrix() - direct)) < 1e-14);
    }

    fn flat_rates(b: &DressedBasis, gamma: f64, n: f64) -> RateSet {
        RateSet::from_sidebands(SidebandRates::uniform(gamma, n).unwrap(), b)
    }

    #[test]
    fn flat_nonsecular_equals_fdme() {
        // With a flat bath the microscopic dissipator sums back to the bare one.
        for (delta, omega, phi, n) in [(1.0, 0.5, 0.0, 0.0), (1.0, SQRT_2, PI, 0.3), (-0.4, 2.0, 1.0, 1.2)] {
            let f = field(delta, omega, phi);
            let b = dressed_basis(&f).unwrap();
            let g = 0.02;
            let ns = build_mme_nonsecular(&f, &b, &flat_rates(&b, g, n)).unwrap();
            let fd = build_fdme(&f, g, n).unwrap();
            assert!(max_abs(&(ns.matrix() - fd.matrix())) < 1e-14, "{delta} {omega}");
        }
    }

    #[test]
    fn zero_angle_nonsecular_is_secular() {
        let f = field(1.0, 0.0, 0.0);
        let b = dressed_basis(&f).unwrap();
        let sb = SidebandRates::explicit(0.3, 0.05, 0.1, 0.2).unwrap();
        let r = RateSet::from_sidebands(sb, &b);
        let sec = build_mme_secular(&f, &b, &r, true).unwrap();
        let ns = build_mme_nonsecular(&f, &b, &r).unwrap();
        assert_eq!(sec.matrix(), ns.matrix());
    }

    #[test]
    fn secular_reference_points() {
        for (x, expected) in [(0.1, (0.805, 0.0, -0.569)), (10.0, (0.134, 0.0, -0.095))] {
            let f = field(1.0, SQRT_2, PI);
            let b = dressed_basis(&f).unwrap();
            let r = RateSet::from_sidebands(SidebandRates::from_ratio(x, 1e-3, 0.0).unwrap(), &b);
            for lamb in [true, false] {
                let l = build_mme_secular(&f, &b, &r, lamb).unwrap();
                let v = QubitState::new(null_vector(l.matrix())).unwrap().bloch();
                assert!((v.rx - expected.0).abs() < 1e-3, "{x} {v:?}");
                assert!(v.ry.abs() < 1e-9);
                assert!((v.rz - expected.2).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn secular_steady_state_commutes_with_hamiltonian() {
        let f = field(1.0, 0.7, 0.9);
        let b = dressed_basis(&f).unwrap();
        let j = SpectralDensity::lorentzian(2e-3, 1.0, f.omega_0 + 0.3).unwrap();
        let r = rate_set(&j, &Thermal::zero(), &f, &b, &ReservoirOptions::default()).unwrap();
        let l = build_mme_secular(&f, &b, &r, true).unwrap();
        let rho = null_vector(l.matrix());
        let v = f.phase_unitary();
        let h = v
            * (f.hamiltonian()
                + b.projector_plus() * C64::from(r.lamb.plus)
                + b.projector_minus() * C64::from(r.lamb.minus))
            * v.adjoint();
        assert!(max_abs2(&(h * rho - rho * h)) < 1e-10);
    }

    /// Born-Markov generator written directly as a double sum over the
    /// eigenoperators `A = (C^2 s~_+, -S^2 s~_-, S C s~_z)` with complex
    /// one-sided bath correlation transforms at their frequencies.
    fn born_markov_oracle(f: &ControlField, b: &DressedBasis, r: &RateSet, k: &crate::reservoir::PvKernels) -> Matrix4<C64> {
        let (c2, s2, sc) = (b.c2(), b.s2(), b.s * b.c);
        let ops = [
            (b.sigma_plus() * C64::from(c2), 0usize),
            (b.sigma_minus() * C64::from(-s2), 1),
            (b.sigma_z() * C64::from(sc), 2),
        ];
        let sb = &r.sidebands;
        let gam = [sb.gamma_plus, sb.gamma_minus, sb.gamma_zero];
        let occ = [sb.n_plus, sb.n_minus, sb.n_zero];
        let id = Matrix2::identity();
        let mut d = commutator_term(&f.hamiltonian());
        for (aa, _) in &ops {
            for (ab, band) in &ops {
                let g1 = C64::new(0.5 * gam[*band] * (1.0 + occ[*band]), k.one_plus_n[*band]);
                let g2 = C64::new(0.5 * gam[*band] * occ[*band], -k.n[*band]);
                let adb = ab.adjoint();
                let ada = aa.adjoint();
                // g1 (A_b^+ rho A_a - A_a A_b^+ rho) + g2 (A_b rho A_a^+ - A_a^+ A_b rho) + h.c.
                let t = (sandwich(&adb, aa) - sandwich(&(aa * adb), &id)) * g1
                    + (sandwich(ab, &ada) - sandwich(&(ada * ab), &id)) * g2;
                let mut th = Matrix4::zeros();
                // h.c. of each superoperator: rho -> (T(rho))^dagger for Hermitian rho.
                for col in 0..4 {
                    let mut e = Matrix2::zeros();
                    e[(col / 2, col % 2)] = C64::from(1.0);
                    let out = {
                        let v = t * vec_of(&e.adjoint());
                        Matrix2::new(v[0], v[1], v[2], v[3]).adjoint()
                    };
                    th.set_column(col, &vec_of(&out));
                }
                d += t + th;
            }
        }
        restore_phase(f, d)
    }

    #[test]
    fn nonsecular_matches_born_markov_oracle() {
        for (delta, omega, phi, wc_off, uniform, temp) in [
            (1.0, 1.0, 0.0, 0.3, false, 0.0),
            (1.0, SQRT_2, PI, -0.5, false, 0.0),
            (0.5, 3.0, 1.2, 1.0, true, 0.4),
            (-1.0, 0.2, 4.0, 0.0, true, 2.0),
        ] {
            let f = ControlField::new(delta, omega, phi, 200.0).unwrap();
            let b = dressed_basis(&f).unwrap();
            let j = SpectralDensity::lorentzian(5e-3, 1.5, f.omega_0 + wc_off).unwrap();
            let th = Thermal::new(temp).unwrap();
            let opts = ReservoirOptions {
                uniform_occupation: uniform,
                ..Default::default()
            };
            let r = rate_set(&j, &th, &f, &b, &opts).unwrap();
            let k = pv_kernels(&j, &th, &f, &b, &opts).unwrap();
            assert_eq!(r.sidebands, sideband_rates(&j, &th, &f, &b, uniform).unwrap());
            let ns = build_mme_nonsecular(&f, &b, &r).unwrap();
            let oracle = born_markov_oracle(&f, &b, &r, &k);
            assert!(max_abs(&(ns.matrix() - oracle)) < 1e-14, "{delta} {omega}: {}", max_abs(&(ns.matrix() - oracle)));
        }
    }

    #[test]
    fn structure_of_lorentzian_generators() {
        let f = ControlField::new(1.0, 2.0, 0.5, 500.0).unwrap();
        let b = dressed_basis(&f).unwrap();
        let j = SpectralDensity::lorentzian(1e-2, 1.0, f.omega_0).unwrap();
        let r = rate_set(&j, &Thermal::zero(), &f, &b, &ReservoirOptions::default()).unwrap();
        for l in [
            build_mme_secular(&f, &b, &r, true).unwrap(),
            build_mme_nonsecular(&f, &b, &r).unwrap(),
        ] {
            assert!(l.trace_defect() < 1e-12);
            assert!(l.hermiticity_defect() < 1e-12);
        }
        // Carrier sits one half-width below the centre.
        assert!((r.sidebands.gamma_zero - 5e-3).abs() < 1e-17);
        let _ = TAU;
    }

    fn arb_field() -> impl Strategy<Value = ControlField> {
        (0.1f64..3.0, 0.0f64..5.0, 0.0f64..6.28, prop::bool::ANY).prop_map(|(d, o, p, neg)| {
            ControlField::new(if neg { -d } else { d }, o, p, 100.0).unwrap()
        })
    }

    fn arb_hermitian() -> impl Strategy<Value = Matrix2<C64>> {
        (prop::array::uniform4(-1.0f64..1.0)).prop_map(|[a, b, c, d]| {
            Matrix2::new(C64::from(a), C64::new(b, c), C64::new(b, -c), C64::from(d))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn generators_preserve_trace_and_hermiticity(
            f in arb_field(),
            rates in prop::array::uniform3(0.0f64..1.0),
            shifts in prop::array::uniform3(-0.1f64..0.1),
            n in 0.0f64..2.0,
            rho in arb_hermitian(),
        ) {
            let b = dressed_basis(&f).unwrap();
            let sb = SidebandRates::explicit(rates[0], rates[1], rates[2], n).unwrap();
            let mut r = RateSet::from_sidebands(sb, &b);
            r.lamb.plus = shifts[0];
            r.lamb.minus = shifts[1];
            r.shifts.pp = shifts[2];
            r.shifts.zp = -shifts[0];
            r.shifts.mz = shifts[1] * 0.5;
            for l in [
                build_fdme(&f, rates[0], n).unwrap(),
                build_mme_secular(&f, &b, &r, true).unwrap(),
                build_mme_nonsecular(&f, &b, &r).unwrap(),
            ] {
                let out = l.apply(&rho);
                prop_assert!(out.trace().norm() < 1e-10);
                prop_assert!(max_abs2(&(out - out.adjoint())) < 1e-10);
            }
        }
    }

    #[test]
    fn sigma_x_hamiltonian_rotates() {
        let l = Liouvillian::from_matrix(commutator_term(&(sigma_x() * C64::from(0.5))));
        assert_eq!(l.kind(), GeneratorKind::Custom);
        assert!(l.trace_defect() < 1e-15);
    }
}
