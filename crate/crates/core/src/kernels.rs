//! Closed-form Bergman kernels of the second kind.
//!
//! All formulas are evaluated left to right exactly as written; factors with
//! real coefficients in `r̄` are inverted as single quaternion values.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, UnitImaginary};
use crate::slice::DomainId;

/// Modulus below which a kernel denominator counts as singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelId {
    Disk,
    BallFormI,
    BallFormII,
    HalfSpaceA,
    HalfSpaceB,
    QFactor,
    BergmanFueter,
}

impl KernelId {
    pub const ALL: [KernelId; 7] = [
        KernelId::Disk,
        KernelId::BallFormI,
        KernelId::BallFormII,
        KernelId::HalfSpaceA,
        KernelId::HalfSpaceB,
        KernelId::QFactor,
        KernelId::BergmanFueter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelId::Disk => "disk",
            KernelId::BallFormI => "ball_I",
            KernelId::BallFormII => "ball_II",
            KernelId::HalfSpaceA => "half_A",
            KernelId::HalfSpaceB => "half_B",
            KernelId::QFactor => "q_factor",
            KernelId::BergmanFueter => "bf",
        }
    }

    pub fn domain(self) -> Option<DomainId> {
        match self {
            KernelId::HalfSpaceA | KernelId::HalfSpaceB => Some(DomainId::HalfSpace),
            _ => Some(DomainId::UnitBall),
        }
    }

    /// Kernels that are slice regular in `q` for fixed `r`.
    pub fn is_slice_regular_in_q(self) -> bool {
        matches!(
            self,
            KernelId::BallFormI | KernelId::BallFormII | KernelId::HalfSpaceA | KernelId::HalfSpaceB
        )
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "disk" => KernelId::Disk,
            "ball_I" | "ball_i" | "ball1" => KernelId::BallFormI,
            "ball_II" | "ball_ii" | "ball2" => KernelId::BallFormII,
            "half_A" | "half_a" | "halfspace_A" => KernelId::HalfSpaceA,
            "half_B" | "half_b" | "halfspace_B" => KernelId::HalfSpaceB,
            "q_factor" | "Q" => KernelId::QFactor,
            "bf" | "bergman_fueter" => KernelId::BergmanFueter,
            other => return Err(Error::bad("kernel", format!("unknown kernel `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallForm {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfSpaceForm {
    A,
    B,
}

fn check_ball(q: Quaternion, r: Quaternion) -> Result<()> {
    for (name, p) in [("q", q), ("r", r)] {
        if !(p.norm() < 1.0) {
            return Err(Error::Domain(format!("{name} = {p} is not in the open unit ball")));
        }
    }
    Ok(())
}

fn check_half(q: Quaternion, r: Quaternion) -> Result<()> {
    for (name, p) in [("q", q), ("r", r)] {
        if !(p.re() > 0.0) {
            return Err(Error::Domain(format!("{name} = {p} is not in the right half-space")));
        }
    }
    Ok(())
}

fn invert_factor(d: Quaternion) -> Result<Quaternion> {
    let modulus = d.norm();
    if !(modulus >= SINGULARITY_THRESHOLD) {
        return Err(Error::SingularKernel { modulus });
    }
    d.inverse()
}

/// Planar Bergman kernel of the unit disk, `(1/π)(1 - z·conj ζ)⁻²`.
pub fn disk_kernel(z: Complex64, zeta: Complex64) -> Result<Complex64> {
    if !(z.norm() < 1.0 && zeta.norm() < 1.0) {
        return Err(Error::Domain("disk kernel arguments must lie in the open unit disk".into()));
    }
    let d = Complex64::new(1.0, 0.0) - z * zeta.conj();
    if !(d.norm() >= SINGULARITY_THRESHOLD) {
        return Err(Error::SingularKernel { modulus: d.norm() });
    }
    Ok((d * d).inv() / PI)
}

/// `1 - 2q̄r̄ + q̄²r̄²`, the numerator of the ball kernel in its first form.
fn ball_numerator(q: Quaternion, r: Quaternion) -> Quaternion {
    let qb = q.conj();
    let rb = r.conj();
    Quaternion::ONE - qb * rb * 2.0 + qb * qb * rb * rb
}

/// `1 - 2Re[q]r̄ + |q|²r̄²`, real-coefficient in `r̄`.
fn ball_denominator(q: Quaternion, r: Quaternion) -> Quaternion {
    let rb = r.conj();
    Quaternion::ONE - rb * (2.0 * q.re()) + rb * rb * q.norm_sq()
}

/// Ball kernel `𝒦(q, r)` in either of its two equivalent forms.
pub fn ball_kernel(q: Quaternion, r: Quaternion, form: BallForm) -> Result<Quaternion> {
    check_ball(q, r)?;
    match form {
        BallForm::I => {
            let inv = invert_factor(ball_denominator(q, r))?;
            Ok(ball_numerator(q, r) * inv * inv / PI)
        }
        BallForm::II => {
            let d = Quaternion::ONE - q * (2.0 * r.re()) + q * q * r.norm_sq();
            let inv = invert_factor(d)?;
            let n = Quaternion::ONE - q * r * 2.0 + q * q * r * r;
            Ok(inv * inv * n / PI)
        }
    }
}

/// Half-space kernel `𝒦_{ℍ⁺}(q, r)` in either of its two equivalent forms.
pub fn halfspace_kernel(q: Quaternion, r: Quaternion, form: HalfSpaceForm) -> Result<Quaternion> {
    check_half(q, r)?;
    match form {
        HalfSpaceForm::A => {
            let qb = q.conj();
            let rb = r.conj();
            let n = qb * qb + qb * rb * 2.0 + rb * rb;
            let d = Quaternion::real(q.norm_sq()) + rb * (2.0 * q.re()) + rb * rb;
            let inv = invert_factor(d)?;
            Ok(n * inv * inv / PI)
        }
        HalfSpaceForm::B => {
            let d = q * q + q * (2.0 * r.re()) + Quaternion::real(r.norm_sq());
            let inv = invert_factor(d)?;
            let n = q * q + q * r * 2.0 + r * r;
            Ok(inv * inv * n / PI)
        }
    }
}

/// `𝒬(q, r) = (1 - 2Re[q]r̄ + |q|²r̄²)⁻¹`.
pub fn q_factor(q: Quaternion, r: Quaternion) -> Result<Quaternion> {
    invert_factor(ball_denominator(q, r))
}

/// Laplacian in `q` of the ball kernel:
/// `-(4/π)[𝒬² + 2(1 - 2q̄r̄ + q̄²r̄²)𝒬³] r̄²`.
pub fn bergman_fueter_kernel(q: Quaternion, r: Quaternion) -> Result<Quaternion> {
    check_ball(q, r)?;
    let qf = q_factor(q, r)?;
    let rb = r.conj();
    let q2 = qf * qf;
    let bracket = q2 + ball_numerator(q, r) * q2 * qf * 2.0;
    Ok(bracket * rb * rb * (-4.0 / PI))
}

/// Dispatches on `id`. The disk kernel reads `q` and `r` through their
/// `(w, x)` components and returns its value in `ℂ(ı)`.
pub fn evaluate(id: KernelId, q: Quaternion, r: Quaternion) -> Result<Quaternion> {
    match id {
        KernelId::Disk => {
            let u = UnitImaginary::I;
            disk_kernel(u.project(q), u.project(r)).map(|v| u.embed(v))
        }
        KernelId::BallFormI => ball_kernel(q, r, BallForm::I),
        KernelId::BallFormII => ball_kernel(q, r, BallForm::II),
        KernelId::HalfSpaceA => halfspace_kernel(q, r, HalfSpaceForm::A),
        KernelId::HalfSpaceB => halfspace_kernel(q, r, HalfSpaceForm::B),
        KernelId::QFactor => q_factor(q, r),
        KernelId::BergmanFueter => bergman_fueter_kernel(q, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_in_ball, random_unit, Rng};
    use proptest::prelude::*;
    use rand::{Rng as _, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Quaternion, b: Quaternion) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn disk_kernel_examples() {
        assert!((disk_kernel(c(0.0, 0.0), c(0.3, -0.8)).unwrap() - c(1.0 / PI, 0.0)).norm() < 1e-16);
        let v = disk_kernel(c(0.5, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v - c(16.0 / (9.0 * PI), 0.0)).norm() < 1e-15);
        // 1 - 0.5·conj(0.5i) = 1 + 0.25i
        let v = disk_kernel(c(0.5, 0.0), c(0.0, 0.5)).unwrap();
        let d = c(1.0, 0.25);
        assert!((v - (d * d).inv() / PI).norm() < 1e-15);
        assert!(disk_kernel(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn disk_kernel_is_hermitian() {
        let mut rng = Rng::seed_from_u64(7);
        for _ in 0..50 {
            let z = c(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7));
            let w = c(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7));
            let a = disk_kernel(z, w).unwrap();
            let b = disk_kernel(w, z).unwrap().conj();
            assert!((a - b).norm() < 1e-14 * a.norm());
        }
    }

    #[test]
    fn ball_kernel_at_origin() {
        let r = Quaternion::new(0.1, -0.4, 0.2, 0.5);
        for form in [BallForm::I, BallForm::II] {
            let v = ball_kernel(Quaternion::ZERO, r, form).unwrap();
            assert!(v.max_abs_diff(Quaternion::real(1.0 / PI)) < 1e-16);
        }
    }

    #[test]
    fn ball_kernel_same_slice_reduces_to_disk() {
        let mut rng = Rng::seed_from_u64(11);
        for _ in 0..50 {
            let u = random_unit(&mut rng);
            let z = c(rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6));
            let w = c(rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6));
            let planar = u.embed(disk_kernel(z, w).unwrap());
            for form in [BallForm::I, BallForm::II] {
                let v = ball_kernel(u.embed(z), u.embed(w), form).unwrap();
                assert!(rel(v, planar) < 1e-12);
            }
        }
    }

    #[test]
    fn halfspace_examples() {
        for form in [HalfSpaceForm::A, HalfSpaceForm::B] {
            let v = halfspace_kernel(Quaternion::ONE, Quaternion::ONE, form).unwrap();
            assert!(v.max_abs_diff(Quaternion::real(0.25 / PI)) < 1e-16);
        }
        let mut rng = Rng::seed_from_u64(3);
        for _ in 0..50 {
            let u = random_unit(&mut rng);
            let z = c(rng.random_range(0.1..2.0), rng.random_range(-2.0..2.0));
            let w = c(rng.random_range(0.1..2.0), rng.random_range(-2.0..2.0));
            let s = z + w.conj();
            let planar = u.embed((s * s).inv() / PI);
            for form in [HalfSpaceForm::A, HalfSpaceForm::B] {
                assert!(rel(halfspace_kernel(u.embed(z), u.embed(w), form).unwrap(), planar) < 1e-12);
            }
        }
        assert!(halfspace_kernel(Quaternion::real(-0.1), Quaternion::ONE, HalfSpaceForm::A).is_err());
    }

    #[test]
    fn q_factor_examples() {
        let r = Quaternion::new(0.2, 0.3, -0.1, 0.4);
        let q = Quaternion::new(-0.3, 0.1, 0.5, 0.2);
        assert_eq!(q_factor(Quaternion::ZERO, r).unwrap(), Quaternion::ONE);
        assert_eq!(q_factor(q, Quaternion::ZERO).unwrap(), Quaternion::ONE);
        let mut rng = Rng::seed_from_u64(5);
        for _ in 0..50 {
            let q = random_in_ball(&mut rng, 0.9);
            let r = random_in_ball(&mut rng, 0.9);
            let f = q_factor(q, r).unwrap();
            assert!((f * r.conj()).max_abs_diff(r.conj() * f) < 1e-14);
        }
    }

    #[test]
    fn bergman_fueter_simple_values() {
        let q = Quaternion::new(0.1, 0.2, 0.3, 0.1);
        assert_eq!(bergman_fueter_kernel(q, Quaternion::ZERO).unwrap(), Quaternion::ZERO);
        let r = Quaternion::new(0.2, -0.3, 0.1, 0.4);
        let rb = r.conj();
        let expected = rb * rb * (-12.0 / PI);
        assert!(bergman_fueter_kernel(Quaternion::ZERO, r).unwrap().max_abs_diff(expected) < 1e-15);
    }

    #[test]
    fn names_round_trip() {
        for id in KernelId::ALL {
            assert_eq!(id.name().parse::<KernelId>().unwrap(), id);
        }
        assert!("nope".parse::<KernelId>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn ball_forms_agree(seed in any::<u64>()) {
            let mut rng = Rng::seed_from_u64(seed);
            let q = random_in_ball(&mut rng, 0.8);
            let r = random_in_ball(&mut rng, 0.8);
            let a = ball_kernel(q, r, BallForm::I).unwrap();
            let b = ball_kernel(q, r, BallForm::II).unwrap();
            prop_assert!(rel(a, b) < 1e-11);
        }

        #[test]
        fn halfspace_forms_agree(q in prop::array::uniform4(-2.0f64..2.0), r in prop::array::uniform4(-2.0f64..2.0), qw in 0.2f64..2.0, rw in 0.2f64..2.0) {
            let q = Quaternion::new(qw, q[1], q[2], q[3]);
            let r = Quaternion::new(rw, r[1], r[2], r[3]);
            let a = halfspace_kernel(q, r, HalfSpaceForm::A).unwrap();
            let b = halfspace_kernel(q, r, HalfSpaceForm::B).unwrap();
            prop_assert!(rel(a, b) < 1e-11);
        }
    }
}
