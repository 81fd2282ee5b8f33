//! Real quaternions and the slice decomposition `q = x + I_q y`.
//!
//! Every product in this crate goes through [`Quaternion`]'s `Mul`, which is
//! the Hamilton product taken in the order written. Nothing here commutes
//! factors behind the caller's back.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Modulus below which [`Quaternion::inverse`] reports a zero divisor.
pub const DEFAULT_ZERO_EPSILON: f64 = 1e-300;

/// Allowed drift of `|u|` from one for a [`UnitImaginary`].
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// A quaternion `w + x·ı + y·ȷ + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Real part `Re[q]`.
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part `q̲` as a pure quaternion.
    pub fn im(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    /// `|q̲|`, the modulus of the imaginary part.
    pub fn im_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Euclidean inner product of the component vectors.
    pub fn dot(self, other: Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// `conj(q) / |q|²`, failing when `|q|` is at or below [`DEFAULT_ZERO_EPSILON`].
    pub fn inverse(self) -> Result<Self> {
        self.inverse_eps(DEFAULT_ZERO_EPSILON)
    }

    pub fn inverse_eps(self, epsilon: f64) -> Result<Self> {
        let modulus = self.norm();
        if !(modulus > epsilon) {
            return Err(Error::ZeroDivisor { modulus });
        }
        Ok(self.conj() / self.norm_sq())
    }

    /// `qⁿ` by repeated Hamilton product; `q⁰ = 1`.
    pub fn powi(self, n: u32) -> Self {
        let mut acc = Quaternion::ONE;
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.p$} {:+.p$}i {:+.p$}j {:+.p$}k", self.w, self.x, self.y, self.z),
            None => write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z),
        }
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product, `ıȷ = k`, `ȷı = -k`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign<f64> for Quaternion {
    fn mul_assign(&mut self, s: f64) {
        *self = *self * s;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |a, b| a + b)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

/// A unit imaginary quaternion `u ∈ 𝕊²`, so `u² = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitImaginary {
    ux: f64,
    uy: f64,
    uz: f64,
}

impl Neg for UnitImaginary {
    type Output = UnitImaginary;
    fn neg(self) -> UnitImaginary {
        UnitImaginary { ux: -self.ux, uy: -self.uy, uz: -self.uz }
    }
}

impl UnitImaginary {
    pub const I: UnitImaginary = UnitImaginary { ux: 1.0, uy: 0.0, uz: 0.0 };
    pub const J: UnitImaginary = UnitImaginary { ux: 0.0, uy: 1.0, uz: 0.0 };
    pub const K: UnitImaginary = UnitImaginary { ux: 0.0, uy: 0.0, uz: 1.0 };

    /// Normalizes `(ux, uy, uz)`; the zero vector and non-finite input are rejected.
    pub fn new(ux: f64, uy: f64, uz: f64) -> Result<Self> {
        let n = (ux * ux + uy * uy + uz * uz).sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::bad("unit", "imaginary direction must be a non-zero finite 3-vector"));
        }
        Ok(UnitImaginary { ux: ux / n, uy: uy / n, uz: uz / n })
    }

    pub fn from_array(v: [f64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }

    pub fn components(self) -> [f64; 3] {
        [self.ux, self.uy, self.uz]
    }

    pub fn as_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.ux, self.uy, self.uz)
    }

    pub fn dot(self, other: UnitImaginary) -> f64 {
        self.ux * other.ux + self.uy * other.uy + self.uz * other.uz
    }

    /// `self × other`, which for orthogonal units equals the product `self·other`.
    pub fn cross(self, o: UnitImaginary) -> Result<Self> {
        Self::new(
            self.uy * o.uz - self.uz * o.uy,
            self.uz * o.ux - self.ux * o.uz,
            self.ux * o.uy - self.uy * o.ux,
        )
    }

    /// Projects `other` onto the plane orthogonal to `self` and renormalizes.
    pub fn orthogonalize(self, other: UnitImaginary) -> Result<Self> {
        let d = self.dot(other);
        let v = [other.ux - d * self.ux, other.uy - d * self.uy, other.uz - d * self.uz];
        Self::new(v[0], v[1], v[2])
            .map_err(|_| Error::bad("unit_j", "direction is parallel to unit_i"))
    }

    /// Some unit imaginary orthogonal to `self`.
    pub fn any_orthogonal(self) -> Self {
        // Cross with the basis axis least aligned with self.
        let a = [self.ux.abs(), self.uy.abs(), self.uz.abs()];
        let axis = if a[0] <= a[1] && a[0] <= a[2] {
            UnitImaginary::I
        } else if a[1] <= a[2] {
            UnitImaginary::J
        } else {
            UnitImaginary::K
        };
        self.cross(axis).expect("axis chosen non-parallel")
    }

    /// The quaternion `re + im·u` of the plane `ℂ(u)`.
    pub fn embed(self, z: Complex64) -> Quaternion {
        Quaternion::new(z.re, z.im * self.ux, z.im * self.uy, z.im * self.uz)
    }

    /// Components of `q` along `1` and `u`. Exact for `q ∈ ℂ(u)`.
    pub fn project(self, q: Quaternion) -> Complex64 {
        Complex64::new(q.w, q.x * self.ux + q.y * self.uy + q.z * self.uz)
    }
}

impl From<UnitImaginary> for Quaternion {
    fn from(u: UnitImaginary) -> Quaternion {
        u.as_quaternion()
    }
}

/// A point `re + unit·im` with `im ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePoint {
    pub re: f64,
    pub im: f64,
    pub unit: UnitImaginary,
}

impl SlicePoint {
    pub fn embed(self) -> Quaternion {
        self.unit.embed(Complex64::new(self.re, self.im))
    }

    /// The same point read as `re + i·im` in the abstract complex plane.
    pub fn complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Writes `q = x + I_q y` with `y = |q̲| ≥ 0`. Real points get `I_q = ı`.
pub fn slice_decompose(q: Quaternion) -> SlicePoint {
    let im = q.im_norm();
    let unit = if im > 0.0 {
        UnitImaginary { ux: q.x / im, uy: q.y / im, uz: q.z / im }
    } else {
        UnitImaginary::I
    };
    SlicePoint { re: q.w, im, unit }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-3.0f64..3.0).prop_map(Quaternion::from_array)
    }

    #[test]
    fn basis_products() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::I, -Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::K, Quaternion::I);
        assert_eq!(Quaternion::K * Quaternion::I, Quaternion::J);
        assert_eq!(Quaternion::I * Quaternion::I, -Quaternion::ONE);
        assert_eq!(Quaternion::I * Quaternion::J * Quaternion::K, -Quaternion::ONE);
    }

    #[test]
    fn expand_one_plus_i_times_one_plus_j() {
        let p = (Quaternion::ONE + Quaternion::I) * (Quaternion::ONE + Quaternion::J);
        assert_eq!(p, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Quaternion::real(2.0).inverse().unwrap(), Quaternion::real(0.5));
        assert_eq!(Quaternion::I.inverse().unwrap(), -Quaternion::I);
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        let inv = q.inverse().unwrap();
        assert_eq!(inv, Quaternion::new(0.25, -0.25, -0.25, -0.25));
        assert!((q * inv).max_abs_diff(Quaternion::ONE) < 1e-15);
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert!(matches!(Quaternion::ZERO.inverse(), Err(Error::ZeroDivisor { .. })));
        assert!(Quaternion::real(1e-310).inverse().is_err());
        assert!(Quaternion::real(1e-3).inverse_eps(1e-2).is_err());
    }

    #[test]
    fn small_powers() {
        assert_eq!(Quaternion::I.powi(2), -Quaternion::ONE);
        assert_eq!((Quaternion::ONE + Quaternion::I).powi(2), Quaternion::new(0.0, 2.0, 0.0, 0.0));
        assert_eq!(Quaternion::new(0.3, 1.0, -2.0, 5.0).powi(0), Quaternion::ONE);
    }

    #[test]
    fn decompose_examples() {
        let p = slice_decompose(Quaternion::new(1.0, 2.0, 0.0, 0.0));
        assert_eq!((p.re, p.im, p.unit), (1.0, 2.0, UnitImaginary::I));

        let p = slice_decompose(Quaternion::real(3.0));
        assert_eq!((p.re, p.im, p.unit), (3.0, 0.0, UnitImaginary::I));

        let p = slice_decompose(Quaternion::new(0.0, 1.0, 1.0, 0.0));
        assert_eq!(p.re, 0.0);
        assert!((p.im - 2f64.sqrt()).abs() < 1e-15);
        let c = p.unit.components();
        assert!((c[0] - 0.5f64.sqrt()).abs() < 1e-15 && (c[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(c[2], 0.0);
    }

    #[test]
    fn unit_squares_to_minus_one() {
        let u = UnitImaginary::new(0.3, -1.2, 2.0).unwrap();
        let q = u.as_quaternion();
        assert!((q * q).max_abs_diff(-Quaternion::ONE) < 1e-15);
        assert!(UnitImaginary::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn orthogonal_units_multiply_to_their_cross_product() {
        let i = UnitImaginary::new(1.0, 2.0, -0.5).unwrap();
        let j = i.any_orthogonal();
        assert!(i.dot(j).abs() < 1e-15);
        let k = i.cross(j).unwrap();
        assert!((i.as_quaternion() * j.as_quaternion()).max_abs_diff(k.as_quaternion()) < 1e-15);
        let j2 = i.orthogonalize(UnitImaginary::new(1.0, 2.0, 0.0).unwrap()).unwrap();
        assert!(i.dot(j2).abs() < 1e-15);
        assert!(i.orthogonalize(i).is_err());
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            let lhs = (a * b).norm();
            let rhs = a.norm() * b.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn inverse_both_sides(q in quat()) {
            prop_assume!(q.norm() > 1e-3);
            let inv = q.inverse().unwrap();
            prop_assert!((q * inv).max_abs_diff(Quaternion::ONE) < 1e-13);
            prop_assert!((inv * q).max_abs_diff(Quaternion::ONE) < 1e-13);
        }

        #[test]
        fn conj_product_is_real(q in quat()) {
            let a = q.conj() * q;
            let b = q * q.conj();
            prop_assert!(a.im_norm() < 1e-13 && b.im_norm() < 1e-13);
            prop_assert!((a.w - q.norm_sq()).abs() < 1e-12 * q.norm_sq().max(1.0));
        }

        #[test]
        fn associativity(a in quat(), b in quat(), c in quat()) {
            let scale = a.norm() * b.norm() * c.norm();
            prop_assert!(((a * b) * c).max_abs_diff(a * (b * c)) <= 1e-13 * scale.max(1.0));
        }

        #[test]
        fn right_identity(q in quat()) {
            prop_assert_eq!(q * Quaternion::ONE, q);
        }

        #[test]
        fn decompose_embed_roundtrip(q in quat()) {
            let back = slice_decompose(q).embed();
            for (a, b) in back.to_array().iter().zip(q.to_array()) {
                prop_assert!((a - b).abs() <= f64::EPSILON * b.abs().max(f64::MIN_POSITIVE) * 2.0);
            }
            prop_assert!(slice_decompose(q).im >= 0.0);
        }

        #[test]
        fn powers_add(q in prop::array::uniform4(-1.2f64..1.2).prop_map(Quaternion::from_array), m in 0u32..7, n in 0u32..7) {
            let lhs = q.powi(m) * q.powi(n);
            let rhs = q.powi(m + n);
            prop_assert!(lhs.max_abs_diff(rhs) <= 1e-12 * rhs.norm().max(1.0));
        }
    }
}
