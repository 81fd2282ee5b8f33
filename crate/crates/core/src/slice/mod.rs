//! Slice-regular functions: representations, evaluation, the extension
//! operator, and the Schwarz-reflection decompositions.

mod holo;
mod schwarz;
mod stem;

use std::sync::Arc;

use num_complex::Complex64;

pub use holo::{Holo, POLE_EPSILON};
pub use schwarz::{
    boundary_limit, four_component_decompose, intrinsic_parts, is_intrinsic, schwarz_extend,
    FourComponents, BOUNDARY_DELTA, BOUNDARY_TOLERANCE,
};
pub use stem::{extend_via_representation, split, split_value, StemPair};

use crate::error::{Error, Result};
use crate::kernels::{self, KernelId};
use crate::quaternion::{slice_decompose, Quaternion, UnitImaginary};

/// The two axially symmetric domains with closed-form kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainId {
    /// `𝔹⁴ = {|q| < 1}`; every slice is the unit disk.
    UnitBall,
    /// `ℍ⁺ = {Re q > 0}`; every slice is the right half-plane.
    HalfSpace,
}

impl DomainId {
    /// Distance from `q` to the boundary, negative outside.
    pub fn margin(self, q: Quaternion) -> f64 {
        match self {
            DomainId::UnitBall => 1.0 - q.norm(),
            DomainId::HalfSpace => q.re(),
        }
    }

    pub fn contains(self, q: Quaternion) -> bool {
        self.margin(q) > 0.0
    }

    /// Fails with a domain error unless a ball of radius `radius` around `q`
    /// lies inside the domain.
    pub fn require_interior(self, q: Quaternion, radius: f64) -> Result<()> {
        if self.margin(q) > radius {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{q} is not at distance > {radius:e} inside {self:?}"
            )))
        }
    }

    /// Whether the planar point `x + i·y` lies in the slice of the domain.
    pub fn contains_planar(self, z: Complex64) -> bool {
        match self {
            DomainId::UnitBall => z.norm() < 1.0,
            DomainId::HalfSpace => z.re > 0.0,
        }
    }
}

/// Anything that maps quaternions to quaternions and can be probed by the
/// finite-difference and quadrature machinery.
pub trait QuaternionMap: Sync {
    fn eval(&self, q: Quaternion) -> Result<Quaternion>;

    /// Domain the map is restricted to, if any.
    fn domain(&self) -> Option<DomainId> {
        None
    }

    /// Number of finite-difference layers already applied inside this map.
    fn fd_depth(&self) -> usize {
        0
    }
}

impl<M: QuaternionMap + ?Sized> QuaternionMap for &M {
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        (**self).eval(q)
    }
    fn domain(&self) -> Option<DomainId> {
        (**self).domain()
    }
    fn fd_depth(&self) -> usize {
        (**self).fd_depth()
    }
}

/// Adapter turning a closure into a [`QuaternionMap`].
pub struct FnMap<F> {
    f: F,
    domain: Option<DomainId>,
}

impl<F> FnMap<F>
where
    F: Fn(Quaternion) -> Result<Quaternion> + Sync,
{
    pub fn new(f: F) -> Self {
        FnMap { f, domain: None }
    }

    pub fn on(domain: DomainId, f: F) -> Self {
        FnMap { f, domain: Some(domain) }
    }
}

impl<F> QuaternionMap for FnMap<F>
where
    F: Fn(Quaternion) -> Result<Quaternion> + Sync,
{
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        (self.f)(q)
    }
    fn domain(&self) -> Option<DomainId> {
        self.domain
    }
}

/// A slice-regular function given in closed form.
#[derive(Debug, Clone)]
pub enum SliceFunction {
    /// `Σ qⁿ cₙ`, coefficients on the right.
    QuaternionPolynomial(Vec<Quaternion>),
    /// `p(q) / d(q)^den_pow` with real coefficients.
    IntrinsicRational { num: Vec<f64>, den: Vec<f64>, den_pow: u32 },
    Stem(StemPair),
    /// `q ↦ K(q, r)` for a kernel that is slice regular in its first argument.
    KernelSection { kernel: KernelId, r: Quaternion },
}

impl SliceFunction {
    pub fn polynomial(coeffs: Vec<Quaternion>) -> Self {
        SliceFunction::QuaternionPolynomial(coeffs)
    }

    /// `qⁿ`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Quaternion::ZERO; n + 1];
        c[n] = Quaternion::ONE;
        SliceFunction::QuaternionPolynomial(c)
    }

    pub fn constant(c: Quaternion) -> Self {
        SliceFunction::QuaternionPolynomial(vec![c])
    }

    pub fn intrinsic_rational(num: Vec<f64>, den: Vec<f64>, den_pow: u32) -> Result<Self> {
        if den.iter().all(|&d| d == 0.0) {
            return Err(Error::bad("den", "denominator polynomial is identically zero"));
        }
        if num.iter().chain(&den).any(|c| !c.is_finite()) {
            return Err(Error::bad("num/den", "coefficients must be finite"));
        }
        Ok(SliceFunction::IntrinsicRational { num, den, den_pow })
    }

    /// Kernel section `q ↦ K(q, r)`; only kernels slice regular in `q` are accepted.
    pub fn kernel_section(kernel: KernelId, r: Quaternion) -> Result<Self> {
        let domain = kernel.domain().filter(|_| kernel.is_slice_regular_in_q()).ok_or_else(|| {
            Error::bad("kernel", format!("{kernel:?} is not slice regular in its first argument"))
        })?;
        if !domain.contains(r) {
            return Err(Error::Domain(format!("second kernel argument {r} outside {domain:?}")));
        }
        Ok(SliceFunction::KernelSection { kernel, r })
    }

    /// Right-multiplies by a constant: `q ↦ f(q)·c`.
    pub fn times_right(&self, c: Quaternion) -> SliceFunction {
        match self {
            SliceFunction::QuaternionPolynomial(coeffs) => {
                SliceFunction::QuaternionPolynomial(coeffs.iter().map(|&a| a * c).collect())
            }
            other => {
                let inner = Arc::new(other.clone());
                SliceFunction::Stem(StemPair::from_map(
                    move |q| inner.eval(q).map(|v| v * c),
                    UnitImaginary::I,
                    UnitImaginary::J,
                    other.domain(),
                ))
            }
        }
    }

    /// Evaluates `f(q)`.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        if let Some(d) = self.domain() {
            if !d.contains(q) {
                return Err(Error::Domain(format!("{q} outside {d:?}")));
            }
        }
        match self {
            SliceFunction::QuaternionPolynomial(c) => Ok(c
                .iter()
                .rev()
                .fold(Quaternion::ZERO, |acc, &cn| q * acc + cn)),
            SliceFunction::IntrinsicRational { num, den, den_pow } => {
                let p = slice_decompose(q);
                let h = Holo::RealRational { num: num.clone(), den: den.clone(), pow: *den_pow };
                Ok(p.unit.embed(h.eval(p.complex())?))
            }
            SliceFunction::Stem(stem) => extend_via_representation(stem, q),
            SliceFunction::KernelSection { kernel, r } => kernels::evaluate(*kernel, q, *r),
        }
    }

    pub fn domain(&self) -> Option<DomainId> {
        match self {
            SliceFunction::QuaternionPolynomial(_) | SliceFunction::IntrinsicRational { .. } => None,
            SliceFunction::Stem(s) => s.domain,
            SliceFunction::KernelSection { kernel, .. } => kernel.domain(),
        }
    }

    /// Whether `f` maps every slice `ℂ(u)` into itself (real-coefficient forms).
    pub fn is_intrinsic(&self) -> bool {
        match self {
            SliceFunction::QuaternionPolynomial(c) => c.iter().all(|c| c.im_norm() == 0.0),
            SliceFunction::IntrinsicRational { .. } => true,
            _ => false,
        }
    }
}

impl QuaternionMap for SliceFunction {
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        SliceFunction::eval(self, q)
    }
    fn domain(&self) -> Option<DomainId> {
        SliceFunction::domain(self)
    }
}

/// Rebuilds `f(x + I_q y)` from the values of `f` on the slice `ℂ(j)`:
/// `½(1 - I_q j) f(x + y j) + ½(1 + I_q j) f(x - y j)`.
pub fn representation_formula<M: QuaternionMap + ?Sized>(
    f: &M,
    q: Quaternion,
    j: UnitImaginary,
) -> Result<Quaternion> {
    let p = slice_decompose(q);
    let ij = p.unit.as_quaternion() * j.as_quaternion();
    let plus = f.eval(j.embed(Complex64::new(p.re, p.im)))?;
    let minus = f.eval(j.embed(Complex64::new(p.re, -p.im)))?;
    Ok((Quaternion::ONE - ij) * plus * 0.5 + (Quaternion::ONE + ij) * minus * 0.5)
}
