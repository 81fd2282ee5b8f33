//! Central finite differences for the slice Cauchy–Riemann operator, the
//! Laplacian of `ℝ⁴` and the Cauchy–Fueter operator.

use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, SlicePoint};
use crate::slice::{DomainId, QuaternionMap};

pub const MIN_STEP: f64 = 1e-6;
pub const MAX_STEP: f64 = 1e-1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FdOrder {
    Two,
    Four,
}

impl FdOrder {
    pub fn value(self) -> usize {
        match self {
            FdOrder::Two => 2,
            FdOrder::Four => 4,
        }
    }

    /// `(offset k, c)` with `h·f' ≈ Σ c·(f(x + kh) - f(x - kh))`.
    fn first(self) -> &'static [(f64, f64)] {
        match self {
            FdOrder::Two => &[(1.0, 0.5)],
            FdOrder::Four => &[(1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)],
        }
    }

    /// `(offset in steps, coefficient)` for `h²·f''`, center excluded.
    fn second(self) -> (&'static [(f64, f64)], f64) {
        match self {
            FdOrder::Two => (&[(-1.0, 1.0), (1.0, 1.0)], -2.0),
            FdOrder::Four => (
                &[(-2.0, -1.0 / 12.0), (-1.0, 16.0 / 12.0), (1.0, 16.0 / 12.0), (2.0, -1.0 / 12.0)],
                -30.0 / 12.0,
            ),
        }
    }
}

impl TryFrom<usize> for FdOrder {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        match n {
            2 => Ok(FdOrder::Two),
            4 => Ok(FdOrder::Four),
            _ => Err(Error::bad("order", format!("{n} is not 2 or 4"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    h: f64,
    order: FdOrder,
}

impl FdScheme {
    pub fn new(h: f64, order: FdOrder) -> Result<Self> {
        if !(MIN_STEP..=MAX_STEP).contains(&h) {
            return Err(Error::bad("h", format!("{h:e} outside [{MIN_STEP:e}, {MAX_STEP:e}]")));
        }
        Ok(FdScheme { h, order })
    }

    /// Order 4, `h = 1e-3`.
    pub fn first_derivative() -> Self {
        FdScheme { h: 1e-3, order: FdOrder::Four }
    }

    /// Order 4, `h = 5e-3`.
    pub fn laplacian() -> Self {
        FdScheme { h: 5e-3, order: FdOrder::Four }
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn order(&self) -> FdOrder {
        self.order
    }

    /// Interior margin needed around the evaluation point of `f`.
    pub fn margin_for<M: QuaternionMap + ?Sized>(&self, f: &M) -> f64 {
        (f.fd_depth() + 1) as f64 * self.order.value() as f64 * self.h
    }

    fn check<M: QuaternionMap + ?Sized>(&self, f: &M, q: Quaternion) -> Result<()> {
        match f.domain() {
            Some(d) => d.require_interior(q, self.margin_for(f)),
            None => Ok(()),
        }
    }

    /// `∂f/∂v` at `q` along the unit quaternion direction `v`.
    pub fn directional<M: QuaternionMap + ?Sized>(&self, f: &M, q: Quaternion, v: Quaternion) -> Result<Quaternion> {
        let mut acc = Quaternion::ZERO;
        for &(k, c) in self.order.first() {
            let step = v * (k * self.h);
            acc += (f.eval(q + step)? - f.eval(q - step)?) * c;
        }
        Ok(acc * (1.0 / self.h))
    }

    fn second_directional<M: QuaternionMap + ?Sized>(&self, f: &M, q: Quaternion, v: Quaternion, center: Quaternion) -> Result<Quaternion> {
        let (stencil, c0) = self.order.second();
        let mut acc = center * c0;
        for &(k, c) in stencil {
            acc += f.eval(q + v * (k * self.h))? * c;
        }
        Ok(acc * (1.0 / (self.h * self.h)))
    }
}

const AXES: [Quaternion; 4] = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];

/// `(∂_x + I ∂_y) f` on the slice of `z`, `I` multiplying on the left.
pub fn cr_slice_fd<M: QuaternionMap + ?Sized>(f: &M, z: SlicePoint, scheme: &FdScheme) -> Result<Quaternion> {
    let q = z.embed();
    scheme.check(f, q)?;
    let i = z.unit.as_quaternion();
    let dx = scheme.directional(f, q, Quaternion::ONE)?;
    let dy = scheme.directional(f, q, i)?;
    Ok(dx + i * dy)
}

/// `∂_x f - (∂_y f)·I` on the slice of `z`: vanishes for right anti-regular `f`.
pub fn cr_slice_right_anti_fd<M: QuaternionMap + ?Sized>(f: &M, z: SlicePoint, scheme: &FdScheme) -> Result<Quaternion> {
    let q = z.embed();
    scheme.check(f, q)?;
    let i = z.unit.as_quaternion();
    let dx = scheme.directional(f, q, Quaternion::ONE)?;
    let dy = scheme.directional(f, q, i)?;
    Ok(dx - dy * i)
}

/// `Σₙ ∂²f/∂xₙ²`, componentwise.
pub fn laplacian_fd<M: QuaternionMap + ?Sized>(f: &M, q: Quaternion, scheme: &FdScheme) -> Result<Quaternion> {
    scheme.check(f, q)?;
    let center = f.eval(q)?;
    let mut acc = Quaternion::ZERO;
    for v in AXES {
        acc += scheme.second_directional(f, q, v, center)?;
    }
    Ok(acc)
}

/// `∂₀f + ı∂₁f + ȷ∂₂f + k∂₃f`, units acting on the left.
pub fn cauchy_fueter_fd<M: QuaternionMap + ?Sized>(f: &M, q: Quaternion, scheme: &FdScheme) -> Result<Quaternion> {
    scheme.check(f, q)?;
    let mut acc = Quaternion::ZERO;
    for e in AXES {
        acc += e * scheme.directional(f, q, e)?;
    }
    Ok(acc)
}

/// `q ↦ Δf(q)` by finite differences, usable as the input of another operator.
pub struct FdLaplacian<M> {
    pub inner: M,
    pub scheme: FdScheme,
}

impl<M: QuaternionMap> FdLaplacian<M> {
    pub fn new(inner: M, scheme: FdScheme) -> Self {
        FdLaplacian { inner, scheme }
    }
}

impl<M: QuaternionMap> QuaternionMap for FdLaplacian<M> {
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        laplacian_fd(&self.inner, q, &self.scheme)
    }
    fn domain(&self) -> Option<DomainId> {
        self.inner.domain()
    }
    fn fd_depth(&self) -> usize {
        self.inner.fd_depth() + 1
    }
}
