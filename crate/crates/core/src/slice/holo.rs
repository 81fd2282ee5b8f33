use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Denominator modulus treated as a pole by [`Holo::RealRational`].
pub const POLE_EPSILON: f64 = 1e-300;

type ComplexFn = dyn Fn(Complex64) -> Complex64 + Send + Sync;

/// A complex function on a planar slice, evaluated in abstract coordinates
/// `z = x + i·y`.
///
/// Closed-form variants keep their structure so that splitting and intrinsic
/// decomposition stay closed-form; anything else is a black box.
#[derive(Clone)]
pub enum Holo {
    /// `Σ cₙ zⁿ`.
    Polynomial(Vec<Complex64>),
    /// `p(z) / q(z)^pow` with real coefficients (lowest degree first).
    RealRational { num: Vec<f64>, den: Vec<f64>, pow: u32 },
    Custom(Arc<ComplexFn>),
}

impl fmt::Debug for Holo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Holo::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            Holo::RealRational { num, den, pow } => f
                .debug_struct("RealRational")
                .field("num", num)
                .field("den", den)
                .field("pow", pow)
                .finish(),
            Holo::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

fn horner_c(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_r(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

impl Holo {
    pub fn zero() -> Self {
        Holo::Polynomial(Vec::new())
    }

    pub fn constant(c: Complex64) -> Self {
        Holo::Polynomial(vec![c])
    }

    /// The identity `z ↦ z`.
    pub fn identity() -> Self {
        Holo::Polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Holo::Custom(Arc::new(f))
    }

    /// Evaluates the function; rational poles give [`Error::ZeroDivisor`].
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            Holo::Polynomial(c) => Ok(horner_c(c, z)),
            Holo::RealRational { num, den, pow } => {
                let d = horner_r(den, z);
                if !(d.norm() > POLE_EPSILON) {
                    return Err(Error::ZeroDivisor { modulus: d.norm() });
                }
                Ok(horner_r(num, z) / d.powu(*pow))
            }
            Holo::Custom(f) => Ok(f(z)),
        }
    }

    /// True when `conj(f(conj z)) = f(z)` holds by construction.
    pub fn is_structurally_intrinsic(&self) -> bool {
        match self {
            Holo::Polynomial(c) => c.iter().all(|c| c.im == 0.0),
            Holo::RealRational { .. } => true,
            Holo::Custom(_) => false,
        }
    }

    /// Splits `f = f₁ + f₂·i` into intrinsic parts
    /// `f₁(z) = ½(f(z) + conj f(conj z))`, `f₂(z) = -i/2·(f(z) - conj f(conj z))`.
    pub fn intrinsic_parts(&self) -> (Holo, Holo) {
        match self {
            Holo::Polynomial(c) => (
                Holo::Polynomial(c.iter().map(|c| Complex64::new(c.re, 0.0)).collect()),
                Holo::Polynomial(c.iter().map(|c| Complex64::new(c.im, 0.0)).collect()),
            ),
            Holo::RealRational { .. } => (self.clone(), Holo::zero()),
            Holo::Custom(f) => {
                let f1 = Arc::clone(f);
                let f2 = Arc::clone(f);
                (
                    Holo::custom(move |z| 0.5 * (f1(z) + f1(z.conj()).conj())),
                    Holo::custom(move |z| {
                        Complex64::new(0.0, -0.5) * (f2(z) - f2(z.conj()).conj())
                    }),
                )
            }
        }
    }
}
