use std::sync::Arc;

use num_complex::Complex64;

use super::{DomainId, Holo, QuaternionMap, SliceFunction};
use crate::error::{Error, Result};
use crate::quaternion::{slice_decompose, Quaternion, UnitImaginary};

/// Largest `|i·j|` accepted for the splitting pair after re-orthogonalization.
const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;

/// A restriction `f|ℂ(i) = F + G·j` with `F, G` holomorphic and `j ⟂ i`.
#[derive(Debug, Clone)]
pub struct StemPair {
    pub f: Holo,
    pub g: Holo,
    unit_i: UnitImaginary,
    unit_j: UnitImaginary,
    pub domain: Option<DomainId>,
}

impl StemPair {
    /// Builds a stem pair; `unit_j` is projected onto the orthogonal
    /// complement of `unit_i` and renormalized.
    pub fn new(f: Holo, g: Holo, unit_i: UnitImaginary, unit_j: UnitImaginary) -> Result<Self> {
        let unit_j = unit_i.orthogonalize(unit_j)?;
        if unit_i.dot(unit_j).abs() > ORTHOGONALITY_TOLERANCE {
            return Err(Error::bad("unit_j", "could not be made orthogonal to unit_i"));
        }
        Ok(StemPair { f, g, unit_i, unit_j, domain: None })
    }

    pub fn with_domain(mut self, domain: DomainId) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn unit_i(&self) -> UnitImaginary {
        self.unit_i
    }

    pub fn unit_j(&self) -> UnitImaginary {
        self.unit_j
    }

    /// Stem pair of an arbitrary slice-regular map, sampled on `ℂ(i)`.
    /// `unit_j` must already be orthogonal to `unit_i`.
    pub(crate) fn from_map<F>(
        f: F,
        unit_i: UnitImaginary,
        unit_j: UnitImaginary,
        domain: Option<DomainId>,
    ) -> StemPair
    where
        F: Fn(Quaternion) -> Result<Quaternion> + Send + Sync + 'static,
    {
        let f = Arc::new(f);
        let ff = Arc::clone(&f);
        StemPair {
            f: Holo::custom(move |z| match ff(unit_i.embed(z)) {
                Ok(v) => split_value(v, unit_i, unit_j).0,
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }),
            g: Holo::custom(move |z| match f(unit_i.embed(z)) {
                Ok(v) => split_value(v, unit_i, unit_j).1,
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }),
            unit_i,
            unit_j,
            domain,
        }
    }

    /// `F(z) + G(z)·j` as a quaternion, with `z` read in `ℂ(i)`.
    pub fn eval_on_slice(&self, z: Complex64) -> Result<Quaternion> {
        let f = self.unit_i.embed(self.f.eval(z)?);
        let g = self.unit_i.embed(self.g.eval(z)?);
        Ok(f + g * self.unit_j.as_quaternion())
    }
}

impl QuaternionMap for StemPair {
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        extend_via_representation(self, q)
    }
    fn domain(&self) -> Option<DomainId> {
        self.domain
    }
}

/// Writes `v = A + B·j` with `A, B ∈ ℂ(i)`, returned in abstract complex coordinates.
pub fn split_value(v: Quaternion, unit_i: UnitImaginary, unit_j: UnitImaginary) -> (Complex64, Complex64) {
    let i = unit_i.as_quaternion();
    let j = unit_j.as_quaternion();
    let ij = i * j;
    (Complex64::new(v.w, v.dot(i)), Complex64::new(v.dot(j), v.dot(ij)))
}

/// The extension operator: for `q = x + I_q y`,
/// `½[(1 + I_q i) f(x - i y) + (1 - I_q i) f(x + i y)]` with `f = F + G j`.
pub fn extend_via_representation(stem: &StemPair, q: Quaternion) -> Result<Quaternion> {
    let p = slice_decompose(q);
    let z = p.complex();
    if let Some(d) = stem.domain {
        if !d.contains_planar(z) {
            return Err(Error::Domain(format!("({}, {}) outside the {d:?} slice", p.re, p.im)));
        }
    }
    let ii = p.unit.as_quaternion() * stem.unit_i.as_quaternion();
    // On the stem's own slice one of the two weights vanishes exactly; skip
    // the other evaluation so that f(q) is reproduced without cancellation.
    let lower_w = (Quaternion::ONE + ii) * 0.5;
    let upper_w = (Quaternion::ONE - ii) * 0.5;
    let mut out = Quaternion::ZERO;
    if lower_w != Quaternion::ZERO {
        out += lower_w * stem.eval_on_slice(z.conj())?;
    }
    if upper_w != Quaternion::ZERO {
        out += upper_w * stem.eval_on_slice(z)?;
    }
    Ok(out)
}

/// Splitting of `f` on `ℂ(i)` along `j`: returns `F, G` with `f|ℂ(i) = F + G j`.
pub fn split(f: &SliceFunction, unit_i: UnitImaginary, unit_j: UnitImaginary) -> Result<StemPair> {
    let unit_j = unit_i.orthogonalize(unit_j)?;
    match f {
        SliceFunction::QuaternionPolynomial(coeffs) => {
            let (a, b): (Vec<_>, Vec<_>) =
                coeffs.iter().map(|&c| split_value(c, unit_i, unit_j)).unzip();
            StemPair::new(Holo::Polynomial(a), Holo::Polynomial(b), unit_i, unit_j)
        }
        SliceFunction::IntrinsicRational { num, den, den_pow } => StemPair::new(
            Holo::RealRational { num: num.clone(), den: den.clone(), pow: *den_pow },
            Holo::zero(),
            unit_i,
            unit_j,
        ),
        other => {
            let inner = Arc::new(other.clone());
            Ok(StemPair::from_map(move |q| inner.eval(q), unit_i, unit_j, other.domain()))
        }
    }
}
