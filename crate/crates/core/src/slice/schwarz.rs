//! Schwarz reflection across the real axis and the intrinsic decompositions
//! built on it.

use num_complex::Complex64;

use super::{split, Holo, SliceFunction};
use crate::error::{Error, Result};
use crate::quaternion::{slice_decompose, Quaternion, UnitImaginary};

/// Distance from the real axis of the outermost boundary sample.
pub const BOUNDARY_DELTA: f64 = 1e-3;
/// Relative bound on the imaginary part of an admissible boundary limit.
pub const BOUNDARY_TOLERANCE: f64 = 1e-6;

const BOUNDARY_SAMPLES: usize = 4;

/// Estimates `lim f(x + iδ)` as `δ → 0⁺` and checks that it is real.
///
/// The samples sit at `δ, δ/2, δ/4, δ/8` and are extrapolated to zero with
/// Neville's scheme, so that the `O(δ)` imaginary drift of a perfectly
/// admissible function does not trip the test.
pub fn boundary_limit<F>(f_plus: F, x: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    let hs: Vec<f64> = (0..BOUNDARY_SAMPLES).map(|k| BOUNDARY_DELTA / f64::from(1u32 << k)).collect();
    let mut p: Vec<Complex64> = hs.iter().map(|&h| f_plus(Complex64::new(x, h))).collect();
    for m in 1..BOUNDARY_SAMPLES {
        for k in 0..BOUNDARY_SAMPLES - m {
            // Neville recurrence evaluated at h = 0.
            p[k] = (hs[k + m] * p[k] - hs[k] * p[k + 1]) / (hs[k + m] - hs[k]);
        }
    }
    let limit = p[0];
    if !(limit.im.abs() <= BOUNDARY_TOLERANCE * (1.0 + limit.norm())) {
        return Err(Error::BoundaryLimitNotReal { x, imag: limit.im });
    }
    Ok(limit.re)
}

/// The reflection `E[f]`: `f(z)` above the axis, `conj f(conj z)` below it,
/// and the (real) boundary limit on it.
pub fn schwarz_extend<F>(f_plus: F, z: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if z.im > 0.0 {
        Ok(f_plus(z))
    } else if z.im < 0.0 {
        Ok(f_plus(z.conj()).conj())
    } else {
        boundary_limit(f_plus, z.re).map(|v| Complex64::new(v, 0.0))
    }
}

/// `f = f₁ + f₂·i` with both parts intrinsic.
pub fn intrinsic_parts(f: &Holo) -> (Holo, Holo) {
    f.intrinsic_parts()
}

/// Checks `conj h(conj z) = h(z)` at the given points.
pub fn is_intrinsic(h: &Holo, points: &[Complex64], tol: f64) -> Result<bool> {
    for &z in points {
        let a = h.eval(z)?;
        let b = h.eval(z.conj())?.conj();
        if (a - b).norm() > tol * (1.0 + a.norm()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Four intrinsic stems with
/// `f = P_i[E h₀] + P_i[E h₁]·i + P_i[E h₂]·j + P_i[E h₃]·ij`.
#[derive(Debug, Clone)]
pub struct FourComponents {
    pub parts: [Holo; 4],
    pub unit_i: UnitImaginary,
    pub unit_j: UnitImaginary,
}

impl FourComponents {
    /// Basis `1, i, j, ij` the parts multiply on the right.
    pub fn basis(&self) -> [Quaternion; 4] {
        let i = self.unit_i.as_quaternion();
        let j = self.unit_j.as_quaternion();
        [Quaternion::ONE, i, j, i * j]
    }

    /// `P_i[E h](q)` for an intrinsic `h`, reading `h` on the upper half-plane only.
    pub fn extend_part(&self, n: usize, q: Quaternion) -> Result<Quaternion> {
        let h = &self.parts[n];
        let f_plus = |z: Complex64| h.eval(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        let p = slice_decompose(q);
        let z = p.complex();
        let upper = schwarz_extend(f_plus, z)?;
        let lower = schwarz_extend(f_plus, z.conj())?;
        let ii = p.unit.as_quaternion() * self.unit_i.as_quaternion();
        let i = self.unit_i;
        Ok(((Quaternion::ONE + ii) * i.embed(lower) + (Quaternion::ONE - ii) * i.embed(upper)) * 0.5)
    }

    pub fn reconstruct(&self, q: Quaternion) -> Result<Quaternion> {
        let basis = self.basis();
        let mut out = Quaternion::ZERO;
        for (n, e) in basis.iter().enumerate() {
            out += self.extend_part(n, q)? * *e;
        }
        Ok(out)
    }
}

/// Splits `f` on `ℂ(i)` along `j` and takes intrinsic parts of both stems.
pub fn four_component_decompose(
    f: &SliceFunction,
    unit_i: UnitImaginary,
    unit_j: UnitImaginary,
) -> Result<FourComponents> {
    let stem = split(f, unit_i, unit_j)?;
    let (h0, h1) = stem.f.intrinsic_parts();
    let (h2, h3) = stem.g.intrinsic_parts();
    Ok(FourComponents { parts: [h0, h1, h2, h3], unit_i: stem.unit_i(), unit_j: stem.unit_j() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reflection_examples() {
        let id = |z: Complex64| z;
        assert_eq!(schwarz_extend(id, c(1.0, -2.0)).unwrap(), c(1.0, -2.0));
        let sq = |z: Complex64| z * z;
        assert!((schwarz_extend(sq, c(0.0, -1.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let e = |z: Complex64| z.exp();
        let z = c(0.1, -0.2);
        assert!((schwarz_extend(e, z).unwrap() - z.exp()).norm() < 1e-15);
    }

    #[test]
    fn boundary_limits() {
        let v = schwarz_extend(|z: Complex64| z.exp(), c(0.3, 0.0)).unwrap();
        assert!((v.re - 0.3f64.exp()).abs() < 1e-10 && v.im == 0.0);
        let err = schwarz_extend(|z: Complex64| z + c(0.0, 0.5), c(0.3, 0.0)).unwrap_err();
        assert!(matches!(err, Error::BoundaryLimitNotReal { .. }));
        // i·z has limit 0 + i·x on the axis, which is not real for x ≠ 0.
        assert!(boundary_limit(|z: Complex64| c(0.0, 1.0) * z, 0.7).is_err());
    }

    #[test]
    fn four_components_examples() {
        let (i, j) = (UnitImaginary::I, UnitImaginary::J);
        let z = c(0.4, 0.25);
        let vals = |f: &SliceFunction| -> Vec<Complex64> {
            let fc = four_component_decompose(f, i, j).unwrap();
            fc.parts.iter().map(|h| h.eval(z).unwrap()).collect()
        };
        assert_eq!(vals(&SliceFunction::monomial(1)), vec![z, c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let k = vals(&SliceFunction::constant(Quaternion::K));
        assert_eq!(k, vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let f = SliceFunction::polynomial(vec![Quaternion::ZERO, Quaternion::ONE + Quaternion::J]);
        assert_eq!(vals(&f), vec![z, c(0.0, 0.0), z, c(0.0, 0.0)]);
    }

    #[test]
    fn reconstruction_off_slice() {
        let f = SliceFunction::polynomial(vec![
            Quaternion::new(0.2, 0.1, -0.3, 0.5),
            Quaternion::new(-1.0, 0.4, 0.2, 0.0),
            Quaternion::new(0.3, -0.2, 0.6, 0.7),
        ]);
        let i = UnitImaginary::new(0.0, 1.0, 1.0).unwrap();
        let j = UnitImaginary::new(1.0, 0.0, 0.0).unwrap();
        let fc = four_component_decompose(&f, i, j).unwrap();
        for q in [Quaternion::new(0.1, 0.5, -0.2, 0.3), Quaternion::new(-0.4, 0.0, 0.0, -0.6)] {
            assert!(fc.reconstruct(q).unwrap().max_abs_diff(f.eval(q).unwrap()) < 1e-13);
        }
    }

    #[test]
    fn intrinsic_detection() {
        let pts = [c(0.1, 0.2), c(-0.3, 0.5)];
        assert!(is_intrinsic(&Holo::identity(), &pts, 1e-12).unwrap());
        assert!(!is_intrinsic(&Holo::constant(c(0.0, 1.0)), &pts, 1e-12).unwrap());
        let (f1, f2) = intrinsic_parts(&Holo::custom(|z: Complex64| (c(0.3, 1.0) * z).exp()));
        assert!(is_intrinsic(&f1, &pts, 1e-12).unwrap());
        assert!(is_intrinsic(&f2, &pts, 1e-12).unwrap());
    }
}
