//! Seeded random draws shared by the Monte Carlo estimator and the
//! verification suites. ChaCha8 keeps streams identical across platforms.

use num_complex::Complex64;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use crate::quaternion::{Quaternion, UnitImaginary};
use crate::slice::SliceFunction;

pub type Rng = ChaCha8Rng;

/// Uniform point of the open 4-ball of the given radius, by rejection from the cube.
pub fn random_in_ball(rng: &mut Rng, radius: f64) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = q.norm_sq();
        if n < 1.0 {
            return q * radius;
        }
    }
}

/// Uniform direction on `𝕊²`.
pub fn random_unit(rng: &mut Rng) -> UnitImaginary {
    loop {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n < 1.0 && n > 1e-6 {
            return UnitImaginary::from_array(v).expect("non-zero vector");
        }
    }
}

/// A random `j` orthogonal to `i`.
pub fn random_orthogonal(rng: &mut Rng, i: UnitImaginary) -> UnitImaginary {
    loop {
        if let Ok(j) = i.orthogonalize(random_unit(rng)) {
            return j;
        }
    }
}

/// Uniform point of the disk of the given radius.
pub fn random_in_disk(rng: &mut Rng, radius: f64) -> Complex64 {
    loop {
        let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if z.norm_sqr() < 1.0 {
            return z * radius;
        }
    }
}

/// Quaternion coefficients with components uniform in `[-scale, scale]`.
pub fn random_quaternion(rng: &mut Rng, scale: f64) -> Quaternion {
    Quaternion::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

/// Quaternion polynomial of the given degree with random right coefficients.
pub fn random_polynomial(rng: &mut Rng, degree: usize) -> SliceFunction {
    SliceFunction::polynomial((0..=degree).map(|_| random_quaternion(rng, 1.0)).collect())
}

/// Complex polynomial coefficients with components uniform in `[-1, 1]`.
pub fn random_complex_coeffs(rng: &mut Rng, degree: usize) -> Vec<Complex64> {
    (0..=degree)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}
