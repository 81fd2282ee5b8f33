use std::f64::consts::PI;

use rand::{Rng as _, SeedableRng};

use crate::error::{Error, Result};
use crate::quaternion::{slice_decompose, Quaternion, UnitImaginary};
use crate::sampling::{random_in_ball, Rng};
use crate::slice::{DomainId, QuaternionMap};

pub const MIN_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    /// Half-space box `(0, L) × (-L, L)³`.
    pub halfspace_extent: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { samples: 1_000_000, seed: 0, halfspace_extent: 10.0 }
    }
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        McConfig { samples, seed, ..McConfig::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(Error::bad("samples", format!("need at least {MIN_SAMPLES}")));
        }
        if !(self.halfspace_extent > 0.0 && self.halfspace_extent.is_finite()) {
            return Err(Error::bad("halfspace_extent", "must be positive and finite"));
        }
        Ok(())
    }

    /// 4-D volume of the sampled region.
    pub fn volume(&self, domain: DomainId) -> f64 {
        match domain {
            DomainId::UnitBall => 0.5 * PI * PI,
            DomainId::HalfSpace => {
                let l = self.halfspace_extent;
                l * 8.0 * l * l * l
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// Running mean and variance (Welford).
#[derive(Debug, Clone, Copy, Default)]
pub struct Welford {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    /// `volume · mean` with its standard error.
    pub fn scaled(&self, volume: f64) -> McEstimate {
        McEstimate {
            estimate: volume * self.mean,
            stderr: volume * (self.variance() / self.n as f64).sqrt(),
            samples: self.n,
        }
    }
}

/// The deterministic stream of uniform points used by every estimator.
pub fn uniform_points(domain: DomainId, config: &McConfig) -> Result<impl Iterator<Item = Quaternion>> {
    config.validate()?;
    let mut rng = Rng::seed_from_u64(config.seed);
    let l = config.halfspace_extent;
    Ok((0..config.samples).map(move |_| match domain {
        DomainId::UnitBall => random_in_ball(&mut rng, 1.0),
        DomainId::HalfSpace => Quaternion::new(
            rng.random_range(0.0..l),
            rng.random_range(-l..l),
            rng.random_range(-l..l),
            rng.random_range(-l..l),
        ),
    }))
}

/// `∫ g dμ` over the ball or the truncated half-space box.
pub fn volume_integral_mc<G>(mut g: G, domain: DomainId, config: &McConfig) -> Result<McEstimate>
where
    G: FnMut(Quaternion) -> Result<f64>,
{
    let mut acc = Welford::default();
    for q in uniform_points(domain, config)? {
        let v = g(q)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { x: q.re(), y: q.im_norm() });
        }
        acc.push(v);
    }
    Ok(acc.scaled(config.volume(domain)))
}

/// `∫ |f|² dμ`.
pub fn volume_norm_sq_mc<F>(f: &F, domain: DomainId, config: &McConfig) -> Result<McEstimate>
where
    F: QuaternionMap + ?Sized,
{
    volume_integral_mc(|q| Ok(f.eval(q)?.norm_sq()), domain, config)
}

/// `∫ |f(q₀ + |q̲|·i)|² dμ`: `f` read on the single slice `ℂ(unit_i)`.
pub fn slice_embedded_norm_sq_mc<F>(f: &F, unit_i: UnitImaginary, domain: DomainId, config: &McConfig) -> Result<McEstimate>
where
    F: QuaternionMap + ?Sized,
{
    volume_integral_mc(|q| Ok(f.eval(unit_i.embed(slice_decompose(q).complex()))?.norm_sq()), domain, config)
}
