use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::rule::{build_rule, integrate_slice, Region};
use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, UnitImaginary};
use crate::slice::{DomainId, QuaternionMap};

/// Angular measure of the imaginary directions, `∫ sin δ dδ dφ` over `𝕊²`.
pub const LAMBDA: f64 = 4.0 * PI;

/// Decay exponent `p` assumed for `|integrand| ~ |q|^{-p}` on the half-space.
pub const DEFAULT_DECAY_EXPONENT: f64 = 4.0;
/// Target bound on the neglected half-plane tail.
pub const TAIL_TOLERANCE: f64 = 1e-8;
/// Smallest half-plane truncation ever used.
pub const MIN_HALF_PLANE_EXTENT: f64 = 50.0;
/// Relative change under refinement that flags a divergent integral.
pub const DIVERGENCE_RATIO: f64 = 0.1;

/// Weight applied to the slice measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightId {
    None,
    /// `ρ(z) = Im(z)²`.
    Rho,
    /// `δ(q) = 1/|q̲|²`, read on a slice as `1/y²`.
    Delta,
}

impl WeightId {
    pub fn at(self, y: f64) -> f64 {
        match self {
            WeightId::None => 1.0,
            WeightId::Rho => y * y,
            WeightId::Delta => 1.0 / (y * y),
        }
    }
}

impl fmt::Display for WeightId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightId::None => "none",
            WeightId::Rho => "rho",
            WeightId::Delta => "delta",
        })
    }
}

impl FromStr for WeightId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(WeightId::None),
            "rho" => Ok(WeightId::Rho),
            "delta" => Ok(WeightId::Delta),
            other => Err(Error::bad("weight", format!("unknown weight `{other}`"))),
        }
    }
}

/// Half-plane truncation `R` with `∫_{|z|>R} |z|^{-p} dA = π R^{2-p}/(p-2)`
/// below [`TAIL_TOLERANCE`], never smaller than [`MIN_HALF_PLANE_EXTENT`].
pub fn truncation_extent(decay_exponent: f64) -> Result<f64> {
    if !(decay_exponent > 2.0 && decay_exponent.is_finite()) {
        return Err(Error::bad("decay_exponent", "must exceed 2 for a finite tail"));
    }
    let p = decay_exponent - 2.0;
    let r = (PI / (p * TAIL_TOLERANCE)).powf(1.0 / p);
    Ok(r.max(MIN_HALF_PLANE_EXTENT))
}

/// Resolution and truncation of the slice rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleParams {
    pub n_r: usize,
    pub n_theta: usize,
    /// Half-plane truncation; derived from `decay_exponent` when absent.
    pub extent: Option<f64>,
    pub decay_exponent: f64,
    /// Also integrate on the doubled rule and fail on a large change.
    pub divergence_check: bool,
}

impl Default for RuleParams {
    fn default() -> Self {
        RuleParams {
            n_r: 64,
            n_theta: 128,
            extent: None,
            decay_exponent: DEFAULT_DECAY_EXPONENT,
            divergence_check: false,
        }
    }
}

impl RuleParams {
    pub fn new(n_r: usize, n_theta: usize) -> Self {
        RuleParams { n_r, n_theta, ..RuleParams::default() }
    }

    pub fn with_extent(mut self, extent: f64) -> Self {
        self.extent = Some(extent);
        self
    }

    pub fn with_divergence_check(mut self, on: bool) -> Self {
        self.divergence_check = on;
        self
    }

    pub fn refined(self) -> Self {
        RuleParams { n_r: 2 * self.n_r, n_theta: 2 * self.n_theta, ..self }
    }

    pub fn half_plane_extent(&self) -> Result<f64> {
        match self.extent {
            Some(r) if r > 0.0 && r.is_finite() => Ok(r),
            Some(r) => Err(Error::bad("extent", format!("{r} must be positive and finite"))),
            None => truncation_extent(self.decay_exponent),
        }
    }

    /// The planar region of `domain` (its upper half when `half`).
    pub fn slice_region(&self, domain: DomainId, half: bool) -> Result<Region> {
        Ok(match (domain, half) {
            (DomainId::UnitBall, false) => Region::Disk { radius: 1.0 },
            (DomainId::UnitBall, true) => Region::HalfDisk { radius: 1.0 },
            (DomainId::HalfSpace, false) => Region::HalfPlane { extent: self.half_plane_extent()? },
            (DomainId::HalfSpace, true) => Region::QuarterPlane { extent: self.half_plane_extent()? },
        })
    }
}

/// `∫ g(x + y·i, y) dσ` over `region` embedded in `ℂ(unit_i)`, with the
/// optional refinement check of `params`.
pub fn slice_integral<F>(region: Region, unit_i: UnitImaginary, params: &RuleParams, g: F) -> Result<Quaternion>
where
    F: Fn(Quaternion, f64) -> Result<Quaternion> + Sync,
{
    let run = |p: &RuleParams| {
        let rule = build_rule(region, p.n_r, p.n_theta)?;
        integrate_slice(&rule, |x, y| g(unit_i.embed(num_complex::Complex64::new(x, y)), y))
    };
    let coarse = run(params)?;
    if params.divergence_check {
        let fine = run(&params.refined())?;
        let scale = coarse.norm().max(fine.norm());
        if (fine - coarse).norm() > DIVERGENCE_RATIO * scale {
            return Err(Error::DivergenceSuspected { coarse: coarse.norm(), fine: fine.norm() });
        }
    }
    Ok(coarse)
}

/// `⟨f, g⟩ = ∫ conj(f)·g·w dσ` over the slice `ℂ(unit_i)` of `domain`, or over
/// its upper half when `half` is set.
pub fn inner_product<F, G>(
    f: &F,
    g: &G,
    domain: DomainId,
    unit_i: UnitImaginary,
    weight: WeightId,
    half: bool,
    params: &RuleParams,
) -> Result<Quaternion>
where
    F: QuaternionMap + ?Sized,
    G: QuaternionMap + ?Sized,
{
    let region = params.slice_region(domain, half)?;
    slice_integral(region, unit_i, params, |q, y| Ok(f.eval(q)?.conj() * g.eval(q)? * weight.at(y)))
}

/// `∫ |f|² w dσ` over `region` in `ℂ(unit_i)`.
pub fn norm_sq_on<F>(f: &F, region: Region, unit_i: UnitImaginary, weight: WeightId, params: &RuleParams) -> Result<f64>
where
    F: QuaternionMap + ?Sized,
{
    slice_integral(region, unit_i, params, |q, y| Ok(Quaternion::real(f.eval(q)?.norm_sq() * weight.at(y))))
        .map(|v| v.w)
}

/// Real part of `⟨f, f⟩`.
pub fn slice_norm_sq<F>(
    f: &F,
    domain: DomainId,
    unit_i: UnitImaginary,
    weight: WeightId,
    half: bool,
    params: &RuleParams,
) -> Result<f64>
where
    F: QuaternionMap + ?Sized,
{
    norm_sq_on(f, params.slice_region(domain, half)?, unit_i, weight, params)
}

pub fn slice_norm<F>(
    f: &F,
    domain: DomainId,
    unit_i: UnitImaginary,
    weight: WeightId,
    half: bool,
    params: &RuleParams,
) -> Result<f64>
where
    F: QuaternionMap + ?Sized,
{
    slice_norm_sq(f, domain, unit_i, weight, half, params).map(f64::sqrt)
}

/// `∫ |f|² y² dσ` over the whole slice.
pub fn weighted_slice_norm_sq<F>(f: &F, domain: DomainId, unit_i: UnitImaginary, params: &RuleParams) -> Result<f64>
where
    F: QuaternionMap + ?Sized,
{
    slice_norm_sq(f, domain, unit_i, WeightId::Rho, false, params)
}

/// `4π ∫_{Ω⁺} |f|² y² dσ`: the 4-D integral of `|f(q₀ + |q̲|·i)|²` written in
/// coordinates `(x, |q̲|, direction)`, where `dμ = y² dx dy dS`.
pub fn volume_norm_sq_reduced<F>(f: &F, domain: DomainId, unit_i: UnitImaginary, params: &RuleParams) -> Result<f64>
where
    F: QuaternionMap + ?Sized,
{
    slice_norm_sq(f, domain, unit_i, WeightId::Rho, true, params).map(|v| LAMBDA * v)
}

/// `4π ∫_{Ω⁺} |f|² dσ`, the reduced form of `∫ |f|² δ dμ`.
pub fn delta_volume_norm_sq_reduced<F>(f: &F, domain: DomainId, unit_i: UnitImaginary, params: &RuleParams) -> Result<f64>
where
    F: QuaternionMap + ?Sized,
{
    slice_norm_sq(f, domain, unit_i, WeightId::None, true, params).map(|v| LAMBDA * v)
}
