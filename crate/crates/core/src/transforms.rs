//! The reproducing integral, the Bergman–Fueter transform in area form,
//! and the Fueter contour transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::differential::{laplacian_fd, FdScheme};
use crate::error::{Error, Result};
use crate::kernels::{ball_kernel, bergman_fueter_kernel, halfspace_kernel, BallForm, HalfSpaceForm, SINGULARITY_THRESHOLD};
use crate::quadrature::{pairwise_sum, slice_integral, RuleParams};
use crate::quaternion::{Quaternion, UnitImaginary};
use crate::slice::{DomainId, QuaternionMap};

/// Largest `|q|` accepted by the ball transforms.
pub const BALL_TARGET_RADIUS: f64 = 0.9;
/// Smallest `Re q` accepted by the half-space reproducing integral.
pub const HALF_SPACE_TARGET_MARGIN: f64 = 0.1;
/// Smallest `ρ - |q|` accepted by the contour transform.
pub const CONTOUR_MIN_GAP: f64 = 0.05;
/// Radius of the circle used by the arc-length reading of the transform.
pub const ARC_RADIUS: f64 = 1.0 - 1e-9;

/// Rule used to produce a transform value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleInfo {
    Area { n_r: usize, n_theta: usize, extent: Option<f64> },
    Contour { radius: f64, nodes: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformReport {
    pub value: Quaternion,
    pub reference: Quaternion,
    pub abs_error: f64,
    /// `abs_error / max(|reference|, 1)`.
    pub rel_error: f64,
    pub rule: RuleInfo,
}

impl TransformReport {
    pub fn new(value: Quaternion, reference: Quaternion, rule: RuleInfo) -> Self {
        let abs_error = (value - reference).norm();
        TransformReport { value, reference, abs_error, rel_error: abs_error / reference.norm().max(1.0), rule }
    }
}

/// Default area rule of the Bergman–Fueter transform.
pub fn bf_default_params() -> RuleParams {
    RuleParams::new(96, 192)
}

fn area_info(domain: DomainId, params: &RuleParams) -> Result<RuleInfo> {
    let extent = match domain {
        DomainId::UnitBall => None,
        DomainId::HalfSpace => Some(params.half_plane_extent()?),
    };
    Ok(RuleInfo::Area { n_r: params.n_r, n_theta: params.n_theta, extent })
}

fn check_target(domain: DomainId, q: Quaternion) -> Result<()> {
    let ok = match domain {
        DomainId::UnitBall => q.norm() <= BALL_TARGET_RADIUS,
        DomainId::HalfSpace => q.re() >= HALF_SPACE_TARGET_MARGIN,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("target {q} too close to the boundary of {domain:?}")))
    }
}

/// `∫_{Ω_i} 𝒦(q, ζ) f(ζ) dσ(ζ)`, kernel on the left.
pub fn reproduce_value<M>(f: &M, q: Quaternion, domain: DomainId, unit_i: UnitImaginary, params: &RuleParams) -> Result<Quaternion>
where
    M: QuaternionMap + ?Sized,
{
    check_target(domain, q)?;
    let region = params.slice_region(domain, false)?;
    slice_integral(region, unit_i, params, |zeta, _| {
        let k = match domain {
            DomainId::UnitBall => ball_kernel(q, zeta, BallForm::I)?,
            DomainId::HalfSpace => halfspace_kernel(q, zeta, HalfSpaceForm::A)?,
        };
        Ok(k * f.eval(zeta)?)
    })
}

/// Reproducing integral with `f(q)` as reference.
pub fn reproduce<M>(f: &M, q: Quaternion, domain: DomainId, unit_i: UnitImaginary, params: &RuleParams) -> Result<TransformReport>
where
    M: QuaternionMap + ?Sized,
{
    let value = reproduce_value(f, q, domain, unit_i, params)?;
    Ok(TransformReport::new(value, f.eval(q)?, area_info(domain, params)?))
}

/// `∫_{𝔻_i} Δ𝒦(q, r) f(r) dσ(r)` over the unit disk of `ℂ(unit_i)`.
pub fn bergman_fueter_value<M>(f: &M, q: Quaternion, unit_i: UnitImaginary, params: &RuleParams) -> Result<Quaternion>
where
    M: QuaternionMap + ?Sized,
{
    check_target(DomainId::UnitBall, q)?;
    let region = params.slice_region(DomainId::UnitBall, false)?;
    slice_integral(region, unit_i, params, |r, _| Ok(bergman_fueter_kernel(q, r)? * f.eval(r)?))
}

/// Bergman–Fueter transform with the finite-difference Laplacian of `f` as reference.
pub fn bergman_fueter_transform<M>(f: &M, q: Quaternion, unit_i: UnitImaginary, params: &RuleParams) -> Result<TransformReport>
where
    M: QuaternionMap + ?Sized,
{
    let value = bergman_fueter_value(f, q, unit_i, params)?;
    let reference = laplacian_fd(f, q, &FdScheme::laplacian())?;
    Ok(TransformReport::new(value, reference, area_info(DomainId::UnitBall, params)?))
}

/// The same kernel integrated against arc length on a circle of radius
/// [`ARC_RADIUS`]. Kept to show that this reading does not yield `Δf`.
pub fn bergman_fueter_arc_value<M>(f: &M, q: Quaternion, unit_i: UnitImaginary, nodes: usize) -> Result<Quaternion>
where
    M: QuaternionMap + ?Sized,
{
    check_target(DomainId::UnitBall, q)?;
    if nodes < 4 {
        return Err(Error::bad("nodes", "must be at least 4"));
    }
    let dtheta = 2.0 * PI / nodes as f64;
    let terms = (0..nodes)
        .map(|k| {
            let r = unit_i.embed(Complex64::from_polar(ARC_RADIUS, dtheta * k as f64));
            Ok(bergman_fueter_kernel(q, r)? * f.eval(r)? * (ARC_RADIUS * dtheta))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&terms))
}

/// `ℱ(s, q) = -4(s - q̄)(s² - 2Re[q]s + |q|²)⁻²`.
pub fn fueter_kernel(s: Quaternion, q: Quaternion) -> Result<Quaternion> {
    let d = s * s - s * (2.0 * q.re()) + Quaternion::real(q.norm_sq());
    let modulus = d.norm();
    if !(modulus >= SINGULARITY_THRESHOLD) {
        return Err(Error::SingularKernel { modulus });
    }
    let inv = d.inverse()?;
    Ok((s - q.conj()) * inv * inv * -4.0)
}

/// `(1/2π) ∮ ℱ(s, q) ds_i f(s)` on `|s| = ρ` in `ℂ(unit_i)`, `ds_i = -ds·i`,
/// by the trapezoid rule with `nodes` points.
pub fn fueter_contour_value<M>(f: &M, q: Quaternion, unit_i: UnitImaginary, rho: f64, nodes: usize) -> Result<Quaternion>
where
    M: QuaternionMap + ?Sized,
{
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::bad("rho", format!("{rho} not in (0, 1)")));
    }
    if nodes < 4 {
        return Err(Error::bad("nodes", "must be at least 4"));
    }
    let gap = rho - q.norm();
    if !(gap >= CONTOUR_MIN_GAP) {
        return Err(Error::ContourTooClose { rho, gap });
    }
    let i = unit_i.as_quaternion();
    let dtheta = 2.0 * PI / nodes as f64;
    let terms = (0..nodes)
        .map(|k| {
            let s = unit_i.embed(Complex64::from_polar(rho, dtheta * k as f64));
            // s'(θ) = i·s
            let ds_i = -(i * s * i) * dtheta;
            Ok(fueter_kernel(s, q)? * ds_i * f.eval(s)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&terms) * (1.0 / (2.0 * PI)))
}

pub fn fueter_contour_transform<M>(f: &M, q: Quaternion, unit_i: UnitImaginary, rho: f64, nodes: usize) -> Result<TransformReport>
where
    M: QuaternionMap + ?Sized,
{
    let value = fueter_contour_value(f, q, unit_i, rho, nodes)?;
    let reference = laplacian_fd(f, q, &FdScheme::laplacian())?;
    Ok(TransformReport::new(value, reference, RuleInfo::Contour { radius: rho, nodes }))
}

/// `q ↦ ∫ Δ𝒦(q, r) f(r) dσ(r)` as a map, for differentiating the transform.
pub struct BergmanFueterMap<M> {
    pub f: M,
    pub unit_i: UnitImaginary,
    pub params: RuleParams,
}

impl<M: QuaternionMap> QuaternionMap for BergmanFueterMap<M> {
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        bergman_fueter_value(&self.f, q, self.unit_i, &self.params)
    }
    fn domain(&self) -> Option<DomainId> {
        Some(DomainId::UnitBall)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::SliceFunction;

    fn poly(n: usize) -> SliceFunction {
        SliceFunction::monomial(n)
    }

    #[test]
    fn reproduce_examples() {
        let p = RuleParams::new(64, 64);
        let (ball, i) = (DomainId::UnitBall, UnitImaginary::I);
        let r = reproduce(&poly(0), Quaternion::new(0.3, 0.2, 0.0, 0.0), ball, i, &p).unwrap();
        assert!(r.abs_error < 1e-8, "{r:?}");
        let q = Quaternion::new(0.0, 0.0, 0.4, 0.0);
        for n in 1..=5 {
            let r = reproduce(&poly(n), q, ball, i, &p).unwrap();
            assert!(r.abs_error < 1e-7, "n = {n}: {r:?}");
        }
        let qj = SliceFunction::polynomial(vec![Quaternion::ZERO, Quaternion::J]);
        let q = Quaternion::new(0.3, 0.0, 0.0, 0.4);
        let r = reproduce(&qj, q, ball, i, &p).unwrap();
        let expected = Quaternion::real(0.3) * Quaternion::J + Quaternion::K * Quaternion::J * 0.4;
        assert!(r.value.max_abs_diff(expected) < 1e-7);
    }

    #[test]
    fn reproduce_on_half_space() {
        let f = SliceFunction::intrinsic_rational(vec![1.0], vec![1.0, 1.0], 2).unwrap();
        let q = Quaternion::new(1.0, 0.3, 0.0, -0.2);
        let r = reproduce(&f, q, DomainId::HalfSpace, UnitImaginary::J, &RuleParams::new(96, 192)).unwrap();
        assert!(r.rel_error < 1e-6, "{r:?}");
        assert!(reproduce(&f, Quaternion::real(0.05), DomainId::HalfSpace, UnitImaginary::J, &RuleParams::default()).is_err());
    }

    #[test]
    fn bf_examples() {
        let p = bf_default_params();
        let i = UnitImaginary::I;
        let r = bergman_fueter_transform(&poly(1), Quaternion::new(0.1, 0.2, -0.1, 0.3), i, &p).unwrap();
        assert!(r.value.norm() < 1e-6, "{r:?}");
        let r = bergman_fueter_transform(&poly(2), Quaternion::new(0.2, 0.1, 0.0, 0.0), i, &p).unwrap();
        assert!(r.value.max_abs_diff(Quaternion::real(-4.0)) < 1e-4, "{r:?}");
        let r = bergman_fueter_transform(&poly(3), Quaternion::new(0.0, 0.0, 0.3, 0.0), i, &p).unwrap();
        assert!(r.rel_error < 1e-4, "{r:?}");
    }

    #[test]
    fn contour_examples() {
        let i = UnitImaginary::I;
        let v = fueter_contour_value(&poly(1), Quaternion::new(0.0, 0.2, 0.0, 0.0), i, 0.8, 256).unwrap();
        assert!(v.norm() < 1e-8, "{v}");
        let v = fueter_contour_value(&poly(2), Quaternion::new(0.1, 0.0, 0.2, 0.0), i, 0.8, 256).unwrap();
        assert!(v.max_abs_diff(Quaternion::real(-4.0)) < 1e-6, "{v}");
        let err = fueter_contour_value(&poly(2), Quaternion::real(0.78), i, 0.8, 256).unwrap_err();
        assert!(matches!(err, Error::ContourTooClose { .. }));
        assert!(fueter_contour_value(&poly(2), Quaternion::ZERO, i, 1.0, 256).is_err());
    }

    #[test]
    fn contour_converges_spectrally() {
        let f = SliceFunction::polynomial(vec![
            Quaternion::new(0.1, 0.2, 0.0, 0.3),
            Quaternion::new(-0.5, 0.1, 0.2, 0.0),
            Quaternion::new(0.3, 0.0, -0.4, 0.1),
            Quaternion::new(0.2, 0.6, 0.1, -0.2),
        ]);
        let q = Quaternion::new(0.2, -0.1, 0.3, 0.1);
        let u = UnitImaginary::new(1.0, -1.0, 0.5).unwrap();
        let a = fueter_contour_value(&f, q, u, 0.85, 256).unwrap();
        let b = fueter_contour_value(&f, q, u, 0.85, 512).unwrap();
        assert!(a.max_abs_diff(b) < 1e-10);
    }
}
