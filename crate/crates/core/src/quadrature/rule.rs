use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Length scale at which the half-plane rules start clustering nodes.
pub const HALF_PLANE_SCALE: f64 = 1.0;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::bad("n", "need at least one Gauss–Legendre node"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for k in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (k as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Planar integration region in slice coordinates `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// Disk of the given radius centered at the origin.
    Disk { radius: f64 },
    /// Upper half (`y > 0`) of the disk.
    HalfDisk { radius: f64 },
    /// Truncated right half-plane `(0, R) × (-R, R)`.
    HalfPlane { extent: f64 },
    /// Truncated quadrant `(0, R) × (0, R)`.
    QuarterPlane { extent: f64 },
}

impl Region {
    pub fn area(self) -> f64 {
        match self {
            Region::Disk { radius } => PI * radius * radius,
            Region::HalfDisk { radius } => 0.5 * PI * radius * radius,
            Region::HalfPlane { extent } => 2.0 * extent * extent,
            Region::QuarterPlane { extent } => extent * extent,
        }
    }
}

/// Nodes `(x, y)` and weights of a tensor rule on a [`Region`].
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub region: Region,
    pub nodes: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
    pub n_r: usize,
    pub n_theta: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        pairwise_sum_f64(&self.weights)
    }
}

/// Gauss–Legendre on `(0, R)` after `x = s(e^{αt} - 1)`, `e^α = 1 + R/s`,
/// which packs nodes geometrically toward zero.
fn compressed_half_line(n: usize, extent: f64) -> Result<Vec<(f64, f64)>> {
    let (t, w) = gauss_legendre(n)?;
    let s = HALF_PLANE_SCALE;
    let alpha = (1.0 + extent / s).ln();
    Ok(t.iter()
        .zip(&w)
        .map(|(&t, &w)| {
            let u = 0.5 * (t + 1.0);
            let e = (alpha * u).exp();
            (s * (e - 1.0), 0.5 * w * s * alpha * e)
        })
        .collect())
}

/// Polar (disk) or compressed Cartesian (half-plane) tensor rule.
///
/// Polar rules take Gauss–Legendre in the radius, weighted by `r`, and
/// equispaced angles offset by half a step, so no node lies on `y = 0`.
pub fn build_rule(region: Region, n_r: usize, n_theta: usize) -> Result<QuadratureRule> {
    if n_r < 1 {
        return Err(Error::bad("n_r", "must be at least 1"));
    }
    if n_theta < 4 {
        return Err(Error::bad("n_theta", "must be at least 4"));
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    match region {
        Region::Disk { radius } | Region::HalfDisk { radius } => {
            if !(radius > 0.0 && radius <= 1.0) {
                return Err(Error::bad("radius", format!("{radius} not in (0, 1]")));
            }
            let span = if matches!(region, Region::Disk { .. }) { 2.0 * PI } else { PI };
            let (t, w) = gauss_legendre(n_r)?;
            let dtheta = span / n_theta as f64;
            nodes.reserve(n_r * n_theta);
            for (&t, &w) in t.iter().zip(&w) {
                let r = 0.5 * radius * (t + 1.0);
                let wr = 0.5 * radius * w * r;
                for m in 0..n_theta {
                    let theta = dtheta * (m as f64 + 0.5);
                    nodes.push((r * theta.cos(), r * theta.sin()));
                    weights.push(wr * dtheta);
                }
            }
        }
        Region::HalfPlane { extent } | Region::QuarterPlane { extent } => {
            if !(extent > 0.0 && extent.is_finite()) {
                return Err(Error::bad("extent", format!("{extent} must be positive and finite")));
            }
            let xs = compressed_half_line(n_r, extent)?;
            let ys: Vec<(f64, f64)> = if matches!(region, Region::HalfPlane { .. }) {
                let half = compressed_half_line(n_theta.div_ceil(2), extent)?;
                half.iter().rev().map(|&(y, w)| (-y, w)).chain(half.iter().copied()).collect()
            } else {
                compressed_half_line(n_theta, extent)?
            };
            for &(x, wx) in &xs {
                for &(y, wy) in &ys {
                    nodes.push((x, y));
                    weights.push(wx * wy);
                }
            }
        }
    }
    Ok(QuadratureRule { region, nodes, weights, n_r, n_theta })
}

const PAIRWISE_BLOCK: usize = 8;

/// Pairwise (cascade) summation in a fixed, input-order-determined tree.
pub fn pairwise_sum(xs: &[Quaternion]) -> Quaternion {
    if xs.len() <= PAIRWISE_BLOCK {
        return xs.iter().copied().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_sum_f64(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BLOCK {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_f64(&xs[..mid]) + pairwise_sum_f64(&xs[mid..])
}

/// `Σ wₖ f(xₖ, yₖ)`. Node values may be computed in parallel; the reduction
/// order depends only on the rule, so results are bit-reproducible.
pub fn integrate_slice<F>(rule: &QuadratureRule, f: F) -> Result<Quaternion>
where
    F: Fn(f64, f64) -> Result<Quaternion> + Sync,
{
    let values: Vec<Result<Quaternion>> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&(x, y), &w)| {
            let v = f(x, y)?;
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { x, y });
            }
            Ok(v * w)
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn integrate_complex(rule: &QuadratureRule, f: impl Fn(Complex64) -> Complex64 + Sync) -> Complex64 {
        let v = integrate_slice(rule, |x, y| {
            let z = f(Complex64::new(x, y));
            Ok(Quaternion::new(z.re, z.im, 0.0, 0.0))
        })
        .unwrap();
        Complex64::new(v.w, v.x)
    }

    #[test]
    fn gauss_legendre_exactness() {
        for n in [1, 2, 3, 5, 8, 17, 64, 200] {
            let (x, w) = gauss_legendre(n).unwrap();
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
            for deg in 0..(2 * n).min(40) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert!((approx - exact).abs() < 1e-13, "n = {n}, deg = {deg}");
            }
        }
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn disk_constants_are_exact_on_small_rule() {
        let rule = build_rule(Region::Disk { radius: 1.0 }, 2, 8).unwrap();
        assert_eq!(rule.len(), 16);
        assert!((integrate_complex(&rule, |_| Complex64::new(1.0, 0.0)).re - PI).abs() < 1e-15);
        assert!(integrate_complex(&rule, |z| z).norm() < 1e-15);
    }

    #[test]
    fn disk_second_moment() {
        let rule = build_rule(Region::Disk { radius: 1.0 }, 16, 64).unwrap();
        let v = integrate_complex(&rule, |z| Complex64::new(z.norm_sqr(), 0.0));
        assert!((v.re - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_area() {
        for region in [
            Region::Disk { radius: 1.0 },
            Region::Disk { radius: 0.37 },
            Region::HalfDisk { radius: 1.0 },
            Region::HalfPlane { extent: 50.0 },
            Region::QuarterPlane { extent: 1.25e4 },
        ] {
            let rule = build_rule(region, 48, 64).unwrap();
            let rel = (rule.weight_sum() - region.area()).abs() / region.area();
            assert!(rel < 1e-10, "{region:?}: {rel:e}");
            assert!(rule.nodes.iter().all(|&(_, y)| y != 0.0));
        }
    }

    #[test]
    fn half_plane_resolves_decaying_integrand() {
        // ∫_{Re z>0} |1+z|^{-4} dA = ∫_1^∞ (π/2) u^{-3} du = π/4
        let rule = build_rule(Region::HalfPlane { extent: 1.25e4 }, 96, 192).unwrap();
        let v = integrate_complex(&rule, |z| Complex64::new(1.0 / (1.0 + z).norm_sqr().powi(2), 0.0));
        assert!((v.re - PI / 4.0).abs() < 1e-8, "{}", v.re - PI / 4.0);
    }

    #[test]
    fn bad_parameters() {
        assert!(build_rule(Region::Disk { radius: 1.0 }, 0, 8).is_err());
        assert!(build_rule(Region::Disk { radius: 1.0 }, 4, 3).is_err());
        assert!(build_rule(Region::Disk { radius: 1.5 }, 4, 8).is_err());
        assert!(build_rule(Region::HalfPlane { extent: -1.0 }, 4, 8).is_err());
    }

    #[test]
    fn non_finite_samples_are_reported() {
        let rule = build_rule(Region::Disk { radius: 1.0 }, 4, 8).unwrap();
        let err = integrate_slice(&rule, |x, _| Ok(Quaternion::real(if x > 0.0 { f64::NAN } else { 1.0 })));
        assert!(matches!(err, Err(Error::NonFiniteSample { .. })));
    }

    #[test]
    fn pairwise_sum_is_order_fixed() {
        let xs: Vec<Quaternion> = (0..1000).map(|k| Quaternion::real(1.0 / (k as f64 + 1.0))).collect();
        assert_eq!(pairwise_sum(&xs), pairwise_sum(&xs));
        let seq: f64 = xs.iter().map(|q| q.w).sum();
        assert!((pairwise_sum(&xs).w - seq).abs() < 1e-12);
    }
}
