//! Acceptance checks, runnable from tests and from the command line.
//!
//! Each criterion returns a [`CheckOutcome`] made of individual
//! measurements against bounds, plus free-form notes for quantities that
//! are reported rather than asserted.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng as _, SeedableRng};

use crate::differential::{cauchy_fueter_fd, laplacian_fd, FdOrder, FdScheme};
use crate::error::{Error, Result};
use crate::kernels::{ball_kernel, bergman_fueter_kernel, disk_kernel, halfspace_kernel, q_factor, BallForm, HalfSpaceForm, KernelId};
use crate::quadrature::{
    inner_product, norm_sq_on, slice_embedded_norm_sq_mc, slice_norm_sq, volume_norm_sq_mc, volume_norm_sq_reduced,
    weighted_slice_norm_sq, McConfig, Region, RuleParams, WeightId,
};
use crate::quaternion::{Quaternion, UnitImaginary};
use crate::sampling::{random_complex_coeffs, random_in_ball, random_in_disk, random_orthogonal, random_polynomial, random_unit, Rng};
use crate::slice::{
    four_component_decompose, representation_formula, split, DomainId, FnMap, Holo, SliceFunction,
};
use crate::transforms::{
    bergman_fueter_arc_value, bergman_fueter_transform, bf_default_params, fueter_contour_value, reproduce,
    BergmanFueterMap,
};

pub const FORM_AGREEMENT_TOL: f64 = 1e-11;
pub const SLICE_REDUCTION_TOL: f64 = 1e-12;
pub const REPRODUCE_TOL: f64 = 1e-7;
pub const SLICE_INDEPENDENCE_TOL: f64 = 1e-8;
pub const BF_KERNEL_TOL: f64 = 1e-5;
pub const BF_TRANSFORM_TOL: f64 = 1e-4;
pub const CONTOUR_AGREEMENT_TOL: f64 = 1e-3;
pub const FUETER_RESIDUAL_TOL: f64 = 1e-3;
pub const SLICE_COMPARISON_SLACK: f64 = 1e-9;
pub const MC_SIGMAS: f64 = 3.0;
pub const DIVERGENCE_GROWTH: f64 = 5.0;
pub const CAUCHY_TOL: f64 = 1e-4;
pub const BALL_VOLUME_TOL: f64 = 1e-6;
pub const INTRINSIC_PARTS_TOL: f64 = 1e-13;
pub const HALF_SLICE_TOL: f64 = 1e-9;
pub const FOUR_COMPONENT_TOL: f64 = 1e-11;
pub const REPRESENTATION_TOL: f64 = 1e-11;

/// Direction of a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    pub bound: f64,
    pub kind: Bound,
}

impl Measurement {
    pub fn passed(&self) -> bool {
        match self.kind {
            Bound::AtMost => self.value <= self.bound,
            Bound::AtLeast => self.value >= self.bound,
        }
    }
}

impl fmt::Display for Measurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        write!(f, "{} {:.3e} {op} {:.1e}", self.label, self.value, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub measurements: Vec<Measurement>,
    pub notes: Vec<String>,
    pub error: Option<String>,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.measurements.is_empty() && self.measurements.iter().all(Measurement::passed)
    }

    /// One-line report.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let body = match &self.error {
            Some(e) => format!("error: {e}"),
            None => self.measurements.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        };
        format!("[{status}] {:>2} {} ({:.1}s): {body}", self.id, self.name, self.seconds)
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.line())?;
        for n in &self.notes {
            writeln!(f, "       note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Kernels,
    Transforms,
    Norms,
    Schwarz,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
            Suite::Kernels => &[1, 2, 4],
            Suite::Transforms => &[3, 5, 6],
            Suite::Norms => &[7, 8],
            Suite::Schwarz => &[9, 10],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "kernels" => Ok(Suite::Kernels),
            "transforms" => Ok(Suite::Transforms),
            "norms" => Ok(Suite::Norms),
            "schwarz" => Ok(Suite::Schwarz),
            other => Err(Error::bad("suite", format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Multiplies every upper-bound tolerance.
    pub tol_scale: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { tol_scale: 1.0, seed: 20_240_601 }
    }
}

impl VerifyConfig {
    fn rng(&self, stream: u64) -> Rng {
        Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(stream))
    }
}

/// Collects measurements for one criterion.
struct Report {
    cfg: VerifyConfig,
    measurements: Vec<Measurement>,
    notes: Vec<String>,
}

impl Report {
    fn new(cfg: &VerifyConfig) -> Self {
        Report { cfg: *cfg, measurements: Vec::new(), notes: Vec::new() }
    }

    fn at_most(&mut self, label: impl Into<String>, value: f64, tol: f64) {
        self.measurements.push(Measurement {
            label: label.into(),
            value: if value.is_nan() { f64::INFINITY } else { value },
            bound: tol * self.cfg.tol_scale,
            kind: Bound::AtMost,
        });
    }

    fn at_least(&mut self, label: impl Into<String>, value: f64, bound: f64) {
        self.measurements.push(Measurement {
            label: label.into(),
            value: if value.is_nan() { f64::NEG_INFINITY } else { value },
            bound,
            kind: Bound::AtLeast,
        });
    }

    /// Records a yes/no condition as `0 <= 0` or `1 <= 0`.
    fn holds(&mut self, label: impl Into<String>, ok: bool) {
        self.measurements.push(Measurement {
            label: label.into(),
            value: if ok { 0.0 } else { 1.0 },
            bound: 0.0,
            kind: Bound::AtMost,
        });
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn run_check(id: u8, name: &'static str, cfg: &VerifyConfig, body: impl FnOnce(&mut Report) -> Result<()>) -> CheckOutcome {
    let start = Instant::now();
    let mut report = Report::new(cfg);
    let error = body(&mut report).err().map(|e| format!("{} ({})", e, e.kind()));
    CheckOutcome {
        id,
        name,
        measurements: report.measurements,
        notes: report.notes,
        error,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn rel(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn rel1(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn random_half_space(rng: &mut Rng) -> Quaternion {
    Quaternion::new(
        rng.random_range(0.2..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
    )
}

/// Ball forms I/II and half-space forms A/B on 500 random pairs each.
pub fn form_agreement(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(1, "kernel form agreement", cfg, |r| {
        let mut rng = cfg.rng(1);
        let (mut ball, mut half) = (0.0f64, 0.0f64);
        for _ in 0..500 {
            let q = random_in_ball(&mut rng, 0.8);
            let p = random_in_ball(&mut rng, 0.8);
            ball = ball.max(rel(ball_kernel(q, p, BallForm::I)?, ball_kernel(q, p, BallForm::II)?));
            let q = random_half_space(&mut rng);
            let p = random_half_space(&mut rng);
            half = half.max(rel(halfspace_kernel(q, p, HalfSpaceForm::A)?, halfspace_kernel(q, p, HalfSpaceForm::B)?));
        }
        r.at_most("ball I/II rel", ball, FORM_AGREEMENT_TOL);
        r.at_most("half-space A/B rel", half, FORM_AGREEMENT_TOL);
        Ok(())
    })
}

/// Same-slice pairs reduce to the embedded disk kernel.
pub fn slice_reduction(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(2, "slice reduction to the disk kernel", cfg, |r| {
        let mut rng = cfg.rng(2);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let u = random_unit(&mut rng);
            let z = random_in_disk(&mut rng, 0.9);
            let w = random_in_disk(&mut rng, 0.9);
            let planar = u.embed(disk_kernel(z, w)?);
            for form in [BallForm::I, BallForm::II] {
                worst = worst.max(rel1(ball_kernel(u.embed(z), u.embed(w), form)?, planar));
            }
        }
        r.at_most("max error", worst, SLICE_REDUCTION_TOL);
        Ok(())
    })
}

fn reproduce_family() -> Result<Vec<(&'static str, SliceFunction)>> {
    Ok(vec![
        ("1", SliceFunction::monomial(0)),
        ("q", SliceFunction::monomial(1)),
        ("q^2", SliceFunction::monomial(2)),
        ("q^3", SliceFunction::monomial(3)),
        ("q^4", SliceFunction::monomial(4)),
        ("q*j", SliceFunction::polynomial(vec![Quaternion::ZERO, Quaternion::J])),
        ("1/(1-q/2)", SliceFunction::intrinsic_rational(vec![1.0], vec![1.0, -0.5], 1)?),
    ])
}

/// Reproducing integral on the slice `ℂ(ı)` and on a random slice.
pub fn reproducing_property(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(3, "reproducing property", cfg, |r| {
        let mut rng = cfg.rng(3);
        let params = RuleParams::new(64, 128);
        let targets: Vec<Quaternion> = (0..10).map(|_| random_in_ball(&mut rng, 0.6)).collect();
        let other = random_unit(&mut rng);
        let (mut worst, mut spread) = (0.0f64, 0.0f64);
        for (_, f) in reproduce_family()? {
            for &q in &targets {
                let a = reproduce(&f, q, DomainId::UnitBall, UnitImaginary::I, &params)?;
                let b = reproduce(&f, q, DomainId::UnitBall, other, &params)?;
                worst = worst.max(a.rel_error).max(b.rel_error);
                spread = spread.max((a.value - b.value).norm());
            }
        }
        r.at_most("max rel_error", worst, REPRODUCE_TOL);
        r.at_most("slice change", spread, SLICE_INDEPENDENCE_TOL);
        Ok(())
    })
}

/// `-(4/π)[𝒬 + 2c·𝒦]𝒬 r̄²`, the compact form with a free factor on the `𝒦` term.
fn compact_form(q: Quaternion, p: Quaternion, c: f64) -> Result<Quaternion> {
    let qf = q_factor(q, p)?;
    let k = ball_kernel(q, p, BallForm::I)?;
    let pb = p.conj();
    Ok((qf + k * (2.0 * c)) * qf * pb * pb * (-4.0 / PI))
}

/// Closed-form Laplacian of the ball kernel against its finite-difference value.
pub fn bergman_fueter_closed_form(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(4, "Bergman-Fueter closed form", cfg, |r| {
        let mut rng = cfg.rng(4);
        let scheme = FdScheme::new(5e-3, FdOrder::Four)?;
        let (mut worst, mut printed, mut corrected) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..30 {
            let q = random_in_ball(&mut rng, 0.5);
            let p = random_in_ball(&mut rng, 0.5);
            let section = FnMap::on(DomainId::UnitBall, move |x| ball_kernel(x, p, BallForm::I));
            let fd = laplacian_fd(&section, q, &scheme)?;
            worst = worst.max(rel(bergman_fueter_kernel(q, p)?, fd));
            printed = printed.max(rel(compact_form(q, p, 1.0)?, fd));
            corrected = corrected.max(rel(compact_form(q, p, PI)?, fd));
        }
        r.at_most("closed form vs FD rel", worst, BF_KERNEL_TOL);
        r.note(format!(
            "compact form with 2𝒦 in the bracket: max rel deviation from FD {printed:.3e}; with 2π𝒦: {corrected:.3e}"
        ));
        Ok(())
    })
}

/// Area transform against the FD Laplacian, and against the contour transform.
pub fn bf_transform(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(5, "Bergman-Fueter transform", cfg, |r| {
        let mut rng = cfg.rng(5);
        let params = bf_default_params();
        let points: Vec<Quaternion> = (0..5).map(|_| random_in_ball(&mut rng, 0.6)).collect();
        let (mut worst, mut contour) = (0.0f64, 0.0f64);
        for n in 1..=3 {
            let f = SliceFunction::monomial(n);
            for &q in &points {
                let rep = bergman_fueter_transform(&f, q, UnitImaginary::I, &params)?;
                worst = worst.max(rep.rel_error);
                let c = fueter_contour_value(&f, q, UnitImaginary::I, 0.8, 256)?;
                contour = contour.max(rel1(c, rep.value));
            }
        }
        r.at_most("area vs FD rel", worst, BF_TRANSFORM_TOL);
        r.at_most("contour vs area rel", contour, CONTOUR_AGREEMENT_TOL);
        let f = SliceFunction::monomial(2);
        let arc = bergman_fueter_arc_value(&f, points[0], UnitImaginary::I, 1024)?;
        r.note(format!(
            "arc-length reading on |r| = 1 gives {arc:.6} for Δq² = -4 at {:.4} (deviation {:.3e})",
            points[0],
            (arc - Quaternion::real(-4.0)).norm()
        ));
        Ok(())
    })
}

/// Cauchy–Fueter residual of the transform of a non-intrinsic cubic on a 3³ grid.
pub fn fueter_regularity(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(6, "Fueter regularity of the transform", cfg, |r| {
        let mut rng = cfg.rng(6);
        let f = random_polynomial(&mut rng, 3);
        let map = BergmanFueterMap { f: &f, unit_i: UnitImaginary::I, params: bf_default_params() };
        let scheme = FdScheme::first_derivative();
        let grid = [-0.2, 0.0, 0.2];
        let mut worst = 0.0f64;
        for &a in &grid {
            for &b in &grid {
                for &c in &grid {
                    let q = Quaternion::new(a, b, c, 0.1);
                    worst = worst.max(cauchy_fueter_fd(&map, q, &scheme)?.norm());
                }
            }
        }
        r.at_most("max residual", worst, FUETER_RESIDUAL_TOL);
        Ok(())
    })
}

/// Factor-2 comparison between slices and factor-4 comparison with the volume norm.
pub fn norm_equivalences(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(7, "norm equivalences", cfg, |r| {
        let mut rng = cfg.rng(7);
        let params = RuleParams::default();
        let ball = DomainId::UnitBall;
        let mut slice_gap = f64::INFINITY;
        let (mut lower_gap, mut upper_gap, mut lambda_dev) = (f64::INFINITY, f64::INFINITY, 0.0f64);
        let (mut lo_ratio, mut hi_ratio) = (f64::INFINITY, 0.0f64);
        for n in 0..10 {
            let degree = rng.random_range(1..=6);
            let f = random_polynomial(&mut rng, degree);
            let i = random_unit(&mut rng);
            let j = random_unit(&mut rng);
            let ni = slice_norm_sq(&f, ball, i, WeightId::None, false, &params)?;
            let nj = slice_norm_sq(&f, ball, j, WeightId::None, false, &params)?;
            slice_gap = slice_gap.min(2.0 * nj + SLICE_COMPARISON_SLACK - ni).min(2.0 * ni + SLICE_COMPARISON_SLACK - nj);

            let mc = McConfig::new(1_000_000, cfg.seed.wrapping_add(100 + n));
            let full = volume_norm_sq_mc(&f, ball, &mc)?;
            let one = slice_embedded_norm_sq_mc(&f, i, ball, &McConfig { seed: mc.seed + 1000, ..mc })?;
            let reduced = volume_norm_sq_reduced(&f, ball, i, &params)?;
            let sigma = (full.stderr.powi(2) + one.stderr.powi(2)).sqrt();
            // ¼·B ≤ A ≤ 4·B up to MC noise, with B read on one slice
            lower_gap = lower_gap.min((full.estimate - 0.25 * one.estimate + MC_SIGMAS * sigma) / sigma.max(1e-300));
            upper_gap = upper_gap.min((4.0 * one.estimate - full.estimate + MC_SIGMAS * sigma) / sigma.max(1e-300));
            // the deterministic reduction and the MC estimate of B measure the same integral
            lambda_dev = lambda_dev.max((reduced - one.estimate).abs() / one.stderr);
            lo_ratio = lo_ratio.min(full.estimate / reduced);
            hi_ratio = hi_ratio.max(full.estimate / reduced);
        }
        r.at_least("slice factor-2 margin", slice_gap, 0.0);
        r.at_least("volume lower margin (sigma)", lower_gap, 0.0);
        r.at_least("volume upper margin (sigma)", upper_gap, 0.0);
        r.at_most("reduced vs MC (sigma)", lambda_dev, MC_SIGMAS);
        r.note(format!("volume / reduced slice norm ranged over [{lo_ratio:.3}, {hi_ratio:.3}]"));
        Ok(())
    })
}

/// Rule used on the disk of radius `1 - 2^{-k}` for `1/(1 - q)`: enough
/// angular nodes to resolve the pole at distance `2^{-k}`.
fn exhaustion_params(k: u32) -> RuleParams {
    let scale = f64::from(1u32 << k);
    RuleParams::new(32 + (4.0 * scale.sqrt()) as usize, 64 + 16 * (1usize << k))
}

/// Rule of refinement level `m` on the full unit disk.
fn refinement_params(m: usize) -> RuleParams {
    let n_r = 8 * m;
    RuleParams::new(n_r, 4 * n_r * n_r)
}

/// Unweighted divergence versus weighted convergence for `1/(1 - q)`.
pub fn weighted_separation(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(8, "weighted-space separation", cfg, |r| {
        let f = SliceFunction::intrinsic_rational(vec![1.0], vec![1.0, -1.0], 1)?;
        let (ball, i) = (DomainId::UnitBall, UnitImaginary::I);

        let mut plain = Vec::new();
        let mut exhaust_w = Vec::new();
        let mut exact_dev = 0.0f64;
        for k in 1..=12u32 {
            let radius = 1.0 - f64::from(1u32 << k).recip();
            let p = exhaustion_params(k);
            let v = norm_sq_on(&f, Region::Disk { radius }, i, WeightId::None, &p)?;
            // ∫_{|z|<ρ} |1-z|^{-2} dσ = -π ln(1-ρ²)
            let exact = -PI * (1.0 - radius * radius).ln();
            exact_dev = exact_dev.max((v - exact).abs() / exact);
            plain.push(v);
            exhaust_w.push(norm_sq_on(&f, Region::Disk { radius }, i, WeightId::Rho, &p)?);
        }
        let increasing = plain.windows(2).all(|w| w[1] > w[0]);
        r.holds("unweighted strictly increasing", increasing);
        r.at_least("unweighted final/initial", plain[11] / plain[0], DIVERGENCE_GROWTH);
        r.at_most("unweighted vs -π ln(1-ρ²) rel", exact_dev, 1e-6);

        let levels: Vec<usize> = (1..=12).collect();
        let mut weighted = Vec::new();
        let mut volume = Vec::new();
        for &m in &levels {
            let p = refinement_params(m);
            weighted.push(weighted_slice_norm_sq(&f, ball, i, &p)?);
            volume.push(volume_norm_sq_reduced(&f, ball, i, &p)?);
        }
        let cauchy = |v: &[f64]| v[v.len() - 4..].windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
        r.at_most("rho-weighted Cauchy", cauchy(&weighted), CAUCHY_TOL);
        r.at_most("reduced volume Cauchy", cauchy(&volume), CAUCHY_TOL);
        r.note(format!(
            "refined rho-weighted norm {:.9} (π/4 = {:.9}); reduced volume norm {:.9} (π²/2 = {:.9})",
            weighted[11],
            PI / 4.0,
            volume[11],
            PI * PI / 2.0
        ));
        r.note(format!(
            "rho-weighted norm on disks 1-2^-k: k=10..12 gives {:.6}, {:.6}, {:.6}; steps shrink like 2^-k",
            exhaust_w[9], exhaust_w[10], exhaust_w[11]
        ));

        let one = SliceFunction::monomial(0);
        let v = volume_norm_sq_reduced(&one, ball, i, &RuleParams::default())?;
        r.at_most("reduced volume of 1 vs π²/2", (v - PI * PI / 2.0).abs(), BALL_VOLUME_TOL);
        for (name, g, exact) in [("1", one, PI * PI / 2.0), ("q", SliceFunction::monomial(1), PI * PI / 3.0)] {
            let mc = volume_norm_sq_mc(&g, ball, &McConfig::new(1_000_000, cfg.seed.wrapping_add(8)))?;
            let dev = (mc.estimate - exact).abs();
            // A constant integrand has zero variance: allow rounding there.
            r.at_most(format!("MC {name} deviation (sigma)"), dev / mc.stderr.max(1e-15 * exact), MC_SIGMAS);
        }
        Ok(())
    })
}

/// Intrinsic parts, the half-slice identity and four-component reconstruction.
pub fn schwarz_machinery(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(9, "Schwarz and intrinsic machinery", cfg, |r| {
        let mut rng = cfg.rng(9);

        let mut parts = 0.0f64;
        for n in 0..100 {
            let h = if n % 2 == 0 {
                Holo::Polynomial(random_complex_coeffs(&mut rng, 6))
            } else {
                let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                let d = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                Holo::custom(move |z: Complex64| (c * z).exp() + d * z * z)
            };
            let (f1, f2) = h.intrinsic_parts();
            let z = random_in_disk(&mut rng, 0.9);
            let direct = h.eval(z)?;
            let rebuilt = f1.eval(z)? + Complex64::i() * f2.eval(z)?;
            parts = parts.max((rebuilt - direct).norm() / direct.norm().max(1.0));
        }
        r.at_most("intrinsic parts", parts, INTRINSIC_PARTS_TOL);

        let params = RuleParams::new(64, 128);
        let cases: Vec<(DomainId, SliceFunction, SliceFunction)> = vec![
            (
                DomainId::UnitBall,
                SliceFunction::polynomial(vec![Quaternion::real(0.5), Quaternion::real(-1.0), Quaternion::real(0.3)]),
                SliceFunction::monomial(1),
            ),
            (
                DomainId::UnitBall,
                SliceFunction::intrinsic_rational(vec![1.0], vec![1.0, -0.5], 1)?,
                SliceFunction::monomial(3),
            ),
            (
                DomainId::HalfSpace,
                SliceFunction::intrinsic_rational(vec![1.0], vec![1.0, 1.0], 2)?,
                SliceFunction::intrinsic_rational(vec![0.0, 1.0], vec![2.0, 1.0], 3)?,
            ),
        ];
        let mut half = 0.0f64;
        for (domain, f, g) in &cases {
            let u = random_unit(&mut rng);
            let full = inner_product(f, g, *domain, u, WeightId::None, false, &params)?;
            let upper = inner_product(f, g, *domain, u, WeightId::None, true, &params)?;
            half = half.max((full - Quaternion::real(2.0 * upper.w)).norm() / full.norm().max(1.0));
        }
        r.at_most("half-slice identity", half, HALF_SLICE_TOL);

        let f = random_polynomial(&mut rng, 4);
        let u = random_unit(&mut rng);
        let full = slice_norm_sq(&f, DomainId::UnitBall, u, WeightId::None, false, &params)?;
        let upper = slice_norm_sq(&f, DomainId::UnitBall, u, WeightId::None, true, &params)?;
        r.note(format!(
            "non-intrinsic quartic: full-slice norm² {full:.6}, 2·∫ over the upper half {:.6}",
            2.0 * upper
        ));

        let mut four = 0.0f64;
        for n in 0..20 {
            let i = random_unit(&mut rng);
            let j = random_orthogonal(&mut rng, i);
            let f = if n % 4 == 3 {
                SliceFunction::kernel_section(KernelId::BallFormII, random_in_ball(&mut rng, 0.5))?
            } else {
                random_polynomial(&mut rng, 5)
            };
            let fc = four_component_decompose(&f, i, j)?;
            for _ in 0..5 {
                let q = random_in_ball(&mut rng, 0.8);
                four = four.max(rel1(fc.reconstruct(q)?, f.eval(q)?));
            }
        }
        r.at_most("four-component reconstruction", four, FOUR_COMPONENT_TOL);
        Ok(())
    })
}

/// Two-slice reconstruction for every [`SliceFunction`] variant.
pub fn representation(cfg: &VerifyConfig) -> CheckOutcome {
    run_check(10, "representation formula", cfg, |r| {
        let mut rng = cfg.rng(10);
        let stem_i = random_unit(&mut rng);
        let stem_j = random_orthogonal(&mut rng, stem_i);
        let variants: Vec<(&str, SliceFunction, f64)> = vec![
            ("polynomial", random_polynomial(&mut rng, 6), 0.9),
            ("intrinsic rational", SliceFunction::intrinsic_rational(vec![0.5, -1.0, 0.25], vec![1.0, 0.0, 0.5], 2)?, 0.9),
            ("stem", SliceFunction::Stem(split(&random_polynomial(&mut rng, 5), stem_i, stem_j)?), 0.9),
            ("kernel section", SliceFunction::kernel_section(KernelId::BallFormI, random_in_ball(&mut rng, 0.5))?, 0.8),
        ];
        for (name, f, radius) in &variants {
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let q = random_in_ball(&mut rng, *radius);
                let j = random_unit(&mut rng);
                worst = worst.max(rel1(representation_formula(f, q, j)?, f.eval(q)?));
            }
            r.at_most(*name, worst, REPRESENTATION_TOL);
        }
        // half-space section: targets with Re q > 0
        let f = SliceFunction::kernel_section(KernelId::HalfSpaceB, Quaternion::new(1.0, 0.2, -0.3, 0.1))?;
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let q = random_half_space(&mut rng);
            let j = random_unit(&mut rng);
            worst = worst.max(rel1(representation_formula(&f, q, j)?, f.eval(q)?));
        }
        r.at_most("half-space section", worst, REPRESENTATION_TOL);
        Ok(())
    })
}

pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> Result<CheckOutcome> {
    Ok(match id {
        1 => form_agreement(cfg),
        2 => slice_reduction(cfg),
        3 => reproducing_property(cfg),
        4 => bergman_fueter_closed_form(cfg),
        5 => bf_transform(cfg),
        6 => fueter_regularity(cfg),
        7 => norm_equivalences(cfg),
        8 => weighted_separation(cfg),
        9 => schwarz_machinery(cfg),
        10 => representation(cfg),
        _ => return Err(Error::bad("criterion", format!("{id} is not in 1..=10"))),
    })
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    suite.criteria().iter().map(|&id| run_criterion(id, cfg).expect("suite ids are valid")).collect()
}
