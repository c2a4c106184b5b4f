//! Construction of vector potentials from fields: transversal gauge in 2D
//! and 3D, the asymptotic/regular split A = A^(inf) + A^(reg), the gauge
//! scalar U, the short-range 3D potential, and gauge transformations.

use alloc::boxed::Box;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fields::{Family, FieldSpec};
use crate::numerics::{
    fd_curl_3d, fd_grad, fd_grad_2d, integrate_1d, integrate_1d_segmented,
    integrate_semi_infinite, QuadratureConfig,
};
use crate::vec::{v2, v3, Vec2, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeTag {
    Transversal,
    ShortRange3d,
    Custom,
}

/// Smooth monotone ramp used to glue the gauge scalar into the potential:
/// eta = 0 on [0, r1], eta = 1 on [r2, inf), quintic smoothstep between.
#[derive(Debug, Clone, Copy)]
pub struct CutoffSpec {
    pub r1: f64,
    pub r2: f64,
}

impl CutoffSpec {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(0.0 < r1 && r1 < r2) {
            return Err(Error::InvalidConfig("cutoff requires 0 < R1 < R2"));
        }
        Ok(CutoffSpec { r1, r2 })
    }

    /// Defaults tied to the field geometry: R2 = support radius, R1 = R2/2.
    pub fn for_spec(spec: &FieldSpec) -> Result<Self> {
        let r2 = match &spec.family {
            // keep the ball |x| <= R2 clear of the solenoid
            Family::ToroidalSolenoid3d { shape, .. } => match shape {
                crate::fields::SectionShape::Disc { l, r } => l - r,
                crate::fields::SectionShape::ConvexBoundary { points } => points
                    .iter()
                    .map(|p| (p.0 * p.0 + p.1 * p.1).sqrt())
                    .fold(f64::INFINITY, f64::min),
            },
            _ => spec.effective_radius(),
        };
        CutoffSpec::new(0.5 * r2, r2)
    }

    pub fn eta(&self, s: f64) -> f64 {
        if s <= self.r1 {
            0.0
        } else if s >= self.r2 {
            1.0
        } else {
            let t = (s - self.r1) / (self.r2 - self.r1);
            t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
        }
    }

    pub fn eta_prime(&self, s: f64) -> f64 {
        if s <= self.r1 || s >= self.r2 {
            0.0
        } else {
            let w = self.r2 - self.r1;
            let t = (s - self.r1) / w;
            30.0 * t * t * (1.0 - t) * (1.0 - t) / w
        }
    }
}

/// An asymptotically homogeneous gauge function phi with its degree-zero
/// limit phi0 on directions.
pub struct GaugeFunction {
    pub phi: Box<dyn Fn(Vec3) -> f64 + Send + Sync>,
    pub phi0: Box<dyn Fn(Vec3) -> f64 + Send + Sync>,
}

/// A vector potential split A = A^(inf) + A^(reg) with gauge metadata.
pub struct Decomposition2d {
    pub a_inf: Box<dyn Fn(Vec2) -> Vec2 + Send + Sync>,
    pub a_reg: Box<dyn Fn(Vec2) -> Vec2 + Send + Sync>,
    pub full: Box<dyn Fn(Vec2) -> Vec2 + Send + Sync>,
    pub gauge_tag: GaugeTag,
    /// Decay exponent of A^(reg): rho = r - 1.
    pub rho: f64,
}

pub struct Decomposition3d {
    pub a_inf: Box<dyn Fn(Vec3) -> Vec3 + Send + Sync>,
    pub a_reg: Box<dyn Fn(Vec3) -> Vec3 + Send + Sync>,
    pub full: Box<dyn Fn(Vec3) -> Vec3 + Send + Sync>,
    pub gauge_tag: GaugeTag,
    pub rho: f64,
}

fn inner_cfg(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        max_subdivisions: cfg.max_subdivisions.max(2000),
        ..*cfg
    }
}

/// Radial moment int_{s in [lo, hi]} B(s * xhat) s ds for a 2D family, with
/// field kinks along the ray inserted as breakpoints.
fn radial_moment_2d(
    spec: &FieldSpec,
    xhat: Vec2,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let mut points: Vec<f64> = Vec::new();
    points.push(lo);
    for bp in spec.ray_breakpoints(None) {
        if bp > lo && bp < hi {
            points.push(bp);
        }
    }
    points.push(hi);
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    integrate_1d_segmented(
        &mut |s| spec.eval_2d(xhat * s).unwrap_or(0.0) * s,
        &points,
        &inner_cfg(cfg),
    )
    .map(|e| e.value)
}

/// 3D analogue: int (B(s * xhat) x xhat) s ds over [lo, hi].
fn radial_moment_3d(
    spec: &FieldSpec,
    xhat: Vec3,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<Vec3> {
    let rho = xhat.rho();
    let z = if rho > 0.0 { Some(xhat.z / rho) } else { None };
    let mut points: Vec<f64> = Vec::new();
    points.push(lo);
    for bp in spec.ray_breakpoints(z) {
        if bp > lo && bp < hi {
            points.push(bp);
        }
    }
    points.push(hi);
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    integrate_1d_segmented(
        &mut |s| spec.eval_3d(xhat * s).unwrap_or(Vec3::ZERO).cross(xhat) * s,
        &points,
        &inner_cfg(cfg),
    )
    .map(|e| e.value)
}

/// Transversal-gauge potential in 2D:
/// A = (-x2, x1) * int_0^1 B(s x) s ds.
pub fn transversal_potential_2d(
    spec: &FieldSpec,
    x: Vec2,
    cfg: &QuadratureConfig,
) -> Result<Vec2> {
    if let Family::AbPointFlux2d { alpha } = spec.family {
        let r2 = x.dot(x);
        if r2 == 0.0 {
            return Err(Error::AnalyticOnlyFamily);
        }
        return Ok(x.perp() * (-alpha / r2));
    }
    let r = x.norm();
    if r == 0.0 {
        return Ok(Vec2::ZERO);
    }
    // substitute u = s r so breakpoints are ray arclengths
    let m = radial_moment_2d(spec, x * (1.0 / r), 0.0, r, cfg)? / (r * r);
    Ok(x.perp() * m)
}

/// Transversal-gauge potential in 3D:
/// A = int_0^1 (B(s x) x x) s ds, componentwise the cyclic formula.
pub fn transversal_potential_3d(
    spec: &FieldSpec,
    x: Vec3,
    cfg: &QuadratureConfig,
) -> Result<Vec3> {
    let r = x.norm();
    if r == 0.0 {
        return Ok(Vec3::ZERO);
    }
    let m = radial_moment_3d(spec, x * (1.0 / r), 0.0, r, cfg)?;
    Ok(m * (1.0 / r))
}

/// a(xhat) = int_0^infty B(s xhat) s ds, the degree-zero coefficient of the
/// 2D asymptotic potential A^(inf)(x) = a(xhat) (-x2, x1) / |x|^2.
pub fn asymptotic_coefficient_2d(
    spec: &FieldSpec,
    xhat: Vec2,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if let Family::AbPointFlux2d { alpha } = spec.family {
        return Ok(-alpha);
    }
    if spec.decay_exponent <= 2.0 {
        return Err(Error::DecayTooSlow { exponent: spec.decay_exponent - 1.0 });
    }
    let xhat = xhat.normalize();
    match spec.support_radius {
        Some(rs) => radial_moment_2d(spec, xhat, 0.0, rs, cfg),
        None => {
            let c = QuadratureConfig {
                tail_decay_exponent: spec.decay_exponent - 1.0,
                truncation_radius: f64::max(cfg.truncation_radius, spec.effective_radius()),
                ..inner_cfg(cfg)
            };
            integrate_semi_infinite(|s| spec.eval_2d(xhat * s).unwrap_or(0.0) * s, 0.0, &c)
                .map(|e| e.value)
        }
    }
}

fn radial_moment_2d_to_infinity(
    spec: &FieldSpec,
    xhat: Vec2,
    lo: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    match spec.support_radius {
        Some(rs) if rs <= lo => Ok(0.0),
        Some(rs) => radial_moment_2d(spec, xhat, lo, rs, cfg),
        None => {
            let c = QuadratureConfig {
                tail_decay_exponent: spec.decay_exponent - 1.0,
                truncation_radius: f64::max(cfg.truncation_radius, spec.effective_radius()),
                ..inner_cfg(cfg)
            };
            integrate_semi_infinite(|s| spec.eval_2d(xhat * s).unwrap_or(0.0) * s, lo, &c)
                .map(|e| e.value)
        }
    }
}

fn radial_moment_3d_to_infinity(
    spec: &FieldSpec,
    xhat: Vec3,
    lo: f64,
    cfg: &QuadratureConfig,
) -> Result<Vec3> {
    match spec.support_radius {
        Some(rs) if rs <= lo => Ok(Vec3::ZERO),
        Some(rs) => radial_moment_3d(spec, xhat, lo, rs, cfg),
        None => {
            let c = QuadratureConfig {
                tail_decay_exponent: spec.decay_exponent - 1.0,
                truncation_radius: f64::max(cfg.truncation_radius, spec.effective_radius()),
                ..inner_cfg(cfg)
            };
            integrate_semi_infinite(
                |s| spec.eval_3d(xhat * s).unwrap_or(Vec3::ZERO).cross(xhat) * s,
                lo,
                &c,
            )
            .map(|e| e.value)
        }
    }
}

/// Splits the transversal potential of a 2D field as A^(inf) + A^(reg).
pub fn decompose_potential_2d(spec: &FieldSpec, cfg: &QuadratureConfig) -> Result<Decomposition2d> {
    if spec.decay_exponent <= 2.0 {
        return Err(Error::DecayTooSlow { exponent: spec.decay_exponent - 1.0 });
    }
    let rho = spec.decay_exponent - 1.0;
    let (s1, s2, s3) = (spec.clone(), spec.clone(), spec.clone());
    let (c1, c2, c3) = (*cfg, *cfg, *cfg);
    let a_inf = Box::new(move |x: Vec2| {
        let r2 = x.dot(x);
        if r2 == 0.0 {
            return Vec2::ZERO;
        }
        let a = asymptotic_coefficient_2d(&s1, x.normalize(), &c1).unwrap_or(f64::NAN);
        x.perp() * (a / r2)
    });
    let a_reg = Box::new(move |x: Vec2| {
        let r = x.norm();
        if r == 0.0 {
            return Vec2::ZERO;
        }
        let tail =
            radial_moment_2d_to_infinity(&s2, x.normalize(), r, &c2).unwrap_or(f64::NAN);
        x.perp() * (-tail / (r * r))
    });
    let full = Box::new(move |x: Vec2| transversal_potential_2d(&s3, x, &c3).unwrap_or(v2(f64::NAN, f64::NAN)));
    Ok(Decomposition2d { a_inf, a_reg, full, gauge_tag: GaugeTag::Transversal, rho })
}

/// Splits the transversal potential of a 3D field as A^(inf) + A^(reg).
pub fn decompose_potential_3d(spec: &FieldSpec, cfg: &QuadratureConfig) -> Result<Decomposition3d> {
    if spec.decay_exponent <= 2.0 {
        return Err(Error::DecayTooSlow { exponent: spec.decay_exponent - 1.0 });
    }
    let rho = spec.decay_exponent - 1.0;
    let (s1, s2, s3) = (spec.clone(), spec.clone(), spec.clone());
    let (c1, c2, c3) = (*cfg, *cfg, *cfg);
    let a_inf = Box::new(move |x: Vec3| {
        let r = x.norm();
        if r == 0.0 {
            return Vec3::ZERO;
        }
        let xhat = x * (1.0 / r);
        let m = radial_moment_3d_to_infinity(&s1, xhat, 0.0, &c1)
            .unwrap_or(v3(f64::NAN, 0.0, 0.0));
        m * (1.0 / r)
    });
    let a_reg = Box::new(move |x: Vec3| {
        let r = x.norm();
        if r == 0.0 {
            return Vec3::ZERO;
        }
        let xhat = x * (1.0 / r);
        let m = radial_moment_3d_to_infinity(&s2, xhat, r, &c2)
            .unwrap_or(v3(f64::NAN, 0.0, 0.0));
        m * (-1.0 / r)
    });
    let full = Box::new(move |x: Vec3| {
        transversal_potential_3d(&s3, x, &c3).unwrap_or(v3(f64::NAN, 0.0, 0.0))
    });
    Ok(Decomposition3d { a_inf, a_reg, full, gauge_tag: GaugeTag::Transversal, rho })
}

/// Contour choice for the gauge scalar U.
#[derive(Debug, Clone, Copy)]
pub enum Contour {
    /// Radial leg (zero by transversality) then the great-circle arc.
    GreatCircle,
    /// Two great-circle arcs through the given intermediate direction.
    Waypoint(Vec3),
}

fn arc_integral(
    a_inf: &dyn Fn(Vec3) -> Vec3,
    from: Vec3,
    to: Vec3,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let omega = from.dot(to).clamp(-1.0, 1.0).acos();
    if omega < 1e-14 {
        return Ok(0.0);
    }
    if omega > core::f64::consts::PI - 1e-9 {
        return Err(Error::ContourThroughOrigin);
    }
    let sin_omega = omega.sin();
    integrate_1d(
        |t| {
            let (c0, c1) = (((1.0 - t) * omega).sin() / sin_omega, (t * omega).sin() / sin_omega);
            let (d0, d1) = (
                -omega * ((1.0 - t) * omega).cos() / sin_omega,
                omega * (t * omega).cos() / sin_omega,
            );
            let gamma = from * c0 + to * c1;
            let dgamma = from * d0 + to * d1;
            a_inf(gamma).dot(dgamma)
        },
        0.0,
        1.0,
        &inner_cfg(cfg),
    )
    .map(|e| e.value)
}

/// Spot check that curl A^(inf) vanishes away from the origin; a failing
/// check signals a long-range field (decay exponent r <= 2).
fn curl_spot_check(a_inf: &dyn Fn(Vec3) -> Vec3, probes: &[Vec3]) -> Result<()> {
    let mut residuals: Vec<f64> = probes
        .iter()
        .map(|&p| fd_curl_3d(a_inf, p.normalize() * 1.3, 1e-4).norm())
        .collect();
    residuals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = residuals[residuals.len() / 2];
    if !(median < 1e-2) {
        return Err(Error::CurlNotZero { residual: median });
    }
    Ok(())
}

/// The gauge scalar U(x) = int_{x0 -> x} <A^(inf), dy>, normalized to
/// U(x0) = 0. Homogeneous of degree zero; contour-independent because
/// curl A^(inf) = 0 away from the origin.
pub fn gauge_scalar_u(
    decomp: &Decomposition3d,
    x: Vec3,
    basepoint: Vec3,
    contour: Contour,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if x.norm() == 0.0 || basepoint.norm() == 0.0 {
        return Err(Error::ContourThroughOrigin);
    }
    let from = basepoint.normalize();
    let to = x.normalize();
    curl_spot_check(&decomp.a_inf, &[from, to, (from + to) * 0.5 + v3(0.11, -0.07, 0.05)])?;
    // The radial legs contribute nothing: <A^(inf)(x), x> = 0.
    match contour {
        Contour::GreatCircle => arc_integral(&decomp.a_inf, from, to, cfg),
        Contour::Waypoint(w) => {
            let w = w.normalize();
            Ok(arc_integral(&decomp.a_inf, from, w, cfg)?
                + arc_integral(&decomp.a_inf, w, to, cfg)?)
        }
    }
}

/// Short-range 3D potential
/// A = A^(reg) + (1 - eta) A^(inf) - U grad(eta)
/// with curl A = B; compactly supported when B is.
pub fn short_range_potential_3d(
    spec: &FieldSpec,
    decomp: &Decomposition3d,
    cutoff: &CutoffSpec,
    basepoint: Vec3,
    x: Vec3,
    cfg: &QuadratureConfig,
) -> Result<Vec3> {
    let r = x.norm();
    if r <= cutoff.r1 {
        // eta = 0: the formula collapses to the transversal potential.
        return transversal_potential_3d(spec, x, cfg);
    }
    let a_reg = (decomp.a_reg)(x);
    if r >= cutoff.r2 {
        return Ok(a_reg);
    }
    let eta = cutoff.eta(r);
    let etap = cutoff.eta_prime(r);
    let u = gauge_scalar_u(decomp, x, basepoint, Contour::GreatCircle, cfg)?;
    Ok(a_reg + (decomp.a_inf)(x) * (1.0 - eta) + x * (-u * etap / r))
}

/// Gauge transformation A -> A + grad(phi) via central differences.
pub fn apply_gauge_3d<'a>(
    a: impl Fn(Vec3) -> Vec3 + 'a,
    phi: impl Fn(Vec3) -> f64 + Copy + 'a,
    h: f64,
) -> impl Fn(Vec3) -> Vec3 + 'a {
    move |x| a(x) + fd_grad(phi, x, h)
}

pub fn apply_gauge_2d<'a>(
    a: impl Fn(Vec2) -> Vec2 + 'a,
    phi: impl Fn(Vec2) -> f64 + Copy + 'a,
    h: f64,
) -> impl Fn(Vec2) -> Vec2 + 'a {
    move |x| a(x) + fd_grad_2d(phi, x, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{BumpProfile, SectionShape};
    use crate::numerics::fd_curl_2d;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig { abs_tol: 1e-12, rel_tol: 1e-12, ..QuadratureConfig::default() }
    }

    #[test]
    fn transversal_2d_gaussian_closed_form() {
        let spec = FieldSpec::gaussian2d(1.0);
        let a = transversal_potential_2d(&spec, v2(1.0, 0.0), &cfg()).unwrap();
        let expect = (1.0 - (-1.0f64).exp()) / 2.0;
        assert!((a.x).abs() < 1e-14);
        assert!((a.y - expect).abs() < 1e-8, "got {} expect {expect}", a.y);

        assert_eq!(transversal_potential_2d(&spec, Vec2::ZERO, &cfg()).unwrap(), Vec2::ZERO);
    }

    #[test]
    fn transversal_2d_ab_closed_form() {
        let alpha = 0.7;
        let spec = FieldSpec::ab_point_flux_2d(alpha);
        let a = transversal_potential_2d(&spec, v2(0.0, 1.0), &cfg()).unwrap();
        assert!((a - v2(alpha, 0.0)).norm() < 1e-14, "got {:?}", a);
    }

    #[test]
    fn transversality_both_dimensions() {
        let spec2 = FieldSpec::gaussian2d(1.0);
        let spec3 = FieldSpec::bump_3d(1.0, 1.0);
        let mut s = 1u64;
        let mut rng = move || {
            // xorshift; deterministic points in [-2, 2]
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s as f64 / u64::MAX as f64) * 4.0 - 2.0
        };
        for _ in 0..50 {
            let x = v2(rng(), rng());
            let a = transversal_potential_2d(&spec2, x, &cfg()).unwrap();
            assert!(a.dot(x).abs() < 1e-12);
            let y = v3(rng(), rng(), rng());
            let a = transversal_potential_3d(&spec3, y, &cfg()).unwrap();
            assert!(a.dot(y).abs() < 1e-12, "at {:?}: {:?}", y, a);
        }
    }

    #[test]
    fn asymptotic_coefficient_gaussian() {
        let spec = FieldSpec::gaussian2d(1.0);
        let a = asymptotic_coefficient_2d(&spec, v2(0.3, 0.95), &cfg()).unwrap();
        assert!((a - 0.5).abs() < 1e-8, "got {a}");
    }

    #[test]
    fn asymptotic_coefficient_dipole_closed_form() {
        let b0 = BumpProfile { coeff: 1.0, radius: 2.0 };
        let b1 = BumpProfile { coeff: 0.7, radius: 1.5 };
        let q = v2(0.3, -0.4);
        let spec = FieldSpec::radial_plus_dipole_2d(b0, b1, q);
        // a(xhat) = -alpha + <p, xhat> with alpha = -moment(B0), p = q moment(B1)
        let alpha = -b0.moment();
        let p = q * b1.moment();
        for k in 0..8 {
            let th = 2.0 * core::f64::consts::PI * k as f64 / 8.0;
            let xh = Vec2::from_angle(th);
            let a = asymptotic_coefficient_2d(&spec, xh, &cfg()).unwrap();
            assert!((a - (-alpha + p.dot(xh))).abs() < 1e-9, "theta {th}: {a}");
        }
    }

    #[test]
    fn decomposition_2d_reconstructs_full() {
        let spec = FieldSpec::gaussian2d(1.0);
        let d = decompose_potential_2d(&spec, &cfg()).unwrap();
        // closed forms at x = (2, 0)
        let ai = (d.a_inf)(v2(2.0, 0.0));
        assert!((ai - v2(0.0, 0.25)).norm() < 1e-9, "{:?}", ai);
        let ar = (d.a_reg)(v2(2.0, 0.0));
        assert!((ar - v2(0.0, -(-4.0f64).exp() / 4.0)).norm() < 1e-9, "{:?}", ar);
        for &x in &[v2(2.0, 0.0), v2(-1.0, 1.5), v2(0.3, -0.2)] {
            let sum = (d.a_inf)(x) + (d.a_reg)(x);
            let full = (d.full)(x);
            assert!((sum - full).norm() < 1e-9, "at {:?}", x);
        }
    }

    #[test]
    fn a_inf_homogeneity() {
        let spec = FieldSpec::gaussian2d(1.0);
        let d = decompose_potential_2d(&spec, &cfg()).unwrap();
        let x = v2(0.6, -1.1);
        let lhs = (d.a_inf)(x * 2.0);
        let rhs = (d.a_inf)(x) * 0.5;
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn solenoid_a_inf_matches_closed_form() {
        let spec =
            FieldSpec::toroidal_solenoid_3d(1.0, SectionShape::Disc { l: 2.0, r: 1.0 }).unwrap();
        let d = decompose_potential_3d(&spec, &cfg()).unwrap();
        let alpha = 1.0;
        let shape = SectionShape::Disc { l: 2.0, r: 1.0 };
        for &x in &[v3(3.0, 1.0, 0.4), v3(-2.0, 0.5, -0.6), v3(1.0, 0.0, 0.1)] {
            let rho2 = x.x * x.x + x.y * x.y;
            let z = x.z / rho2.sqrt();
            let g = match shape.kappa(z) {
                Ok((lo, hi)) => -alpha * (hi - lo),
                Err(_) => 0.0,
            };
            let r = x.norm();
            let expect = v3(x.x * x.z / rho2, x.y * x.z / rho2, -1.0) * (g / r);
            let got = (d.a_inf)(x);
            assert!((got - expect).norm() < 1e-8, "at {:?}: {:?} vs {:?}", x, got, expect);
        }
    }

    #[test]
    fn bump_3d_has_no_homogeneous_part() {
        // the radial moments of the bump window cancel exactly
        let spec = FieldSpec::bump_3d(1.0, 1.0);
        let d = decompose_potential_3d(&spec, &cfg()).unwrap();
        for &x in &[v3(1.0, 0.2, 0.3), v3(-0.5, 0.7, -0.1), v3(0.0, 0.0, 2.0)] {
            assert!((d.a_inf)(x).norm() < 1e-12);
        }
    }

    #[test]
    fn gauge_scalar_is_path_independent() {
        let spec =
            FieldSpec::toroidal_solenoid_3d(1.0, SectionShape::Disc { l: 2.0, r: 1.0 }).unwrap();
        let d = decompose_potential_3d(&spec, &cfg()).unwrap();
        let x0 = v3(1.0, 0.2, -3.0);
        let x = v3(0.5, -1.0, 2.0);
        let u1 = gauge_scalar_u(&d, x, x0, Contour::GreatCircle, &cfg()).unwrap();
        let u2 =
            gauge_scalar_u(&d, x, x0, Contour::Waypoint(v3(0.0, 1.0, 0.3)), &cfg()).unwrap();
        assert!((u1 - u2).abs() < 1e-8, "{u1} vs {u2}");
        // U(x0) = 0 and homogeneity of degree zero
        let u0 = gauge_scalar_u(&d, x0, x0, Contour::GreatCircle, &cfg()).unwrap();
        assert!(u0.abs() < 1e-12);
        let us = gauge_scalar_u(&d, x * 5.0, x0, Contour::GreatCircle, &cfg()).unwrap();
        assert!((u1 - us).abs() < 1e-10);
    }

    #[test]
    fn short_range_potential_regions_and_curl() {
        let spec = FieldSpec::bump_3d(1.0, 1.0);
        let d = decompose_potential_3d(&spec, &cfg()).unwrap();
        let cutoff = CutoffSpec::new(0.5, 1.0).unwrap();
        let x0 = v3(1.0, 0.0, -5.0);
        // inside R1 the potential is the transversal one
        let x = v3(0.2, 0.1, -0.3);
        let a = short_range_potential_3d(&spec, &d, &cutoff, x0, x, &cfg()).unwrap();
        let at = transversal_potential_3d(&spec, x, &cfg()).unwrap();
        assert!((a - at).norm() < 1e-12);
        // outside max(R2, support) it vanishes
        let far = v3(0.9, 0.9, 0.9);
        let a = short_range_potential_3d(&spec, &d, &cutoff, x0, far, &cfg()).unwrap();
        assert!(a.norm() < 1e-12, "far value {:?}", a);
        // curl A = B in the gluing region
        let mid = v3(0.45, 0.35, 0.25);
        let field = |y: Vec3| {
            short_range_potential_3d(&spec, &d, &cutoff, x0, y, &cfg()).unwrap()
        };
        let curl = fd_curl_3d(field, mid, 1e-4);
        let b = spec.eval_3d(mid).unwrap();
        assert!((curl - b).norm() < 1e-4, "curl {:?} vs B {:?}", curl, b);
    }

    #[test]
    fn short_range_solenoid_is_pure_gradient_inside() {
        // Between R1 and R2 the solenoid potential is -grad(eta U): its curl
        // vanishes, matching B = 0 away from the coil.
        let spec =
            FieldSpec::toroidal_solenoid_3d(1.0, SectionShape::Disc { l: 2.0, r: 1.0 }).unwrap();
        let d = decompose_potential_3d(&spec, &cfg()).unwrap();
        let cutoff = CutoffSpec::for_spec(&spec).unwrap();
        assert_eq!((cutoff.r1, cutoff.r2), (0.5, 1.0));
        let x0 = v3(1.0, 0.0, -5.0);
        let mid = v3(0.45, 0.35, 0.25);
        // a_reg = -a_inf inside the coil-free ball
        let cancel = (d.a_reg)(mid) + (d.a_inf)(mid);
        assert!(cancel.norm() < 1e-9, "{:?}", cancel);
        let field = |y: Vec3| {
            short_range_potential_3d(&spec, &d, &cutoff, x0, y, &cfg()).unwrap()
        };
        let curl = fd_curl_3d(field, mid, 1e-4);
        assert!(curl.norm() < 1e-4, "curl {:?}", curl);
    }

    #[test]
    fn apply_gauge_identities() {
        // constant phi leaves A unchanged
        let a = |x: Vec2| v2(-x.y, x.x);
        let tilde = apply_gauge_2d(a, |_x| 3.5, 1e-5);
        let x = v2(0.4, 1.1);
        assert!((tilde(x) - a(x)).norm() < 1e-10);
        // pure linear gauge on A = 0 gives the constant gradient
        let c = v3(0.3, -0.7, 1.1);
        let tilde = apply_gauge_3d(|_x| Vec3::ZERO, move |x: Vec3| c.dot(x), 1e-5);
        assert!((tilde(v3(1.0, 2.0, -1.0)) - c).norm() < 1e-10);
        // curl is unchanged
        let a = |x: Vec2| v2(-x.y, x.x) * 0.5;
        let phi = |x: Vec2| (x.x * 0.3 + x.y * x.y * 0.1).sin();
        let tilde = apply_gauge_2d(a, phi, 1e-5);
        let c0 = fd_curl_2d(a, v2(0.7, -0.2), 1e-4);
        let c1 = fd_curl_2d(tilde, v2(0.7, -0.2), 1e-4);
        assert!((c0 - c1).abs() < 1e-6);
    }
}
