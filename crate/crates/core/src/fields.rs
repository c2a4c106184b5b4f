//! Declarative magnetic-field catalog: evaluation, divergence checks, flux.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::{
    fd_div, integrate_1d, integrate_area_2d, integrate_circle, Estimate, QuadratureConfig,
};
use crate::vec::{v3, Vec2, Vec3};

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Compactly supported radial profile c * (1 - (r/R)^2)^3 on [0, R].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpProfile {
    pub coeff: f64,
    pub radius: f64,
}

impl BumpProfile {
    pub fn eval(&self, r: f64) -> f64 {
        let u = (r / self.radius) * (r / self.radius);
        if u >= 1.0 {
            0.0
        } else {
            let t = 1.0 - u;
            self.coeff * t * t * t
        }
    }

    /// First radial moment: int_0^inf eval(r) r dr = coeff * R^2 / 8.
    pub fn moment(&self) -> f64 {
        self.coeff * self.radius * self.radius / 8.0
    }
}

/// Tabulated radial profile with natural cubic interpolation and enforced
/// compact support (the last sample must vanish).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSpline {
    r: Vec<f64>,
    b: Vec<f64>,
    m: Vec<f64>, // second derivatives at the knots
}

impl RadialSpline {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidConfig("radial profile needs at least 3 samples"));
        }
        let r: Vec<f64> = points.iter().map(|p| p.0).collect();
        let b: Vec<f64> = points.iter().map(|p| p.1).collect();
        if r.windows(2).any(|w| w[1] <= w[0]) || r[0] < 0.0 {
            return Err(Error::InvalidConfig("radii must be nonnegative and increasing"));
        }
        if b[b.len() - 1] != 0.0 {
            return Err(Error::InvalidConfig("profile must vanish at the last sample"));
        }
        // Natural cubic spline: tridiagonal solve for the second derivatives.
        let n = r.len();
        let mut m = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = r[i] - r[i - 1];
            let h1 = r[i + 1] - r[i];
            diag[i] = 2.0 * (h0 + h1);
            rhs[i] = 6.0 * ((b[i + 1] - b[i]) / h1 - (b[i] - b[i - 1]) / h0);
        }
        for i in 2..n - 1 {
            let h0 = r[i] - r[i - 1];
            let w = h0 / diag[i - 1];
            diag[i] -= w * h0;
            rhs[i] -= w * rhs[i - 1];
        }
        for i in (1..n - 1).rev() {
            let h1 = r[i + 1] - r[i];
            m[i] = (rhs[i] - h1 * m[i + 1]) / diag[i];
        }
        Ok(RadialSpline { r, b, m })
    }

    pub fn support_radius(&self) -> f64 {
        self.r[self.r.len() - 1]
    }

    /// The (radius, value) knots the spline was built from.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.r.iter().zip(&self.b).map(|(&r, &b)| (r, b)).collect()
    }

    pub fn eval(&self, rr: f64) -> f64 {
        let n = self.r.len();
        if rr <= self.r[0] {
            return self.b[0];
        }
        if rr >= self.r[n - 1] {
            return 0.0;
        }
        let mut i = match self.r.binary_search_by(|x| x.partial_cmp(&rr).unwrap()) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        if i >= n - 1 {
            i = n - 2;
        }
        let h = self.r[i + 1] - self.r[i];
        let a = (self.r[i + 1] - rr) / h;
        let c = (rr - self.r[i]) / h;
        a * self.b[i]
            + c * self.b[i + 1]
            + ((a * a * a - a) * self.m[i] + (c * c * c - c) * self.m[i + 1]) * h * h / 6.0
    }
}

/// Cross-section of a toroidal solenoid in the (rho, x3) half-plane.
#[derive(Debug, Clone, PartialEq)]
pub enum SectionShape {
    /// Disc of radius `r` with center at distance `l > r` from the axis.
    Disc { l: f64, r: f64 },
    /// Strictly convex boundary given as a closed polyline of (rho, x3)
    /// vertices, counterclockwise, not intersecting the axis.
    ConvexBoundary { points: Vec<(f64, f64)> },
}

impl SectionShape {
    pub fn validate(&self) -> Result<()> {
        match self {
            SectionShape::Disc { l, r } => {
                if !(*l > *r && *r > 0.0) {
                    return Err(Error::InvalidConfig("disc section requires l > r > 0"));
                }
            }
            SectionShape::ConvexBoundary { points } => {
                if points.len() < 8 {
                    return Err(Error::InvalidConfig("convex boundary needs at least 8 points"));
                }
                if points.iter().any(|p| p.0 <= 0.0) {
                    return Err(Error::InvalidConfig("boundary must not touch the axis"));
                }
            }
        }
        Ok(())
    }

    /// Tangency slopes (z1, z2) of rays from the origin in the half-plane.
    pub fn tangency(&self) -> (f64, f64) {
        match self {
            SectionShape::Disc { l, r } => {
                let z2 = r / (l * l - r * r).sqrt();
                (-z2, z2)
            }
            SectionShape::ConvexBoundary { points } => {
                let mut z1 = f64::INFINITY;
                let mut z2 = f64::NEG_INFINITY;
                for p in points {
                    let s = p.1 / p.0;
                    z1 = z1.min(s);
                    z2 = z2.max(s);
                }
                (z1, z2)
            }
        }
    }

    /// Intersection parameters (kappa_minus, kappa_plus) of the ray of slope
    /// `z` with the section; `s` is arclength from the origin along the ray.
    pub fn kappa(&self, z: f64) -> Result<(f64, f64)> {
        let (z1, z2) = self.tangency();
        if z < z1 || z > z2 {
            return Err(Error::OutsideTangencyRange { z, z1, z2 });
        }
        match self {
            SectionShape::Disc { l, r } => {
                let disc = (r * r - (l * l - r * r) * z * z).max(0.0).sqrt();
                let scale = (1.0 + z * z).sqrt().recip();
                Ok((scale * (l - disc), scale * (l + disc)))
            }
            SectionShape::ConvexBoundary { points } => {
                // Find boundary crossings of h(p) = p.z - z * p.rho along the
                // closed polyline; each sign change yields one intersection.
                let mut hits: Vec<f64> = Vec::new();
                let n = points.len();
                for i in 0..n {
                    let a = points[i];
                    let b = points[(i + 1) % n];
                    let ha = a.1 - z * a.0;
                    let hb = b.1 - z * b.0;
                    if ha == 0.0 {
                        hits.push((a.0 * a.0 + a.1 * a.1).sqrt());
                    } else if ha * hb < 0.0 {
                        let t = ha / (ha - hb);
                        let rho = a.0 + t * (b.0 - a.0);
                        let zz = a.1 + t * (b.1 - a.1);
                        hits.push((rho * rho + zz * zz).sqrt());
                    }
                }
                if hits.is_empty() {
                    return Err(Error::OutsideTangencyRange { z, z1, z2 });
                }
                let mut lo = hits[0];
                let mut hi = hits[0];
                for &h in &hits[1..] {
                    lo = lo.min(h);
                    hi = hi.max(h);
                }
                Ok((lo, hi))
            }
        }
    }

    /// Membership test for a point (rho, z) of the half-plane.
    pub fn contains(&self, rho: f64, x3: f64) -> bool {
        match self {
            SectionShape::Disc { l, r } => {
                let d = rho - l;
                d * d + x3 * x3 <= r * r
            }
            SectionShape::ConvexBoundary { points } => {
                // Ray cast along +rho.
                let n = points.len();
                let mut inside = false;
                for i in 0..n {
                    let a = points[i];
                    let b = points[(i + 1) % n];
                    if (a.1 > x3) != (b.1 > x3) {
                        let t = (x3 - a.1) / (b.1 - a.1);
                        let cross = a.0 + t * (b.0 - a.0);
                        if rho < cross {
                            inside = !inside;
                        }
                    }
                }
                inside
            }
        }
    }
}

/// The field families understood by the catalog.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// B(x) = amplitude * exp(-|x|^2), dimension 2.
    Gaussian2d { amplitude: f64 },
    /// Tabulated radial profile B0(r) with compact support, dimension 2.
    RadialProfile2d { profile: RadialSpline },
    /// B(x) = B0(r) + B1(r) <q, x/|x|> with compact bump profiles.
    RadialPlusDipole2d { b0: BumpProfile, b1: BumpProfile, q: Vec2 },
    /// Aharonov-Bohm point flux, B = -2*pi*alpha*delta(x); analytic only.
    AbPointFlux2d { alpha: f64 },
    /// Azimuthal field of magnitude alpha/rho inside a toroidal solenoid.
    ToroidalSolenoid3d { alpha: f64, shape: SectionShape },
    /// Divergence-free compactly supported 3D test field (a curl by
    /// construction).
    Bump3d { amplitude: f64, radius: f64 },
}

/// A declaratively specified magnetic field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub family: Family,
    /// Decay exponent r in |B(x)| <= C (1 + |x|)^(-r).
    pub decay_exponent: f64,
    /// Support radius; `None` for fields without compact support.
    pub support_radius: Option<f64>,
}

impl FieldSpec {
    pub fn gaussian2d(amplitude: f64) -> FieldSpec {
        FieldSpec {
            family: Family::Gaussian2d { amplitude },
            decay_exponent: 12.0, // dominated by any power law at the truncation scale
            support_radius: None,
        }
    }

    pub fn radial_profile_2d(profile: RadialSpline) -> FieldSpec {
        let support = profile.support_radius();
        FieldSpec {
            family: Family::RadialProfile2d { profile },
            decay_exponent: f64::INFINITY,
            support_radius: Some(support),
        }
    }

    pub fn radial_plus_dipole_2d(b0: BumpProfile, b1: BumpProfile, q: Vec2) -> FieldSpec {
        let support = f64::max(b0.radius, b1.radius);
        FieldSpec {
            family: Family::RadialPlusDipole2d { b0, b1, q },
            decay_exponent: f64::INFINITY,
            support_radius: Some(support),
        }
    }

    pub fn ab_point_flux_2d(alpha: f64) -> FieldSpec {
        FieldSpec {
            family: Family::AbPointFlux2d { alpha },
            decay_exponent: f64::INFINITY,
            support_radius: Some(0.0),
        }
    }

    pub fn toroidal_solenoid_3d(alpha: f64, shape: SectionShape) -> Result<FieldSpec> {
        shape.validate()?;
        let support = match &shape {
            SectionShape::Disc { l, r } => l + r,
            SectionShape::ConvexBoundary { points } => points
                .iter()
                .map(|p| (p.0 * p.0 + p.1 * p.1).sqrt())
                .fold(0.0, f64::max),
        };
        Ok(FieldSpec {
            family: Family::ToroidalSolenoid3d { alpha, shape },
            decay_exponent: f64::INFINITY,
            support_radius: Some(support),
        })
    }

    pub fn bump_3d(amplitude: f64, radius: f64) -> FieldSpec {
        FieldSpec {
            family: Family::Bump3d { amplitude, radius },
            decay_exponent: f64::INFINITY,
            support_radius: Some(radius),
        }
    }

    pub fn dimension(&self) -> usize {
        match self.family {
            Family::Gaussian2d { .. }
            | Family::RadialProfile2d { .. }
            | Family::RadialPlusDipole2d { .. }
            | Family::AbPointFlux2d { .. } => 2,
            Family::ToroidalSolenoid3d { .. } | Family::Bump3d { .. } => 3,
        }
    }

    /// Radius beyond which the field is negligible at double precision;
    /// equal to the support radius for compactly supported families.
    pub fn effective_radius(&self) -> f64 {
        match (&self.family, self.support_radius) {
            (_, Some(r)) if r > 0.0 => r,
            (Family::Gaussian2d { amplitude }, _) => {
                (f64::max(amplitude.abs(), 1.0).ln() + 40.0).sqrt()
            }
            _ => 1.0,
        }
    }

    /// Scalar field value for 2D families.
    pub fn eval_2d(&self, x: Vec2) -> Result<f64> {
        match &self.family {
            Family::Gaussian2d { amplitude } => Ok(amplitude * (-x.dot(x)).exp()),
            Family::RadialProfile2d { profile } => Ok(profile.eval(x.norm())),
            Family::RadialPlusDipole2d { b0, b1, q } => {
                let r = x.norm();
                if r == 0.0 {
                    return Ok(b0.eval(0.0));
                }
                Ok(b0.eval(r) + b1.eval(r) * q.dot(x) / r)
            }
            Family::AbPointFlux2d { .. } => Err(Error::AnalyticOnlyFamily),
            _ => Err(Error::InvalidConfig("eval_2d on a 3D family")),
        }
    }

    /// Vector field value for 3D families.
    pub fn eval_3d(&self, x: Vec3) -> Result<Vec3> {
        match &self.family {
            Family::ToroidalSolenoid3d { alpha, shape } => {
                let rho2 = x.x * x.x + x.y * x.y;
                if rho2 == 0.0 {
                    return Ok(Vec3::ZERO);
                }
                if shape.contains(rho2.sqrt(), x.z) {
                    Ok(v3(x.y, -x.x, 0.0) * (alpha / rho2))
                } else {
                    Ok(Vec3::ZERO)
                }
            }
            Family::Bump3d { amplitude, radius } => {
                let u = x.dot(x) / (radius * radius);
                if u >= 1.0 {
                    return Ok(Vec3::ZERO);
                }
                let t = 1.0 - u;
                let w = amplitude * t * t * t;
                let wp = -3.0 * amplitude * t * t / (radius * radius);
                let rho2 = x.x * x.x + x.y * x.y;
                Ok(v3(
                    -2.0 * x.x * x.z * wp,
                    -2.0 * x.y * x.z * wp,
                    2.0 * w + 2.0 * rho2 * wp,
                ))
            }
            _ => Err(Error::InvalidConfig("eval_3d on a 2D family")),
        }
    }

    /// Ray parameters s > 0 at which B(s * xhat) is non-smooth; used as
    /// quadrature breakpoints by the gauge constructions.
    pub fn ray_breakpoints(&self, xhat_z_over_rho: Option<f64>) -> Vec<f64> {
        match &self.family {
            Family::ToroidalSolenoid3d { shape, .. } => {
                if let Some(z) = xhat_z_over_rho {
                    if let Ok((lo, hi)) = shape.kappa(z) {
                        return vec![lo, hi];
                    }
                }
                Vec::new()
            }
            Family::RadialProfile2d { profile } => vec![profile.support_radius()],
            Family::RadialPlusDipole2d { b0, b1, .. } => {
                if b0.radius == b1.radius {
                    vec![b0.radius]
                } else {
                    vec![b0.radius.min(b1.radius), b0.radius.max(b1.radius)]
                }
            }
            Family::Bump3d { radius, .. } => vec![*radius],
            _ => Vec::new(),
        }
    }
}

/// Finite-difference divergence of a 3D catalog field at `x`.
pub fn divergence_residual(spec: &FieldSpec, x: Vec3, h: f64) -> Result<f64> {
    let field = |y: Vec3| spec.eval_3d(y).unwrap_or(Vec3::ZERO);
    spec.eval_3d(x)?; // surface family errors
    Ok(fd_div(field, x, h))
}

/// Total 2D flux: area integral of B over the plane (Stokes, first form).
pub fn total_flux_2d(spec: &FieldSpec, cfg: &QuadratureConfig) -> Result<Estimate<f64>> {
    match &spec.family {
        Family::AbPointFlux2d { alpha } => {
            Ok(Estimate { value: -TWO_PI * alpha, error: 0.0 })
        }
        Family::Gaussian2d { .. } | Family::RadialProfile2d { .. } => {
            // Purely radial: 2*pi * int B(r) r dr.
            let radius = spec.effective_radius();
            let radial = integrate_1d(
                |r| spec.eval_2d(Vec2 { x: r, y: 0.0 }).unwrap_or(0.0) * r,
                0.0,
                radius,
                cfg,
            )?;
            Ok(Estimate { value: TWO_PI * radial.value, error: TWO_PI * radial.error })
        }
        _ => {
            let radius = spec.effective_radius();
            integrate_area_2d(|x| spec.eval_2d(x).unwrap_or(0.0), radius, cfg)
        }
    }
}

/// Circulation of a potential over the circle |x| = R (Stokes, second form).
pub fn circulation_flux_2d(
    a: impl Fn(Vec2) -> Vec2,
    radius: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<f64>> {
    integrate_circle(
        |theta| {
            let omega = Vec2::from_angle(theta);
            a(omega * radius).dot(omega.perp()) * radius
        },
        cfg,
    )
}
