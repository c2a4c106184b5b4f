//! Toroidal-solenoid worked example: tangency geometry, the profile g(z),
//! its antiderivative G, the gauge scalar on the sphere u(omega), the
//! section flux Phi_s, and the resulting spectrum arc.
//!
//! The solenoid T is rotationally symmetric about the x3-axis with a
//! strictly convex cross-section S in the (rho, x3) half-plane. The ray
//! L_z = {s (1+z^2)^{-1/2} (1, 0, z)} meets S for z between the tangency
//! values z1 < z2, entering at distance kappa_minus(z) and leaving at
//! kappa_plus(z). All quantities below reduce to one-dimensional integrals
//! of g(z) = -alpha (kappa_plus - kappa_minus).

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::amplitude::SpectralSet;
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, SectionShape};
use crate::numerics::{integrate_1d, integrate_1d_segmented, QuadratureConfig};
use crate::vec::{v3, Vec3};

/// Rotationally symmetric solenoid with field magnitude alpha / rho inside.
#[derive(Debug, Clone)]
pub struct SolenoidGeometry {
    pub alpha: f64,
    pub shape: SectionShape,
    /// Lower tangency value of z = x3 / rho.
    pub z1: f64,
    /// Upper tangency value.
    pub z2: f64,
}

impl SolenoidGeometry {
    pub fn new(alpha: f64, shape: SectionShape) -> Result<SolenoidGeometry> {
        shape.validate()?;
        let (z1, z2) = shape.tangency();
        if !(z1 < z2) {
            return Err(Error::InvalidConfig("degenerate section: z1 >= z2"));
        }
        Ok(SolenoidGeometry { alpha, shape, z1, z2 })
    }

    pub fn disc(alpha: f64, l: f64, r: f64) -> Result<SolenoidGeometry> {
        SolenoidGeometry::new(alpha, SectionShape::Disc { l, r })
    }

    /// The field specification carrying this geometry.
    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::toroidal_solenoid_3d(self.alpha, self.shape.clone())
    }
}

/// Entry and exit distances of the ray L_z through the section.
pub fn torus_kappa(z: f64, shape: &SectionShape) -> Result<(f64, f64)> {
    shape.kappa(z)
}

/// g(z) = -alpha (kappa_plus(z) - kappa_minus(z)); zero outside [z1, z2].
pub fn torus_g(z: f64, geom: &SolenoidGeometry) -> f64 {
    match geom.shape.kappa(z) {
        Ok((lo, hi)) => -geom.alpha * (hi - lo),
        Err(_) => 0.0,
    }
}

fn g_over_weight(geom: &SolenoidGeometry) -> impl Fn(f64) -> f64 + '_ {
    move |t: f64| -torus_g(t, geom) / (1.0 + t * t).sqrt()
}

/// G(z) = -int_{z1}^{z} g(t) (1 + t^2)^{-1/2} dt, the gauge scalar as a
/// function of z = x3 / rho; zero for z <= z1 and constant U0 for z >= z2.
pub fn torus_big_g(z: f64, geom: &SolenoidGeometry, cfg: &QuadratureConfig) -> Result<f64> {
    if z <= geom.z1 {
        return Ok(0.0);
    }
    let hi = z.min(geom.z2);
    let inner = QuadratureConfig {
        max_subdivisions: cfg.max_subdivisions.max(2000),
        ..*cfg
    };
    Ok(integrate_1d(g_over_weight(geom), geom.z1, hi, &inner)?.value)
}

/// The saturation value U0 = G(z) for z >= z2.
pub fn torus_u0(geom: &SolenoidGeometry, cfg: &QuadratureConfig) -> Result<f64> {
    torus_big_g(geom.z2, geom, cfg)
}

/// q(z) = G(z) - G(-z): odd, monotone (increasing for alpha > 0), with
/// limits +/- q0 = -/+ Phi_s.
pub fn torus_q(z: f64, geom: &SolenoidGeometry, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(torus_big_g(z, geom, cfg)? - torus_big_g(-z, geom, cfg)?)
}

/// Multiplier exponent u(omega) = U(omega) - U(-omega) = q(z(omega)) with
/// z(omega) = omega3 (1 - omega3^2)^{-1/2}; the poles carry the limits
/// +/- q0.
pub fn torus_u(omega: Vec3, geom: &SolenoidGeometry, cfg: &QuadratureConfig) -> Result<f64> {
    let w = omega * (1.0 / omega.norm());
    let rho2 = w.x * w.x + w.y * w.y;
    if rho2 < 1e-28 {
        let q0 = torus_u0(geom, cfg)?;
        return Ok(w.z.signum() * q0);
    }
    torus_q(w.z / rho2.sqrt(), geom, cfg)
}

/// The two independent evaluations of the section flux and their mismatch.
#[derive(Debug, Clone, Copy)]
pub struct SectionFlux {
    /// Surface quadrature of the field over the cross-section.
    pub quadrature: f64,
    /// -U0, the value predicted by the gauge scalar.
    pub minus_u0: f64,
    /// quadrature - (-U0).
    pub defect: f64,
}

/// Total height of the slice {x3 : (rho, x3) in S} of a convex polyline
/// section at abscissa rho.
fn polyline_extent(points: &[(f64, f64)], rho: f64) -> f64 {
    let n = points.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        if (a.0 > rho) != (b.0 > rho) {
            let t = (rho - a.0) / (b.0 - a.0);
            let x3 = a.1 + t * (b.1 - a.1);
            lo = lo.min(x3);
            hi = hi.max(x3);
        }
    }
    if hi > lo {
        hi - lo
    } else {
        0.0
    }
}

/// Flux through the cross-section, Phi_s = -alpha int int_S drho dx3 / rho,
/// computed by surface quadrature and compared against -U0. The sign is
/// the orientation for which the two evaluations agree.
pub fn torus_flux_section(geom: &SolenoidGeometry, cfg: &QuadratureConfig) -> Result<SectionFlux> {
    let alpha = geom.alpha;
    let quadrature = match &geom.shape {
        SectionShape::Disc { l, r } => {
            // rho = l + r sin(phi) turns the sqrt extent into cos^2
            let (l, r) = (*l, *r);
            let est = integrate_1d(
                |phi: f64| {
                    let c = phi.cos();
                    2.0 * r * r * c * c / (l + r * phi.sin())
                },
                -0.5 * PI,
                0.5 * PI,
                cfg,
            )?;
            -alpha * est.value
        }
        SectionShape::ConvexBoundary { points } => {
            let mut breaks: alloc::vec::Vec<f64> = points.iter().map(|p| p.0).collect();
            breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
            breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
            let pts = points.clone();
            let est = integrate_1d_segmented(
                &mut move |rho: f64| polyline_extent(&pts, rho) / rho,
                &breaks,
                cfg,
            )?;
            -alpha * est.value
        }
    };
    let minus_u0 = -torus_u0(geom, cfg)?;
    Ok(SectionFlux { quadrature, minus_u0, defect: quadrature - minus_u0 })
}

/// Essential spectrum of the scattering matrix for the solenoid: the arc
/// between e^{-i |Phi_s|} and e^{i |Phi_s|}, or the full circle once
/// |Phi_s| reaches pi.
pub fn torus_spectrum(geom: &SolenoidGeometry, cfg: &QuadratureConfig) -> Result<SpectralSet> {
    let phi_s = -torus_u0(geom, cfg)?;
    let a = phi_s.abs();
    if a >= PI {
        return Ok(SpectralSet::FullCircle);
    }
    Ok(SpectralSet::from_arcs(alloc::vec![(-a, a)], 1e-12))
}

/// Homogeneous part of the transversal potential in closed form:
/// A(x) = g(z) |x|^{-1} (x1 x3 / rho^2, x2 x3 / rho^2, -1).
pub fn solenoid_a_inf(geom: &SolenoidGeometry) -> impl Fn(Vec3) -> Vec3 + Clone + '_ {
    move |x: Vec3| {
        let rho2 = x.x * x.x + x.y * x.y;
        if rho2 == 0.0 {
            return Vec3::ZERO;
        }
        let g = torus_g(x.z / rho2.sqrt(), geom);
        if g == 0.0 {
            return Vec3::ZERO;
        }
        let r = x.norm();
        v3(x.x * x.z / rho2, x.y * x.z / rho2, -1.0) * (g / r)
    }
}

/// Full transversal potential in closed form: alpha times the length of the
/// parameter interval [kappa_minus / |x|, min(1, kappa_plus / |x|)] along
/// the ray, times (-x1 x3 / rho^2, -x2 x3 / rho^2, 1). Vanishes before the
/// ray reaches the solenoid and freezes at the homogeneous part beyond it.
pub fn solenoid_transversal_closed_form(geom: &SolenoidGeometry, x: Vec3) -> Vec3 {
    let rho2 = x.x * x.x + x.y * x.y;
    if rho2 == 0.0 {
        return Vec3::ZERO;
    }
    let z = x.z / rho2.sqrt();
    let (klo, khi) = match geom.shape.kappa(z) {
        Ok(k) => k,
        Err(_) => return Vec3::ZERO,
    };
    let r = x.norm();
    let len = (khi / r).min(1.0) - klo / r;
    if len <= 0.0 {
        return Vec3::ZERO;
    }
    v3(-x.x * x.z / rho2, -x.y * x.z / rho2, 1.0) * (geom.alpha * len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulation::{line_circulation_i, TangentPair};
    use crate::gauge::{
        decompose_potential_3d, gauge_scalar_u, short_range_potential_3d, transversal_potential_3d,
        Contour, CutoffSpec,
    };

    fn cfg() -> QuadratureConfig {
        QuadratureConfig { abs_tol: 1e-10, rel_tol: 1e-10, ..QuadratureConfig::default() }
    }

    fn disc() -> SolenoidGeometry {
        SolenoidGeometry::disc(1.0, 2.0, 1.0).unwrap()
    }

    /// U0 for the unit-strength disc l=2, r=1.
    fn u0_closed_form() -> f64 {
        2.0 * PI * (2.0 - 3.0f64.sqrt())
    }

    struct XorShift(u64);
    impl XorShift {
        fn next_f64(&mut self) -> f64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            (self.0 >> 11) as f64 / (1u64 << 53) as f64
        }
    }

    #[test]
    fn kappa_disc_closed_form() {
        let g = disc();
        let z2 = 1.0 / 3.0f64.sqrt();
        assert!((g.z2 - z2).abs() < 1e-12 && (g.z1 + z2).abs() < 1e-12);
        let (lo, hi) = torus_kappa(0.0, &g.shape).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 3.0).abs() < 1e-12);
        let (lo, hi) = torus_kappa(z2, &g.shape).unwrap();
        assert!((lo - 3.0f64.sqrt()).abs() < 1e-7 && (hi - 3.0f64.sqrt()).abs() < 1e-7);
        assert!(matches!(
            torus_kappa(0.6, &g.shape),
            Err(Error::OutsideTangencyRange { .. })
        ));
    }

    #[test]
    fn g_profile_values() {
        let g = disc();
        assert!((torus_g(0.0, &g) + 2.0).abs() < 1e-12);
        assert!(torus_g(g.z2, &g).abs() < 1e-6);
        assert!(torus_g(0.7, &g).abs() < 1e-15);
        for z in [-0.5, -0.2, 0.0, 0.3, 0.55] {
            let expect = -2.0 * (1.0 + z * z).sqrt().recip()
                * (1.0 - 3.0 * z * z).max(0.0).sqrt();
            assert!((torus_g(z, &g) - expect).abs() < 1e-10, "z {z}");
        }
        let zero = SolenoidGeometry::disc(0.0, 2.0, 1.0).unwrap();
        assert!(torus_g(0.1, &zero) == 0.0);
    }

    #[test]
    fn big_g_saturates_at_closed_form_u0() {
        let g = disc();
        let c = cfg();
        assert_eq!(torus_big_g(g.z1 - 0.2, &g, &c).unwrap(), 0.0);
        let u0 = torus_u0(&g, &c).unwrap();
        assert!((u0 - u0_closed_form()).abs() < 1e-8, "{u0}");
        assert!((torus_big_g(5.0, &g, &c).unwrap() - u0).abs() < 1e-12);
        // increasing for alpha > 0
        let mut prev = 0.0;
        for k in 1..=10 {
            let z = g.z1 + (g.z2 - g.z1) * k as f64 / 10.0;
            let v = torus_big_g(z, &g, &c).unwrap();
            assert!(v > prev, "z {z}");
            prev = v;
        }
    }

    #[test]
    fn q_is_odd_and_monotone() {
        let g = disc();
        let c = cfg();
        assert!(torus_q(0.0, &g, &c).unwrap().abs() < 1e-12);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=16 {
            let z = -0.8 + 0.1 * k as f64;
            let v = torus_q(z, &g, &c).unwrap();
            let odd = torus_q(-z, &g, &c).unwrap();
            assert!((v + odd).abs() < 1e-10);
            assert!(v >= prev - 1e-12, "z {z}");
            prev = v;
        }
        // decreasing for alpha < 0
        let neg = SolenoidGeometry::disc(-0.7, 2.0, 1.0).unwrap();
        assert!(torus_q(0.3, &neg, &c).unwrap() < torus_q(0.1, &neg, &c).unwrap());
    }

    #[test]
    fn u_axial_symmetry_poles_and_oddness() {
        let g = disc();
        let c = cfg();
        let q0 = torus_u0(&g, &c).unwrap();
        assert!((torus_u(v3(0.0, 0.0, 1.0), &g, &c).unwrap() - q0).abs() < 1e-12);
        assert!((torus_u(v3(0.0, 0.0, -1.0), &g, &c).unwrap() + q0).abs() < 1e-12);
        assert!(torus_u(v3(0.6, -0.8, 0.0), &g, &c).unwrap().abs() < 1e-12);
        // fixed-latitude ring: u depends only on omega3
        let w3 = 0.4;
        let r = (1.0 - w3 * w3).sqrt();
        let base = torus_u(v3(r, 0.0, w3), &g, &c).unwrap();
        for k in 1..8 {
            let phi = 2.0 * PI * k as f64 / 8.0;
            let w = v3(r * phi.cos(), r * phi.sin(), w3);
            let u = torus_u(w, &g, &c).unwrap();
            assert!((u - base).abs() < 1e-10);
            assert!((torus_u(-w, &g, &c).unwrap() + u).abs() < 1e-12);
        }
    }

    #[test]
    fn section_flux_two_ways() {
        let c = cfg();
        let f = torus_flux_section(&disc(), &c).unwrap();
        assert!((f.quadrature.abs() - u0_closed_form()).abs() < 1e-5, "{:?}", f);
        assert!(f.defect.abs() < 1e-6, "{:?}", f);
        assert!((f.quadrature + f.minus_u0.abs()).abs() < 1e-6); // Phi_s < 0 for alpha > 0

        let zero = SolenoidGeometry::disc(0.0, 2.0, 1.0).unwrap();
        let f = torus_flux_section(&zero, &c).unwrap();
        assert!(f.quadrature == 0.0 && f.minus_u0 == 0.0);

        // polygonal approximation of the same disc
        let n = 256;
        let points: alloc::vec::Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                (2.0 + t.cos(), t.sin())
            })
            .collect();
        let poly =
            SolenoidGeometry::new(1.0, SectionShape::ConvexBoundary { points }).unwrap();
        let fp = torus_flux_section(&poly, &c).unwrap();
        assert!((fp.quadrature - f_disc_value()).abs() < 1e-3, "{:?}", fp);
        assert!(fp.defect.abs() < 1e-3, "{:?}", fp);
    }

    fn f_disc_value() -> f64 {
        -u0_closed_form()
    }

    #[test]
    fn spectrum_arc_and_full_circle() {
        let c = cfg();
        let set = torus_spectrum(&disc(), &c).unwrap();
        let a = u0_closed_form();
        match &set {
            SpectralSet::Arcs(arcs) => {
                assert_eq!(arcs.len(), 1);
                assert!(set.contains_angle(a, 1e-6) && set.contains_angle(-a, 1e-6));
                assert!(!set.contains_angle(PI, 1e-6));
                assert!((arcs[0].1 - arcs[0].0 - 2.0 * a).abs() < 1e-6);
            }
            _ => panic!("expected an arc"),
        }
        let strong = SolenoidGeometry::disc(2.0, 2.0, 1.0).unwrap();
        assert_eq!(torus_spectrum(&strong, &c).unwrap(), SpectralSet::FullCircle);
        let zero = SolenoidGeometry::disc(0.0, 2.0, 1.0).unwrap();
        match torus_spectrum(&zero, &c).unwrap() {
            SpectralSet::Arcs(arcs) => {
                assert_eq!(arcs.len(), 1);
                assert!(arcs[0].1 - arcs[0].0 < 1e-12);
            }
            _ => panic!("expected the point 1"),
        }
    }

    #[test]
    fn circulation_collapses_to_u() {
        // the homogeneous part is a pure gradient on the sphere, so the
        // line circulation depends only on the line direction
        let g = disc();
        let c = cfg();
        let a = solenoid_a_inf(&g);
        let pairs = [
            (v3(1.0, 0.0, 0.0), v3(0.0, 0.0, 1.0)),
            (v3(0.0, 1.0, 1.0), v3(1.0, 0.0, 0.0)),
            (v3(1.0, -2.0, 0.5), v3(2.0, 1.0, 0.0)),
            (v3(1.0, 1.0, -1.0), v3(0.5, 0.5, 1.0)),
        ];
        for &(x, xi) in &pairs {
            let pair = TangentPair::new(x, xi).unwrap();
            let i = line_circulation_i(&a, &pair, &c).unwrap();
            let u = torus_u(pair.direction, &g, &c).unwrap();
            assert!((i - u).abs() < 1e-5, "{i} vs {u}");
        }
    }

    #[test]
    fn transversal_potential_region_law() {
        let g = disc();
        let c = cfg();
        let spec = g.field_spec().unwrap();
        let mut rng = XorShift(0x9e3779b97f4a7c15);
        let mut checked = [0usize; 4];
        while checked.iter().any(|&n| n < 50) {
            let phi = 2.0 * PI * rng.next_f64();
            let region = (rng.next_f64() * 4.0) as usize;
            let (z, s) = match region {
                // outside the tangency cone entirely
                0 => (g.z2 + 0.1 + rng.next_f64(), 0.3 + 2.5 * rng.next_f64()),
                // inner cone segment, before the solenoid
                1 => {
                    let z = 0.9 * (g.z1 + (g.z2 - g.z1) * rng.next_f64());
                    let (klo, _) = g.shape.kappa(z).unwrap();
                    (z, klo * (0.2 + 0.7 * rng.next_f64()))
                }
                // inside the solenoid
                2 => {
                    let z = 0.85 * (g.z1 + (g.z2 - g.z1) * rng.next_f64());
                    let (klo, khi) = g.shape.kappa(z).unwrap();
                    (z, klo + (khi - klo) * (0.15 + 0.7 * rng.next_f64()))
                }
                // beyond the solenoid
                _ => {
                    let z = 0.9 * (g.z1 + (g.z2 - g.z1) * rng.next_f64());
                    let (_, khi) = g.shape.kappa(z).unwrap();
                    (z, khi * (1.1 + rng.next_f64()))
                }
            };
            let rho = s / (1.0 + z * z).sqrt();
            let x = v3(rho * phi.cos(), rho * phi.sin(), rho * z);
            let got = transversal_potential_3d(&spec, x, &c).unwrap();
            let expect = solenoid_transversal_closed_form(&g, x);
            assert!(
                (got - expect).norm() < 1e-8,
                "region {region} at {:?}: {:?} vs {:?}",
                x,
                got,
                expect
            );
            checked[region] += 1;
        }
    }

    #[test]
    fn closed_form_regions_are_consistent() {
        let g = disc();
        // before the solenoid: zero; beyond: the homogeneous part
        let a = solenoid_a_inf(&g);
        let z = 0.2;
        let (klo, khi) = g.shape.kappa(z).unwrap();
        let dir = v3(1.0, 0.0, z).normalize();
        let inner = dir * (0.5 * klo);
        assert!(solenoid_transversal_closed_form(&g, inner).norm() < 1e-15);
        let outer = dir * (1.5 * khi);
        let tr = solenoid_transversal_closed_form(&g, outer);
        assert!((tr - a(outer)).norm() < 1e-12);
    }

    #[test]
    fn gauge_scalar_matches_big_g() {
        let g = disc();
        let c = cfg();
        let spec = g.field_spec().unwrap();
        let d = decompose_potential_3d(&spec, &c).unwrap();
        let x0 = v3(1.0, 0.0, -5.0); // z(x0) well below z1, so U(x0) = 0
        for &x in &[v3(2.0, 0.5, 0.3), v3(-1.0, 1.0, 0.5), v3(0.3, 0.1, 4.0)] {
            let u = gauge_scalar_u(&d, x, x0, Contour::GreatCircle, &c).unwrap();
            let z = x.z / (x.x * x.x + x.y * x.y).sqrt();
            let expect = torus_big_g(z, &g, &c).unwrap();
            assert!((u - expect).abs() < 1e-6, "at {:?}: {u} vs {expect}", x);
        }
    }

    #[test]
    fn short_range_potential_outside_cone() {
        let g = disc();
        let c = cfg();
        let spec = g.field_spec().unwrap();
        let d = decompose_potential_3d(&spec, &c).unwrap();
        let cutoff = CutoffSpec::for_spec(&spec).unwrap(); // R1 = 0.5, R2 = 1
        let x0 = v3(1.0, 0.0, -5.0);
        let u0 = torus_u0(&g, &c).unwrap();
        // below the cone the potential vanishes
        let x = v3(0.2, 0.1, -0.7);
        let a = short_range_potential_3d(&spec, &d, &cutoff, x0, x, &c).unwrap();
        assert!(a.norm() < 1e-8, "{:?}", a);
        // above the cone it is the pure-gradient tail -U0 grad(eta)
        let x = v3(0.15, 0.1, 0.75);
        let a = short_range_potential_3d(&spec, &d, &cutoff, x0, x, &c).unwrap();
        let r = x.norm();
        let expect = x * (-u0 * cutoff.eta_prime(r) / r);
        assert!((a - expect).norm() < 1e-8, "{:?} vs {:?}", a, expect);
    }
}
