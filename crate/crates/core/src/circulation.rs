//! Line circulations of the homogeneous potential and half-plane fluxes.
//!
//! The central object is I(x, xi) = int <A^(inf)(x + t xi), xi> dt over the
//! full line, defined for x orthogonal to xi. It is homogeneous of degree
//! zero in x, odd in xi, and for radial geometry reduces to half-plane
//! fluxes: I(omega, omega^(+/-)) = +/- f(omega).

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fields::{Family, FieldSpec};
use crate::gauge::asymptotic_coefficient_2d;
use crate::numerics::{integrate_1d_segmented, QuadratureConfig};
use crate::vec::{Vec2, Vector};

/// An orthonormal pair (point direction, line direction) for the
/// circulation integral.
#[derive(Debug, Clone, Copy)]
pub struct TangentPair<V: Vector> {
    pub point: V,
    pub direction: V,
}

/// Relative orthogonality tolerance for (x, xi).
const ORTHO_TOL: f64 = 1e-10;

impl<V: Vector> TangentPair<V> {
    /// Normalizes (x, xi); errors unless <x, xi> = 0 within tolerance.
    pub fn new(x: V, xi: V) -> Result<Self> {
        let nx = x.norm();
        let nxi = xi.norm();
        if nx == 0.0 || nxi == 0.0 {
            return Err(Error::InvalidConfig("tangent pair vectors must be nonzero"));
        }
        let inner = x.dot(xi);
        if inner.abs() > ORTHO_TOL * nx * nxi {
            return Err(Error::NotOrthogonal { inner });
        }
        Ok(TangentPair { point: x * (1.0 / nx), direction: xi * (1.0 / nxi) })
    }
}

/// The two unit normals of a planar direction: omega rotated by +pi/2 and
/// by -pi/2.
pub fn rotate_perp(omega: Vec2) -> (Vec2, Vec2) {
    let p = omega.normalize().perp();
    (p, -p)
}

/// I(x, xi) for a transversal potential a_inf homogeneous of degree -1,
/// supplied as a plain evaluator.
///
/// The line is folded onto the unit sphere by t = tan(phi): the integrand
/// becomes <a_inf(d), xi>/cos(phi) with d = cos(phi) x + sin(phi) xi, and
/// transversality turns it into -<a_inf(d), x>/sin(phi) — each form is used
/// on the half where its denominator is bounded, so no truncation or
/// endpoint singularity remains.
pub fn line_circulation_i<V: Vector>(
    a_inf: impl Fn(V) -> V,
    pair: &TangentPair<V>,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let (xh, xih) = (pair.point, pair.direction);
    let f = |phi: f64| {
        let (s, c) = phi.sin_cos();
        let a = a_inf(xh * c + xih * s);
        if phi.abs() <= FRAC_PI_4 {
            a.dot(xih) / c
        } else {
            -a.dot(xh) / s
        }
    };
    integrate_1d_segmented(
        &mut { f },
        &[-FRAC_PI_2, -FRAC_PI_4, FRAC_PI_4, FRAC_PI_2],
        cfg,
    )
    .map(|e| e.value)
}

/// Convenience wrapper validating (x, xi) before integrating.
pub fn line_circulation_i_at<V: Vector>(
    a_inf: impl Fn(V) -> V,
    x: V,
    xi: V,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    line_circulation_i(a_inf, &TangentPair::new(x, xi)?, cfg)
}

/// Integral of a directional coefficient a over the half circle of
/// directions with positive component along omega:
/// int_{theta - pi/2}^{theta + pi/2} a(psi) dpsi.
pub fn arc_integral_f(
    a: impl Fn(f64) -> f64,
    omega: Vec2,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let theta = omega.angle();
    integrate_1d_segmented(&mut { a }, &[theta - FRAC_PI_2, theta + FRAC_PI_2], cfg)
        .map(|e| e.value)
}

/// Flux of a 2D field through the half-plane {x : <x, omega> > 0},
/// computed as the arc integral of the radial second moment a(psi).
/// The two half-plane fluxes tile the plane: f(omega) + f(-omega) = Phi.
pub fn half_plane_flux_f(spec: &FieldSpec, omega: Vec2, cfg: &QuadratureConfig) -> Result<f64> {
    if let Family::AbPointFlux2d { alpha } = spec.family {
        return Ok(-PI * alpha);
    }
    // tighten the inner radial integral so its bias stays below the outer
    // tolerance
    let inner = QuadratureConfig {
        abs_tol: 0.02 * cfg.abs_tol,
        rel_tol: 0.02 * cfg.rel_tol,
        ..*cfg
    };
    arc_integral_f(
        |psi| asymptotic_coefficient_2d(spec, Vec2::from_angle(psi), &inner).unwrap_or(f64::NAN),
        omega,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::BumpProfile;
    use crate::gauge::decompose_potential_2d;
    use crate::vec::{v2, v3};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig { abs_tol: 1e-11, rel_tol: 1e-11, ..QuadratureConfig::default() }
    }

    #[test]
    fn rotate_perp_basics() {
        let omega = v2(3.0, 4.0);
        let (p, m) = rotate_perp(omega);
        assert!(p.dot(omega).abs() < 1e-15);
        assert!((p.norm() - 1.0).abs() < 1e-15);
        assert!((p + m).norm() < 1e-15);
        assert!(omega.normalize().cross(p) > 0.0);
    }

    #[test]
    fn tangent_pair_rejects_skew_input() {
        assert!(matches!(
            TangentPair::new(v2(1.0, 0.0), v2(0.1, 1.0)),
            Err(Error::NotOrthogonal { .. })
        ));
        assert!(TangentPair::new(v2(2.0, 0.0), v2(0.0, -3.0)).is_ok());
    }

    #[test]
    fn circulation_is_odd_in_direction() {
        let spec = FieldSpec::gaussian2d(1.0);
        let d = decompose_potential_2d(&spec, &cfg()).unwrap();
        let x = v2(0.6, 0.8);
        let xi = x.perp();
        let plus = line_circulation_i_at(&d.a_inf, x, xi, &cfg()).unwrap();
        let minus = line_circulation_i_at(&d.a_inf, x, -xi, &cfg()).unwrap();
        assert!((plus + minus).abs() < 1e-9, "{plus} vs {minus}");
        // degree-zero homogeneity in x
        let scaled = line_circulation_i_at(&d.a_inf, x * 7.0, xi, &cfg()).unwrap();
        assert!((plus - scaled).abs() < 1e-9);
    }

    #[test]
    fn circulation_equals_half_plane_flux() {
        let spec = FieldSpec::gaussian2d(1.0);
        let d = decompose_potential_2d(&spec, &cfg()).unwrap();
        for theta in [0.0, 1.1, 2.7, -2.0] {
            let omega = Vec2::from_angle(theta);
            let (wp, wm) = rotate_perp(omega);
            let f = half_plane_flux_f(&spec, omega, &cfg()).unwrap();
            let ip = line_circulation_i_at(&d.a_inf, omega, wp, &cfg()).unwrap();
            let im = line_circulation_i_at(&d.a_inf, omega, wm, &cfg()).unwrap();
            assert!((ip - f).abs() < 1e-7, "theta {theta}: {ip} vs {f}");
            assert!((im + f).abs() < 1e-7);
        }
    }

    #[test]
    fn gaussian_half_plane_flux_is_half_total() {
        // radial field: f(omega) = Phi / 2 = pi/2 for every omega
        let spec = FieldSpec::gaussian2d(1.0);
        let f = half_plane_flux_f(&spec, v2(0.2, -0.98), &cfg()).unwrap();
        assert!((f - FRAC_PI_2).abs() < 1e-8, "{f}");
    }

    #[test]
    fn dipole_half_plane_flux_closed_form() {
        let b0 = BumpProfile { coeff: 1.0, radius: 2.0 };
        let b1 = BumpProfile { coeff: 0.7, radius: 1.5 };
        let q = v2(0.3, -0.4);
        let spec = FieldSpec::radial_plus_dipole_2d(b0, b1, q);
        let alpha = -b0.moment();
        let p = q * b1.moment();
        for theta in [0.0, 0.9, 2.2, -1.3] {
            let omega = Vec2::from_angle(theta);
            let f = half_plane_flux_f(&spec, omega, &cfg()).unwrap();
            let expect = -PI * alpha + 2.0 * p.dot(omega);
            assert!((f - expect).abs() < 1e-8, "theta {theta}: {f} vs {expect}");
        }
        // the two half-planes tile the plane
        let omega = Vec2::from_angle(0.37);
        let total = half_plane_flux_f(&spec, omega, &cfg()).unwrap()
            + half_plane_flux_f(&spec, -omega, &cfg()).unwrap();
        let phi = crate::fields::total_flux_2d(&spec, &cfg()).unwrap().value;
        assert!((total - phi).abs() < 1e-8, "{total} vs {phi}");
    }

    #[test]
    fn ab_half_plane_flux_is_analytic() {
        let spec = FieldSpec::ab_point_flux_2d(0.3);
        let f = half_plane_flux_f(&spec, v2(1.0, 0.0), &cfg()).unwrap();
        assert!((f + 0.3 * PI).abs() < 1e-15);
    }

    #[test]
    fn gradient_potential_circulation_is_boundary_difference() {
        // a_inf = grad(x3 / |x|) is transversal and homogeneous of degree
        // -1; its line circulation telescopes to 2 * xi_3.
        let a_inf = |x: crate::vec::Vec3| {
            let r = x.norm();
            (v3(0.0, 0.0, 1.0) - x * (x.z / (r * r))) * (1.0 / r)
        };
        let samples = [
            (v3(1.0, 0.0, 0.0), v3(0.0, 0.6, 0.8)),
            (v3(0.0, 1.0, 1.0), v3(1.0, 0.0, 0.0)),
            (v3(1.0, -2.0, 0.5), v3(2.0, 1.0, 0.0)),
        ];
        for &(x, xi) in &samples {
            let i = line_circulation_i_at(a_inf, x, xi, &cfg()).unwrap();
            let expect = 2.0 * xi.normalize().z;
            assert!((i - expect).abs() < 1e-9, "{i} vs {expect}");
        }
    }
}
