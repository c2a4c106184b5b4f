//! Singular part of the scattering amplitude and the essential spectrum of
//! the scattering matrix in dimensions two and three.
//!
//! The point-flux reference solution is carried in closed form (eigenvalues,
//! kernel, partial-wave sum). General 2D fields reduce to half-plane fluxes
//! f(omega); the singular kernel is a delta coefficient plus a principal
//! value term with a direction-dependent phase. In 3D the kernel is built
//! from circulations I(psi, omega) over great circles: a multiplicative
//! average p_av and a principal-value kernel q obtained by an epsilon
//! regularization of the (t - i0)^(-2) pairing.

use alloc::boxed::Box;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::circulation::{line_circulation_i, rotate_perp, TangentPair};
use crate::error::{Error, Result};
use crate::fields::{total_flux_2d, Family, FieldSpec};
use crate::gauge::asymptotic_coefficient_2d;
use crate::numerics::{
    regularized_i0_pairing, EpsilonSchedule, PeriodicInterp, QuadratureConfig,
};
use crate::vec::{v3, Vec2, Vec3};
use crate::Complex;

const TWO_PI: f64 = 2.0 * PI;

fn cis(phi: f64) -> Complex {
    Complex::from_polar(1.0, phi)
}

// ---------------------------------------------------------------------------
// Point-flux reference solution

/// Eigenvalue of the point-flux scattering matrix on the angular harmonic
/// e^{im theta}: e^{i alpha pi} below the threshold m = -alpha and
/// e^{-i alpha pi} above it. Independent of the energy.
pub fn ab_eigenvalue(m: i64, alpha: f64) -> Complex {
    if (m as f64) < -alpha {
        cis(alpha * PI)
    } else {
        cis(-alpha * PI)
    }
}

/// Closed-form point-flux amplitude: the delta coefficient cos(pi alpha)
/// and the off-diagonal value
/// i pi^{-1} e^{-i [alpha](theta-theta')} sin(pi alpha) (e^{i(theta-theta')}-1)^{-1},
/// where [alpha] is the greatest integer below alpha.
pub fn ab_kernel_closed_form(theta: f64, theta_p: f64, alpha: f64) -> Result<(f64, Complex)> {
    let delta = theta - theta_p;
    let denom = cis(delta) - Complex::new(1.0, 0.0);
    if denom.norm() < 1e-12 {
        return Err(Error::DiagonalEvaluation);
    }
    let offdiag =
        Complex::new(0.0, 1.0 / PI) * cis(-alpha.floor() * delta) * (alpha * PI).sin() / denom;
    Ok(((alpha * PI).cos(), offdiag))
}

/// Abel-regularized partial-wave sum
/// (2 pi)^{-1} sum_{|m| <= M} s_m rho^{|m|} e^{im(theta-theta')}.
/// Converges to the closed-form off-diagonal value as rho -> 1, M -> infinity;
/// the delta part spreads as a Poisson kernel.
pub fn ab_partial_wave_sum(
    theta: f64,
    theta_p: f64,
    alpha: f64,
    m_max: u32,
    abel_radius: f64,
) -> Complex {
    let delta = theta - theta_p;
    let mut sum = Complex::new(0.0, 0.0);
    for m in -(m_max as i64)..=(m_max as i64) {
        let weight = abel_radius.powi(m.unsigned_abs() as i32);
        sum += ab_eigenvalue(m, alpha) * cis(m as f64 * delta) * weight;
    }
    // the eigenvalues are constant for |m| > max(M, |alpha|), so both
    // truncated tails are geometric series with closed-form sums
    if (m_max as f64) > alpha.abs() {
        let one = Complex::new(1.0, 0.0);
        let zp = cis(delta) * abel_radius;
        let zm = cis(-delta) * abel_radius;
        sum += ab_eigenvalue(m_max as i64 + 1, alpha) * zp.powu(m_max + 1) / (one - zp);
        sum += ab_eigenvalue(-(m_max as i64) - 1, alpha) * zm.powu(m_max + 1) / (one - zm);
    }
    sum / TWO_PI
}

// ---------------------------------------------------------------------------
// Spectral sets

/// Subset of the unit circle: a union of closed arcs (start, end) with
/// start in [0, 2 pi) and end >= start (end > 2 pi denotes wrap-around),
/// or the full circle.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralSet {
    FullCircle,
    Arcs(Vec<(f64, f64)>),
}

fn normalize_angle(a: f64) -> f64 {
    let r = a % TWO_PI;
    if r < 0.0 {
        r + TWO_PI
    } else {
        r
    }
}

impl SpectralSet {
    /// Merges raw arcs (start, end), end >= start, into a normalized
    /// non-overlapping union; tolerance `tol` glues near-touching arcs.
    pub fn from_arcs(raw: Vec<(f64, f64)>, tol: f64) -> SpectralSet {
        // split every arc into pieces inside [0, 2 pi]
        let mut pieces: Vec<(f64, f64)> = Vec::new();
        for (s, e) in raw {
            let len = e - s;
            if len >= TWO_PI {
                return SpectralSet::FullCircle;
            }
            let s = normalize_angle(s);
            let e = s + len.max(0.0);
            if e <= TWO_PI {
                pieces.push((s, e));
            } else {
                pieces.push((s, TWO_PI));
                pieces.push((0.0, e - TWO_PI));
            }
        }
        if pieces.is_empty() {
            return SpectralSet::Arcs(Vec::new());
        }
        pieces.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (s, e) in pieces {
            match merged.last_mut() {
                Some(last) if s <= last.1 + tol => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        // rejoin across the 0 / 2 pi seam into a single wrap-around arc
        if merged.len() >= 2 && merged[0].0 <= tol && merged.last().unwrap().1 >= TWO_PI - tol {
            let first = merged.remove(0);
            merged.last_mut().unwrap().1 = TWO_PI + first.1;
        }
        if merged.len() == 1 && merged[0].1 - merged[0].0 >= TWO_PI - tol {
            return SpectralSet::FullCircle;
        }
        SpectralSet::Arcs(merged)
    }

    /// Builds the set covered by sampled angles, clustering samples whose
    /// gaps are below `resolution`.
    pub fn from_angles(angles: &[f64], resolution: f64) -> SpectralSet {
        let mut a: Vec<f64> = angles.iter().map(|&x| normalize_angle(x)).collect();
        if a.is_empty() {
            return SpectralSet::Arcs(Vec::new());
        }
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let n = a.len();
        let mut splits: Vec<usize> = Vec::new();
        for i in 0..n {
            let next = if i + 1 == n { a[0] + TWO_PI } else { a[i + 1] };
            if next - a[i] > resolution {
                splits.push(i);
            }
        }
        if splits.is_empty() {
            return SpectralSet::FullCircle;
        }
        let mut arcs = Vec::new();
        for (k, &end_idx) in splits.iter().enumerate() {
            let start_idx = (splits[(k + splits.len() - 1) % splits.len()] + 1) % n;
            let start = a[start_idx];
            let mut end = a[end_idx];
            if end < start {
                end += TWO_PI;
            }
            arcs.push((start, end));
        }
        SpectralSet::from_arcs(arcs, 1e-12)
    }

    pub fn contains_angle(&self, phi: f64, tol: f64) -> bool {
        match self {
            SpectralSet::FullCircle => true,
            SpectralSet::Arcs(arcs) => {
                let p = normalize_angle(phi);
                arcs.iter().any(|&(s, e)| {
                    (p >= s - tol && p <= e + tol) || (p + TWO_PI >= s - tol && p + TWO_PI <= e + tol)
                })
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 2D amplitude

/// Direction coefficient a(psi): analytic constant for the point flux,
/// cached table otherwise.
enum ACoeff {
    Const(f64),
    Table(PeriodicInterp),
}

impl ACoeff {
    fn build(spec: &FieldSpec, n: usize, cfg: &QuadratureConfig) -> Result<ACoeff> {
        if let Family::AbPointFlux2d { alpha } = spec.family {
            return Ok(ACoeff::Const(-alpha));
        }
        let inner = QuadratureConfig {
            abs_tol: 0.1 * cfg.abs_tol,
            rel_tol: 0.1 * cfg.rel_tol,
            ..*cfg
        };
        let mut vals = Vec::with_capacity(n);
        for j in 0..n {
            let psi = TWO_PI * j as f64 / n as f64;
            vals.push(asymptotic_coefficient_2d(spec, Vec2::from_angle(psi), &inner)?);
        }
        Ok(ACoeff::Table(PeriodicInterp::from_values(vals)))
    }

    /// Half-plane flux f at the direction with polar angle theta.
    fn f(&self, theta: f64) -> f64 {
        match self {
            ACoeff::Const(c) => PI * c,
            ACoeff::Table(t) => integrate_table(t, theta - FRAC_PI_2, theta + FRAC_PI_2),
        }
    }
}

/// Exact integral of the piecewise-cubic periodic table over [lo, hi]:
/// node-aligned two-point Gauss, exact on each cubic piece.
fn integrate_table(t: &PeriodicInterp, lo: f64, hi: f64) -> f64 {
    let h = TWO_PI / t.len() as f64;
    let (a, b) = (lo / h, hi / h);
    let gauss = 0.5 / 3.0f64.sqrt();
    let mut sum = 0.0;
    let mut k = a.floor();
    while k < b {
        let s = a.max(k);
        let e = b.min(k + 1.0);
        let mid = 0.5 * (s + e);
        let half = 0.5 * (e - s);
        let g = 2.0 * half * gauss;
        sum += half * (t.at((mid - g) * h) + t.at((mid + g) * h));
        k += 1.0;
    }
    sum * h
}

/// Singular part of the 2D scattering amplitude:
/// e^{i phase(omega)} (cos(Phi/2) delta + pi^{-1} sin(Phi/2) P.V. sgn/|omega - omega'|).
pub struct SingularAmplitude2d {
    pub phase: Box<dyn Fn(Vec2) -> f64>,
    pub delta_coeff: f64,
    pub pv_coeff: f64,
    pub flux: f64,
    pub remainder_exponent: f64,
}

impl SingularAmplitude2d {
    /// Off-diagonal kernel value; the delta part is carried symbolically in
    /// `delta_coeff`. The orientation sign is the sign of det[omega omega'].
    pub fn kernel(&self, omega: Vec2, omega_p: Vec2) -> Result<Complex> {
        let det = omega.cross(omega_p);
        if det == 0.0 {
            return Err(Error::DiagonalEvaluation);
        }
        let magnitude = self.pv_coeff * det.signum() / (omega - omega_p).norm();
        Ok(cis((self.phase)(omega)) * magnitude)
    }
}

pub fn singular_amplitude_2d(
    spec: &FieldSpec,
    cfg: &QuadratureConfig,
) -> Result<SingularAmplitude2d> {
    let is_ab = matches!(spec.family, Family::AbPointFlux2d { .. });
    if !is_ab && spec.decay_exponent <= 2.0 {
        return Err(Error::DecayTooSlow { exponent: spec.decay_exponent - 1.0 });
    }
    let flux = total_flux_2d(spec, cfg)?.value;
    let coeff = Rc::new(ACoeff::build(spec, 1024, cfg)?);
    let phase = Box::new(move |omega: Vec2| {
        let (wp, wm) = rotate_perp(omega);
        0.5 * (coeff.f(wm.angle()) - coeff.f(wp.angle()))
    });
    Ok(SingularAmplitude2d {
        phase,
        delta_coeff: (0.5 * flux).cos(),
        pv_coeff: (0.5 * flux).sin() / PI,
        flux,
        remainder_exponent: spec.decay_exponent.min(3.0),
    })
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = 0.618_033_988_749_894_9;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if b - a < 1e-12 {
            break;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Essential spectrum of the 2D scattering matrix: the two mutually
/// conjugate arcs swept by e^{i f(omega)}, with the extrema of f refined
/// from an n_samples coarse scan.
pub fn essential_spectrum_2d(
    spec: &FieldSpec,
    n_samples: usize,
    cfg: &QuadratureConfig,
) -> Result<SpectralSet> {
    let is_ab = matches!(spec.family, Family::AbPointFlux2d { .. });
    if !is_ab && spec.decay_exponent <= 2.0 {
        return Err(Error::DecayTooSlow { exponent: spec.decay_exponent - 1.0 });
    }
    let n = n_samples.max(8);
    let coeff = ACoeff::build(spec, 1024, cfg)?;
    let f = |theta: f64| coeff.f(theta);
    let coarse: Vec<f64> = (0..n).map(|j| f(TWO_PI * j as f64 / n as f64)).collect();
    let mut gamma_plus = f64::NEG_INFINITY;
    let mut gamma_minus = f64::INFINITY;
    let h = TWO_PI / n as f64;
    for j in 0..n {
        let (prev, next) = (coarse[(j + n - 1) % n], coarse[(j + 1) % n]);
        let t = j as f64 * h;
        if coarse[j] >= prev && coarse[j] >= next {
            let (_, v) = golden_max(&f, t - h, t + h);
            gamma_plus = gamma_plus.max(v);
        }
        if coarse[j] <= prev && coarse[j] <= next {
            let neg = |x: f64| -f(x);
            let (_, v) = golden_max(&neg, t - h, t + h);
            gamma_minus = gamma_minus.min(-v);
        }
    }
    if gamma_plus - gamma_minus >= TWO_PI {
        return Ok(SpectralSet::FullCircle);
    }
    Ok(SpectralSet::from_arcs(
        alloc::vec![(gamma_minus, gamma_plus), (-gamma_plus, -gamma_minus)],
        1e-9,
    ))
}

/// Scattering-matrix multiplier of a pure gauge background:
/// e^{i(phi0(omega) - phi0(-omega))}.
pub fn pure_gauge_sm(phi0: impl Fn(Vec2) -> f64, omega: Vec2) -> Complex {
    cis(phi0(omega) - phi0(-omega))
}

/// Gauge covariance: only the phase moves, by phi0(omega) - phi0(-omega);
/// delta and principal-value coefficients (and the flux) are invariant.
pub fn gauge_covariance_transform(
    amp: SingularAmplitude2d,
    phi0: impl Fn(Vec2) -> f64 + 'static,
) -> SingularAmplitude2d {
    let old = amp.phase;
    SingularAmplitude2d {
        phase: Box::new(move |omega| old(omega) + phi0(omega) - phi0(-omega)),
        ..amp
    }
}

/// Differential cross section from an off-diagonal amplitude value:
/// (2 pi)^{d-1} lambda^{-(d-1)/2} |s|^2.
pub fn cross_section(s_value: Complex, lambda: f64, d: u32) -> f64 {
    let p = (d - 1) as f64;
    TWO_PI.powf(p) * lambda.powf(-0.5 * p) * s_value.norm_sqr()
}

// ---------------------------------------------------------------------------
// 3D amplitude

/// A point of the great circle S_omega = S^2 ∩ {x ⊥ omega}. Away from the
/// poles an explicit frame adapted to omega is used; near omega = ±e3 the
/// equatorial frame (e1, e2) applies.
pub fn circle_parametrization_3d(omega: Vec3, theta: f64) -> Vec3 {
    let rho2 = omega.x * omega.x + omega.y * omega.y;
    let (s, c) = theta.sin_cos();
    if rho2 <= 1e-6 {
        return v3(c, s, 0.0);
    }
    let rho = rho2.sqrt();
    v3(
        -(omega.y * c + omega.x * omega.z * s) / rho,
        (omega.x * c - omega.y * omega.z * s) / rho,
        rho * s,
    )
}

/// Cached circulations I(x(theta), omega) over one great circle.
pub struct CirculationProfile {
    pub omega: Vec3,
    interp: PeriodicInterp,
    p_av: Complex,
}

impl CirculationProfile {
    pub fn build(
        a_inf: &dyn Fn(Vec3) -> Vec3,
        omega: Vec3,
        n: usize,
        cfg: &QuadratureConfig,
    ) -> Result<CirculationProfile> {
        let mut vals = Vec::with_capacity(n);
        let mut p_av = Complex::new(0.0, 0.0);
        for j in 0..n {
            let psi = circle_parametrization_3d(omega, TWO_PI * j as f64 / n as f64);
            let i = line_circulation_i(a_inf, &TangentPair::new(psi, omega)?, cfg)?;
            p_av += cis(i);
            vals.push(i);
        }
        Ok(CirculationProfile {
            omega,
            interp: PeriodicInterp::from_values(vals),
            p_av: p_av / n as f64,
        })
    }

    pub fn i_at(&self, theta: f64) -> f64 {
        self.interp.at(theta)
    }

    /// (2 pi)^{-1} int exp(i I(psi, omega)) d psi; modulus at most 1.
    pub fn p_average(&self) -> Complex {
        self.p_av
    }
}

/// Number of cached circulation samples per great circle.
const PROFILE_SAMPLES: usize = 2048;

pub fn p_average_3d(
    a_inf: &dyn Fn(Vec3) -> Vec3,
    omega: Vec3,
    cfg: &QuadratureConfig,
) -> Result<Complex> {
    Ok(CirculationProfile::build(a_inf, omega, PROFILE_SAMPLES, cfg)?.p_average())
}

fn q_from_profile(
    profile: &CirculationProfile,
    tau: Vec3,
    sched: &EpsilonSchedule,
    cfg: &QuadratureConfig,
) -> Result<Complex> {
    let nt = tau.norm();
    if nt == 0.0 {
        return Err(Error::InvalidConfig("q kernel requires a nonzero tangent vector"));
    }
    let inner = tau.dot(profile.omega);
    if inner.abs() > 1e-8 * nt {
        return Err(Error::NotOrthogonal { inner });
    }
    let p_av = profile.p_average();
    let omega = profile.omega;
    // the regularized integrands grow like 1/eps; the extrapolation only
    // needs them to a relative accuracy well below the schedule's own bias
    let inner = QuadratureConfig {
        abs_tol: cfg.abs_tol.max(1e-9),
        rel_tol: cfg.rel_tol.max(1e-9),
        max_subdivisions: cfg.max_subdivisions.max(4000),
        ..*cfg
    };
    let pairing = regularized_i0_pairing(
        |theta| cis(profile.i_at(theta)) - p_av,
        |theta| circle_parametrization_3d(omega, theta).dot(tau),
        2,
        sched,
        &inner,
    )?;
    Ok(pairing.value * (-1.0 / (TWO_PI * TWO_PI)))
}

/// Principal-value kernel
/// q(omega, tau) = -(2 pi)^{-2} int (e^{i I(psi, omega)} - p_av)(<psi, tau> - i0)^{-2} d psi,
/// homogeneous of degree -2 in tau.
pub fn q_kernel_3d(
    a_inf: &dyn Fn(Vec3) -> Vec3,
    omega: Vec3,
    tau: Vec3,
    sched: &EpsilonSchedule,
    cfg: &QuadratureConfig,
) -> Result<Complex> {
    let profile = CirculationProfile::build(a_inf, omega, PROFILE_SAMPLES, cfg)?;
    q_from_profile(&profile, tau, sched, cfg)
}

/// The same kernel evaluated against a prebuilt circulation profile, so a
/// sweep over tangent vectors at fixed omega pays for the circle once.
pub fn q_kernel_from_profile(
    profile: &CirculationProfile,
    tau: Vec3,
    sched: &EpsilonSchedule,
    cfg: &QuadratureConfig,
) -> Result<Complex> {
    q_from_profile(profile, tau, sched, cfg)
}

/// Singular part of the 3D amplitude: multiplication by p_av plus the
/// principal-value operator with kernel q(omega, omega' - omega).
pub struct SingularAmplitude3d {
    a_inf: Rc<dyn Fn(Vec3) -> Vec3>,
    pub sched: EpsilonSchedule,
    pub cfg: QuadratureConfig,
    pub remainder_exponent: f64,
}

impl SingularAmplitude3d {
    pub fn p_av(&self, omega: Vec3) -> Result<Complex> {
        p_average_3d(&*self.a_inf, omega, &self.cfg)
    }

    pub fn q(&self, omega: Vec3, tau: Vec3) -> Result<Complex> {
        q_kernel_3d(&*self.a_inf, omega, tau, &self.sched, &self.cfg)
    }

    /// Off-diagonal kernel s0(omega, omega') = q(omega, omega' - omega).
    pub fn kernel(&self, omega: Vec3, omega_p: Vec3) -> Result<Complex> {
        let tau = omega_p - omega;
        if tau.norm() == 0.0 {
            return Err(Error::DiagonalEvaluation);
        }
        // project onto the tangent plane at omega; the radial component is
        // second order in |omega' - omega|
        let tangent = tau - omega * tau.dot(omega);
        self.q(omega, tangent)
    }
}

pub fn singular_amplitude_3d(
    a_inf: impl Fn(Vec3) -> Vec3 + 'static,
    decay_exponent_rho: f64,
    sched: &EpsilonSchedule,
    cfg: &QuadratureConfig,
) -> SingularAmplitude3d {
    SingularAmplitude3d {
        a_inf: Rc::new(a_inf),
        sched: *sched,
        cfg: *cfg,
        remainder_exponent: decay_exponent_rho.min(2.0),
    }
}

/// Deterministic near-uniform directions on the sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
    let golden_angle = PI * (3.0 - 5.0f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden_angle * k as f64;
            v3(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// Tangent angles sampled per sphere direction.
const SPECTRUM_TANGENT_SAMPLES: usize = 64;

/// Essential spectrum of the 3D scattering matrix: the closure of
/// {exp(i I(psi, omega))} over orthonormal tangent pairs, sampled on a
/// Fibonacci sphere and merged with angular resolution 2 pi / grid_size.
pub fn essential_spectrum_3d(
    a_inf: &dyn Fn(Vec3) -> Vec3,
    grid_size: usize,
    cfg: &QuadratureConfig,
) -> Result<SpectralSet> {
    let mut angles = Vec::with_capacity(grid_size * SPECTRUM_TANGENT_SAMPLES);
    for omega in fibonacci_sphere(grid_size.max(2)) {
        for j in 0..SPECTRUM_TANGENT_SAMPLES {
            let theta = TWO_PI * j as f64 / SPECTRUM_TANGENT_SAMPLES as f64;
            let psi = circle_parametrization_3d(omega, theta);
            angles.push(line_circulation_i(a_inf, &TangentPair::new(psi, omega)?, cfg)?);
        }
    }
    Ok(SpectralSet::from_angles(&angles, TWO_PI / grid_size as f64))
}

// ---------------------------------------------------------------------------
// Reference homogeneous potentials

/// Straight-line point-flux potential rotated into 3D:
/// A(x) = -alpha |x|^{-2} (-x2, x1, 0); circulation
/// I(x, omega) = pi alpha |x|^{-1} (omega1 x2 - omega2 x1).
pub fn modified_ab_a_inf(alpha: f64) -> impl Fn(Vec3) -> Vec3 + Copy {
    move |x: Vec3| {
        let r2 = x.dot(x);
        v3(x.y, -x.x, 0.0) * (alpha / r2)
    }
}

pub fn modified_ab_circulation(alpha: f64, x: Vec3, omega: Vec3) -> f64 {
    PI * alpha * (omega.x * x.y - omega.y * x.x) / x.norm()
}

/// Divergence-free homogeneous potential with coefficients summing to zero:
/// A(x) = |x|^{-3} (a1 x2 x3, a2 x3 x1, a3 x1 x2); circulation
/// I(x, omega) = 2 |x|^{-2} (a1 w1 x2 x3 + a2 w2 x3 x1 + a3 w3 x1 x2).
pub fn anisotropic_a_inf(a: [f64; 3]) -> impl Fn(Vec3) -> Vec3 + Copy {
    move |x: Vec3| {
        let r = x.norm();
        v3(a[0] * x.y * x.z, a[1] * x.z * x.x, a[2] * x.x * x.y) * (1.0 / (r * r * r))
    }
}

pub fn anisotropic_circulation(a: [f64; 3], x: Vec3, omega: Vec3) -> f64 {
    2.0 / x.dot(x)
        * (a[0] * omega.x * x.y * x.z + a[1] * omega.y * x.z * x.x + a[2] * omega.z * x.x * x.y)
}
