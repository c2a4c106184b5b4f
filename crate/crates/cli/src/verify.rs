//! Self-verification runner: executes the library's documented invariants
//! at desk scale and prints one pass/fail line per check with the measured
//! defect. Exit is nonzero when any check fails.

use std::f64::consts::PI;

use magscatter_core::amplitude::{
    ab_kernel_closed_form, ab_partial_wave_sum, modified_ab_a_inf, singular_amplitude_2d,
    CirculationProfile,
};
use magscatter_core::circulation::{
    half_plane_flux_f, line_circulation_i_at, rotate_perp,
};
use magscatter_core::fields::{total_flux_2d, BumpProfile, FieldSpec};
use magscatter_core::gauge::{
    decompose_potential_2d, decompose_potential_3d, transversal_potential_2d,
    transversal_potential_3d,
};
use magscatter_core::numerics::{fd_curl_2d, fd_curl_3d, QuadratureConfig};
use magscatter_core::solenoid::{
    solenoid_transversal_closed_form, torus_flux_section, torus_q, torus_u0, SolenoidGeometry,
};
use magscatter_core::vec::{v2, v3, Vec2};
use magscatter_core::Complex;

use crate::error::{CliError, CliResult};
use crate::output::sig17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Gauge,
    Circulation,
    Amplitude,
    Solenoid,
    All,
}

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, defect: f64, tol: f64) {
        let ok = defect.is_finite() && defect <= tol;
        if !ok {
            self.failures += 1;
        }
        println!(
            "{} {name} defect={} tol={}",
            if ok { "PASS" } else { "FAIL" },
            sig17(defect),
            sig17(tol)
        );
    }
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

fn cfg() -> QuadratureConfig {
    QuadratureConfig { abs_tol: 1e-10, rel_tol: 1e-10, ..QuadratureConfig::default() }
}

fn dipole_spec() -> FieldSpec {
    FieldSpec::radial_plus_dipole_2d(
        BumpProfile { coeff: -0.5, radius: 2.0 },
        BumpProfile { coeff: 1.0, radius: 1.5 },
        v2(0.3, -0.2),
    )
}

fn gauge_suite(report: &mut Report) -> CliResult<()> {
    let c = cfg();
    let mut rng = XorShift(0x243f6a8885a308d3);

    // transversality of the 2D and 3D potentials
    let spec2 = FieldSpec::gaussian2d(1.0);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = v2(4.0 * rng.next_f64() - 2.0, 4.0 * rng.next_f64() - 2.0);
        let a = transversal_potential_2d(&spec2, x, &c)?;
        worst = worst.max(a.dot(x).abs());
    }
    report.check("transversality_2d", worst, 1e-12);

    let spec3 = FieldSpec::bump_3d(1.0, 1.0);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = v3(
            2.0 * rng.next_f64() - 1.0,
            2.0 * rng.next_f64() - 1.0,
            2.0 * rng.next_f64() - 1.0,
        );
        let a = transversal_potential_3d(&spec3, x, &c)?;
        worst = worst.max(a.dot(x).abs());
    }
    report.check("transversality_3d", worst, 1e-12);

    // curl of the transversal potential reconstructs the field
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = v2(1.6 * rng.next_f64() - 0.8, 1.6 * rng.next_f64() - 0.8);
        let b = spec2.eval_2d(x)?;
        let curl = fd_curl_2d(|y| transversal_potential_2d(&spec2, y, &c).unwrap(), x, 1e-5);
        worst = worst.max((curl - b).abs() / b.abs().max(1e-6));
    }
    report.check("curl_reconstruction_2d", worst, 1e-4);

    let mut worst = 0.0f64;
    for _ in 0..10 {
        let x = v3(
            rng.next_f64() - 0.5,
            rng.next_f64() - 0.5,
            rng.next_f64() - 0.5,
        );
        let b = spec3.eval_3d(x)?;
        if b.norm() < 1e-3 {
            continue;
        }
        let curl = fd_curl_3d(|y| transversal_potential_3d(&spec3, y, &c).unwrap(), x, 1e-5);
        worst = worst.max((curl - b).norm() / b.norm());
    }
    report.check("curl_reconstruction_3d", worst, 1e-4);

    // decomposition reconstructs the transversal potential
    let d = decompose_potential_2d(&dipole_spec(), &c)?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = v2(6.0 * rng.next_f64() - 3.0, 6.0 * rng.next_f64() - 3.0);
        if x.norm() < 0.3 {
            continue;
        }
        let whole = transversal_potential_2d(&dipole_spec(), x, &c)?;
        let split = (d.a_inf)(x) + (d.a_reg)(x);
        worst = worst.max((whole - split).norm());
    }
    report.check("decomposition_reconstruction_2d", worst, 1e-7);
    Ok(())
}

fn circulation_suite(report: &mut Report) -> CliResult<()> {
    let c = cfg();
    let spec = dipole_spec();
    let d = decompose_potential_2d(&spec, &c)?;
    let phi = total_flux_2d(&spec, &c)?.value;

    let mut worst_tiling = 0.0f64;
    let mut worst_lemma = 0.0f64;
    for k in 0..64 {
        let omega = Vec2::from_angle(2.0 * PI * k as f64 / 64.0);
        let f = half_plane_flux_f(&spec, omega, &c)?;
        let fm = half_plane_flux_f(&spec, -omega, &c)?;
        worst_tiling = worst_tiling.max((f + fm - phi).abs());
        let (wp, _) = rotate_perp(omega);
        let i_plus = line_circulation_i_at(&d.a_inf, omega, wp, &c)?;
        worst_lemma = worst_lemma.max((i_plus - f).abs());
    }
    report.check("half_plane_flux_tiling", worst_tiling, 1e-6);
    report.check("circulation_equals_half_plane_flux", worst_lemma, 1e-5);
    Ok(())
}

fn amplitude_suite(report: &mut Report) -> CliResult<()> {
    let c = cfg();

    // partial-wave sum against the closed form
    let mut worst = 0.0f64;
    for alpha in [0.25, 0.5, 0.75] {
        for k in 1..=6 {
            let delta = 0.5 + (PI - 0.5) * k as f64 / 6.0;
            let series = ab_partial_wave_sum(delta, 0.0, alpha, 4000, 0.999);
            let (_, closed) = ab_kernel_closed_form(delta, 0.0, alpha)?;
            worst = worst.max((series - closed).norm());
        }
    }
    report.check("ab_partial_wave_vs_closed_form", worst, 1e-2);

    // unitarity of the singular-amplitude coefficients
    let amp = singular_amplitude_2d(&dipole_spec(), &c)?;
    let trace = amp.delta_coeff * amp.delta_coeff + (PI * amp.pv_coeff) * (PI * amp.pv_coeff);
    report.check("singular_coefficients_unitary", (trace - 1.0).abs(), 1e-10);

    // zero circle average of the q-kernel numerator
    let a = modified_ab_a_inf(0.5);
    let profile = CirculationProfile::build(&a, v3(1.0, 0.0, 0.0), 512, &c)?;
    let p_av = profile.p_average();
    let mut acc = Complex::new(0.0, 0.0);
    let n = 512;
    for j in 0..n {
        acc += Complex::from_polar(1.0, profile.i_at(2.0 * PI * j as f64 / n as f64)) - p_av;
    }
    report.check("q_numerator_zero_mean", (acc / n as f64).norm(), 1e-10);
    Ok(())
}

fn solenoid_suite(report: &mut Report) -> CliResult<()> {
    let c = cfg();
    let geom = SolenoidGeometry::disc(1.0, 2.0, 1.0).map_err(CliError::from)?;

    let flux = torus_flux_section(&geom, &c)?;
    report.check("section_flux_vs_minus_u0", flux.defect.abs(), 1e-6);
    let closed = 2.0 * PI * (2.0 - 3.0f64.sqrt());
    report.check(
        "section_flux_disc_closed_form",
        (flux.quadrature.abs() - closed).abs(),
        1e-5,
    );
    let u0 = torus_u0(&geom, &c)?;
    report.check("u0_disc_closed_form", (u0 - closed).abs(), 1e-6);

    // q monotone on a grid
    let mut worst = 0.0f64;
    let mut prev = f64::NEG_INFINITY;
    for k in 0..=16 {
        let z = -0.8 + 0.1 * k as f64;
        let q = torus_q(z, &geom, &c)?;
        if q < prev {
            worst = worst.max(prev - q);
        }
        prev = q;
    }
    report.check("q_monotone", worst, 0.0);

    // region law for the transversal potential
    let spec = geom.field_spec()?;
    let mut rng = XorShift(0x13198a2e03707344);
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let z = 0.9 * (geom.z1 + (geom.z2 - geom.z1) * rng.next_f64());
        let (klo, khi) = geom.shape.kappa(z).map_err(CliError::from)?;
        let s = match (rng.next_f64() * 3.0) as usize {
            0 => klo * (0.2 + 0.7 * rng.next_f64()),
            1 => klo + (khi - klo) * (0.2 + 0.6 * rng.next_f64()),
            _ => khi * (1.1 + rng.next_f64()),
        };
        let phi = 2.0 * PI * rng.next_f64();
        let rho = s / (1.0 + z * z).sqrt();
        let x = v3(rho * phi.cos(), rho * phi.sin(), rho * z);
        let got = transversal_potential_3d(&spec, x, &c)?;
        let expect = solenoid_transversal_closed_form(&geom, x);
        worst = worst.max((got - expect).norm());
    }
    report.check("region_law", worst, 1e-8);

    // the 3D decomposition agrees with the closed-form homogeneous part
    let d = decompose_potential_3d(&spec, &c)?;
    let a = magscatter_core::solenoid::solenoid_a_inf(&geom);
    let mut worst = 0.0f64;
    for &x in &[v3(3.0, 1.0, 0.4), v3(-2.0, 0.5, -0.6), v3(1.0, 0.0, 0.1)] {
        worst = worst.max(((d.a_inf)(x) - a(x)).norm());
    }
    report.check("a_inf_closed_form", worst, 1e-8);
    Ok(())
}

pub fn run(suite: Suite) -> CliResult<i32> {
    let mut report = Report { failures: 0 };
    let all = suite == Suite::All;
    if all || suite == Suite::Gauge {
        gauge_suite(&mut report)?;
    }
    if all || suite == Suite::Circulation {
        circulation_suite(&mut report)?;
    }
    if all || suite == Suite::Amplitude {
        amplitude_suite(&mut report)?;
    }
    if all || suite == Suite::Solenoid {
        solenoid_suite(&mut report)?;
    }
    println!(
        "verify: {} failure{}",
        report.failures,
        if report.failures == 1 { "" } else { "s" }
    );
    Ok(if report.failures == 0 { 0 } else { 1 })
}
