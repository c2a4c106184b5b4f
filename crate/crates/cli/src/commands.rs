//! One function per subcommand. Each takes the parsed arguments, performs
//! the computation, and writes records to the chosen sink.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::Args;
use magscatter_core::amplitude::{
    circle_parametrization_3d, cross_section, essential_spectrum_2d, essential_spectrum_3d,
    fibonacci_sphere, singular_amplitude_2d, singular_amplitude_3d, SpectralSet,
};
use magscatter_core::circulation::{half_plane_flux_f, line_circulation_i_at, rotate_perp};
use magscatter_core::fields::{total_flux_2d, FieldSpec};
use magscatter_core::gauge::{
    decompose_potential_2d, decompose_potential_3d, short_range_potential_3d,
    transversal_potential_2d, transversal_potential_3d, CutoffSpec,
};
use magscatter_core::numerics::{EpsilonSchedule, QuadratureConfig};
use magscatter_core::solenoid::{
    torus_flux_section, torus_g, torus_kappa, torus_spectrum, torus_u0, SolenoidGeometry,
};
use magscatter_core::vec::{v3, Vec2, Vec3};

use crate::error::{CliError, CliResult};
use crate::field::{build_spec, FieldArgs};
use crate::output::{
    json_object, json_vec, sig17, table_header, table_row, Cell, Format, Sink,
};

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// Absolute quadrature tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub abs_tol: f64,

    /// Relative quadrature tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub rel_tol: f64,

    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format for tabular commands (potential, circulation,
    /// crosssection); record commands always emit JSONL
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl CommonArgs {
    pub fn cfg(&self) -> CliResult<QuadratureConfig> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(CliError::new(
                "invalid_config",
                "tolerances must be positive",
                "--abs-tol / --rel-tol",
            ));
        }
        Ok(QuadratureConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            ..QuadratureConfig::default()
        })
    }

    pub fn spec(&self) -> CliResult<FieldSpec> {
        let spec = build_spec(&self.field)?;
        if self.field.dump_spec {
            print!("{}", crate::field::dump_spec(&spec));
        }
        Ok(spec)
    }

    pub fn sink(&self) -> CliResult<Sink> {
        Ok(Sink::open(&self.output)?)
    }

    /// Format for tabular commands; CSV unless overridden.
    pub fn table_format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    /// Record commands emit JSONL only.
    pub fn require_jsonl(&self, command: &'static str) -> CliResult<()> {
        if self.format == Some(Format::Csv) {
            return Err(CliError::new(
                "invalid_config",
                format!("{command} emits JSONL records; --format csv is not available here"),
                "--format",
            ));
        }
        Ok(())
    }
}

fn ctx(e: impl Into<CliError>, context: &str) -> CliError {
    e.into().in_context(context)
}

// ---------------------------------------------------------------------------

pub fn flux(common: &CommonArgs) -> CliResult<()> {
    common.require_jsonl("flux")?;
    let spec = common.spec()?;
    let cfg = common.cfg()?;
    if spec.dimension() != 2 {
        return Err(CliError::new("invalid_config", "flux requires a 2D field", "flux"));
    }
    let est = total_flux_2d(&spec, &cfg).map_err(|e| ctx(e, "flux"))?;
    let mut sink = common.sink()?;
    sink.line(&json_object(&[
        ("flux", sig17(est.value)),
        ("error", sig17(est.error)),
    ]))?;
    sink.finish()?;
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct PotentialArgs {
    /// Gauge: transversal | short-range (3D only)
    #[arg(long, default_value = "transversal")]
    pub gauge: String,

    /// Number of sample points
    #[arg(long, default_value_t = 64)]
    pub count: usize,

    /// Sampling radius; defaults to twice the effective field radius
    #[arg(long)]
    pub sample_radius: Option<f64>,
}

pub fn potential(common: &CommonArgs, args: &PotentialArgs) -> CliResult<()> {
    let spec = common.spec()?;
    let cfg = common.cfg()?;
    let rmax = args.sample_radius.unwrap_or(2.0 * spec.effective_radius());
    let mut sink = common.sink()?;
    let short_range = match args.gauge.as_str() {
        "transversal" => false,
        "short-range" => true,
        other => {
            return Err(CliError::new(
                "invalid_config",
                format!("unknown gauge `{other}`"),
                "--gauge",
            ))
        }
    };
    let tag = if short_range { "short_range" } else { "transversal" };
    if spec.dimension() == 2 {
        if short_range {
            return Err(CliError::new(
                "invalid_config",
                "the short-range gauge exists only in 3D",
                "--gauge",
            ));
        }
        let cols = ["x1", "x2", "A1", "A2", "gauge_tag"];
        table_header(&mut sink, common.table_format(), &cols)?;
        for k in 0..args.count {
            // deterministic spiral: radius sweeps, angle by the golden step
            let t = (k as f64 + 0.5) / args.count as f64;
            let x = Vec2::from_angle(2.0 * PI * 1.618033988749895 * k as f64) * (rmax * t);
            let a = transversal_potential_2d(&spec, x, &cfg).map_err(|e| ctx(e, "potential"))?;
            table_row(
                &mut sink,
                common.table_format(),
                &cols,
                &[
                    Cell::Num(x.x),
                    Cell::Num(x.y),
                    Cell::Num(a.x),
                    Cell::Num(a.y),
                    Cell::Str(tag),
                ],
            )?;
        }
    } else {
        let decomp;
        let cutoff;
        let basepoint = v3(1.0, 0.0, -5.0);
        if short_range {
            decomp = Some(decompose_potential_3d(&spec, &cfg).map_err(|e| ctx(e, "potential"))?);
            cutoff = Some(CutoffSpec::for_spec(&spec).map_err(|e| ctx(e, "potential"))?);
        } else {
            decomp = None;
            cutoff = None;
        }
        let cols = ["x1", "x2", "x3", "A1", "A2", "A3", "gauge_tag"];
        table_header(&mut sink, common.table_format(), &cols)?;
        for (k, dir) in fibonacci_sphere(args.count).into_iter().enumerate() {
            let t = (k as f64 + 0.5) / args.count as f64;
            let x = dir * (rmax * t);
            let a = if let (Some(d), Some(c)) = (&decomp, &cutoff) {
                short_range_potential_3d(&spec, d, c, basepoint, x, &cfg)
                    .map_err(|e| ctx(e, "potential"))?
            } else {
                transversal_potential_3d(&spec, x, &cfg).map_err(|e| ctx(e, "potential"))?
            };
            table_row(
                &mut sink,
                common.table_format(),
                &cols,
                &[
                    Cell::Num(x.x),
                    Cell::Num(x.y),
                    Cell::Num(x.z),
                    Cell::Num(a.x),
                    Cell::Num(a.y),
                    Cell::Num(a.z),
                    Cell::Str(tag),
                ],
            )?;
        }
    }
    sink.finish()?;
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct CirculationArgs {
    /// Number of equispaced directions omega
    #[arg(long, default_value_t = 16)]
    pub omega_count: usize,
}

pub fn circulation(common: &CommonArgs, args: &CirculationArgs) -> CliResult<()> {
    let spec = common.spec()?;
    let cfg = common.cfg()?;
    if spec.dimension() != 2 {
        return Err(CliError::new(
            "invalid_config",
            "circulation tables require a 2D field",
            "circulation",
        ));
    }
    let d = decompose_potential_2d(&spec, &cfg).map_err(|e| ctx(e, "circulation"))?;
    let mut sink = common.sink()?;
    let cols = ["omega_angle", "f", "I_plus", "defect"];
    table_header(&mut sink, common.table_format(), &cols)?;
    for k in 0..args.omega_count {
        let theta = 2.0 * PI * k as f64 / args.omega_count as f64;
        let omega = Vec2::from_angle(theta);
        let f = half_plane_flux_f(&spec, omega, &cfg).map_err(|e| ctx(e, "circulation"))?;
        let (wp, _) = rotate_perp(omega);
        let i_plus =
            line_circulation_i_at(&d.a_inf, omega, wp, &cfg).map_err(|e| ctx(e, "circulation"))?;
        table_row(
            &mut sink,
            common.table_format(),
            &cols,
            &[Cell::Num(theta), Cell::Num(f), Cell::Num(i_plus), Cell::Num(i_plus - f)],
        )?;
    }
    sink.finish()?;
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct Amplitude2dArgs {
    /// Number of direction pairs
    #[arg(long, default_value_t = 16)]
    pub pairs: usize,
}

pub fn amplitude2d(common: &CommonArgs, args: &Amplitude2dArgs) -> CliResult<()> {
    common.require_jsonl("amplitude2d")?;
    let spec = common.spec()?;
    let cfg = common.cfg()?;
    if spec.dimension() != 2 {
        return Err(CliError::new(
            "invalid_config",
            "amplitude2d requires a 2D field",
            "amplitude2d",
        ));
    }
    let amp = singular_amplitude_2d(&spec, &cfg).map_err(|e| ctx(e, "amplitude2d"))?;
    let mut sink = common.sink()?;
    sink.line(&json_object(&[
        ("flux", sig17(amp.flux)),
        ("delta_coeff", sig17(amp.delta_coeff)),
        ("pv_coeff", sig17(amp.pv_coeff)),
        ("remainder_exponent", sig17(amp.remainder_exponent)),
    ]))?;
    for k in 0..args.pairs {
        let theta = 2.0 * PI * k as f64 / args.pairs as f64;
        let sep = PI * (2.0 * k as f64 + 1.0) / (2.0 * args.pairs as f64 + 1.0);
        let omega = Vec2::from_angle(theta);
        let omega_p = Vec2::from_angle(theta + sep);
        let s = amp.kernel(omega, omega_p).map_err(|e| ctx(e, "amplitude2d"))?;
        sink.line(&json_object(&[
            ("omega", json_vec(&[omega.x, omega.y])),
            ("omega_p", json_vec(&[omega_p.x, omega_p.y])),
            ("re", sig17(s.re)),
            ("im", sig17(s.im)),
        ]))?;
    }
    sink.finish()?;
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct Amplitude3dArgs {
    /// Number of sphere directions
    #[arg(long, default_value_t = 4)]
    pub omega_count: usize,

    /// Number of nearby outgoing directions per omega
    #[arg(long, default_value_t = 4)]
    pub tau_count: usize,

    /// Angular separation of omega_p from omega, radians
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub separation: f64,
}

pub fn amplitude3d(common: &CommonArgs, args: &Amplitude3dArgs) -> CliResult<()> {
    common.require_jsonl("amplitude3d")?;
    let spec = common.spec()?;
    let cfg = common.cfg()?;
    if spec.dimension() != 3 {
        return Err(CliError::new(
            "invalid_config",
            "amplitude3d requires a 3D field",
            "amplitude3d",
        ));
    }
    let rho = spec.decay_exponent - 1.0;
    let d = decompose_potential_3d(&spec, &cfg).map_err(|e| ctx(e, "amplitude3d"))?;
    let a_inf = d.a_inf;
    let amp = singular_amplitude_3d(
        move |x| a_inf(x),
        rho,
        &EpsilonSchedule { eps_start: 2e-2, ratio: 0.5, steps: 8, extrapolation_order: 3 },
        &cfg,
    );
    let mut sink = common.sink()?;
    for omega in fibonacci_sphere(args.omega_count.max(1)) {
        let p = amp.p_av(omega).map_err(|e| ctx(e, "amplitude3d"))?;
        sink.line(&json_object(&[
            ("omega", json_vec(&[omega.x, omega.y, omega.z])),
            ("p_av_re", sig17(p.re)),
            ("p_av_im", sig17(p.im)),
        ]))?;
        for j in 0..args.tau_count {
            let phi = 2.0 * PI * (j as f64 + 0.25) / args.tau_count as f64;
            let t = circle_parametrization_3d(omega, phi);
            let (s, c) = args.separation.sin_cos();
            let omega_p = (omega * c + t * s).normalize();
            let q = amp.kernel(omega, omega_p).map_err(|e| ctx(e, "amplitude3d"))?;
            sink.line(&json_object(&[
                ("omega", json_vec(&[omega.x, omega.y, omega.z])),
                ("omega_p", json_vec(&[omega_p.x, omega_p.y, omega_p.z])),
                ("re", sig17(q.re)),
                ("im", sig17(q.im)),
            ]))?;
        }
    }
    sink.finish()?;
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Coarse scan size (2D) or sphere grid size (3D)
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
}

pub fn render_spectrum(set: &SpectralSet) -> String {
    match set {
        SpectralSet::FullCircle => json_object(&[("full_circle", "true".into())]),
        SpectralSet::Arcs(arcs) => {
            let items: Vec<String> =
                arcs.iter().map(|&(s, e)| format!("[{},{}]", sig17(s), sig17(e))).collect();
            json_object(&[("arcs", format!("[{}]", items.join(",")))])
        }
    }
}

pub fn spectrum(common: &CommonArgs, args: &SpectrumArgs) -> CliResult<()> {
    common.require_jsonl("spectrum")?;
    let spec = common.spec()?;
    let cfg = common.cfg()?;
    let set = if spec.dimension() == 2 {
        essential_spectrum_2d(&spec, args.samples, &cfg).map_err(|e| ctx(e, "spectrum"))?
    } else {
        let d = decompose_potential_3d(&spec, &cfg).map_err(|e| ctx(e, "spectrum"))?;
        let a_inf = d.a_inf;
        essential_spectrum_3d(&move |x: Vec3| a_inf(x), args.samples.min(64), &cfg)
            .map_err(|e| ctx(e, "spectrum"))?
    };
    let mut sink = common.sink()?;
    sink.line(&render_spectrum(&set))?;
    sink.finish()?;
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct CrossSectionArgs {
    /// Energy lambda
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,

    /// Number of angular separations in (0, pi]
    #[arg(long, default_value_t = 64)]
    pub count: usize,
}

pub fn crosssection(common: &CommonArgs, args: &CrossSectionArgs) -> CliResult<()> {
    let spec = common.spec()?;
    let cfg = common.cfg()?;
    if spec.dimension() != 2 {
        return Err(CliError::new(
            "invalid_config",
            "crosssection requires a 2D field",
            "crosssection",
        ));
    }
    if !(args.lambda > 0.0) {
        return Err(CliError::new("invalid_config", "lambda must be positive", "--lambda"));
    }
    let amp = singular_amplitude_2d(&spec, &cfg).map_err(|e| ctx(e, "crosssection"))?;
    let omega = Vec2::from_angle(0.0);
    let mut sink = common.sink()?;
    let cols = ["angle_sep", "sigma"];
    table_header(&mut sink, common.table_format(), &cols)?;
    for k in 1..=args.count {
        let sep = PI * k as f64 / args.count as f64;
        let s = amp.kernel(omega, Vec2::from_angle(sep)).map_err(|e| ctx(e, "crosssection"))?;
        let sigma = cross_section(s, args.lambda, 2);
        table_row(
            &mut sink,
            common.table_format(),
            &cols,
            &[Cell::Num(sep), Cell::Num(sigma)],
        )?;
    }
    sink.finish()?;
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct SolenoidArgs {
    /// Distance from the axis to the section center
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub l: f64,

    /// Section radius
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,

    /// Field strength
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Number of z samples in the kappa and g tables
    #[arg(long, default_value_t = 17)]
    pub table_size: usize,
}

pub fn solenoid(common: &CommonArgs, args: &SolenoidArgs) -> CliResult<()> {
    common.require_jsonl("solenoid")?;
    let cfg = common.cfg()?;
    let geom = SolenoidGeometry::disc(args.alpha, args.l, args.r)
        .map_err(|e| ctx(e, "solenoid"))?;
    let n = args.table_size.max(2);
    let mut kappa_rows = Vec::with_capacity(n);
    let mut g_rows = Vec::with_capacity(n);
    for k in 0..n {
        let z = geom.z1 + (geom.z2 - geom.z1) * k as f64 / (n - 1) as f64;
        let (lo, hi) = torus_kappa(z, &geom.shape).map_err(|e| ctx(e, "solenoid"))?;
        kappa_rows.push(format!("[{},{},{}]", sig17(z), sig17(lo), sig17(hi)));
        g_rows.push(format!("[{},{}]", sig17(z), sig17(torus_g(z, &geom))));
    }
    let u0 = torus_u0(&geom, &cfg).map_err(|e| ctx(e, "solenoid"))?;
    let flux = torus_flux_section(&geom, &cfg).map_err(|e| ctx(e, "solenoid"))?;
    let set = torus_spectrum(&geom, &cfg).map_err(|e| ctx(e, "solenoid"))?;
    let mut sink = common.sink()?;
    sink.line(&json_object(&[
        ("kappa", format!("[{}]", kappa_rows.join(","))),
        ("g", format!("[{}]", g_rows.join(","))),
        ("U0", sig17(u0)),
        ("Phi_s_quadrature", sig17(flux.quadrature)),
        ("Phi_s_minus_U0_defect", sig17(flux.defect)),
        ("spectrum", render_spectrum(&set)),
    ]))?;
    sink.finish()?;
    Ok(())
}

