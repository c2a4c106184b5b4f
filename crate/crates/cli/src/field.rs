//! Field selection: inline flags or a TOML config with a `[field]` section
//! (`dimension`, `family`, and one `param.<name>` entry per parameter).
//! `--config` wins over the inline flags when given.

use std::path::PathBuf;

use clap::Args;
use magscatter_core::fields::{BumpProfile, Family, FieldSpec, RadialSpline, SectionShape};
use magscatter_core::vec::v2;

use crate::error::{CliError, CliResult};
use crate::output::sig17;

#[derive(Debug, Args, Clone)]
pub struct FieldArgs {
    /// TOML file with a [field] section; takes precedence over field flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Field family: gaussian2d, radial_profile_2d, radial_plus_dipole_2d,
    /// ab_point_flux_2d, toroidal_solenoid_3d, bump_3d
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Field strength (gaussian2d, bump_3d)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub amplitude: Option<f64>,

    /// Flux parameter (ab_point_flux_2d) or solenoid strength
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Support radius (bump_3d)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub radius: Option<f64>,

    /// Solenoid: distance from the axis to the section center
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub l: Option<f64>,

    /// Solenoid: section radius
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub r: Option<f64>,

    /// Radial bump coefficient of the isotropic part (radial_plus_dipole_2d)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub b0_coeff: Option<f64>,
    /// Radial bump support of the isotropic part
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub b0_radius: Option<f64>,
    /// Radial bump coefficient of the dipole part
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub b1_coeff: Option<f64>,
    /// Radial bump support of the dipole part
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub b1_radius: Option<f64>,
    /// Dipole direction, two components
    #[arg(long, global = true, num_args = 2, value_names = ["QX", "QY"], allow_negative_numbers = true)]
    pub q: Option<Vec<f64>>,

    /// Echo the parsed field specification and continue
    #[arg(long, global = true)]
    pub dump_spec: bool,
}

fn bad(message: impl Into<String>) -> CliError {
    CliError::new("field_config", message, "")
}

struct Params {
    family: String,
    dimension: Option<i64>,
    table: toml::Table,
}

fn params_from_toml(path: &PathBuf) -> CliResult<Params> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    let doc: toml::Table =
        text.parse().map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let field = doc
        .get("field")
        .and_then(|v| v.as_table())
        .ok_or_else(|| bad("missing [field] section"))?;
    let family = field
        .get("family")
        .and_then(|v| v.as_str())
        .ok_or_else(|| bad("missing field.family"))?
        .to_string();
    let dimension = field.get("dimension").and_then(|v| v.as_integer());
    let table = field
        .get("param")
        .and_then(|v| v.as_table())
        .cloned()
        .unwrap_or_default();
    Ok(Params { family, dimension, table })
}

impl Params {
    fn num(&self, key: &str) -> CliResult<Option<f64>> {
        match self.table.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_float()
                .or_else(|| v.as_integer().map(|i| i as f64))
                .map(Some)
                .ok_or_else(|| bad(format!("param.{key} must be a number"))),
        }
    }

    fn pairs(&self, key: &str) -> CliResult<Option<Vec<(f64, f64)>>> {
        let Some(v) = self.table.get(key) else { return Ok(None) };
        let arr = v
            .as_array()
            .ok_or_else(|| bad(format!("param.{key} must be an array of pairs")))?;
        let mut out = Vec::with_capacity(arr.len());
        for item in arr {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad(format!("param.{key} entries must be [a, b] pairs")))?;
            let g = |i: usize| {
                pair[i]
                    .as_float()
                    .or_else(|| pair[i].as_integer().map(|n| n as f64))
                    .ok_or_else(|| bad(format!("param.{key} entries must be numeric")))
            };
            out.push((g(0)?, g(1)?));
        }
        Ok(Some(out))
    }
}

fn params_from_flags(args: &FieldArgs) -> CliResult<Params> {
    let family = args
        .field
        .clone()
        .ok_or_else(|| bad("no field selected: pass --field <family> or --config <file>"))?;
    let mut table = toml::Table::new();
    let mut put = |k: &str, v: Option<f64>| {
        if let Some(x) = v {
            table.insert(k.to_string(), toml::Value::Float(x));
        }
    };
    put("amplitude", args.amplitude);
    put("alpha", args.alpha);
    put("radius", args.radius);
    put("l", args.l);
    put("r", args.r);
    put("b0_coeff", args.b0_coeff);
    put("b0_radius", args.b0_radius);
    put("b1_coeff", args.b1_coeff);
    put("b1_radius", args.b1_radius);
    if let Some(q) = &args.q {
        table.insert(
            "q".to_string(),
            toml::Value::Array(q.iter().map(|&x| toml::Value::Float(x)).collect()),
        );
    }
    Ok(Params { family, dimension: None, table })
}

pub fn build_spec(args: &FieldArgs) -> CliResult<FieldSpec> {
    let p = match &args.config {
        Some(path) => params_from_toml(path)?,
        None => params_from_flags(args)?,
    };
    let spec = match p.family.as_str() {
        "gaussian2d" => FieldSpec::gaussian2d(p.num("amplitude")?.unwrap_or(1.0)),
        "ab_point_flux_2d" => FieldSpec::ab_point_flux_2d(
            p.num("alpha")?.ok_or_else(|| bad("ab_point_flux_2d requires param alpha"))?,
        ),
        "radial_profile_2d" => {
            let pts = p
                .pairs("points")?
                .ok_or_else(|| bad("radial_profile_2d requires param.points = [[r, B], ...]"))?;
            FieldSpec::radial_profile_2d(RadialSpline::new(&pts)?)
        }
        "radial_plus_dipole_2d" => {
            let b0 = BumpProfile {
                coeff: p.num("b0_coeff")?.unwrap_or(1.0),
                radius: p.num("b0_radius")?.unwrap_or(2.0),
            };
            let b1 = BumpProfile {
                coeff: p.num("b1_coeff")?.unwrap_or(1.0),
                radius: p.num("b1_radius")?.unwrap_or(1.5),
            };
            let q = match p.table.get("q") {
                None => v2(0.0, 0.0),
                Some(v) => {
                    let arr = v
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| bad("param.q must have two components"))?;
                    let g = |i: usize| {
                        arr[i]
                            .as_float()
                            .or_else(|| arr[i].as_integer().map(|n| n as f64))
                            .ok_or_else(|| bad("param.q must be numeric"))
                    };
                    v2(g(0)?, g(1)?)
                }
            };
            FieldSpec::radial_plus_dipole_2d(b0, b1, q)
        }
        "toroidal_solenoid_3d" => {
            let alpha = p.num("alpha")?.unwrap_or(1.0);
            let shape = if let Some(pts) = p.pairs("boundary")? {
                SectionShape::ConvexBoundary { points: pts }
            } else {
                SectionShape::Disc {
                    l: p.num("l")?.unwrap_or(2.0),
                    r: p.num("r")?.unwrap_or(1.0),
                }
            };
            FieldSpec::toroidal_solenoid_3d(alpha, shape)?
        }
        "bump_3d" => FieldSpec::bump_3d(
            p.num("amplitude")?.unwrap_or(1.0),
            p.num("radius")?.unwrap_or(1.0),
        ),
        other => return Err(bad(format!("unknown field family `{other}`"))),
    };
    if let Some(d) = p.dimension {
        if d as usize != spec.dimension() {
            return Err(bad(format!(
                "field.dimension = {d} but family `{}` is {}-dimensional",
                p.family,
                spec.dimension()
            )));
        }
    }
    Ok(spec)
}

/// Echo of the parsed specification in the config-file syntax.
pub fn dump_spec(spec: &FieldSpec) -> String {
    let mut out = String::from("[field]\n");
    out.push_str(&format!("dimension = {}\n", spec.dimension()));
    let param = |k: &str, v: f64| format!("param.{k} = {}\n", sig17(v));
    match &spec.family {
        Family::Gaussian2d { amplitude } => {
            out.push_str("family = \"gaussian2d\"\n");
            out.push_str(&param("amplitude", *amplitude));
        }
        Family::AbPointFlux2d { alpha } => {
            out.push_str("family = \"ab_point_flux_2d\"\n");
            out.push_str(&param("alpha", *alpha));
        }
        Family::RadialProfile2d { profile } => {
            out.push_str("family = \"radial_profile_2d\"\n");
            let pts: Vec<String> = profile
                .points()
                .iter()
                .map(|(r, b)| format!("[{}, {}]", sig17(*r), sig17(*b)))
                .collect();
            out.push_str(&format!("param.points = [{}]\n", pts.join(", ")));
        }
        Family::RadialPlusDipole2d { b0, b1, q } => {
            out.push_str("family = \"radial_plus_dipole_2d\"\n");
            out.push_str(&param("b0_coeff", b0.coeff));
            out.push_str(&param("b0_radius", b0.radius));
            out.push_str(&param("b1_coeff", b1.coeff));
            out.push_str(&param("b1_radius", b1.radius));
            out.push_str(&format!("param.q = [{}, {}]\n", sig17(q.x), sig17(q.y)));
        }
        Family::ToroidalSolenoid3d { alpha, shape } => {
            out.push_str("family = \"toroidal_solenoid_3d\"\n");
            out.push_str(&param("alpha", *alpha));
            match shape {
                SectionShape::Disc { l, r } => {
                    out.push_str(&param("l", *l));
                    out.push_str(&param("r", *r));
                }
                SectionShape::ConvexBoundary { points } => {
                    let pts: Vec<String> = points
                        .iter()
                        .map(|(a, b)| format!("[{}, {}]", sig17(*a), sig17(*b)))
                        .collect();
                    out.push_str(&format!("param.boundary = [{}]\n", pts.join(", ")));
                }
            }
        }
        Family::Bump3d { amplitude, radius } => {
            out.push_str("family = \"bump_3d\"\n");
            out.push_str(&param("amplitude", *amplitude));
            out.push_str(&param("radius", *radius));
        }
    }
    out
}
