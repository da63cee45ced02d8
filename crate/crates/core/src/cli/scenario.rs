use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::exprkit::{AngleLaw, Expr, Parser, ScalarField, TimeLaw};
use crate::potentials::{ChargeSpec, GaugeScalar};
use crate::spinor::{Helicity, PhaseField};
use crate::vector::Vec3;

/// Named parameter sets for the published figures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Fig1Velocity,
    Fig2Trajectory,
    Fig3K,
    Fig45Control,
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Fig1Velocity,
        Preset::Fig2Trajectory,
        Preset::Fig3K,
        Preset::Fig45Control,
        Preset::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1Velocity => "fig1_velocity",
            Preset::Fig2Trajectory => "fig2_trajectory",
            Preset::Fig3K => "fig3_k",
            Preset::Fig45Control => "fig45_control",
            Preset::Custom => "custom",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::UnknownPreset(s.trim().to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PhaseSpec {
    PlaneWave { energy: f64 },
    Expression(PhaseField),
}

impl PhaseSpec {
    pub fn field(&self) -> PhaseField {
        match self {
            PhaseSpec::PlaneWave { energy } => PhaseField::plane_wave(*energy),
            PhaseSpec::Expression(f) => f.clone(),
        }
    }
}

/// Applied electric field of a scenario.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Zero,
    /// The field that reproduces the angle law exactly.
    Drive,
    /// `E = ±(strength/q)·ẑ`, the sign following the helicity.
    AxialControl { strength: f64 },
    /// Components as expressions in `t`.
    Components(Box<[Expr; 3]>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ControlTarget {
    Energy,
    Localization,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlSpec {
    pub target: ControlTarget,
    /// `dE₀/dt` or `dk/dt`.
    pub rate: f64,
    /// `true` keeps θ fixed and drives φ; `false` the opposite.
    pub azimuthal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Verification {
    pub fd_step: f64,
    pub tolerance: f64,
    pub sample_count: usize,
    pub seed: u64,
}

impl Default for Verification {
    fn default() -> Self {
        Self {
            fd_step: 1e-5,
            tolerance: 1e-6,
            sample_count: 50,
            seed: 0,
        }
    }
}

/// A validated scenario with every default applied.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub preset: Preset,
    pub helicity: Helicity,
    pub charge: ChargeSpec,
    pub law: AngleLaw,
    pub phase: PhaseSpec,
    pub gauge: GaugeScalar,
    pub field: FieldSpec,
    pub magnetic: Vec3,
    pub dt: f64,
    pub t_end: f64,
    pub start: Vec3,
    pub constraint_tolerance: f64,
    pub verification: Verification,
    /// Constant added to `b₀` before the residual checks. Test hook for a
    /// deliberately wrong potential.
    pub potential_offset: f64,
    pub control: ControlSpec,
    pub csv: Option<PathBuf>,
}

/// Command-line overrides applied after loading.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub seed: Option<u64>,
    pub paper_literal_field: bool,
}

impl Scenario {
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(dt) = o.dt {
            positive("dt", dt)?;
            self.dt = dt;
        }
        if let Some(t_end) = o.t_end {
            positive("t_end", t_end)?;
            self.t_end = t_end;
        }
        if let Some(seed) = o.seed {
            self.verification.seed = seed;
        }
        if o.paper_literal_field {
            self.use_paper_literal_field();
        }
        Ok(())
    }

    /// Switches an axial control field to magnitude `1/q`.
    pub fn use_paper_literal_field(&mut self) {
        if let FieldSpec::AxialControl { strength } = &mut self.field {
            *strength = 1.0;
        }
    }

    pub fn phase_field(&self) -> PhaseField {
        self.phase.field()
    }
}

pub const KEYS: &[&str] = &[
    "name",
    "preset",
    "helicity",
    "q",
    "theta0",
    "omega1",
    "phi0",
    "omega2",
    "theta_law",
    "phi_law",
    "phase",
    "e0",
    "gauge",
    "field",
    "field_strength",
    "field_x",
    "field_y",
    "field_z",
    "magnetic_x",
    "magnetic_y",
    "magnetic_z",
    "dt",
    "t_end",
    "x0",
    "y0",
    "z0",
    "constraint_tolerance",
    "fd_step",
    "tolerance",
    "sample_count",
    "seed",
    "potential_offset",
    "paper_literal_field",
    "control_target",
    "control_rate",
    "control_mode",
    "csv",
];

/// Reads and validates a scenario file. The name defaults to the file stem.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    parse_scenario(&text, stem)
}

/// Parses `key = value` lines. `#` starts a comment; blank lines are
/// ignored. Numeric values are constant expressions such as `pi/2` or
/// `sqrt(3)`.
pub fn parse_scenario(text: &str, default_name: &str) -> Result<Scenario> {
    let mut raw = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::ScenarioSyntax {
            line: line_no,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(Error::ScenarioSyntax {
                line: line_no,
                message: format!("unknown key `{key}`"),
            });
        }
        let value = value.trim();
        if value.is_empty() {
            return Err(Error::ScenarioSyntax {
                line: line_no,
                message: format!("missing value for `{key}`"),
            });
        }
        if raw.insert(key, value.to_string()).is_some() {
            return Err(Error::ScenarioSyntax {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    Raw(raw).build(default_name)
}

struct Raw<'a>(BTreeMap<&'a str, String>);

impl Raw<'_> {
    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn number(&self, key: &str) -> Result<Option<f64>> {
        self.get(key).map(|v| constant(key, v)).transpose()
    }

    fn number_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.number(key)?.unwrap_or(default))
    }

    fn expr(&self, key: &str) -> Result<Option<Expr>> {
        self.get(key)
            .map(|v| Parser::new().parse(v).map_err(|e| Error::value(key, e)))
            .transpose()
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.get(key) {
            None | Some("false") | Some("no") | Some("0") => Ok(false),
            Some("true") | Some("yes") | Some("1") => Ok(true),
            Some(other) => Err(Error::value(key, format!("expected true or false, got `{other}`"))),
        }
    }

    fn build(&self, default_name: &str) -> Result<Scenario> {
        let preset: Preset = match self.get("preset") {
            Some(p) => p.parse()?,
            None => Preset::Custom,
        };
        let d = PresetDefaults::of(preset);

        let helicity = match (self.get("helicity"), d.helicity) {
            (Some(v), _) => v.parse().map_err(|e| Error::value("helicity", e))?,
            (None, Some(h)) => h,
            (None, None) => return Err(Error::value("helicity", "required key is missing")),
        };
        let q = match (self.number("q")?, d.q) {
            (Some(q), _) | (None, Some(q)) => q,
            (None, None) => return Err(Error::value("q", "required key is missing")),
        };
        if q == 0.0 {
            return Err(Error::value("q", "charge must be non-zero"));
        }

        let law = self.law(&d)?;
        let phase = match self.get("phase") {
            None | Some("plane_wave") => PhaseSpec::PlaneWave {
                energy: self.number_or("e0", d.e0)?,
            },
            Some(_) => {
                if self.get("e0").is_some() {
                    return Err(Error::value("e0", "only used with `phase = plane_wave`"));
                }
                PhaseSpec::Expression(ScalarField::new(self.expr("phase")?.unwrap_or(Expr::Const(0.0))))
            }
        };
        let gauge = ScalarField::new(self.expr("gauge")?.unwrap_or(Expr::Const(0.0)));

        let field = self.field(&d)?;
        let magnetic = Vec3::new(
            self.number_or("magnetic_x", 0.0)?,
            self.number_or("magnetic_y", 0.0)?,
            self.number_or("magnetic_z", 0.0)?,
        );

        let dt = positive("dt", self.number_or("dt", 1e-3)?)?;
        let t_end = positive("t_end", self.number_or("t_end", d.t_end)?)?;
        let verification = Verification {
            fd_step: positive("fd_step", self.number_or("fd_step", 1e-5)?)?,
            tolerance: positive("tolerance", self.number_or("tolerance", 1e-6)?)?,
            sample_count: match self.get("sample_count") {
                None => 50,
                Some(v) => v
                    .parse()
                    .ok()
                    .filter(|n| *n > 0)
                    .ok_or_else(|| Error::value("sample_count", "expected a positive integer"))?,
            },
            seed: match self.get("seed") {
                None => 0,
                Some(v) => v.parse().map_err(|_| Error::value("seed", "expected an unsigned integer"))?,
            },
        };

        let control = ControlSpec {
            target: match self.get("control_target") {
                None | Some("localization") => ControlTarget::Localization,
                Some("energy") => ControlTarget::Energy,
                Some(other) => return Err(Error::value("control_target", format!("expected energy or localization, got `{other}`"))),
            },
            rate: self.number_or("control_rate", d.control_rate)?,
            azimuthal: match self.get("control_mode") {
                None | Some("azimuthal") => true,
                Some("polar") => false,
                Some(other) => return Err(Error::value("control_mode", format!("expected azimuthal or polar, got `{other}`"))),
            },
        };

        let mut scenario = Scenario {
            name: self.get("name").unwrap_or(default_name).to_string(),
            preset,
            helicity,
            charge: ChargeSpec::new(q),
            law,
            phase,
            gauge,
            field,
            magnetic,
            dt,
            t_end,
            start: Vec3::new(
                self.number_or("x0", 0.0)?,
                self.number_or("y0", 0.0)?,
                self.number_or("z0", 0.0)?,
            ),
            constraint_tolerance: positive("constraint_tolerance", self.number_or("constraint_tolerance", 1e-6)?)?,
            verification,
            potential_offset: self.number_or("potential_offset", 0.0)?,
            control,
            csv: self.get("csv").map(PathBuf::from),
        };
        if self.flag("paper_literal_field")? {
            scenario.use_paper_literal_field();
        }
        Ok(scenario)
    }

    fn law(&self, d: &PresetDefaults) -> Result<AngleLaw> {
        let one = |law_key: &str, offset_key: &str, rate_key: &str, offset: Option<f64>, rate: f64| -> Result<TimeLaw> {
            match self.expr(law_key)? {
                Some(expr) => {
                    for k in [offset_key, rate_key] {
                        if self.get(k).is_some() {
                            return Err(Error::value(k, format!("conflicts with `{law_key}`")));
                        }
                    }
                    TimeLaw::custom(expr).map_err(|e| Error::value(law_key, e))
                }
                None => {
                    let offset = match (self.number(offset_key)?, offset) {
                        (Some(v), _) | (None, Some(v)) => v,
                        (None, None) => return Err(Error::value(offset_key, "required key is missing")),
                    };
                    Ok(TimeLaw::linear(offset, self.number_or(rate_key, rate)?))
                }
            }
        };
        Ok(AngleLaw::new(
            one("theta_law", "theta0", "omega1", d.theta0, d.omega1)?,
            one("phi_law", "phi0", "omega2", Some(d.phi0), d.omega2)?,
        ))
    }

    fn field(&self, d: &PresetDefaults) -> Result<FieldSpec> {
        let components = ["field_x", "field_y", "field_z"];
        let kind = self.get("field").unwrap_or(d.field);
        let any_component = components.iter().any(|k| self.get(k).is_some());
        if any_component && kind != "components" {
            return Err(Error::value("field", "field_x/y/z need `field = components`"));
        }
        if self.get("field_strength").is_some() && kind != "axial_control" {
            return Err(Error::value("field_strength", "only used with `field = axial_control`"));
        }
        Ok(match kind {
            "zero" => FieldSpec::Zero,
            "drive" => FieldSpec::Drive,
            "axial_control" => FieldSpec::AxialControl {
                strength: self.number_or("field_strength", 0.5)?,
            },
            "components" => {
                let mut exprs = [Expr::Const(0.0), Expr::Const(0.0), Expr::Const(0.0)];
                for (slot, key) in exprs.iter_mut().zip(components) {
                    if let Some(e) = self.expr(key)? {
                        if e.variables().iter().any(|v| *v != crate::exprkit::Var::T) {
                            return Err(Error::value(key, "field components may only depend on t"));
                        }
                        *slot = e;
                    }
                }
                FieldSpec::Components(Box::new(exprs))
            }
            other => {
                return Err(Error::value(
                    "field",
                    format!("expected zero, drive, axial_control or components, got `{other}`"),
                ))
            }
        })
    }
}

fn constant(key: &str, text: &str) -> Result<f64> {
    let expr = Parser::new().parse(text).map_err(|e| Error::value(key, e))?;
    expr.eval_const().map_err(|e| Error::value(key, e))
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::value(key, format!("must be positive and finite, got {v}")))
    }
}

struct PresetDefaults {
    helicity: Option<Helicity>,
    q: Option<f64>,
    theta0: Option<f64>,
    omega1: f64,
    phi0: f64,
    omega2: f64,
    e0: f64,
    field: &'static str,
    t_end: f64,
    control_rate: f64,
}

impl PresetDefaults {
    fn of(preset: Preset) -> Self {
        let figure = |t_end| PresetDefaults {
            helicity: Some(Helicity::Positive),
            q: Some(1.0),
            theta0: Some(FRAC_PI_2),
            omega1: 3f64.sqrt(),
            phi0: 0.0,
            omega2: 5f64.sqrt(),
            e0: 1.0,
            field: "drive",
            t_end,
            control_rate: 0.0,
        };
        match preset {
            Preset::Fig1Velocity | Preset::Fig2Trajectory => figure(200.0),
            Preset::Fig3K => figure(10.0),
            Preset::Fig45Control => PresetDefaults {
                omega1: 0.0,
                omega2: 10.0,
                field: "axial_control",
                control_rate: -0.5,
                ..figure(20.0)
            },
            Preset::Custom => PresetDefaults {
                helicity: None,
                q: None,
                theta0: None,
                omega1: 0.0,
                phi0: 0.0,
                omega2: 0.0,
                e0: 1.0,
                field: "drive",
                t_end: 10.0,
                control_rate: 0.0,
            },
        }
    }
}
