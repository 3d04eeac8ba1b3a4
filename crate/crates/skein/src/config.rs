//! Run configuration files.
//!
//! A config is a TOML document with one `[[wing]]` block per wing (the wing
//! without `side`/`offset` is the leader), an optional `[flight]` block, an
//! optional `[solver]` block, and one optional block per subcommand that
//! needs extra inputs: `[sweep]`, `[study]`, `[stagger]`. Unknown keys are
//! rejected everywhere. Command-line `--set key=value` overrides are applied
//! after parsing and before any validation.

use crate::analysis::UpwashLocus;
use crate::geometry::{
    FormationLayout, FormationWing, GeometryError, Offset, Side, Station, WingSpec,
};
use crate::solver::{FlightCondition, SolverError, SolverSettings};
use crate::spacing::{SpacingAxis, SpacingObjective, SpacingStudy, StaggerMode};
use crate::sweeps::{SweepParameter, SweepSpec};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config syntax: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("wing {wing:?}: {reason}")]
    Wing { wing: String, reason: String },
    #[error("override {key:?}: {reason}")]
    Override { key: String, reason: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Flight(#[from] SolverError),
    #[error("this subcommand needs a [{section}] section in the config")]
    MissingSection { section: &'static str },
    #[error("[{section}] {reason}")]
    Section {
        section: &'static str,
        reason: String,
    },
}

/// One `[[wing]]` block: the full planform description plus, for trailing
/// wings, which side of the leader it flies on and at what offset.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct WingTable {
    id: String,
    side: Option<Side>,
    offset: Option<Offset>,
    span: f64,
    root_chord: f64,
    taper: f64,
    sweep_deg: f64,
    dihedral_deg: f64,
    incidence_deg: f64,
    camber_m: f64,
    camber_p: f64,
    n_span: usize,
    n_chord: usize,
}

impl WingTable {
    fn spec(&self) -> WingSpec {
        WingSpec {
            span: self.span,
            root_chord: self.root_chord,
            taper: self.taper,
            sweep_deg: self.sweep_deg,
            dihedral_deg: self.dihedral_deg,
            incidence_deg: self.incidence_deg,
            camber_m: self.camber_m,
            camber_p: self.camber_p,
            n_span: self.n_span,
            n_chord: self.n_chord,
        }
    }

    fn to_formation_wing(&self) -> Result<FormationWing, ConfigError> {
        let station = match (self.side, self.offset) {
            (None, None) => Station::Lead,
            (Some(side), Some(offset)) => Station::Trail { side, offset },
            (Some(_), None) => {
                return Err(ConfigError::Wing {
                    wing: self.id.clone(),
                    reason: "has side but no offset".to_string(),
                })
            }
            (None, Some(_)) => {
                return Err(ConfigError::Wing {
                    wing: self.id.clone(),
                    reason: "has offset but no side".to_string(),
                })
            }
        };
        Ok(FormationWing {
            id: self.id.clone(),
            spec: self.spec(),
            station,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepTable {
    parameter: SweepParameter,
    values: Vec<f64>,
    #[serde(default)]
    locus: UpwashLocus,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct StudyTable {
    axis: SpacingAxis,
    bracket: [f64; 2],
    tolerance: f64,
    #[serde(default)]
    objective: SpacingObjective,
    #[serde(default)]
    locus: UpwashLocus,
    #[serde(default = "default_prescan_points")]
    prescan_points: usize,
}

fn default_prescan_points() -> usize {
    9
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct StaggerTable {
    offsets: Vec<f64>,
    #[serde(default = "default_stagger_mode")]
    mode: StaggerMode,
}

fn default_stagger_mode() -> StaggerMode {
    StaggerMode::Resolve
}

/// Parsed config document, prior to domain validation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    flight: FlightCondition,
    #[serde(default)]
    solver: SolverSettings,
    wing: Vec<WingTable>,
    sweep: Option<SweepTable>,
    study: Option<StudyTable>,
    stagger: Option<StaggerTable>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    /// Apply `key=value` overrides in order. Keys take the forms
    /// `flight.<field>`, `solver.<field>`, or `<wing-id>.<field>` where the
    /// wing fields are the planform fields (with `incidence`, `dihedral`,
    /// and `sweep` accepted as shorthand for the `_deg` names) and, for
    /// trailing wings, the offset distances.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<(), ConfigError> {
        for entry in overrides {
            self.apply_override(entry)?;
        }
        Ok(())
    }

    fn apply_override(&mut self, entry: &str) -> Result<(), ConfigError> {
        let bad = |reason: String| ConfigError::Override {
            key: entry.to_string(),
            reason,
        };
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| bad("expected key=value".to_string()))?;
        let (scope, field) = key
            .split_once('.')
            .ok_or_else(|| bad("expected a dotted key like flight.alpha_deg".to_string()))?;
        let float = || -> Result<f64, ConfigError> {
            value
                .parse::<f64>()
                .map_err(|_| bad(format!("{value:?} is not a number")))
        };
        let count = || -> Result<usize, ConfigError> {
            value
                .parse::<usize>()
                .map_err(|_| bad(format!("{value:?} is not a count")))
        };
        match scope {
            "flight" => match field {
                "v_inf" => self.flight.v_inf = float()?,
                "rho" => self.flight.rho = float()?,
                "alpha" | "alpha_deg" => self.flight.alpha_deg = float()?,
                _ => return Err(bad(format!("unknown flight field {field:?}"))),
            },
            "solver" => match field {
                "core_fraction" => self.solver.core_fraction = float()?,
                _ => return Err(bad(format!("unknown solver field {field:?}"))),
            },
            wing_id => {
                let wing = self
                    .wing
                    .iter_mut()
                    .find(|w| w.id == wing_id)
                    .ok_or_else(|| bad(format!("no wing with id {wing_id:?}")))?;
                match field {
                    "span" => wing.span = float()?,
                    "root_chord" => wing.root_chord = float()?,
                    "taper" => wing.taper = float()?,
                    "sweep" | "sweep_deg" => wing.sweep_deg = float()?,
                    "dihedral" | "dihedral_deg" => wing.dihedral_deg = float()?,
                    "incidence" | "incidence_deg" => wing.incidence_deg = float()?,
                    "camber_m" => wing.camber_m = float()?,
                    "camber_p" => wing.camber_p = float()?,
                    "n_span" => wing.n_span = count()?,
                    "n_chord" => wing.n_chord = count()?,
                    "streamwise" | "wing_tip_spacing" | "vertical" => {
                        let offset = wing.offset.as_mut().ok_or_else(|| {
                            ConfigError::Override {
                                key: entry.to_string(),
                                reason: format!(
                                    "wing {wing_id:?} is the leader and has no offset"
                                ),
                            }
                        })?;
                        match field {
                            "streamwise" => offset.streamwise = float()?,
                            "wing_tip_spacing" => offset.wing_tip_spacing = float()?,
                            _ => offset.vertical = float()?,
                        }
                    }
                    _ => return Err(bad(format!("unknown wing field {field:?}"))),
                }
            }
        }
        Ok(())
    }

    pub fn layout(&self) -> Result<FormationLayout, ConfigError> {
        let wings = self
            .wing
            .iter()
            .map(|w| w.to_formation_wing())
            .collect::<Result<Vec<_>, _>>()?;
        let layout = FormationLayout { wings };
        layout.validate()?;
        Ok(layout)
    }

    pub fn flight(&self) -> Result<FlightCondition, ConfigError> {
        self.flight.validate()?;
        Ok(self.flight)
    }

    pub fn solver(&self) -> Result<SolverSettings, ConfigError> {
        self.solver.validate()?;
        Ok(self.solver)
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec, ConfigError> {
        let table = self
            .sweep
            .as_ref()
            .ok_or(ConfigError::MissingSection { section: "sweep" })?;
        Ok(SweepSpec {
            layout: self.layout()?,
            parameter: table.parameter,
            values: table.values.clone(),
            condition: self.flight()?,
            settings: self.solver()?,
            locus: table.locus,
        })
    }

    pub fn study(&self) -> Result<SpacingStudy, ConfigError> {
        let table = self
            .study
            .as_ref()
            .ok_or(ConfigError::MissingSection { section: "study" })?;
        Ok(SpacingStudy {
            layout: self.layout()?,
            axis: table.axis,
            bracket: (table.bracket[0], table.bracket[1]),
            tolerance: table.tolerance,
            objective: table.objective,
            condition: self.flight()?,
            settings: self.solver()?,
            locus: table.locus,
            prescan_points: table.prescan_points,
        })
    }

    pub fn stagger(&self) -> Result<(Vec<f64>, StaggerMode), ConfigError> {
        let table = self
            .stagger
            .as_ref()
            .ok_or(ConfigError::MissingSection { section: "stagger" })?;
        if table.offsets.is_empty() {
            return Err(ConfigError::Section {
                section: "stagger",
                reason: "offsets list is empty".to_string(),
            });
        }
        Ok((table.offsets.clone(), table.mode))
    }

    /// Check everything checkable without running a solve: the formation,
    /// the flight condition, the solver settings, and whichever subcommand
    /// sections are present.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.layout()?;
        self.flight()?;
        self.solver()?;
        if self.sweep.is_some() {
            self.sweep_spec()?;
        }
        if self.study.is_some() {
            self.study()?;
        }
        if self.stagger.is_some() {
            self.stagger()?;
        }
        Ok(())
    }
}
