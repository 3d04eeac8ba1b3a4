//! Force rotation and formation-versus-baseline metrics.
//!
//! A wing flying in another wing's upwash sees its apparent wind tilted by
//! an angle `delta_alpha`. The resultant aerodynamic force keeps its
//! magnitude and rotates with the wind, so lift grows slightly while drag
//! shrinks by a term proportional to lift. [`rotate_forces`] implements that
//! rotation; [`upwash_angle`] measures the tilt a solved formation actually
//! produces at a wing; [`formation_ratios`] packages per-wing comparisons
//! against solo baselines.

use crate::geometry::{FormationLayout, Role, WingSpec};
use crate::solver::{
    induced_velocity, solve_solo, AeroSolution, CaseError, FlightCondition,
    SolverSettings, WingAero,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest rotation angle the small-angle force model is trusted for, in
/// radians. The boundary itself is admitted.
pub const MAX_ROTATION_RAD: f64 = 0.2;

/// Baseline moments smaller than this (N*m) make the moment ratio
/// meaningless, so it is dropped rather than divided.
const MOMENT_RATIO_FLOOR: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("rotation angle {value} rad is outside |delta_alpha| <= {MAX_ROTATION_RAD}")]
    RotationOutOfRange { value: f64 },
    #[error("force state field {field} = {value} is not usable")]
    InvalidForce { field: &'static str, value: f64 },
    #[error("baseline drag {value} N must be positive to form a reduction")]
    NonPositiveBaselineDrag { value: f64 },
    #[error("no wing named '{id}' in the solution")]
    UnknownWing { id: String },
    #[error("no solo baseline matches the planform of wing '{id}'")]
    MissingBaseline { id: String },
    #[error("lift-weighted averaging needs nonzero total circulation")]
    ZeroWeight,
}

/// Lift and drag of one wing, in Newtons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForceState {
    pub lift: f64,
    pub drag: f64,
}

/// Forces after rotating the apparent wind by `delta_alpha`.
///
/// `delta_lift` and `delta_drag` are the rotation cross terms: the drag
/// contribution turned into lift and the lift contribution turned into
/// (negative) drag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotatedForces {
    pub delta_alpha: f64,
    pub lift_ff: f64,
    pub drag_ff: f64,
    pub delta_lift: f64,
    pub delta_drag: f64,
}

/// Rotate a force state by an upwash angle.
///
/// `lift_ff = L cos + D sin`, `drag_ff = D cos - L sin`: a pure rotation,
/// so the resultant magnitude is preserved exactly. For positive upwash and
/// `L >= D >= 0`, the drag change `delta_drag = L sin` dominates the lift
/// change `delta_lift = D sin`.
pub fn rotate_forces(
    base: ForceState,
    delta_alpha: f64,
) -> Result<RotatedForces, AnalysisError> {
    if !base.lift.is_finite() || base.lift < 0.0 {
        return Err(AnalysisError::InvalidForce {
            field: "lift",
            value: base.lift,
        });
    }
    if !base.drag.is_finite() {
        return Err(AnalysisError::InvalidForce {
            field: "drag",
            value: base.drag,
        });
    }
    if !delta_alpha.is_finite() || delta_alpha.abs() > MAX_ROTATION_RAD {
        return Err(AnalysisError::RotationOutOfRange { value: delta_alpha });
    }
    let (s, c) = delta_alpha.sin_cos();
    Ok(RotatedForces {
        delta_alpha,
        lift_ff: base.lift * c + base.drag * s,
        drag_ff: base.drag * c - base.lift * s,
        delta_lift: base.drag * s,
        delta_drag: base.lift * s,
    })
}

/// Fractional drag reduction `1 - drag_ff / drag_bl`; negative when the
/// formation costs more drag than flying alone.
pub fn drag_reduction(drag_ff: f64, drag_bl: f64) -> Result<f64, AnalysisError> {
    if !(drag_bl > 0.0) {
        return Err(AnalysisError::NonPositiveBaselineDrag { value: drag_bl });
    }
    Ok(1.0 - drag_ff / drag_bl)
}

/// Fractional power reduction at fixed flight speed. Power is drag times
/// speed, so the speed cancels and this equals [`drag_reduction`].
pub fn power_reduction(drag_ff: f64, drag_bl: f64) -> Result<f64, AnalysisError> {
    drag_reduction(drag_ff, drag_bl)
}

/// Where along the chord the upwash is sampled, and how stations are
/// weighted across the span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpwashLocus {
    /// Quarter-chord line, chord-area weighted.
    #[default]
    QuarterChord,
    /// Three-quarter-chord line, chord-area weighted.
    ThreeQuarterChord,
    /// Quarter-chord line, weighted by local bound circulation.
    LiftWeighted,
}

/// Span-averaged upward induced velocity (m/s) at a wing from every OTHER
/// wing's vortex system. Linear in the other wings' circulations.
pub fn average_upwash(
    wing_id: &str,
    solution: &AeroSolution,
    cond: &FlightCondition,
    settings: &SolverSettings,
    locus: UpwashLocus,
) -> Result<f64, AnalysisError> {
    let lattice = &solution.lattice;
    let w = lattice
        .wings
        .iter()
        .position(|w| w.id == wing_id)
        .ok_or_else(|| AnalysisError::UnknownWing {
            id: wing_id.to_string(),
        })?;
    let wing = &lattice.wings[w];
    let core = settings.core_radius(lattice);
    let up = cond.lift_dir();
    let points = match locus {
        UpwashLocus::QuarterChord | UpwashLocus::LiftWeighted => &wing.qc_points,
        UpwashLocus::ThreeQuarterChord => &wing.tq_points,
    };
    let mut weighted = 0.0;
    let mut total = 0.0;
    for j in 0..wing.n_span {
        let weight = match locus {
            UpwashLocus::QuarterChord | UpwashLocus::ThreeQuarterChord => {
                wing.strip_chords[j] * wing.strip_widths[j]
            }
            UpwashLocus::LiftWeighted => {
                lattice.strip_circulation(&solution.gamma, w, j)
                    * wing.strip_widths[j]
            }
        };
        let v = induced_velocity(points[j], &solution.gamma, lattice, core, Some(w));
        weighted += weight * v.dot(&up);
        total += weight;
    }
    if total.abs() < 1e-12 {
        return Err(AnalysisError::ZeroWeight);
    }
    Ok(weighted / total)
}

/// Upwash tilt angle `atan(w / v_inf)` in radians at a wing, positive when
/// the other wings push its apparent wind upward.
pub fn upwash_angle(
    wing_id: &str,
    solution: &AeroSolution,
    cond: &FlightCondition,
    settings: &SolverSettings,
    locus: UpwashLocus,
) -> Result<f64, AnalysisError> {
    let w_bar = average_upwash(wing_id, solution, cond, settings, locus)?;
    Ok((w_bar / cond.v_inf).atan())
}

/// A solo-flight reference: the planform it was solved for and the loads.
/// Must be solved under the same flight condition as the formation it is
/// compared against.
#[derive(Debug, Clone)]
pub struct SoloCase {
    pub spec: WingSpec,
    pub aero: WingAero,
}

/// Solve a solo baseline for every distinct planform in the layout.
pub fn solo_baselines(
    layout: &FormationLayout,
    cond: &FlightCondition,
    settings: &SolverSettings,
) -> Result<Vec<SoloCase>, CaseError> {
    let mut cases: Vec<SoloCase> = Vec::new();
    for wing in &layout.wings {
        if cases.iter().any(|c| c.spec == wing.spec) {
            continue;
        }
        let solo = solve_solo(&wing.spec, cond, settings)?;
        cases.push(SoloCase {
            spec: wing.spec.clone(),
            aero: solo.wings[0].clone(),
        });
    }
    Ok(cases)
}

/// One wing's formation loads next to its solo baseline.
#[derive(Debug, Clone, Serialize)]
pub struct WingMetrics {
    pub wing_id: String,
    pub role: Role,
    pub lift: f64,
    pub induced_drag: f64,
    pub pitching_moment: f64,
    pub c_l: f64,
    pub c_d: f64,
    pub c_m: f64,
    pub lift_ratio: f64,
    pub drag_ratio: f64,
    /// Dropped when the baseline moment is too small to divide by.
    pub moment_ratio: Option<f64>,
    /// Measured upwash tilt at this wing, radians.
    pub delta_alpha: f64,
    /// Fractional reduction, `0.2` meaning 20% less drag than solo.
    pub pct_drag_reduction: f64,
    pub pct_power_reduction: f64,
    /// Solo power drag * v_inf, W.
    pub power_bl: f64,
    /// Formation power, W.
    pub power_ff: f64,
}

/// Per-wing comparisons for one formation case.
#[derive(Debug, Clone, Serialize)]
pub struct FormationMetrics {
    pub wings: Vec<WingMetrics>,
}

impl FormationMetrics {
    pub fn wing(&self, id: &str) -> Option<&WingMetrics> {
        self.wings.iter().find(|w| w.wing_id == id)
    }

    /// Mean fractional power reduction over the non-leader wings; the
    /// leader's own saving is excluded.
    pub fn average_trailing_power_reduction(&self) -> Option<f64> {
        let trailing: Vec<&WingMetrics> = self
            .wings
            .iter()
            .filter(|w| w.role != Role::Leader)
            .collect();
        if trailing.is_empty() {
            return None;
        }
        Some(
            trailing.iter().map(|w| w.pct_power_reduction).sum::<f64>()
                / trailing.len() as f64,
        )
    }

    /// Fractional power reduction of the formation total against the sum of
    /// the solo baselines.
    pub fn total_power_reduction(&self) -> f64 {
        let ff: f64 = self.wings.iter().map(|w| w.power_ff).sum();
        let bl: f64 = self.wings.iter().map(|w| w.power_bl).sum();
        1.0 - ff / bl
    }
}

/// Compare a solved formation against solo baselines, wing by wing.
///
/// Baselines are matched by planform equality and must have been solved
/// under the same flight condition. Ratios use near-field forces; the
/// far-field drag stays available on the solution for cross-checks.
pub fn formation_ratios(
    formation: &AeroSolution,
    layout: &FormationLayout,
    baselines: &[SoloCase],
    cond: &FlightCondition,
    settings: &SolverSettings,
    locus: UpwashLocus,
) -> Result<FormationMetrics, AnalysisError> {
    let mut wings = Vec::with_capacity(formation.wings.len());
    for aero in &formation.wings {
        let spec = layout
            .wings
            .iter()
            .find(|w| w.id == aero.id)
            .map(|w| &w.spec)
            .ok_or_else(|| AnalysisError::UnknownWing {
                id: aero.id.clone(),
            })?;
        let base = baselines
            .iter()
            .find(|c| c.spec == *spec)
            .ok_or_else(|| AnalysisError::MissingBaseline {
                id: aero.id.clone(),
            })?;
        let delta_alpha =
            upwash_angle(&aero.id, formation, cond, settings, locus)?;
        let reduction = drag_reduction(aero.induced_drag, base.aero.induced_drag)?;
        let moment_ratio = if base.aero.pitching_moment.abs() < MOMENT_RATIO_FLOOR {
            None
        } else {
            Some(aero.pitching_moment / base.aero.pitching_moment)
        };
        wings.push(WingMetrics {
            wing_id: aero.id.clone(),
            role: aero.role,
            lift: aero.lift,
            induced_drag: aero.induced_drag,
            pitching_moment: aero.pitching_moment,
            c_l: aero.c_l,
            c_d: aero.c_d,
            c_m: aero.c_m,
            lift_ratio: aero.lift / base.aero.lift,
            drag_ratio: aero.induced_drag / base.aero.induced_drag,
            moment_ratio,
            delta_alpha,
            pct_drag_reduction: reduction,
            pct_power_reduction: power_reduction(
                aero.induced_drag,
                base.aero.induced_drag,
            )?,
            power_bl: base.aero.induced_drag * cond.v_inf,
            power_ff: aero.induced_drag * cond.v_inf,
        });
    }
    Ok(FormationMetrics { wings })
}

/// Fixed column order for metrics CSV rows.
pub const METRICS_CSV_HEADER: &str = "case_id,wing_id,role,lift,induced_drag,\
moment,c_l,c_d,c_m,lift_ratio,drag_ratio,moment_ratio,delta_alpha,\
pct_drag_red,pct_power_red";

impl WingMetrics {
    /// One CSV row matching [`METRICS_CSV_HEADER`]. Floats use `{:.5e}`;
    /// a dropped moment ratio prints as `nan`. Ids must not contain commas.
    pub fn csv_row(&self, case_id: &str) -> String {
        let m_ratio = match self.moment_ratio {
            Some(r) => format!("{r:.5e}"),
            None => "nan".to_string(),
        };
        format!(
            "{},{},{},{:.5e},{:.5e},{:.5e},{:.5e},{:.5e},{:.5e},{:.5e},{:.5e},{},{:.5e},{:.5e},{:.5e}",
            case_id,
            self.wing_id,
            self.role.label(),
            self.lift,
            self.induced_drag,
            self.pitching_moment,
            self.c_l,
            self.c_d,
            self.c_m,
            self.lift_ratio,
            self.drag_ratio,
            m_ratio,
            self.delta_alpha,
            self.pct_drag_reduction,
            self.pct_power_reduction,
        )
    }
}
