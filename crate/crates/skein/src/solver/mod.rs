//! Vortex-lattice solve: influence system, circulations, and forces.
//!
//! [`solve_case`] runs the whole pipeline for a formation layout: build the
//! lattice, point the wake legs along the freestream, solve the flow-tangency
//! system for horseshoe circulations, then reduce the circulations to
//! per-wing loads by both a near-field Kutta-Joukowski sum and a far-field
//! wake-plane integral.

mod biot_savart;
mod forces;
mod system;
mod trefftz;

pub use biot_savart::{horseshoe_velocity, segment_velocity, semi_infinite_velocity};
pub use forces::near_field_forces;
pub use system::{assemble_system, solve_circulations, LinearSystem, CONDITION_LIMIT, RESIDUAL_REL_TOL};
pub use trefftz::trefftz_drag;

use crate::geometry::{self, assemble_formation, FormationLayout, GeometryError, Lattice, Role};
use crate::Vec3;
use serde::{Deserialize, Serialize};

/// Freestream state shared by every wing in a case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FlightCondition {
    /// Freestream speed in m/s.
    pub v_inf: f64,
    /// Air density in kg/m^3.
    pub rho: f64,
    /// Angle of attack in degrees, rotation of the freestream in the x-z plane.
    pub alpha_deg: f64,
}

impl Default for FlightCondition {
    fn default() -> Self {
        Self {
            v_inf: 20.0,
            rho: 1.225,
            alpha_deg: 4.0,
        }
    }
}

impl FlightCondition {
    pub fn validate(&self) -> Result<(), SolverError> {
        let check = |field: &'static str, value: f64, ok: bool, reason: &'static str| {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(SolverError::InvalidCondition {
                    field,
                    value,
                    reason,
                })
            }
        };
        check("v_inf", self.v_inf, self.v_inf > 0.0, "must be positive")?;
        check("rho", self.rho, self.rho > 0.0, "must be positive")?;
        check(
            "alpha_deg",
            self.alpha_deg,
            self.alpha_deg.abs() < 15.0,
            "must stay below 15 degrees for an attached-flow lattice model",
        )
    }

    /// Unit vector along the freestream.
    pub fn freestream_dir(&self) -> Vec3 {
        let a = self.alpha_deg.to_radians();
        Vec3::new(a.cos(), 0.0, a.sin())
    }

    /// Unit vector along positive lift, perpendicular to the freestream in
    /// the x-z plane.
    pub fn lift_dir(&self) -> Vec3 {
        let a = self.alpha_deg.to_radians();
        Vec3::new(-a.sin(), 0.0, a.cos())
    }

    /// Freestream velocity vector.
    pub fn velocity(&self) -> Vec3 {
        self.freestream_dir() * self.v_inf
    }

    /// Dynamic pressure 0.5 rho V^2.
    pub fn q(&self) -> f64 {
        0.5 * self.rho * self.v_inf * self.v_inf
    }
}

/// Numerical knobs for the solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSettings {
    /// Vortex core radius as a fraction of the longest wing span. Keeps
    /// induced velocities finite when a control point falls near a filament
    /// of another wing; small enough to leave far-field velocities intact.
    pub core_fraction: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            core_fraction: 1e-6,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.core_fraction.is_finite() && self.core_fraction >= 0.0 && self.core_fraction < 1e-2
        {
            Ok(())
        } else {
            Err(SolverError::InvalidCondition {
                field: "core_fraction",
                value: self.core_fraction,
                reason: "must lie in [0, 1e-2)",
            })
        }
    }

    /// Absolute core radius for a lattice, scaled off its longest span.
    pub fn core_radius(&self, lattice: &Lattice) -> f64 {
        let span = lattice
            .wings
            .iter()
            .map(|w| w.span)
            .fold(0.0_f64, f64::max);
        self.core_fraction * span
    }
}

/// Failures of the linear solve or of the flight-condition inputs.
#[derive(Debug, Clone, thiserror::Error)]
pub enum SolverError {
    #[error("influence matrix is singular ({label})")]
    Singular { label: String },
    #[error("influence matrix is ill-conditioned, estimate {estimate:.3e} ({label})")]
    IllConditioned { estimate: f64, label: String },
    #[error("solve residual {residual:.3e} exceeds tolerance {tolerance:.3e} ({label})")]
    ResidualTooLarge {
        residual: f64,
        tolerance: f64,
        label: String,
    },
    #[error("invalid flight condition: {field} = {value} {reason}")]
    InvalidCondition {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
}

/// Any failure while setting up or solving a case.
#[derive(Debug, thiserror::Error)]
pub enum CaseError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Loads on one wing of a solved case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WingAero {
    pub id: String,
    pub role: Role,
    /// Lift in N, perpendicular to the freestream.
    pub lift: f64,
    /// Induced drag in N along the freestream, from the near-field sum.
    pub induced_drag: f64,
    /// Pitching moment in N*m about the wing's root quarter-chord,
    /// nose-up positive.
    pub pitching_moment: f64,
    pub c_l: f64,
    pub c_d: f64,
    pub c_m: f64,
    /// Induced drag in N attributed to this wing by the far-field
    /// wake-plane integral.
    pub trefftz_drag: f64,
}

/// A solved case: the lattice, its circulations, and the per-wing loads.
#[derive(Debug, Clone)]
pub struct AeroSolution {
    pub lattice: Lattice,
    pub gamma: Vec<f64>,
    /// One-norm condition estimate of the influence matrix.
    pub condition: f64,
    pub wings: Vec<WingAero>,
    pub total_lift: f64,
    pub total_drag: f64,
    pub total_trefftz_drag: f64,
}

impl AeroSolution {
    pub fn wing(&self, id: &str) -> Option<&WingAero> {
        self.wings.iter().find(|w| w.id == id)
    }
}

/// Velocity induced at a point by every horseshoe in the lattice, weighted
/// by the given circulations. `skip_wing` excludes one wing's vortex system,
/// which is how upwash felt by a wing from the rest of the formation is
/// probed.
pub fn induced_velocity(
    point: Vec3,
    gamma: &[f64],
    lattice: &Lattice,
    core: f64,
    skip_wing: Option<usize>,
) -> Vec3 {
    let mut v = Vec3::zeros();
    for (w, wing) in lattice.wings.iter().enumerate() {
        if skip_wing == Some(w) {
            continue;
        }
        for (k, p) in lattice.wing_panels(w).iter().enumerate() {
            v += gamma[wing.panel_start + k]
                * horseshoe_velocity(point, p.qc_left, p.qc_right, lattice.wake_dir, core);
        }
    }
    v
}

/// Solve one formation case end to end.
pub fn solve_case(
    layout: &FormationLayout,
    cond: &FlightCondition,
    settings: &SolverSettings,
) -> Result<AeroSolution, CaseError> {
    cond.validate()?;
    settings.validate()?;
    let mut lattice = assemble_formation(layout)?;
    lattice.wake_dir = cond.freestream_dir();

    let system = assemble_system(&lattice, cond, settings);
    let gamma_vec = solve_circulations(&system)?;
    let gamma: Vec<f64> = gamma_vec.iter().copied().collect();
    let condition = estimate_for_report(&system);

    let core = settings.core_radius(&lattice);
    let mut wings = near_field_forces(&gamma, &lattice, cond, core);
    let trefftz = trefftz_drag(&gamma, &lattice, cond.rho, core);
    for (w, aero) in wings.iter_mut().enumerate() {
        aero.trefftz_drag = trefftz[w];
    }

    let total_lift = wings.iter().map(|w| w.lift).sum();
    let total_drag = wings.iter().map(|w| w.induced_drag).sum();
    let total_trefftz_drag = wings.iter().map(|w| w.trefftz_drag).sum();
    Ok(AeroSolution {
        lattice,
        gamma,
        condition,
        wings,
        total_lift,
        total_drag,
        total_trefftz_drag,
    })
}

/// Solve a single wing alone at the same condition; the baseline every
/// formation metric is measured against.
pub fn solve_solo(
    spec: &geometry::WingSpec,
    cond: &FlightCondition,
    settings: &SolverSettings,
) -> Result<AeroSolution, CaseError> {
    solve_case(&FormationLayout::solo(spec.clone()), cond, settings)
}

fn estimate_for_report(system: &LinearSystem) -> f64 {
    // One extra factorization per case keeps the public API simple; the
    // solve itself dominates runtime anyway.
    let lu = system.matrix.clone().lu();
    let n = system.matrix.nrows();
    let norm_a = (0..n)
        .map(|j| system.matrix.column(j).abs().sum())
        .fold(0.0_f64, f64::max);
    let mut inv_norm: f64 = 0.0;
    for k in [0, n / 2, n.saturating_sub(1)] {
        let mut e = nalgebra::DVector::zeros(n);
        e[k] = 1.0;
        if let Some(x) = lu.solve(&e) {
            inv_norm = inv_norm.max(x.abs().sum());
        }
    }
    norm_a * inv_norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::WingSpec;
    use approx::assert_relative_eq;

    #[test]
    fn default_condition_is_valid_and_unit_vectors_are_orthonormal() {
        let cond = FlightCondition::default();
        cond.validate().unwrap();
        let u = cond.freestream_dir();
        let l = cond.lift_dir();
        assert_relative_eq!(u.norm(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(l.norm(), 1.0, max_relative = 1e-15);
        assert!(u.dot(&l).abs() < 1e-15);
        assert!(u.z > 0.0 && l.x < 0.0);
    }

    #[test]
    fn out_of_range_conditions_are_rejected() {
        for cond in [
            FlightCondition {
                v_inf: 0.0,
                ..Default::default()
            },
            FlightCondition {
                rho: -1.0,
                ..Default::default()
            },
            FlightCondition {
                alpha_deg: 15.0,
                ..Default::default()
            },
            FlightCondition {
                v_inf: f64::NAN,
                ..Default::default()
            },
        ] {
            assert!(cond.validate().is_err(), "{cond:?} should be rejected");
        }
    }

    #[test]
    fn dynamic_pressure_matches_hand_value() {
        let cond = FlightCondition::default();
        assert_relative_eq!(cond.q(), 0.5 * 1.225 * 400.0, max_relative = 1e-15);
    }

    #[test]
    fn core_radius_scales_with_longest_span() {
        let mut layout = FormationLayout::solo(WingSpec::default());
        layout.wings[0].spec.n_span = 4;
        layout.wings[0].spec.n_chord = 1;
        let lattice = assemble_formation(&layout).unwrap();
        let settings = SolverSettings::default();
        assert_relative_eq!(
            settings.core_radius(&lattice),
            1e-6 * 1.6,
            max_relative = 1e-12
        );
    }

    #[test]
    fn solo_case_solves_and_balances_totals() {
        let mut spec = WingSpec::default();
        spec.n_span = 8;
        spec.n_chord = 2;
        let solution = solve_solo(&spec, &FlightCondition::default(), &SolverSettings::default())
            .unwrap();
        assert_eq!(solution.wings.len(), 1);
        assert_eq!(solution.gamma.len(), 16);
        assert!(solution.total_lift > 0.0);
        assert!(solution.total_drag > 0.0);
        assert_relative_eq!(
            solution.total_lift,
            solution.wings[0].lift,
            max_relative = 1e-15
        );
        assert!(solution.condition.is_finite() && solution.condition >= 1.0);
    }

    #[test]
    fn invalid_settings_are_rejected() {
        let settings = SolverSettings { core_fraction: 0.5 };
        let err = solve_solo(
            &WingSpec::default(),
            &FlightCondition::default(),
            &settings,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            CaseError::Solver(SolverError::InvalidCondition { .. })
        ));
    }
}
