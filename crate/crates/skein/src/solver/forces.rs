//! Near-field loads: Kutta-Joukowski force on each bound vortex segment.

use super::{induced_velocity, FlightCondition, WingAero};
use crate::geometry::Lattice;

/// Per-wing lift, induced drag, and pitching moment from the near-field
/// Kutta-Joukowski sum.
///
/// Each bound segment carries a force rho * Gamma * (V_local x l), where
/// V_local is the freestream plus the velocity induced at the segment
/// midpoint by every horseshoe in the lattice (a segment's own bound vortex
/// induces nothing at its own midpoint). Lift and drag are the wind-axis
/// components; the pitching moment is taken about the wing's root
/// quarter-chord, nose-up positive. The far-field drag is filled in later by
/// the wake-plane integral, so it is returned here as zero.
pub fn near_field_forces(
    gamma: &[f64],
    lattice: &Lattice,
    cond: &FlightCondition,
    core: f64,
) -> Vec<WingAero> {
    let v_free = cond.velocity();
    let drag_dir = cond.freestream_dir();
    let lift_dir = cond.lift_dir();
    let q = cond.q();

    let mut out = Vec::with_capacity(lattice.wings.len());
    for (w, wing) in lattice.wings.iter().enumerate() {
        let mut lift = 0.0;
        let mut drag = 0.0;
        let mut moment = 0.0;
        for (k, p) in lattice.wing_panels(w).iter().enumerate() {
            let idx = wing.panel_start + k;
            let mid = p.bound_mid();
            let v_local = v_free + induced_velocity(mid, gamma, lattice, core, None);
            let bound = p.qc_right - p.qc_left;
            let force = cond.rho * gamma[idx] * v_local.cross(&bound);
            lift += force.dot(&lift_dir);
            drag += force.dot(&drag_dir);
            moment += (mid - wing.root_qc).cross(&force).y;
        }
        let ref_force = q * wing.area;
        let ref_moment = ref_force * wing.mean_chord;
        out.push(WingAero {
            id: wing.id.clone(),
            role: wing.role,
            lift,
            induced_drag: drag,
            pitching_moment: moment,
            c_l: lift / ref_force,
            c_d: drag / ref_force,
            c_m: moment / ref_moment,
            trefftz_drag: 0.0,
        });
    }
    out
}
