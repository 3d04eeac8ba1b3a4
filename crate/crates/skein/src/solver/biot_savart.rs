//! Induced-velocity kernels for straight vortex filaments.
//!
//! Both kernels return the velocity per unit circulation (multiply by the
//! filament strength). The 1/distance singularity is smoothed with a finite
//! core radius: the kernel's 1/d^2 factor becomes 1/(d^2 + core^2), which
//! leaves far-field values untouched and drives the velocity to zero on the
//! filament axis instead of blowing up.

use crate::Vec3;

/// Velocity at `p` induced by a unit-strength vortex segment running from
/// `a` to `b`. Field points on the segment's axis, including beyond its
/// ends, see exactly zero velocity.
pub fn segment_velocity(p: Vec3, a: Vec3, b: Vec3, core: f64) -> Vec3 {
    let r0 = b - a;
    let len = r0.norm();
    if len < 1e-300 {
        return Vec3::zeros(); // degenerate segment carries no vorticity
    }
    let r1 = p - a;
    let r2 = p - b;
    let cr = r1.cross(&r2);
    let cr_sq = cr.norm_squared();
    if cr_sq == 0.0 {
        return Vec3::zeros(); // on the axis
    }
    let d_sq = cr_sq / (len * len);
    let cos1 = r0.dot(&r1) / (len * r1.norm());
    let cos2 = r0.dot(&r2) / (len * r2.norm());
    cr * ((cos1 - cos2) / (4.0 * std::f64::consts::PI * len * (d_sq + core * core)))
}

/// Velocity at `p` induced by a unit-strength filament that starts at `a`
/// and runs to infinity along the unit direction `u`.
pub fn semi_infinite_velocity(p: Vec3, a: Vec3, u: Vec3, core: f64) -> Vec3 {
    let r = p - a;
    let r_norm = r.norm();
    if r_norm < 1e-300 {
        return Vec3::zeros();
    }
    let cr = u.cross(&r);
    let cr_sq = cr.norm_squared();
    if cr_sq == 0.0 {
        return Vec3::zeros();
    }
    // cr_sq is d^2 since u is unit.
    cr * ((1.0 + u.dot(&r) / r_norm) / (4.0 * std::f64::consts::PI * (cr_sq + core * core)))
}

/// Velocity at `p` from a unit-strength horseshoe vortex: bound segment from
/// `qc_left` to `qc_right` plus trailing legs leaving both ends along `wake`.
/// The circuit arrives from downstream infinity on the left leg, crosses the
/// bound segment left to right, and returns to infinity on the right leg.
pub fn horseshoe_velocity(p: Vec3, qc_left: Vec3, qc_right: Vec3, wake: Vec3, core: f64) -> Vec3 {
    segment_velocity(p, qc_left, qc_right, core)
        + semi_infinite_velocity(p, qc_right, wake, core)
        - semi_infinite_velocity(p, qc_left, wake, core)
}
