//! Far-field induced drag from a wake-plane crossflow integral.

use crate::geometry::Lattice;
use crate::Vec3;
use std::f64::consts::PI;

/// Induced drag attributed to each wing by a far-wake crossflow integral.
///
/// Every horseshoe trails a pair of legs downstream from its bound-vortex
/// end points; far downstream each leg looks like a 2D point vortex in the
/// plane perpendicular to the wake direction, at the projection of its
/// anchor, with strength given by the spanwise difference of panel
/// circulations in its chord row. Each chord row therefore contributes its
/// own wake sheet, and the drag is the usual sheet integral
///
///   D = -(rho / 2) * sum G * (v(m) . n) * s
///
/// summed over all row sheets: G the row's panel circulation, m the
/// projected segment midpoint, n the in-plane sheet normal, s the projected
/// segment width, and v the crossflow induced by every trailing vortex of
/// every wing. Keeping the rows separate (rather than collapsing a chordwise
/// stack onto one line) matches the legs the near-field solve actually
/// used, which is what makes the two drag evaluations comparable. Each
/// segment's contribution is credited to the wing that carries it, so
/// mutual-interference drag lands on the wing whose wake feels it; the sum
/// over wings is the formation total.
pub fn trefftz_drag(gamma: &[f64], lattice: &Lattice, rho: f64, core: f64) -> Vec<f64> {
    let u = lattice.wake_dir.normalize();
    let project = |p: Vec3| -> Vec3 { p - u * p.dot(&u) };

    struct TrailVortex {
        pos: Vec3,
        strength: f64,
    }
    struct Strip {
        wing: usize,
        mid: Vec3,
        normal: Vec3,
        width: f64,
        g: f64,
    }

    let mut vortices: Vec<TrailVortex> = Vec::new();
    let mut strips: Vec<Strip> = Vec::new();
    for (w, wing) in lattice.wings.iter().enumerate() {
        let n_span = wing.n_span;
        for i in 0..wing.n_chord {
            let row_gamma =
                |j: usize| -> f64 { gamma[wing.panel_index(i, j)] };
            // Projected leg anchors of this row: the shared bound-vortex
            // end points, left tip to right tip.
            let mut proj = Vec::with_capacity(n_span + 1);
            proj.push(project(lattice.panels[wing.panel_index(i, 0)].qc_left));
            for j in 0..n_span {
                proj.push(project(lattice.panels[wing.panel_index(i, j)].qc_right));
            }
            for k in 0..=n_span {
                let left = if k > 0 { row_gamma(k - 1) } else { 0.0 };
                let right = if k < n_span { row_gamma(k) } else { 0.0 };
                vortices.push(TrailVortex {
                    pos: proj[k],
                    strength: left - right,
                });
            }
            for j in 0..n_span {
                let edge = proj[j + 1] - proj[j];
                let width = edge.norm();
                if width == 0.0 {
                    // Collapsed tip strip of a pointed wing carries no area.
                    continue;
                }
                let tangent = edge / width;
                strips.push(Strip {
                    wing: w,
                    mid: 0.5 * (proj[j] + proj[j + 1]),
                    normal: u.cross(&tangent),
                    width,
                    g: row_gamma(j),
                });
            }
        }
    }

    let rc2 = core * core;
    let mut drag = vec![0.0; lattice.wings.len()];
    for strip in &strips {
        let mut v = Vec3::zeros();
        for vortex in &vortices {
            let d = strip.mid - vortex.pos;
            let d2 = d.norm_squared();
            v += (vortex.strength / (2.0 * PI)) * u.cross(&d) / (d2 + rc2);
        }
        drag[strip.wing] += -(rho / 2.0) * strip.g * v.dot(&strip.normal) * strip.width;
    }
    drag
}
