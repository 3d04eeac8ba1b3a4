//! Placement of wing surfaces into a formation and assembly of the panel
//! lattice, including the surface-crossing check.

use super::{build_wing, FormationLayout, GeometryError, Lattice, Panel, Station, WingLattice};
use crate::Vec3;

/// Place every wing of the layout and build the combined panel lattice.
///
/// The leader's root quarter-chord defines the origin. A trailing wing is
/// translated by its offset triple, all measured on the flat planform:
/// streamwise from the leader's root trailing edge to the wing's root
/// leading edge, laterally so the facing planform tips are separated by the
/// tip spacing (negative overlaps them), and vertically between root
/// sections. Wake legs initially point streamwise (+x); the solver aligns
/// them with the freestream before assembling the influence matrix.
pub fn assemble_formation(layout: &FormationLayout) -> Result<Lattice, GeometryError> {
    layout.validate()?;
    let leader_spec = &layout.leader().spec;
    let lead_half_span = leader_spec.span / 2.0;
    let lead_te = 0.75 * leader_spec.root_chord;

    let mut panels = Vec::new();
    let mut wings = Vec::new();
    for wing in &layout.wings {
        let surface = build_wing(&wing.spec)?;
        let shift = match &wing.station {
            Station::Lead => Vec3::zeros(),
            Station::Trail { side, offset } => Vec3::new(
                lead_te + offset.streamwise + 0.25 * wing.spec.root_chord,
                side.sign() * (lead_half_span + offset.wing_tip_spacing + wing.spec.span / 2.0),
                offset.vertical,
            ),
        };

        let n_span = surface.n_span();
        let n_chord = surface.n_chord();
        // Vortex system and control points live on the chord plane. Camber
        // enters only through the control-point normal, evaluated
        // analytically at the control point's chord fraction (the usual
        // thin-surface transfer; sampling the slope at the collocation
        // point is what makes quarter/three-quarter placement accurate).
        // The spanwise surface tilt a tapered planform gives the scaled
        // camber line is second order and neglected.
        let at = |i: usize, j: usize| surface.vortex_point(i, j) + shift;
        let tan_di = wing.spec.dihedral_deg.to_radians().tan();
        let (sin_inc, cos_inc) = wing.spec.incidence_deg.to_radians().sin_cos();

        let panel_start = panels.len();
        for i in 0..n_chord {
            let f_control = (i as f64 + 0.75) / n_chord as f64;
            let slope = super::camber_slope(f_control, wing.spec.camber_m, wing.spec.camber_p)?;
            for j in 0..n_span {
                let fore_left = at(i, j);
                let fore_right = at(i, j + 1);
                let aft_right = at(i + 1, j + 1);
                let aft_left = at(i + 1, j);
                let qc_left = fore_left + 0.25 * (aft_left - fore_left);
                let qc_right = fore_right + 0.25 * (aft_right - fore_right);
                let left_tq = fore_left + 0.75 * (aft_left - fore_left);
                let right_tq = fore_right + 0.75 * (aft_right - fore_right);
                // Surface gradient in the dihedraled frame is (slope, |dy|
                // shear), pitched by incidence; sections stay vertical under
                // the dihedral convention, hence the tangent term.
                let y_mid = 0.5 * (surface.stations[j] + surface.stations[j + 1]);
                let shear = y_mid.signum() * tan_di;
                let n_plane = Vec3::new(-slope, -shear, 1.0);
                let normal = Vec3::new(
                    n_plane.x * cos_inc + n_plane.z * sin_inc,
                    n_plane.y,
                    -n_plane.x * sin_inc + n_plane.z * cos_inc,
                )
                .normalize();
                panels.push(Panel {
                    corners: [fore_left, fore_right, aft_right, aft_left],
                    qc_left,
                    qc_right,
                    control: (left_tq + right_tq) / 2.0,
                    normal,
                    wing: wings.len(),
                    chord_idx: i,
                    span_idx: j,
                });
            }
        }

        let te_points = (0..=n_span).map(|j| at(n_chord, j)).collect();
        let mid = |a: Vec3, b: Vec3| (a + b) / 2.0;
        let qc_points = (0..n_span)
            .map(|j| {
                mid(
                    surface.section_point(j, 0.25) + shift,
                    surface.section_point(j + 1, 0.25) + shift,
                )
            })
            .collect();
        let tq_points = (0..n_span)
            .map(|j| {
                mid(
                    surface.section_point(j, 0.75) + shift,
                    surface.section_point(j + 1, 0.75) + shift,
                )
            })
            .collect();
        let strip_widths = (0..n_span)
            .map(|j| surface.stations[j + 1] - surface.stations[j])
            .collect();
        let strip_chords = (0..n_span)
            .map(|j| (surface.chords[j] + surface.chords[j + 1]) / 2.0)
            .collect();

        wings.push(WingLattice {
            id: wing.id.clone(),
            role: wing.role(),
            panel_start,
            n_span,
            n_chord,
            span: wing.spec.span,
            area: surface.area,
            mean_chord: surface.area / wing.spec.span,
            root_qc: shift,
            te_points,
            qc_points,
            tq_points,
            strip_widths,
            strip_chords,
        });
    }

    let lattice = Lattice {
        panels,
        wings,
        wake_dir: Vec3::new(1.0, 0.0, 0.0),
    };
    check_no_intersections(&lattice)?;
    Ok(lattice)
}

/// Reject formations whose vortex sheets cross, which is both a physical
/// overlap and a singular influence system. Each pair is prefiltered by
/// bounding box, then every grid edge of one wing is tested against the
/// panel triangles of the other. Exactly coincident surfaces are caught by
/// a panel-center proximity guard.
fn check_no_intersections(lattice: &Lattice) -> Result<(), GeometryError> {
    for a in 0..lattice.wings.len() {
        for b in a + 1..lattice.wings.len() {
            if !boxes_overlap(lattice, a, b) {
                continue;
            }
            if wings_cross(lattice, a, b) || wings_cross(lattice, b, a) {
                return Err(GeometryError::Intersecting {
                    a: lattice.wings[a].id.clone(),
                    b: lattice.wings[b].id.clone(),
                });
            }
        }
    }
    Ok(())
}

fn bounds(lattice: &Lattice, w: usize) -> (Vec3, Vec3) {
    let mut lo = Vec3::repeat(f64::INFINITY);
    let mut hi = Vec3::repeat(f64::NEG_INFINITY);
    for panel in lattice.wing_panels(w) {
        for c in &panel.corners {
            lo = lo.inf(c);
            hi = hi.sup(c);
        }
    }
    (lo, hi)
}

fn boxes_overlap(lattice: &Lattice, a: usize, b: usize) -> bool {
    let (alo, ahi) = bounds(lattice, a);
    let (blo, bhi) = bounds(lattice, b);
    const MARGIN: f64 = 1e-9;
    (0..3).all(|k| alo[k] <= bhi[k] + MARGIN && blo[k] <= ahi[k] + MARGIN)
}

/// Do any edges of wing `a` pierce panels of wing `b`?
fn wings_cross(lattice: &Lattice, a: usize, b: usize) -> bool {
    let mut edges: Vec<(Vec3, Vec3)> = Vec::new();
    for panel in lattice.wing_panels(a) {
        let [fl, fr, ar, al] = panel.corners;
        // Left and fore edge of each panel; right/aft edges are covered by
        // the neighbor or added below for the boundary rows.
        edges.push((fl, al));
        edges.push((fl, fr));
        if panel.span_idx == lattice.wings[a].n_span - 1 {
            edges.push((fr, ar));
        }
        if panel.chord_idx == lattice.wings[a].n_chord - 1 {
            edges.push((al, ar));
        }
    }
    for panel in lattice.wing_panels(b) {
        let [fl, fr, ar, al] = panel.corners;
        for (p, q) in &edges {
            if segment_hits_triangle(*p, *q, fl, fr, ar)
                || segment_hits_triangle(*p, *q, fl, ar, al)
            {
                return true;
            }
        }
        // Coplanar-overlap guard: sheets lying in a common plane cross no
        // triangles, so catch a panel center or control point of `a`
        // sitting inside a panel of `b`. Centers of congruent panels land
        // on the quad diagonal, which the strict test excludes, so the
        // off-diagonal control point covers exact coincidence. Touching
        // along tips or edges stays allowed.
        for pa in lattice.wing_panels(a) {
            let center_a: Vec3 = pa.corners.iter().sum::<Vec3>() / 4.0;
            if point_inside_panel(center_a, &panel.corners)
                || point_inside_panel(pa.control, &panel.corners)
            {
                return true;
            }
        }
    }
    false
}

/// Is `p` on the panel's plane (to 1e-9 m) and strictly inside its quad?
fn point_inside_panel(p: Vec3, corners: &[Vec3; 4]) -> bool {
    let [fl, fr, ar, al] = *corners;
    let normal = (ar - fl).cross(&(fr - al));
    let n2 = normal.norm();
    if n2 < 1e-18 {
        return false; // collapsed panel
    }
    let n = normal / n2;
    if (p - fl).dot(&n).abs() > 1e-9 {
        return false;
    }
    inside_triangle(p, fl, fr, ar) || inside_triangle(p, fl, ar, al)
}

/// Strictly interior barycentric test with a small margin, so points on a
/// shared boundary do not count as inside.
fn inside_triangle(p: Vec3, v0: Vec3, v1: Vec3, v2: Vec3) -> bool {
    let e1 = v1 - v0;
    let e2 = v2 - v0;
    let d = p - v0;
    let a = e1.dot(&e1);
    let b = e1.dot(&e2);
    let c = e2.dot(&e2);
    let det = a * c - b * b;
    if det.abs() < 1e-18 {
        return false;
    }
    let u = (c * d.dot(&e1) - b * d.dot(&e2)) / det;
    let v = (a * d.dot(&e2) - b * d.dot(&e1)) / det;
    let margin = 1e-7;
    u > margin && v > margin && u + v < 1.0 - margin
}

/// Segment-triangle intersection, strict interior hits only, so surfaces
/// that merely touch along an edge are not reported as crossing.
fn segment_hits_triangle(p: Vec3, q: Vec3, v0: Vec3, v1: Vec3, v2: Vec3) -> bool {
    let dir = q - p;
    let e1 = v1 - v0;
    let e2 = v2 - v0;
    let h = dir.cross(&e2);
    let det = e1.dot(&h);
    if det.abs() < 1e-14 {
        return false; // parallel to the triangle plane
    }
    let inv = 1.0 / det;
    let s = p - v0;
    let u = inv * s.dot(&h);
    if !(0.0..=1.0).contains(&u) {
        return false;
    }
    let qv = s.cross(&e1);
    let v = inv * dir.dot(&qv);
    if v < 0.0 || u + v > 1.0 {
        return false;
    }
    let t = inv * e2.dot(&qv);
    t > 1e-9 && t < 1.0 - 1e-9
}
