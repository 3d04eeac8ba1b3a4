//! Panel lattice assembled from placed wing surfaces: the direct input to
//! the influence-matrix solver.

use super::Role;
use crate::Vec3;

/// One vortex panel. The bound vortex lies across the panel quarter-chord,
/// the control point at the panel three-quarter chord on the panel midline,
/// and two trailing legs leave the bound-vortex endpoints along the wake
/// direction.
#[derive(Debug, Clone)]
pub struct Panel {
    /// Corners in order fore-left, fore-right, aft-right, aft-left.
    pub corners: [Vec3; 4],
    /// Left end of the bound vortex segment.
    pub qc_left: Vec3,
    /// Right end of the bound vortex segment.
    pub qc_right: Vec3,
    /// Control point where the no-penetration condition is enforced.
    pub control: Vec3,
    /// Unit surface normal, oriented toward the suction side (+z for an
    /// upright wing). Camber and incidence are folded into this vector.
    pub normal: Vec3,
    /// Index into [`Lattice::wings`].
    pub wing: usize,
    pub chord_idx: usize,
    pub span_idx: usize,
}

impl Panel {
    /// Midpoint of the bound vortex, where forces are evaluated.
    pub fn bound_mid(&self) -> Vec3 {
        (self.qc_left + self.qc_right) / 2.0
    }
}

/// Per-wing bookkeeping within the assembled lattice.
#[derive(Debug, Clone)]
pub struct WingLattice {
    pub id: String,
    pub role: Role,
    /// Index of this wing's first panel in [`Lattice::panels`]; the wing
    /// owns `n_span * n_chord` consecutive panels, chord row major.
    pub panel_start: usize,
    pub n_span: usize,
    pub n_chord: usize,
    pub span: f64,
    /// Planform area used as the reference for this wing's coefficients.
    pub area: f64,
    pub mean_chord: f64,
    /// Placed root quarter-chord point: moment reference, nose-up positive
    /// about the spanwise axis through it.
    pub root_qc: Vec3,
    /// Trailing-edge grid points (n_span + 1), the anchors the wake sheet
    /// is attached to in the far-field drag evaluation.
    pub te_points: Vec<Vec3>,
    /// Quarter-chord point of each spanwise strip at its mid-span section.
    pub qc_points: Vec<Vec3>,
    /// Three-quarter-chord point of each strip at its mid-span section.
    pub tq_points: Vec<Vec3>,
    /// Planform strip widths (n_span).
    pub strip_widths: Vec<f64>,
    /// Mean planform chord of each strip (n_span).
    pub strip_chords: Vec<f64>,
}

impl WingLattice {
    pub fn panel_count(&self) -> usize {
        self.n_span * self.n_chord
    }

    /// Flat panel index for chord row `i`, strip `j`.
    pub fn panel_index(&self, i: usize, j: usize) -> usize {
        self.panel_start + i * self.n_span + j
    }
}

/// The assembled formation: every panel of every wing plus the direction
/// trailing vorticity is carried away in.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub panels: Vec<Panel>,
    pub wings: Vec<WingLattice>,
    /// Unit vector the semi-infinite wake legs follow. Assembly initializes
    /// it streamwise (+x); the solver points it along the freestream of the
    /// flight condition being solved.
    pub wake_dir: Vec3,
}

impl Lattice {
    pub fn panel_count(&self) -> usize {
        self.panels.len()
    }

    /// Panels belonging to wing `w`.
    pub fn wing_panels(&self, w: usize) -> &[Panel] {
        let wing = &self.wings[w];
        &self.panels[wing.panel_start..wing.panel_start + wing.panel_count()]
    }

    /// Total circulation of strip `j` of wing `w`: the sum over its chord
    /// column, equal to the circulation around that wing section.
    pub fn strip_circulation(&self, gamma: &[f64], w: usize, j: usize) -> f64 {
        let wing = &self.wings[w];
        (0..wing.n_chord).map(|i| gamma[wing.panel_index(i, j)]).sum()
    }

    /// One-line description used in solver errors.
    pub fn describe(&self) -> String {
        format!("{} wings, {} panels", self.wings.len(), self.panels.len())
    }
}
