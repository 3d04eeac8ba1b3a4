//! Construction of a single wing's surface grid from its planform spec.

use super::{camber_height, GeometryError, WingSpec};
use crate::Vec3;

/// Structured grids over one wing, in the wing's own frame: origin at the
/// root quarter-chord, x toward the trailing edge, y toward the right tip,
/// z up.
///
/// Two congruent grids are kept. `grid` follows the cambered mean surface
/// and provides panel normals and clearance checks. `vortex_grid` is the
/// same planform with camber flattened out: the vortex lattice lives on the
/// pitched chord plane while camber enters only through the surface normals,
/// the standard thin-surface boundary-condition transfer. Both grids have
/// `n_chord + 1` rows and `n_span + 1` columns; adjacent panels share grid
/// points exactly, so the lattice built from them is watertight.
#[derive(Debug, Clone)]
pub struct WingSurface {
    pub spec: WingSpec,
    /// Cambered mean-surface points, row-major: index
    /// `i * (n_span + 1) + j` for chord row `i` and span station `j`
    /// (station 0 is the left tip).
    pub grid: Vec<Vec3>,
    /// Chord-plane points the vortex system is laid on, same indexing.
    pub vortex_grid: Vec<Vec3>,
    /// Spanwise stations on the flat planform, before dihedral.
    pub stations: Vec<f64>,
    /// Local chord at each station.
    pub chords: Vec<f64>,
    /// Planform area integrated from the chord distribution.
    pub area: f64,
}

impl WingSurface {
    pub fn n_span(&self) -> usize {
        self.spec.n_span
    }

    pub fn n_chord(&self) -> usize {
        self.spec.n_chord
    }

    /// Cambered mean-surface point.
    pub fn point(&self, chord_row: usize, station: usize) -> Vec3 {
        self.grid[chord_row * (self.spec.n_span + 1) + station]
    }

    /// Chord-plane point carrying the vortex system.
    pub fn vortex_point(&self, chord_row: usize, station: usize) -> Vec3 {
        self.vortex_grid[chord_row * (self.spec.n_span + 1) + station]
    }

    /// Chord-plane point at chord fraction `f` of station `j`, interpolated
    /// linearly between grid rows.
    pub fn section_point(&self, station: usize, f: f64) -> Vec3 {
        let fi = f * self.spec.n_chord as f64;
        let i0 = (fi.floor() as usize).min(self.spec.n_chord - 1);
        let t = fi - i0 as f64;
        self.vortex_point(i0, station) * (1.0 - t) + self.vortex_point(i0 + 1, station) * t
    }
}

/// Build the grids for one wing.
///
/// Spanwise stations are cosine-spaced (clustered at the tips, where the
/// load gradient is steepest) and mirrored bitwise about the centerline so
/// a symmetric wing is symmetric to the last ulp. Chordwise rows are spaced
/// uniformly along the chord.
///
/// Transform order: planform with sweep and camber, then dihedral, then
/// incidence. Dihedral rotates each half-wing's station line about the root
/// chord axis while sections stay in vertical planes (the usual convention
/// for surface generators; it keeps the cambered root section in one piece).
/// Incidence then pitches the whole wing rigidly about the root
/// quarter-chord spanwise axis. No small-angle shortcuts anywhere.
pub fn build_wing(spec: &WingSpec) -> Result<WingSurface, GeometryError> {
    spec.validate("wing")?;
    let n_span = spec.n_span;
    let n_chord = spec.n_chord;
    let half = spec.span / 2.0;

    // Cosine stations, mirrored so station j and n-j are exact negatives.
    let mut stations = vec![0.0; n_span + 1];
    for j in 0..=n_span / 2 {
        let theta = std::f64::consts::PI * j as f64 / n_span as f64;
        stations[j] = -half * theta.cos();
        stations[n_span - j] = -stations[j];
    }
    stations[n_span / 2] = 0.0;

    let chords: Vec<f64> = stations
        .iter()
        .map(|y| spec.root_chord * (1.0 + (spec.taper - 1.0) * (y.abs() / half)))
        .collect();

    // Trapezoid rule is exact for the piecewise-linear chord distribution
    // because y = 0 is a station.
    let area: f64 = (0..n_span)
        .map(|j| (stations[j + 1] - stations[j]) * (chords[j] + chords[j + 1]) / 2.0)
        .sum();

    let tan_sweep = spec.sweep_deg.to_radians().tan();
    let (sin_di, cos_di) = spec.dihedral_deg.to_radians().sin_cos();
    let (sin_inc, cos_inc) = spec.incidence_deg.to_radians().sin_cos();
    let z_qc = camber_height(0.25, spec.camber_m, spec.camber_p)?;

    let mut grid = Vec::with_capacity((n_chord + 1) * (n_span + 1));
    let mut vortex_grid = Vec::with_capacity((n_chord + 1) * (n_span + 1));
    for i in 0..=n_chord {
        let f = i as f64 / n_chord as f64;
        // Camber height referenced so the quarter-chord line sits on the
        // incidence pivot axis.
        let z_section = camber_height(f, spec.camber_m, spec.camber_p)? - z_qc;
        for j in 0..=n_span {
            let y = stations[j];
            let c = chords[j];
            let x = y.abs() * tan_sweep + (f - 0.25) * c;
            let place = |z: f64| {
                // Dihedral: station anchors rotate about the root chord axis.
                let yd = y * cos_di;
                let zd = z + y.abs() * sin_di;
                // Incidence: rigid pitch about the y axis through the origin.
                let xi = x * cos_inc + zd * sin_inc;
                let zi = -x * sin_inc + zd * cos_inc;
                Vec3::new(xi, yd, zi)
            };
            grid.push(place(c * z_section));
            vortex_grid.push(place(0.0));
        }
    }

    Ok(WingSurface {
        spec: spec.clone(),
        grid,
        vortex_grid,
        stations,
        chords,
        area,
    })
}
