//! Wing and formation geometry: planform specs, camber lines, surface grids,
//! and the panel lattice the solver works on.
//!
//! Coordinate frame: x points downstream (leading edges face -x), y spans to
//! the right, z points up. A wing's local origin is its root quarter-chord
//! point, which is also the pivot for incidence and the moment reference.

mod camber;
mod formation;
mod lattice;
mod wing;

pub use camber::{camber_height, camber_slope};
pub use formation::assemble_formation;
pub use lattice::{Lattice, Panel, WingLattice};
pub use wing::{build_wing, WingSurface};

use serde::{Deserialize, Serialize};

/// Planform and section description of a single wing.
///
/// Angles are stored in degrees as they appear in configuration files and are
/// converted once during surface construction. The camber line follows the
/// four-digit convention: `camber_m` is the maximum camber as a fraction of
/// chord, `camber_p` its chordwise position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WingSpec {
    /// Tip-to-tip span in meters, measured on the flat planform.
    pub span: f64,
    /// Root chord in meters.
    pub root_chord: f64,
    /// Tip chord divided by root chord, in [0, 1]; chord varies linearly
    /// from root to tip.
    pub taper: f64,
    /// Quarter-chord sweep in degrees, positive aft.
    pub sweep_deg: f64,
    /// Dihedral in degrees, positive tips-up, applied from the root outward
    /// on both half-wings.
    pub dihedral_deg: f64,
    /// Rigid pitch about the root quarter-chord spanwise axis in degrees,
    /// positive nose-up.
    pub incidence_deg: f64,
    /// Maximum camber as a fraction of chord (0 for a flat plate).
    pub camber_m: f64,
    /// Chordwise position of maximum camber as a fraction of chord.
    pub camber_p: f64,
    /// Spanwise panel count over the whole span; must be even and at least 4.
    pub n_span: usize,
    /// Chordwise panel count; at least 1.
    pub n_chord: usize,
}

impl Default for WingSpec {
    /// The rectangular reference wing used throughout the test cases:
    /// 1.6 m span, 0.16 m chord (aspect ratio 10), 9% camber at 40% chord.
    fn default() -> Self {
        WingSpec {
            span: 1.6,
            root_chord: 0.16,
            taper: 1.0,
            sweep_deg: 0.0,
            dihedral_deg: 0.0,
            incidence_deg: 0.0,
            camber_m: 0.09,
            camber_p: 0.4,
            n_span: 32,
            n_chord: 8,
        }
    }
}

impl WingSpec {
    /// Planform area from the linear chord distribution.
    pub fn area(&self) -> f64 {
        self.span * self.root_chord * (1.0 + self.taper) / 2.0
    }

    /// Aspect ratio `span^2 / area`.
    pub fn aspect_ratio(&self) -> f64 {
        self.span * self.span / self.area()
    }

    /// Mean chord `area / span`.
    pub fn mean_chord(&self) -> f64 {
        self.area() / self.span
    }

    /// Check every field against its admissible range. `wing` names the
    /// offender in error messages.
    pub fn validate(&self, wing: &str) -> Result<(), GeometryError> {
        let err = |field: &'static str, value: f64, reason: &'static str| {
            Err(GeometryError::InvalidField {
                wing: wing.to_string(),
                field,
                value,
                reason,
            })
        };
        if !self.span.is_finite() || self.span <= 0.0 {
            return err("span", self.span, "must be positive");
        }
        if !self.root_chord.is_finite() || self.root_chord <= 0.0 {
            return err("root_chord", self.root_chord, "must be positive");
        }
        if !self.taper.is_finite() || !(0.0..=1.0).contains(&self.taper) {
            return err("taper", self.taper, "must lie in [0, 1]");
        }
        if !self.sweep_deg.is_finite() || self.sweep_deg.abs() >= 80.0 {
            return err("sweep_deg", self.sweep_deg, "must lie in (-80, 80)");
        }
        if !self.dihedral_deg.is_finite() || self.dihedral_deg.abs() >= 90.0 {
            return err("dihedral_deg", self.dihedral_deg, "must lie in (-90, 90)");
        }
        if !self.incidence_deg.is_finite() || self.incidence_deg.abs() >= 90.0 {
            return err("incidence_deg", self.incidence_deg, "must lie in (-90, 90)");
        }
        if !self.camber_m.is_finite() || self.camber_m.abs() >= 1.0 {
            return err("camber_m", self.camber_m, "must lie in (-1, 1)");
        }
        if self.camber_m != 0.0 && (!self.camber_p.is_finite() || self.camber_p <= 0.0 || self.camber_p >= 1.0)
        {
            return err("camber_p", self.camber_p, "must lie in (0, 1) when camber is nonzero");
        }
        if self.n_span < 4 || self.n_span % 2 != 0 {
            return err("n_span", self.n_span as f64, "must be even and at least 4");
        }
        if self.n_chord < 1 {
            return err("n_chord", self.n_chord as f64, "must be at least 1");
        }
        Ok(())
    }
}

/// Which side of the leader a trailing wing sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// +1 for right, -1 for left.
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

/// Position of a trailing wing relative to the leader. All three distances
/// are measured on the flat planform, before dihedral or incidence rotations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Offset {
    /// Gap from the leader's root trailing edge to this wing's root leading
    /// edge, positive downstream, in meters.
    pub streamwise: f64,
    /// Tip-to-tip gap between the leader's near tip and this wing's near
    /// tip, in meters. Negative values overlap the tips.
    pub wing_tip_spacing: f64,
    /// Height of this wing's mid-span section above the leader's, in meters.
    pub vertical: f64,
}

/// Place in the formation: the single leader, or a trailing wing at an
/// offset on one side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Station {
    Lead,
    Trail { side: Side, offset: Offset },
}

/// Role label derived from a wing's station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Leader,
    TrailingLeft,
    TrailingRight,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::Leader => "leader",
            Role::TrailingLeft => "trailing-left",
            Role::TrailingRight => "trailing-right",
        }
    }
}

/// One wing of a formation: an id unique within the layout, the planform
/// spec, and where the wing sits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormationWing {
    pub id: String,
    pub spec: WingSpec,
    pub station: Station,
}

impl FormationWing {
    pub fn role(&self) -> Role {
        match &self.station {
            Station::Lead => Role::Leader,
            Station::Trail { side: Side::Left, .. } => Role::TrailingLeft,
            Station::Trail { side: Side::Right, .. } => Role::TrailingRight,
        }
    }
}

/// Ordered list of wings making up one formation. The leader defines the
/// origin; every trailing wing is offset from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormationLayout {
    pub wings: Vec<FormationWing>,
}

impl FormationLayout {
    /// A single wing flown alone, used for baselines.
    pub fn solo(spec: WingSpec) -> Self {
        FormationLayout {
            wings: vec![FormationWing {
                id: "solo".to_string(),
                spec,
                station: Station::Lead,
            }],
        }
    }

    /// Symmetric three-wing V: one leader and one trailing wing on each
    /// side, all sharing the same planform spec and offsets.
    pub fn vee(spec: WingSpec, offset: Offset) -> Self {
        let wing = |id: &str, station| FormationWing {
            id: id.to_string(),
            spec: spec.clone(),
            station,
        };
        FormationLayout {
            wings: vec![
                wing("leader", Station::Lead),
                wing(
                    "left",
                    Station::Trail {
                        side: Side::Left,
                        offset,
                    },
                ),
                wing(
                    "right",
                    Station::Trail {
                        side: Side::Right,
                        offset,
                    },
                ),
            ],
        }
    }

    /// Two-wing echelon: a leader and a single trailing wing. Unlike the V,
    /// deep tip overlap keeps the geometry valid because only the leader
    /// shadows the trailer.
    pub fn pair(spec: WingSpec, side: Side, offset: Offset) -> Self {
        let trail_id = match side {
            Side::Left => "left",
            Side::Right => "right",
        };
        FormationLayout {
            wings: vec![
                FormationWing {
                    id: "leader".to_string(),
                    spec: spec.clone(),
                    station: Station::Lead,
                },
                FormationWing {
                    id: trail_id.to_string(),
                    spec,
                    station: Station::Trail { side, offset },
                },
            ],
        }
    }

    pub fn leader(&self) -> &FormationWing {
        self.wings
            .iter()
            .find(|w| w.station == Station::Lead)
            .expect("validated layout has a leader")
    }

    pub fn leader_mut(&mut self) -> &mut FormationWing {
        self.wings
            .iter_mut()
            .find(|w| w.station == Station::Lead)
            .expect("validated layout has a leader")
    }

    /// Mutable access to every trailing wing's offset.
    pub fn offsets_mut(&mut self) -> impl Iterator<Item = &mut Offset> {
        self.wings.iter_mut().filter_map(|w| match &mut w.station {
            Station::Lead => None,
            Station::Trail { offset, .. } => Some(offset),
        })
    }

    /// Structural checks: at least one wing, exactly one leader, unique ids,
    /// valid specs, finite offsets.
    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.wings.is_empty() {
            return Err(GeometryError::Empty);
        }
        let leaders = self
            .wings
            .iter()
            .filter(|w| w.station == Station::Lead)
            .count();
        if leaders != 1 {
            return Err(GeometryError::LeaderCount { found: leaders });
        }
        for (i, wing) in self.wings.iter().enumerate() {
            for other in &self.wings[..i] {
                if other.id == wing.id {
                    return Err(GeometryError::DuplicateId {
                        id: wing.id.clone(),
                    });
                }
            }
            wing.spec.validate(&wing.id)?;
            if let Station::Trail { offset, .. } = &wing.station {
                for (field, value) in [
                    ("streamwise", offset.streamwise),
                    ("wing_tip_spacing", offset.wing_tip_spacing),
                    ("vertical", offset.vertical),
                ] {
                    if !value.is_finite() {
                        return Err(GeometryError::InvalidField {
                            wing: wing.id.clone(),
                            field,
                            value,
                            reason: "must be finite",
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Errors from spec validation and lattice assembly.
#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("wing '{wing}': {field} = {value} is invalid ({reason})")]
    InvalidField {
        wing: String,
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("formation has no wings")]
    Empty,
    #[error("formation must have exactly one leader, found {found}")]
    LeaderCount { found: usize },
    #[error("duplicate wing id '{id}'")]
    DuplicateId { id: String },
    #[error("wings '{a}' and '{b}' intersect")]
    Intersecting { a: String, b: String },
    #[error("chord position {x} lies outside [0, 1]")]
    ChordPosition { x: f64 },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_wing_has_aspect_ratio_ten() {
        let spec = WingSpec::default();
        assert!((spec.area() - 0.256).abs() < 1e-12);
        assert!((spec.aspect_ratio() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn tapered_area_follows_trapezoid_rule() {
        let spec = WingSpec {
            taper: 0.5,
            ..WingSpec::default()
        };
        assert!((spec.area() - 1.6 * 0.16 * 0.75).abs() < 1e-12);
    }

    #[test]
    fn validate_names_the_offending_field() {
        let spec = WingSpec {
            taper: 1.5,
            ..WingSpec::default()
        };
        let err = spec.validate("leader").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("taper"), "message was: {msg}");
        assert!(msg.contains("leader"), "message was: {msg}");
    }

    #[test]
    fn validate_rejects_odd_span_count() {
        let spec = WingSpec {
            n_span: 7,
            ..WingSpec::default()
        };
        assert!(spec.validate("w").is_err());
    }

    #[test]
    fn flat_plate_allows_degenerate_camber_position() {
        let spec = WingSpec {
            camber_m: 0.0,
            camber_p: 0.0,
            ..WingSpec::default()
        };
        assert!(spec.validate("w").is_ok());
    }

    #[test]
    fn layout_requires_exactly_one_leader() {
        let mut layout = FormationLayout::vee(WingSpec::default(), OFFSET);
        layout.wings[1].station = Station::Lead;
        match layout.validate() {
            Err(GeometryError::LeaderCount { found: 2 }) => {}
            other => panic!("expected leader-count error, got {other:?}"),
        }
    }

    #[test]
    fn layout_rejects_duplicate_ids() {
        let mut layout = FormationLayout::vee(WingSpec::default(), OFFSET);
        layout.wings[2].id = "left".to_string();
        assert!(matches!(
            layout.validate(),
            Err(GeometryError::DuplicateId { .. })
        ));
    }

    const OFFSET: Offset = Offset {
        streamwise: 0.16,
        wing_tip_spacing: 0.0,
        vertical: 0.0,
    };
}
