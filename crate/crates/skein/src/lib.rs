//! Vortex-lattice study of induced drag and power savings in formation flight.
//!
//! The crate models each wing as a thin cambered surface carrying horseshoe
//! vortices, solves the no-penetration condition for the whole formation at
//! once, and reports per-wing forces, force ratios against the same wing flown
//! alone, and the drag/power savings of trailing wings. On top of the solver
//! sit parameter sweeps (leader incidence, dihedral, aspect ratio, taper),
//! lateral/vertical spacing optimization, and a wake-stagger diagnostic.
//!
//! Everything is deterministic: identical inputs produce identical bytes in
//! every artifact, regardless of how often or where a run is repeated.

pub mod analysis;
pub mod artifacts;
pub mod cli;
pub mod config;
pub mod geometry;
pub mod solver;
pub mod spacing;
pub mod sweeps;

/// 3-component column vector used for all positions and velocities (meters,
/// meters per second). Free vectors and points are not distinguished.
pub type Vec3 = nalgebra::Vector3<f64>;
