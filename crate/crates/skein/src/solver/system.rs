//! Influence-matrix assembly and the dense direct solve for circulations.

use super::biot_savart::horseshoe_velocity;
use super::{FlightCondition, SolverError, SolverSettings};
use crate::geometry::Lattice;
use nalgebra::{DMatrix, DVector};

/// Residual bound the returned circulations must satisfy, relative to the
/// max-norm of the right-hand side.
pub const RESIDUAL_REL_TOL: f64 = 1e-10;

/// Condition-number estimate beyond which the solve refuses to proceed.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Dense linear system `A gamma = rhs` for one lattice and flight condition.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub matrix: DMatrix<f64>,
    pub rhs: DVector<f64>,
    /// Lattice description quoted in solver errors.
    pub label: String,
}

/// Assemble the influence matrix and right-hand side.
///
/// Entry (i, j) is the normal velocity at control point i induced by
/// horseshoe j at unit circulation, with wake legs along the lattice's wake
/// direction; the right-hand side cancels the freestream through each
/// panel's normal. Assembly is dense and O(n^2).
pub fn assemble_system(
    lattice: &Lattice,
    cond: &FlightCondition,
    settings: &SolverSettings,
) -> LinearSystem {
    let n = lattice.panel_count();
    let core = settings.core_radius(lattice);
    let v_inf = cond.velocity();
    let wake = lattice.wake_dir;
    let mut matrix = DMatrix::zeros(n, n);
    for i in 0..n {
        let cp = lattice.panels[i].control;
        let normal = lattice.panels[i].normal;
        let mut row = matrix.row_mut(i);
        for j in 0..n {
            let p = &lattice.panels[j];
            row[j] = horseshoe_velocity(cp, p.qc_left, p.qc_right, wake, core).dot(&normal);
        }
    }
    let rhs = DVector::from_fn(n, |i, _| -v_inf.dot(&lattice.panels[i].normal));
    LinearSystem {
        matrix,
        rhs,
        label: lattice.describe(),
    }
}

/// Solve for the circulation vector by LU decomposition with partial
/// pivoting, followed by iterative refinement until the residual meets
/// [`RESIDUAL_REL_TOL`]. A singular matrix, an ill-conditioned matrix, or a
/// residual that refuses to shrink are all reported as errors rather than
/// returned as numbers.
pub fn solve_circulations(system: &LinearSystem) -> Result<DVector<f64>, SolverError> {
    let singular = || SolverError::Singular {
        label: system.label.clone(),
    };
    let lu = system.matrix.clone().lu();
    let mut gamma = lu.solve(&system.rhs).ok_or_else(singular)?;
    if gamma.iter().any(|g| !g.is_finite()) {
        return Err(singular());
    }

    let estimate = condition_estimate(&system.matrix, &lu);
    if estimate > CONDITION_LIMIT {
        return Err(SolverError::IllConditioned {
            estimate,
            label: system.label.clone(),
        });
    }

    let b_scale = system.rhs.amax();
    let tolerance = RESIDUAL_REL_TOL * b_scale;
    let mut residual = (&system.rhs - &system.matrix * &gamma).amax();
    for _ in 0..2 {
        if residual <= tolerance {
            break;
        }
        let r = &system.rhs - &system.matrix * &gamma;
        let correction = lu.solve(&r).ok_or_else(singular)?;
        gamma += correction;
        residual = (&system.rhs - &system.matrix * &gamma).amax();
    }
    if residual > tolerance {
        return Err(SolverError::ResidualTooLarge {
            residual,
            tolerance,
            label: system.label.clone(),
        });
    }
    Ok(gamma)
}

/// Cheap one-norm condition estimate: ||A||_1 times a lower bound on
/// ||A^-1||_1 probed with a few solves, cross-checked against the pivot
/// growth of the factorization. Deliberately conservative; it exists to
/// catch degenerate lattices, not to be sharp.
fn condition_estimate(matrix: &DMatrix<f64>, lu: &nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>) -> f64 {
    let n = matrix.nrows();
    let norm_a = (0..n)
        .map(|j| matrix.column(j).abs().sum())
        .fold(0.0_f64, f64::max);

    let mut inv_norm: f64 = 0.0;
    let mut probe = |v: DVector<f64>| {
        if let Some(x) = lu.solve(&v) {
            let vn = v.abs().sum();
            if vn > 0.0 {
                inv_norm = inv_norm.max(x.abs().sum() / vn);
            }
        }
    };
    for k in [0, n / 2, n - 1] {
        let mut e = DVector::zeros(n);
        e[k] = 1.0;
        probe(e);
    }
    probe(DVector::from_element(n, 1.0));
    probe(DVector::from_fn(n, |i, _| if i % 2 == 0 { 1.0 } else { -1.0 }));

    let diag = lu.u().diagonal();
    let max_pivot = diag.abs().max();
    let min_pivot = diag.abs().min();
    let pivot_ratio = if min_pivot > 0.0 {
        max_pivot / min_pivot
    } else {
        f64::INFINITY
    };

    (norm_a * inv_norm).max(pivot_ratio)
}
