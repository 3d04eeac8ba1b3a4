//! Separation studies: golden-section search for the spacing that maximizes
//! induced power saving, the closed-form tip-overlap optimum, and the
//! streamwise-independence check on total induced drag.

use crate::analysis::{
    formation_ratios, solo_baselines, AnalysisError, SoloCase, UpwashLocus,
};
use crate::geometry::{FormationLayout, Station};
use crate::solver::{
    solve_case, trefftz_drag, CaseError, FlightCondition, SolverSettings,
};
use crate::Vec3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The golden ratio, the interval contraction rate of the search.
const PHI: f64 = 1.618033988749895;

#[derive(Debug, Error)]
pub enum SpacingError {
    #[error("invalid study: {reason}")]
    InvalidStudy { reason: String },
    #[error("span {value} must be positive")]
    NonPositiveSpan { value: f64 },
    #[error("probe at {value} failed: {source}")]
    Probe {
        value: f64,
        #[source]
        source: CaseError,
    },
    #[error("metrics at {value} failed: {source}")]
    Metrics {
        value: f64,
        #[source]
        source: AnalysisError,
    },
    #[error("objective needs at least one trailing wing")]
    NoTrailingWing,
}

/// Which separation distance the study varies; applied to every trailing
/// wing in the template.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpacingAxis {
    WingTipSpacing,
    Vertical,
    Streamwise,
}

impl SpacingAxis {
    pub fn label(self) -> &'static str {
        match self {
            SpacingAxis::WingTipSpacing => "wing-tip-spacing",
            SpacingAxis::Vertical => "vertical",
            SpacingAxis::Streamwise => "streamwise",
        }
    }

    fn apply(self, base: &FormationLayout, value: f64) -> FormationLayout {
        let mut layout = base.clone();
        for offset in layout.offsets_mut() {
            match self {
                SpacingAxis::WingTipSpacing => offset.wing_tip_spacing = value,
                SpacingAxis::Vertical => offset.vertical = value,
                SpacingAxis::Streamwise => offset.streamwise = value,
            }
        }
        layout
    }
}

/// What the optimizer maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpacingObjective {
    /// Mean fractional power reduction of the trailing wings.
    #[default]
    AverageTrailing,
    /// Fractional power reduction of the whole formation, leader included.
    FormationTotal,
}

/// One spacing search: a layout template, the axis to vary, and the search
/// bracket.
#[derive(Debug, Clone, Serialize)]
pub struct SpacingStudy {
    pub layout: FormationLayout,
    pub axis: SpacingAxis,
    pub bracket: (f64, f64),
    /// Absolute tolerance (m) on the returned optimum.
    pub tolerance: f64,
    #[serde(default)]
    pub objective: SpacingObjective,
    pub condition: FlightCondition,
    pub settings: SolverSettings,
    #[serde(default)]
    pub locus: UpwashLocus,
    /// Points in the unimodality pre-scan, endpoints included.
    pub prescan_points: usize,
}

impl SpacingStudy {
    pub fn validate(&self) -> Result<(), SpacingError> {
        let fail = |reason: String| Err(SpacingError::InvalidStudy { reason });
        let (lo, hi) = self.bracket;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return fail(format!("bracket [{lo}, {hi}] needs lo < hi"));
        }
        if !(self.tolerance > 0.0) {
            return fail(format!("tolerance {} must be positive", self.tolerance));
        }
        if self.prescan_points < 3 {
            return fail(format!(
                "pre-scan needs at least 3 points, got {}",
                self.prescan_points
            ));
        }
        let trailing = self
            .layout
            .wings
            .iter()
            .any(|w| w.station != Station::Lead);
        if !trailing && self.objective == SpacingObjective::AverageTrailing {
            return Err(SpacingError::NoTrailingWing);
        }
        Ok(())
    }
}

/// One objective evaluation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TracePoint {
    pub value: f64,
    pub objective: f64,
}

/// Result of a spacing search.
#[derive(Debug, Clone, Serialize)]
pub struct SpacingOutcome {
    /// Axis value of the best point found.
    pub optimum: f64,
    /// Objective there (fractional power reduction).
    pub objective: f64,
    /// True when the pre-scan saw more than one interior peak; the optimum
    /// is then the best pre-scan point, not a golden-section refinement.
    pub multimodal: bool,
    /// Total solver evaluations, pre-scan included.
    pub evaluations: usize,
    /// Every evaluation in execution order.
    pub trace: Vec<TracePoint>,
}

/// Result of one golden-section run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenResult {
    pub argmax: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section maximization on [lo, hi] down to interval width `tol`.
///
/// The caller guarantees lo < hi and tol > 0. Uses at most
/// `ceil(log((hi-lo)/tol) / log(phi)) + 2` evaluations of `f`. Degenerate
/// brackets no wider than `tol` are settled by evaluating both ends.
pub fn golden_section_max<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<GoldenResult, E> {
    if hi - lo <= tol {
        let f_lo = f(lo)?;
        let f_hi = f(hi)?;
        let (argmax, value) = if f_lo >= f_hi { (lo, f_lo) } else { (hi, f_hi) };
        return Ok(GoldenResult {
            argmax,
            value,
            evaluations: 2,
        });
    }
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - (b - a) / PHI;
    let mut x2 = a + (b - a) / PHI;
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evaluations = 2;
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - (b - a) / PHI;
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + (b - a) / PHI;
            f2 = f(x2)?;
        }
        evaluations += 1;
    }
    let (argmax, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok(GoldenResult {
        argmax,
        value,
        evaluations,
    })
}

/// Tip-overlap distance that the closed-form rule predicts to maximize the
/// induced power saving: `0.5 * span * (1 - 0.89)`.
///
/// Both sign conventions of the same distance: `overlap_magnitude` is the
/// positive overlap depth; `gap` is the signed tip spacing (negative,
/// since the optimum overlaps). Print both to avoid silent misreading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HummelOptimum {
    pub overlap_magnitude: f64,
    pub gap: f64,
}

pub fn hummel_optimal_wts(span: f64) -> Result<HummelOptimum, SpacingError> {
    if !(span > 0.0) {
        return Err(SpacingError::NonPositiveSpan { value: span });
    }
    let overlap = 0.5 * span * (1.0 - 0.89);
    Ok(HummelOptimum {
        overlap_magnitude: overlap,
        gap: -overlap,
    })
}

/// Search the study's bracket for the separation with the best objective.
///
/// A coarse pre-scan first checks that the objective rises to a single
/// peak; if it does, golden-section refines the sub-bracket around that
/// peak to the study tolerance. A multi-peaked pre-scan short-circuits to
/// the best grid point with the `multimodal` flag set. The trace records
/// every evaluation. A degenerate bracket no wider than the tolerance is
/// settled by its two endpoints alone.
pub fn optimize_spacing(study: &SpacingStudy) -> Result<SpacingOutcome, SpacingError> {
    study.validate()?;
    let baselines = solo_baselines(&study.layout, &study.condition, &study.settings)
        .map_err(|source| SpacingError::Probe {
            value: study.bracket.0,
            source,
        })?;
    let mut trace: Vec<TracePoint> = Vec::new();
    let eval = |value: f64, trace: &mut Vec<TracePoint>| -> Result<f64, SpacingError> {
        let objective =
            evaluate_objective(study, &baselines, value)?;
        trace.push(TracePoint { value, objective });
        Ok(objective)
    };

    let (lo, hi) = study.bracket;
    if hi - lo <= study.tolerance {
        let result =
            golden_section_max(|v| eval(v, &mut trace), lo, hi, study.tolerance)?;
        return Ok(SpacingOutcome {
            optimum: result.argmax,
            objective: result.value,
            multimodal: false,
            evaluations: result.evaluations,
            trace,
        });
    }

    let n = study.prescan_points;
    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        let value = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let objective = eval(value, &mut trace)?;
        grid.push(TracePoint { value, objective });
    }
    let peak = grid
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.objective.total_cmp(&b.1.objective))
        .map(|(i, _)| i)
        .expect("pre-scan is nonempty");
    let rises = grid[..=peak]
        .windows(2)
        .all(|w| w[0].objective < w[1].objective);
    let falls = grid[peak..]
        .windows(2)
        .all(|w| w[0].objective > w[1].objective);
    if !(rises && falls) {
        return Ok(SpacingOutcome {
            optimum: grid[peak].value,
            objective: grid[peak].objective,
            multimodal: true,
            evaluations: trace.len(),
            trace,
        });
    }

    let sub_lo = grid[peak.saturating_sub(1)].value;
    let sub_hi = grid[(peak + 1).min(n - 1)].value;
    let refined = golden_section_max(
        |v| eval(v, &mut trace),
        sub_lo,
        sub_hi,
        study.tolerance,
    )?;
    // The refinement samples a noisy objective; never return worse than
    // the pre-scan peak it started from.
    let (optimum, objective) = if refined.value >= grid[peak].objective {
        (refined.argmax, refined.value)
    } else {
        (grid[peak].value, grid[peak].objective)
    };
    Ok(SpacingOutcome {
        optimum,
        objective,
        multimodal: false,
        evaluations: trace.len(),
        trace,
    })
}

fn evaluate_objective(
    study: &SpacingStudy,
    baselines: &[SoloCase],
    value: f64,
) -> Result<f64, SpacingError> {
    let layout = study.axis.apply(&study.layout, value);
    let solution = solve_case(&layout, &study.condition, &study.settings)
        .map_err(|source| SpacingError::Probe { value, source })?;
    let metrics = formation_ratios(
        &solution,
        &layout,
        baselines,
        &study.condition,
        &study.settings,
        study.locus,
    )
    .map_err(|source| SpacingError::Metrics { value, source })?;
    match study.objective {
        SpacingObjective::AverageTrailing => metrics
            .average_trailing_power_reduction()
            .ok_or(SpacingError::NoTrailingWing),
        SpacingObjective::FormationTotal => Ok(metrics.total_power_reduction()),
    }
}

/// How the streamwise-independence report treats circulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StaggerMode {
    /// Solve once at the first offset, then slide the trailing wings along
    /// the freestream direction with circulations frozen. The wake-plane
    /// drag is exactly invariant under such slides.
    Frozen,
    /// Re-solve the circulation at every offset; totals then vary slightly
    /// because the boundary conditions feel the new geometry.
    Resolve,
}

/// Wake-plane drags of one layout at one streamwise offset.
#[derive(Debug, Clone, Serialize)]
pub struct StaggerRow {
    pub offset: f64,
    /// Per-wing wake-plane drag in layout order, (id, N).
    pub per_wing: Vec<(String, f64)>,
    pub total: f64,
}

/// Per-offset wake-plane drag table for the streamwise-independence check.
#[derive(Debug, Clone, Serialize)]
pub struct StaggerReport {
    pub mode: StaggerMode,
    pub rows: Vec<StaggerRow>,
}

/// Tabulate per-wing and total wake-plane induced drag across streamwise
/// offsets. Offsets must be positive so the wings never touch.
pub fn munk_stagger_report(
    layout: &FormationLayout,
    offsets: &[f64],
    mode: StaggerMode,
    cond: &FlightCondition,
    settings: &SolverSettings,
) -> Result<StaggerReport, SpacingError> {
    if offsets.is_empty() {
        return Err(SpacingError::InvalidStudy {
            reason: "offset list is empty".to_string(),
        });
    }
    if let Some(&bad) = offsets.iter().find(|o| !(**o > 0.0)) {
        return Err(SpacingError::InvalidStudy {
            reason: format!("offset {bad} must be positive"),
        });
    }
    let rho = cond.rho;
    let mut rows = Vec::with_capacity(offsets.len());
    match mode {
        StaggerMode::Frozen => {
            let base_layout = SpacingAxis::Streamwise.apply(layout, offsets[0]);
            let base = solve_case(&base_layout, cond, settings).map_err(|source| {
                SpacingError::Probe {
                    value: offsets[0],
                    source,
                }
            })?;
            let core = settings.core_radius(&base.lattice);
            let u = cond.freestream_dir();
            for &offset in offsets {
                let mut lattice = base.lattice.clone();
                let shift: Vec3 = u * (offset - offsets[0]);
                for w in 0..lattice.wings.len() {
                    if lattice.wings[w].role == crate::geometry::Role::Leader {
                        continue;
                    }
                    translate_wing(&mut lattice, w, shift);
                }
                let drags = trefftz_drag(&base.gamma, &lattice, rho, core);
                rows.push(make_row(offset, &lattice, &drags));
            }
        }
        StaggerMode::Resolve => {
            for &offset in offsets {
                let shifted = SpacingAxis::Streamwise.apply(layout, offset);
                let solution =
                    solve_case(&shifted, cond, settings).map_err(|source| {
                        SpacingError::Probe {
                            value: offset,
                            source,
                        }
                    })?;
                let drags: Vec<f64> = solution
                    .wings
                    .iter()
                    .map(|w| w.trefftz_drag)
                    .collect();
                rows.push(make_row(offset, &solution.lattice, &drags));
            }
        }
    }
    Ok(StaggerReport { mode, rows })
}

fn make_row(
    offset: f64,
    lattice: &crate::geometry::Lattice,
    drags: &[f64],
) -> StaggerRow {
    StaggerRow {
        offset,
        per_wing: lattice
            .wings
            .iter()
            .zip(drags)
            .map(|(w, d)| (w.id.clone(), *d))
            .collect(),
        total: drags.iter().sum(),
    }
}

/// Translate every geometric point of one wing's lattice entries.
fn translate_wing(lattice: &mut crate::geometry::Lattice, w: usize, delta: Vec3) {
    let wing = &mut lattice.wings[w];
    wing.root_qc += delta;
    for p in wing
        .te_points
        .iter_mut()
        .chain(wing.qc_points.iter_mut())
        .chain(wing.tq_points.iter_mut())
    {
        *p += delta;
    }
    let start = wing.panel_start;
    let count = wing.panel_count();
    for panel in &mut lattice.panels[start..start + count] {
        for corner in &mut panel.corners {
            *corner += delta;
        }
        panel.qc_left += delta;
        panel.qc_right += delta;
        panel.control += delta;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Offset, Side, WingSpec};
    use approx::assert_relative_eq;

    fn coarse_spec() -> WingSpec {
        WingSpec {
            n_span: 12,
            n_chord: 2,
            ..WingSpec::default()
        }
    }

    fn coarse_vee() -> FormationLayout {
        FormationLayout::vee(
            coarse_spec(),
            Offset {
                streamwise: 0.16,
                wing_tip_spacing: 0.0,
                vertical: 0.0,
            },
        )
    }

    fn study(axis: SpacingAxis, bracket: (f64, f64), tolerance: f64) -> SpacingStudy {
        SpacingStudy {
            layout: coarse_vee(),
            axis,
            bracket,
            tolerance,
            objective: SpacingObjective::AverageTrailing,
            condition: FlightCondition::default(),
            settings: SolverSettings::default(),
            locus: UpwashLocus::QuarterChord,
            prescan_points: 9,
        }
    }

    fn golden_eval_bound(range: f64, tol: f64) -> usize {
        ((range / tol).ln() / PHI.ln()).ceil() as usize + 2
    }

    #[test]
    fn golden_section_finds_a_parabola_peak() {
        let mut evals = 0;
        let result = golden_section_max::<()>(
            |x| {
                evals += 1;
                Ok(-(x - 0.3_f64).powi(2))
            },
            -1.0,
            1.0,
            1e-4,
        )
        .unwrap();
        assert!((result.argmax - 0.3).abs() <= 1e-4);
        assert_eq!(result.evaluations, evals);
        assert!(evals <= golden_eval_bound(2.0, 1e-4), "used {evals}");
    }

    #[test]
    fn golden_section_respects_the_evaluation_bound_across_scales() {
        for (lo, hi, tol, peak) in [
            (-1.0, 1.0, 1e-3, 0.0),
            (0.0, 10.0, 1e-2, 7.3),
            (-5.0, -1.0, 1e-1, -2.2),
            (0.0, 1.0, 0.5, 0.25),
        ] {
            let mut evals = 0;
            let result = golden_section_max::<()>(
                |x| {
                    evals += 1;
                    Ok(-(x - peak).powi(2))
                },
                lo,
                hi,
                tol,
            )
            .unwrap();
            assert!(evals <= golden_eval_bound(hi - lo, tol), "{evals} at tol {tol}");
            assert!((result.argmax - peak).abs() <= tol);
        }
    }

    #[test]
    fn degenerate_bracket_returns_an_endpoint_after_two_evaluations() {
        let mut evals = 0;
        let result = golden_section_max::<()>(
            |x| {
                evals += 1;
                Ok(x)
            },
            1.0,
            1.05,
            0.1,
        )
        .unwrap();
        assert_eq!(evals, 2);
        assert_eq!(result.argmax, 1.05);
        let result = golden_section_max::<()>(|x| Ok(-x), 1.0, 1.05, 0.1).unwrap();
        assert_eq!(result.argmax, 1.0);
        assert_eq!(result.evaluations, 2);
    }

    #[test]
    fn hummel_rule_arithmetic() {
        let h = hummel_optimal_wts(1.6).unwrap();
        assert!((h.overlap_magnitude - 0.088).abs() <= 1e-16);
        assert_eq!(h.gap, -h.overlap_magnitude);
        let doubled = hummel_optimal_wts(3.2).unwrap();
        assert_eq!(doubled.overlap_magnitude, 2.0 * h.overlap_magnitude);
        for bad in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                hummel_optimal_wts(bad),
                Err(SpacingError::NonPositiveSpan { .. })
            ));
        }
    }

    #[test]
    fn study_validation_catches_bad_brackets() {
        let mut s = study(SpacingAxis::WingTipSpacing, (0.5, -0.5), 0.01);
        assert!(matches!(
            optimize_spacing(&s),
            Err(SpacingError::InvalidStudy { .. })
        ));
        s.bracket = (-0.5, 0.5);
        s.tolerance = 0.0;
        assert!(matches!(
            optimize_spacing(&s),
            Err(SpacingError::InvalidStudy { .. })
        ));
        s.tolerance = 0.01;
        s.prescan_points = 2;
        assert!(matches!(
            optimize_spacing(&s),
            Err(SpacingError::InvalidStudy { .. })
        ));
    }

    #[test]
    fn solo_template_cannot_average_trailing_wings() {
        let mut s = study(SpacingAxis::WingTipSpacing, (-0.1, 0.1), 0.05);
        s.layout = FormationLayout::solo(coarse_spec());
        assert!(matches!(
            optimize_spacing(&s),
            Err(SpacingError::NoTrailingWing)
        ));
    }

    #[test]
    fn degenerate_study_bracket_uses_two_probes() {
        let s = study(SpacingAxis::Vertical, (0.0, 0.05), 0.05);
        let outcome = optimize_spacing(&s).unwrap();
        assert_eq!(outcome.evaluations, 2);
        assert_eq!(outcome.trace.len(), 2);
        assert!(outcome.optimum == 0.0 || outcome.optimum == 0.05);
        assert!(!outcome.multimodal);
    }

    #[test]
    fn vertical_study_peaks_on_the_leader_plane() {
        let s = study(SpacingAxis::Vertical, (-0.5, 0.5), 0.02);
        let outcome = optimize_spacing(&s).unwrap();
        // With touching tips the leader's tip wake leg passes within a core
        // radius of the trailing tips, so the objective wiggles at the
        // centimeter scale around the in-plane peak.
        assert!(
            outcome.optimum.abs() <= 0.05,
            "optimum {}",
            outcome.optimum
        );
        assert!(outcome.objective > 0.0);
        assert!(!outcome.multimodal);
        assert_eq!(outcome.evaluations, outcome.trace.len());
    }

    #[test]
    fn probe_failure_carries_the_probe_value() {
        // Bracket reaching into V trailing-pair interpenetration.
        let s = study(SpacingAxis::WingTipSpacing, (-1.0, 0.0), 0.05);
        match optimize_spacing(&s) {
            Err(SpacingError::Probe { value, .. }) => assert_eq!(value, -1.0),
            other => panic!("expected probe failure, got {other:?}"),
        }
    }

    #[test]
    fn deep_overlap_pair_study_records_a_negative_saving() {
        let mut s = study(SpacingAxis::WingTipSpacing, (-1.2, -0.1), 0.05);
        s.layout = FormationLayout::pair(
            coarse_spec(),
            Side::Right,
            Offset {
                streamwise: 0.16,
                wing_tip_spacing: 0.0,
                vertical: 0.0,
            },
        );
        let outcome = optimize_spacing(&s).unwrap();
        assert!(
            outcome.trace.iter().any(|p| p.objective < 0.0),
            "trace {:?}",
            outcome.trace
        );
    }

    #[test]
    fn frozen_stagger_totals_are_streamwise_invariant() {
        let cond = FlightCondition::default();
        let settings = SolverSettings::default();
        let report = munk_stagger_report(
            &coarse_vee(),
            &[0.16, 0.8, 1.6],
            StaggerMode::Frozen,
            &cond,
            &settings,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 3);
        let first = report.rows[0].total;
        for row in &report.rows {
            assert_relative_eq!(row.total, first, max_relative = 1e-12);
        }
    }

    #[test]
    fn resolved_stagger_moves_wings_more_than_the_total() {
        // At zero incidence angle the x axis coincides with the freestream,
        // so a streamwise shift keeps each wing at the same station of the
        // wake plane; camber still carries the lift. At nonzero angles an
        // x shift also moves wings across the wake sheet and the total
        // genuinely changes.
        let cond = FlightCondition {
            alpha_deg: 0.0,
            ..FlightCondition::default()
        };
        let settings = SolverSettings::default();
        let pair = FormationLayout::pair(
            coarse_spec(),
            Side::Right,
            Offset {
                streamwise: 0.16,
                wing_tip_spacing: 0.0,
                vertical: 0.0,
            },
        );
        let report = munk_stagger_report(
            &pair,
            &[0.16, 1.6],
            StaggerMode::Resolve,
            &cond,
            &settings,
        )
        .unwrap();
        let near = &report.rows[0];
        let far = &report.rows[1];
        let total_diff = (near.total - far.total).abs();
        let max_wing_diff = near
            .per_wing
            .iter()
            .zip(&far.per_wing)
            .map(|((_, a), (_, b))| (a - b).abs())
            .fold(0.0_f64, f64::max);
        assert!(
            max_wing_diff > total_diff,
            "wing diff {max_wing_diff} vs total {total_diff}"
        );
        // Totals within the re-solve tolerance of each other.
        assert!(total_diff / far.total.abs() < 0.02);
    }

    #[test]
    fn single_wing_stagger_rows_are_identical() {
        let cond = FlightCondition::default();
        let settings = SolverSettings::default();
        let report = munk_stagger_report(
            &FormationLayout::solo(coarse_spec()),
            &[0.16, 1.6],
            StaggerMode::Resolve,
            &cond,
            &settings,
        )
        .unwrap();
        assert_eq!(report.rows[0].per_wing, report.rows[1].per_wing);
        assert_eq!(report.rows[0].total, report.rows[1].total);
    }

    #[test]
    fn stagger_offsets_must_be_positive() {
        let cond = FlightCondition::default();
        let settings = SolverSettings::default();
        for offsets in [vec![], vec![0.0], vec![0.16, -0.1]] {
            assert!(matches!(
                munk_stagger_report(
                    &coarse_vee(),
                    &offsets,
                    StaggerMode::Frozen,
                    &cond,
                    &settings,
                ),
                Err(SpacingError::InvalidStudy { .. })
            ));
        }
    }
}
