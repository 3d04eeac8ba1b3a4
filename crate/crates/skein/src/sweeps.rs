//! Parameter sweeps over leader shape and formation spacing: rebuild the
//! formation for each value, solve it, and compare every wing against its
//! solo baseline. Baselines are solved once per distinct planform and
//! reused across cases.

use crate::analysis::{
    formation_ratios, solo_baselines, AnalysisError, FormationMetrics,
    SoloCase, UpwashLocus, METRICS_CSV_HEADER,
};
use crate::artifacts::write_atomic;
use crate::geometry::FormationLayout;
use crate::solver::{solve_case, CaseError, FlightCondition, SolverSettings};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Which knob a sweep turns. Shape and attitude parameters apply to the
/// leader only; separation parameters move every trailing wing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParameter {
    /// Leader pitch in degrees.
    LeaderIncidence,
    /// Leader dihedral in degrees.
    LeaderDihedral,
    /// Leader aspect ratio; adjusts the leader's span only, keeping chord
    /// and taper fixed.
    LeaderAspectRatio,
    /// Leader tip-to-root chord ratio.
    LeaderTaper,
    /// Streamwise gap (m) from leader trailing edge to trailing-wing
    /// leading edge, applied to every trailing wing.
    Streamwise,
    /// Lateral gap (m) between facing wing tips, negative for overlap.
    WingTipSpacing,
    /// Vertical offset (m) of every trailing wing.
    Vertical,
}

impl SweepParameter {
    pub fn label(self) -> &'static str {
        match self {
            SweepParameter::LeaderIncidence => "incidence",
            SweepParameter::LeaderDihedral => "dihedral",
            SweepParameter::LeaderAspectRatio => "aspect-ratio",
            SweepParameter::LeaderTaper => "taper",
            SweepParameter::Streamwise => "streamwise",
            SweepParameter::WingTipSpacing => "wing-tip-spacing",
            SweepParameter::Vertical => "vertical",
        }
    }

    /// Produce the layout for one sweep value.
    pub fn apply(self, base: &FormationLayout, value: f64) -> FormationLayout {
        let mut layout = base.clone();
        match self {
            SweepParameter::LeaderIncidence => {
                layout.leader_mut().spec.incidence_deg = value;
            }
            SweepParameter::LeaderDihedral => {
                layout.leader_mut().spec.dihedral_deg = value;
            }
            SweepParameter::LeaderAspectRatio => {
                let spec = &mut layout.leader_mut().spec;
                spec.span = value * spec.root_chord * (1.0 + spec.taper) / 2.0;
            }
            SweepParameter::LeaderTaper => {
                layout.leader_mut().spec.taper = value;
            }
            SweepParameter::Streamwise => {
                for offset in layout.offsets_mut() {
                    offset.streamwise = value;
                }
            }
            SweepParameter::WingTipSpacing => {
                for offset in layout.offsets_mut() {
                    offset.wing_tip_spacing = value;
                }
            }
            SweepParameter::Vertical => {
                for offset in layout.offsets_mut() {
                    offset.vertical = value;
                }
            }
        }
        layout
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep: {reason}")]
    Invalid { reason: String },
    #[error("case {parameter}={value} failed: {source}")]
    Case {
        parameter: &'static str,
        value: f64,
        #[source]
        source: CaseError,
    },
    #[error("metrics for {parameter}={value} failed: {source}")]
    Metrics {
        parameter: &'static str,
        value: f64,
        #[source]
        source: AnalysisError,
    },
    #[error("writing results failed: {0}")]
    Io(#[from] std::io::Error),
}

/// One single-parameter sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSpec {
    pub layout: FormationLayout,
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub condition: FlightCondition,
    pub settings: SolverSettings,
    #[serde(default)]
    pub locus: UpwashLocus,
}

/// A cross-product of two parameters over the same base layout, row-major
/// in (row value, column value) order.
#[derive(Debug, Clone, Serialize)]
pub struct GridSpec {
    pub layout: FormationLayout,
    pub row: (SweepParameter, Vec<f64>),
    pub col: (SweepParameter, Vec<f64>),
    pub condition: FlightCondition,
    pub settings: SolverSettings,
    #[serde(default)]
    pub locus: UpwashLocus,
}

/// One solved case of a sweep or grid.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCase {
    pub case_id: String,
    /// Swept values in this case: one entry for a sweep, two for a grid.
    pub values: Vec<(String, f64)>,
    pub metrics: FormationMetrics,
}

/// All cases of one sweep plus the solo baselines they were compared to.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    /// Parameter labels in case-id order.
    pub parameters: Vec<String>,
    pub cases: Vec<SweepCase>,
    /// Distinct planforms that were solved solo, in first-use order.
    #[serde(skip)]
    pub baselines: Vec<SoloCase>,
}

fn check_values(label: &str, values: &[f64]) -> Result<(), SweepError> {
    if values.is_empty() {
        return Err(SweepError::Invalid {
            reason: format!("{label} value list is empty"),
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(SweepError::Invalid {
            reason: format!("{label} values must be finite"),
        });
    }
    let increasing = values.windows(2).all(|w| w[0] < w[1]);
    let decreasing = values.windows(2).all(|w| w[0] > w[1]);
    if values.len() > 1 && !increasing && !decreasing {
        return Err(SweepError::Invalid {
            reason: format!("{label} values must be strictly monotone"),
        });
    }
    Ok(())
}

/// Add solo baselines for any planform in `layout` not already cached.
fn ensure_baselines(
    cache: &mut Vec<SoloCase>,
    layout: &FormationLayout,
    cond: &FlightCondition,
    settings: &SolverSettings,
) -> Result<(), CaseError> {
    for case in solo_baselines(layout, cond, settings)? {
        if !cache.iter().any(|c| c.spec == case.spec) {
            cache.push(case);
        }
    }
    Ok(())
}

fn solve_one(
    layout: &FormationLayout,
    values: &[(SweepParameter, f64)],
    cond: &FlightCondition,
    settings: &SolverSettings,
    locus: UpwashLocus,
    baselines: &mut Vec<SoloCase>,
) -> Result<SweepCase, SweepError> {
    let (first_param, first_value) = values[0];
    let fail_case = |source| SweepError::Case {
        parameter: first_param.label(),
        value: first_value,
        source,
    };
    ensure_baselines(baselines, layout, cond, settings).map_err(fail_case)?;
    let solution = solve_case(layout, cond, settings).map_err(fail_case)?;
    let metrics = formation_ratios(&solution, layout, baselines, cond, settings, locus)
        .map_err(|source| SweepError::Metrics {
            parameter: first_param.label(),
            value: first_value,
            source,
        })?;
    let case_id = values
        .iter()
        .map(|(p, v)| format!("{}={}", p.label(), v))
        .collect::<Vec<_>>()
        .join("_");
    Ok(SweepCase {
        case_id,
        values: values
            .iter()
            .map(|(p, v)| (p.label().to_string(), *v))
            .collect(),
        metrics,
    })
}

/// Run every case of a single-parameter sweep in value order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    check_values(spec.parameter.label(), &spec.values)?;
    let mut baselines = Vec::new();
    let mut cases = Vec::with_capacity(spec.values.len());
    for &value in &spec.values {
        let layout = spec.parameter.apply(&spec.layout, value);
        cases.push(solve_one(
            &layout,
            &[(spec.parameter, value)],
            &spec.condition,
            &spec.settings,
            spec.locus,
            &mut baselines,
        )?);
    }
    Ok(SweepResult {
        parameters: vec![spec.parameter.label().to_string()],
        cases,
        baselines,
    })
}

/// Run the full cross-product of a two-parameter grid, row-major.
pub fn run_grid(spec: &GridSpec) -> Result<SweepResult, SweepError> {
    check_values(spec.row.0.label(), &spec.row.1)?;
    check_values(spec.col.0.label(), &spec.col.1)?;
    if spec.row.0 == spec.col.0 {
        return Err(SweepError::Invalid {
            reason: format!("grid repeats parameter {}", spec.row.0.label()),
        });
    }
    let mut baselines = Vec::new();
    let mut cases = Vec::with_capacity(spec.row.1.len() * spec.col.1.len());
    for &row_value in &spec.row.1 {
        for &col_value in &spec.col.1 {
            let layout = spec
                .col
                .0
                .apply(&spec.row.0.apply(&spec.layout, row_value), col_value);
            cases.push(solve_one(
                &layout,
                &[(spec.row.0, row_value), (spec.col.0, col_value)],
                &spec.condition,
                &spec.settings,
                spec.locus,
                &mut baselines,
            )?);
        }
    }
    Ok(SweepResult {
        parameters: vec![
            spec.row.0.label().to_string(),
            spec.col.0.label().to_string(),
        ],
        cases,
        baselines,
    })
}

/// Metrics emitted to the long-format plot file, in column order.
const PLOT_METRICS: [&str; 6] = [
    "lift_ratio",
    "drag_ratio",
    "moment_ratio",
    "delta_alpha",
    "pct_drag_red",
    "pct_power_red",
];

/// Write `metrics.csv` (analysis-module schema) and `meta.json` (spec echo
/// and code version) into `dir`. Identical results write identical bytes.
pub fn write_results<S: Serialize>(
    result: &SweepResult,
    spec_echo: &S,
    dir: &Path,
) -> Result<(), SweepError> {
    let mut csv = String::from(METRICS_CSV_HEADER);
    csv.push('\n');
    for case in &result.cases {
        for wing in &case.metrics.wings {
            csv.push_str(&wing.csv_row(&case.case_id));
            csv.push('\n');
        }
    }
    write_atomic(&dir.join("metrics.csv"), &csv)?;

    let meta = serde_json::json!({
        "spec": spec_echo,
        "code_version": env!("CARGO_PKG_VERSION"),
        "cases": result.cases.len(),
    });
    let mut text = serde_json::to_string_pretty(&meta).expect("meta serializes");
    text.push('\n');
    write_atomic(&dir.join("meta.json"), &text)?;
    Ok(())
}

/// Write the long-format plot file: one row per (case value, wing role,
/// metric), for external plotting tools.
pub fn write_plot_data(result: &SweepResult, dir: &Path) -> Result<(), SweepError> {
    let mut csv = String::from("value,role,metric,metric_value\n");
    for case in &result.cases {
        let value_label = case
            .values
            .iter()
            .map(|(_, v)| format!("{v}"))
            .collect::<Vec<_>>()
            .join(" ");
        for wing in &case.metrics.wings {
            for metric in PLOT_METRICS {
                let value = match metric {
                    "lift_ratio" => wing.lift_ratio,
                    "drag_ratio" => wing.drag_ratio,
                    "moment_ratio" => wing.moment_ratio.unwrap_or(f64::NAN),
                    "delta_alpha" => wing.delta_alpha,
                    "pct_drag_red" => wing.pct_drag_reduction,
                    "pct_power_red" => wing.pct_power_reduction,
                    _ => unreachable!(),
                };
                csv.push_str(&format!(
                    "{},{},{},{:.5e}\n",
                    value_label,
                    wing.role.label(),
                    metric,
                    value
                ));
            }
        }
    }
    write_atomic(&dir.join("plot_long.csv"), &csv)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Offset, Role, WingSpec};

    fn coarse_vee() -> FormationLayout {
        FormationLayout::vee(
            WingSpec {
                n_span: 12,
                n_chord: 2,
                ..WingSpec::default()
            },
            Offset {
                streamwise: 0.16,
                wing_tip_spacing: 0.0,
                vertical: 0.0,
            },
        )
    }

    fn sweep(parameter: SweepParameter, values: Vec<f64>) -> SweepSpec {
        SweepSpec {
            layout: coarse_vee(),
            parameter,
            values,
            condition: FlightCondition::default(),
            settings: SolverSettings::default(),
            locus: UpwashLocus::QuarterChord,
        }
    }

    fn trailing_mean<F: Fn(&crate::analysis::WingMetrics) -> f64>(
        case: &SweepCase,
        f: F,
    ) -> f64 {
        let picked: Vec<f64> = case
            .metrics
            .wings
            .iter()
            .filter(|w| w.role != Role::Leader)
            .map(f)
            .collect();
        picked.iter().sum::<f64>() / picked.len() as f64
    }

    #[test]
    fn incidence_sweep_raises_lift_and_cuts_drag_monotonically() {
        let result =
            run_sweep(&sweep(SweepParameter::LeaderIncidence, vec![0.0, 5.0, 10.0]))
                .unwrap();
        assert_eq!(result.cases.len(), 3);
        let lift: Vec<f64> = result
            .cases
            .iter()
            .map(|c| trailing_mean(c, |w| w.lift_ratio))
            .collect();
        let drag: Vec<f64> = result
            .cases
            .iter()
            .map(|c| trailing_mean(c, |w| w.drag_ratio))
            .collect();
        assert!(lift.windows(2).all(|w| w[0] < w[1]), "lift ratios {lift:?}");
        assert!(drag.windows(2).all(|w| w[0] > w[1]), "drag ratios {drag:?}");
    }

    #[test]
    fn dihedral_sweep_erodes_the_drag_saving() {
        let result =
            run_sweep(&sweep(SweepParameter::LeaderDihedral, vec![0.0, 20.0, 45.0]))
                .unwrap();
        let red: Vec<f64> = result
            .cases
            .iter()
            .map(|c| trailing_mean(c, |w| w.pct_drag_reduction))
            .collect();
        assert!(red.windows(2).all(|w| w[0] > w[1]), "reductions {red:?}");
    }

    #[test]
    fn rectangular_leader_gives_the_best_saving_of_the_taper_sweep() {
        let result = run_sweep(&sweep(
            SweepParameter::LeaderTaper,
            vec![0.0, 0.3, 0.5, 1.0],
        ))
        .unwrap();
        let red: Vec<f64> = result
            .cases
            .iter()
            .map(|c| trailing_mean(c, |w| w.pct_drag_reduction))
            .collect();
        let max = red.iter().cloned().fold(f64::MIN, f64::max);
        assert_eq!(red[3], max, "reductions {red:?}");
    }

    #[test]
    fn far_streamwise_drag_reaches_a_steady_value() {
        // Beyond three spans downstream the per-wing drag settles: compare
        // 3.5-span and 5-span separations. At zero alpha the wake stays in
        // the trailing wings' plane, so distance is the only variable; at
        // nonzero alpha the wake also recedes vertically and the settling
        // distance stretches.
        let mut spec = sweep(SweepParameter::Streamwise, vec![5.6, 8.0]);
        spec.condition.alpha_deg = 0.0;
        let result = run_sweep(&spec).unwrap();
        for (near, far) in result.cases[0]
            .metrics
            .wings
            .iter()
            .zip(&result.cases[1].metrics.wings)
        {
            let rel = (near.induced_drag - far.induced_drag).abs()
                / far.induced_drag.abs();
            assert!(rel < 0.02, "{}: {rel}", near.wing_id);
        }
    }

    #[test]
    fn aspect_ratio_parameter_rescales_the_leader_span_only() {
        let layout =
            SweepParameter::LeaderAspectRatio.apply(&coarse_vee(), 6.0);
        let leader = &layout.leader().spec;
        assert_eq!(leader.span, 6.0 * leader.root_chord);
        assert_eq!(leader.aspect_ratio(), 6.0);
        for wing in layout.wings.iter().filter(|w| w.id != "leader") {
            assert_eq!(wing.spec.span, WingSpec::default().span);
        }
    }

    #[test]
    fn invalid_value_lists_are_rejected() {
        for values in [vec![], vec![0.0, 1.0, 1.0], vec![0.0, 2.0, 1.0]] {
            assert!(matches!(
                run_sweep(&sweep(SweepParameter::LeaderIncidence, values)),
                Err(SweepError::Invalid { .. })
            ));
        }
        assert!(run_sweep(&sweep(
            SweepParameter::LeaderIncidence,
            vec![10.0, 5.0, 0.0]
        ))
        .is_ok());
    }

    #[test]
    fn failing_case_reports_the_offending_value() {
        // Deep overlap makes the V's trailing wings interpenetrate.
        let err = run_sweep(&sweep(
            SweepParameter::WingTipSpacing,
            vec![-1.0, 0.0],
        ))
        .unwrap_err();
        match err {
            SweepError::Case { parameter, value, .. } => {
                assert_eq!(parameter, "wing-tip-spacing");
                assert_eq!(value, -1.0);
            }
            other => panic!("expected case error, got {other}"),
        }
    }

    #[test]
    fn baselines_are_cached_per_distinct_planform() {
        let result =
            run_sweep(&sweep(SweepParameter::LeaderIncidence, vec![0.0, 5.0, 10.0]))
                .unwrap();
        // Trailing planform (leader at 0 deg matches it) plus the two
        // modified leaders.
        assert_eq!(result.baselines.len(), 3);
    }

    #[test]
    fn grid_covers_the_cross_product_row_major() {
        let spec = GridSpec {
            layout: coarse_vee(),
            row: (SweepParameter::LeaderTaper, vec![0.3, 0.5]),
            col: (SweepParameter::LeaderAspectRatio, vec![6.0, 10.0]),
            condition: FlightCondition::default(),
            settings: SolverSettings::default(),
            locus: UpwashLocus::QuarterChord,
        };
        let result = run_grid(&spec).unwrap();
        assert_eq!(result.cases.len(), 4);
        let ids: Vec<&str> =
            result.cases.iter().map(|c| c.case_id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "taper=0.3_aspect-ratio=6",
                "taper=0.3_aspect-ratio=10",
                "taper=0.5_aspect-ratio=6",
                "taper=0.5_aspect-ratio=10",
            ]
        );
        let repeated = GridSpec {
            row: (SweepParameter::LeaderTaper, vec![0.3]),
            col: (SweepParameter::LeaderTaper, vec![0.5]),
            ..spec
        };
        assert!(matches!(
            run_grid(&repeated),
            Err(SweepError::Invalid { .. })
        ));
    }

    #[test]
    fn results_serialize_deterministically() {
        let spec = sweep(SweepParameter::LeaderIncidence, vec![0.0, 5.0]);
        let result = run_sweep(&spec).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_results(&result, &spec, dir.path()).unwrap();
        write_plot_data(&result, dir.path()).unwrap();

        let csv = std::fs::read_to_string(dir.path().join("metrics.csv")).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + 2 * 3, "header plus 3 wings per case");
        assert_eq!(lines[0], METRICS_CSV_HEADER);
        assert!(lines[1].starts_with("incidence=0,leader,"));

        let meta: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join("meta.json")).unwrap(),
        )
        .unwrap();
        assert_eq!(meta["cases"], 2);
        assert_eq!(meta["spec"]["parameter"], "leader-incidence");

        let plot =
            std::fs::read_to_string(dir.path().join("plot_long.csv")).unwrap();
        assert_eq!(plot.lines().count(), 1 + 2 * 3 * 6);
        assert!(plot.lines().nth(1).unwrap().starts_with("0,leader,lift_ratio,"));

        // Re-running the identical sweep reproduces identical bytes.
        let again = run_sweep(&spec).unwrap();
        let dir2 = tempfile::tempdir().unwrap();
        write_results(&again, &spec, dir2.path()).unwrap();
        let csv2 = std::fs::read_to_string(dir2.path().join("metrics.csv")).unwrap();
        assert_eq!(csv, csv2);
    }
}
