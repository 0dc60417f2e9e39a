//! Property checkers for work-function tables.
//!
//! Two facts that hold over metric spaces are checked mechanically here:
//! every layer should be 1-Lipschitz under the matching distance, and
//! layers should grow pointwise as requests arrive. On spaces with triangle
//! violations both can fail; the checkers report every counterexample cell.

use crate::configuration::{matching_distance, ConfigDomain, Configuration};
use crate::error::{Error, Result};
use crate::space::{DistanceSpace, TriangleViolation};
use crate::value::Value;
use crate::workfunction::{WorkFunctionHistory, WorkFunctionTable};
use serde::{Deserialize, Serialize};

/// A layer that is not 1-Lipschitz: w(x) exceeds w(y) + D(x,y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LipschitzViolation {
    pub step: usize,
    pub x: Configuration,
    pub y: Configuration,
    pub w_x: Value,
    pub w_y: Value,
    pub d_xy: Value,
}

/// A cell that shrank when a request was applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityViolation {
    /// The layer just produced; the request applied is number `step`.
    pub step: usize,
    pub config: Configuration,
    pub before: Value,
    pub after: Value,
}

/// Pairwise matching distances between all configurations of a domain,
/// computed once so layer scans are cheap.
fn config_distances(domain: &ConfigDomain) -> Vec<Vec<Value>> {
    let configs = domain.configs();
    let space = domain.space();
    let mut dist = vec![vec![Value::ZERO; configs.len()]; configs.len()];
    for i in 0..configs.len() {
        for j in i + 1..configs.len() {
            let d = matching_distance(&configs[i], &configs[j], space)
                .expect("configurations of one domain have equal size");
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    dist
}

fn lipschitz_with(table: &WorkFunctionTable, dist: &[Vec<Value>]) -> Vec<LipschitzViolation> {
    let configs = table.domain().configs();
    let mut found = Vec::new();
    for (i, x) in configs.iter().enumerate() {
        for (j, y) in configs.iter().enumerate() {
            if i == j {
                continue;
            }
            let w_x = table.value_at(i);
            let bound = table.value_at(j) + dist[i][j];
            if w_x > bound {
                found.push(LipschitzViolation {
                    step: table.step(),
                    x: x.clone(),
                    y: y.clone(),
                    w_x,
                    w_y: table.value_at(j),
                    d_xy: dist[i][j],
                });
            }
        }
    }
    found
}

/// Scan every ordered pair of one layer for Lipschitz failures, in domain
/// order.
pub fn check_lipschitz(table: &WorkFunctionTable) -> Vec<LipschitzViolation> {
    lipschitz_with(table, &config_distances(table.domain()))
}

/// Compare two adjacent layers cell by cell for shrinkage.
pub fn check_monotonicity(
    prev: &WorkFunctionTable,
    next: &WorkFunctionTable,
) -> Result<Vec<MonotonicityViolation>> {
    if !std::sync::Arc::ptr_eq(prev.domain(), next.domain()) || next.step() != prev.step() + 1 {
        return Err(Error::Precondition(
            "monotonicity check needs adjacent layers of one history".into(),
        ));
    }
    let mut found = Vec::new();
    for (i, config) in prev.domain().configs().iter().enumerate() {
        let before = prev.value_at(i);
        let after = next.value_at(i);
        if after < before {
            found.push(MonotonicityViolation {
                step: next.step(),
                config: config.clone(),
                before,
                after,
            });
        }
    }
    Ok(found)
}

/// Everything the two checkers and the triangle scan say about one history.
#[derive(Clone, Debug)]
pub struct HistoryReport {
    pub triangle: Vec<TriangleViolation>,
    pub lipschitz: Vec<LipschitzViolation>,
    pub monotonicity: Vec<MonotonicityViolation>,
}

impl HistoryReport {
    pub fn is_monotone(&self) -> bool {
        self.monotonicity.is_empty()
    }

    /// True when either work-function property failed somewhere. Triangle
    /// violations are diagnostic context, not counted here.
    pub fn has_violations(&self) -> bool {
        !self.lipschitz.is_empty() || !self.monotonicity.is_empty()
    }
}

/// Run both checkers across a whole history: Lipschitz on every layer,
/// monotonicity on every adjacent pair, plus the space's triangle scan.
pub fn check_history(history: &WorkFunctionHistory) -> Result<HistoryReport> {
    let tables = history.tables();
    let dist = config_distances(tables[0].domain());
    let mut lipschitz = Vec::new();
    for table in tables {
        lipschitz.extend(lipschitz_with(table, &dist));
    }
    let mut monotonicity = Vec::new();
    for pair in tables.windows(2) {
        monotonicity.extend(check_monotonicity(&pair[0], &pair[1])?);
    }
    let triangle = history.instance().space().validate_triangle().to_vec();
    Ok(HistoryReport {
        triangle,
        lipschitz,
        monotonicity,
    })
}

/// One line of machine-readable output. Values are decimal strings in
/// input units; configurations are concatenated labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReportLine {
    Triangle {
        x: String,
        y: String,
        witness: String,
        direct: String,
        detour: String,
    },
    Lipschitz {
        step: usize,
        config: String,
        other: String,
        wx: String,
        wy: String,
        dxy: String,
    },
    Monotonicity {
        step: usize,
        config: String,
        before: String,
        after: String,
    },
    Summary {
        verdict: String,
        triangle: usize,
        lipschitz: usize,
        monotonicity: usize,
    },
}

impl ReportLine {
    pub fn triangle(v: &TriangleViolation, space: &DistanceSpace) -> ReportLine {
        ReportLine::Triangle {
            x: space.label(v.x).to_string(),
            y: space.label(v.y).to_string(),
            witness: space.label(v.witness).to_string(),
            direct: space.display_value(v.direct),
            detour: space.display_value(v.detour),
        }
    }

    pub fn lipschitz(v: &LipschitzViolation, space: &DistanceSpace) -> ReportLine {
        ReportLine::Lipschitz {
            step: v.step,
            config: v.x.label(space),
            other: v.y.label(space),
            wx: space.display_value(v.w_x),
            wy: space.display_value(v.w_y),
            dxy: space.display_value(v.d_xy),
        }
    }

    pub fn monotonicity(v: &MonotonicityViolation, space: &DistanceSpace) -> ReportLine {
        ReportLine::Monotonicity {
            step: v.step,
            config: v.config.label(space),
            before: space.display_value(v.before),
            after: space.display_value(v.after),
        }
    }

    pub fn summary(report: &HistoryReport) -> ReportLine {
        ReportLine::Summary {
            verdict: if report.has_violations() {
                "violations"
            } else {
                "clean"
            }
            .to_string(),
            triangle: report.triangle.len(),
            lipschitz: report.lipschitz.len(),
            monotonicity: report.monotonicity.len(),
        }
    }
}

/// The full machine stream for a history report, one JSON object per line.
pub fn report_lines(report: &HistoryReport, space: &DistanceSpace) -> Vec<ReportLine> {
    let mut lines = Vec::new();
    for v in &report.triangle {
        lines.push(ReportLine::triangle(v, space));
    }
    for v in &report.lipschitz {
        lines.push(ReportLine::lipschitz(v, space));
    }
    for v in &report.monotonicity {
        lines.push(ReportLine::monotonicity(v, space));
    }
    lines.push(ReportLine::summary(report));
    lines
}
