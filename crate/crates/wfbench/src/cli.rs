//! Command implementations behind the `wfbench` binary.
//!
//! Each command returns a [`CommandOutcome`] instead of printing: exit code
//! 0 means the checked property holds (or the command has no verdict), 1
//! means a semantic finding, and tool faults surface as errors that the
//! binary maps to exit 2. The `machine` stream is what `--json` writes.

use crate::analysis::{check_history, report_lines, ReportLine};
use crate::configuration::Mode;
use crate::error::Result;
use crate::io::load_instance;
use crate::oracle::{run_wfa, WfaRun};
use crate::search::{hunt, SearchConfig, SearchReport};
use crate::workfunction::{render_tsv, run_history, Instance, WorkFunctionHistory};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Debug)]
pub struct CommandOutcome {
    /// 0 = clean / no verdict, 1 = semantic finding. Tool faults never land
    /// here; they are errors and exit 2.
    pub code: i32,
    pub human: String,
    pub machine: Option<String>,
}

fn json_lines(lines: &[ReportLine]) -> Result<String> {
    let mut out = String::new();
    for line in lines {
        out.push_str(&serde_json::to_string(line)?);
        out.push('\n');
    }
    Ok(out)
}

fn load(path: &Path, closure: bool) -> Result<Instance> {
    let instance = load_instance(path)?;
    Ok(if closure { instance.closed() } else { instance })
}

/// Triangle-inequality scan of the instance's distance space.
pub fn cmd_validate(path: &Path) -> Result<CommandOutcome> {
    let instance = load_instance(path)?;
    let space = instance.space();
    let violations = space.validate_triangle();
    let mut human = format!(
        "space: {} points ({})\n",
        space.len(),
        space
            .labels()
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(" ")
    );
    for v in violations {
        writeln!(
            human,
            "d({x},{y}) = {direct} > {detour} = d({x},{w}) + d({w},{y})",
            x = space.label(v.x),
            y = space.label(v.y),
            w = space.label(v.witness),
            direct = space.display_value(v.direct),
            detour = space.display_value(v.detour),
        )
        .expect("writing to a string");
    }
    let verdict = if violations.is_empty() {
        "metric".to_string()
    } else {
        format!("non-metric ({} violated pairs)", violations.len())
    };
    writeln!(human, "verdict: {verdict}").expect("writing to a string");

    let mut lines: Vec<ReportLine> = violations
        .iter()
        .map(|v| ReportLine::triangle(v, space))
        .collect();
    lines.push(ReportLine::Summary {
        verdict: if violations.is_empty() {
            "metric"
        } else {
            "non-metric"
        }
        .to_string(),
        triangle: violations.len(),
        lipschitz: 0,
        monotonicity: 0,
    });
    Ok(CommandOutcome {
        code: i32::from(!violations.is_empty()),
        human,
        machine: Some(json_lines(&lines)?),
    })
}

fn table_json(history: &WorkFunctionHistory, closure: bool) -> Result<String> {
    let space = history.instance().space();
    let columns: Vec<String> = history
        .table(0)
        .domain()
        .configs()
        .iter()
        .map(|c| c.label(space))
        .collect();
    let rows: Vec<serde_json::Value> = history
        .tables()
        .iter()
        .map(|table| {
            let label = if table.step() == 0 {
                "\u{3c6}".to_string()
            } else {
                space
                    .label(history.instance().requests()[table.step() - 1])
                    .to_string()
            };
            let values: Vec<String> = table
                .values()
                .iter()
                .map(|&v| space.display_value(v))
                .collect();
            serde_json::json!({ "label": label, "values": values })
        })
        .collect();
    let doc = serde_json::json!({
        "mode": history.mode(),
        "closure": closure,
        "columns": columns,
        "rows": rows,
    });
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

/// Full work-function table as TSV, one row per request.
pub fn cmd_table(path: &Path, mode: Mode, closure: bool) -> Result<CommandOutcome> {
    let instance = load(path, closure)?;
    let history = run_history(&instance, mode)?;
    Ok(CommandOutcome {
        code: 0,
        human: render_tsv(&history),
        machine: Some(table_json(&history, closure)?),
    })
}

/// Growth-law checkers over the whole history, with the triangle scan as
/// context. Exit 1 iff a Lipschitz or monotonicity violation exists.
pub fn cmd_check(path: &Path, mode: Mode, closure: bool) -> Result<CommandOutcome> {
    let instance = load(path, closure)?;
    let history = run_history(&instance, mode)?;
    let report = check_history(&history)?;
    let space = instance.space();

    let mut human = String::new();
    if report.triangle.is_empty() {
        human.push_str("triangle inequality: holds\n");
    } else {
        writeln!(
            human,
            "triangle inequality: {} violated pairs (context, not counted in the verdict)",
            report.triangle.len()
        )
        .expect("writing to a string");
        for v in &report.triangle {
            writeln!(
                human,
                "  d({x},{y}) = {} > {} via {w}",
                space.display_value(v.direct),
                space.display_value(v.detour),
                x = space.label(v.x),
                y = space.label(v.y),
                w = space.label(v.witness),
            )
            .expect("writing to a string");
        }
    }

    if report.lipschitz.is_empty() {
        human.push_str("lipschitz: all layers clean\n");
    } else {
        for v in &report.lipschitz {
            writeln!(
                human,
                "lipschitz broken at step {}: w[{x}] = {} > {} = w[{y}] + D({x},{y}) = {} + {}",
                v.step,
                space.display_value(v.w_x),
                space.display_value(v.w_y + v.d_xy),
                space.display_value(v.w_y),
                space.display_value(v.d_xy),
                x = v.x.label(space),
                y = v.y.label(space),
            )
            .expect("writing to a string");
        }
    }

    if report.monotonicity.is_empty() {
        human.push_str("monotonicity: no shrinking cells\n");
    } else {
        for v in &report.monotonicity {
            let request = instance.requests()[v.step - 1];
            writeln!(
                human,
                "monotonicity broken at step {} (request {}): w[{}] fell {} -> {}",
                v.step,
                space.label(request),
                v.config.label(space),
                space.display_value(v.before),
                space.display_value(v.after),
            )
            .expect("writing to a string");
            // show where the shrunken value came from
            let trace = history
                .table(v.step - 1)
                .trace_minimizer(request, &v.config)?;
            writeln!(
                human,
                "  {} = w[{}] + d({},{}) = {} + {}",
                space.display_value(trace.value),
                trace.predecessor.label(space),
                space.label(request),
                space.label(trace.point),
                space.display_value(history.table(v.step - 1).value(&trace.predecessor)?),
                space.display_value(space.distance(request, trace.point)),
            )
            .expect("writing to a string");
        }
    }

    let verdict = if report.has_violations() {
        format!(
            "violations (lipschitz {}, monotonicity {})",
            report.lipschitz.len(),
            report.monotonicity.len()
        )
    } else {
        "clean".to_string()
    };
    writeln!(human, "verdict: {verdict}").expect("writing to a string");

    Ok(CommandOutcome {
        code: i32::from(report.has_violations()),
        human,
        machine: Some(json_lines(&report_lines(&report, space))?),
    })
}

#[derive(Serialize)]
struct WfaMoveJson {
    request: String,
    from: String,
    cost: String,
    config: String,
}

#[derive(Serialize)]
struct WfaJson {
    moves: Vec<WfaMoveJson>,
    online: String,
    opt: String,
    ratio: Option<f64>,
}

fn wfa_json(run: &WfaRun, instance: &Instance) -> Result<String> {
    let space = instance.space();
    let doc = WfaJson {
        moves: run
            .moves
            .iter()
            .map(|m| WfaMoveJson {
                request: space.label(m.request).to_string(),
                from: space.label(m.from).to_string(),
                cost: space.display_value(m.cost),
                config: m.config_after.label(space),
            })
            .collect(),
        online: space.display_value(run.total_online_cost),
        opt: space.display_value(run.opt_cost),
        ratio: run.ratio(),
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

/// Simulate the online algorithm and report its cost against the offline
/// optimum read off the final table layer.
pub fn cmd_wfa(path: &Path, mode: Mode, closure: bool) -> Result<CommandOutcome> {
    let instance = load(path, closure)?;
    let run = run_wfa(&instance, mode)?;
    let space = instance.space();
    let mut human = String::new();
    for (i, m) in run.moves.iter().enumerate() {
        if m.from == m.request {
            writeln!(
                human,
                "step {}: request {} already covered -> {}",
                i + 1,
                space.label(m.request),
                m.config_after.label(space),
            )
            .expect("writing to a string");
        } else {
            writeln!(
                human,
                "step {}: request {}, move {} -> {} (cost {}) -> {}",
                i + 1,
                space.label(m.request),
                space.label(m.from),
                space.label(m.request),
                space.display_value(m.cost),
                m.config_after.label(space),
            )
            .expect("writing to a string");
        }
    }
    writeln!(
        human,
        "online cost: {}",
        space.display_value(run.total_online_cost)
    )
    .expect("writing to a string");
    writeln!(human, "opt cost: {}", space.display_value(run.opt_cost))
        .expect("writing to a string");
    match run.ratio() {
        Some(ratio) => writeln!(human, "ratio: {ratio:.3}"),
        None => writeln!(human, "ratio: n/a (opt is 0)"),
    }
    .expect("writing to a string");
    Ok(CommandOutcome {
        code: 0,
        human,
        machine: Some(wfa_json(&run, &instance)?),
    })
}

fn hunt_human(report: &SearchReport, out_dir: Option<&Path>) -> String {
    let mut human = format!(
        "checked {} instances, {} clean\n",
        report.checked, report.clean
    );
    writeln!(
        human,
        "violating instances: lipschitz {}, monotonicity {}",
        report.tallies.lipschitz, report.tallies.monotonicity
    )
    .expect("writing to a string");
    for r in &report.reproducers {
        match &r.file {
            Some(file) => writeln!(
                human,
                "  instance {}: lipschitz {}, monotonicity {} -> {}",
                r.index, r.lipschitz, r.monotonicity, file
            ),
            None => writeln!(
                human,
                "  instance {}: lipschitz {}, monotonicity {}",
                r.index, r.lipschitz, r.monotonicity
            ),
        }
        .expect("writing to a string");
    }
    if let Some(dir) = out_dir {
        writeln!(human, "report: {}", dir.join("report.json").display())
            .expect("writing to a string");
    }
    let verdict = if report.found_violation() {
        "violations"
    } else {
        "clean"
    };
    writeln!(human, "verdict: {verdict}").expect("writing to a string");
    human
}

/// Randomized violation hunt. Exit 1 iff some instance violated a growth law.
pub fn cmd_hunt(
    config: &SearchConfig,
    mode: Mode,
    out_dir: Option<&Path>,
) -> Result<CommandOutcome> {
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let report = hunt(config, mode, out_dir)?;
    let mut machine = serde_json::to_string_pretty(&report)?;
    machine.push('\n');
    Ok(CommandOutcome {
        code: i32::from(report.found_violation()),
        human: hunt_human(&report, out_dir),
        machine: Some(machine),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::MetricityFilter;

    fn fixture_path() -> std::path::PathBuf {
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/paper_instance.json")
    }

    #[test]
    fn validate_flags_the_fixture_and_passes_its_closure() {
        let outcome = cmd_validate(&fixture_path()).unwrap();
        assert_eq!(outcome.code, 1);
        assert!(outcome.human.contains("d(b,e) = 10 > 8 = d(b,d) + d(d,e)"));
        assert!(outcome
            .human
            .ends_with("verdict: non-metric (3 violated pairs)\n"));
        let machine = outcome.machine.unwrap();
        assert_eq!(machine.lines().count(), 4);
        for line in machine.lines() {
            let parsed: ReportLine = serde_json::from_str(line).unwrap();
            let round: String = serde_json::to_string(&parsed).unwrap();
            assert_eq!(round, line);
        }
    }

    #[test]
    fn table_output_is_the_rendered_history() {
        let outcome = cmd_table(&fixture_path(), Mode::Set, false).unwrap();
        assert_eq!(outcome.code, 0);
        let instance = load_instance(&fixture_path()).unwrap();
        let history = run_history(&instance, Mode::Set).unwrap();
        assert_eq!(outcome.human, render_tsv(&history));
        let machine: serde_json::Value =
            serde_json::from_str(outcome.machine.as_deref().unwrap()).unwrap();
        assert_eq!(machine["columns"][9], "cde");
        assert_eq!(machine["rows"][0]["label"], "\u{3c6}");
        assert_eq!(machine["rows"][5]["values"][9], "17");
        assert_eq!(machine["mode"], "set");
    }

    #[test]
    fn check_reports_the_shrinking_cell_with_its_provenance() {
        let outcome = cmd_check(&fixture_path(), Mode::Set, false).unwrap();
        assert_eq!(outcome.code, 1);
        assert!(outcome
            .human
            .contains("monotonicity broken at step 5 (request b): w[cde] fell 18 -> 17"));
        assert!(outcome.human.contains("17 = w[bce] + d(b,d) = 15 + 2"));
        assert!(outcome.human.contains(
            "lipschitz broken at step 4: w[cde] = 18 > 17 = w[bce] + D(cde,bce) = 15 + 2"
        ));
        // the pinned initial row already violates the matching-distance
        // bound on these weights, so lipschitz findings start at step 0
        assert!(outcome
            .human
            .contains("lipschitz broken at step 0: w[ace] = 10 > 9 = w[abc] + D(ace,abc) = 0 + 9"));
        assert!(outcome
            .human
            .ends_with("verdict: violations (lipschitz 15, monotonicity 1)\n"));
    }

    #[test]
    fn closure_makes_the_fixture_check_clean() {
        let outcome = cmd_check(&fixture_path(), Mode::Set, true).unwrap();
        assert_eq!(outcome.code, 0, "human was:\n{}", outcome.human);
        assert!(outcome.human.contains("triangle inequality: holds"));
        assert!(outcome.human.ends_with("verdict: clean\n"));
        let machine = outcome.machine.unwrap();
        assert_eq!(
            machine,
            "{\"kind\":\"summary\",\"verdict\":\"clean\",\"triangle\":0,\"lipschitz\":0,\"monotonicity\":0}\n"
        );
    }

    #[test]
    fn wfa_narrates_the_fixture_run() {
        let outcome = cmd_wfa(&fixture_path(), Mode::Set, false).unwrap();
        assert_eq!(outcome.code, 0);
        assert!(outcome
            .human
            .starts_with("step 1: request e, move a -> e (cost 8) -> bce\n"));
        assert!(outcome.human.contains("online cost: 23\n"));
        assert!(outcome.human.contains("opt cost: 17\n"));
        assert!(outcome.human.contains("ratio: 1.353\n"));
        let machine: serde_json::Value =
            serde_json::from_str(outcome.machine.as_deref().unwrap()).unwrap();
        assert_eq!(machine["moves"][0]["from"], "a");
        assert_eq!(machine["online"], "23");
    }

    #[test]
    fn hunt_outcome_mirrors_the_report_verdict() {
        let config = SearchConfig {
            seed: 5,
            count: 25,
            n: [3, 5],
            k: [1, 3],
            t: [1, 6],
            weights: [1, 10],
            metricity: MetricityFilter::MetricOnly,
        };
        let outcome = cmd_hunt(&config, Mode::Set, None).unwrap();
        assert_eq!(outcome.code, 0);
        assert!(outcome.human.contains("checked 25 instances, 25 clean"));
        let report: SearchReport =
            serde_json::from_str(outcome.machine.as_deref().unwrap()).unwrap();
        assert_eq!(report.checked, 25);
        assert_eq!(report.clean, 25);
    }
}
