//! Run the per-step checkers over the bundled instance and print every
//! finding, then the same report as JSON lines.

use wfbench::{check_history, counterexample_instance, report_lines, run_history, Mode};

fn main() -> wfbench::Result<()> {
    let instance = counterexample_instance();
    let space = instance.space();
    let history = run_history(&instance, Mode::Set)?;
    let report = check_history(&history)?;

    for v in &report.lipschitz {
        println!(
            "step {}: w[{}] = {} outruns w[{}] + D = {} + {}",
            v.step,
            v.x.label(space),
            space.display_value(v.w_x),
            v.y.label(space),
            space.display_value(v.w_y),
            space.display_value(v.d_xy),
        );
    }
    for v in &report.monotonicity {
        println!(
            "step {}: w[{}] fell {} -> {}",
            v.step,
            v.config.label(space),
            space.display_value(v.before),
            space.display_value(v.after),
        );
    }

    println!();
    for line in report_lines(&report, space) {
        println!("{}", serde_json::to_string(&line)?);
    }
    Ok(())
}
