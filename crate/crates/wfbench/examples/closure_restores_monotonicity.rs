//! The bundled instance's work function dips at one cell. Rebuild the same
//! instance over the shortest-path closure of its weights and the dip is
//! gone: every layer is pointwise at or above the one before it.

use wfbench::{check_history, counterexample_instance, run_history, Mode};

fn main() -> wfbench::Result<()> {
    let raw = counterexample_instance();
    let closed = raw.closed();

    for (name, instance) in [("raw", &raw), ("closed", &closed)] {
        let history = run_history(instance, Mode::Set)?;
        let report = check_history(&history)?;
        println!(
            "{name:>6}: {} lipschitz, {} monotonicity",
            report.lipschitz.len(),
            report.monotonicity.len(),
        );
        for v in &report.monotonicity {
            println!(
                "        step {} sends w[{}] from {} down to {}",
                v.step,
                v.config.label(instance.space()),
                instance.space().display_value(v.before),
                instance.space().display_value(v.after),
            );
        }
    }
    Ok(())
}
