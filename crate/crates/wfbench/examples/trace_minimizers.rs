//! Explain one table cell by walking its minimizer chain back to the
//! initial row. The chosen cell is the one that shrinks on the bundled
//! instance: w[cde] after the fifth request.

use wfbench::{counterexample_instance, run_history, Configuration, Mode};

fn main() -> wfbench::Result<()> {
    let instance = counterexample_instance();
    let space = instance.shared_space();
    let history = run_history(&instance, Mode::Set)?;

    let mut config = Configuration::parse("cde", &space)?;
    let mut step = 5;
    println!(
        "w_{step}[{}] = {}",
        config.label(&space),
        space.display_value(history.table(step).value(&config)?),
    );

    while step > 0 {
        let request = instance.requests()[step - 1];
        let previous = history.table(step - 1);
        let m = previous.trace_minimizer(request, &config)?;
        let hop = space.distance(request, m.point);
        println!(
            "  = w_{}[{}] + d({},{})  ({} + {})",
            step - 1,
            m.predecessor.label(&space),
            space.label(request),
            space.label(m.point),
            space.display_value(previous.value(&m.predecessor)?),
            space.display_value(hop),
        );
        config = m.predecessor;
        step -= 1;
    }

    // the chain bottoms out at the relocation row
    println!(
        "  = relocation from {} to {}",
        instance.initial().label(&space),
        config.label(&space),
    );
    Ok(())
}
