//! Run the online algorithm over the bundled instance and account for its
//! cost against the offline optimum.

use wfbench::{counterexample_instance, oracle::run_wfa, Mode};

fn main() -> wfbench::Result<()> {
    let instance = counterexample_instance();
    let space = instance.space();
    let run = run_wfa(&instance, Mode::Set)?;

    for (i, m) in run.moves.iter().enumerate() {
        if m.from == m.request {
            println!(
                "step {}: request {} already covered, stay at {}",
                i + 1,
                space.label(m.request),
                m.config_after.label(space),
            );
        } else {
            println!(
                "step {}: request {}, move {} -> {} (cost {}), now at {}",
                i + 1,
                space.label(m.request),
                space.label(m.from),
                space.label(m.request),
                space.display_value(m.cost),
                m.config_after.label(space),
            );
        }
    }

    println!(
        "online total: {}",
        space.display_value(run.total_online_cost)
    );
    println!("offline optimum: {}", space.display_value(run.opt_cost));
    if let Some(ratio) = run.ratio() {
        println!("ratio: {ratio:.3}");
    }
    Ok(())
}
