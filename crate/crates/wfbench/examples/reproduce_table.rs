//! Recompute the bundled instance's full work-function history and print it
//! as the same tab-separated table the `table` subcommand emits.

use wfbench::{counterexample_instance, render_tsv, run_history, Mode};

fn main() -> wfbench::Result<()> {
    let instance = counterexample_instance();
    let history = run_history(&instance, Mode::Set)?;
    print!("{}", render_tsv(&history));
    Ok(())
}
