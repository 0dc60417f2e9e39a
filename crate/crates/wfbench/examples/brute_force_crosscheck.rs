//! Cross-check the recurrence against schedule enumeration.
//!
//! The oracle scores a configuration as the cheapest lazy schedule cost
//! plus the relocation from the schedule's final position. On a metric
//! space that is exactly the work function. On the bundled weights, which
//! break the triangle inequality, the two split; this prints where.

use wfbench::{brute_force_table, counterexample_instance, run_history, Mode};

fn main() -> wfbench::Result<()> {
    let raw = counterexample_instance();
    let closed = raw.closed();

    for (name, instance) in [("closed", &closed), ("raw", &raw)] {
        println!("{name} weights:");
        for mode in [Mode::Set, Mode::Multiset] {
            let history = run_history(instance, mode)?;
            let mut splits = 0;
            for t in 0..=instance.requests().len() {
                let oracle = brute_force_table(instance, t, mode)?;
                for (config, lazy) in oracle.iter() {
                    let dp = history.table(t).value(config)?;
                    if lazy != dp {
                        splits += 1;
                        if splits <= 3 {
                            println!(
                                "  {mode:?} step {t} {}: schedules say {}, recurrence says {}",
                                config.label(instance.space()),
                                instance.space().display_value(lazy),
                                instance.space().display_value(dp),
                            );
                        }
                    }
                }
            }
            match splits {
                0 => println!("  {mode:?}: every layer agrees"),
                n => println!("  {mode:?}: {n} cells differ"),
            }
        }
    }
    Ok(())
}
