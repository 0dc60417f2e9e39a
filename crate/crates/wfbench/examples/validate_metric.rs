//! Diagnose a distance table: scan for triangle violations, then show what
//! the shortest-path closure would change.

use wfbench::{counterexample_space, Result};

fn main() -> Result<()> {
    let space = counterexample_space();

    let violations = space.validate_triangle();
    if violations.is_empty() {
        println!("all triangles hold; the table is a metric");
        return Ok(());
    }

    println!("{} violated pairs:", violations.len());
    for v in violations {
        println!(
            "  d({},{}) = {} exceeds the detour through {} ({})",
            space.label(v.x),
            space.label(v.y),
            space.display_value(v.direct),
            space.label(v.witness),
            space.display_value(v.detour),
        );
    }

    let closed = space.metric_closure();
    println!("closure repairs:");
    for x in space.points() {
        for y in space.points().filter(|y| x < *y) {
            let before = space.distance(x, y);
            let after = closed.distance(x, y);
            if before != after {
                println!(
                    "  d({},{}): {} -> {}",
                    space.label(x),
                    space.label(y),
                    space.display_value(before),
                    space.display_value(after),
                );
            }
        }
    }
    assert!(closed.is_metric());
    Ok(())
}
