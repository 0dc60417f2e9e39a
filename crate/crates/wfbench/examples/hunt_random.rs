//! Search random instances for work functions that shrink. Metric draws
//! stay clean; draws whose weights break the triangle inequality do not.

use wfbench::{hunt, MetricityFilter, Mode, SearchConfig};

fn main() -> wfbench::Result<()> {
    let base = SearchConfig {
        seed: 0,
        count: 200,
        n: [3, 5],
        k: [2, 3],
        t: [1, 6],
        weights: [1, 10],
        metricity: MetricityFilter::MetricOnly,
    };

    for metricity in [MetricityFilter::MetricOnly, MetricityFilter::NonMetricOnly] {
        let config = SearchConfig { metricity, ..base };
        let report = hunt(&config, Mode::Set, None)?;
        println!(
            "{}: {} instances, {} with a lipschitz break, {} with a monotonicity break",
            match metricity {
                MetricityFilter::MetricOnly => "metric",
                MetricityFilter::NonMetricOnly => "non-metric",
                MetricityFilter::Both => "mixed",
            },
            report.checked,
            report.tallies.lipschitz,
            report.tallies.monotonicity,
        );
        if let Some(first) = report.reproducers.first() {
            println!("  first hit at index {}", first.index);
        }
    }
    Ok(())
}
