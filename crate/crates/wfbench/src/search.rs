//! Randomized search for violations of the growth laws.
//!
//! Instances are drawn from a seeded ChaCha8 generator, one independent
//! stream per instance index, so any hit can be replayed from (seed, index)
//! alone. Violating instances are additionally written out as standalone
//! JSON reproducers.

use crate::analysis::{check_history, HistoryReport};
use crate::configuration::{Configuration, Mode};
use crate::error::{Error, Result};
use crate::io::instance_to_json;
use crate::space::DistanceSpace;
use crate::value::{Unit, Value};
use crate::workfunction::{run_history, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

/// Attempts at drawing a space with the requested metricity before giving up.
const METRICITY_ATTEMPTS: u32 = 1000;

/// Which spaces the generator may emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricityFilter {
    /// Force the triangle inequality by taking the metric closure of the draw.
    #[serde(rename = "metric-only")]
    MetricOnly,
    /// Resample until the drawn weights violate the triangle inequality.
    #[serde(rename = "non-metric-only")]
    NonMetricOnly,
    /// Take the draw as it comes.
    #[serde(rename = "both")]
    Both,
}

/// Parameters of one search run. Ranges are inclusive `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub count: u32,
    pub n: [usize; 2],
    pub k: [usize; 2],
    #[serde(rename = "T")]
    pub t: [usize; 2],
    /// Integer edge weights drawn uniformly from this range.
    pub weights: [i64; 2],
    pub metricity: MetricityFilter,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInput(msg));
        if self.count == 0 {
            return fail("count must be at least 1".into());
        }
        for (name, [lo, hi]) in [("n", self.n), ("k", self.k), ("T", self.t)] {
            if lo > hi {
                return fail(format!("{name} range {lo}..{hi} is empty"));
            }
        }
        if self.weights[0] > self.weights[1] {
            return fail(format!(
                "weight range {}..{} is empty",
                self.weights[0], self.weights[1]
            ));
        }
        if self.n[0] < 2 {
            return fail("spaces need at least 2 points".into());
        }
        if self.n[1] > 26 {
            return fail("at most 26 points (labels are single letters)".into());
        }
        if self.k[0] == 0 {
            return fail("k must be at least 1".into());
        }
        if self.k[0] > self.n[0] {
            return fail(format!(
                "k lower bound {} exceeds n lower bound {}: no draw can host that many servers",
                self.k[0], self.n[0]
            ));
        }
        if self.weights[0] < 1 {
            return fail("weights must be positive".into());
        }
        if self.metricity == MetricityFilter::NonMetricOnly {
            if self.n[0] < 3 {
                return fail("non-metric spaces need at least 3 points".into());
            }
            if self.weights[1] <= 2 * self.weights[0] {
                return fail(format!(
                    "weights {}..{} cannot violate the triangle inequality (max \u{2264} 2 * min)",
                    self.weights[0], self.weights[1]
                ));
            }
        }
        Ok(())
    }
}

fn draw_space(config: &SearchConfig, rng: &mut ChaCha8Rng, n: usize) -> Result<DistanceSpace> {
    let labels: Vec<String> = (0..n)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    for _ in 0..METRICITY_ATTEMPTS {
        let mut matrix = vec![vec![Value::ZERO; n]; n];
        // Symmetric fill touches both matrix[i][j] and matrix[j][i], so indices it is.
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in i + 1..n {
                let w = Value::from_raw(rng.gen_range(config.weights[0]..=config.weights[1]));
                matrix[i][j] = w;
                matrix[j][i] = w;
            }
        }
        let space = DistanceSpace::new(labels.clone(), matrix, Unit::integer())?;
        match config.metricity {
            MetricityFilter::Both => return Ok(space),
            MetricityFilter::MetricOnly => return Ok(space.metric_closure()),
            MetricityFilter::NonMetricOnly => {
                if !space.is_metric() {
                    return Ok(space);
                }
            }
        }
    }
    Err(Error::ResourceLimit(format!(
        "no non-metric draw in {METRICITY_ATTEMPTS} attempts for n = {n}, weights {}..{}",
        config.weights[0], config.weights[1]
    )))
}

/// Instance number `index` of the run: deterministic in (config, index).
pub fn generate_instance(config: &SearchConfig, index: u32) -> Result<Instance> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(config.n[0]..=config.n[1]);
    let k = rng.gen_range(config.k[0]..=config.k[1].min(n));
    let t = rng.gen_range(config.t[0]..=config.t[1]);
    let space = Arc::new(draw_space(config, &mut rng, n)?);
    let mut servers: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
    servers.sort_unstable();
    let initial = Configuration::new(servers.into_iter().map(crate::space::PointId).collect());
    let requests = (0..t)
        .map(|_| crate::space::PointId(rng.gen_range(0..n)))
        .collect();
    Instance::new(space, initial, requests)
}

/// Per-kind instance counts across a run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    /// Instances with at least one Lipschitz violation.
    pub lipschitz: u32,
    /// Instances with at least one shrinking cell.
    pub monotonicity: u32,
}

/// One violating instance, with the reproducer file name when one was written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproducerRecord {
    pub index: u32,
    pub file: Option<String>,
    pub lipschitz: usize,
    pub monotonicity: usize,
}

/// Outcome of a whole search run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub mode: Mode,
    pub checked: u32,
    pub clean: u32,
    pub tallies: Tally,
    pub reproducers: Vec<ReproducerRecord>,
}

impl SearchReport {
    pub fn found_violation(&self) -> bool {
        !self.reproducers.is_empty()
    }
}

fn persist(path: &Path, text: &str, written: usize) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Persist { written, source })
}

fn flush_report(report: &SearchReport, out_dir: &Path, written: usize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    persist(&out_dir.join("report.json"), &text, written)
}

/// Run the full search. With `out_dir` set, each violating instance is
/// written as `reproducer-{index:05}.json` and the report as `report.json`;
/// if a write fails, the report collected so far is still flushed before
/// the error surfaces.
pub fn hunt(config: &SearchConfig, mode: Mode, out_dir: Option<&Path>) -> Result<SearchReport> {
    config.validate()?;
    let mut report = SearchReport {
        config: config.clone(),
        mode,
        checked: 0,
        clean: 0,
        tallies: Tally::default(),
        reproducers: Vec::new(),
    };
    for index in 0..config.count {
        let instance = generate_instance(config, index)?;
        let history = run_history(&instance, mode)?;
        let findings: HistoryReport = check_history(&history)?;
        report.checked += 1;
        if !findings.has_violations() {
            report.clean += 1;
            continue;
        }
        if !findings.lipschitz.is_empty() {
            report.tallies.lipschitz += 1;
        }
        if !findings.monotonicity.is_empty() {
            report.tallies.monotonicity += 1;
        }
        let file = match out_dir {
            Some(dir) => {
                let name = format!("reproducer-{index:05}.json");
                let written = report.reproducers.len();
                if let Err(err) = persist(&dir.join(&name), &instance_to_json(&instance), written) {
                    flush_report(&report, dir, written)?;
                    return Err(err);
                }
                Some(name)
            }
            None => None,
        };
        report.reproducers.push(ReproducerRecord {
            index,
            file,
            lipschitz: findings.lipschitz.len(),
            monotonicity: findings.monotonicity.len(),
        });
    }
    if let Some(dir) = out_dir {
        flush_report(&report, dir, report.reproducers.len())?;
    }
    Ok(report)
}
