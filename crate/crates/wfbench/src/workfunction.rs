//! Work-function tables: the cheapest cost of serving a request prefix and
//! ending in each configuration, computed by dynamic programming.
//!
//! The update rule for a new request r is
//!
//! ```text
//! w'(X) = min over x in X of  w(X - x + r) + d(r, x)
//! ```
//!
//! with one wrinkle per mode: in set mode, a candidate x is admissible only
//! if the swap keeps k distinct points, so when r is already in X the value
//! is simply carried over; in multiset mode every x in X is admissible.

use crate::configuration::{lazy_matching_distance, ConfigDomain, Configuration, Mode};
use crate::error::{Error, Result};
use crate::space::{DistanceSpace, PointId};
use crate::value::Value;
use std::sync::Arc;

/// A distance space plus k servers' start and the request sequence.
#[derive(Clone, Debug)]
pub struct Instance {
    space: Arc<DistanceSpace>,
    initial: Configuration,
    requests: Vec<PointId>,
}

impl Instance {
    pub fn new(
        space: Arc<DistanceSpace>,
        initial: Configuration,
        requests: Vec<PointId>,
    ) -> Result<Instance> {
        if initial.k() == 0 {
            return Err(Error::Precondition("initial configuration is empty".into()));
        }
        let n = space.len();
        for p in initial.points() {
            if p.index() >= n {
                return Err(Error::Precondition(format!(
                    "initial point #{} outside the space",
                    p.index()
                )));
            }
        }
        for r in &requests {
            if r.index() >= n {
                return Err(Error::Precondition(format!(
                    "request #{} outside the space",
                    r.index()
                )));
            }
        }
        Ok(Instance {
            space,
            initial,
            requests,
        })
    }

    pub fn space(&self) -> &DistanceSpace {
        &self.space
    }

    pub fn shared_space(&self) -> Arc<DistanceSpace> {
        Arc::clone(&self.space)
    }

    pub fn k(&self) -> usize {
        self.initial.k()
    }

    pub fn initial(&self) -> &Configuration {
        &self.initial
    }

    pub fn requests(&self) -> &[PointId] {
        &self.requests
    }

    /// Swap the space for its metric closure, keeping servers and requests.
    pub fn closed(&self) -> Instance {
        Instance {
            space: Arc::new(self.space.metric_closure()),
            initial: self.initial.clone(),
            requests: self.requests.clone(),
        }
    }
}

/// One layer of the dynamic program: a total map from configurations to
/// values after some number of requests.
#[derive(Clone, Debug)]
pub struct WorkFunctionTable {
    domain: Arc<ConfigDomain>,
    step: usize,
    values: Vec<Value>,
}

impl WorkFunctionTable {
    /// Build a table from externally computed values (one per domain
    /// configuration, in domain order).
    pub fn assemble(domain: Arc<ConfigDomain>, step: usize, values: Vec<Value>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::Precondition(format!(
                "{} values for a domain of {} configurations",
                values.len(),
                domain.len()
            )));
        }
        Ok(WorkFunctionTable {
            domain,
            step,
            values,
        })
    }

    /// Requests applied so far.
    pub fn step(&self) -> usize {
        self.step
    }

    pub fn domain(&self) -> &Arc<ConfigDomain> {
        &self.domain
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn value_at(&self, index: usize) -> Value {
        self.values[index]
    }

    pub fn value(&self, config: &Configuration) -> Result<Value> {
        let idx = self.domain.index_of(config).ok_or_else(|| {
            Error::Inconsistency(format!(
                "configuration {} missing from the table domain",
                config.label(self.domain.space())
            ))
        })?;
        Ok(self.values[idx])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, Value)> {
        self.domain
            .configs()
            .iter()
            .zip(self.values.iter().copied())
    }

    pub fn min_value(&self) -> Value {
        self.values
            .iter()
            .copied()
            .min()
            .expect("domains are non-empty")
    }

    /// One dynamic-programming step: the table after serving `request`.
    pub fn update(&self, request: PointId) -> Result<WorkFunctionTable> {
        let space = self.domain.space();
        if request.index() >= space.len() {
            return Err(Error::Precondition(format!(
                "request #{} outside the space",
                request.index()
            )));
        }
        let mut values = Vec::with_capacity(self.values.len());
        for config in self.domain.configs() {
            values.push(self.minimize(request, config)?.value);
        }
        Ok(WorkFunctionTable {
            domain: Arc::clone(&self.domain),
            step: self.step + 1,
            values,
        })
    }

    /// The argmin behind one cell of `update`: which x in X wins, through
    /// which predecessor configuration, at what value. Ties go to the
    /// earliest point in label order.
    pub fn trace_minimizer(&self, request: PointId, config: &Configuration) -> Result<Minimizer> {
        self.minimize(request, config)
    }

    fn minimize(&self, request: PointId, config: &Configuration) -> Result<Minimizer> {
        let space = self.domain.space();
        if self.domain.mode() == Mode::Set && config.contains(request) {
            // the only admissible swap is request-for-request
            return Ok(Minimizer {
                point: request,
                predecessor: config.clone(),
                value: self.value(config)?,
            });
        }
        let mut best: Option<Minimizer> = None;
        for x in config.distinct_points() {
            let predecessor = config.replace(x, request)?;
            let value = self.value(&predecessor)? + space.distance(request, x);
            if best.as_ref().is_none_or(|b| value < b.value) {
                best = Some(Minimizer {
                    point: x,
                    predecessor,
                    value,
                });
            }
        }
        best.ok_or_else(|| Error::Inconsistency("empty configuration in domain".into()))
    }
}

/// Winner of one update cell: `value = w(predecessor) + d(request, point)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimizer {
    pub point: PointId,
    pub predecessor: Configuration,
    pub value: Value,
}

/// The zero-request table: the cost of relocating the initial servers to
/// each configuration, leaving servers on common points in place
/// ([`lazy_matching_distance`]). On metric spaces this is the plain matching
/// distance; on non-metric spaces the pinned form is what the work function
/// means by "move to X before any request".
pub fn initial_table(instance: &Instance, mode: Mode) -> Result<WorkFunctionTable> {
    if mode == Mode::Set && instance.initial().has_duplicates() {
        return Err(Error::Precondition(
            "initial configuration repeats a point in set mode".into(),
        ));
    }
    let domain = ConfigDomain::new(instance.shared_space(), instance.k(), mode)?;
    let space = domain.space();
    let values = domain
        .configs()
        .iter()
        .map(|config| lazy_matching_distance(instance.initial(), config, space))
        .collect::<Result<Vec<Value>>>()?;
    Ok(WorkFunctionTable {
        domain,
        step: 0,
        values,
    })
}

/// Every layer of the dynamic program for an instance, from the initial
/// table through the final request.
#[derive(Clone, Debug)]
pub struct WorkFunctionHistory {
    instance: Instance,
    mode: Mode,
    tables: Vec<WorkFunctionTable>,
}

impl WorkFunctionHistory {
    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// T+1 tables for T requests.
    pub fn tables(&self) -> &[WorkFunctionTable] {
        &self.tables
    }

    pub fn table(&self, step: usize) -> &WorkFunctionTable {
        &self.tables[step]
    }

    pub fn final_table(&self) -> &WorkFunctionTable {
        self.tables.last().expect("at least the initial table")
    }
}

pub fn run_history(instance: &Instance, mode: Mode) -> Result<WorkFunctionHistory> {
    let mut tables = Vec::with_capacity(instance.requests().len() + 1);
    tables.push(initial_table(instance, mode)?);
    for &request in instance.requests() {
        let next = tables.last().unwrap().update(request)?;
        tables.push(next);
    }
    Ok(WorkFunctionHistory {
        instance: instance.clone(),
        mode,
        tables,
    })
}

/// Render a history as tab-separated values: a header of configuration
/// labels, then one row per layer, labeled with the request that produced
/// it (φ for the initial layer).
pub fn render_tsv(history: &WorkFunctionHistory) -> String {
    let space = history.instance().space();
    let domain = history.table(0).domain();
    let mut out = String::from("request");
    for config in domain.configs() {
        out.push('\t');
        out.push_str(&config.label(space));
    }
    out.push('\n');
    for (step, table) in history.tables().iter().enumerate() {
        if step == 0 {
            out.push('φ');
        } else {
            out.push_str(space.label(history.instance().requests()[step - 1]));
        }
        for v in table.values() {
            out.push('\t');
            out.push_str(&space.display_value(*v));
        }
        out.push('\n');
    }
    out
}
