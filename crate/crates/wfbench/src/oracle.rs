//! Independent ground truth and an online-algorithm harness.
//!
//! The brute-force oracle never touches the dynamic program: it enumerates
//! lazy schedules (per request, one server jumps to the request point) and
//! scores each configuration X as the cheapest schedule cost plus the
//! relocation cost from the schedule's final configuration to X (the same
//! [`lazy_matching_distance`] the initial table row uses). On metric
//! spaces that equals the DP table everywhere, in both modes. Without the
//! triangle inequality the two genuinely part ways: the recurrence prices
//! multi-hop routes and anticipatory repositioning that no lazy schedule
//! performs, so cells can differ in either direction. The tests pin the
//! exact cells where the bundled instance splits them.

use crate::configuration::{lazy_matching_distance, ConfigDomain, Configuration, Mode};
use crate::error::{Error, Result};
use crate::space::PointId;
use crate::value::Value;
use crate::workfunction::{run_history, Instance, WorkFunctionTable};
use std::collections::HashMap;

/// At most this many lazy schedules are enumerated.
pub const MAX_SCHEDULES: u64 = 10_000_000;

/// One lazy schedule: per request, the server position that moved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub choices: Vec<PointId>,
    pub cost: Value,
    pub final_config: Configuration,
}

fn schedule_guard(instance: &Instance, t: usize) -> Result<()> {
    let k = instance.k() as u64;
    let mut total: u64 = 1;
    for _ in 0..t {
        total = total
            .checked_mul(k)
            .filter(|v| *v <= MAX_SCHEDULES)
            .ok_or_else(|| {
                Error::ResourceLimit(format!(
                    "more than {MAX_SCHEDULES} lazy schedules for k = {k}, t = {t}"
                ))
            })?;
    }
    Ok(())
}

/// Walk every lazy schedule for the first `t` requests. In set mode a
/// covered request freezes the configuration (only the server already on
/// the request may "move", in place); uncovered requests branch over every
/// server position.
pub fn visit_lazy_schedules<F>(
    instance: &Instance,
    t: usize,
    mode: Mode,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[PointId], Value, &Configuration),
{
    if t > instance.requests().len() {
        return Err(Error::Precondition(format!(
            "prefix length {t} exceeds the {} requests",
            instance.requests().len()
        )));
    }
    if mode == Mode::Set && instance.initial().has_duplicates() {
        return Err(Error::Precondition(
            "initial configuration repeats a point in set mode".into(),
        ));
    }
    schedule_guard(instance, t)?;
    let space = instance.space();
    let mut choices: Vec<PointId> = Vec::with_capacity(t);

    fn go<F>(
        instance: &Instance,
        t: usize,
        mode: Mode,
        config: Configuration,
        cost: Value,
        choices: &mut Vec<PointId>,
        visit: &mut F,
    ) where
        F: FnMut(&[PointId], Value, &Configuration),
    {
        let depth = choices.len();
        if depth == t {
            visit(choices, cost, &config);
            return;
        }
        let request = instance.requests()[depth];
        if mode == Mode::Set && config.contains(request) {
            choices.push(request);
            go(instance, t, mode, config, cost, choices, visit);
            choices.pop();
            return;
        }
        let movers: Vec<PointId> = config.distinct_points().collect();
        for x in movers {
            let next = config
                .replace(x, request)
                .expect("x comes from the configuration");
            let step_cost = instance.space().distance(x, request);
            choices.push(x);
            go(instance, t, mode, next, cost + step_cost, choices, visit);
            choices.pop();
        }
    }

    let _ = space;
    go(
        instance,
        t,
        mode,
        instance.initial().clone(),
        Value::ZERO,
        &mut choices,
        visit,
    );
    Ok(())
}

/// Materialize every lazy schedule. Fine for small k^t; the table builder
/// below streams instead.
pub fn enumerate_schedules(instance: &Instance, t: usize, mode: Mode) -> Result<Vec<Schedule>> {
    let mut out = Vec::new();
    visit_lazy_schedules(instance, t, mode, &mut |choices, cost, final_config| {
        out.push(Schedule {
            choices: choices.to_vec(),
            cost,
            final_config: final_config.clone(),
        });
    })?;
    Ok(out)
}

/// Cheapest schedule cost per final configuration actually reached.
pub fn lazy_minima(
    instance: &Instance,
    t: usize,
    mode: Mode,
) -> Result<HashMap<Configuration, Value>> {
    let mut minima: HashMap<Configuration, Value> = HashMap::new();
    visit_lazy_schedules(instance, t, mode, &mut |_, cost, final_config| {
        minima
            .entry(final_config.clone())
            .and_modify(|best| {
                if cost < *best {
                    *best = cost;
                }
            })
            .or_insert(cost);
    })?;
    Ok(minima)
}

/// Score every configuration by schedule enumeration: the cheapest
/// (schedule cost + relocation from the schedule's final configuration to
/// the target), minimized over all lazy schedules. A schedule that already
/// ends on the target contributes its bare cost (the relocation is zero),
/// but a cheaper schedule ending elsewhere may still undercut it: serving
/// with the wrong server and sliding it over afterwards is sometimes
/// cheaper than serving with the right one.
pub fn brute_force_table(instance: &Instance, t: usize, mode: Mode) -> Result<WorkFunctionTable> {
    let minima = lazy_minima(instance, t, mode)?;
    let domain = ConfigDomain::new(instance.shared_space(), instance.k(), mode)?;
    let space = domain.space();
    // deterministic fold order: domain order for targets, reached finals
    // in configuration order
    let mut reached: Vec<(&Configuration, Value)> = minima.iter().map(|(c, v)| (c, *v)).collect();
    reached.sort_by(|a, b| a.0.cmp(b.0));
    let values = domain
        .configs()
        .iter()
        .map(|target| {
            reached
                .iter()
                .map(|(final_config, cost)| {
                    lazy_matching_distance(final_config, target, space).map(|d| *cost + d)
                })
                .try_fold(None::<Value>, |best, candidate| {
                    let candidate = candidate?;
                    Ok(Some(best.map_or(candidate, |b: Value| b.min(candidate))))
                })
                .and_then(|best| {
                    best.ok_or_else(|| Error::Inconsistency("no schedules enumerated".into()))
                })
        })
        .collect::<Result<Vec<Value>>>()?;
    WorkFunctionTable::assemble(domain, t, values)
}

/// One step of the online algorithm's trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WfaMove {
    pub request: PointId,
    /// The server position that moved; equal to `request` when it was
    /// already covered.
    pub from: PointId,
    pub cost: Value,
    pub config_after: Configuration,
}

/// The work-function algorithm's run over a whole instance.
#[derive(Clone, Debug)]
pub struct WfaRun {
    pub moves: Vec<WfaMove>,
    pub total_online_cost: Value,
    pub opt_cost: Value,
}

impl WfaRun {
    /// online / opt, when opt is positive.
    pub fn ratio(&self) -> Option<f64> {
        if self.opt_cost.is_zero() {
            None
        } else {
            Some(self.total_online_cost.raw() as f64 / self.opt_cost.raw() as f64)
        }
    }
}

/// Simulate the work-function algorithm: after updating the table for
/// request r, move the server at the x minimizing w'(X - x + r) + d(r, x),
/// ties to the earliest point in label order.
pub fn run_wfa(instance: &Instance, mode: Mode) -> Result<WfaRun> {
    let history = run_history(instance, mode)?;
    let space = instance.space();
    let mut config = instance.initial().clone();
    let mut moves = Vec::with_capacity(instance.requests().len());
    let mut total = Value::ZERO;
    for (i, &request) in instance.requests().iter().enumerate() {
        let table = history.table(i + 1);
        let chosen = if mode == Mode::Set && config.contains(request) {
            request
        } else {
            let mut best: Option<(Value, PointId)> = None;
            for x in config.distinct_points() {
                let next = config.replace(x, request)?;
                let score = table.value(&next)? + space.distance(request, x);
                if best.is_none_or(|(b, _)| score < b) {
                    best = Some((score, x));
                }
            }
            best.expect("configurations are non-empty").1
        };
        let cost = space.distance(chosen, request);
        config = config.replace(chosen, request)?;
        total += cost;
        moves.push(WfaMove {
            request,
            from: chosen,
            cost,
            config_after: config.clone(),
        });
    }
    Ok(WfaRun {
        moves,
        total_online_cost: total,
        opt_cost: history.final_table().min_value(),
    })
}
