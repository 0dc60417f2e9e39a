//! Server configurations: k points of a space, as a set or multiset.
//!
//! The matching distance D(X,Y) between equal-size configurations is the
//! cost of a cheapest perfect matching between them. Small sizes use
//! straight permutation search; larger ones an assignment solver.

use crate::error::{Error, Result};
use crate::space::{DistanceSpace, PointId};
use crate::value::Value;
use std::collections::HashMap;
use std::sync::Arc;

/// Whether configurations may repeat points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Set,
    Multiset,
}

/// Beyond this configuration count, exhaustive table computation is refused.
pub const MAX_CONFIGS: u64 = 1_000_000;

/// Matching sizes up to this use permutation search; above it, the
/// assignment solver.
const PERMUTATION_LIMIT: usize = 6;

/// A multiset of k points, kept sorted by point order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    points: Vec<PointId>,
}

impl Configuration {
    pub fn new(mut points: Vec<PointId>) -> Configuration {
        points.sort();
        Configuration { points }
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// The distinct points, in order. In set mode this is every point.
    pub fn distinct_points(&self) -> impl Iterator<Item = PointId> + '_ {
        self.points
            .iter()
            .enumerate()
            .filter(|(i, p)| *i == 0 || self.points[i - 1] != **p)
            .map(|(_, p)| *p)
    }

    /// Has any point more than once?
    pub fn has_duplicates(&self) -> bool {
        self.points.windows(2).any(|w| w[0] == w[1])
    }

    /// Swap one occurrence of `out` for `with`, keeping sort order.
    pub fn replace(&self, out: PointId, with: PointId) -> Result<Configuration> {
        let pos = self.points.binary_search(&out).map_err(|_| {
            Error::Precondition(format!(
                "point #{} not in configuration being updated",
                out.index()
            ))
        })?;
        let mut points = self.points.clone();
        points.remove(pos);
        let insert_at = points.partition_point(|p| *p < with);
        points.insert(insert_at, with);
        Ok(Configuration { points })
    }

    /// Concatenated point labels, e.g. "abc" or "dee".
    pub fn label(&self, space: &DistanceSpace) -> String {
        self.points.iter().map(|p| space.label(*p)).collect()
    }

    /// Inverse of [`label`](Self::label): split a concatenated label string
    /// back into points, matching the longest label first at each position.
    pub fn parse(text: &str, space: &DistanceSpace) -> Result<Configuration> {
        let mut by_length: Vec<PointId> = space.points().collect();
        by_length.sort_by_key(|p| std::cmp::Reverse(space.label(*p).len()));
        let mut rest = text;
        let mut points = Vec::new();
        'outer: while !rest.is_empty() {
            for p in &by_length {
                if let Some(tail) = rest.strip_prefix(space.label(*p)) {
                    points.push(*p);
                    rest = tail;
                    continue 'outer;
                }
            }
            return Err(Error::InvalidInput(format!(
                "no point label starts the remainder {rest:?} of configuration {text:?}"
            )));
        }
        if points.is_empty() {
            return Err(Error::InvalidInput(
                "a configuration needs at least one point".into(),
            ));
        }
        Ok(Configuration::new(points))
    }
}

/// Number of k-configurations over n points in the given mode, or None on
/// overflow.
fn config_count(n: usize, k: usize, mode: Mode) -> Option<u64> {
    // C(n, k) for sets, C(n+k-1, k) for multisets
    let top = match mode {
        Mode::Set => n,
        Mode::Multiset => n + k - 1,
    };
    if k > top {
        return Some(0);
    }
    let mut count: u64 = 1;
    for i in 0..k {
        count = count.checked_mul((top - i) as u64)?;
        count /= (i + 1) as u64;
    }
    Some(count)
}

/// All k-configurations of the space, in lexicographic point order.
pub fn enumerate_configs(
    space: &DistanceSpace,
    k: usize,
    mode: Mode,
) -> Result<Vec<Configuration>> {
    let n = space.len();
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if mode == Mode::Set && k > n {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds the {n} available points in set mode"
        )));
    }
    match config_count(n, k, mode) {
        Some(count) if count <= MAX_CONFIGS => {}
        _ => {
            return Err(Error::ResourceLimit(format!(
                "more than {MAX_CONFIGS} configurations for n = {n}, k = {k}"
            )))
        }
    }
    let mut configs = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn fill(
        n: usize,
        k: usize,
        mode: Mode,
        start: usize,
        current: &mut Vec<PointId>,
        out: &mut Vec<Configuration>,
    ) {
        if current.len() == k {
            out.push(Configuration {
                points: current.clone(),
            });
            return;
        }
        for i in start..n {
            current.push(PointId(i));
            let next = match mode {
                Mode::Set => i + 1,
                Mode::Multiset => i,
            };
            fill(n, k, mode, next, current, out);
            current.pop();
        }
    }
    fill(n, k, mode, 0, &mut current, &mut configs);
    Ok(configs)
}

/// Cheapest perfect matching cost between two equal-size configurations of
/// one space. Exact; no triangle inequality assumed.
pub fn matching_distance(
    x: &Configuration,
    y: &Configuration,
    space: &DistanceSpace,
) -> Result<Value> {
    if x.k() != y.k() {
        return Err(Error::Precondition(format!(
            "matching requires equal sizes, got {} and {}",
            x.k(),
            y.k()
        )));
    }
    if x.k() <= PERMUTATION_LIMIT {
        Ok(matching_by_enumeration(x, y, space))
    } else {
        Ok(matching_by_assignment(x, y, space))
    }
}

/// Relocation cost when servers already on a target point stay put: the
/// common points of X and Y are pinned and only the leftovers are matched
/// (optimally). On a metric space this equals [`matching_distance`]; without
/// the triangle inequality it can be strictly larger, because rotating a
/// parked server through a cheap intermediate point is forbidden. The
/// initial work-function row uses this cost: a server is never moved off a
/// point the target configuration also occupies.
pub fn lazy_matching_distance(
    x: &Configuration,
    y: &Configuration,
    space: &DistanceSpace,
) -> Result<Value> {
    if x.k() != y.k() {
        return Err(Error::Precondition(format!(
            "matching requires equal sizes, got {} and {}",
            x.k(),
            y.k()
        )));
    }
    // strip the maximal common multiset; both sides stay sorted
    let mut rest_x: Vec<PointId> = Vec::new();
    let mut rest_y: Vec<PointId> = Vec::new();
    let (xs, ys) = (x.points(), y.points());
    let (mut i, mut j) = (0, 0);
    while i < xs.len() && j < ys.len() {
        match xs[i].cmp(&ys[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                rest_x.push(xs[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                rest_y.push(ys[j]);
                j += 1;
            }
        }
    }
    rest_x.extend_from_slice(&xs[i..]);
    rest_y.extend_from_slice(&ys[j..]);
    if rest_x.is_empty() {
        return Ok(Value::ZERO);
    }
    matching_distance(
        &Configuration { points: rest_x },
        &Configuration { points: rest_y },
        space,
    )
}

/// Permutation-search route: try every bijection, keep the cheapest.
pub fn matching_by_enumeration(
    x: &Configuration,
    y: &Configuration,
    space: &DistanceSpace,
) -> Value {
    let k = x.k();
    let mut used = vec![false; k];
    let mut best: Option<Value> = None;
    fn go(
        x: &[PointId],
        y: &[PointId],
        space: &DistanceSpace,
        depth: usize,
        acc: Value,
        used: &mut [bool],
        best: &mut Option<Value>,
    ) {
        if let Some(b) = *best {
            if acc >= b {
                return; // partial sums only grow
            }
        }
        if depth == x.len() {
            *best = Some(acc);
            return;
        }
        for j in 0..y.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            go(
                x,
                y,
                space,
                depth + 1,
                acc + space.distance(x[depth], y[j]),
                used,
                best,
            );
            used[j] = false;
        }
    }
    go(
        x.points(),
        y.points(),
        space,
        0,
        Value::ZERO,
        &mut used,
        &mut best,
    );
    best.expect("k >= 1 leaves at least one bijection")
}

/// Assignment-solver route: shortest augmenting paths with potentials.
pub fn matching_by_assignment(
    x: &Configuration,
    y: &Configuration,
    space: &DistanceSpace,
) -> Value {
    let k = x.k();
    let cost: Vec<Vec<i64>> = x
        .points()
        .iter()
        .map(|p| {
            y.points()
                .iter()
                .map(|q| space.distance(*p, *q).raw())
                .collect()
        })
        .collect();
    Value::from_raw(assignment_cost(k, &cost))
}

/// Minimum-cost perfect matching on a square cost matrix.
fn assignment_cost(n: usize, cost: &[Vec<i64>]) -> i64 {
    // Jonker-style shortest augmenting path; indices are 1-based with a
    // virtual column 0.
    const INF: i64 = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| cost[matched_row[j] - 1][j - 1]).sum()
}

/// The full enumeration of one (space, k, mode) choice: every configuration
/// in lexicographic order plus an index for constant-time lookup. Work
/// function tables are vectors over this domain.
#[derive(Debug)]
pub struct ConfigDomain {
    space: Arc<DistanceSpace>,
    mode: Mode,
    k: usize,
    configs: Vec<Configuration>,
    index: HashMap<Configuration, usize>,
}

impl ConfigDomain {
    pub fn new(space: Arc<DistanceSpace>, k: usize, mode: Mode) -> Result<Arc<ConfigDomain>> {
        let configs = enumerate_configs(&space, k, mode)?;
        let index = configs
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(Arc::new(ConfigDomain {
            space,
            mode,
            k,
            configs,
            index,
        }))
    }

    pub fn space(&self) -> &DistanceSpace {
        &self.space
    }

    pub fn shared_space(&self) -> Arc<DistanceSpace> {
        Arc::clone(&self.space)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn configs(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn config(&self, index: usize) -> &Configuration {
        &self.configs[index]
    }

    pub fn index_of(&self, config: &Configuration) -> Option<usize> {
        self.index.get(config).copied()
    }
}
