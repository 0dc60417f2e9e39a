//! Finite labeled distance spaces: validation, metricity, closure.
//!
//! A space is a symmetric matrix of non-negative distances with zero
//! diagonal over a list of labeled points. Nothing here assumes the
//! triangle inequality; checking and repairing it is the point.

use crate::error::{Error, Result};
use crate::value::{Unit, Value, MAX_SCALED};
use std::sync::OnceLock;

/// Index of a point inside one space's label list. All enumeration and
/// tie-breaking order derives from that list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub(crate) usize);

impl PointId {
    pub fn index(self) -> usize {
        self.0
    }

    /// Build an id from a raw index. Only meaningful for the space whose
    /// label list the index came from.
    pub fn from_index(index: usize) -> PointId {
        PointId(index)
    }
}

/// One strict failure of the triangle inequality: going through `witness`
/// is cheaper than the direct edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleViolation {
    pub x: PointId,
    pub y: PointId,
    /// The through-point minimizing the one-stop detour, ties broken by
    /// label order.
    pub witness: PointId,
    pub direct: Value,
    pub detour: Value,
}

/// Whether a space has been scanned for triangle violations yet, and what
/// the scan found. The witness list itself comes from
/// [`DistanceSpace::validate_triangle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metricity {
    Unchecked,
    Metric,
    NonMetric,
}

#[derive(Debug)]
pub struct DistanceSpace {
    labels: Vec<String>,
    /// Row-major n*n matrix.
    dist: Vec<Value>,
    unit: Unit,
    triangle: OnceLock<Vec<TriangleViolation>>,
}

impl Clone for DistanceSpace {
    fn clone(&self) -> Self {
        DistanceSpace {
            labels: self.labels.clone(),
            dist: self.dist.clone(),
            unit: self.unit,
            triangle: self.triangle.clone(),
        }
    }
}

impl DistanceSpace {
    /// Build a space from a full matrix, validating shape, symmetry, zero
    /// diagonal and non-negativity. Errors name the offending entry.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Value>>, unit: Unit) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidInput("no points".into()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(|c| c.is_whitespace()) {
                return Err(Error::InvalidInput(format!(
                    "point label {label:?} is empty or contains whitespace"
                )));
            }
            if labels[..i].contains(label) {
                return Err(Error::InvalidInput(format!(
                    "duplicate point label {label:?}"
                )));
            }
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput(format!(
                "distance matrix is not {n}x{n}"
            )));
        }
        for i in 0..n {
            if !matrix[i][i].is_zero() {
                return Err(Error::InvalidInput(format!(
                    "d({0},{0}) must be 0",
                    labels[i]
                )));
            }
            for j in 0..n {
                let v = matrix[i][j];
                if v.raw() < 0 {
                    return Err(Error::InvalidInput(format!(
                        "d({},{}) is negative",
                        labels[i], labels[j]
                    )));
                }
                if v.raw() > MAX_SCALED {
                    return Err(Error::InvalidInput(format!(
                        "d({},{}) is out of range",
                        labels[i], labels[j]
                    )));
                }
                if matrix[j][i] != v {
                    return Err(Error::InvalidInput(format!(
                        "asymmetric entries d({},{}) != d({},{})",
                        labels[i], labels[j], labels[j], labels[i]
                    )));
                }
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for row in &matrix {
            dist.extend_from_slice(row);
        }
        Ok(DistanceSpace {
            labels,
            dist,
            unit,
            triangle: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.labels.len()).map(PointId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: PointId) -> &str {
        &self.labels[p.0]
    }

    pub fn point(&self, label: &str) -> Option<PointId> {
        self.labels.iter().position(|l| l == label).map(PointId)
    }

    pub fn require_point(&self, label: &str) -> Result<PointId> {
        self.point(label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown point {label:?}")))
    }

    pub fn distance(&self, p: PointId, q: PointId) -> Value {
        self.dist[p.0 * self.labels.len() + q.0]
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn display_value(&self, v: Value) -> String {
        self.unit.display(v)
    }

    /// Largest distance in the space.
    pub fn diameter(&self) -> Value {
        self.dist.iter().copied().max().unwrap_or(Value::ZERO)
    }

    /// Scan every ordered triple for strict one-stop-detour wins. Returns
    /// one entry per violated unordered pair, with the minimizing witness
    /// (ties by label order), sorted by pair. Cached after the first call.
    pub fn validate_triangle(&self) -> &[TriangleViolation] {
        self.triangle.get_or_init(|| {
            let mut found = Vec::new();
            let n = self.labels.len();
            for x in 0..n {
                for y in x + 1..n {
                    let direct = self.distance(PointId(x), PointId(y));
                    let mut best: Option<(Value, usize)> = None;
                    for z in 0..n {
                        if z == x || z == y {
                            continue;
                        }
                        let detour = self.distance(PointId(x), PointId(z))
                            + self.distance(PointId(z), PointId(y));
                        if best.is_none_or(|(b, _)| detour < b) {
                            best = Some((detour, z));
                        }
                    }
                    if let Some((detour, z)) = best {
                        if detour < direct {
                            found.push(TriangleViolation {
                                x: PointId(x),
                                y: PointId(y),
                                witness: PointId(z),
                                direct,
                                detour,
                            });
                        }
                    }
                }
            }
            found
        })
    }

    pub fn metricity(&self) -> Metricity {
        match self.triangle.get() {
            None => Metricity::Unchecked,
            Some(v) if v.is_empty() => Metricity::Metric,
            Some(_) => Metricity::NonMetric,
        }
    }

    pub fn is_metric(&self) -> bool {
        self.validate_triangle().is_empty()
    }

    /// All-pairs shortest paths over the complete graph: the closest space
    /// that satisfies the triangle inequality while never increasing any
    /// distance. Already-metric inputs come back unchanged.
    pub fn metric_closure(&self) -> DistanceSpace {
        let n = self.labels.len();
        let mut dist = self.dist.clone();
        for via in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let detour = dist[i * n + via] + dist[via * n + j];
                    if detour < dist[i * n + j] {
                        dist[i * n + j] = detour;
                    }
                }
            }
        }
        DistanceSpace {
            labels: self.labels.clone(),
            dist,
            unit: self.unit,
            triangle: OnceLock::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::counterexample_space;

    fn uniform(n: usize) -> DistanceSpace {
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let matrix: Vec<Vec<Value>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Value::ZERO
                        } else {
                            Value::from_raw(1)
                        }
                    })
                    .collect()
            })
            .collect();
        DistanceSpace::new(labels, matrix, Unit::integer()).unwrap()
    }

    #[test]
    fn uniform_space_is_metric() {
        let space = uniform(4);
        assert_eq!(space.metricity(), Metricity::Unchecked);
        assert!(space.validate_triangle().is_empty());
        assert_eq!(space.metricity(), Metricity::Metric);
    }

    #[test]
    fn counterexample_has_exactly_three_violated_pairs() {
        let space = counterexample_space();
        let violations = space.validate_triangle();
        let pairs: Vec<String> = violations
            .iter()
            .map(|v| {
                format!(
                    "{},{},{},{},{}",
                    space.label(v.x),
                    space.label(v.y),
                    space.label(v.witness),
                    space.display_value(v.direct),
                    space.display_value(v.detour),
                )
            })
            .collect();
        assert_eq!(pairs, vec!["a,c,b,7,5", "a,d,b,5,3", "b,e,d,10,8"]);
        assert_eq!(space.metricity(), Metricity::NonMetric);
    }

    #[test]
    fn closure_of_counterexample_fixes_only_the_violated_pairs() {
        let space = counterexample_space();
        let closed = space.metric_closure();
        let expect = [
            ("a", "b", "1"),
            ("a", "c", "5"),
            ("a", "d", "3"),
            ("a", "e", "8"),
            ("b", "c", "4"),
            ("b", "d", "2"),
            ("b", "e", "8"),
            ("c", "d", "3"),
            ("c", "e", "9"),
            ("d", "e", "6"),
        ];
        for (x, y, want) in expect {
            let p = closed.point(x).unwrap();
            let q = closed.point(y).unwrap();
            assert_eq!(
                closed.display_value(closed.distance(p, q)),
                want,
                "d({x},{y})"
            );
        }
        assert!(closed.validate_triangle().is_empty());
    }

    #[test]
    fn closure_is_idempotent_and_never_increases() {
        let space = counterexample_space();
        let closed = space.metric_closure();
        let twice = closed.metric_closure();
        for p in space.points() {
            for q in space.points() {
                assert!(closed.distance(p, q) <= space.distance(p, q));
                assert_eq!(twice.distance(p, q), closed.distance(p, q));
            }
        }
    }

    #[test]
    fn closure_of_metric_space_is_identity() {
        let space = uniform(5);
        let closed = space.metric_closure();
        for p in space.points() {
            for q in space.points() {
                assert_eq!(closed.distance(p, q), space.distance(p, q));
            }
        }
    }

    #[test]
    fn construction_rejects_malformed_matrices() {
        let labels = |ls: &[&str]| ls.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let v = Value::from_raw;

        let err = DistanceSpace::new(
            labels(&["a", "b"]),
            vec![vec![v(0), v(1)], vec![v(2), v(0)]],
            Unit::integer(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("asymmetric"), "{err}");

        let err = DistanceSpace::new(
            labels(&["a", "b"]),
            vec![vec![v(0), v(-1)], vec![v(-1), v(0)]],
            Unit::integer(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("negative"), "{err}");

        let err = DistanceSpace::new(
            labels(&["a", "b"]),
            vec![vec![v(3), v(1)], vec![v(1), v(0)]],
            Unit::integer(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("must be 0"), "{err}");

        let err = DistanceSpace::new(
            labels(&["a", "a"]),
            vec![vec![v(0), v(1)], vec![v(1), v(0)]],
            Unit::integer(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn two_point_spaces_are_always_metric() {
        let v = Value::from_raw;
        let space = DistanceSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![v(0), v(7)], vec![v(7), v(0)]],
            Unit::integer(),
        )
        .unwrap();
        assert!(space.validate_triangle().is_empty());
    }
}
