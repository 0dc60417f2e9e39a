//! The bundled five-point counterexample.
//!
//! A non-metric space on points a..e where the work function of the request
//! sequence e,d,a,c,b,d from abc fails to grow monotonically. Shipped as
//! `fixtures/paper_instance.json` for the command-line tools; constructed
//! here directly for library use.

use crate::configuration::Configuration;
use crate::space::DistanceSpace;
use crate::value::{Unit, Value};
use crate::workfunction::Instance;
use std::sync::Arc;

const WEIGHTS: [(&str, &str, i64); 10] = [
    ("a", "b", 1),
    ("a", "c", 7),
    ("a", "d", 5),
    ("a", "e", 8),
    ("b", "c", 4),
    ("b", "d", 2),
    ("b", "e", 10),
    ("c", "d", 3),
    ("c", "e", 9),
    ("d", "e", 6),
];

/// The counterexample's distance space alone.
pub fn counterexample_space() -> DistanceSpace {
    let labels: Vec<String> = ["a", "b", "c", "d", "e"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut matrix = vec![vec![Value::ZERO; 5]; 5];
    for (x, y, w) in WEIGHTS {
        let i = labels.iter().position(|l| l == x).unwrap();
        let j = labels.iter().position(|l| l == y).unwrap();
        matrix[i][j] = Value::from_raw(w);
        matrix[j][i] = Value::from_raw(w);
    }
    DistanceSpace::new(labels, matrix, Unit::integer()).expect("fixture matrix is well formed")
}

/// The full counterexample instance: k = 3 servers starting on abc, serving
/// e, d, a, c, b, d.
pub fn counterexample_instance() -> Instance {
    let space = Arc::new(counterexample_space());
    let initial = Configuration::new(
        ["a", "b", "c"]
            .iter()
            .map(|l| space.point(l).unwrap())
            .collect(),
    );
    let requests = ["e", "d", "a", "c", "b", "d"]
        .iter()
        .map(|l| space.point(l).unwrap())
        .collect();
    Instance::new(space, initial, requests).expect("fixture instance is well formed")
}
