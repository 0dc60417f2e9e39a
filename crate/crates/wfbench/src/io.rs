//! The shared on-disk instance format.
//!
//! ```json
//! {
//!   "points": ["a", "b", "c"],
//!   "distances": [["a", "b", "1"], ["a", "c", "2.5"], ["b", "c", "2"]],
//!   "k": 2,
//!   "initial": ["a", "b"],
//!   "requests": ["c", "a"]
//! }
//! ```
//!
//! Weights are decimal strings; every unordered pair appears exactly once.
//! The `points` list fixes label order for enumeration and tie-breaking.

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::space::DistanceSpace;
use crate::value::{parse_decimal, Unit, Value};
use crate::workfunction::Instance;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    points: Vec<String>,
    distances: Vec<(String, String, String)>,
    k: usize,
    initial: Vec<String>,
    requests: Vec<String>,
}

/// Parse an instance from JSON text.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("instance json: {e}")))?;
    let space = Arc::new(space_from_weights(&file.points, &file.distances)?);

    if file.initial.len() != file.k {
        return Err(Error::InvalidInput(format!(
            "k = {} but initial lists {} point(s)",
            file.k,
            file.initial.len()
        )));
    }
    let initial = Configuration::new(
        file.initial
            .iter()
            .map(|l| space.require_point(l))
            .collect::<Result<Vec<_>>>()?,
    );
    let requests = file
        .requests
        .iter()
        .map(|l| space.require_point(l))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(space, initial, requests)
}

/// Build a space from labels plus one weight triple per unordered pair.
pub fn space_from_weights(
    labels: &[String],
    weights: &[(String, String, String)],
) -> Result<DistanceSpace> {
    let n = labels.len();
    let decimals = weights
        .iter()
        .map(|(x, y, w)| {
            parse_decimal(w).map_err(|e| Error::InvalidInput(format!("d({x},{y}): {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = Unit::new(decimals.iter().map(|d| d.frac_digits()).max().unwrap_or(0))?;

    let index = |label: &str| -> Result<usize> {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown point {label:?} in distances")))
    };
    let mut matrix = vec![vec![None; n]; n];
    for ((x, y, _), decimal) in weights.iter().zip(&decimals) {
        let i = index(x)?;
        let j = index(y)?;
        if i == j {
            return Err(Error::InvalidInput(format!(
                "self-distance listed for {x:?}"
            )));
        }
        if matrix[i][j].is_some() {
            return Err(Error::InvalidInput(format!("pair ({x},{y}) listed twice")));
        }
        let v = decimal.at_scale(unit)?;
        matrix[i][j] = Some(v);
        matrix[j][i] = Some(v);
    }
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Ok(Value::ZERO)
                    } else {
                        matrix[i][j].ok_or_else(|| {
                            Error::InvalidInput(format!(
                                "missing distance for pair ({},{})",
                                labels[i], labels[j]
                            ))
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DistanceSpace::new(labels.to_vec(), matrix, unit)
}

/// Serialize an instance back to the shared format, pairs in label order.
pub fn instance_to_json(instance: &Instance) -> String {
    let space = instance.space();
    let mut distances = Vec::new();
    for i in 0..space.len() {
        for j in i + 1..space.len() {
            let p = crate::space::PointId(i);
            let q = crate::space::PointId(j);
            distances.push((
                space.label(p).to_string(),
                space.label(q).to_string(),
                space.display_value(space.distance(p, q)),
            ));
        }
    }
    let file = InstanceFile {
        points: space.labels().to_vec(),
        distances,
        k: instance.k(),
        initial: instance
            .initial()
            .points()
            .iter()
            .map(|p| space.label(*p).to_string())
            .collect(),
        requests: instance
            .requests()
            .iter()
            .map(|r| space.label(*r).to_string())
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("instance serialization");
    out.push('\n');
    out
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::InvalidInput(format!("{}: {msg}", path.display())),
        other => other,
    })
}
