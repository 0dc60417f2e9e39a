//! A workbench for the k-server work function on finite distance spaces.
//!
//! The work function `w_t(X)` is the cheapest way to serve the first `t`
//! requests starting from a fixed initial configuration and end with the
//! servers at `X`. This crate computes those tables exactly (scaled-integer
//! arithmetic, no floats), checks the growth laws they are commonly assumed
//! to satisfy, and ships the machinery to look for violations:
//!
//! * [`space`]: labeled distance matrices, triangle-inequality diagnosis,
//!   and the shortest-path (metric) closure.
//! * [`configuration`]: canonical server configurations and the min-cost
//!   matching distance between them.
//! * [`workfunction`]: the dynamic program, layer by layer.
//! * [`analysis`]: Lipschitz and monotonicity checkers plus report plumbing.
//! * [`oracle`]: brute-force schedule enumeration and an online-algorithm
//!   simulator, used as independent ground truth.
//! * [`search`]: seeded random instance generation and violation hunting.
//! * [`cli`]: the command layer behind the `wfbench` binary.
//!
//! Monotonicity (the table never shrinks as requests arrive) holds on
//! metric spaces but can fail when the triangle inequality does not hold;
//! the bundled fixture demonstrates exactly that:
//!
//! ```
//! use wfbench::analysis::check_history;
//! use wfbench::fixture::counterexample_instance;
//! use wfbench::workfunction::run_history;
//! use wfbench::Mode;
//!
//! let history = run_history(&counterexample_instance(), Mode::Set).unwrap();
//! let report = check_history(&history).unwrap();
//! assert_eq!(report.monotonicity.len(), 1);
//! assert!(check_history(&run_history(
//!     &counterexample_instance().closed(), Mode::Set).unwrap()
//! ).unwrap().is_monotone());
//! ```

pub mod analysis;
pub mod cli;
pub mod configuration;
pub mod error;
pub mod fixture;
pub mod io;
pub mod oracle;
pub mod search;
pub mod space;
pub mod value;
pub mod workfunction;

pub use analysis::{
    check_history, check_lipschitz, check_monotonicity, report_lines, HistoryReport,
    LipschitzViolation, MonotonicityViolation, ReportLine,
};
pub use configuration::{
    enumerate_configs, lazy_matching_distance, matching_distance, ConfigDomain, Configuration, Mode,
};
pub use error::{Error, Result};
pub use fixture::{counterexample_instance, counterexample_space};
pub use io::{instance_to_json, load_instance, parse_instance};
pub use oracle::{brute_force_table, enumerate_schedules, lazy_minima, run_wfa, WfaRun};
pub use search::{generate_instance, hunt, MetricityFilter, SearchConfig, SearchReport};
pub use space::{DistanceSpace, PointId, TriangleViolation};
pub use value::{parse_decimal, Unit, Value};
pub use workfunction::{
    initial_table, render_tsv, run_history, Instance, WorkFunctionHistory, WorkFunctionTable,
};
