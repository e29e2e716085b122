//! Local search for general integer linear programs.
//!
//! Instances are normalized to `min c·x, Ax <= b, l <= x <= u, x ∈ Z^n`
//! ([`model`]). The solver ([`engine`]) alternates between three modes
//! built on two operators: tight moves ([`tight_move`]) that drive a
//! variable to the value making one row as tight as possible, and lift
//! moves ([`lift_move`]) that push a variable to the objective-improving
//! end of its local feasible domain. [`oracle`] brute-forces small
//! instances to check the boundary-solution properties of those operators,
//! and [`metrics`] computes primal gap and primal integral for benchmarks.

pub mod engine;
pub mod lift_move;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod tight_move;

pub use engine::{run, Params, RunResult, Solver};
pub use model::{Assignment, Instance, InstanceBuilder};
