//! Multi-objective planning of a two-robot cooperative box push.
//!
//! [`mopso`] and [`nsga2`] are general bound-constrained multi-objective
//! optimizers. [`box_model`] scores one rotate-then-translate step of the box
//! by time and energy, [`planner`] chains optimized steps into a trajectory,
//! and [`io`] handles map files, repeated experiments and report artifacts.

pub mod bounds;
pub mod box_model;
pub mod io;
pub mod mopso;
pub mod nsga2;
pub mod pareto;
pub mod planner;
pub mod rng;
