//! Map files, experiment orchestration and report artifacts.

pub mod experiment;
pub mod mapfile;
pub mod report;
pub mod svg;

pub use experiment::{
    run_experiment, run_repetitions, AlgorithmChoice, ExperimentError, ExperimentOutcome,
    ExperimentSpec, OutputFormats,
};
pub use mapfile::{parse_map, write_map, MapError};
pub use svg::render_svg;

use crate::box_model::WorldMap;

const MAP1: &str = include_str!("../../maps/map1.txt");
const MAP2: &str = include_str!("../../maps/map2.txt");

/// One of the two bundled benchmark maps (`1` sparse, `2` corridor).
pub fn benchmark_map(n: u8) -> Option<WorldMap> {
    let text = match n {
        1 => MAP1,
        2 => MAP2,
        _ => return None,
    };
    Some(parse_map(text).expect("bundled maps are valid"))
}
