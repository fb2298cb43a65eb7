//! Longest arc-preserving common subsequence (LAPCS): problem model, exact
//! and heuristic building blocks, three solvers and a benchmark harness.
//!
//! Positions in sequences and assignments are 1-based throughout.

pub mod bench;
pub mod conflict;
pub mod construct;
pub mod error;
pub mod io;
pub mod lcs;
pub mod mis;
pub mod model;
pub mod solvers;

pub use conflict::{build_conflict_graph, in_conflict, ConflictGraph};
pub use construct::{generate_random_solution, ConstructionParams};
pub use error::{Error, Result};
pub use io::{generate_instance, parse_instance, serialize_instance, GeneratorConfig};
pub use lcs::{lcs_length, lcs_traceback};
pub use mis::{greedy_mis, solve_mis, BitGraph, Budget, MisResult};
pub use model::{
    build_assignment_universe, is_valid_solution, Alphabet, ArcAnnotatedSequence, ArcSet, Assignment,
    Instance, Solution,
};
pub use solvers::{repair, run_heuristic, run_hyb_ea, run_ms_heur, Algorithm, Params, RunLimit, RunResult};
