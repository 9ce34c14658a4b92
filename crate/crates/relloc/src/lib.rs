//! relloc — a simulator, strategy library, and verification harness for a
//! pursuit game on graphs with one-bit relative-distance feedback.
//!
//! Two players move on a connected graph. Each round the *cat* probes one
//! vertex; the *mouse* is invisible and may step to an adjacent vertex (or,
//! in the k-slow variant, only once every k rounds). After every probe from
//! the second onward the cat learns a single bit: whether its current
//! distance to the mouse is at most the previous one. The cat's goal is to
//! pin the mouse down to a small radius; the engine tracks the exact set of
//! mouse positions consistent with the observed bits and referees every
//! claim a strategy makes.
//!
//! The crate provides:
//!
//! * [`graph`] — connected graphs with cached distance tables, set radii,
//!   tree views and splitting edges;
//! * [`generate`] — deterministic graph families and exhaustive catalogues;
//! * [`engine`] — the referee: bit computation, exact candidate tracking,
//!   move legality, trace recording and serialization;
//! * [`cats`] — cat strategies: localization on trees, grids and paths, an
//!   exact-capture strategy against slow mice, and a random baseline;
//! * [`mice`] — mouse adversaries from stationary to a one-step greedy
//!   evader;
//! * [`evader`] — an exhaustive game-tree search producing escape
//!   certificates on small instances;
//! * [`harness`] — verification suites and parameter sweeps with CSV
//!   reporting;
//! * [`specs`] — the textual component specs shared with the command-line
//!   front end.

pub mod cats;
pub mod engine;
pub mod evader;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod mice;
pub mod specs;

pub use engine::{
    brute_force_candidates, candidate_history, play_game, update_candidates, verify_trace,
    CandidateSet, CatAction, CatObservation, CatStrategy, EngineError, GameConfig, GameTrace,
    MouseObservation, MouseStrategy,
};
pub use graph::{Graph, GraphError, Vertex};
