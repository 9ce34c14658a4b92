//! Exact localization of a slow mouse on any connected graph.
//!
//! With slowness `4 * dmax` the mouse is frozen for the whole length of a
//! probing block, so distances compare cleanly. The cat anchors each block
//! at a vertex `r` (initially a graph center) and spends the block asking
//! every neighbor of `r` whether it is strictly closer to the mouse:
//!
//! * **Phase 1** probes `r, u1, r, u2, ..., ud, r`. For the pair around
//!   `uj`, the *return* bit compares `d(r, m)` against `d(uj, m)`; a `0`
//!   means `uj` is strictly closer. If no neighbor is closer, the mouse
//!   sits on `r` itself (any other position would have a closer neighbor
//!   along a shortest path), and — because the same comparisons constrain
//!   every candidate — the candidate set is exactly `{r}`: declare.
//! * **Phase 2** repeats the scan around the first closer neighbor `u`,
//!   skipping `r`: probes `u, v1, u, ..., vd', u`. No closer `v` again
//!   means the mouse sits on `u` (a closer next hop through `r` would
//!   contradict phase 1) and the candidate set is exactly `{u}`: declare.
//!   Otherwise the first closer `v` becomes the next block's anchor, and
//!   the block is padded by re-probing `u` until the next multiple of
//!   `4 * dmax`.
//!
//! Both phases fit in a block: `2d + 2d' + 2 <= 4 * dmax` rounds. Each
//! non-terminal block hands the next one an anchor two steps closer to the
//! mouse, which pays for the single step the mouse may take between
//! blocks; the anchor distance strictly decreases, so the game ends within
//! `d(r1, m1) + 1` blocks.

use std::collections::VecDeque;

use crate::engine::{CatAction, CatObservation, CatStrategy, EngineError, GameConfig};
use crate::graph::{Graph, Vertex};

/// Slow-mouse strategy with claim radius 0. Requires slowness exactly
/// `4 * dmax`.
pub fn slow_cat() -> Box<dyn CatStrategy> {
    Box::new(SlowCat::new())
}

/// Concrete slow-mouse strategy. Exposed so tests can audit the anchor
/// log; use [`slow_cat`] when a boxed strategy is enough.
#[derive(Clone)]
pub struct SlowCat {
    k: usize,
    block_start: usize,
    next_anchor: Vertex,
    queue: VecDeque<Vertex>,
    pending: Option<Eval>,
    anchors: Vec<(usize, Vertex)>,
}

/// What to decide once the queued probes of the current phase are out.
/// `pairs` holds `(probed neighbor, round of the return probe)`; the
/// neighbor is strictly closer than the phase anchor iff the return bit
/// is 0.
#[derive(Clone)]
enum Eval {
    Phase1 { anchor: Vertex, pairs: Vec<(Vertex, usize)> },
    Phase2 { anchor: Vertex, pairs: Vec<(Vertex, usize)> },
}

impl SlowCat {
    pub fn new() -> Self {
        SlowCat {
            k: 0,
            block_start: 0,
            next_anchor: 0,
            queue: VecDeque::new(),
            pending: None,
            anchors: Vec::new(),
        }
    }

    /// `(block start round, anchor)` per block.
    pub fn anchors(&self) -> &[(usize, Vertex)] {
        &self.anchors
    }

    /// Queue `anchor, w1, anchor, w2, ..., anchor` starting at `start`,
    /// returning the `(neighbor, return round)` pairs.
    fn schedule_scan(&mut self, anchor: Vertex, around: &[Vertex], start: usize) -> Vec<(Vertex, usize)> {
        self.queue.push_back(anchor);
        let mut pairs = Vec::with_capacity(around.len());
        for (j, &w) in around.iter().enumerate() {
            self.queue.push_back(w);
            self.queue.push_back(anchor);
            pairs.push((w, start + 2 * (j + 1)));
        }
        pairs
    }
}

impl Default for SlowCat {
    fn default() -> Self {
        Self::new()
    }
}

impl CatStrategy for SlowCat {
    fn name(&self) -> &'static str {
        "slow"
    }

    fn begin(&mut self, g: &Graph, cfg: &GameConfig) -> Result<(), EngineError> {
        let dmax = g.max_degree();
        if dmax == 0 {
            return Err(EngineError::StrategySetup {
                strategy: "slow".into(),
                reason: "graph has no edges".into(),
            });
        }
        if cfg.slowness != 4 * dmax {
            return Err(EngineError::StrategySetup {
                strategy: "slow".into(),
                reason: format!("needs slowness {} (4 * max degree), got {}", 4 * dmax, cfg.slowness),
            });
        }
        self.k = cfg.slowness;
        let all: Vec<Vertex> = (1..=g.n()).collect();
        self.next_anchor = g.radius_of_set(&all).center;
        self.block_start = 0;
        self.queue.clear();
        self.pending = None;
        self.anchors.clear();
        Ok(())
    }

    fn next(&mut self, obs: &CatObservation) -> CatAction {
        let g = obs.graph;
        loop {
            if let Some(p) = self.queue.pop_front() {
                return CatAction::Probe(p);
            }
            if let Some(eval) = self.pending.take() {
                let closer = |pairs: &[(Vertex, usize)]| {
                    pairs.iter().find(|&&(_, ret)| !obs.bits[ret - 2]).map(|&(w, _)| w)
                };
                match eval {
                    Eval::Phase1 { anchor, pairs } => match closer(&pairs) {
                        None => return CatAction::Done { center: anchor, radius: 0 },
                        Some(u) => {
                            let around: Vec<Vertex> =
                                g.neighbors(u).iter().copied().filter(|&w| w != anchor).collect();
                            let pairs = self.schedule_scan(u, &around, obs.round);
                            self.pending = Some(Eval::Phase2 { anchor: u, pairs });
                        }
                    },
                    Eval::Phase2 { anchor, pairs } => match closer(&pairs) {
                        None => return CatAction::Done { center: anchor, radius: 0 },
                        Some(v) => {
                            self.next_anchor = v;
                            // Pad out the block by re-probing the phase
                            // anchor; the next block starts on schedule.
                            for _ in obs.round..self.block_start + self.k {
                                self.queue.push_back(anchor);
                            }
                        }
                    },
                }
                continue;
            }
            // Start a new block.
            debug_assert_eq!((obs.round - 1) % self.k, 0, "block must start on a move round");
            self.block_start = obs.round;
            let anchor = self.next_anchor;
            self.anchors.push((obs.round, anchor));
            let around: Vec<Vertex> = g.neighbors(anchor).to_vec();
            let pairs = self.schedule_scan(anchor, &around, obs.round);
            self.pending = Some(Eval::Phase1 { anchor, pairs });
        }
    }

    fn clone_box(&self) -> Box<dyn CatStrategy> {
        Box::new(self.clone())
    }
}
