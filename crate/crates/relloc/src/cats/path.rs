//! Localization on paths by reflected probes and an edge sweep.
//!
//! Positions along the path are tracked explicitly (vertex ids need not be
//! in path order). The cat recomputes the exact candidate hull `[L, R]`
//! every round and plays two phases on its width `w = R - L`:
//!
//! * **Reflection (w >= 10).** Probe the mirror image of the previous
//!   probe about the hull center. For any consecutive probes `a` then `b`,
//!   a `1` bit confines the candidates to `{v : |b-v| <= |a-v| + 1}` and a
//!   `0` bit to the complement-ish half `{v : |b-v| >= |a-v|}` — both are
//!   half-lines cut within one vertex of the midpoint `(a+b)/2`. Mirroring
//!   places that midpoint on the hull center, so each round costs one step
//!   of drift and halves the rest: `w' <= ceil(w/2) + 2`. Reflections that
//!   would leave the path are clamped to the border, which can waste a
//!   round but never misleads.
//!
//! * **Sweep (w <= 9).** Halving alone stalls: `ceil(w/2) + 2 = w` at
//!   `w = 5`, one vertex short of a radius-2 declaration. Instead the cat
//!   jumps to the hull's left edge and walks right two per round. Probes
//!   two apart share a neighbor, so each bit cuts *sharply* at the
//!   midpoint: a `1` bit pins the rear of the hull to the probe, and the
//!   sweep front then gains two per round on a drift of one, squeezing the
//!   width by one each round; a `0` bit lands the mouse in the narrow band
//!   between the last two cuts and ends the game at once. The sweep costs
//!   at most `w - 2` rounds.
//!
//! The cat declares the hull midpoint with radius 2 as soon as `w <= 4`.
//! Total rounds stay within `2 * (ceil(log2 n) + 6)` with a wide margin:
//! about `log2 n` halving rounds plus a constant tail.

use crate::engine::{CatAction, CatObservation, CatStrategy, EngineError, GameConfig};
use crate::graph::{Graph, Vertex};

/// Path strategy with claim radius 2. Requires a path (a tree with maximum
/// degree at most 2).
pub fn path_cat() -> Box<dyn CatStrategy> {
    Box::new(PathCat::new())
}

/// Concrete path strategy. Exposed so tests can read the per-round hull
/// widths; use [`path_cat`] when a boxed strategy is enough.
#[derive(Clone)]
pub struct PathCat {
    /// Position along the path per vertex id; `pos[0]` unused.
    pos: Vec<usize>,
    /// Vertex id per position; `inv[0]` unused.
    inv: Vec<Vertex>,
    /// Previous probe, in position space.
    last: Option<usize>,
    sweeping: bool,
    /// `(round, hull width)` per ask, for diagnostics and tests.
    widths: Vec<(usize, usize)>,
}

impl PathCat {
    pub fn new() -> Self {
        PathCat { pos: Vec::new(), inv: Vec::new(), last: None, sweeping: false, widths: Vec::new() }
    }

    /// Hull width seen at each ask.
    pub fn widths(&self) -> &[(usize, usize)] {
        &self.widths
    }
}

impl Default for PathCat {
    fn default() -> Self {
        Self::new()
    }
}

impl CatStrategy for PathCat {
    fn name(&self) -> &'static str {
        "path"
    }

    fn begin(&mut self, g: &Graph, _cfg: &GameConfig) -> Result<(), EngineError> {
        if !g.is_tree() || g.max_degree() > 2 {
            return Err(EngineError::StrategySetup {
                strategy: "path".into(),
                reason: "graph is not a path".into(),
            });
        }
        let n = g.n();
        self.pos = vec![0; n + 1];
        self.inv = vec![0; n + 1];
        self.last = None;
        self.sweeping = false;
        self.widths.clear();
        // Walk from the smaller endpoint to map vertex ids to positions.
        let start = (1..=n).find(|&v| g.neighbors(v).len() <= 1).expect("a path has an endpoint");
        let (mut prev, mut cur) = (0, start);
        for p in 1..=n {
            self.pos[cur] = p;
            self.inv[p] = cur;
            if let Some(&nxt) = g.neighbors(cur).iter().find(|&&w| w != prev) {
                prev = cur;
                cur = nxt;
            }
        }
        Ok(())
    }

    fn next(&mut self, obs: &CatObservation) -> CatAction {
        let n = self.inv.len() - 1;
        let (mut lo, mut hi) = (usize::MAX, 0);
        for &v in obs.candidates.members() {
            lo = lo.min(self.pos[v]);
            hi = hi.max(self.pos[v]);
        }
        let w = hi - lo;
        self.widths.push((obs.round, w));
        if w <= 4 {
            return CatAction::Done { center: self.inv[lo + w / 2], radius: 2 };
        }
        let q = match self.last {
            // Opening probe: the center of the whole path.
            None => (n + 2) / 2,
            Some(a) if w >= 10 => {
                // Reflect about the hull center; clamp into the path. A
                // degenerate reflection (landing on the previous probe)
                // steps two aside instead, keeping the cut near center.
                let target = (lo + hi) / 2;
                let refl = (2 * target as isize - a as isize).clamp(1, n as isize) as usize;
                if refl == a {
                    if a + 2 <= n {
                        a + 2
                    } else {
                        a - 2
                    }
                } else {
                    refl
                }
            }
            Some(a) => {
                // Sweep: continue an established walk, else jump to the
                // hull's left edge and start one.
                let continuing = self.sweeping && a >= lo.saturating_sub(1) && a + 2 <= hi;
                if continuing {
                    (a + 2).min(n)
                } else if a == lo {
                    (lo + 2).min(n)
                } else {
                    lo
                }
            }
        };
        self.sweeping = w <= 9;
        self.last = Some(q);
        CatAction::Probe(self.inv[q])
    }

    fn clone_box(&self) -> Box<dyn CatStrategy> {
        Box::new(self.clone())
    }
}
