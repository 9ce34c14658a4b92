//! Localization on trees by paired probes.
//!
//! The cat maintains a *local root* `r`, initially the tree center. While
//! the subtree below `r` is deeper than the claim radius `4*dmax - 6`, it
//! runs one narrowing iteration:
//!
//! 1. **Sibling elimination.** Among the children of `r`, repeatedly probe
//!    the two smallest-id survivors `u` then `v` (they share the neighbor
//!    `r`). A `1` bit answers "no closer", which rules out the subtree of
//!    the vertex probed first; a `0` bit rules out the second. One child
//!    `r+` survives.
//! 2. **Descend or declare.** For each child `u` of `r+` in ascending id
//!    order, probe `u` then `r`. A `0` bit means the mouse sits on the
//!    `r+` side, so the local root moves to `r+` and a new iteration
//!    starts. If every child of `r+` is ruled out (or `r+` is a leaf),
//!    the candidates are pinned near `r` and the cat declares.
//!
//! Each `1` bit shrinks the candidate region by a full subtree, while `0`
//! bits quickly force a descent; the local root therefore sinks fast
//! enough that the game ends within
//! `2 * max(0, depth - (4*dmax - 6)) * (2*dmax - 2)` rounds.
//!
//! Why consecutive probes cut along edges: probing `u` then `w` where both
//! are adjacent to some `v` traps the candidates on one side. The mouse
//! moves at most one step per round, so comparing the two distances through
//! the shared neighbor leaves no way to be on the far side of the losing
//! branch. With `v = r` in step 1 and `v = u` in step 2 every probe pair
//! keeps the candidate set inside the local root's subtree, which is the
//! invariant the declaration relies on.

use crate::engine::{CatAction, CatObservation, CatStrategy, EngineError, GameConfig};
use crate::graph::{Graph, RootedView, Vertex};

/// Tree strategy with claim radius `4*dmax - 6`. Requires a tree with
/// maximum degree at least 2 (three or more vertices).
pub fn tree_cat() -> Box<dyn CatStrategy> {
    Box::new(TreeCat::new())
}

/// Concrete tree strategy. Exposed so tests can inspect the iteration log;
/// use [`tree_cat`] when a boxed strategy is enough.
#[derive(Clone)]
pub struct TreeCat {
    bound: usize,
    view: Option<RootedView>,
    root: Vertex,
    step: Step,
    /// `(round, local root)` at the start of each narrowing iteration:
    /// the candidate set entering that round is contained in the subtree
    /// of the logged root.
    outer_log: Vec<(usize, Vertex)>,
}

#[derive(Clone)]
enum Step {
    /// Evaluate the outer loop condition and start an iteration.
    Outer,
    /// First probe of a pair has been emitted; emit the second.
    SecondProbe { second: Vertex, inner: Inner },
    /// Both probes of a pair are out; the latest bit decides the pair.
    ReadBit(Inner),
    /// `begin` has not run, or a declaration was already made.
    Idle,
}

/// Which elimination loop the current probe pair belongs to.
#[derive(Clone)]
enum Inner {
    /// Probing siblings `x[0]`, `x[1]` among the surviving children of the
    /// local root.
    Siblings { x: Vec<Vertex> },
    /// Probing `(u, root)` where `u` was popped from `y`, the unchecked
    /// children of the surviving child `r_plus`.
    Children { r_plus: Vertex, y: Vec<Vertex> },
}

impl TreeCat {
    pub fn new() -> Self {
        TreeCat { bound: 0, view: None, root: 0, step: Step::Idle, outer_log: Vec::new() }
    }

    /// Claim radius, `4*dmax - 6`. Meaningful after `begin`.
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Iteration log; see the field doc.
    pub fn outer_log(&self) -> &[(usize, Vertex)] {
        &self.outer_log
    }

    fn declare(&mut self) -> CatAction {
        self.step = Step::Idle;
        CatAction::Done { center: self.root, radius: self.bound }
    }
}

impl Default for TreeCat {
    fn default() -> Self {
        Self::new()
    }
}

impl CatStrategy for TreeCat {
    fn name(&self) -> &'static str {
        "tree"
    }

    fn begin(&mut self, g: &Graph, _cfg: &GameConfig) -> Result<(), EngineError> {
        if !g.is_tree() {
            return Err(EngineError::StrategySetup {
                strategy: "tree".into(),
                reason: "graph is not a tree".into(),
            });
        }
        if g.max_degree() < 2 {
            return Err(EngineError::StrategySetup {
                strategy: "tree".into(),
                reason: "needs maximum degree at least 2".into(),
            });
        }
        self.bound = 4 * g.max_degree() - 6;
        let center = g.tree_center().expect("checked: graph is a tree");
        self.view = Some(g.rooted_view(center).expect("checked: graph is a tree"));
        self.root = center;
        self.step = Step::Outer;
        self.outer_log.clear();
        Ok(())
    }

    fn next(&mut self, obs: &CatObservation) -> CatAction {
        let view = self.view.as_ref().expect("begin not called").clone();
        loop {
            match std::mem::replace(&mut self.step, Step::Idle) {
                Step::Idle => panic!("tree cat asked after declaring"),
                Step::SecondProbe { second, inner } => {
                    self.step = Step::ReadBit(inner);
                    return CatAction::Probe(second);
                }
                Step::Outer => {
                    self.outer_log.push((obs.round, self.root));
                    if view.subtree_depth(self.root) <= self.bound {
                        return self.declare();
                    }
                    let x = view.children(self.root).to_vec();
                    self.step = Step::ReadBit(Inner::Siblings { x });
                    // No pair is outstanding yet; fall through to emit one.
                    if let Step::ReadBit(inner) = std::mem::replace(&mut self.step, Step::Idle) {
                        if let Some(action) = self.advance(inner, None, obs) {
                            return action;
                        }
                    }
                }
                Step::ReadBit(inner) => {
                    let bit = *obs.bits.last().expect("pair completed, bit available");
                    if let Some(action) = self.advance(inner, Some(bit), obs) {
                        return action;
                    }
                }
            }
        }
    }

    fn clone_box(&self) -> Box<dyn CatStrategy> {
        Box::new(self.clone())
    }
}

impl TreeCat {
    /// Apply the bit of a completed pair (or start the first pair when
    /// `bit` is `None`), then either emit the next probe or declare.
    /// Returns `None` when the local root moved and the outer loop must
    /// re-evaluate.
    fn advance(&mut self, inner: Inner, bit: Option<bool>, _obs: &CatObservation) -> Option<CatAction> {
        let view = self.view.as_ref().unwrap();
        match inner {
            Inner::Siblings { mut x } => {
                if let Some(bit) = bit {
                    // Pair was (x[0], x[1]): 1 rules out the first-probed
                    // subtree, 0 the second.
                    let gone = if bit { 0 } else { 1 };
                    x.remove(gone);
                }
                if x.len() >= 2 {
                    let first = x[0];
                    self.step = Step::SecondProbe { second: x[1], inner: Inner::Siblings { x } };
                    Some(CatAction::Probe(first))
                } else {
                    // One child survives; check whether the mouse is in its
                    // subtree deeply enough to matter.
                    let r_plus = x[0];
                    let mut y = view.children(r_plus).to_vec();
                    if y.is_empty() {
                        return Some(self.declare());
                    }
                    let u = y.remove(0);
                    self.step = Step::SecondProbe {
                        second: self.root,
                        inner: Inner::Children { r_plus, y },
                    };
                    Some(CatAction::Probe(u))
                }
            }
            Inner::Children { r_plus, mut y } => {
                let bit = bit.expect("child pairs always complete before reading");
                if !bit {
                    // Mouse answered "closer" on the way back to the root's
                    // side of u, which pins it inside the subtree of r_plus:
                    // descend and start a fresh iteration.
                    self.root = r_plus;
                    self.step = Step::Outer;
                    return None;
                }
                // u's subtree is ruled out; try the next unchecked child.
                if y.is_empty() {
                    return Some(self.declare());
                }
                let u = y.remove(0);
                self.step = Step::SecondProbe {
                    second: self.root,
                    inner: Inner::Children { r_plus, y },
                };
                Some(CatAction::Probe(u))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{candidate_history, play_game, GameConfig};
    use crate::generate::{gen_path, gen_random_tree};
    use crate::graph::Graph;
    use crate::mice::{greedy_evader, random_mouse, stationary_mouse};

    #[test]
    fn rejects_non_trees_and_edges() {
        let cycle = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let cfg = GameConfig::new(10, 1, 0, 0).unwrap();
        let mut cat = TreeCat::new();
        assert!(cat.begin(&cycle, &cfg).is_err());
        let k2 = gen_path(2).unwrap();
        assert!(cat.begin(&k2, &cfg).is_err());
    }

    #[test]
    fn claw_is_declared_without_probing() {
        // Star on four vertices: dmax = 3, claim radius 6, depth 1 from the
        // hub. The first ask already satisfies the outer condition.
        let claw = Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let cfg = GameConfig::new(10, 1, 6, 0).unwrap();
        let mut cat = TreeCat::new();
        let mut mouse = stationary_mouse(4);
        let t = play_game(&claw, &mut cat, mouse.as_mut(), &cfg).unwrap();
        let done = t.done.expect("declares");
        assert_eq!(done.round, 0, "no probes needed");
        assert_eq!(done.center, 1);
        assert_eq!(done.claimed_radius, 6);
        assert_eq!(t.first_success, Some(0));
    }

    #[test]
    fn path_probe_sequence_walks_pairs() {
        // P_9, mouse parked at 9: center 5, dmax 2, claim radius 2,
        // depth 4. The local root should march rightward and declare
        // within the round bound.
        let g = gen_path(9).unwrap();
        let cfg = GameConfig::new(40, 1, 2, 0).unwrap();
        let mut cat = TreeCat::new();
        let mut mouse = stationary_mouse(9);
        let t = play_game(&g, &mut cat, mouse.as_mut(), &cfg).unwrap();
        let done = t.done.expect("declares");
        assert!(done.actual_radius <= 2);
        // Bound: depth from center is 4, dmax = 2, so at most
        // 2 * (4 - 2) * 2 = 8 probing rounds.
        assert!(done.round <= 8, "done at {} > 8", done.round);
        // Local root must have marched toward the mouse.
        let roots: Vec<Vertex> = cat.outer_log().iter().map(|&(_, r)| r).collect();
        assert_eq!(roots.first(), Some(&5));
        for w in roots.windows(2) {
            assert!(g.dist(w[1], 9) < g.dist(w[0], 9));
        }
    }

    #[test]
    fn outer_iterations_keep_candidates_in_subtree() {
        // The declaration is only sound if every narrowing iteration starts
        // with the candidate set inside the local root's subtree. Check the
        // invariant directly against the exact sets.
        for seed in 0..20u64 {
            let g = gen_random_tree(40, 4, seed).unwrap();
            let cfg = GameConfig::new(400, 1, 4 * g.max_degree() - 6, seed).unwrap();
            let mut cat = TreeCat::new();
            let mut mouse = random_mouse(seed ^ 0x9e37);
            let t = play_game(&g, &mut cat, mouse.as_mut(), &cfg).unwrap();
            assert!(t.done.is_some(), "seed {seed}: never declared");
            let hist = candidate_history(&t, &g).unwrap();
            let view = g.rooted_view(g.tree_center().unwrap()).unwrap();
            for &(round, root) in cat.outer_log() {
                if round < 2 {
                    continue; // before any bit, candidates are all of V
                }
                let m_prev = &hist[round - 2];
                for &v in m_prev.members() {
                    assert!(
                        view.in_subtree(v, root),
                        "seed {seed}: round {round}: candidate {v} outside subtree of {root}"
                    );
                }
            }
        }
    }

    #[test]
    fn greedy_evader_cannot_outlast_bound_on_random_trees() {
        for seed in 0..10u64 {
            let g = gen_random_tree(60, 3, seed).unwrap();
            let dmax = g.max_degree();
            let bound = 4 * dmax - 6;
            let center = g.tree_center().unwrap();
            let view = g.rooted_view(center).unwrap();
            let depth = view.subtree_depth(center);
            let round_bound = 2 * depth.saturating_sub(bound) * (2 * dmax - 2);
            let cfg = GameConfig::new(round_bound + 2, 1, bound, seed).unwrap();
            let mut cat = TreeCat::new();
            let mut mouse = greedy_evader();
            let t = play_game(&g, &mut cat, mouse.as_mut(), &cfg).unwrap();
            let done = t.done.unwrap_or_else(|| panic!("seed {seed}: no declaration"));
            assert!(
                done.round <= round_bound,
                "seed {seed}: done at {} > bound {round_bound}",
                done.round
            );
            assert!(done.actual_radius <= bound);
        }
    }
}
