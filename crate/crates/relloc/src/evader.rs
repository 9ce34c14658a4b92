//! Exhaustive escape search: the strongest mouse on small instances.
//!
//! Because every cat here is a deterministic function of the bit history,
//! the whole game against a fixed cat is a finite tree over mouse choices.
//! [`search_escape`] walks it depth first: a branch dies as soon as the
//! exact candidate radius drops to the target (the cat has won), and a
//! branch that keeps the radius above the target through the full horizon
//! is an *escape*, returned as a replayable trajectory. "No escape" is
//! therefore a proof, not an estimate: no mouse behavior whatsoever beats
//! the cat on that instance.
//!
//! [`exhaustive_evader`] wraps the search as a mouse strategy: it searches
//! during setup and then plays the certificate (or sits still if provably
//! caught no matter what). Search order is ascending vertex id, so
//! certificates are deterministic.

use crate::engine::{
    update_candidates, CandidateSet, CatAction, CatObservation, CatStrategy, EngineError,
    GameConfig, MouseObservation, MouseStrategy,
};
use crate::graph::{Graph, Vertex};

/// Hard ceilings keeping the game tree enumerable.
const MAX_N: usize = 10;
const MAX_HORIZON: usize = 12;

/// Result of [`search_escape`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EscapeOutcome {
    /// Some trajectory `m_1..m_T` keeps the candidate radius above the
    /// target every round. Feeding it back through a scripted mouse
    /// reproduces the run bit for bit.
    Escape { trajectory: Vec<Vertex> },
    /// Every trajectory lets the cat localize within the target by the
    /// horizon.
    NoEscape,
}

/// Search all mouse trajectories against `cat` (an unstarted prototype;
/// the search begins its own clones). Uses `cfg.horizon` as the escape
/// horizon and `cfg.target` as the radius the mouse must stay above.
pub fn search_escape(
    g: &Graph,
    cat: &dyn CatStrategy,
    cfg: &GameConfig,
) -> Result<EscapeOutcome, EngineError> {
    if g.n() > MAX_N || cfg.horizon > MAX_HORIZON {
        return Err(EngineError::SearchGuard(format!(
            "escape search limited to n <= {MAX_N}, horizon <= {MAX_HORIZON}; got n = {}, horizon = {}",
            g.n(),
            cfg.horizon
        )));
    }
    let mut root = cat.clone_box();
    root.begin(g, cfg)?;
    let mut st = Search {
        g,
        cfg,
        probes: Vec::new(),
        bits: Vec::new(),
        traj: Vec::new(),
    };
    match st.dfs(root.as_mut(), 1, &CandidateSet::full(g, 0), None)? {
        Some(trajectory) => Ok(EscapeOutcome::Escape { trajectory }),
        None => Ok(EscapeOutcome::NoEscape),
    }
}

struct Search<'a> {
    g: &'a Graph,
    cfg: &'a GameConfig,
    probes: Vec<Vertex>,
    bits: Vec<bool>,
    traj: Vec<Vertex>,
}

impl Search<'_> {
    /// Ask the cat for round `round` (the cat's state must match), then
    /// branch over mouse moves. `mouse` is `(m_{round-1}, d_{round-1})`.
    /// Returns the first escape trajectory in ascending-move order.
    fn dfs(
        &mut self,
        cat: &mut dyn CatStrategy,
        round: usize,
        prev_set: &CandidateSet,
        mouse: Option<(Vertex, usize)>,
    ) -> Result<Option<Vec<Vertex>>, EngineError> {
        let obs = CatObservation {
            graph: self.g,
            round,
            probes: &self.probes,
            bits: &self.bits,
            candidates: prev_set,
        };
        let c = match cat.next(&obs) {
            CatAction::Done { center, radius } => {
                let actual =
                    prev_set.members().iter().map(|&v| self.g.dist(center, v)).max().unwrap_or(0);
                if actual > radius {
                    return Err(EngineError::FalseClaim { round, center, claimed: radius, actual });
                }
                // An honest claim beats the mouse only if the candidate
                // radius is already within the escape target; that covers
                // round-1 declarations, which no prune below has screened.
                if self.g.radius_of_set(prev_set.members()).radius <= self.cfg.target {
                    return Ok(None);
                }
                // The cat stopped short of the target, so every branch
                // sharing this prefix escapes. Pad to the horizon; a
                // round-1 declaration has an empty prefix, where any
                // stationary trajectory certifies the escape.
                let mut t = self.traj.clone();
                while t.len() < self.cfg.horizon {
                    let last = *t.last().unwrap_or(&1);
                    t.push(last);
                }
                return Ok(Some(t));
            }
            CatAction::Probe(c) => c,
        };
        if round > self.cfg.horizon {
            return Ok(Some(self.traj.clone()));
        }
        let moves: Vec<Vertex> = match mouse {
            None => (1..=self.g.n()).collect(),
            Some((m, _)) if self.cfg.may_move(round) => self.g.closed_neighborhood(m),
            Some((m, _)) => vec![m],
        };
        self.probes.push(c);
        for v in moves {
            let d = self.g.dist(c, v);
            let set = match mouse {
                None => CandidateSet::full(self.g, 1),
                Some((_, d_prev)) => {
                    let bit = d <= d_prev;
                    let c_prev = self.probes[self.probes.len() - 2];
                    self.bits.push(bit);
                    match update_candidates(self.g, prev_set, c_prev, c, bit, self.cfg.may_move(round))
                    {
                        Ok(s) => s,
                        Err(e) => {
                            self.bits.pop();
                            self.probes.pop();
                            return Err(e);
                        }
                    }
                }
            };
            debug_assert!(set.contains(v), "search lost the mouse it is simulating");
            let escaped = if self.g.radius_of_set(set.members()).radius <= self.cfg.target {
                None // cat wins this branch
            } else {
                self.traj.push(v);
                let mut child = cat.clone_box();
                let out = self.dfs(child.as_mut(), round + 1, &set, Some((v, d)))?;
                self.traj.pop();
                out
            };
            if mouse.is_some() {
                self.bits.pop();
            }
            if let Some(t) = escaped {
                self.probes.pop();
                return Ok(Some(t));
            }
        }
        self.probes.pop();
        Ok(None)
    }
}

/// Mouse that searches the full game tree during setup and plays the
/// escape certificate if one exists. `horizon` and `target` are the
/// escape parameters (the game's own horizon may be longer; past the
/// certificate the mouse stays put). Requires the very cat prototype the
/// game will run, since the search must simulate it.
pub fn exhaustive_evader(
    cat: Box<dyn CatStrategy>,
    horizon: usize,
    target: usize,
) -> Box<dyn MouseStrategy> {
    Box::new(ExhaustiveEvader { cat, horizon, target, certificate: None })
}

/// Concrete exhaustive evader; exposed so tests and the CLI can extract
/// the certificate after `begin`.
pub struct ExhaustiveEvader {
    cat: Box<dyn CatStrategy>,
    horizon: usize,
    target: usize,
    certificate: Option<Vec<Vertex>>,
}

impl ExhaustiveEvader {
    /// The escape trajectory, if the search found one. Meaningful after
    /// `begin`.
    pub fn certificate(&self) -> Option<&[Vertex]> {
        self.certificate.as_deref()
    }
}

impl MouseStrategy for ExhaustiveEvader {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn begin(&mut self, g: &Graph, cfg: &GameConfig) -> Result<(), EngineError> {
        let search_cfg = GameConfig::new(self.horizon, cfg.slowness, self.target, cfg.seed)?;
        self.certificate = match search_escape(g, self.cat.as_ref(), &search_cfg)? {
            EscapeOutcome::Escape { trajectory } => Some(trajectory),
            EscapeOutcome::NoEscape => None,
        };
        Ok(())
    }

    fn next(&mut self, obs: &MouseObservation) -> Vertex {
        match &self.certificate {
            Some(t) => t[(obs.round - 1).min(t.len() - 1)],
            // Provably caught: where the mouse sits cannot matter.
            None => obs.current.unwrap_or(1),
        }
    }

    fn clone_box(&self) -> Box<dyn MouseStrategy> {
        Box::new(ExhaustiveEvader {
            cat: self.cat.clone_box(),
            horizon: self.horizon,
            target: self.target,
            certificate: self.certificate.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cats::{random_cat, tree_cat};
    use crate::engine::play_game;
    use crate::generate::gen_path;
    use crate::mice::scripted_mouse;

    #[test]
    fn guards_reject_large_instances() {
        let g = gen_path(11).unwrap();
        let cfg = GameConfig::new(4, 1, 0, 0).unwrap();
        assert!(matches!(
            search_escape(&g, random_cat(0).as_ref(), &cfg),
            Err(EngineError::SearchGuard(_))
        ));
        let g = gen_path(4).unwrap();
        let cfg = GameConfig::new(13, 1, 0, 0).unwrap();
        assert!(matches!(
            search_escape(&g, random_cat(0).as_ref(), &cfg),
            Err(EngineError::SearchGuard(_))
        ));
    }

    #[test]
    fn no_trajectory_beats_the_tree_cat_on_p9() {
        // Claim radius 2, round bound 2 * (4 - 2) * 2 = 8: not even with
        // full knowledge of the cat can the mouse stay rough-located.
        let g = gen_path(9).unwrap();
        let cfg = GameConfig::new(8, 1, 2, 0).unwrap();
        let out = search_escape(&g, tree_cat().as_ref(), &cfg).unwrap();
        assert_eq!(out, EscapeOutcome::NoEscape);
    }

    #[test]
    fn impossible_target_is_never_escaped() {
        // rad(M_1) = rad(V) <= n - 1 always, so target n - 1 prunes
        // everything at round 1.
        let g = gen_path(5).unwrap();
        let cfg = GameConfig::new(6, 1, 4, 0).unwrap();
        let out = search_escape(&g, random_cat(3).as_ref(), &cfg).unwrap();
        assert_eq!(out, EscapeOutcome::NoEscape);
    }

    #[test]
    fn k2_certificate_replays_identically() {
        // On K_2 a random cat never pins the mouse: the searched
        // trajectory must keep the radius positive for the whole horizon,
        // and replaying it through a scripted mouse reproduces that.
        let g = gen_path(2).unwrap();
        let cfg = GameConfig::new(6, 1, 0, 7).unwrap();
        let out = search_escape(&g, random_cat(7).as_ref(), &cfg).unwrap();
        let trajectory = match out {
            EscapeOutcome::Escape { trajectory } => trajectory,
            EscapeOutcome::NoEscape => panic!("escape must exist on K_2"),
        };
        assert_eq!(trajectory.len(), 6);
        let mut cat = random_cat(7);
        let mut mouse = scripted_mouse(trajectory.clone());
        let t = play_game(&g, cat.as_mut(), mouse.as_mut(), &cfg).unwrap();
        assert!(t.rounds.iter().all(|r| r.m_radius > 0));
        assert_eq!(t.first_success, None);
        assert_eq!(t.mouse_path(), trajectory);
    }

    #[test]
    fn evader_mouse_plays_its_certificate() {
        let g = gen_path(9).unwrap();
        // Against a random cat, staying farther than radius 2 for 6 rounds
        // is easy; the mouse should find and play such a line.
        let cfg = GameConfig::new(6, 1, 2, 0).unwrap();
        let mut cat = random_cat(11);
        let mut mouse = exhaustive_evader(random_cat(11), 6, 2);
        let t = play_game(&g, cat.as_mut(), mouse.as_mut(), &cfg).unwrap();
        assert!(t.rounds.iter().all(|r| r.m_radius > 2));
    }

    #[test]
    fn evader_mouse_survives_play_when_provably_caught() {
        // No escape exists against the tree cat; the mouse must still play
        // legally and the cat must still declare correctly.
        let g = gen_path(9).unwrap();
        let cfg = GameConfig::new(10, 1, 2, 0).unwrap();
        let mut cat = tree_cat();
        let mut mouse = exhaustive_evader(tree_cat(), 8, 2);
        let t = play_game(&g, cat.as_mut(), mouse.as_mut(), &cfg).unwrap();
        let done = t.done.expect("tree cat declares");
        assert!(done.round <= 8);
        assert!(done.actual_radius <= 2);
    }
}
