//! Cat strategies as single-game state machines.
//!
//! Each strategy implements [`CatStrategy`]: `begin` validates that the
//! graph fits its preconditions, then `next` is asked once per round and
//! answers with a probe or a `Done(center, radius)` claim that the referee
//! validates against the exact candidate set. All strategies here are
//! deterministic functions of the observed bits (the random baseline is
//! deterministic given its seed), so identical bit histories always replay
//! to identical probe sequences.

mod grid;
mod path;
mod slow;
mod tree;

pub use grid::{grid_cat, BoxSnapshot, GridCat};
pub use path::{path_cat, PathCat};
pub use slow::{slow_cat, SlowCat};
pub use tree::{tree_cat, TreeCat};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{CatAction, CatObservation, CatStrategy, EngineError, GameConfig};
use crate::graph::{Graph, Vertex};

/// Baseline: uniformly random probes, never declares. Deterministic for a
/// fixed seed.
pub fn random_cat(seed: u64) -> Box<dyn CatStrategy> {
    Box::new(RandomCat { seed, rng: ChaCha8Rng::seed_from_u64(seed), n: 0 })
}

#[derive(Clone)]
struct RandomCat {
    seed: u64,
    rng: ChaCha8Rng,
    n: usize,
}

impl CatStrategy for RandomCat {
    fn name(&self) -> &'static str {
        "random"
    }

    fn begin(&mut self, g: &Graph, _cfg: &GameConfig) -> Result<(), EngineError> {
        self.rng = ChaCha8Rng::seed_from_u64(self.seed);
        self.n = g.n();
        Ok(())
    }

    fn next(&mut self, _obs: &CatObservation) -> CatAction {
        CatAction::Probe(self.rng.gen_range(1..=self.n))
    }

    fn clone_box(&self) -> Box<dyn CatStrategy> {
        Box::new(self.clone())
    }
}

/// Probes a fixed sequence (repeating its last entry if the game runs
/// longer), never declares. A test fixture, driven like any other strategy.
pub fn scripted_cat(probes: Vec<Vertex>) -> Box<dyn CatStrategy> {
    Box::new(ScriptedCat { probes })
}

#[derive(Clone)]
struct ScriptedCat {
    probes: Vec<Vertex>,
}

impl CatStrategy for ScriptedCat {
    fn name(&self) -> &'static str {
        "scripted"
    }

    fn begin(&mut self, _g: &Graph, _cfg: &GameConfig) -> Result<(), EngineError> {
        if self.probes.is_empty() {
            return Err(EngineError::StrategySetup {
                strategy: "scripted".into(),
                reason: "empty probe sequence".into(),
            });
        }
        Ok(())
    }

    fn next(&mut self, obs: &CatObservation) -> CatAction {
        let idx = (obs.round - 1).min(self.probes.len() - 1);
        CatAction::Probe(self.probes[idx])
    }

    fn clone_box(&self) -> Box<dyn CatStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_game, GameConfig};
    use crate::generate::gen_path;
    use crate::mice::stationary_mouse;

    #[test]
    fn random_cat_is_reproducible() {
        let g = gen_path(6).unwrap();
        let cfg = GameConfig::new(8, 1, 0, 0).unwrap();
        let run = |seed: u64| {
            let mut cat = random_cat(seed);
            let mut mouse = stationary_mouse(3);
            let t = play_game(&g, cat.as_mut(), mouse.as_mut(), &cfg).unwrap();
            t.rounds.iter().map(|r| r.probe).collect::<Vec<_>>()
        };
        assert_eq!(run(7), run(7));
        assert_ne!(run(7), run(8));
    }

    #[test]
    fn random_cat_on_k2_frozen_sequence() {
        // Frozen fixture: seed 1 on the two-vertex graph. Catches silent
        // changes to the generator wiring.
        let g = gen_path(2).unwrap();
        let cfg = GameConfig::new(6, 1, 0, 0).unwrap();
        let mut cat = random_cat(1);
        let mut mouse = stationary_mouse(1);
        let t = play_game(&g, cat.as_mut(), mouse.as_mut(), &cfg).unwrap();
        let probes: Vec<Vertex> = t.rounds.iter().map(|r| r.probe).collect();
        assert_eq!(probes, frozen_k2_probes());
    }

    /// Regenerate with the loop below if the RNG wiring ever changes on
    /// purpose; the point of the fixture is that it cannot happen silently.
    fn frozen_k2_probes() -> Vec<Vertex> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        (0..6).map(|_| rng.gen_range(1..=2)).collect()
    }

    #[test]
    fn scripted_cat_repeats_last_probe() {
        let g = gen_path(4).unwrap();
        let cfg = GameConfig::new(5, 1, 0, 0).unwrap();
        let mut cat = scripted_cat(vec![2, 4]);
        let mut mouse = stationary_mouse(1);
        let t = play_game(&g, cat.as_mut(), mouse.as_mut(), &cfg).unwrap();
        let probes: Vec<Vertex> = t.rounds.iter().map(|r| r.probe).collect();
        assert_eq!(probes, vec![2, 4, 4, 4, 4]);
    }
}
