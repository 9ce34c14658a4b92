//! The referee: runs games round by round, computes distances and feedback
//! bits, maintains the exact candidate set by forward dynamic programming,
//! enforces movement rules (including k-slowness), validates every
//! localization claim, and records replayable traces.
//!
//! # Round structure
//!
//! Round `i` consists of: the cat commits a probe `c_i` (a deterministic
//! function of the bits seen so far), the mouse commits `m_i` without seeing
//! `c_i`, the referee computes `d_i = dist(c_i, m_i)` and, for `i >= 2`, the
//! bit `b_i = [d_i <= d_{i-1}]`. Instead of probing, the cat may declare
//! `Done(center, radius)`, claiming every consistent mouse position lies
//! within `radius` of `center`; the referee checks the claim against the
//! exact candidate set and fails the game if it is false.
//!
//! # Candidate sets
//!
//! `M_i` is the set of vertices the mouse could occupy at round `i` given
//! the graph, the probes, and the bits — exactly, not approximately. Since
//! each bit constrains only the pair `(m_{i-1}, m_i)`, the set is computed
//! by a single forward pass per round ([`update_candidates`]), and
//! [`brute_force_candidates`] re-derives it by enumerating whole
//! trajectories as an independent oracle for tests.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid game config: {0}")]
    InvalidConfig(String),
    #[error("strategy {strategy} cannot play this game: {reason}")]
    StrategySetup { strategy: String, reason: String },
    #[error("round {round}: cat probed {probe}, not a vertex of the graph")]
    IllegalProbe { round: usize, probe: Vertex },
    #[error("round {round}: mouse moved {from} -> {to}, not within the closed neighborhood")]
    IllegalMove { round: usize, from: Vertex, to: Vertex },
    #[error("round {round}: mouse moved {from} -> {to} in a frozen round")]
    FrozenMove { round: usize, from: Vertex, to: Vertex },
    #[error("round {round}: mouse placed at {vertex}, not a vertex of the graph")]
    IllegalPlacement { round: usize, vertex: Vertex },
    #[error("round {round}: candidate set became empty (inconsistent bit sequence)")]
    EmptyCandidates { round: usize },
    #[error(
        "round {round}: soundness violation, mouse at {mouse} missing from the candidate set"
    )]
    SoundnessViolation { round: usize, mouse: Vertex },
    #[error(
        "round {round}: false claim Done({center}, {claimed}): a candidate sits at distance {actual}"
    )]
    FalseClaim { round: usize, center: Vertex, claimed: usize, actual: usize },
    #[error("search guard violated: {0}")]
    SearchGuard(String),
}

/// Per-game parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GameConfig {
    /// Maximum number of rounds to play.
    pub horizon: usize,
    /// Slowness k: the mouse may change vertex only in rounds i with
    /// (i - 1) divisible by k. k = 1 is the unrestricted game.
    pub slowness: usize,
    /// Localization threshold: `first_success` records the first round with
    /// candidate radius at most this value.
    pub target: usize,
    /// Seed for stochastic strategies.
    pub seed: u64,
}

impl GameConfig {
    pub fn new(horizon: usize, slowness: usize, target: usize, seed: u64) -> Result<Self, EngineError> {
        let cfg = GameConfig { horizon, slowness, target, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.horizon < 1 {
            return Err(EngineError::InvalidConfig("horizon must be at least 1".into()));
        }
        if self.slowness < 1 {
            return Err(EngineError::InvalidConfig("slowness must be at least 1".into()));
        }
        Ok(())
    }

    /// Whether the mouse may change vertex in round `round`. Round 1 is the
    /// free placement; afterwards movement is allowed every k-th round.
    pub fn may_move(&self, round: usize) -> bool {
        round == 1 || (round - 1) % self.slowness == 0
    }
}

/// The exact set of mouse positions consistent with all observations, kept
/// sorted ascending. `round` is the index of the last incorporated round
/// (0 for the no-information set, which is all of V).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    members: Vec<Vertex>,
    round: usize,
}

impl CandidateSet {
    /// The no-information set: every vertex of the graph.
    pub fn full(g: &Graph, round: usize) -> CandidateSet {
        CandidateSet { members: (1..=g.n()).collect(), round }
    }

    /// Builds from an explicit member list (sorted and deduplicated here).
    pub fn from_members(mut members: Vec<Vertex>, round: usize) -> CandidateSet {
        members.sort_unstable();
        members.dedup();
        CandidateSet { members, round }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// One-round forward update of the candidate set.
///
/// A vertex `v` survives into the new set exactly when some `u` in the old
/// set could have been the previous position — `v` in `N[u]`, or `v = u`
/// when the round is frozen — and the observed bit matches:
/// `bit = [dist(c_cur, v) <= dist(c_prev, u)]`.
///
/// An empty result is reported as an error rather than an empty set: against
/// a legal mouse the true position always survives, so emptiness means the
/// fed bit sequence was not realizable (or the caller has a bug).
pub fn update_candidates(
    g: &Graph,
    prev: &CandidateSet,
    c_prev: Vertex,
    c_cur: Vertex,
    bit: bool,
    mouse_may_move: bool,
) -> Result<CandidateSet, EngineError> {
    debug_assert!(!prev.is_empty(), "update from empty candidate set");
    debug_assert!(g.contains(c_prev) && g.contains(c_cur));
    // For bit = 1 a vertex v needs SOME predecessor u with
    // dist(c_prev, u) >= dist(c_cur, v), so only the maximum of
    // dist(c_prev, u) over predecessors matters; for bit = 0 it needs
    // dist(c_prev, u) < dist(c_cur, v), so only the minimum does.
    const UNSET: u32 = u32::MAX;
    let mut agg = vec![UNSET; g.n()];
    let mut touched: Vec<Vertex> = Vec::with_capacity(prev.len() * 2);
    let note = |v: Vertex, du: u32, agg: &mut [u32], touched: &mut Vec<Vertex>| {
        let slot = &mut agg[v - 1];
        if *slot == UNSET {
            *slot = du;
            touched.push(v);
        } else if bit {
            *slot = (*slot).max(du);
        } else {
            *slot = (*slot).min(du);
        }
    };
    for &u in prev.members() {
        let du = g.dist(c_prev, u) as u32;
        note(u, du, &mut agg, &mut touched);
        if mouse_may_move {
            for &v in g.neighbors(u) {
                note(v, du, &mut agg, &mut touched);
            }
        }
    }
    let mut members: Vec<Vertex> = touched
        .into_iter()
        .filter(|&v| {
            let dv = g.dist(c_cur, v) as u32;
            if bit {
                dv <= agg[v - 1]
            } else {
                dv > agg[v - 1]
            }
        })
        .collect();
    members.sort_unstable();
    let round = prev.round() + 1;
    if members.is_empty() {
        return Err(EngineError::EmptyCandidates { round });
    }
    Ok(CandidateSet { members, round })
}

/// Independent oracle for [`update_candidates`]: enumerates every mouse
/// trajectory consistent with the probes, the bits, and the k-slow rule, and
/// collects the final vertices. Exponential; guarded to `n <= 10` and at
/// most 8 rounds.
///
/// Unlike the incremental update, an empty result is returned as an empty
/// set: the oracle is also used to certify that unrealizable bit sequences
/// are recognized as such.
pub fn brute_force_candidates(
    g: &Graph,
    probes: &[Vertex],
    bits: &[bool],
    slowness: usize,
) -> Result<CandidateSet, EngineError> {
    if g.n() > 10 || probes.len() > 8 {
        return Err(EngineError::SearchGuard(format!(
            "brute-force enumeration guarded to n <= 10 and 8 rounds, got n = {}, rounds = {}",
            g.n(),
            probes.len()
        )));
    }
    if probes.is_empty() || bits.len() + 1 != probes.len() {
        return Err(EngineError::SearchGuard(
            "need one probe per round and one bit per round from the second".into(),
        ));
    }
    if slowness < 1 {
        return Err(EngineError::InvalidConfig("slowness must be at least 1".into()));
    }
    let rounds = probes.len();
    let mut finals = Vec::new();
    // Depth-first over trajectories; prefix distances carried on the stack.
    let mut stack: Vec<(usize, Vertex, usize)> = Vec::new(); // (round, m, d)
    for v in 1..=g.n() {
        stack.push((1, v, g.dist(probes[0], v)));
    }
    while let Some((i, m, d)) = stack.pop() {
        if i == rounds {
            finals.push(m);
            continue;
        }
        let next_round = i + 1;
        let may_move = (next_round - 1) % slowness == 0;
        let consider = |m2: Vertex, stack: &mut Vec<(usize, Vertex, usize)>| {
            let d2 = g.dist(probes[next_round - 1], m2);
            if (d2 <= d) == bits[next_round - 2] {
                stack.push((next_round, m2, d2));
            }
        };
        consider(m, &mut stack);
        if may_move {
            for &m2 in g.neighbors(m) {
                consider(m2, &mut stack);
            }
        }
    }
    Ok(CandidateSet::from_members(finals, rounds))
}

/// What the cat sees when asked for its round-`round` action: everything it
/// has observed so far, plus the exact candidate set, but never the mouse.
pub struct CatObservation<'a> {
    pub graph: &'a Graph,
    /// The round the requested action will play in.
    pub round: usize,
    /// Probes c_1 .. c_{round-1}.
    pub probes: &'a [Vertex],
    /// Bits b_2 .. b_{round-1}.
    pub bits: &'a [bool],
    /// Candidate set after round `round - 1` (all of V before round 1).
    pub candidates: &'a CandidateSet,
}

/// What the mouse sees when choosing `m_round`: history strictly before the
/// current round, since both players commit simultaneously within a round.
///
/// `upcoming_probe` is the probe the cat has committed for this round. The
/// mouse could derive it itself — the cat is a deterministic function of the
/// bits, all of which the mouse has seen — so exposing it grants no
/// information beyond the mouse's knowledge of the cat's strategy; it merely
/// saves every adversary from re-simulating the cat.
pub struct MouseObservation<'a> {
    pub graph: &'a Graph,
    pub round: usize,
    /// Probes c_1 .. c_{round-1}.
    pub probes: &'a [Vertex],
    /// Bits b_2 .. b_{round-1}.
    pub bits: &'a [bool],
    /// Candidate set after round `round - 1`.
    pub candidates: &'a CandidateSet,
    /// The cat's committed probe for this round.
    pub upcoming_probe: Vertex,
    /// Whether the mouse may change vertex this round.
    pub may_move: bool,
    /// The mouse's own position from the previous round (None in round 1).
    pub current: Option<Vertex>,
    /// Identifier of the cat strategy in play.
    pub cat_name: &'a str,
}

/// A cat strategy's answer when asked for its next action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatAction {
    Probe(Vertex),
    /// Claim that every consistent mouse position is within `radius` of
    /// `center`. The referee validates this against the exact candidate set.
    Done { center: Vertex, radius: usize },
}

/// A deterministic probing strategy, driven one action at a time.
///
/// Strategies are single-game state machines: `begin` validates the
/// graph/config pair and resets state, then `next` is called once per round
/// (plus once more after the horizon, giving a final chance to declare).
pub trait CatStrategy: Send {
    fn name(&self) -> &'static str;
    fn begin(&mut self, g: &Graph, cfg: &GameConfig) -> Result<(), EngineError>;
    fn next(&mut self, obs: &CatObservation) -> CatAction;
    /// Clones the strategy mid-game; used by search adversaries to branch.
    fn clone_box(&self) -> Box<dyn CatStrategy>;
}

/// A mouse strategy: chooses the placement in round 1 and a move within the
/// closed neighborhood (respecting frozen rounds) afterwards.
pub trait MouseStrategy: Send {
    fn name(&self) -> &'static str;
    fn begin(&mut self, g: &Graph, cfg: &GameConfig) -> Result<(), EngineError>;
    fn next(&mut self, obs: &MouseObservation) -> Vertex;
    fn clone_box(&self) -> Box<dyn MouseStrategy>;
}

/// One played round, as recorded in traces. The mouse position is referee
/// knowledge: strategies never see it, traces carry it for verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    pub probe: Vertex,
    pub mouse: Vertex,
    pub dist: usize,
    /// Feedback bit; None in round 1, where there is no previous distance.
    pub bit: Option<bool>,
    pub m_size: usize,
    pub m_radius: usize,
    pub m_center: Vertex,
}

/// A validated localization claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoneRecord {
    /// Number of rounds played when the claim was made (0 = before any probe).
    pub round: usize,
    pub center: Vertex,
    pub claimed_radius: usize,
    /// Realized max distance from the center over the candidate set.
    pub actual_radius: usize,
}

/// Complete record of one game.
#[derive(Debug, Clone)]
pub struct GameTrace {
    pub n: usize,
    pub cat_name: String,
    pub mouse_name: String,
    pub config: GameConfig,
    pub rounds: Vec<RoundRecord>,
    pub done: Option<DoneRecord>,
    /// First round whose candidate radius was at most the config target;
    /// 0 when the whole graph already qualifies (zero probes needed).
    pub first_success: Option<usize>,
}

impl GameTrace {
    /// Radius of the candidate set at the end of the game: the validated
    /// claim's realized radius if the cat declared, otherwise the last
    /// round's radius (the whole-graph radius for zero-round games is not
    /// recorded and reads as None).
    pub fn final_radius(&self) -> Option<usize> {
        self.done
            .map(|d| d.actual_radius)
            .or_else(|| self.rounds.last().map(|r| r.m_radius))
    }

    /// The mouse trajectory m_1 .. m_last.
    pub fn mouse_path(&self) -> Vec<Vertex> {
        self.rounds.iter().map(|r| r.mouse).collect()
    }

    /// Serializes one line per round: keys i, c, m, d, b (null in round 1),
    /// m_size, m_radius, m_center; on grid-shaped graphs also the probe
    /// coordinates cx, cy. LF line endings.
    pub fn to_jsonl(&self, g: &Graph) -> String {
        use serde_json::json;
        let mut out = String::new();
        for r in &self.rounds {
            let mut line = json!({
                "i": r.round,
                "c": r.probe,
                "m": r.mouse,
                "d": r.dist,
                "b": r.bit.map(u8::from),
                "m_size": r.m_size,
                "m_radius": r.m_radius,
                "m_center": r.m_center,
            });
            if let Some(shape) = g.shape() {
                let (cx, cy) = shape.xy(r.probe);
                line["cx"] = cx.into();
                line["cy"] = cy.into();
            }
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }

    /// Single-object JSON summary of the game outcome.
    pub fn to_summary_json(&self) -> String {
        use serde_json::json;
        let done = self.done.map(|d| {
            json!({
                "round": d.round,
                "center": d.center,
                "claimed_radius": d.claimed_radius,
                "actual_radius": d.actual_radius,
            })
        });
        json!({
            "n": self.n,
            "cat": self.cat_name,
            "mouse": self.mouse_name,
            "config": {
                "horizon": self.config.horizon,
                "slowness": self.config.slowness,
                "target": self.config.target,
                "seed": self.config.seed,
            },
            "rounds": self.rounds.len(),
            "first_success": self.first_success,
            "final_radius": self.final_radius(),
            "done": done,
        })
        .to_string()
    }
}

/// Validates a Done claim against the candidate set: every candidate must
/// lie within the claimed radius of the claimed center.
fn validate_claim(
    g: &Graph,
    candidates: &CandidateSet,
    center: Vertex,
    claimed: usize,
    rounds_played: usize,
) -> Result<DoneRecord, EngineError> {
    if !g.contains(center) {
        return Err(EngineError::IllegalProbe { round: rounds_played + 1, probe: center });
    }
    let actual = candidates.members().iter().map(|&m| g.dist(center, m)).max().unwrap_or(0);
    if actual > claimed {
        return Err(EngineError::FalseClaim {
            round: rounds_played,
            center,
            claimed,
            actual,
        });
    }
    Ok(DoneRecord { round: rounds_played, center, claimed_radius: claimed, actual_radius: actual })
}

/// Runs one game to the horizon or until the cat declares. See the module
/// documentation for the round structure. Errors abort the game and name
/// the offending round.
pub fn play_game(
    g: &Graph,
    cat: &mut dyn CatStrategy,
    mouse: &mut dyn MouseStrategy,
    cfg: &GameConfig,
) -> Result<GameTrace, EngineError> {
    cfg.validate()?;
    cat.begin(g, cfg)?;
    mouse.begin(g, cfg)?;

    let mut probes: Vec<Vertex> = Vec::new();
    let mut bits: Vec<bool> = Vec::new();
    let mut rounds: Vec<RoundRecord> = Vec::new();
    let mut candidates = CandidateSet::full(g, 0);
    let mut mouse_pos: Option<Vertex> = None;
    let mut prev_dist = 0usize;
    // Round 0 counts: if the whole graph is already within the target
    // radius, localization succeeds with zero probes.
    let mut first_success =
        (g.radius_of_set(candidates.members()).radius <= cfg.target).then_some(0);
    let mut done = None;

    // One extra iteration past the horizon gives the cat a final chance to
    // declare on the last bit; it may not probe there.
    for i in 1..=cfg.horizon + 1 {
        let obs = CatObservation { graph: g, round: i, probes: &probes, bits: &bits, candidates: &candidates };
        let action = cat.next(&obs);
        let c = match action {
            CatAction::Done { center, radius } => {
                done = Some(validate_claim(g, &candidates, center, radius, i - 1)?);
                break;
            }
            CatAction::Probe(c) => {
                if i > cfg.horizon {
                    break;
                }
                c
            }
        };
        if !g.contains(c) {
            return Err(EngineError::IllegalProbe { round: i, probe: c });
        }

        let may_move = cfg.may_move(i);
        let m = {
            let obs = MouseObservation {
                graph: g,
                round: i,
                probes: &probes,
                bits: &bits,
                candidates: &candidates,
                upcoming_probe: c,
                may_move,
                current: mouse_pos,
                cat_name: cat.name(),
            };
            mouse.next(&obs)
        };
        match mouse_pos {
            None => {
                if !g.contains(m) {
                    return Err(EngineError::IllegalPlacement { round: i, vertex: m });
                }
            }
            Some(prev) if m != prev => {
                if !may_move {
                    return Err(EngineError::FrozenMove { round: i, from: prev, to: m });
                }
                if !g.contains(m) || g.neighbors(prev).binary_search(&m).is_err() {
                    return Err(EngineError::IllegalMove { round: i, from: prev, to: m });
                }
            }
            Some(_) => {}
        }

        let d = g.dist(c, m);
        let bit = if i >= 2 { Some(d <= prev_dist) } else { None };
        candidates = match bit {
            None => CandidateSet::full(g, 1),
            Some(b) => update_candidates(g, &candidates, *probes.last().unwrap(), c, b, may_move)?,
        };
        if !candidates.contains(m) {
            return Err(EngineError::SoundnessViolation { round: i, mouse: m });
        }
        let rq = g.radius_of_set(candidates.members());
        if first_success.is_none() && rq.radius <= cfg.target {
            first_success = Some(i);
        }
        rounds.push(RoundRecord {
            round: i,
            probe: c,
            mouse: m,
            dist: d,
            bit,
            m_size: candidates.len(),
            m_radius: rq.radius,
            m_center: rq.center,
        });
        probes.push(c);
        if let Some(b) = bit {
            bits.push(b);
        }
        prev_dist = d;
        mouse_pos = Some(m);
    }

    Ok(GameTrace {
        n: g.n(),
        cat_name: cat.name().to_string(),
        mouse_name: mouse.name().to_string(),
        config: *cfg,
        rounds,
        done,
        first_success,
    })
}

/// A verification failure found in a trace, naming the first bad round.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("trace invalid at round {round}: {reason}")]
pub struct TraceError {
    pub round: usize,
    pub reason: String,
}

/// Recomputes every distance, bit, candidate set, radius and legality check
/// in a trace from scratch and reports the first inconsistency.
pub fn verify_trace(trace: &GameTrace, g: &Graph) -> Result<(), TraceError> {
    let fail = |round: usize, reason: String| Err(TraceError { round, reason });
    if trace.n != g.n() {
        return fail(0, format!("trace is for order {}, graph has {}", trace.n, g.n()));
    }
    let mut candidates = CandidateSet::full(g, 0);
    let mut prev: Option<&RoundRecord> = None;
    for r in &trace.rounds {
        let i = r.round;
        if i != prev.map_or(1, |p| p.round + 1) {
            return fail(i, "rounds are not consecutive from 1".into());
        }
        if !g.contains(r.probe) {
            return fail(i, format!("probe {} out of range", r.probe));
        }
        if !g.contains(r.mouse) {
            return fail(i, format!("mouse {} out of range", r.mouse));
        }
        let may_move = trace.config.may_move(i);
        if let Some(p) = prev {
            if r.mouse != p.mouse {
                if !may_move {
                    return fail(i, format!("mouse moved {} -> {} in a frozen round", p.mouse, r.mouse));
                }
                if g.neighbors(p.mouse).binary_search(&r.mouse).is_err() {
                    return fail(i, format!("mouse moved {} -> {}, not adjacent", p.mouse, r.mouse));
                }
            }
        }
        let d = g.dist(r.probe, r.mouse);
        if d != r.dist {
            return fail(i, format!("distance {} recorded, {} recomputed", r.dist, d));
        }
        let bit = prev.map(|p| d <= p.dist);
        if bit != r.bit {
            return fail(i, format!("bit {:?} recorded, {:?} recomputed", r.bit, bit));
        }
        candidates = match bit {
            None => CandidateSet::full(g, 1),
            Some(b) => {
                match update_candidates(g, &candidates, prev.unwrap().probe, r.probe, b, may_move) {
                    Ok(c) => c,
                    Err(e) => return fail(i, format!("candidate update failed: {e}")),
                }
            }
        };
        if !candidates.contains(r.mouse) {
            return fail(i, format!("mouse {} missing from the candidate set", r.mouse));
        }
        if candidates.len() != r.m_size {
            return fail(i, format!("candidate count {} recorded, {} recomputed", r.m_size, candidates.len()));
        }
        let rq = g.radius_of_set(candidates.members());
        if rq.radius != r.m_radius || rq.center != r.m_center {
            return fail(
                i,
                format!(
                    "radius/center ({}, {}) recorded, ({}, {}) recomputed",
                    r.m_radius, r.m_center, rq.radius, rq.center
                ),
            );
        }
        prev = Some(r);
    }
    if let Some(d) = trace.done {
        if d.round != trace.rounds.len() {
            return fail(d.round, "claim round does not match the played rounds".into());
        }
        let actual = candidates.members().iter().map(|&m| g.dist(d.center, m)).max().unwrap_or(0);
        if actual != d.actual_radius || actual > d.claimed_radius {
            return fail(
                d.round,
                format!(
                    "claim Done({}, {}) has realized radius {actual}, recorded {}",
                    d.center, d.claimed_radius, d.actual_radius
                ),
            );
        }
    }
    let all: Vec<Vertex> = (1..=g.n()).collect();
    let recomputed_first = if g.radius_of_set(&all).radius <= trace.config.target {
        Some(0)
    } else {
        trace.rounds.iter().find(|r| r.m_radius <= trace.config.target).map(|r| r.round)
    };
    if recomputed_first != trace.first_success {
        return fail(
            trace.rounds.len(),
            format!("first_success {:?} recorded, {:?} recomputed", trace.first_success, recomputed_first),
        );
    }
    Ok(())
}

/// Recomputes the candidate set after every round of a trace. Entry `j`
/// holds the set after round `j + 1`.
pub fn candidate_history(trace: &GameTrace, g: &Graph) -> Result<Vec<CandidateSet>, EngineError> {
    let mut out = Vec::with_capacity(trace.rounds.len());
    let mut candidates = CandidateSet::full(g, 0);
    let mut prev: Option<&RoundRecord> = None;
    for r in &trace.rounds {
        candidates = match prev {
            None => CandidateSet::full(g, 1),
            Some(p) => update_candidates(
                g,
                &candidates,
                p.probe,
                r.probe,
                r.bit.expect("bit present from round 2"),
                trace.config.may_move(r.round),
            )?,
        };
        out.push(candidates.clone());
        prev = Some(r);
    }
    Ok(out)
}
