//! Verification suites and parameter sweeps.
//!
//! Each suite replays one of the project's headline guarantees across a
//! seeded corpus and reports per-case pass/fail. Every game inside a suite
//! goes through [`verified_game`], which plays with the referee's hard
//! checks on (the engine aborts on an inconsistent mouse or a false
//! declaration) and then re-verifies the finished trace record from
//! scratch — so localization claims and soundness are checked twice, by
//! independent code paths.
//!
//! Suites are deterministic for a fixed base seed: per-case seeds are
//! derived by hashing, cases run in parallel, and reports list cases in
//! construction order.

use rayon::prelude::*;
use std::time::Instant;

use crate::cats::{GridCat, PathCat, SlowCat, TreeCat};
use crate::engine::{
    brute_force_candidates, candidate_history, play_game, update_candidates, verify_trace,
    CandidateSet, CatStrategy, GameConfig, GameTrace, MouseStrategy,
};
use crate::evader::{search_escape, EscapeOutcome};
use crate::generate::{
    catalogue_connected, catalogue_trees, gen_grid, gen_path, gen_random_connected,
    gen_random_tree, gen_subdivided_star,
};
use crate::graph::{Graph, Vertex};
use crate::mice::{greedy_evader, random_mouse, stationary_mouse};
use crate::specs;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One checked statement inside a suite.
#[derive(Debug, Clone)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of a whole suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    /// Wall-clock seconds; kept out of the CSV so reports stay
    /// byte-identical across runs.
    pub wall_secs: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CaseResult> {
        self.cases.iter().filter(|c| !c.pass).collect()
    }

    /// `suite,case,pass,detail` rows, LF-terminated, deterministic.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,case,pass,detail\n");
        for c in &self.cases {
            let detail = c.detail.replace([',', '\n'], ";");
            out.push_str(&format!("{},{},{},{}\n", self.suite, c.id, c.pass, detail));
        }
        out
    }

    pub fn one_line(&self) -> String {
        format!(
            "suite {}: {}/{} cases pass ({:.1}s)",
            self.suite,
            self.cases.iter().filter(|c| c.pass).count(),
            self.cases.len(),
            self.wall_secs
        )
    }
}

fn to_case(id: String, r: Result<(), String>) -> CaseResult {
    match r {
        Ok(()) => CaseResult { id, pass: true, detail: "ok".into() },
        Err(detail) => CaseResult { id, pass: false, detail },
    }
}

/// splitmix64: the standard 64-bit finalizer, good enough to decorrelate
/// sequential case indices into seeds.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Per-case seed from a base seed and up to two stream indices.
pub fn mix_seed(base: u64, stream: u64, case: u64) -> u64 {
    splitmix64(base ^ splitmix64(stream.wrapping_mul(0x517cc1b727220a95) ^ case))
}

/// Knobs shared by all suites; `None` means the suite's contract default.
#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: Option<usize>,
    pub max_n: Option<usize>,
    pub dmax: Option<usize>,
}

/// Run a suite by name: `oracle`, `tree`, `grid`, `path`, `slow`, or
/// `splitting`.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport, String> {
    match name {
        "oracle" => Ok(suite_oracle(opts)),
        "tree" => Ok(suite_tree(opts)),
        "grid" => Ok(suite_grid(opts)),
        "path" => Ok(suite_path(opts)),
        "slow" => Ok(suite_slow(opts)),
        "splitting" => Ok(suite_splitting(opts)),
        other => Err(format!(
            "unknown suite `{other}` (expected oracle, tree, grid, path, slow, splitting)"
        )),
    }
}

/// Play a game and re-verify the finished trace with the independent
/// checker. All suite games run through here.
pub fn verified_game(
    g: &Graph,
    cat: &mut dyn CatStrategy,
    mouse: &mut dyn MouseStrategy,
    cfg: &GameConfig,
) -> Result<GameTrace, String> {
    let trace = play_game(g, cat, mouse, cfg).map_err(|e| format!("engine: {e}"))?;
    verify_trace(&trace, g).map_err(|e| format!("trace re-verification: {e}"))?;
    Ok(trace)
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

// ---------------------------------------------------------------------------
// oracle: exact candidate tracking vs. trajectory enumeration
// ---------------------------------------------------------------------------

/// Independent one-step candidate update: per-pair enumeration, no
/// aggregate shortcuts. `v` survives iff some `u` in the previous set can
/// reach it this round and the pair satisfies the announced bit.
fn one_step_enum(
    g: &Graph,
    prev: &[Vertex],
    c_prev: Vertex,
    c_cur: Vertex,
    bit: bool,
    may_move: bool,
) -> Vec<Vertex> {
    let mut out = std::collections::BTreeSet::new();
    for &u in prev {
        let reach = if may_move { g.closed_neighborhood(u) } else { vec![u] };
        for &v in &reach {
            let keep = if bit {
                g.dist(c_cur, v) <= g.dist(c_prev, u)
            } else {
                g.dist(c_cur, v) > g.dist(c_prev, u)
            };
            if keep {
                out.insert(v);
            }
        }
    }
    out.into_iter().collect()
}

/// Iterate the engine's update over a probe/bit chain; `None` means the
/// engine signalled an empty (impossible) candidate set.
fn iterate_dp(g: &Graph, probes: &[Vertex], bits: &[bool], k: usize) -> Option<CandidateSet> {
    let mut m = CandidateSet::full(g, 1);
    for i in 2..=probes.len() {
        let may_move = (i - 1) % k == 0;
        match update_candidates(g, &m, probes[i - 2], probes[i - 1], bits[i - 2], may_move) {
            Ok(next) => m = next,
            Err(_) => return None,
        }
    }
    Some(m)
}

/// Compare iterated updates against the from-scratch trajectory oracle for
/// every bit mask over a fixed probe sequence.
fn check_chain_all_masks(g: &Graph, probes: &[Vertex], k: usize) -> Result<(), String> {
    let len = probes.len();
    for mask in 0u32..(1 << (len - 1)) {
        let bits: Vec<bool> = (0..len - 1).map(|j| mask >> j & 1 == 1).collect();
        let brute = brute_force_candidates(g, probes, &bits, k)
            .map_err(|e| format!("oracle guard tripped: {e}"))?;
        match iterate_dp(g, probes, &bits, k) {
            None => {
                if !brute.is_empty() {
                    return Err(format!(
                        "probes {probes:?} bits {bits:?} k {k}: update says impossible, enumeration finds {:?}",
                        brute.members()
                    ));
                }
            }
            Some(m) => {
                if m.members() != brute.members() {
                    return Err(format!(
                        "probes {probes:?} bits {bits:?} k {k}: update {:?} != enumeration {:?}",
                        m.members(),
                        brute.members()
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Exhaustive equivalence on one graph: full chains up to length 3, then a
/// closure over every reachable (candidate set, previous probe, round
/// phase) state with every one-step extension checked against the
/// independent enumerator. Reachable-state induction extends the
/// equivalence to probe/bit sequences of every length, in particular all
/// of length 6.
fn oracle_graph_case(g: &Graph, k: usize) -> Result<(), String> {
    let n = g.n();
    // Full chains, lengths 1..=3, all probes, all bits.
    let mut seq = vec![0usize; 3];
    for len in 1..=3usize {
        let total = n.pow(len as u32);
        for code in 0..total {
            let mut c = code;
            for slot in seq.iter_mut().take(len) {
                *slot = c % n + 1;
                c /= n;
            }
            check_chain_all_masks(g, &seq[..len], k)?;
        }
    }
    // State closure: states are (members, last probe, round mod k).
    use std::collections::{HashSet, VecDeque};
    let mut seen: HashSet<(Vec<Vertex>, Vertex, usize)> = HashSet::new();
    let mut queue: VecDeque<(Vec<Vertex>, Vertex, usize)> = VecDeque::new();
    let full: Vec<Vertex> = (1..=n).collect();
    for c1 in 1..=n {
        let st = (full.clone(), c1, 1 % k);
        if seen.insert(st.clone()) {
            queue.push_back(st);
        }
    }
    while let Some((members, c_prev, phase)) = queue.pop_front() {
        let may_move = phase == 0; // next round r+1 has (r+1-1) % k = phase
        let prev_set = CandidateSet::from_members(members.clone(), 1);
        for c in 1..=n {
            for bit in [false, true] {
                let ind = one_step_enum(g, &members, c_prev, c, bit, may_move);
                match update_candidates(g, &prev_set, c_prev, c, bit, may_move) {
                    Err(_) => {
                        if !ind.is_empty() {
                            return Err(format!(
                                "state {members:?} via ({c_prev}->{c}, bit {bit}, move {may_move}): update impossible, enumeration {ind:?}"
                            ));
                        }
                    }
                    Ok(next) => {
                        if next.members() != ind.as_slice() {
                            return Err(format!(
                                "state {members:?} via ({c_prev}->{c}, bit {bit}, move {may_move}): update {:?} != enumeration {ind:?}",
                                next.members()
                            ));
                        }
                        let st = (ind, c, (phase + 1) % k);
                        if seen.insert(st.clone()) {
                            queue.push_back(st);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// One randomized large case: a seeded connected graph with up to 8
/// vertices, a random probe sequence of length 6, all 32 bit masks.
fn oracle_random_case(base: u64, t: u64) -> Result<(), String> {
    let seed = mix_seed(base, 0xA1, t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=8usize);
    let p = rng.gen_range(0.15..0.5);
    let dmax = if n == 2 { 1 } else { rng.gen_range(2..=5.min(n - 1)) };
    let g = gen_random_connected(n, p, dmax, rng.gen())
        .map_err(|e| format!("seed {seed}: generator: {e}"))?;
    let k = rng.gen_range(1..=3usize);
    let probes: Vec<Vertex> = (0..6).map(|_| rng.gen_range(1..=n)).collect();
    check_chain_all_masks(&g, &probes, k).map_err(|e| format!("seed {seed}: {e}"))
}

pub fn suite_oracle(opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let max_n = opts.max_n.unwrap_or(5).clamp(1, 6);
    let trials = opts.trials.unwrap_or(1000);
    let mut jobs: Vec<(String, Box<dyn Fn() -> Result<(), String> + Send + Sync>)> = Vec::new();
    for n in 1..=max_n {
        let graphs = catalogue_connected(n).expect("catalogue bound respected");
        for (gi, g) in graphs.into_iter().enumerate() {
            let g = std::sync::Arc::new(g);
            for k in 1..=3usize {
                let id = format!("catalogue-n{n}-g{gi}-k{k}");
                let g = std::sync::Arc::clone(&g);
                jobs.push((id, Box::new(move || oracle_graph_case(&g, k))));
            }
        }
    }
    let base = opts.seed;
    for t in 0..trials {
        let id = format!("random-{t}");
        jobs.push((id, Box::new(move || oracle_random_case(base, t as u64))));
    }
    let cases: Vec<CaseResult> =
        jobs.into_par_iter().map(|(id, f)| to_case(id, f())).collect();
    SuiteReport { suite: "oracle".into(), cases, wall_secs: start.elapsed().as_secs_f64() }
}

// ---------------------------------------------------------------------------
// tree: pairing strategy bound on random trees + exhaustive small cases
// ---------------------------------------------------------------------------

fn tree_bound_case(base: u64, dmax: usize, t: usize, max_n: usize) -> Result<(), String> {
    let seed = mix_seed(base, 0x7E, (dmax * 10_000 + t) as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = (dmax + 1).max(3);
    let n = rng.gen_range(lo..=max_n.max(lo));
    let g = gen_random_tree(n, dmax, rng.gen()).map_err(|e| format!("seed {seed}: {e}"))?;
    let da = g.max_degree();
    let claim = 4 * da - 6;
    let center = g.tree_center().map_err(|e| format!("seed {seed}: {e}"))?;
    let view = g.rooted_view(center).map_err(|e| format!("seed {seed}: {e}"))?;
    let h = view.subtree_depth(center);
    let round_bound = 2 * h.saturating_sub(claim) * (2 * da - 2);
    let cfg = GameConfig::new(round_bound.max(1), 1, claim, seed)
        .map_err(|e| format!("seed {seed}: {e}"))?;
    let mut cat = TreeCat::new();
    let mut mouse = greedy_evader();
    let trace = verified_game(&g, &mut cat, mouse.as_mut(), &cfg)
        .map_err(|e| format!("seed {seed} n {n}: {e}"))?;
    let done = trace
        .done
        .ok_or_else(|| format!("seed {seed} n {n}: no declaration within {round_bound} rounds"))?;
    if done.round > round_bound {
        return Err(format!(
            "seed {seed} n {n}: declared at round {} > bound {round_bound} (h {h}, dmax {da})",
            done.round
        ));
    }
    if done.claimed_radius != claim || done.actual_radius > claim {
        return Err(format!(
            "seed {seed} n {n}: claim {} actual {} vs contract {claim}",
            done.claimed_radius, done.actual_radius
        ));
    }
    Ok(())
}

/// Escape search against the tree cat on one small tree; the bound round
/// is the horizon, the claim radius the target.
fn tree_escape_case(g: &Graph) -> Result<(), String> {
    let da = g.max_degree();
    let claim = 4 * da - 6;
    let center = g.tree_center().map_err(|e| e.to_string())?;
    let view = g.rooted_view(center).map_err(|e| e.to_string())?;
    let h = view.subtree_depth(center);
    let round_bound = (2 * h.saturating_sub(claim) * (2 * da - 2)).max(1);
    let cfg = GameConfig::new(round_bound, 1, claim, 0).map_err(|e| e.to_string())?;
    match search_escape(g, crate::cats::tree_cat().as_ref(), &cfg).map_err(|e| e.to_string())? {
        EscapeOutcome::NoEscape => Ok(()),
        EscapeOutcome::Escape { trajectory } => Err(format!(
            "mouse escapes radius {claim} for {round_bound} rounds via {trajectory:?} on {}",
            g.to_edge_list_string()
        )),
    }
}

pub fn suite_tree(opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let trials = opts.trials.unwrap_or(50);
    let max_n = opts.max_n.unwrap_or(200);
    let dmax_hi = opts.dmax.unwrap_or(5).clamp(2, 8);
    let base = opts.seed;
    let mut jobs: Vec<(String, Box<dyn Fn() -> Result<(), String> + Send + Sync>)> = Vec::new();
    for dmax in 2..=dmax_hi {
        for t in 0..trials {
            let id = format!("random-tree-d{dmax}-t{t}");
            jobs.push((id, Box::new(move || tree_bound_case(base, dmax, t, max_n))));
        }
    }
    // Exhaustive confirmation on small instances: P_9, and every tree with
    // up to 9 vertices and degree cap 3 (two-vertex trees are excluded by
    // the strategy's own degree >= 2 precondition).
    jobs.push((
        "escape-p9".into(),
        Box::new(|| tree_escape_case(&gen_path(9).expect("P_9 builds"))),
    ));
    for n in 3..=9usize {
        let trees = catalogue_trees(n, 3).expect("catalogue bound respected");
        for (i, g) in trees.into_iter().enumerate() {
            let id = format!("escape-n{n}-t{i}");
            jobs.push((id, Box::new(move || tree_escape_case(&g))));
        }
    }
    let cases: Vec<CaseResult> =
        jobs.into_par_iter().map(|(id, f)| to_case(id, f())).collect();
    SuiteReport { suite: "tree".into(), cases, wall_secs: start.elapsed().as_secs_f64() }
}

// ---------------------------------------------------------------------------
// grid: block strategy bound, box containment and recurrences
// ---------------------------------------------------------------------------

fn grid_case(g: &Graph, side: usize, mouse_idx: usize, seed: u64) -> Result<(), String> {
    let bound = 3 * (ceil_log2(side) + 10);
    let cfg = GameConfig::new(bound + 3, 1, 8, seed).map_err(|e| e.to_string())?;
    let mut cat = GridCat::new();
    let mut mouse: Box<dyn MouseStrategy> =
        if mouse_idx == 0 { greedy_evader() } else { random_mouse(seed) };
    let trace = verified_game(g, &mut cat, mouse.as_mut(), &cfg)?;
    let done = trace.done.ok_or_else(|| format!("no declaration within {} rounds", bound + 3))?;
    let fs = trace
        .first_success
        .ok_or_else(|| "radius never reached 8".to_string())?;
    if fs > bound {
        return Err(format!("radius 8 first reached at round {fs} > bound {bound}"));
    }
    if done.claimed_radius != 8 || done.actual_radius > 8 {
        return Err(format!("claim {} actual {}", done.claimed_radius, done.actual_radius));
    }
    // Block-boundary checks: the logged box must equal the bounding box of
    // the exact candidate set (containment, exactly), and consecutive
    // boxes must obey the halving recurrences, axis-swapped on the one
    // stall shape.
    let hist = candidate_history(&trace, g).map_err(|e| format!("history: {e}"))?;
    let shape = g.shape().expect("grid graphs carry a shape");
    let boxes = cat.boxes();
    for (bi, b) in boxes.iter().enumerate() {
        if b.round >= 2 {
            let members = hist[b.round - 2].members();
            let (mut x0, mut y0, mut x1, mut y1) = (usize::MAX, usize::MAX, 0, 0);
            for &v in members {
                let (x, y) = shape.xy(v);
                x0 = x0.min(x);
                y0 = y0.min(y);
                x1 = x1.max(x);
                y1 = y1.max(y);
            }
            if (x0, y0, x1 - x0, y1 - y0) != (b.x, b.y, b.dx, b.dy) {
                return Err(format!(
                    "block {bi} round {}: logged box ({},{})+({},{}) != candidate bounding box ({x0},{y0})+({},{})",
                    b.round, b.x, b.y, b.dx, b.dy, x1 - x0, y1 - y0
                ));
            }
        }
        if bi > 0 {
            let p = &boxes[bi - 1];
            let (bx, by) = if p.swapped { (3, 4) } else { (4, 3) };
            if b.dx > p.dx.div_ceil(2) + bx || b.dy > p.dy.div_ceil(2) + by {
                return Err(format!(
                    "block {bi}: extents ({},{}) from ({},{}) break the recurrence (swapped {})",
                    b.dx, b.dy, p.dx, p.dy, p.swapped
                ));
            }
        }
    }
    Ok(())
}

pub fn suite_grid(opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let max_side = opts.max_n.unwrap_or(512);
    let random_mice = opts.trials.unwrap_or(20);
    let base = opts.seed;
    let mut cases = Vec::new();
    let mut side = 8;
    while side <= max_side {
        let g = gen_grid(side, side).expect("grid builds");
        let new: Vec<CaseResult> = (0..=random_mice)
            .into_par_iter()
            .map(|mi| {
                let id = if mi == 0 {
                    format!("grid-{side}-greedy")
                } else {
                    format!("grid-{side}-random{mi}")
                };
                let seed = mix_seed(base, 0x62, (side * 1000 + mi) as u64);
                to_case(id, grid_case(&g, side, mi, seed))
            })
            .collect();
        cases.extend(new);
        side *= 2;
    }
    SuiteReport { suite: "grid".into(), cases, wall_secs: start.elapsed().as_secs_f64() }
}

// ---------------------------------------------------------------------------
// path: reflect-and-sweep bound over a size ladder
// ---------------------------------------------------------------------------

fn path_case(g: &Graph, n: usize, mouse_idx: usize, seed: u64) -> Result<(), String> {
    let bound = 2 * (ceil_log2(n) + 6);
    let cfg = GameConfig::new(bound + 1, 1, 2, seed).map_err(|e| e.to_string())?;
    let mut cat = PathCat::new();
    let mut mouse: Box<dyn MouseStrategy> = match mouse_idx {
        0 => greedy_evader(),
        1 => stationary_mouse(n),
        2 => stationary_mouse(1),
        _ => random_mouse(seed),
    };
    let trace = verified_game(g, &mut cat, mouse.as_mut(), &cfg)?;
    let done = trace.done.ok_or_else(|| format!("no declaration within {} rounds", bound + 1))?;
    let fs = trace.first_success.ok_or_else(|| "radius never reached 2".to_string())?;
    if fs > bound {
        return Err(format!("radius 2 first reached at round {fs} > bound {bound}"));
    }
    if done.round > bound {
        return Err(format!("declared at round {} > bound {bound}", done.round));
    }
    if done.claimed_radius != 2 || done.actual_radius > 2 {
        return Err(format!("claim {} actual {}", done.claimed_radius, done.actual_radius));
    }
    Ok(())
}

fn path_escape_case(n: usize) -> Result<(), String> {
    let g = gen_path(n).map_err(|e| e.to_string())?;
    let cfg = GameConfig::new(12, 1, 2, 0).map_err(|e| e.to_string())?;
    match search_escape(&g, crate::cats::path_cat().as_ref(), &cfg).map_err(|e| e.to_string())? {
        EscapeOutcome::NoEscape => Ok(()),
        EscapeOutcome::Escape { trajectory } => {
            Err(format!("P_{n}: mouse escapes radius 2 for 12 rounds via {trajectory:?}"))
        }
    }
}

pub fn suite_path(opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let max_n = opts.max_n.unwrap_or(4097);
    let random_sizes = opts.trials.unwrap_or(20);
    let base = opts.seed;
    let mut sizes: Vec<usize> = Vec::new();
    let mut p = 4;
    while p <= max_n {
        sizes.push(p);
        if p + 1 <= max_n {
            sizes.push(p + 1);
        }
        p *= 2;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(base, 0x9A, 0));
    for _ in 0..random_sizes {
        sizes.push(rng.gen_range(4..=max_n.max(4)));
    }
    let mut jobs: Vec<(String, usize, usize)> = Vec::new(); // (id, n, mouse)
    for (si, &n) in sizes.iter().enumerate() {
        for mi in 0..5 {
            jobs.push((format!("path-{n}-s{si}-m{mi}"), n, mi));
        }
    }
    let mut cases: Vec<CaseResult> = jobs
        .into_par_iter()
        .map(|(id, n, mi)| {
            let seed = mix_seed(base, 0x9B, (n * 100 + mi) as u64);
            match gen_path(n) {
                Ok(g) => to_case(id, path_case(&g, n, mi, seed)),
                Err(e) => to_case(id, Err(e.to_string())),
            }
        })
        .collect();
    // Exhaustive confirmation at searchable sizes.
    for n in [8usize, 9] {
        cases.push(to_case(format!("path-escape-{n}"), path_escape_case(n)));
    }
    SuiteReport { suite: "path".into(), cases, wall_secs: start.elapsed().as_secs_f64() }
}

// ---------------------------------------------------------------------------
// slow: exact localization of a 4*dmax-slow mouse
// ---------------------------------------------------------------------------

fn slow_case(base: u64, t: usize, max_n: usize, adversary: bool) -> Result<(), String> {
    let seed = mix_seed(base, 0x51, (t * 2 + adversary as usize) as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n.max(2));
    let p = rng.gen_range(0.05..0.3);
    let dmax = if n == 2 { 1 } else { rng.gen_range(2..=5.min(n - 1)) };
    let g = gen_random_connected(n, p, dmax, rng.gen())
        .map_err(|e| format!("seed {seed}: generator: {e}"))?;
    let da = g.max_degree();
    let k = 4 * da;
    let all: Vec<Vertex> = (1..=g.n()).collect();
    let radius = g.radius_of_set(&all).radius;
    let horizon = k * (radius + 2);
    let cfg = GameConfig::new(horizon, k, 0, seed).map_err(|e| e.to_string())?;
    let mut cat = SlowCat::new();
    let mut mouse: Box<dyn MouseStrategy> =
        if adversary { greedy_evader() } else { random_mouse(rng.gen()) };
    let trace = verified_game(&g, &mut cat, mouse.as_mut(), &cfg)
        .map_err(|e| format!("seed {seed} n {n}: {e}"))?;
    let done = trace
        .done
        .ok_or_else(|| format!("seed {seed} n {n}: no declaration within {horizon} rounds"))?;
    if done.claimed_radius != 0 || done.actual_radius != 0 {
        return Err(format!(
            "seed {seed}: claim {} actual {}",
            done.claimed_radius, done.actual_radius
        ));
    }
    let hist = candidate_history(&trace, &g).map_err(|e| format!("history: {e}"))?;
    let last = &hist[done.round - 1];
    if last.members() != [done.center] {
        return Err(format!(
            "seed {seed}: final candidates {:?} != {{{}}}",
            last.members(),
            done.center
        ));
    }
    if trace.rounds[done.round - 1].mouse != done.center {
        return Err(format!(
            "seed {seed}: mouse at {} but declared {}",
            trace.rounds[done.round - 1].mouse, done.center
        ));
    }
    // Anchor distances to the (frozen) mouse strictly decrease block over
    // block, and the block count is within initial distance + 1.
    let anchors = cat.anchors();
    let d_at = |&(round, a): &(usize, Vertex)| g.dist(a, trace.rounds[round - 1].mouse);
    for w in anchors.windows(2) {
        if d_at(&w[1]) >= d_at(&w[0]) {
            return Err(format!(
                "seed {seed}: anchor distance did not drop: {:?} -> {:?}",
                (w[0], d_at(&w[0])),
                (w[1], d_at(&w[1]))
            ));
        }
    }
    if anchors.len() > d_at(&anchors[0]) + 1 {
        return Err(format!(
            "seed {seed}: {} blocks for initial distance {}",
            anchors.len(),
            d_at(&anchors[0])
        ));
    }
    Ok(())
}

pub fn suite_slow(opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let trials = opts.trials.unwrap_or(50);
    let max_n = opts.max_n.unwrap_or(100);
    let base = opts.seed;
    let cases: Vec<CaseResult> = (0..trials * 2)
        .into_par_iter()
        .map(|i| {
            let (t, adversary) = (i / 2, i % 2 == 1);
            let id = format!("slow-t{t}-{}", if adversary { "greedy" } else { "random" });
            to_case(id, slow_case(base, t, max_n, adversary))
        })
        .collect();
    SuiteReport { suite: "slow".into(), cases, wall_secs: start.elapsed().as_secs_f64() }
}

// ---------------------------------------------------------------------------
// splitting: balanced-separation edge counts
// ---------------------------------------------------------------------------

fn splitting_case(base: u64, t: usize, max_n: usize) -> Result<(), String> {
    let seed = mix_seed(base, 0x5E, t as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n.max(2));
    let p = rng.gen_range(0.05..0.4);
    let cap = (n - 1).max(1);
    let g = gen_random_connected(n, p, cap, rng.gen())
        .map_err(|e| format!("seed {seed}: generator: {e}"))?;
    let m_size = rng.gen_range(2..=n);
    let mut pool: Vec<Vertex> = (1..=n).collect();
    for i in 0..m_size {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    let mut members: Vec<Vertex> = pool[..m_size].to_vec();
    members.sort_unstable();
    let edge = g.find_splitting_edge(&members);
    let dmax = g.max_degree();
    let need = m_size - 1;
    if edge.closer_to_u * dmax < need || edge.closer_to_v * dmax < need {
        return Err(format!(
            "seed {seed} n {n} |M| {m_size}: edge ({},{}) sides {}x{} too small for degree {dmax}",
            edge.u, edge.v, edge.closer_to_u, edge.closer_to_v
        ));
    }
    Ok(())
}

pub fn suite_splitting(opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let trials = opts.trials.unwrap_or(200);
    let max_n = opts.max_n.unwrap_or(40);
    let base = opts.seed;
    let cases: Vec<CaseResult> = (0..trials)
        .into_par_iter()
        .map(|t| to_case(format!("splitting-t{t}"), splitting_case(base, t, max_n)))
        .collect();
    SuiteReport { suite: "splitting".into(), cases, wall_secs: start.elapsed().as_secs_f64() }
}

// ---------------------------------------------------------------------------
// sweeps
// ---------------------------------------------------------------------------

/// Run `trials` games per size for a graph family and emit a CSV table:
/// `size,trial,seed,first_success,final_radius,rounds,status`. Failing
/// cases keep their row with the status column carrying the error, so a
/// partially broken sweep still yields data.
pub fn run_sweep(
    family: &str,
    sizes: &[usize],
    cat_spec: &str,
    mouse_spec: &str,
    trials: usize,
    dmax: usize,
    seed: u64,
) -> Result<String, String> {
    if sizes.is_empty() {
        return Err("no sizes given".into());
    }
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err("sizes must be nondecreasing".into());
    }
    let mut out = String::from("size,trial,seed,first_success,final_radius,rounds,status\n");
    for &size in sizes {
        let g = match family {
            "path" => gen_path(size),
            "grid" => gen_grid(size, size),
            "substar" => gen_subdivided_star(size),
            "tree" => gen_random_tree(size, dmax, mix_seed(seed, 0xFA, size as u64)),
            other => return Err(format!("unknown family `{other}`")),
        }
        .map_err(|e| format!("family {family} size {size}: {e}"))?;
        let rows: Vec<String> = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let case_seed = mix_seed(seed, 0x5F, (size * 10_000 + trial) as u64);
                match sweep_case(&g, cat_spec, mouse_spec, case_seed) {
                    Ok((fs, fr, rounds)) => {
                        let fs = fs.map(|v| v.to_string()).unwrap_or_default();
                        format!("{size},{trial},{case_seed},{fs},{fr},{rounds},ok\n")
                    }
                    Err(e) => {
                        let e = e.replace([',', '\n'], ";");
                        format!("{size},{trial},{case_seed},,,,{e}\n")
                    }
                }
            })
            .collect();
        for r in rows {
            out.push_str(&r);
        }
    }
    Ok(out)
}

fn sweep_case(
    g: &Graph,
    cat_spec: &str,
    mouse_spec: &str,
    seed: u64,
) -> Result<(Option<usize>, usize, usize), String> {
    let mut cat = specs::parse_cat(cat_spec, seed).map_err(|e| e.to_string())?;
    let mut mouse =
        specs::parse_mouse(mouse_spec, cat.as_ref(), seed ^ 0x6D).map_err(|e| e.to_string())?;
    let slowness = specs::default_slowness(cat_spec, g);
    let horizon = specs::default_horizon(cat_spec, g, slowness);
    let target = specs::default_target(cat_spec, g);
    let cfg = GameConfig::new(horizon, slowness, target, seed).map_err(|e| e.to_string())?;
    let trace = verified_game(g, cat.as_mut(), mouse.as_mut(), &cfg)?;
    let final_radius = trace
        .rounds
        .last()
        .map(|r| r.m_radius)
        .unwrap_or_else(|| g.radius_of_set(&(1..=g.n()).collect::<Vec<_>>()).radius);
    Ok((trace.first_success, final_radius, trace.rounds.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_mixing_separates_streams() {
        assert_ne!(mix_seed(0, 1, 0), mix_seed(0, 2, 0));
        assert_ne!(mix_seed(0, 1, 0), mix_seed(0, 1, 1));
        assert_eq!(mix_seed(7, 3, 9), mix_seed(7, 3, 9));
    }

    #[test]
    fn oracle_suite_passes_on_tiny_catalogue() {
        let opts =
            SuiteOptions { seed: 1, trials: Some(20), max_n: Some(3), dmax: None };
        let report = suite_oracle(&opts);
        assert!(report.passed(), "{:?}", report.failures());
        assert!(report.cases.len() > 20);
    }

    #[test]
    fn tree_suite_smoke() {
        let opts = SuiteOptions { seed: 2, trials: Some(3), max_n: Some(40), dmax: Some(3) };
        let report = suite_tree(&opts);
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn grid_suite_smoke() {
        let opts = SuiteOptions { seed: 3, trials: Some(2), max_n: Some(16), dmax: None };
        let report = suite_grid(&opts);
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn path_suite_smoke() {
        let opts = SuiteOptions { seed: 4, trials: Some(2), max_n: Some(64), dmax: None };
        let report = suite_path(&opts);
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn slow_suite_smoke() {
        let opts = SuiteOptions { seed: 5, trials: Some(4), max_n: Some(24), dmax: None };
        let report = suite_slow(&opts);
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn splitting_suite_smoke() {
        let opts = SuiteOptions { seed: 6, trials: Some(25), max_n: Some(20), dmax: None };
        let report = suite_splitting(&opts);
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn csv_shape_is_stable() {
        let report = SuiteReport {
            suite: "demo".into(),
            cases: vec![
                CaseResult { id: "a".into(), pass: true, detail: "ok".into() },
                CaseResult { id: "b".into(), pass: false, detail: "x, y\nz".into() },
            ],
            wall_secs: 1.0,
        };
        let csv = report.to_csv();
        assert_eq!(csv, "suite,case,pass,detail\ndemo,a,true,ok\ndemo,b,false,x; y;z\n");
        assert!(!report.passed());
    }

    #[test]
    fn sweep_emits_rows_in_order() {
        let csv = run_sweep("path", &[4, 8], "path", "stationary:v=1", 2, 3, 9).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "size,trial,seed,first_success,final_radius,rounds,status");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("4,0,"));
        assert!(lines[4].starts_with("8,1,"));
        assert!(lines.iter().skip(1).all(|l| l.ends_with(",ok")));
        // Deterministic: same inputs, same bytes.
        assert_eq!(csv, run_sweep("path", &[4, 8], "path", "stationary:v=1", 2, 3, 9).unwrap());
    }

    #[test]
    fn sweep_rejects_bad_input() {
        assert!(run_sweep("path", &[], "path", "greedy", 1, 3, 0).is_err());
        assert!(run_sweep("path", &[8, 4], "path", "greedy", 1, 3, 0).is_err());
        assert!(run_sweep("moebius", &[4], "path", "greedy", 1, 3, 0).is_err());
    }
}
