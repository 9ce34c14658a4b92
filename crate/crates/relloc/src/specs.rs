//! Textual specs for graphs and strategies, as used by the CLI and sweeps.
//!
//! A spec is `name` or `name:key=value,key=value`. Values are positive
//! integers except where noted. Seeded specs (`random`) fall back to the
//! caller's seed when no `seed=` is given, so sweep trials stay
//! independent without per-trial spec strings.

use std::collections::BTreeMap;

use crate::cats::{grid_cat, path_cat, random_cat, slow_cat, tree_cat};
use crate::engine::{CatStrategy, MouseStrategy};
use crate::evader::exhaustive_evader;
use crate::generate::{gen_grid, gen_path, gen_random_tree, gen_subdivided_star};
use crate::graph::{Graph, GraphError};
use crate::mice::{greedy_evader, random_mouse, scripted_mouse, stationary_mouse};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("bad spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad(spec: &str, reason: impl Into<String>) -> SpecError {
    SpecError::Parse { spec: spec.into(), reason: reason.into() }
}

/// Splits `k1=v1,k2=v2`; empty body gives an empty map.
fn kv_pairs<'a>(spec: &str, body: &'a str) -> Result<BTreeMap<&'a str, &'a str>, SpecError> {
    let mut map = BTreeMap::new();
    for part in body.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| bad(spec, format!("expected key=value, got `{part}`")))?;
        if map.insert(k, v).is_some() {
            return Err(bad(spec, format!("duplicate key `{k}`")));
        }
    }
    Ok(map)
}

fn need<T: std::str::FromStr>(
    spec: &str,
    map: &BTreeMap<&str, &str>,
    key: &str,
) -> Result<T, SpecError> {
    let raw = map.get(key).ok_or_else(|| bad(spec, format!("missing `{key}=`")))?;
    raw.parse().map_err(|_| bad(spec, format!("cannot parse `{key}={raw}`")))
}

fn opt<T: std::str::FromStr>(
    spec: &str,
    map: &BTreeMap<&str, &str>,
    key: &str,
) -> Result<Option<T>, SpecError> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse()
            .map(Some)
            .map_err(|_| bad(spec, format!("cannot parse `{key}={raw}`"))),
    }
}

fn split(spec: &str) -> (&str, &str) {
    match spec.split_once(':') {
        Some((name, body)) => (name, body),
        None => (spec, ""),
    }
}

/// Builds a graph from a spec:
/// `path:n=N`, `grid:n=COLS,m=ROWS`, `substar:k=K` (K legs of length K),
/// `tree:n=N,dmax=D[,seed=S]` (seeded random tree), or `file:PATH` (edge
/// list document: `n m` header, one `u v` line per edge).
pub fn parse_graph(spec: &str) -> Result<Graph, SpecError> {
    let (name, body) = split(spec);
    if name == "file" {
        if body.is_empty() {
            return Err(bad(spec, "missing path"));
        }
        let text = std::fs::read_to_string(body)
            .map_err(|source| SpecError::Io { path: body.into(), source })?;
        return Ok(Graph::from_edge_list_str(&text)?);
    }
    let map = kv_pairs(spec, body)?;
    let g = match name {
        "path" => gen_path(need(spec, &map, "n")?)?,
        "grid" => gen_grid(need(spec, &map, "n")?, need(spec, &map, "m")?)?,
        "substar" => gen_subdivided_star(need(spec, &map, "k")?)?,
        "tree" => gen_random_tree(
            need(spec, &map, "n")?,
            need(spec, &map, "dmax")?,
            opt(spec, &map, "seed")?.unwrap_or(0),
        )?,
        other => {
            return Err(bad(
                spec,
                format!("unknown graph family `{other}` (path, grid, substar, tree, file)"),
            ))
        }
    };
    Ok(g)
}

/// Builds a cat from a spec: `tree`, `grid`, `path`, `slow`, or
/// `random[:seed=S]` (falling back to `fallback_seed`).
pub fn parse_cat(spec: &str, fallback_seed: u64) -> Result<Box<dyn CatStrategy>, SpecError> {
    let (name, body) = split(spec);
    let map = kv_pairs(spec, body)?;
    match name {
        "tree" => Ok(tree_cat()),
        "grid" => Ok(grid_cat()),
        "path" => Ok(path_cat()),
        "slow" => Ok(slow_cat()),
        "random" => Ok(random_cat(opt(spec, &map, "seed")?.unwrap_or(fallback_seed))),
        other => Err(bad(
            spec,
            format!("unknown cat `{other}` (tree, grid, path, slow, random)"),
        )),
    }
}

/// Builds a mouse from a spec: `stationary:v=V`, `greedy`,
/// `random[:seed=S]`, `exhaustive:T=HORIZON,d=TARGET` (searches against a
/// clone of `cat`, so it needs the very cat the game will run), or
/// `certificate:PATH` (JSON array of vertices, replayed verbatim).
pub fn parse_mouse(
    spec: &str,
    cat: &dyn CatStrategy,
    fallback_seed: u64,
) -> Result<Box<dyn MouseStrategy>, SpecError> {
    let (name, body) = split(spec);
    if name == "certificate" {
        if body.is_empty() {
            return Err(bad(spec, "missing path"));
        }
        let text = std::fs::read_to_string(body)
            .map_err(|source| SpecError::Io { path: body.into(), source })?;
        let path: Vec<usize> = serde_json::from_str(&text)
            .map_err(|e| bad(spec, format!("not a JSON vertex array: {e}")))?;
        if path.is_empty() {
            return Err(bad(spec, "certificate is empty"));
        }
        return Ok(scripted_mouse(path));
    }
    let map = kv_pairs(spec, body)?;
    match name {
        "stationary" => Ok(stationary_mouse(need(spec, &map, "v")?)),
        "greedy" => Ok(greedy_evader()),
        "random" => Ok(random_mouse(opt(spec, &map, "seed")?.unwrap_or(fallback_seed))),
        "exhaustive" => Ok(exhaustive_evader(
            cat.clone_box(),
            need(spec, &map, "T")?,
            need(spec, &map, "d")?,
        )),
        other => Err(bad(
            spec,
            format!(
                "unknown mouse `{other}` (stationary, greedy, random, exhaustive, certificate)"
            ),
        )),
    }
}

/// Slowness a cat needs on this graph: the slow cat requires exactly
/// 4 * max degree; every other strategy plays the unit-speed game.
pub fn default_slowness(cat_spec: &str, g: &Graph) -> usize {
    match split(cat_spec).0 {
        "slow" => 4 * g.max_degree().max(1),
        _ => 1,
    }
}

/// Radius each cat is designed to reach on its home family; 0 where no
/// guarantee applies.
pub fn default_target(cat_spec: &str, g: &Graph) -> usize {
    match split(cat_spec).0 {
        "tree" => (4 * g.max_degree()).saturating_sub(6),
        "grid" => 8,
        "path" => 2,
        _ => 0,
    }
}

/// Round budget under which each cat's guarantee holds on its home family
/// (with a little slack); a flat 64 where no guarantee applies. Values are
/// safe on off-family graphs too — `begin` rejects those before the
/// horizon matters.
pub fn default_horizon(cat_spec: &str, g: &Graph, slowness: usize) -> usize {
    let log2 = |n: usize| crate::harness::ceil_log2(n);
    match split(cat_spec).0 {
        "tree" => {
            let claim = (4 * g.max_degree()).saturating_sub(6);
            let h = g
                .tree_center()
                .and_then(|c| g.rooted_view(c).map(|v| v.subtree_depth(c)))
                .unwrap_or(g.n());
            (2 * h.saturating_sub(claim) * (2 * g.max_degree().max(2) - 2)).max(1) + 2
        }
        "grid" => {
            let side = g.shape().map(|s| s.cols.max(s.rows)).unwrap_or(g.n()).max(2);
            3 * (log2(side) + 10) + 3
        }
        "path" => 2 * (log2(g.n()) + 6) + 2,
        "slow" => {
            let all: Vec<_> = (1..=g.n()).collect();
            slowness.max(1) * (g.radius_of_set(&all).radius + 2)
        }
        _ => 64,
    }
}
