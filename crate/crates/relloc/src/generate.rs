//! Graph constructors: named families (paths, grids, subdivided stars),
//! seeded random families with degree caps, and exhaustive catalogues used by
//! the verification suites.
//!
//! Every constructor is deterministic for fixed arguments (and seed), so
//! generated instances can be referenced by their parameters in reports.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError, GridShape, Vertex};

/// Path of order `n`, vertices numbered 1..=n along the path.
pub fn gen_path(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::BadParams("path order must be at least 1".into()));
    }
    let edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (v, v + 1)).collect();
    Ok(Graph::from_edges(n, &edges)?.with_shape(GridShape { cols: n, rows: 1 }))
}

/// `cols x rows` grid; vertex `(x, y)` is `(y-1)*cols + x`.
pub fn gen_grid(cols: usize, rows: usize) -> Result<Graph, GraphError> {
    if cols < 1 || rows < 1 {
        return Err(GraphError::BadParams("grid dimensions must be at least 1".into()));
    }
    let shape = GridShape { cols, rows };
    let mut edges = Vec::with_capacity(2 * cols * rows);
    for y in 1..=rows {
        for x in 1..=cols {
            if x < cols {
                edges.push((shape.vertex_at(x, y), shape.vertex_at(x + 1, y)));
            }
            if y < rows {
                edges.push((shape.vertex_at(x, y), shape.vertex_at(x, y + 1)));
            }
        }
    }
    Ok(Graph::from_edges(cols * rows, &edges)?.with_shape(shape))
}

/// Star with `k` rays, each ray subdivided into a leg of `k` vertices:
/// the hub is vertex 1 and leg `j` (0-based) occupies `2 + j*k ..= 1 + (j+1)*k`
/// walking outward. Order is `k*k + 1`.
pub fn gen_subdivided_star(k: usize) -> Result<Graph, GraphError> {
    if k < 2 {
        return Err(GraphError::BadParams("subdivided star needs k >= 2".into()));
    }
    let n = k * k + 1;
    let mut edges = Vec::with_capacity(n - 1);
    for leg in 0..k {
        let first = 2 + leg * k;
        edges.push((1, first));
        for step in 1..k {
            edges.push((first + step - 1, first + step));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random tree of order `n` with maximum degree at most `max_degree`:
/// vertices 2..=n attach one by one to a uniformly random earlier vertex
/// that still has degree capacity.
pub fn gen_random_tree(n: usize, max_degree: usize, seed: u64) -> Result<Graph, GraphError> {
    check_degree_feasible(n, max_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut degree = vec![0usize; n + 1];
    let mut open: Vec<Vertex> = vec![1]; // vertices with spare capacity
    for v in 2..=n {
        let idx = rng.gen_range(0..open.len());
        let u = open[idx];
        edges.push((u, v));
        degree[u] += 1;
        degree[v] += 1;
        if degree[u] == max_degree {
            open.swap_remove(idx);
        }
        if degree[v] < max_degree {
            open.push(v);
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random connected graph: a random bounded-degree spanning tree plus each
/// remaining vertex pair independently with probability `p`, skipped when it
/// would push either endpoint past `max_degree`.
pub fn gen_random_connected(
    n: usize,
    p: f64,
    max_degree: usize,
    seed: u64,
) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadParams(format!("edge probability {p} outside [0, 1]")));
    }
    check_degree_feasible(n, max_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut degree = vec![0usize; n + 1];
    let mut open: Vec<Vertex> = vec![1];
    for v in 2..=n {
        let idx = rng.gen_range(0..open.len());
        let u = open[idx];
        edges.push((u, v));
        degree[u] += 1;
        degree[v] += 1;
        if degree[u] == max_degree {
            open.swap_remove(idx);
        }
        if degree[v] < max_degree {
            open.push(v);
        }
    }
    let tree_edges: HashSet<(Vertex, Vertex)> =
        edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    for u in 1..n {
        for v in (u + 1)..=n {
            if tree_edges.contains(&(u, v)) {
                continue;
            }
            // Draw for every pair so the stream consumed from the generator
            // does not depend on current degrees; only acceptance does.
            let draw = rng.gen_bool(p);
            if draw && degree[u] < max_degree && degree[v] < max_degree {
                edges.push((u, v));
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    Graph::from_edges(n, &edges)
}

fn check_degree_feasible(n: usize, max_degree: usize) -> Result<(), GraphError> {
    if n < 1 {
        return Err(GraphError::BadParams("order must be at least 1".into()));
    }
    if n >= 2 && max_degree < 1 {
        return Err(GraphError::BadParams("max_degree must be at least 1 for n >= 2".into()));
    }
    if n >= 3 && max_degree < 2 {
        return Err(GraphError::BadParams("max_degree must be at least 2 for n >= 3".into()));
    }
    Ok(())
}

/// Every connected graph on exactly `n` labeled vertices, enumerated by edge
/// subset. Guarded to `n <= 6` (2^15 subsets); the verification suites use
/// `n <= 5`.
pub fn catalogue_connected(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n < 1 || n > 6 {
        return Err(GraphError::BadParams(format!("connected catalogue guarded to 1..=6, got {n}")));
    }
    let pairs: Vec<(Vertex, Vertex)> =
        (1..=n).flat_map(|u| ((u + 1)..=n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if let Ok(g) = Graph::from_edges(n, &edges) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Connected catalogue over all orders `1..=n_max`.
pub fn catalogue_connected_up_to(n_max: usize) -> Result<Vec<Graph>, GraphError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(catalogue_connected(n)?);
    }
    Ok(out)
}

/// One representative per isomorphism class of trees on exactly `n` vertices
/// with maximum degree at most `max_degree`. Enumerates Prüfer sequences with
/// an occurrence cap (degree = occurrences + 1) and dedupes by a canonical
/// form rooted at the tree center. Guarded to `n <= 10`.
pub fn catalogue_trees(n: usize, max_degree: usize) -> Result<Vec<Graph>, GraphError> {
    if n < 1 || n > 10 {
        return Err(GraphError::BadParams(format!("tree catalogue guarded to 1..=10, got {n}")));
    }
    if n == 1 {
        return Ok(vec![Graph::from_edges(1, &[])?]);
    }
    if n >= 3 && max_degree < 2 || max_degree < 1 {
        return Ok(Vec::new());
    }
    if n == 2 {
        return Ok(vec![Graph::from_edges(2, &[(1, 2)])?]);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    let mut counts = vec![0usize; n + 1];
    enumerate_pruefer(n, max_degree, 0, &mut seq, &mut counts, &mut |seq| {
        let adj = pruefer_decode(n, seq);
        let key = free_tree_canonical(&adj);
        if seen.insert(key) {
            let mut edges = Vec::with_capacity(n - 1);
            for u in 1..=n {
                for &v in &adj[u] {
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
            out.push(Graph::from_edges(n, &edges).expect("decoded tree is valid"));
        }
    });
    Ok(out)
}

fn enumerate_pruefer(
    n: usize,
    max_degree: usize,
    pos: usize,
    seq: &mut Vec<usize>,
    counts: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if pos == seq.len() {
        emit(seq);
        return;
    }
    for label in 1..=n {
        if counts[label] + 1 >= max_degree {
            continue; // degree = occurrences + 1 would exceed the cap
        }
        counts[label] += 1;
        seq[pos] = label;
        enumerate_pruefer(n, max_degree, pos + 1, seq, counts, emit);
        counts[label] -= 1;
    }
}

/// Standard Prüfer decoding into adjacency lists (1-indexed).
fn pruefer_decode(n: usize, seq: &[usize]) -> Vec<Vec<Vertex>> {
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s] += 1;
    }
    let mut adj = vec![Vec::new(); n + 1];
    let add = |a: usize, b: usize, adj: &mut Vec<Vec<Vertex>>| {
        adj[a].push(b);
        adj[b].push(a);
    };
    // `ptr` scans for the smallest leaf; `leaf` may run ahead of it.
    let mut ptr = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &s in seq {
        add(leaf, s, &mut adj);
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    // The final edge joins the remaining leaf with n.
    add(leaf, n, &mut adj);
    adj
}

/// Canonical string of a free tree: minimum over its one or two centers of
/// the sorted-children rooted encoding.
fn free_tree_canonical(adj: &[Vec<Vertex>]) -> String {
    let centers = tree_centers(adj);
    centers
        .iter()
        .map(|&c| rooted_canonical(adj, c, 0))
        .min()
        .expect("tree has a center")
}

fn rooted_canonical(adj: &[Vec<Vertex>], v: Vertex, parent: Vertex) -> String {
    let mut parts: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_canonical(adj, w, v))
        .collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// Centers of a tree given as adjacency lists, found by repeatedly peeling
/// leaves.
fn tree_centers(adj: &[Vec<Vertex>]) -> Vec<Vertex> {
    let n = adj.len() - 1;
    if n == 1 {
        return vec![1];
    }
    let mut degree: Vec<usize> = (0..=n).map(|v| adj[v].len()).collect();
    let mut removed = vec![false; n + 1];
    let mut layer: Vec<Vertex> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &w in &adj[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let mut centers: Vec<Vertex> = (1..=n).filter(|&v| !removed[v]).collect();
    centers.sort_unstable();
    centers
}
