//! Undirected, unweighted, connected graphs on vertices `1..=n`, plus the
//! metric helpers the pursuit strategies lean on: shortest-path distances,
//! set radii, tree centers, rooted tree views and splitting edges.
//!
//! Distance tables are materialized lazily per source and cached behind
//! [`OnceLock`]s, so concurrent games over a shared graph stay cheap. Graphs
//! produced by the grid/path generators carry their lattice shape, which
//! unlocks O(1) distances and linear-time set radii on instances far too big
//! for per-source BFS from every vertex.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Vertex id. Valid ids run from 1 to `Graph::n()` inclusive.
pub type Vertex = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(Vertex, usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph has no grid shape")]
    NotAGrid,
    #[error("bad construction parameters: {0}")]
    BadParams(String),
    #[error("bad edge list: {0}")]
    BadEdgeList(String),
}

/// Lattice dimensions for graphs built by the grid and path generators.
///
/// Vertex `(x, y)` with `1 <= x <= cols`, `1 <= y <= rows` is linearized as
/// `v = (y - 1) * cols + x`. A path of order n is a `cols = n, rows = 1` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridShape {
    pub cols: usize,
    pub rows: usize,
}

impl GridShape {
    pub fn vertex_at(&self, x: usize, y: usize) -> Vertex {
        debug_assert!(x >= 1 && x <= self.cols && y >= 1 && y <= self.rows);
        (y - 1) * self.cols + x
    }

    pub fn xy(&self, v: Vertex) -> (usize, usize) {
        let x = (v - 1) % self.cols + 1;
        let y = (v - 1) / self.cols + 1;
        (x, y)
    }

    /// Shortest-path distance in the lattice (L1 metric).
    pub fn dist(&self, u: Vertex, v: Vertex) -> usize {
        let (ux, uy) = self.xy(u);
        let (vx, vy) = self.xy(v);
        ux.abs_diff(vx) + uy.abs_diff(vy)
    }
}

/// Result of a set-radius query: the minimising center and the radius value.
///
/// `center` is the smallest vertex id among all vertices achieving the
/// min-max; it is *not* required to belong to the queried set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetRadiusResult {
    pub center: Vertex,
    pub radius: usize,
}

/// A connected undirected graph with cached per-source distance tables.
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>, // adj[v - 1], sorted ascending, no duplicates
    edge_count: usize,
    max_degree: usize,
    is_tree: bool,
    shape: Option<GridShape>,
    tables: Vec<OnceLock<Box<[u32]>>>, // tables[v - 1]: BFS distances from v
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edge_count)
            .field("max_degree", &self.max_degree)
            .field("is_tree", &self.is_tree)
            .field("shape", &self.shape)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Parallel edges are deduplicated;
    /// loops, out-of-range endpoints and disconnected inputs are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::BadParams("graph order must be at least 1".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            for w in [u, v] {
                if w < 1 || w > n {
                    return Err(GraphError::VertexOutOfRange(w, n));
                }
            }
            adj[u - 1].push(v);
            adj[v - 1].push(u);
        }
        let mut edge_count = 0;
        let mut max_degree = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
            max_degree = max_degree.max(list.len());
        }
        edge_count /= 2;

        let g = Graph {
            n,
            adj,
            edge_count,
            max_degree,
            is_tree: false,
            shape: None,
            tables: (0..n).map(|_| OnceLock::new()).collect(),
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let is_tree = edge_count == n - 1;
        Ok(Graph { is_tree, ..g })
    }

    /// Tags a generator-built graph with its lattice shape. The caller is
    /// responsible for the shape actually matching the adjacency; the unit
    /// tests cross-check lattice distances against plain BFS.
    pub(crate) fn with_shape(mut self, shape: GridShape) -> Graph {
        debug_assert_eq!(shape.cols * shape.rows, self.n);
        self.shape = Some(shape);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_tree(&self) -> bool {
        self.is_tree
    }

    pub fn shape(&self) -> Option<GridShape> {
        self.shape
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n
    }

    /// Open neighborhood, sorted ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    /// Closed neighborhood `N[v]`, sorted ascending.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let nb = self.neighbors(v);
        let mut out = Vec::with_capacity(nb.len() + 1);
        let mut inserted = false;
        for &u in nb {
            if !inserted && v < u {
                out.push(v);
                inserted = true;
            }
            out.push(u);
        }
        if !inserted {
            out.push(v);
        }
        out
    }

    /// All edges as `(u, v)` pairs with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (1..=self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![1];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// BFS distance table from `src`, materialized on first use and cached.
    pub fn dist_table(&self, src: Vertex) -> &[u32] {
        assert!(self.contains(src), "source {src} out of range");
        self.tables[src - 1].get_or_init(|| {
            let mut dist = vec![u32::MAX; self.n];
            dist[src - 1] = 0;
            let mut queue = std::collections::VecDeque::with_capacity(self.n);
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                let dv = dist[v - 1];
                for &w in self.neighbors(v) {
                    if dist[w - 1] == u32::MAX {
                        dist[w - 1] = dv + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist.into_boxed_slice()
        })
    }

    /// Shortest-path distance between two vertices.
    pub fn dist(&self, u: Vertex, v: Vertex) -> usize {
        if let Some(shape) = self.shape {
            return shape.dist(u, v);
        }
        self.dist_table(u)[v - 1] as usize
    }

    /// Radius of a vertex set: `min_u max_{m in set} dist(u, m)`, minimised
    /// over *all* vertices `u` of the graph. Ties on the minimising center go
    /// to the smallest vertex id.
    ///
    /// Cost: O(n + |set|) on shaped graphs, O(n) on trees, O(n * |set|)
    /// distance lookups otherwise.
    pub fn radius_of_set(&self, set: &[Vertex]) -> SetRadiusResult {
        assert!(!set.is_empty(), "radius of empty set is undefined");
        for &m in set {
            assert!(self.contains(m), "set member {m} out of range");
        }
        if let Some(shape) = self.shape {
            return self.radius_of_set_lattice(shape, set);
        }
        if self.is_tree {
            return self.radius_of_set_tree(set);
        }
        self.radius_of_set_generic(set)
    }

    /// Lattice fast path: the farthest set member from any point is governed
    /// by the four extreme values of `x + y` and `x - y` over the set.
    fn radius_of_set_lattice(&self, shape: GridShape, set: &[Vertex]) -> SetRadiusResult {
        let (mut min_s, mut max_s) = (isize::MAX, isize::MIN);
        let (mut min_d, mut max_d) = (isize::MAX, isize::MIN);
        for &m in set {
            let (x, y) = shape.xy(m);
            let (x, y) = (x as isize, y as isize);
            min_s = min_s.min(x + y);
            max_s = max_s.max(x + y);
            min_d = min_d.min(x - y);
            max_d = max_d.max(x - y);
        }
        let mut best = SetRadiusResult { center: 1, radius: usize::MAX };
        for v in 1..=self.n {
            let (x, y) = shape.xy(v);
            let (s, d) = ((x + y) as isize, x as isize - y as isize);
            let ecc = (s - min_s).max(max_s - s).max(d - min_d).max(max_d - d) as usize;
            if ecc < best.radius {
                best = SetRadiusResult { center: v, radius: ecc };
            }
        }
        best
    }

    /// Tree fast path: in a tree, eccentricity within a set is realized by
    /// one of the two endpoints of a set-diameter pair, so two BFS tables
    /// suffice.
    fn radius_of_set_tree(&self, set: &[Vertex]) -> SetRadiusResult {
        let far_from = |src: Vertex| -> Vertex {
            let t = self.dist_table(src);
            let mut best = set[0];
            for &m in &set[1..] {
                if t[m - 1] > t[best - 1] {
                    best = m;
                }
            }
            best
        };
        let a = far_from(set[0]);
        let b = far_from(a);
        let ta = self.dist_table(a);
        let tb = self.dist_table(b);
        let mut best = SetRadiusResult { center: 1, radius: usize::MAX };
        for v in 1..=self.n {
            let ecc = ta[v - 1].max(tb[v - 1]) as usize;
            if ecc < best.radius {
                best = SetRadiusResult { center: v, radius: ecc };
            }
        }
        best
    }

    fn radius_of_set_generic(&self, set: &[Vertex]) -> SetRadiusResult {
        let tables: Vec<&[u32]> = set.iter().map(|&m| self.dist_table(m)).collect();
        let mut best = SetRadiusResult { center: 1, radius: usize::MAX };
        for v in 1..=self.n {
            let mut ecc = 0u32;
            for t in &tables {
                ecc = ecc.max(t[v - 1]);
                if ecc as usize >= best.radius {
                    break;
                }
            }
            if (ecc as usize) < best.radius {
                best = SetRadiusResult { center: v, radius: ecc as usize };
            }
        }
        best
    }

    /// Center of a tree: the vertex minimising eccentricity, ties to the
    /// smaller id (a tree has at most two centers and they are adjacent).
    pub fn tree_center(&self) -> Result<Vertex, GraphError> {
        if !self.is_tree {
            return Err(GraphError::NotATree);
        }
        // Double sweep: the center is the middle of any longest path.
        let far = |src: Vertex| -> Vertex {
            let t = self.dist_table(src);
            let mut best = src;
            for v in 1..=self.n {
                if t[v - 1] > t[best - 1] {
                    best = v;
                }
            }
            best
        };
        let a = far(1);
        let b = far(a);
        let ta = self.dist_table(a);
        let len = ta[b - 1] as usize;
        // Walk the a..b path to its midpoint(s).
        let mut path = vec![a];
        let mut cur = a;
        let tb = self.dist_table(b);
        while cur != b {
            let next = *self
                .neighbors(cur)
                .iter()
                .find(|&&w| tb[w - 1] + 1 == tb[cur - 1])
                .expect("path step exists in a tree");
            path.push(next);
            cur = next;
        }
        let lo = path[len / 2];
        let hi = path[len.div_ceil(2)];
        Ok(lo.min(hi))
    }

    /// View of a tree rooted at `root`: parents, sorted child lists, subtree
    /// depths and an Euler interval per vertex for O(1) subtree membership.
    pub fn rooted_view(&self, root: Vertex) -> Result<RootedView, GraphError> {
        if !self.is_tree {
            return Err(GraphError::NotATree);
        }
        if !self.contains(root) {
            return Err(GraphError::VertexOutOfRange(root, self.n));
        }
        let n = self.n;
        let mut parent = vec![None; n];
        let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n); // preorder
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root - 1] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in self.neighbors(v) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    parent[w - 1] = Some(v);
                    children[v - 1].push(w);
                    stack.push(w);
                }
            }
        }
        // Neighbor lists are sorted, so child lists already are too.
        let mut tin = vec![0usize; n];
        let mut tout = vec![0usize; n];
        let mut depth = vec![0usize; n];
        let mut subtree_depth = vec![0usize; n];
        // Euler intervals by iterative DFS in child order.
        let mut clock = 0usize;
        let mut dfs: Vec<(Vertex, bool)> = vec![(root, false)];
        while let Some((v, done)) = dfs.pop() {
            if done {
                tout[v - 1] = clock;
                clock += 1;
                continue;
            }
            tin[v - 1] = clock;
            clock += 1;
            dfs.push((v, true));
            for &c in children[v - 1].iter().rev() {
                depth[c - 1] = depth[v - 1] + 1;
                dfs.push((c, false));
            }
        }
        // Subtree depths bottom-up over the reverse preorder.
        for &v in order.iter().rev() {
            let mut d = 0;
            for &c in &children[v - 1] {
                d = d.max(subtree_depth[c - 1] + 1);
            }
            subtree_depth[v - 1] = d;
        }
        Ok(RootedView { root, parent, children, depth, subtree_depth, tin, tout })
    }

    /// Finds the edge `(u, v)` maximising the smaller of the two counts
    /// `|{m in set : dist(u, m) < dist(v, m)}|` and
    /// `|{m in set : dist(u, m) > dist(v, m)}|`; ties go to the
    /// lexicographically smallest edge.
    ///
    /// For every graph of maximum degree D the returned minimum is at least
    /// `(|set| - 1) / D`; the verification suites assert this.
    pub fn find_splitting_edge(&self, set: &[Vertex]) -> SplittingEdge {
        assert!(!set.is_empty(), "splitting edge of empty set is undefined");
        assert!(self.edge_count > 0, "graph has no edges");
        let mut best: Option<SplittingEdge> = None;
        for (u, v) in self.edges() {
            let tu = self.dist_table(u);
            let tv = self.dist_table(v);
            let mut closer_to_u = 0usize;
            let mut closer_to_v = 0usize;
            for &m in set {
                match tu[m - 1].cmp(&tv[m - 1]) {
                    std::cmp::Ordering::Less => closer_to_u += 1,
                    std::cmp::Ordering::Greater => closer_to_v += 1,
                    std::cmp::Ordering::Equal => {}
                }
            }
            let cand = SplittingEdge { u, v, closer_to_u, closer_to_v };
            let better = match &best {
                None => true,
                Some(b) => cand.min_side() > b.min_side(),
            };
            if better {
                best = Some(cand);
            }
        }
        best.expect("graph has at least one edge")
    }

    /// Serializes as an edge-list document: a `n m` header line followed by
    /// one `u v` line per edge, ascending, LF line endings.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list document format produced by
    /// [`Graph::to_edge_list_string`].
    pub fn from_edge_list_str(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| GraphError::BadEdgeList("empty document".into()))?;
        let mut it = header.split_whitespace();
        let parse = |tok: Option<&str>, what: &str| -> Result<usize, GraphError> {
            tok.ok_or_else(|| GraphError::BadEdgeList(format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| GraphError::BadEdgeList(format!("bad {what}")))
        };
        let n = parse(it.next(), "vertex count")?;
        let m = parse(it.next(), "edge count")?;
        if it.next().is_some() {
            return Err(GraphError::BadEdgeList("trailing tokens in header".into()));
        }
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let u = parse(it.next(), "edge endpoint")?;
            let v = parse(it.next(), "edge endpoint")?;
            if it.next().is_some() {
                return Err(GraphError::BadEdgeList(format!("trailing tokens in edge line {line:?}")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::BadEdgeList(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::from_edges(n, &edges)
    }
}

/// Directional counts for a splitting edge; see
/// [`Graph::find_splitting_edge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplittingEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub closer_to_u: usize,
    pub closer_to_v: usize,
}

impl SplittingEdge {
    pub fn min_side(&self) -> usize {
        self.closer_to_u.min(self.closer_to_v)
    }
}

/// A tree rooted at a chosen vertex, with subtree metadata.
#[derive(Debug, Clone)]
pub struct RootedView {
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    depth: Vec<usize>,
    subtree_depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl RootedView {
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v - 1]
    }

    /// Children of `v`, sorted ascending.
    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v - 1]
    }

    /// Distance from the root.
    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v - 1]
    }

    /// Depth of the subtree hanging at `v` (0 for leaves).
    pub fn subtree_depth(&self, v: Vertex) -> usize {
        self.subtree_depth[v - 1]
    }

    /// Whether `v` lies in the subtree rooted at `r` (inclusive).
    pub fn in_subtree(&self, v: Vertex, r: Vertex) -> bool {
        self.tin[r - 1] <= self.tin[v - 1] && self.tout[v - 1] <= self.tout[r - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_grid, gen_path, gen_subdivided_star};

    /// Independent BFS used as the distance oracle for these tests.
    fn bfs_dist(g: &Graph, src: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; g.n()];
        dist[src - 1] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w - 1] == usize::MAX {
                    dist[w - 1] = dist[v - 1] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Exhaustive min-max double loop, the radius oracle for these tests.
    fn brute_radius(g: &Graph, set: &[Vertex]) -> SetRadiusResult {
        let mut best = SetRadiusResult { center: 0, radius: usize::MAX };
        for u in 1..=g.n() {
            let du = bfs_dist(g, u);
            let ecc = set.iter().map(|&m| du[m - 1]).max().unwrap();
            if ecc < best.radius {
                best = SetRadiusResult { center: u, radius: ecc };
            }
        }
        best
    }

    #[test]
    fn builds_single_edge() {
        let g = Graph::from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(1), &[2]);
        assert!(g.is_tree());
    }

    #[test]
    fn deduplicates_parallel_edges() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_tree());
    }

    #[test]
    fn rejects_disconnected_and_loops() {
        assert!(matches!(Graph::from_edges(4, &[(1, 2), (3, 4)]), Err(GraphError::Disconnected)));
        assert!(matches!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::LoopEdge(1))));
        assert!(matches!(Graph::from_edges(2, &[(1, 3)]), Err(GraphError::VertexOutOfRange(3, 2))));
    }

    #[test]
    fn closed_neighborhood_is_sorted() {
        let g = gen_path(5).unwrap();
        assert_eq!(g.closed_neighborhood(3), vec![2, 3, 4]);
        assert_eq!(g.closed_neighborhood(1), vec![1, 2]);
        assert_eq!(g.closed_neighborhood(5), vec![4, 5]);
    }

    #[test]
    fn path_distances() {
        let g = gen_path(5).unwrap();
        assert_eq!(g.dist(1, 5), 4);
        assert_eq!(g.dist(3, 3), 0);
        for u in 1..=5 {
            let oracle = bfs_dist(&g, u);
            for v in 1..=5 {
                assert_eq!(g.dist(u, v), oracle[v - 1]);
            }
        }
    }

    #[test]
    fn grid_distances_match_bfs() {
        for (cols, rows) in [(3, 3), (4, 2), (1, 6), (5, 4)] {
            let g = gen_grid(cols, rows).unwrap();
            for u in 1..=g.n() {
                let oracle = bfs_dist(&g, u);
                for v in 1..=g.n() {
                    assert_eq!(g.dist(u, v), oracle[v - 1], "cols={cols} rows={rows} u={u} v={v}");
                }
            }
        }
        let g = gen_grid(3, 3).unwrap();
        // corner to corner
        assert_eq!(g.dist(1, 9), 4);
    }

    #[test]
    fn radius_examples() {
        let p5 = gen_path(5).unwrap();
        assert_eq!(p5.radius_of_set(&[1, 5]), SetRadiusResult { center: 3, radius: 2 });
        assert_eq!(p5.radius_of_set(&[4]), SetRadiusResult { center: 4, radius: 0 });

        let c4 = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let r = c4.radius_of_set(&[1, 2, 3, 4]);
        assert_eq!(r, brute_radius(&c4, &[1, 2, 3, 4]));
        // Every vertex sees the opposite corner at distance 2.
        assert_eq!(r.radius, 2);
    }

    #[test]
    fn radius_matches_brute_force_on_assorted_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut graphs: Vec<Graph> = vec![
            gen_path(9).unwrap(),
            gen_grid(5, 3).unwrap(),
            gen_grid(8, 8).unwrap(),
            gen_subdivided_star(3).unwrap(),
            crate::generate::gen_random_tree(40, 4, 11).unwrap(),
            crate::generate::gen_random_connected(30, 0.12, 5, 13).unwrap(),
        ];
        graphs.push(crate::generate::gen_random_tree(64, 3, 5).unwrap());
        for g in &graphs {
            for _ in 0..40 {
                let size = rng.gen_range(1..=g.n());
                let mut set: Vec<Vertex> = (1..=g.n()).collect();
                for i in (1..set.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    set.swap(i, j);
                }
                set.truncate(size);
                set.sort_unstable();
                assert_eq!(g.radius_of_set(&set), brute_radius(g, &set), "{g:?} set={set:?}");
            }
        }
    }

    #[test]
    fn tree_center_examples() {
        assert_eq!(gen_path(5).unwrap().tree_center().unwrap(), 3);
        assert_eq!(gen_path(4).unwrap().tree_center().unwrap(), 2);
        let star = Graph::from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(star.tree_center().unwrap(), 1);
        let c4 = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert!(matches!(c4.tree_center(), Err(GraphError::NotATree)));
    }

    #[test]
    fn tree_center_minimizes_eccentricity() {
        for seed in 0..20 {
            let g = crate::generate::gen_random_tree(2 + (seed as usize * 3) % 60, 2 + (seed as usize) % 4, seed).unwrap();
            let c = g.tree_center().unwrap();
            let all: Vec<Vertex> = (1..=g.n()).collect();
            let best = brute_radius(&g, &all);
            let ecc_c = all.iter().map(|&m| g.dist(c, m)).max().unwrap();
            assert_eq!(ecc_c, best.radius);
            // smallest id among centers
            for u in 1..c {
                let ecc_u = all.iter().map(|&m| g.dist(u, m)).max().unwrap();
                assert!(ecc_u > best.radius, "vertex {u} ties center {c}");
            }
        }
    }

    #[test]
    fn rooted_view_basics() {
        let p3 = gen_path(3).unwrap();
        let v = p3.rooted_view(2).unwrap();
        assert_eq!(v.children(2), &[1, 3]);
        assert_eq!(v.subtree_depth(2), 1);
        assert_eq!(v.parent(1), Some(2));

        let p5 = gen_path(5).unwrap();
        let v = p5.rooted_view(3).unwrap();
        assert_eq!(v.subtree_depth(3), 2);
        assert!(v.in_subtree(1, 2));
        assert!(!v.in_subtree(4, 2));

        let star = Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let v = star.rooted_view(2).unwrap();
        assert_eq!(v.subtree_depth(2), 2);
        assert_eq!(v.children(2), &[1]);
        assert_eq!(v.children(1), &[3, 4]);
    }

    #[test]
    fn splitting_edge_examples() {
        let p3 = gen_path(3).unwrap();
        let e = p3.find_splitting_edge(&[1, 2, 3]);
        assert_eq!((e.u, e.v), (1, 2));
        assert_eq!((e.closer_to_u, e.closer_to_v), (1, 2));

        let star = Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let e = star.find_splitting_edge(&[2, 3, 4]);
        assert_eq!((e.u, e.v), (1, 2));
        assert_eq!(e.min_side(), 1);

        let single = p3.find_splitting_edge(&[2]);
        assert_eq!(single.min_side(), 0); // bound (|M|-1)/D = 0 still holds
    }

    #[test]
    fn splitting_edge_bound_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for case in 0..60 {
            let n = 2 + (case % 30);
            let dmax = 2 + case % 4;
            let g = crate::generate::gen_random_connected(n, 0.15, dmax, 1000 + case as u64).unwrap();
            let size = rng.gen_range(1..=n);
            let mut set: Vec<Vertex> = (1..=n).collect();
            for i in (1..set.len()).rev() {
                let j = rng.gen_range(0..=i);
                set.swap(i, j);
            }
            set.truncate(size);
            set.sort_unstable();
            let e = g.find_splitting_edge(&set);
            let bound = set.len() - 1;
            assert!(e.closer_to_u * g.max_degree() >= bound, "{g:?} {set:?} {e:?}");
            assert!(e.closer_to_v * g.max_degree() >= bound, "{g:?} {set:?} {e:?}");
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = gen_grid(3, 2).unwrap();
        let text = g.to_edge_list_string();
        let h = Graph::from_edge_list_str(&text).unwrap();
        assert_eq!(h.n(), g.n());
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(h.to_edge_list_string(), text);
        assert!(text.starts_with("6 7\n"));
    }

    #[test]
    fn edge_list_rejects_malformed() {
        assert!(Graph::from_edge_list_str("").is_err());
        assert!(Graph::from_edge_list_str("2 1\n1 2\n1 3\n").is_err()); // count mismatch
        assert!(Graph::from_edge_list_str("2 x\n").is_err());
        assert!(Graph::from_edge_list_str("3 2\n1 2\n2 4\n").is_err()); // out of range
    }

    #[test]
    fn dist_tables_are_shared_across_threads() {
        let g = std::sync::Arc::new(gen_grid(20, 20).unwrap());
        let mut handles = Vec::new();
        for t in 0..4 {
            let g = g.clone();
            handles.push(std::thread::spawn(move || {
                let mut acc = 0usize;
                for v in 1..=g.n() {
                    acc += g.dist_table(1 + t)[v - 1] as usize;
                }
                acc
            }));
        }
        let sums: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (t, s) in sums.iter().enumerate() {
            let expect: usize = (1..=g.n()).map(|v| g.dist_table(1 + t)[v - 1] as usize).sum();
            assert_eq!(*s, expect);
        }
    }
}
