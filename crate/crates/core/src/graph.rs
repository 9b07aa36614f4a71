//! Rooted connected simple graphs, constructors for the standard classes,
//! structural predicates and the generalized KC-transformation.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A connected simple undirected graph on vertices `0..n` with a root.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    n: usize,
    root: Vertex,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl RootedGraph {
    /// Validates and builds a graph. Rejects an empty vertex set, loops,
    /// repeated edges, out-of-range endpoints or root, and disconnected
    /// input.
    pub fn new<I>(n: usize, edges: I, root: Vertex) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(Error::InvalidOrder {
                what: "graph",
                got: 0,
                min: 1,
            });
        }
        if root >= n {
            return Err(Error::RootOutOfRange { root, n });
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange(u, v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let g = RootedGraph {
            n,
            root,
            edges: list,
            adj,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Same graph, different root.
    pub fn with_root(&self, root: Vertex) -> Result<Self> {
        if root >= self.n {
            return Err(Error::RootOutOfRange { root, n: self.n });
        }
        Ok(RootedGraph {
            root,
            ..self.clone()
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Breadth-first order from `start`, skipping `blocked`.
    fn reachable_from(&self, start: Vertex, blocked: Option<Vertex>) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        if Some(start) == blocked {
            return seen;
        }
        if let Some(b) = blocked {
            seen[b] = true;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(b) = blocked {
            seen[b] = false;
        }
        seen
    }

    /// BFS distances from `v` (all finite since the graph is connected).
    pub fn distances_from(&self, v: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_from(0, None).iter().all(|&s| s)
    }

    /// Two-coloring with the root on side `false`, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        side[self.root] = Some(false);
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("queued vertices are colored");
            for &w in &self.adj[u] {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    pub fn is_unicyclic(&self) -> bool {
        self.edges.len() == self.n
    }

    pub fn is_pseudotree(&self) -> bool {
        self.edges.len() <= self.n
    }

    /// Vertices left after repeatedly deleting leaves: for a unicyclic
    /// graph this is exactly its cycle.
    pub fn two_core(&self) -> Vec<Vertex> {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; self.n];
        let mut stack: Vec<Vertex> = (0..self.n).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if removed[v] {
                continue;
            }
            removed[v] = true;
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        (0..self.n).filter(|&v| !removed[v]).collect()
    }

    /// Length of the unique cycle.
    pub fn cycle_length(&self) -> Result<usize> {
        if self.is_tree() {
            return Err(Error::NoCycle);
        }
        if !self.is_unicyclic() {
            return Err(Error::InvalidArgument(
                "cycle length is defined only for unicyclic graphs".into(),
            ));
        }
        Ok(self.two_core().len())
    }

    /// A cycle with vertex-disjoint paths hanging off distinct cycle
    /// vertices: cycle vertices have degree at most 3, all others at most 2.
    pub fn is_corolla(&self) -> bool {
        if !self.is_unicyclic() {
            return false;
        }
        let mut on_cycle = vec![false; self.n];
        for v in self.two_core() {
            on_cycle[v] = true;
        }
        (0..self.n).all(|v| self.degree(v) <= if on_cycle[v] { 3 } else { 2 })
    }

    pub fn diameter(&self) -> usize {
        (0..self.n)
            .map(|v| self.distances_from(v).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        if self.n <= 2 {
            return false;
        }
        let start = if v == 0 { 1 } else { 0 };
        let seen = self.reachable_from(start, Some(v));
        (0..self.n).any(|u| u != v && !seen[u])
    }

    pub fn cut_vertices(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.is_cut_vertex(v)).collect()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(Error::InvalidArgument(format!(
                "vertex {v} out of range for order {}",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    /// Induced subgraph on `vertices` (sorted, distinct), relabeled to
    /// `0..vertices.len()` in order. Not necessarily connected, so returned
    /// as an edge list.
    pub fn induced_edges(&self, vertices: &[Vertex]) -> Vec<(usize, usize)> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        self.edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect()
    }
}

/// Structural class recognized from the edge set alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClassTag {
    Path,
    Cycle,
    Complete,
    CompleteBipartite(usize, usize),
    Star,
    Corolla,
    Unicyclic(usize),
    Tree,
    Generic,
}

/// Most specific class tag. Overlaps resolve in the order complete, path,
/// star, cycle, complete bipartite, tree, corolla, unicyclic.
pub fn classify(g: &RootedGraph) -> GraphClassTag {
    let n = g.order();
    let m = g.edge_count();
    let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    if m == n * (n - 1) / 2 {
        return GraphClassTag::Complete;
    }
    if g.is_tree() {
        if max_deg <= 2 {
            return GraphClassTag::Path;
        }
        if max_deg == n - 1 {
            return GraphClassTag::Star;
        }
    }
    if g.is_unicyclic() && max_deg == 2 {
        return GraphClassTag::Cycle;
    }
    if let Some(side) = g.bipartition() {
        let p = side.iter().filter(|&&s| !s).count();
        let q = n - p;
        if p * q == m {
            return GraphClassTag::CompleteBipartite(p, q);
        }
    }
    if g.is_tree() {
        return GraphClassTag::Tree;
    }
    if g.is_corolla() {
        return GraphClassTag::Corolla;
    }
    if g.is_unicyclic() {
        return GraphClassTag::Unicyclic(g.two_core().len());
    }
    GraphClassTag::Generic
}

fn require(what: &'static str, got: usize, min: usize) -> Result<()> {
    if got < min {
        Err(Error::InvalidOrder { what, got, min })
    } else {
        Ok(())
    }
}

/// Path `0 - 1 - ... - (n-1)` rooted at the endpoint 0.
pub fn make_path(n: usize) -> Result<RootedGraph> {
    require("path", n, 1)?;
    RootedGraph::new(n, (1..n).map(|v| (v - 1, v)), 0)
}

pub fn make_cycle(n: usize) -> Result<RootedGraph> {
    require("cycle", n, 3)?;
    RootedGraph::new(n, (0..n).map(|v| (v, (v + 1) % n)), 0)
}

pub fn make_complete(n: usize) -> Result<RootedGraph> {
    require("complete graph", n, 1)?;
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    RootedGraph::new(n, edges, 0)
}

/// Parts `0..p` and `p..p+q`, rooted at vertex 0 of the first part.
pub fn make_complete_bipartite(p: usize, q: usize) -> Result<RootedGraph> {
    require("complete bipartite part", p.min(q), 1)?;
    let edges = (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v)));
    RootedGraph::new(p + q, edges, 0)
}

/// Star on `n` vertices with center 0 as the root.
pub fn make_star(n: usize) -> Result<RootedGraph> {
    require("star", n, 2)?;
    RootedGraph::new(n, (1..n).map(|v| (0, v)), 0)
}

/// Cycle `0..cycle_len` with a path of `path_lengths[i]` extra vertices
/// hanging from cycle vertex `i`. New vertices are numbered consecutively
/// after the cycle, path by path, outward.
pub fn make_corolla(cycle_len: usize, path_lengths: &[usize]) -> Result<RootedGraph> {
    require("corolla cycle", cycle_len, 3)?;
    if path_lengths.len() != cycle_len {
        return Err(Error::InvalidArgument(format!(
            "corolla needs {cycle_len} path lengths, got {}",
            path_lengths.len()
        )));
    }
    let mut edges: Vec<(Vertex, Vertex)> =
        (0..cycle_len).map(|v| (v, (v + 1) % cycle_len)).collect();
    let mut next = cycle_len;
    for (anchor, &len) in path_lengths.iter().enumerate() {
        let mut prev = anchor;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    RootedGraph::new(next, edges, 0)
}

/// `V_{a;b}`: vertices every one of whose paths to `b` passes through `a`
/// (including `a`). Sorted.
pub fn side_vertices(g: &RootedGraph, a: Vertex, b: Vertex) -> Result<Vec<Vertex>> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return Err(Error::InvalidArgument("side vertices need a != b".into()));
    }
    let seen = g.reachable_from(b, Some(a));
    Ok((0..g.order()).filter(|&v| !seen[v]).collect())
}

/// Generalized KC-transformation `G_{a -> b}`: every edge from `b` into
/// `V_{b;a}` is re-attached to `a`. Requires both sides to have more than
/// one vertex. The root index is kept.
pub fn kc_transform(g: &RootedGraph, a: Vertex, b: Vertex) -> Result<RootedGraph> {
    let side_a = side_vertices(g, a, b)?;
    let side_b = side_vertices(g, b, a)?;
    if side_a.len().min(side_b.len()) <= 1 {
        return Err(Error::TransformNotApplicable {
            a,
            b,
            reason: format!(
                "side sizes |V_(a;b)| = {}, |V_(b;a)| = {}; both must exceed 1",
                side_a.len(),
                side_b.len()
            ),
        });
    }
    let moved: Vec<Vertex> = g
        .neighbors(b)
        .iter()
        .copied()
        .filter(|w| side_b.binary_search(w).is_ok())
        .collect();
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !((u == b && moved.contains(&v)) || (v == b && moved.contains(&u))))
        .collect();
    for w in moved {
        let e = (a.min(w), a.max(w));
        if w != a && !edges.contains(&e) {
            edges.push(e);
        }
    }
    RootedGraph::new(g.order(), edges, g.root())
}

/// Vertices of `H`, the part of the graph strictly between cut vertices
/// `a` and `b`, together with `a` and `b`. Sorted.
pub fn between_vertices(g: &RootedGraph, a: Vertex, b: Vertex) -> Result<Vec<Vertex>> {
    let side_a = side_vertices(g, a, b)?;
    let side_b = side_vertices(g, b, a)?;
    Ok((0..g.order())
        .filter(|v| {
            *v == a
                || *v == b
                || (side_a.binary_search(v).is_err() && side_b.binary_search(v).is_err())
        })
        .collect())
}

/// Whether the subgraph induced between cut vertices `a` and `b` has an
/// automorphism exchanging them. Backtracking search; meant for small
/// graphs.
pub fn swap_automorphism_exists(g: &RootedGraph, a: Vertex, b: Vertex) -> Result<bool> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return Err(Error::InvalidArgument(
            "swap automorphism needs a != b".into(),
        ));
    }
    for v in [a, b] {
        if !g.is_cut_vertex(v) {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} is not a cut vertex"
            )));
        }
    }
    let verts = between_vertices(g, a, b)?;
    let edges = g.induced_edges(&verts);
    let ia = verts.binary_search(&a).expect("a is in H");
    let ib = verts.binary_search(&b).expect("b is in H");
    Ok(has_swap_automorphism(verts.len(), &edges, ia, ib))
}

/// Whether the graph on `0..k` with `edges` has an automorphism mapping
/// `x -> y` and `y -> x`.
pub(crate) fn has_swap_automorphism(
    k: usize,
    edges: &[(usize, usize)],
    x: usize,
    y: usize,
) -> bool {
    let mut adj = vec![vec![false; k]; k];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let deg: Vec<usize> = adj
        .iter()
        .map(|r| r.iter().filter(|&&e| e).count())
        .collect();
    if deg[x] != deg[y] {
        return false;
    }
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; k];
    image[x] = y;
    image[y] = x;
    used[x] = true;
    used[y] = true;
    let order: Vec<usize> = (0..k).filter(|&v| v != x && v != y).collect();

    fn extend(
        pos: usize,
        order: &[usize],
        adj: &[Vec<bool>],
        deg: &[usize],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(pos) else {
            return true;
        };
        for cand in 0..adj.len() {
            if used[cand] || deg[cand] != deg[v] {
                continue;
            }
            let consistent = (0..adj.len())
                .filter(|&u| image[u] != usize::MAX)
                .all(|u| adj[v][u] == adj[cand][image[u]]);
            if !consistent {
                continue;
            }
            image[v] = cand;
            used[cand] = true;
            if extend(pos + 1, order, adj, deg, image, used) {
                return true;
            }
            image[v] = usize::MAX;
            used[cand] = false;
        }
        false
    }

    extend(0, &order, &adj, &deg, &mut image, &mut used)
}
