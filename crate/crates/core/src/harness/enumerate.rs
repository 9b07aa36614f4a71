//! Generators for labeled trees, connected graphs, unicyclic graphs and
//! corollas.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{make_corolla, RootedGraph};

/// Largest order whose edge subsets fit a `u64` mask.
const MASK_LIMIT: usize = 11;

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut adj = [0u16; MASK_LIMIT];
    let mut bits = mask;
    while bits != 0 {
        let b = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (u, v) = pairs[b];
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let full: u16 = (1u16 << n) - 1;
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == full
}

fn mask_graph(n: usize, pairs: &[(usize, usize)], mask: u64) -> RootedGraph {
    let edges = (0..pairs.len())
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| pairs[b]);
    RootedGraph::new(n, edges, 0).expect("connected mask gives a valid graph")
}

fn check_order(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidOrder {
            what: "graph sweep",
            got: 0,
            min: 1,
        });
    }
    let cap = cap.min(MASK_LIMIT);
    if n > cap {
        return Err(Error::LimitExceeded { n, cap });
    }
    Ok(())
}

/// All labeled connected graphs on `n` vertices, rooted at 0, in
/// increasing order of their edge-subset mask (bit `i` is the `i`-th pair
/// in lexicographic order).
#[derive(Clone, Debug)]
pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
}

impl ConnectedGraphs {
    /// Parallel view of the same set. Order is not preserved.
    pub fn into_par_iter(self) -> impl ParallelIterator<Item = RootedGraph> {
        let ConnectedGraphs {
            n,
            pairs,
            next_mask,
            end,
        } = self;
        let build = pairs.clone();
        (next_mask..end)
            .into_par_iter()
            .filter(move |&mask| mask_connected(n, &pairs, mask))
            .map(move |mask| mask_graph(n, &build, mask))
    }
}

impl Iterator for ConnectedGraphs {
    type Item = RootedGraph;

    fn next(&mut self) -> Option<RootedGraph> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            if mask_connected(self.n, &self.pairs, mask) {
                return Some(mask_graph(self.n, &self.pairs, mask));
            }
        }
        None
    }
}

/// Connected labeled graphs of order `n`, refusing `n > cap`.
pub fn enumerate_connected_graphs(n: usize, cap: usize) -> Result<ConnectedGraphs> {
    check_order(n, cap)?;
    let pairs = vertex_pairs(n);
    let end = 1u64 << pairs.len();
    Ok(ConnectedGraphs {
        n,
        pairs,
        next_mask: 0,
        end,
    })
}

/// Masks with exactly `k` of the low `m` bits set, ascending (Gosper).
fn fixed_weight_masks(m: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << m;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = (k <= m).then_some(first);
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            Some((((ripple ^ c) >> 2) / low) | ripple)
        };
        Some(c)
    })
}

/// Labeled connected graphs on `n` vertices with exactly `n` edges, in
/// ascending mask order.
pub fn unicyclic_graphs(n: usize, cap: usize) -> Result<Vec<RootedGraph>> {
    check_order(n, cap)?;
    let pairs = vertex_pairs(n);
    Ok(fixed_weight_masks(pairs.len(), n)
        .filter(|&mask| mask_connected(n, &pairs, mask))
        .map(|mask| mask_graph(n, &pairs, mask))
        .collect())
}

/// Decodes a Prüfer sequence over `0..n` into a tree on `n` vertices.
fn prufer_decode(n: usize, seq: &[usize]) -> RootedGraph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    RootedGraph::new(n, edges, 0).expect("Prüfer decoding yields a tree")
}

pub(crate) fn tree_count(n: usize) -> u64 {
    if n <= 2 {
        1
    } else {
        (n as u64).pow(n as u32 - 2)
    }
}

/// The tree whose Prüfer sequence is the base-`n` expansion of `code`.
pub(crate) fn tree_at(n: usize, mut code: u64) -> RootedGraph {
    match n {
        1 => RootedGraph::new(1, [], 0).expect("single vertex"),
        2 => RootedGraph::new(2, [(0, 1)], 0).expect("single edge"),
        _ => {
            let mut seq = vec![0; n - 2];
            for slot in seq.iter_mut().rev() {
                *slot = (code % n as u64) as usize;
                code /= n as u64;
            }
            prufer_decode(n, &seq)
        }
    }
}

/// All `n^(n-2)` labeled trees on `n` vertices, rooted at 0, in
/// lexicographic order of their Prüfer sequences.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = RootedGraph>> {
    if n == 0 {
        return Err(Error::InvalidOrder {
            what: "tree",
            got: 0,
            min: 1,
        });
    }
    Ok((0..tree_count(n)).map(move |code| tree_at(n, code)))
}

/// Every corolla of order `n`, as `(cycle length, attached path lengths,
/// graph)`. Rotations and reflections are listed separately.
pub fn corollas(n: usize) -> Vec<(usize, Vec<usize>, RootedGraph)> {
    let mut out = Vec::new();
    for c in 3..=n {
        let mut parts = vec![0usize; c];
        compositions(n - c, 0, &mut parts, &mut |p| {
            let g = make_corolla(c, p).expect("valid corolla");
            out.push((c, p.to_vec(), g));
        });
    }
    out
}

fn compositions(
    remaining: usize,
    idx: usize,
    parts: &mut [usize],
    emit: &mut impl FnMut(&[usize]),
) {
    if idx + 1 == parts.len() {
        parts[idx] = remaining;
        emit(parts);
        return;
    }
    for take in 0..=remaining {
        parts[idx] = take;
        compositions(remaining - take, idx + 1, parts, emit);
    }
}
