//! Exhaustive checks of extremal and transformation statements over all
//! labeled graphs of a given order.
//!
//! Every check evaluates instances on the current rayon pool and merges
//! per-instance tallies with an order-independent reduction; violations
//! are sorted before they are returned, so repeated runs give identical
//! results apart from `elapsed`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{avg1_path, avg1_star, avg_strong1_star, closed_form, count1_unicyclic};
use crate::error::{Error, Result};
use crate::graph::make_path;
use crate::graph::{
    between_vertices, kc_transform, side_vertices, swap_automorphism_exists, RootedGraph,
};
use crate::harness::enumerate::{
    corollas, enumerate_connected_graphs, tree_at, tree_count, unicyclic_graphs,
};
use crate::io::to_json;
use crate::lipschitz::{avg_range_bruteforce, count_mappings, Mode};
use crate::rational::ExactRational;

const WEAK: Mode = Mode::Weak(1);
const STRONG: Mode = Mode::Strong(1);

/// Largest orders each family of sweeps accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// All connected graphs (LNR, BHM).
    pub graphs: usize,
    /// Labeled trees.
    pub trees: usize,
    /// KC-transformation, corolla and unicyclic sweeps.
    pub transforms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            graphs: 6,
            trees: 8,
            transforms: 7,
        }
    }
}

impl Caps {
    pub const ENV_VAR: &'static str = "LIPWALK_MAX_N";

    /// Every cap set to `n`.
    pub fn uniform(n: usize) -> Self {
        Caps {
            graphs: n,
            trees: n,
            transforms: n,
        }
    }

    /// Defaults, or all caps taken from `LIPWALK_MAX_N` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => v.trim().parse().map(Caps::uniform).map_err(|_| {
                Error::Parse(format!(
                    "{} must be a non-negative integer, got {v:?}",
                    Self::ENV_VAR
                ))
            }),
            Err(_) => Ok(Caps::default()),
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::LimitExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// A failed inequality `lhs <= rhs` (or equality) on one instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    /// Graph in the JSON file encoding.
    pub graph: String,
    pub relation: String,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepParameters {
    pub check: String,
    pub n: usize,
    pub modes: Vec<Mode>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub parameters: SweepParameters,
    pub instance_count: u64,
    /// Instances that matched the family but could not be evaluated.
    pub skipped: u64,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Equality of everything except timing.
    pub fn same_outcome(&self, other: &SweepResult) -> bool {
        self.parameters == other.parameters
            && self.instance_count == other.instance_count
            && self.skipped == other.skipped
            && self.violations == other.violations
            && self.notes == other.notes
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<28} n={:<2} instances={:<9} skipped={:<4} violations={:<3} {:>8.2}s  {}",
            self.parameters.check,
            self.parameters.n,
            self.instance_count,
            self.skipped,
            self.violations.len(),
            self.elapsed.as_secs_f64(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Default)]
struct Tally {
    instances: u64,
    skipped: u64,
    flagged: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn merge(mut self, mut other: Tally) -> Tally {
        self.instances += other.instances;
        self.skipped += other.skipped;
        self.flagged += other.flagged;
        self.violations.append(&mut other.violations);
        self
    }

    fn require_le(
        &mut self,
        g: &RootedGraph,
        relation: &str,
        lhs: &ExactRational,
        rhs: &ExactRational,
    ) {
        if lhs > rhs {
            self.violate(g, relation, lhs, rhs);
        }
    }

    fn violate(
        &mut self,
        g: &RootedGraph,
        relation: &str,
        lhs: &ExactRational,
        rhs: &ExactRational,
    ) {
        self.violations.push(Violation {
            graph: to_json(g).trim_end().to_string(),
            relation: relation.to_string(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        });
    }

    fn finish(
        mut self,
        check: &str,
        n: usize,
        modes: Vec<Mode>,
        notes: Vec<String>,
        start: Instant,
    ) -> SweepResult {
        self.violations.sort();
        SweepResult {
            parameters: SweepParameters {
                check: check.to_string(),
                n,
                modes,
            },
            instance_count: self.instances,
            skipped: self.skipped,
            violations: self.violations,
            notes,
            elapsed: start.elapsed(),
        }
    }
}

fn reduce<I>(iter: I) -> Result<Tally>
where
    I: ParallelIterator<Item = Result<Tally>>,
{
    iter.try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

fn avg(g: &RootedGraph, mode: Mode) -> Result<ExactRational> {
    Ok(avg_range_bruteforce(g, mode)?.average().clone())
}

/// Runs `f` on a dedicated pool with `workers` threads, or on the global
/// pool when `workers` is `None`.
pub fn with_workers<T, F>(workers: Option<usize>, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match workers {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Every connected graph on `n` vertices has `avg1(G) <= avg1(P_n)`.
/// Graphs of a class with a closed form are also checked against it.
pub fn check_lnr(n: usize, caps: &Caps) -> Result<SweepResult> {
    let start = Instant::now();
    let graphs = enumerate_connected_graphs(n, caps.graphs)?;
    let bound = avg1_path(n)?;
    let tally = reduce(graphs.into_par_iter().map(|g| {
        let mut t = Tally {
            instances: 1,
            ..Tally::default()
        };
        let value = avg(&g, WEAK)?;
        t.require_le(&g, "avg1(G) <= avg1(P_n)", &value, &bound);
        if let Some(cf) = closed_form(&g, WEAK) {
            let cf = cf?;
            t.flagged += 1;
            if cf.value != value {
                t.violate(
                    &g,
                    &format!("closed form {} == brute force", cf.formula_name),
                    &cf.value,
                    &value,
                );
            }
        }
        Ok(t)
    }))?;
    let notes = vec![
        format!("avg1(P_{n}) = {bound}"),
        format!(
            "{} graphs cross-checked against a closed form",
            tally.flagged
        ),
    ];
    Ok(tally.finish("lnr", n, vec![WEAK], notes, start))
}

/// Every connected bipartite graph on `n` vertices has
/// `avg±1(G) <= avg±1(P_n)`, both sides by enumeration.
pub fn check_bhm(n: usize, caps: &Caps) -> Result<SweepResult> {
    let start = Instant::now();
    let graphs = enumerate_connected_graphs(n, caps.graphs)?;
    let bound = avg(&make_path(n)?, STRONG)?;
    let tally = reduce(
        graphs
            .into_par_iter()
            .filter(RootedGraph::is_bipartite)
            .map(|g| {
                let mut t = Tally {
                    instances: 1,
                    ..Tally::default()
                };
                let value = avg(&g, STRONG)?;
                t.require_le(&g, "avg±1(G) <= avg±1(P_n)", &value, &bound);
                Ok(t)
            }),
    )?;
    let notes = vec![format!("avg±1(P_{n}) = {bound}")];
    Ok(tally.finish("bhm", n, vec![STRONG], notes, start))
}

/// Every labeled tree on `n` vertices lies between the star and the path,
/// for both weak and strong 1-Lipschitz mappings.
pub fn check_tree_extremality(n: usize, caps: &Caps) -> Result<SweepResult> {
    let start = Instant::now();
    check_cap(n, caps.trees)?;
    let weak_lo = avg1_star(n)?;
    let weak_hi = avg1_path(n)?;
    let strong_lo = avg_strong1_star(n)?;
    let strong_hi = avg(&make_path(n)?, STRONG)?;
    let tally = reduce((0..tree_count(n)).into_par_iter().map(|code| {
        let tree = tree_at(n, code);
        let mut t = Tally {
            instances: 1,
            ..Tally::default()
        };
        let weak = avg(&tree, WEAK)?;
        t.require_le(&tree, "avg1(S_n) <= avg1(T)", &weak_lo, &weak);
        t.require_le(&tree, "avg1(T) <= avg1(P_n)", &weak, &weak_hi);
        let strong = avg(&tree, STRONG)?;
        t.require_le(&tree, "avg±1(S_n) <= avg±1(T)", &strong_lo, &strong);
        t.require_le(&tree, "avg±1(T) <= avg±1(P_n)", &strong, &strong_hi);
        Ok(t)
    }))?;
    let notes = vec![
        format!("avg1 bounds [{weak_lo}, {weak_hi}]"),
        format!("avg±1 bounds [{strong_lo}, {strong_hi}]"),
    ];
    Ok(tally.finish("tree_extremality", n, vec![WEAK, STRONG], notes, start))
}

/// For every connected graph and ordered pair of cut vertices `(a, b)`
/// where the KC-transformation applies and the part between them has an
/// automorphism swapping `a` and `b`: `avg1(G_{a->b}) <= avg1(G)`.
///
/// Pairs whose in-between part is disconnected are counted in `skipped`.
pub fn check_kc_monotonicity(n: usize, caps: &Caps) -> Result<SweepResult> {
    let start = Instant::now();
    let graphs = enumerate_connected_graphs(n, caps.transforms)?;
    let tally = reduce(graphs.into_par_iter().map(|g| {
        let mut t = Tally::default();
        let cuts = g.cut_vertices();
        if cuts.len() < 2 {
            return Ok(t);
        }
        let mut before: Option<ExactRational> = None;
        for &a in &cuts {
            for &b in &cuts {
                if a == b {
                    continue;
                }
                let sa = side_vertices(&g, a, b)?.len();
                let sb = side_vertices(&g, b, a)?.len();
                if sa.min(sb) <= 1 {
                    continue;
                }
                if !between_is_connected(&g, a, b)? {
                    t.skipped += 1;
                    continue;
                }
                if !swap_automorphism_exists(&g, a, b)? {
                    continue;
                }
                let transformed = kc_transform(&g, a, b)?;
                let lhs = avg(&transformed, WEAK)?;
                let rhs = match &before {
                    Some(v) => v.clone(),
                    None => before.insert(avg(&g, WEAK)?).clone(),
                };
                t.instances += 1;
                t.require_le(&g, &format!("avg1(G_({a}->{b})) <= avg1(G)"), &lhs, &rhs);
            }
        }
        Ok(t)
    }))?;
    let notes = vec![format!(
        "{} (graph, a, b) triples satisfied the hypotheses; {} skipped with disconnected in-between part",
        tally.instances, tally.skipped
    )];
    Ok(tally.finish("kc_monotonicity", n, vec![WEAK], notes, start))
}

fn between_is_connected(g: &RootedGraph, a: usize, b: usize) -> Result<bool> {
    let verts = between_vertices(g, a, b)?;
    let edges = g.induced_edges(&verts);
    Ok(RootedGraph::new(verts.len(), edges, 0).is_ok())
}

/// Every unicyclic non-corolla graph on `n` vertices is dominated in avg1
/// by some corolla on `n` vertices. Also counts how many lack a dominating
/// corolla with the same cycle length.
pub fn check_corolla_dominance(n: usize, caps: &Caps) -> Result<SweepResult> {
    let start = Instant::now();
    check_cap(n, caps.transforms)?;
    let unicyclic = unicyclic_graphs(n, caps.transforms)?;
    let corolla_values = corollas(n)
        .into_par_iter()
        .map(|(c, _, g)| avg(&g, WEAK).map(|v| (c, v)))
        .collect::<Result<Vec<_>>>()?;
    let best = corolla_values.iter().map(|(_, v)| v).max().cloned();
    let mut best_by_cycle: BTreeMap<usize, ExactRational> = BTreeMap::new();
    for (c, v) in &corolla_values {
        let slot = best_by_cycle.entry(*c).or_insert_with(|| v.clone());
        if v > slot {
            *slot = v.clone();
        }
    }
    let tally = reduce(unicyclic.par_iter().filter(|g| !g.is_corolla()).map(|g| {
        let mut t = Tally {
            instances: 1,
            ..Tally::default()
        };
        let value = avg(g, WEAK)?;
        let best = best
            .as_ref()
            .expect("a non-corolla unicyclic graph implies n >= 3");
        t.require_le(
            g,
            "avg1(U) <= max avg1(corolla on n vertices)",
            &value,
            best,
        );
        let c = g.cycle_length()?;
        if best_by_cycle.get(&c).is_none_or(|b| &value > b) {
            t.flagged += 1;
        }
        Ok(t)
    }))?;
    let mut notes = vec![format!(
        "{} corollas of order {n} evaluated",
        corolla_values.len()
    )];
    if let Some(b) = &best {
        notes.push(format!("largest corolla avg1 = {b}"));
    }
    notes.push(format!(
        "{} of {} non-corolla graphs have no same-cycle-length corolla witness",
        tally.flagged, tally.instances
    ));
    Ok(tally.finish("corolla_dominance", n, vec![WEAK], notes, start))
}

/// Every unicyclic graph on `n` vertices with cycle length `c` has exactly
/// `central_trinomial(c) * 3^(n-c)` 1-Lipschitz mappings.
pub fn check_unicyclic_count_invariance(n: usize, caps: &Caps) -> Result<SweepResult> {
    let start = Instant::now();
    let graphs = unicyclic_graphs(n, caps.transforms)?;
    let per_cycle: BTreeMap<usize, usize> = graphs.iter().fold(BTreeMap::new(), |mut acc, g| {
        *acc.entry(g.two_core().len()).or_default() += 1;
        acc
    });
    let tally = reduce(graphs.par_iter().map(|g| {
        let mut t = Tally {
            instances: 1,
            ..Tally::default()
        };
        let c = g.cycle_length()?;
        let brute = count_mappings(g, WEAK)?;
        let formula = count1_unicyclic(n, c)?;
        if brute != formula {
            t.violate(
                g,
                &format!("|L1(U)| == central_trinomial({c}) * 3^{}", n - c),
                &ExactRational::from(brute),
                &ExactRational::from(formula),
            );
        }
        Ok(t)
    }))?;
    let notes = per_cycle
        .iter()
        .map(|(c, k)| format!("cycle length {c}: {k} graphs"))
        .collect();
    Ok(tally.finish("unicyclic_count_invariance", n, vec![WEAK], notes, start))
}
