//! Exhaustive enumeration of (strong) M-Lipschitz mappings of a rooted
//! graph and exact range statistics.
//!
//! Vertices are assigned in BFS order from the root, so every vertex after
//! the root has at least one assigned neighbor. The admissible values for
//! the next vertex are the intersection of the windows imposed by its
//! assigned neighbors:
//!
//! * weak `M`: `[f(u) - M, f(u) + M]`, an interval;
//! * strong `M`: `{f(u) - M, f(u) + M}`, at most two values.
//!
//! The search never materializes the full mapping set; [`mapping_stats`]
//! only accumulates a count and a range sum.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{RootedGraph, Vertex};
use crate::rational::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `|f(u) - f(v)| <= M` on every edge.
    Weak(u32),
    /// `|f(u) - f(v)| == M` on every edge.
    Strong(u32),
}

impl Mode {
    pub fn bound(self) -> u32 {
        match self {
            Mode::Weak(m) | Mode::Strong(m) => m,
        }
    }

    pub fn is_strong(self) -> bool {
        matches!(self, Mode::Strong(_))
    }

    fn validate(self) -> Result<()> {
        if self.bound() == 0 {
            Err(Error::InvalidArgument(
                "Lipschitz constant M must be at least 1".into(),
            ))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Weak(m) => write!(f, "weak M={m}"),
            Mode::Strong(m) => write!(f, "strong M={m}"),
        }
    }
}

/// Integer labels indexed by vertex, with the root labeled 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LipschitzMapping {
    values: Vec<i64>,
    mode: Mode,
}

impl LipschitzMapping {
    /// Checks the root and edge constraints before accepting `values`.
    pub fn new(g: &RootedGraph, values: Vec<i64>, mode: Mode) -> Result<Self> {
        mode.validate()?;
        if values.len() != g.order() {
            return Err(Error::InvalidArgument(format!(
                "mapping has {} values for {} vertices",
                values.len(),
                g.order()
            )));
        }
        if values[g.root()] != 0 {
            return Err(Error::InvalidArgument("root must map to 0".into()));
        }
        let m = mode.bound() as i64;
        for &(u, v) in g.edges() {
            let d = (values[u] - values[v]).abs();
            let ok = if mode.is_strong() { d == m } else { d <= m };
            if !ok {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) violates {mode}: |{} - {}| = {d}",
                    values[u], values[v]
                )));
            }
        }
        Ok(LipschitzMapping { values, mode })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, v: Vertex) -> i64 {
        self.values[v]
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn range(&self) -> usize {
        range_of(self)
    }
}

/// Number of distinct values in the image.
pub fn range_of(f: &LipschitzMapping) -> usize {
    let mut vals = f.values.clone();
    vals.sort_unstable();
    vals.dedup();
    vals.len()
}

/// Admissible values for one vertex given its assigned neighbors.
#[derive(Clone, Copy, Debug)]
enum Candidates {
    Interval(i64, i64),
    Pair([i64; 2], usize),
}

impl Candidates {
    fn nth(self, i: usize) -> Option<i64> {
        match self {
            Candidates::Interval(lo, hi) => {
                let v = lo + i as i64;
                (v <= hi).then_some(v)
            }
            Candidates::Pair(vals, len) => (i < len).then(|| vals[i]),
        }
    }
}

/// Assignment order and, for each position, the earlier positions it is
/// adjacent to.
#[derive(Clone, Debug)]
struct Plan {
    order: Vec<Vertex>,
    back: Vec<Vec<usize>>,
    mode: Mode,
}

impl Plan {
    fn new(g: &RootedGraph, mode: Mode) -> Self {
        let n = g.order();
        let mut pos = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        pos[g.root()] = 0;
        order.push(g.root());
        let mut queue = VecDeque::from([g.root()]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if pos[w] == usize::MAX {
                    pos[w] = order.len();
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut earlier: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .map(|&w| pos[w])
                    .filter(|&p| p < i)
                    .collect();
                earlier.sort_unstable();
                earlier
            })
            .collect();
        Plan { order, back, mode }
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    /// `vals` is indexed by position; entries before `pos` are assigned.
    fn candidates(&self, pos: usize, vals: &[i64]) -> Candidates {
        let m = self.mode.bound() as i64;
        let back = &self.back[pos];
        match self.mode {
            Mode::Weak(_) => {
                let mut lo = i64::MIN;
                let mut hi = i64::MAX;
                for &p in back {
                    lo = lo.max(vals[p] - m);
                    hi = hi.min(vals[p] + m);
                }
                Candidates::Interval(lo, hi)
            }
            Mode::Strong(_) => {
                let first = vals[back[0]];
                let mut out = [0; 2];
                let mut len = 0;
                for c in [first - m, first + m] {
                    if back[1..].iter().all(|&p| (c - vals[p]).abs() == m) {
                        out[len] = c;
                        len += 1;
                    }
                }
                Candidates::Pair(out, len)
            }
        }
    }
}

/// Streams every mapping exactly once in a deterministic order: positions
/// in BFS order, values ascending at each position, lexicographic overall.
pub struct MappingIter {
    plan: Plan,
    vals: Vec<i64>,
    cands: Vec<Candidates>,
    next: Vec<usize>,
    depth: usize,
    single_pending: bool,
}

impl MappingIter {
    fn new(plan: Plan) -> Self {
        let n = plan.len();
        let mut it = MappingIter {
            vals: vec![0; n],
            cands: vec![Candidates::Pair([0, 0], 0); n],
            next: vec![0; n],
            depth: 0,
            single_pending: n == 1,
            plan,
        };
        if n > 1 {
            it.depth = 1;
            it.cands[1] = it.plan.candidates(1, &it.vals);
        }
        it
    }

    fn emit(&self) -> LipschitzMapping {
        let mut values = vec![0; self.plan.len()];
        for (pos, &v) in self.plan.order.iter().enumerate() {
            values[v] = self.vals[pos];
        }
        LipschitzMapping {
            values,
            mode: self.plan.mode,
        }
    }
}

impl Iterator for MappingIter {
    type Item = LipschitzMapping;

    fn next(&mut self) -> Option<LipschitzMapping> {
        if self.single_pending {
            self.single_pending = false;
            return Some(self.emit());
        }
        let last = self.plan.len().checked_sub(1)?;
        while self.depth > 0 {
            let d = self.depth;
            match self.cands[d].nth(self.next[d]) {
                Some(v) => {
                    self.next[d] += 1;
                    self.vals[d] = v;
                    if d == last {
                        return Some(self.emit());
                    }
                    self.depth += 1;
                    self.cands[d + 1] = self.plan.candidates(d + 1, &self.vals);
                    self.next[d + 1] = 0;
                }
                None => self.depth -= 1,
            }
        }
        None
    }
}

pub fn enumerate_mappings(g: &RootedGraph, mode: Mode) -> Result<MappingIter> {
    mode.validate()?;
    Ok(MappingIter::new(Plan::new(g, mode)))
}

/// Mapping count and range sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RangeStats {
    pub count: u128,
    pub range_sum: u128,
}

impl RangeStats {
    fn merge(self, other: RangeStats) -> RangeStats {
        RangeStats {
            count: self.count + other.count,
            range_sum: self.range_sum + other.range_sum,
        }
    }
}

struct Search<'a> {
    plan: &'a Plan,
    vals: Vec<i64>,
    /// Multiplicity of each value, offset so the smallest reachable value
    /// lands at index 0.
    counts: Vec<u32>,
    offset: i64,
    distinct: u128,
    stats: RangeStats,
}

impl<'a> Search<'a> {
    fn new(plan: &'a Plan) -> Self {
        let n = plan.len() as i64;
        let offset = plan.mode.bound() as i64 * (n - 1).max(0);
        let mut s = Search {
            plan,
            vals: vec![0; plan.len()],
            counts: vec![0; (2 * offset + 1) as usize],
            offset,
            distinct: 0,
            stats: RangeStats::default(),
        };
        s.push(0, 0);
        s
    }

    fn push(&mut self, pos: usize, v: i64) {
        self.vals[pos] = v;
        let slot = &mut self.counts[(v + self.offset) as usize];
        if *slot == 0 {
            self.distinct += 1;
        }
        *slot += 1;
    }

    fn pop(&mut self, v: i64) {
        let slot = &mut self.counts[(v + self.offset) as usize];
        *slot -= 1;
        if *slot == 0 {
            self.distinct -= 1;
        }
    }

    fn run(&mut self, pos: usize) {
        if pos == self.plan.len() {
            self.stats.count += 1;
            self.stats.range_sum += self.distinct;
            return;
        }
        let cands = self.plan.candidates(pos, &self.vals);
        let mut i = 0;
        while let Some(v) = cands.nth(i) {
            self.push(pos, v);
            self.run(pos + 1);
            self.pop(v);
            i += 1;
        }
    }
}

/// Count and range sum over all mappings, single-threaded.
pub fn mapping_stats(g: &RootedGraph, mode: Mode) -> Result<RangeStats> {
    mode.validate()?;
    let plan = Plan::new(g, mode);
    let mut search = Search::new(&plan);
    search.run(1);
    Ok(search.stats)
}

/// Same result as [`mapping_stats`], with the search tree split at a
/// shallow depth and the subtrees evaluated on the rayon pool.
pub fn mapping_stats_parallel(g: &RootedGraph, mode: Mode) -> Result<RangeStats> {
    mode.validate()?;
    let plan = Plan::new(g, mode);
    let split = plan.len().min(5);
    let mut prefixes: Vec<Vec<i64>> = vec![vec![0]];
    for pos in 1..split {
        let mut next = Vec::new();
        for prefix in &prefixes {
            let cands = plan.candidates(pos, prefix);
            let mut i = 0;
            while let Some(v) = cands.nth(i) {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
                i += 1;
            }
        }
        prefixes = next;
    }
    let stats = prefixes
        .par_iter()
        .map(|prefix| {
            let mut search = Search::new(&plan);
            for (pos, &v) in prefix.iter().enumerate().skip(1) {
                search.push(pos, v);
            }
            search.run(prefix.len());
            search.stats
        })
        .reduce(RangeStats::default, RangeStats::merge);
    Ok(stats)
}

pub fn count_mappings(g: &RootedGraph, mode: Mode) -> Result<BigUint> {
    Ok(BigUint::from(mapping_stats(g, mode)?.count))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    BruteForce,
    ClosedForm(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::BruteForce => f.write_str("brute force"),
            Source::ClosedForm(name) => write!(f, "closed form ({name})"),
        }
    }
}

/// Exact statistics for one graph and mode. `average` is always
/// `range_sum / mapping_count` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawReport")]
pub struct AvgRangeReport {
    #[serde(with = "crate::decimal")]
    mapping_count: BigUint,
    #[serde(with = "crate::decimal")]
    range_sum: BigUint,
    average: ExactRational,
    mode: Mode,
    source: Source,
}

#[derive(Deserialize)]
struct RawReport {
    #[serde(with = "crate::decimal")]
    mapping_count: BigUint,
    #[serde(with = "crate::decimal")]
    range_sum: BigUint,
    average: ExactRational,
    mode: Mode,
    source: Source,
}

impl TryFrom<RawReport> for AvgRangeReport {
    type Error = Error;

    fn try_from(raw: RawReport) -> Result<Self> {
        let report = AvgRangeReport::new(raw.mapping_count, raw.range_sum, raw.mode, raw.source)?;
        if report.average != raw.average {
            return Err(Error::Parse(format!(
                "average {} does not match range_sum / mapping_count = {}",
                raw.average, report.average
            )));
        }
        Ok(report)
    }
}

impl AvgRangeReport {
    /// Fails with [`Error::UndefinedAverage`] when `mapping_count` is zero.
    pub fn new(
        mapping_count: BigUint,
        range_sum: BigUint,
        mode: Mode,
        source: Source,
    ) -> Result<Self> {
        if mapping_count == BigUint::ZERO {
            return Err(Error::UndefinedAverage { mapping_count });
        }
        let average = ExactRational::ratio(&range_sum, &mapping_count);
        Ok(AvgRangeReport {
            mapping_count,
            range_sum,
            average,
            mode,
            source,
        })
    }

    pub fn mapping_count(&self) -> &BigUint {
        &self.mapping_count
    }

    pub fn range_sum(&self) -> &BigUint {
        &self.range_sum
    }

    pub fn average(&self) -> &ExactRational {
        &self.average
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    fn from_stats(stats: RangeStats, mode: Mode) -> Result<Self> {
        AvgRangeReport::new(
            BigUint::from(stats.count),
            BigUint::from(stats.range_sum),
            mode,
            Source::BruteForce,
        )
    }
}

/// Average range by exhaustive enumeration.
pub fn avg_range_bruteforce(g: &RootedGraph, mode: Mode) -> Result<AvgRangeReport> {
    AvgRangeReport::from_stats(mapping_stats(g, mode)?, mode)
}

/// Parallel counterpart of [`avg_range_bruteforce`]; identical result.
pub fn avg_range_bruteforce_parallel(g: &RootedGraph, mode: Mode) -> Result<AvgRangeReport> {
    AvgRangeReport::from_stats(mapping_stats_parallel(g, mode)?, mode)
}

/// Whether the average is the same for every choice of root.
///
/// If no root admits a mapping the undefined-average error is returned; a
/// mix of empty and non-empty roots yields `false`.
pub fn avg_range_root_invariance_check(g: &RootedGraph, mode: Mode) -> Result<bool> {
    let mut results = Vec::with_capacity(g.order());
    for root in 0..g.order() {
        match avg_range_bruteforce(&g.with_root(root)?, mode) {
            Ok(r) => results.push(Some(r.average)),
            Err(Error::UndefinedAverage { .. }) => results.push(None),
            Err(e) => return Err(e),
        }
    }
    if results.iter().all(Option::is_none) {
        return Err(Error::UndefinedAverage {
            mapping_count: BigUint::ZERO,
        });
    }
    Ok(results.windows(2).all(|w| w[0] == w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_complete_bipartite, make_cycle, make_path, make_star};
    use std::collections::HashSet;

    const W1: Mode = Mode::Weak(1);
    const S1: Mode = Mode::Strong(1);

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    /// Filters the full product `[-M*n, M*n]^(n-1)`.
    fn naive_count(g: &RootedGraph, mode: Mode) -> usize {
        let n = g.order();
        let m = mode.bound() as i64;
        let span = m * n as i64;
        let width = (2 * span + 1) as usize;
        let others: Vec<usize> = (0..n).filter(|&v| v != g.root()).collect();
        let total = width.pow(others.len() as u32);
        let mut count = 0;
        let mut vals = vec![0i64; n];
        for mut code in 0..total {
            for &v in &others {
                vals[v] = (code % width) as i64 - span;
                code /= width;
            }
            let ok = g.edges().iter().all(|&(u, v)| {
                let d = (vals[u] - vals[v]).abs();
                if mode.is_strong() {
                    d == m
                } else {
                    d <= m
                }
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn p2_weak_has_three_mappings() {
        let g = make_path(2).unwrap();
        let maps: Vec<Vec<i64>> = enumerate_mappings(&g, W1)
            .unwrap()
            .map(|f| f.values().to_vec())
            .collect();
        assert_eq!(maps, vec![vec![0, -1], vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn triangle_counts() {
        let c3 = make_cycle(3).unwrap();
        assert_eq!(enumerate_mappings(&c3, W1).unwrap().count(), 7);
        assert_eq!(enumerate_mappings(&c3, S1).unwrap().count(), 0);
    }

    #[test]
    fn single_vertex() {
        let k1 = make_complete(1).unwrap();
        let maps: Vec<_> = enumerate_mappings(&k1, W1).unwrap().collect();
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].values(), &[0]);
        assert_eq!(
            avg_range_bruteforce(&k1, W1).unwrap().average(),
            &ExactRational::one()
        );
        assert_eq!(
            avg_range_bruteforce(&k1, S1).unwrap().average(),
            &ExactRational::one()
        );
    }

    #[test]
    fn range_examples() {
        let p3 = make_path(3).unwrap();
        let zero = LipschitzMapping::new(&p3, vec![0, 0, 0], W1).unwrap();
        assert_eq!(zero.range(), 1);
        let climb = LipschitzMapping::new(&p3, vec![0, 1, 2], W1).unwrap();
        assert_eq!(range_of(&climb), 3);
        let s3 = make_star(3).unwrap();
        let f = LipschitzMapping::new(&s3, vec![0, 1, -1], S1).unwrap();
        assert_eq!(f.range(), 3);
        assert!(LipschitzMapping::new(&p3, vec![0, 2, 2], W1).is_err());
        assert!(LipschitzMapping::new(&p3, vec![1, 1, 1], W1).is_err());
        assert!(LipschitzMapping::new(&s3, vec![0, 0, 1], S1).is_err());
    }

    #[test]
    fn brute_force_averages() {
        assert_eq!(
            avg_range_bruteforce(&make_path(2).unwrap(), W1)
                .unwrap()
                .average(),
            &r(5, 3)
        );
        assert_eq!(
            avg_range_bruteforce(&make_cycle(3).unwrap(), W1)
                .unwrap()
                .average(),
            &r(13, 7)
        );
        assert_eq!(
            avg_range_bruteforce(&make_path(5).unwrap(), W1)
                .unwrap()
                .average(),
            &r(227, 81)
        );
        let s3 = avg_range_bruteforce(&make_star(3).unwrap(), S1).unwrap();
        assert_eq!(s3.mapping_count(), &BigUint::from(4u32));
        assert_eq!(s3.average(), &r(5, 2));
    }

    #[test]
    fn strong_on_odd_cycle_is_undefined() {
        match avg_range_bruteforce(&make_cycle(5).unwrap(), S1) {
            Err(Error::UndefinedAverage { mapping_count }) => {
                assert_eq!(mapping_count, BigUint::ZERO)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_constant_rejected() {
        assert!(enumerate_mappings(&make_path(2).unwrap(), Mode::Weak(0)).is_err());
        assert!(avg_range_bruteforce(&make_path(2).unwrap(), Mode::Strong(0)).is_err());
    }

    #[test]
    fn iterator_matches_naive_product() {
        let graphs = [
            make_path(4).unwrap(),
            make_cycle(4).unwrap(),
            make_complete(4).unwrap(),
            make_star(4).unwrap(),
            make_complete_bipartite(1, 2).unwrap(),
        ];
        for g in &graphs {
            for mode in [W1, S1, Mode::Weak(2), Mode::Strong(2)] {
                let maps: Vec<LipschitzMapping> = enumerate_mappings(g, mode).unwrap().collect();
                let distinct: HashSet<&[i64]> = maps.iter().map(|f| f.values()).collect();
                assert_eq!(distinct.len(), maps.len(), "duplicates in {g:?} {mode}");
                assert_eq!(maps.len(), naive_count(g, mode), "{g:?} {mode}");
                for f in &maps {
                    LipschitzMapping::new(g, f.values().to_vec(), mode).unwrap();
                }
                let stats = mapping_stats(g, mode).unwrap();
                assert_eq!(stats.count as usize, maps.len());
                let sum: usize = maps.iter().map(|f| f.range()).sum();
                assert_eq!(stats.range_sum as usize, sum);
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = make_cycle(5).unwrap();
        let a: Vec<_> = enumerate_mappings(&g, W1).unwrap().collect();
        let b: Vec<_> = enumerate_mappings(&g, W1).unwrap().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_matches_sequential() {
        for g in [
            make_cycle(9).unwrap(),
            make_path(8).unwrap(),
            make_complete_bipartite(3, 4).unwrap(),
        ] {
            for mode in [W1, S1, Mode::Weak(2)] {
                assert_eq!(
                    mapping_stats(&g, mode).unwrap(),
                    mapping_stats_parallel(&g, mode).unwrap()
                );
            }
        }
        assert_eq!(
            mapping_stats_parallel(&make_path(1).unwrap(), W1)
                .unwrap()
                .count,
            1
        );
    }

    #[test]
    fn root_invariance_examples() {
        assert!(avg_range_root_invariance_check(&make_path(4).unwrap(), W1).unwrap());
        assert!(
            avg_range_root_invariance_check(&make_complete_bipartite(2, 3).unwrap(), W1).unwrap()
        );
        assert!(avg_range_root_invariance_check(&make_cycle(4).unwrap(), S1).unwrap());
        assert!(matches!(
            avg_range_root_invariance_check(&make_cycle(3).unwrap(), S1),
            Err(Error::UndefinedAverage { .. })
        ));
    }

    #[test]
    fn report_json_roundtrip() {
        let report = avg_range_bruteforce(&make_path(5).unwrap(), W1).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"mapping_count":"81","range_sum":"227","average":"227/81","mode":{"weak":1},"source":"brute_force"}"#
        );
        let back: AvgRangeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
        let tampered = json.replace("227/81", "1/1");
        assert!(serde_json::from_str::<AvgRangeReport>(&tampered).is_err());
    }
}
