//! Grouped verification suites behind the `verify` command.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::closed_forms::*;
use crate::combinatorics::{
    binomial, path_endpoint_distribution, pow3, MotzkinTable, TrinomialTable,
};
use crate::error::Result;
use crate::graph::{make_complete, make_complete_bipartite, make_cycle, make_path, make_star};
use crate::harness::enumerate::corollas;
use crate::harness::sweeps::{
    check_bhm, check_corolla_dominance, check_kc_monotonicity, check_lnr, check_tree_extremality,
    check_unicyclic_count_invariance, Caps, SweepResult,
};
use crate::lipschitz::{avg_range_bruteforce, mapping_stats, AvgRangeReport, Mode};
use crate::rational::ExactRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
    pub sweeps: Vec<SweepResult>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: Vec::new(),
            sweeps: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, failures: Vec<String>, cases: usize) {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{cases} cases")
        } else {
            format!(
                "{} of {cases} cases failed; first: {}",
                failures.len(),
                failures[0]
            )
        };
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.sweeps.iter().all(SweepResult::passed)
    }

    pub fn failure_count(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
            + self.sweeps.iter().filter(|s| !s.passed()).count()
    }
}

/// Collects the cases for which `check` returns an error message.
fn run<I, F>(cases: I, mut check: F) -> (Vec<String>, usize)
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Option<String>,
{
    let mut failures = Vec::new();
    let mut count = 0;
    for case in cases {
        count += 1;
        if let Some(msg) = check(case) {
            failures.push(msg);
        }
    }
    (failures, count)
}

/// Lattice-path count by filtering all `3^n` step sequences.
fn motzkin_by_enumeration(n: u32) -> Vec<u64> {
    let mut ends = vec![0u64; n as usize + 1];
    for code in 0..3u64.pow(n) {
        let mut c = code;
        let mut h = 0i64;
        let mut ok = true;
        for _ in 0..n {
            h += (c % 3) as i64 - 1;
            c /= 3;
            if h < 0 {
                ok = false;
                break;
            }
        }
        if ok {
            ends[h as usize] += 1;
        }
    }
    ends
}

/// Trinomial and Motzkin identities for rows up to `n_max`.
pub fn identity_suite(n_max: usize) -> SuiteReport {
    let mut report = SuiteReport::new("identities");
    let tri = TrinomialTable::new(n_max + 1);
    let mot = MotzkinTable::new(n_max);
    let t = |n: usize, k: i64| tri.irregular(n, k).clone();

    let (f, c) = run(1..=n_max, |n| {
        (0..=2 * n as i64 + 2)
            .find(|&k| t(n, k) != t(n - 1, k) + t(n - 1, k - 1) + t(n - 1, k - 2))
            .map(|k| format!("n={n}, k={k}"))
    });
    report.record("three-term recurrence of T*", f, c);

    let (f, c) = run(0..=n_max, |n| {
        let sum: BigUint = (0..=n / 2)
            .map(|k| binomial(n as u64, 2 * k as i64) * binomial(2 * k as u64, k as i64))
            .sum();
        (tri.central(n) != &sum).then(|| format!("n={n}: {} != {sum}", tri.central(n)))
    });
    report.record("central trinomial = sum C(n,2k) C(2k,k)", f, c);

    let (f, c) = run(0..=n_max, |n| {
        (0..=n as i64)
            .find(|&k| mot.get(n, k) + &t(n, n as i64 - k - 2) != t(n, n as i64 - k))
            .map(|k| format!("n={n}, k={k}"))
    });
    report.record("M(n,k) = T*(n,n-k) - T*(n,n-k-2)", f, c);

    let (f, c) = run(0..=n_max, |n| {
        let (sum, expected) = if n % 2 == 0 {
            let s: BigUint = (0..=n as i64).map(|k| t(n, 2 * k)).sum();
            (s, (pow3(n as u64) + 1u32) / 2u32)
        } else {
            let s: BigUint = (1..=n as i64).map(|k| t(n, 2 * k - 1)).sum();
            (s, (pow3(n as u64) - 1u32) / 2u32)
        };
        (sum != expected).then(|| format!("n={n}: {sum} != {expected}"))
    });
    report.record("alternate-column sums of T* = (3^n ± 1)/2", f, c);

    let (f, c) = run(0..=n_max, |n| {
        let s: BigUint = tri.row(n).iter().sum();
        (s != pow3(n as u64)).then(|| format!("n={n}"))
    });
    report.record("row sum of T* = 3^n", f, c);

    let (f, c) = run(0..=n_max, |n| {
        (0..=n as i64 + 1)
            .find(|&k| t(n, n as i64 - k) != t(n, n as i64 + k))
            .map(|k| format!("n={n}, k={k}"))
    });
    report.record("T*(n,n-k) = T*(n,n+k)", f, c);

    let brute_max = n_max.min(12);
    let (f, c) = run(0..=brute_max, |n| {
        let ends = motzkin_by_enumeration(n as u32);
        (0..=n)
            .find(|&k| mot.get(n, k as i64) != &BigUint::from(ends[k]))
            .map(|k| format!("n={n}, k={k}"))
    });
    report.record(
        format!("M(n,k) = lattice-path enumeration, n <= {brute_max}"),
        f,
        c,
    );

    let (f, c) = run(1..=15usize, |n| {
        let total: ExactRational = path_endpoint_distribution(n)
            .ok()?
            .into_iter()
            .map(|(_, p)| p)
            .sum();
        (total != ExactRational::one()).then(|| format!("n={n}: {total}"))
    });
    report.record("endpoint distribution sums to 1", f, c);

    let (f, c) = run(1..=20usize, |n| {
        let a = avg1_path(n).ok()?;
        let b = avg1_path_reflection(n).ok()?;
        (a != b).then(|| format!("n={n}: {a} != {b}"))
    });
    report.record("avg1(P_n): binomial double sum = trinomial route", f, c);

    report
}

fn brute(g: crate::Result<crate::RootedGraph>, mode: Mode) -> Option<AvgRangeReport> {
    avg_range_bruteforce(&g.ok()?, mode).ok()
}

fn compare(
    label: String,
    formula: Result<ExactRational>,
    brute: Option<AvgRangeReport>,
) -> Option<String> {
    match (formula, brute) {
        (Ok(f), Some(b)) if &f == b.average() => None,
        (Ok(f), Some(b)) => Some(format!("{label}: formula {f} != brute {}", b.average())),
        _ => Some(format!("{label}: evaluation failed")),
    }
}

/// Closed forms against enumeration, cross-class consistency and the path
/// increment bounds.
pub fn formula_suite() -> SuiteReport {
    let mut report = SuiteReport::new("formulas");
    let w = Mode::Weak(1);
    let s = Mode::Strong(1);

    let (f, c) = run(1..=8, |n| {
        compare(
            format!("K_{n}"),
            avg1_complete(n),
            brute(make_complete(n), w),
        )
    });
    report.record("avg1(K_n) closed form = brute force, n <= 8", f, c);

    let pairs: Vec<(usize, usize)> = (1..=8)
        .flat_map(|p| (1..=9 - p).map(move |q| (p, q)))
        .collect();
    let (f, c) = run(pairs, |(p, q)| {
        let b = brute(make_complete_bipartite(p, q), w);
        let count_ok = match (&b, count1_complete_bipartite(p, q)) {
            (Some(b), Ok(cnt)) => b.mapping_count() == &cnt,
            _ => false,
        };
        if !count_ok {
            return Some(format!("K_{p},{q}: count mismatch"));
        }
        compare(format!("K_{p},{q}"), avg1_complete_bipartite(p, q), b)
    });
    report.record("K_{p,q} count and avg1 = brute force, p+q <= 9", f, c);

    let (f, c) = run(2..=9, |n| {
        compare(format!("S_{n} weak"), avg1_star(n), brute(make_star(n), w)).or_else(|| {
            compare(
                format!("S_{n} strong"),
                avg_strong1_star(n),
                brute(make_star(n), s),
            )
        })
    });
    report.record("S_n weak and strong = brute force, n <= 9", f, c);

    let (f, c) = run(1..=10, |n| {
        compare(format!("P_{n}"), avg1_path(n), brute(make_path(n), w))
    });
    report.record("avg1(P_n) = brute force, n <= 10", f, c);

    let (f, c) = run(3..=10, |n| {
        let b = brute(make_cycle(n), w);
        match (&b, count1_cycle(n)) {
            (Some(b), Ok(cnt)) if b.mapping_count() == &cnt => {
                compare(format!("C_{n}"), avg1_cycle(n), Some(b.clone()))
            }
            _ => Some(format!("C_{n}: count mismatch")),
        }
    });
    report.record("C_n count and avg1 = brute force, n <= 10", f, c);

    let all_corollas: Vec<_> = (3..=8).flat_map(corollas).collect();
    let (f, c) = run(all_corollas, |(cyc, lens, g)| {
        let n = g.order();
        let brute = mapping_stats(&g, w).ok()?.count;
        let formula = count1_unicyclic(n, cyc).ok()?;
        (BigUint::from(brute) != formula)
            .then(|| format!("corolla {cyc} {lens:?}: {brute} != {formula}"))
    });
    report.record("unicyclic count formula on all corollas, n <= 8", f, c);

    let mut failures = Vec::new();
    if avg1_complete(2).ok() != avg1_path(2).ok() {
        failures.push("K_2 vs P_2".to_string());
    }
    if avg1_complete(3).ok() != avg1_cycle(3).ok() {
        failures.push("K_3 vs C_3".to_string());
    }
    for n in 2..=9 {
        if avg1_complete_bipartite(1, n - 1).ok() != avg1_star(n).ok() {
            failures.push(format!("K_1,{} vs S_{n}", n - 1));
        }
    }
    report.record("cross-class consistency", failures, 10);

    let two_thirds = ExactRational::new(2, 3);
    let paths: Vec<ExactRational> = (1..=31).map(|n| avg1_path(n).expect("n >= 1")).collect();
    let (f, c) = run(1..=30usize, |n| {
        let diff = &paths[n] - &paths[n - 1];
        let tight = diff == two_thirds;
        if diff > two_thirds || diff <= ExactRational::zero() || tight != (n == 1) {
            Some(format!("n={n}: increment {diff}"))
        } else if paths[n - 1] > path_linear_bound(n) {
            Some(format!("n={n}: exceeds (2n+1)/3"))
        } else {
            None
        }
    });
    report.record(
        "0 < avg1(P_(n+1)) - avg1(P_n) <= 2/3, tight only at n=1; avg1(P_n) <= (2n+1)/3",
        f,
        c,
    );

    let (f, c) = run(1..=30usize, |r| {
        (1..r)
            .find(|&q| paths[r - 1] > &paths[q - 1] + &ExactRational::new(2 * (r - q) as i64, 3))
            .map(|q| format!("q={q}, r={r}"))
    });
    report.record("avg1(P_r) <= avg1(P_q) + 2(r-q)/3", f, c);

    let decreasing = |gaps: Vec<ExactRational>| {
        gaps.iter().all(|g| g.is_positive()) && gaps.windows(2).all(|w| w[1] < w[0])
    };
    let mut failures = Vec::new();
    let two = ExactRational::from(2);
    let three = ExactRational::from(3);
    if !decreasing(
        (1..=30)
            .map(|n| &two - &avg1_complete(n).unwrap())
            .collect(),
    ) {
        failures.push("2 - avg1(K_n)".to_string());
    }
    if !decreasing(
        (1..=30)
            .map(|q| &three - &avg1_complete_bipartite(1, q).unwrap())
            .collect(),
    ) {
        failures.push("3 - avg1(K_1,q)".to_string());
    }
    let diagonal: Vec<ExactRational> = (1..=30)
        .map(|n| avg1_complete_bipartite(n, n).unwrap())
        .collect();
    if !diagonal.iter().all(|v| v < &three) {
        failures.push("avg1(K_n,n) < 3".to_string());
    }
    // along p = q the 2^(p+q) term wins and the average tends to 2, not 3
    if !decreasing(diagonal[3..].iter().map(|v| v - &two).collect()) {
        failures.push("avg1(K_n,n) - 2 for n >= 4".to_string());
    }
    if !decreasing((2..=30).map(|n| &three - &avg1_star(n).unwrap()).collect()) {
        failures.push("3 - avg1(S_n)".to_string());
    }
    if !decreasing(
        (2..=30)
            .map(|n| &three - &avg_strong1_star(n).unwrap())
            .collect(),
    ) {
        failures.push("3 - avg±1(S_n)".to_string());
    }
    report.record("limit trends, n <= 30", failures, 6);

    report
}

/// All sweeps for every order from 1 (2 for trees) up to `n` or, if `n`
/// is `None`, up to each family's cap.
pub fn conjecture_suite(n: Option<usize>, caps: &Caps) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("conjectures");
    let upto = |cap: usize| n.unwrap_or(cap).min(cap);
    for k in 1..=upto(caps.graphs) {
        report.sweeps.push(check_lnr(k, caps)?);
        report.sweeps.push(check_bhm(k, caps)?);
    }
    for k in 2..=upto(caps.trees) {
        report.sweeps.push(check_tree_extremality(k, caps)?);
    }
    for k in 1..=upto(caps.transforms) {
        report.sweeps.push(check_kc_monotonicity(k, caps)?);
    }
    for k in 3..=upto(caps.transforms) {
        report.sweeps.push(check_corolla_dominance(k, caps)?);
        report
            .sweeps
            .push(check_unicyclic_count_invariance(k, caps)?);
    }
    Ok(report)
}
