//! Acceptance criteria, one line each. Run with
//! `cargo test -p lipwalk-core --test acceptance`.
//!
//! Reference values below are either the published tables or computed by
//! the small oracles in this file, which share no code with the library.

use std::collections::VecDeque;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lipwalk_core::harness::{
    check_bhm, check_corolla_dominance, check_kc_monotonicity, check_lnr, check_tree_extremality,
    check_unicyclic_count_invariance, corollas, enumerate_connected_graphs, Caps, SweepResult,
};
use lipwalk_core::*;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

const PATH_TABLE: [(usize, i64, i64); 11] = [
    (2, 5, 3),
    (3, 19, 9),
    (4, 67, 27),
    (5, 227, 81),
    (6, 751, 243),
    (7, 2445, 729),
    (8, 7869, 2187),
    (9, 25107, 6561),
    (10, 78767, 19683),
    (11, 250793, 59049),
    (12, 786985, 177147),
];

const CYCLE_TABLE: [(usize, i64, i64); 10] = [
    (3, 13, 7),
    (4, 41, 19),
    (5, 121, 51),
    (6, 365, 141),
    (7, 1093, 393),
    (8, 3281, 1107),
    (9, 9841, 3139),
    (10, 29525, 8953),
    (11, 88573, 25653),
    (12, 265721, 73789),
];

/// Central column of the printed trinomial triangle, rows 0..=4.
const TRIANGLE_CENTRAL: [u32; 5] = [1, 1, 3, 7, 19];

/// Criteria expected to fail, with the reason shown next to the FAIL line.
const KNOWN_RED: [(u32, &str); 2] = [
    (
        1,
        "the printed n = 10 entry disagrees with every independent computation",
    ),
    (
        8,
        "the stated asymptote 2*sqrt(pi*n/3) is twice the growth of the exact values",
    ),
];

type Check = std::result::Result<String, String>;

type Criterion = (u32, &'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(num: u128, den: u128) -> ExactRational {
    ExactRational::ratio(&BigUint::from(num), &BigUint::from(den))
}

/// Count and range sum of all mappings, by depth-first assignment along a
/// BFS order from the root.
fn oracle_stats(g: &RootedGraph, m: i64, strong: bool) -> (u128, u128) {
    let n = g.order();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut order = vec![g.root()];
    let mut seen = vec![false; n];
    seen[g.root()] = true;
    let mut queue = VecDeque::from([g.root()]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let mut value: Vec<Option<i64>> = vec![None; n];
    value[g.root()] = Some(0);
    let mut totals = (0u128, 0u128);
    fn go(
        i: usize,
        order: &[usize],
        adj: &[Vec<usize>],
        value: &mut Vec<Option<i64>>,
        m: i64,
        strong: bool,
        totals: &mut (u128, u128),
    ) {
        if i == order.len() {
            let mut vals: Vec<i64> = value.iter().map(|v| v.unwrap()).collect();
            vals.sort_unstable();
            vals.dedup();
            totals.0 += 1;
            totals.1 += vals.len() as u128;
            return;
        }
        let v = order[i];
        let anchor = adj[v].iter().find_map(|&w| value[w]).unwrap();
        for x in anchor - m..=anchor + m {
            let fits = adj[v].iter().filter_map(|&w| value[w]).all(|y| {
                let d = (x - y).abs();
                if strong {
                    d == m
                } else {
                    d <= m
                }
            });
            if fits {
                value[v] = Some(x);
                go(i + 1, order, adj, value, m, strong, totals);
                value[v] = None;
            }
        }
    }
    go(1, &order, &adj, &mut value, m, strong, &mut totals);
    totals
}

fn oracle_avg(g: &RootedGraph, strong: bool) -> (u128, ExactRational) {
    let (count, sum) = oracle_stats(g, 1, strong);
    (count, rat(sum, count))
}

/// Expected range of a path of `n` vertices: a walk of `n - 1` steps
/// tracked by (position, minimum, maximum).
fn path_oracle(n: usize) -> ExactRational {
    use std::collections::HashMap;
    let mut states: HashMap<(i64, i64, i64), u128> = HashMap::from([((0, 0, 0), 1)]);
    for _ in 1..n {
        let mut next = HashMap::new();
        for ((pos, lo, hi), c) in states {
            for step in -1..=1 {
                let p = pos + step;
                *next.entry((p, lo.min(p), hi.max(p))).or_insert(0) += c;
            }
        }
        states = next;
    }
    let total: u128 = states.values().sum();
    let sum: u128 = states
        .iter()
        .map(|((_, lo, hi), c)| (hi - lo + 1) as u128 * c)
        .sum();
    rat(sum, total)
}

/// Rows of the irregular trinomial triangle: coefficients of `(1+x+x^2)^n`.
fn trinomial_rows(max_n: usize) -> Vec<Vec<u128>> {
    let mut rows = vec![vec![1u128]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let mut row = vec![0u128; 2 * n + 1];
        for (k, &c) in prev.iter().enumerate() {
            for j in 0..3 {
                row[k + j] += c;
            }
        }
        rows.push(row);
    }
    rows
}

fn t_star(rows: &[Vec<u128>], n: usize, k: i64) -> u128 {
    if k < 0 || k as usize >= rows[n].len() {
        0
    } else {
        rows[n][k as usize]
    }
}

/// Central trinomial coefficients from
/// `n a(n) = (2n - 1) a(n-1) + 3 (n - 1) a(n-2)`.
fn central_by_recurrence(max_n: usize) -> Vec<BigUint> {
    let mut a = vec![BigUint::from(1u32), BigUint::from(1u32)];
    for n in 2..=max_n {
        let next =
            (BigUint::from(2 * n - 1) * &a[n - 1] + BigUint::from(3 * (n - 1)) * &a[n - 2]) / n;
        a.push(next);
    }
    a
}

fn motzkin_lattice(n: u32) -> Vec<u128> {
    let mut ends = vec![0u128; n as usize + 1];
    for code in 0..3u64.pow(n) {
        let mut c = code;
        let mut h = 0i64;
        let mut ok = true;
        for _ in 0..n {
            h += (c % 3) as i64 - 1;
            c /= 3;
            ok &= h >= 0;
        }
        if ok {
            ends[h as usize] += 1;
        }
    }
    ends
}

fn criterion_1() -> Check {
    let mut mismatches = Vec::new();
    for (n, p, q) in PATH_TABLE {
        let got = avg1_path(n).map_err(|e| e.to_string())?;
        let walk = path_oracle(n);
        ensure(got == walk, || format!("n={n}: {got}, walk oracle {walk}"))?;
        if got != ExactRational::new(p, q) {
            mismatches.push(format!("n={n}: computed {got}, table {p}/{q}"));
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok("avg1(P_n) matches the table for n = 2..12".into())
}

fn criterion_2() -> Check {
    for (n, p, q) in CYCLE_TABLE {
        let got = avg1_cycle(n).map_err(|e| e.to_string())?;
        ensure(got == ExactRational::new(p, q), || {
            format!("n={n}: {got} != {p}/{q}")
        })?;
    }
    for (n, &c) in TRIANGLE_CENTRAL.iter().enumerate() {
        ensure(central_trinomial(n as u64) == BigUint::from(c), || {
            format!("central({n}) != {c}")
        })?;
    }
    let rec = central_by_recurrence(40);
    for (n, expected) in rec.iter().enumerate().skip(3) {
        let got = count1_cycle(n).map_err(|e| e.to_string())?;
        ensure(&got == expected, || {
            format!("count1_cycle({n}) = {got}, recurrence gives {expected}")
        })?;
    }
    Ok("avg1(C_n) matches the table for n = 3..12; counts match the triangle and recurrence to n = 40".into())
}

fn criterion_3() -> Check {
    let mut cases = 0;
    let mut check = |label: String,
                     formula: Result<ExactRational>,
                     count: Option<Result<BigUint>>,
                     oracle: (u128, ExactRational)| {
        cases += 1;
        let f = formula.map_err(|e| format!("{label}: {e}"))?;
        ensure(f == oracle.1, || {
            format!("{label}: formula {f}, oracle {}", oracle.1)
        })?;
        if let Some(c) = count {
            let c = c.map_err(|e| format!("{label}: {e}"))?;
            ensure(c == BigUint::from(oracle.0), || {
                format!("{label}: count {c}, oracle {}", oracle.0)
            })?;
        }
        Ok::<(), String>(())
    };
    let graph = |g: Result<RootedGraph>| g.map_err(|e| e.to_string());
    for n in 1..=8 {
        let g = graph(make_complete(n))?;
        check(
            format!("K_{n}"),
            avg1_complete(n),
            Some(count1_complete(n)),
            oracle_avg(&g, false),
        )?;
    }
    for p in 1..=8 {
        for q in 1..=9 - p {
            let g = graph(make_complete_bipartite(p, q))?;
            check(
                format!("K_{p},{q}"),
                avg1_complete_bipartite(p, q),
                Some(count1_complete_bipartite(p, q)),
                oracle_avg(&g, false),
            )?;
        }
    }
    for n in 2..=9 {
        let g = graph(make_star(n))?;
        check(
            format!("S_{n}"),
            avg1_star(n),
            Some(count1_star(n)),
            oracle_avg(&g, false),
        )?;
        check(
            format!("S_{n} strong"),
            avg_strong1_star(n),
            Some(count_strong1_star(n)),
            oracle_avg(&g, true),
        )?;
    }
    for n in 1..=10 {
        let g = graph(make_path(n))?;
        check(
            format!("P_{n}"),
            avg1_path(n),
            Some(count1_path(n)),
            oracle_avg(&g, false),
        )?;
    }
    for n in 3..=10 {
        let g = graph(make_cycle(n))?;
        check(
            format!("C_{n}"),
            avg1_cycle(n),
            Some(count1_cycle(n)),
            oracle_avg(&g, false),
        )?;
    }
    let mut corolla_cases = 0;
    for n in 3..=8 {
        for (c, lens, g) in corollas(n) {
            corolla_cases += 1;
            let expected = count1_unicyclic(n, c).map_err(|e| e.to_string())?;
            let (count, _) = oracle_stats(&g, 1, false);
            ensure(expected == BigUint::from(count), || {
                format!("corolla {c} {lens:?}: {expected} != {count}")
            })?;
        }
    }
    Ok(format!(
        "{cases} closed forms and {corolla_cases} corolla counts equal exhaustive enumeration"
    ))
}

#[allow(clippy::needless_range_loop, clippy::manual_div_ceil)]
fn criterion_4() -> Check {
    let rows = trinomial_rows(30);
    let t = |n: usize, k: i64| t_star(&rows, n, k);
    for n in 0..=30usize {
        let ni = n as i64;
        for k in -2..=2 * ni + 2 {
            let lib = irregular_trinomial(n as u64, k);
            ensure(lib == BigUint::from(t(n, k)), || {
                format!("T*({n},{k}): library {lib}")
            })?;
        }
        let ctc: u128 = (0..=n / 2)
            .map(|k| {
                binomial(n as u64, 2 * k as i64).to_u128().unwrap()
                    * binomial(2 * k as u64, k as i64).to_u128().unwrap()
            })
            .sum();
        ensure(t(n, ni) == ctc, || format!("central identity at n={n}"))?;
        for k in 0..=ni {
            let m = motzkin(n as u64, k).to_u128().unwrap();
            ensure(m == t(n, ni - k) - t(n, ni - k - 2), || {
                format!("M({n},{k}) difference identity")
            })?;
        }
        let three_n = 3u128.pow(n as u32);
        if n % 2 == 0 {
            let s: u128 = (0..=ni).map(|k| t(n, 2 * k)).sum();
            ensure(s == (three_n + 1) / 2, || {
                format!("even column sum at n={n}")
            })?;
        } else {
            let s: u128 = (1..=ni).map(|k| t(n, 2 * k - 1)).sum();
            ensure(s == (three_n - 1) / 2, || {
                format!("odd column sum at n={n}")
            })?;
        }
        let row: u128 = rows[n].iter().sum();
        ensure(row == three_n, || format!("row sum at n={n}"))?;
        for k in 0..=ni + 2 {
            ensure(t(n, ni - k) == t(n, ni + k), || {
                format!("symmetry at n={n}, k={k}")
            })?;
        }
    }
    for n in 0..=12u32 {
        let ends = motzkin_lattice(n);
        for (k, &e) in ends.iter().enumerate() {
            let lib = motzkin(n as u64, k as i64);
            ensure(lib == BigUint::from(e), || {
                format!("M({n},{k}) = {lib}, lattice paths {e}")
            })?;
        }
    }
    Ok("central identity, difference identity, column sums, row sums, symmetry for n <= 30; Motzkin = lattice paths for n <= 12".into())
}

fn criterion_5() -> Check {
    for n in 1..=20 {
        let a = avg1_path(n).map_err(|e| e.to_string())?;
        let b = avg1_path_reflection(n).map_err(|e| e.to_string())?;
        let c = path_oracle(n);
        ensure(a == b && b == c, || {
            format!("n={n}: {a}, {b}, walk oracle {c}")
        })?;
    }
    let rows = trinomial_rows(15);
    for n in 1..=15usize {
        let mut total = ExactRational::zero();
        let den = 3u128.pow(n as u32 - 1);
        for k in -(n as i64 - 1)..=(n as i64 - 1) {
            let p = path_endpoint_probability(n, k).map_err(|e| e.to_string())?;
            let expected = rat(t_star(&rows, n - 1, k + n as i64 - 1), den);
            ensure(p == expected, || {
                format!("P(X_{n} = {k}) = {p}, expected {expected}")
            })?;
            total = total + p;
        }
        ensure(total == ExactRational::one(), || {
            format!("n={n}: probabilities sum to {total}")
        })?;
    }
    Ok("double sum = reflection route = walk oracle for n <= 20; endpoint probabilities sum to 1 for n <= 15".into())
}

fn criterion_6() -> Check {
    let two_thirds = ExactRational::new(2, 3);
    let oracle: Vec<ExactRational> = (1..=31).map(path_oracle).collect();
    for n in 1..=31 {
        let lib = avg1_path(n).map_err(|e| e.to_string())?;
        ensure(lib == oracle[n - 1], || {
            format!("avg1(P_{n}) = {lib}, walk oracle {}", oracle[n - 1])
        })?;
    }
    for n in 1..=30usize {
        let inc = &oracle[n] - &oracle[n - 1];
        ensure(inc <= two_thirds, || format!("increment at n={n} is {inc}"))?;
        ensure((inc == two_thirds) == (n == 1), || {
            format!("equality pattern broken at n={n}: {inc}")
        })?;
        let bound = ExactRational::new(2 * n as i64 + 1, 3);
        ensure(oracle[n - 1] <= bound, || {
            format!("avg1(P_{n}) exceeds (2n+1)/3")
        })?;
        let lib_check = path_increment_bound_check(n).map_err(|e| e.to_string())?;
        ensure(lib_check, || {
            format!("library increment check false at n={n}")
        })?;
    }
    Ok("increments <= 2/3 with equality only at n = 1, avg1(P_n) <= (2n+1)/3, n <= 30".into())
}

fn criterion_7() -> Check {
    let caps = Caps {
        graphs: 6,
        trees: 8,
        transforms: 7,
    };
    let mut results: Vec<SweepResult> = Vec::new();
    let run = |r: Result<SweepResult>| r.map_err(|e| e.to_string());
    for n in 1..=6 {
        results.push(run(check_lnr(n, &caps))?);
        results.push(run(check_bhm(n, &caps))?);
    }
    for n in 2..=8 {
        results.push(run(check_tree_extremality(n, &caps))?);
    }
    for n in 1..=7 {
        results.push(run(check_kc_monotonicity(n, &caps))?);
    }
    for n in 3..=7 {
        results.push(run(check_corolla_dominance(n, &caps))?);
        results.push(run(check_unicyclic_count_invariance(n, &caps))?);
    }
    for r in &results {
        println!("    {}", r.summary_line());
    }
    let violations: usize = results.iter().map(|r| r.violations.len()).sum();
    let instances: u64 = results.iter().map(|r| r.instance_count).sum();
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!(
        "{} sweeps, {instances} instances, 0 violations",
        results.len()
    ))
}

fn criterion_8() -> Check {
    let n = 1000;
    let central = central_by_recurrence(n).pop().unwrap();
    let three = BigUint::from(3u32).pow(n as u32);
    let expected = ExactRational::ratio(&(three + 1u32), &(central * 2u32));
    let exact = avg1_cycle(n).map_err(|e| e.to_string())?;
    ensure(exact == expected, || {
        "avg1(C_1000) disagrees with the recurrence oracle".into()
    })?;
    let value = exact
        .as_big_rational()
        .to_f64()
        .ok_or("avg1(C_1000) not representable")?;
    let stated = 2.0 * (std::f64::consts::PI * n as f64 / 3.0).sqrt();
    let ratio = value / stated;
    let half = value / (std::f64::consts::PI * n as f64 / 3.0).sqrt();
    let lib = cycle_avg_asymptotic(n).map_err(|e| e.to_string())?;
    ensure((lib.ratio() - ratio).abs() < 1e-12, || {
        "library ratio disagrees".into()
    })?;
    let detail = format!("avg1(C_1000) = {value:.6} (approx); ratio to 2*sqrt(pi*n/3) = {ratio:.6}; ratio to sqrt(pi*n/3) = {half:.6}");
    ensure((0.99..=1.01).contains(&ratio), || detail.clone())?;
    Ok(detail)
}

fn criterion_9() -> Check {
    let mut checked = 0;
    for n in 1..=6 {
        let graphs = enumerate_connected_graphs(n, 6).map_err(|e| e.to_string())?;
        for g in graphs.filter(|g| !g.is_bipartite()) {
            checked += 1;
            let (count, _) = oracle_stats(&g, 1, true);
            ensure(count == 0, || {
                format!("oracle found strong mappings on {:?}", g.edges())
            })?;
            match avg_range_bruteforce(&g, Mode::Strong(1)) {
                Err(Error::UndefinedAverage { mapping_count })
                    if mapping_count == BigUint::from(0u32) => {}
                other => return Err(format!("{:?}: {other:?}", g.edges())),
            }
        }
    }
    Ok(format!(
        "{checked} non-bipartite graphs give the undefined-average error"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "path table", 1, criterion_1),
        (2, "cycle table", 1, criterion_2),
        (3, "closed forms vs enumeration", 120, criterion_3),
        (4, "trinomial and Motzkin identities", 30, criterion_4),
        (5, "two routes to avg1(P_n)", 30, criterion_5),
        (6, "path increment bound", 30, criterion_6),
        (7, "conjecture sweeps", 900, criterion_7),
        (8, "cycle asymptotics", 10, criterion_8),
        (9, "strong mode on non-bipartite graphs", 60, criterion_9),
    ];
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut unexpected = 0;
    for (id, name, budget, f) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let passed = outcome.is_ok() && in_time;
        let mut detail = match &outcome {
            Ok(d) | Err(d) => d.clone(),
        };
        if !in_time {
            detail.push_str(&format!("; over the {budget}s budget"));
        }
        let known = KNOWN_RED
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, why)| *why);
        let tag = match (passed, known) {
            (true, None) => "PASS".to_string(),
            (false, Some(why)) => format!("FAIL (known: {why})"),
            (true, Some(_)) => {
                unexpected += 1;
                "PASS (expected to fail)".to_string()
            }
            (false, None) => {
                unexpected += 1;
                "FAIL".to_string()
            }
        };
        println!(
            "criterion {id} [{name}] {tag} {:.2}s: {detail}",
            elapsed.as_secs_f64()
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
