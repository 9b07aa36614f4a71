use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use lipwalk_core::harness::{conjecture_suite, formula_suite, identity_suite, Caps, SuiteReport};
use lipwalk_core::io::{self, GraphFormat};
use lipwalk_core::*;
use num_bigint::BigUint;
use serde::Serialize;

use crate::args::{Cli, Command, ComputeArgs, Format, GraphSource, MethodArgs, Suite, TableClass};
use crate::status;

/// Published path table, n = 2..=12.
const PUBLISHED_PATHS: [&str; 11] = [
    "5/3",
    "19/9",
    "67/27",
    "227/81",
    "751/243",
    "2445/729",
    "7869/2187",
    "25107/6561",
    "78767/19683",
    "250793/59049",
    "786985/177147",
];

/// Published cycle table, n = 3..=12.
const PUBLISHED_CYCLES: [&str; 10] = [
    "13/7",
    "41/19",
    "121/51",
    "365/141",
    "1093/393",
    "3281/1107",
    "9841/3139",
    "29525/8953",
    "88573/25653",
    "265721/73789",
];

pub fn run(cli: &Cli) -> Result<u8> {
    let format = cli.format;
    match &cli.command {
        Command::Avg(args) => avg(args, format),
        Command::Count(args) => count(args, format),
        Command::Table {
            class,
            n_max,
            check,
        } => table(*class, *n_max, *check, format),
        Command::Verify { suite, n } => verify(*suite, *n, format),
        Command::Kc {
            file,
            a,
            b,
            output,
            compare,
        } => kc(file, *a, *b, output, *compare, format),
        Command::EndpointDist { n } => endpoint_dist(*n, format),
    }
}

fn build_graph(src: &GraphSource) -> Result<(String, RootedGraph)> {
    if let Some(n) = src.path {
        return Ok((format!("path P_{n}"), make_path(n)?));
    }
    if let Some(n) = src.cycle {
        return Ok((format!("cycle C_{n}"), make_cycle(n)?));
    }
    if let Some(n) = src.complete {
        return Ok((format!("complete K_{n}"), make_complete(n)?));
    }
    if let Some(n) = src.star {
        return Ok((format!("star S_{n}"), make_star(n)?));
    }
    if let Some(pq) = &src.bipartite {
        let (p, q) = (pq[0], pq[1]);
        return Ok((
            format!("complete bipartite K_{p},{q}"),
            make_complete_bipartite(p, q)?,
        ));
    }
    if let Some(parts) = &src.corolla {
        let c: usize = parts[0].parse().map_err(|_| {
            Error::InvalidArgument(format!(
                "corolla cycle length {:?} is not a number",
                parts[0]
            ))
        })?;
        let lengths = match parts.get(1) {
            Some(list) => list
                .split(',')
                .map(|s| {
                    s.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidArgument(format!("corolla path length {s:?} is not a number"))
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            None => vec![0; c],
        };
        let label = format!("corolla, cycle {c}, paths {lengths:?}");
        return Ok((label, make_corolla(c, &lengths)?));
    }
    if let Some(path) = &src.file {
        let text = fs::read_to_string(path).map_err(|e| read_error(path, e))?;
        return Ok((
            path.display().to_string(),
            io::parse(&text, GraphFormat::sniff(&text))?,
        ));
    }
    Err(Error::InvalidArgument("no graph given".into()))
}

fn read_error(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
}

fn mode_of(args: &ComputeArgs) -> Mode {
    if args.strong {
        Mode::Strong(args.lipschitz)
    } else {
        Mode::Weak(args.lipschitz)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Method {
    Auto,
    Closed,
    Brute,
    Both,
}

fn method_of(m: &MethodArgs) -> Method {
    if m.closed_form {
        Method::Closed
    } else if m.brute {
        Method::Brute
    } else if m.both {
        Method::Both
    } else {
        Method::Auto
    }
}

fn no_formula() -> Error {
    Error::InvalidArgument("no closed form is known for this graph class and mode".into())
}

/// Reports to print: the primary one and, for `--both`, the brute-force one.
fn compute(g: &RootedGraph, mode: Mode, method: Method) -> Result<Vec<AvgRangeReport>> {
    let formula = || closed_form(g, mode).transpose();
    match method {
        Method::Brute => Ok(vec![avg_range_bruteforce_parallel(g, mode)?]),
        Method::Closed => Ok(vec![formula()?
            .ok_or_else(no_formula)?
            .into_report(mode)?]),
        Method::Auto => match formula()? {
            Some(f) => Ok(vec![f.into_report(mode)?]),
            None => Ok(vec![avg_range_bruteforce_parallel(g, mode)?]),
        },
        Method::Both => {
            let brute = avg_range_bruteforce_parallel(g, mode)?;
            match formula()? {
                Some(f) => Ok(vec![f.into_report(mode)?, brute]),
                None => Ok(vec![brute]),
            }
        }
    }
}

fn avg(args: &ComputeArgs, format: Format) -> Result<u8> {
    let (label, g) = build_graph(&args.graph)?;
    let mode = mode_of(args);
    let method = method_of(&args.method);
    let reports = compute(&g, mode, method)?;
    let agree =
        (reports.len() == 2).then(|| reports[0] == with_source(&reports[1], reports[0].source()));
    match format {
        Format::Json => {
            if method == Method::Both {
                #[derive(Serialize)]
                struct Both<'a> {
                    reports: &'a [AvgRangeReport],
                    agree: Option<bool>,
                }
                println!(
                    "{}",
                    serde_json::to_string(&Both {
                        reports: &reports,
                        agree
                    })?
                );
            } else {
                println!("{}", serde_json::to_string(&reports[0])?);
            }
        }
        Format::Csv => {
            println!("mapping_count,range_sum,average,decimal,mode,source");
            for r in &reports {
                println!(
                    "{},{},{},{},{},{}",
                    r.mapping_count(),
                    r.range_sum(),
                    r.average(),
                    r.average().approx(),
                    r.mode(),
                    r.source()
                );
            }
        }
        Format::Text => {
            println!(
                "graph      {label} ({} vertices, root {})",
                g.order(),
                g.root()
            );
            println!("mode       {mode}");
            for r in &reports {
                println!("source     {}", r.source());
                println!("mappings   {}", r.mapping_count());
                println!("range sum  {}", r.range_sum());
                println!("average    {}", r.average());
                println!("decimal    {}", r.average().approx());
            }
            if method == Method::Both && agree.is_none() {
                println!("no closed form for this graph; enumeration only");
            }
            if let Some(a) = agree {
                println!("agreement  {}", if a { "yes" } else { "NO" });
            }
        }
    }
    Ok(if agree == Some(false) {
        status::VIOLATION
    } else {
        status::OK
    })
}

fn with_source(r: &AvgRangeReport, source: &Source) -> AvgRangeReport {
    AvgRangeReport::new(
        r.mapping_count().clone(),
        r.range_sum().clone(),
        r.mode(),
        source.clone(),
    )
    .expect("count is non-zero in an existing report")
}

#[derive(Serialize)]
struct CountReport {
    mapping_count: String,
    mode: Mode,
    source: Source,
}

fn count(args: &ComputeArgs, format: Format) -> Result<u8> {
    let (label, g) = build_graph(&args.graph)?;
    let mode = mode_of(args);
    let method = method_of(&args.method);
    let formula = closed_form(&g, mode).transpose()?;
    let mut rows: Vec<(BigUint, Source)> = Vec::new();
    if let (Some(f), Method::Auto | Method::Closed | Method::Both) = (&formula, method) {
        rows.push((f.count.clone(), Source::ClosedForm(f.formula_name.clone())));
    }
    if method == Method::Closed && rows.is_empty() {
        return Err(no_formula());
    }
    if method == Method::Brute || method == Method::Both || rows.is_empty() {
        rows.push((count_mappings(&g, mode)?, Source::BruteForce));
    }
    let agree = (rows.len() == 2).then(|| rows[0].0 == rows[1].0);
    match format {
        Format::Json => {
            let reports: Vec<CountReport> = rows
                .iter()
                .map(|(c, s)| CountReport {
                    mapping_count: c.to_string(),
                    mode,
                    source: s.clone(),
                })
                .collect();
            if reports.len() == 1 {
                println!("{}", serde_json::to_string(&reports[0])?);
            } else {
                println!("{}", serde_json::to_string(&reports)?);
            }
        }
        Format::Csv => {
            println!("mapping_count,mode,source");
            for (c, s) in &rows {
                println!("{c},{mode},{s}");
            }
        }
        Format::Text => {
            println!(
                "graph      {label} ({} vertices, root {})",
                g.order(),
                g.root()
            );
            println!("mode       {mode}");
            for (c, s) in &rows {
                println!("source     {s}");
                println!("mappings   {c}");
            }
            if let Some(a) = agree {
                println!("agreement  {}", if a { "yes" } else { "NO" });
            }
        }
    }
    Ok(if agree == Some(false) {
        status::VIOLATION
    } else {
        status::OK
    })
}

type Formula = fn(usize) -> Result<ExactRational>;

#[derive(Serialize)]
struct TableRow {
    n: usize,
    value: ExactRational,
    decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    published: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn table(class: TableClass, n_max: usize, check: bool, format: Format) -> Result<u8> {
    let (min, published_values, f): (usize, &[&str], Formula) = match class {
        TableClass::Path => (2, &PUBLISHED_PATHS, avg1_path),
        TableClass::Cycle => (3, &PUBLISHED_CYCLES, avg1_cycle),
    };
    if n_max < min {
        return Err(Error::InvalidOrder {
            what: "table",
            got: n_max,
            min,
        });
    }
    let mut rows = Vec::new();
    for n in min..=n_max {
        let value = f(n)?;
        let published = published_values.get(n - min).filter(|_| check);
        let agree = match published {
            Some(p) => Some(p.parse::<ExactRational>()? == value),
            None => None,
        };
        rows.push(TableRow {
            n,
            decimal: value.approx().to_string(),
            value,
            published: published.map(|s| s.to_string()),
            agree,
        });
    }
    let disagree = rows.iter().filter(|r| r.agree == Some(false)).count();
    let status_of = |r: &TableRow| match r.agree {
        Some(true) => "AGREE",
        Some(false) => "DISAGREE",
        None => "-",
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&rows)?),
        Format::Csv => {
            println!("n,value,decimal{}", if check { ",published,check" } else { "" });
            for r in &rows {
                let mut line = format!("{},{},{}", r.n, r.value, r.decimal);
                if check {
                    let _ = write!(
                        line,
                        ",{},{}",
                        r.published.as_deref().unwrap_or(""),
                        status_of(r)
                    );
                }
                println!("{line}");
            }
        }
        Format::Text => {
            for r in &rows {
                let mut line = format!("{:>4}  {:<24} {:<22}", r.n, r.value.to_string(), r.decimal);
                if check {
                    let _ = write!(
                        line,
                        " {:<16} {}",
                        r.published.as_deref().unwrap_or("-"),
                        status_of(r)
                    );
                }
                println!("{}", line.trim_end());
            }
            if check {
                let compared = rows.iter().filter(|r| r.agree.is_some()).count();
                println!(
                    "{} rows, {} compared, {} agree, {disagree} disagree",
                    rows.len(),
                    compared,
                    compared - disagree
                );
            }
        }
    }
    Ok(if disagree > 0 {
        status::VIOLATION
    } else {
        status::OK
    })
}

fn verify(suite: Suite, n: Option<usize>, format: Format) -> Result<u8> {
    let mut reports: Vec<SuiteReport> = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        reports.push(identity_suite(30));
    }
    if matches!(suite, Suite::Formulas | Suite::All) {
        reports.push(formula_suite());
    }
    if matches!(suite, Suite::Conjectures | Suite::All) {
        reports.push(conjecture_suite(n, &Caps::from_env()?)?);
    }
    let failures: usize = reports.iter().map(SuiteReport::failure_count).sum();
    match format {
        Format::Json => println!("{}", serde_json::to_string(&reports)?),
        Format::Csv => {
            println!("suite,name,n,passed,detail");
            for r in &reports {
                for c in &r.checks {
                    println!(
                        "{},{},,{},{}",
                        r.suite,
                        csv_field(&c.name),
                        c.passed,
                        csv_field(&c.detail)
                    );
                }
                for s in &r.sweeps {
                    let detail = format!(
                        "{} instances, {} violations",
                        s.instance_count,
                        s.violations.len()
                    );
                    println!(
                        "{},{},{},{},{detail}",
                        r.suite,
                        s.parameters.check,
                        s.parameters.n,
                        s.passed()
                    );
                }
            }
        }
        Format::Text => {
            for r in &reports {
                println!("== {} ==", r.suite);
                for c in &r.checks {
                    println!(
                        "{}  {} ({})",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
                for s in &r.sweeps {
                    println!("{}", s.summary_line());
                    for v in &s.violations {
                        println!(
                            "    violation {}: {} vs {} on {}",
                            v.relation, v.lhs, v.rhs, v.graph
                        );
                    }
                    for note in &s.notes {
                        println!("    {note}");
                    }
                }
            }
            println!("{failures} failure(s)");
        }
    }
    Ok(if failures > 0 {
        status::VIOLATION
    } else {
        status::OK
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn kc(file: &Path, a: usize, b: usize, output: &Path, compare: bool, format: Format) -> Result<u8> {
    let text = fs::read_to_string(file).map_err(|e| read_error(file, e))?;
    let fmt = GraphFormat::sniff(&text);
    let g = io::parse(&text, fmt)?;
    let t = kc_transform(&g, a, b)?;
    io::write_graph(output, &t, fmt)?;
    let values = if compare {
        let before = avg_range_bruteforce_parallel(&g, Mode::Weak(1))?
            .average()
            .clone();
        let after = avg_range_bruteforce_parallel(&t, Mode::Weak(1))?
            .average()
            .clone();
        Some((before, after))
    } else {
        None
    };
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct KcReport<'a> {
                output: String,
                a: usize,
                b: usize,
                edges: &'a [(usize, usize)],
                #[serde(skip_serializing_if = "Option::is_none")]
                avg_before: Option<&'a ExactRational>,
                #[serde(skip_serializing_if = "Option::is_none")]
                avg_after: Option<&'a ExactRational>,
            }
            let report = KcReport {
                output: output.display().to_string(),
                a,
                b,
                edges: t.edges(),
                avg_before: values.as_ref().map(|v| &v.0),
                avg_after: values.as_ref().map(|v| &v.1),
            };
            println!("{}", serde_json::to_string(&report)?);
        }
        Format::Csv => {
            println!("output,a,b,edges,avg_before,avg_after");
            let (before, after) = match &values {
                Some((x, y)) => (x.to_string(), y.to_string()),
                None => (String::new(), String::new()),
            };
            println!(
                "{},{a},{b},{},{before},{after}",
                csv_field(&output.display().to_string()),
                t.edge_count()
            );
        }
        Format::Text => {
            println!(
                "wrote {} ({} vertices, {} edges)",
                output.display(),
                t.order(),
                t.edge_count()
            );
            if let Some((before, after)) = &values {
                println!("avg1(G)        {before}  {}", before.approx());
                println!("avg1(G_{a}->{b})  {after}  {}", after.approx());
                println!(
                    "not increased  {}",
                    if after <= before { "yes" } else { "NO" }
                );
            }
        }
    }
    Ok(status::OK)
}

fn endpoint_dist(n: usize, format: Format) -> Result<u8> {
    let dist = path_endpoint_distribution(n)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                k: i64,
                probability: ExactRational,
                decimal: String,
            }
            let rows: Vec<Row> = dist
                .into_iter()
                .map(|(k, p)| Row {
                    k,
                    decimal: p.approx().to_string(),
                    probability: p,
                })
                .collect();
            println!("{}", serde_json::to_string(&rows)?);
        }
        Format::Csv => {
            println!("k,probability,decimal");
            for (k, p) in dist {
                println!("{k},{p},{}", p.approx());
            }
        }
        Format::Text => {
            for (k, p) in dist {
                println!("{k:>5}  {:<24} {}", p.to_string(), p.approx());
            }
        }
    }
    Ok(status::OK)
}
