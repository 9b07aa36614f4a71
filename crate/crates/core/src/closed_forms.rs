//! Closed-form counts and average ranges of 1-Lipschitz mappings for
//! standard graph classes, evaluated in exact arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, binomial_signed, central_trinomial, pow3, trinomial_row};
use crate::error::{Error, Result};
use crate::graph::{classify, GraphClassTag, RootedGraph};
use crate::lipschitz::{AvgRangeReport, Mode, Source};
use crate::rational::{Approx, ExactRational};

fn require(what: &'static str, got: usize, min: usize) -> Result<()> {
    if got < min {
        Err(Error::InvalidOrder { what, got, min })
    } else {
        Ok(())
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn int(v: BigUint) -> BigInt {
    BigInt::from(v)
}

pub fn count1_complete(n: usize) -> Result<BigUint> {
    require("complete graph", n, 1)?;
    Ok(pow2(n) - 1u32)
}

/// `2 - 1 / (2^n - 1)`.
pub fn avg1_complete(n: usize) -> Result<ExactRational> {
    let count = count1_complete(n)?;
    Ok(ExactRational::from_integer(2) - ExactRational::new(1, int(count)))
}

/// `3^p + 3^q + 2^(p+q) - 2^(p+1) - 2^(q+1) + 1`.
pub fn count1_complete_bipartite(p: usize, q: usize) -> Result<BigUint> {
    require("complete bipartite part", p.min(q), 1)?;
    Ok(pow3(p as u64) + pow3(q as u64) + pow2(p + q) + 1u32 - pow2(p + 1) - pow2(q + 1))
}

/// `3 - 2^(p+q) / |L(K_{p,q})|`.
pub fn avg1_complete_bipartite(p: usize, q: usize) -> Result<ExactRational> {
    let count = count1_complete_bipartite(p, q)?;
    Ok(ExactRational::from_integer(3) - ExactRational::new(int(pow2(p + q)), int(count)))
}

pub fn count1_star(n: usize) -> Result<BigUint> {
    require("star", n, 2)?;
    Ok(pow3(n as u64 - 1))
}

/// `3 - 2^n / 3^(n-1)`.
pub fn avg1_star(n: usize) -> Result<ExactRational> {
    let count = count1_star(n)?;
    Ok(ExactRational::from_integer(3) - ExactRational::new(int(pow2(n)), int(count)))
}

pub fn count_strong1_star(n: usize) -> Result<BigUint> {
    require("star", n, 2)?;
    Ok(pow2(n - 1))
}

/// `3 - 2^(2-n)`.
pub fn avg_strong1_star(n: usize) -> Result<ExactRational> {
    require("star", n, 2)?;
    Ok(ExactRational::from_integer(3) - ExactRational::new(4, int(pow2(n))))
}

pub fn count1_path(n: usize) -> Result<BigUint> {
    require("path", n, 1)?;
    Ok(pow3(n as u64 - 1))
}

/// Average range of the path on `n` vertices as an explicit double sum of
/// binomial products: for the endpoint value `X` and the running maximum
/// `M+`, `P(M+ = k) = P(X = k) + P(X = k + 1)`, and by symmetry the
/// average is `1 + 2 E[M+]`.
pub fn avg1_path(n: usize) -> Result<ExactRational> {
    require("path", n, 1)?;
    let steps = (n - 1) as i64;
    let mut total = BigUint::zero();
    for k in 0..=steps {
        let mut inner = BigUint::zero();
        for i in 0..=(steps - k) / 2 {
            inner += binomial(steps as u64, k + i) * binomial_signed(steps - k - i, i);
            inner += binomial(steps as u64, k + 1 + i) * binomial_signed(steps - k - i - 1, i);
        }
        total += inner * BigUint::from(k as u64);
    }
    Ok(ExactRational::one() + ExactRational::new(int(total) * 2, int(pow3(steps as u64))))
}

/// Same value as [`avg1_path`], with the endpoint distribution read off the
/// trinomial triangle instead of binomial sums.
pub fn avg1_path_reflection(n: usize) -> Result<ExactRational> {
    require("path", n, 1)?;
    let steps = n as u64 - 1;
    // row[j] counts walks ending at j - steps
    let row = trinomial_row(steps);
    let at = |k: u64| -> BigUint { row.get((k + steps) as usize).cloned().unwrap_or_default() };
    let mut expected_max = BigUint::zero();
    for k in 1..=steps {
        expected_max += (at(k) + at(k + 1)) * BigUint::from(k);
    }
    Ok(ExactRational::one() + ExactRational::new(int(expected_max) * 2, int(pow3(steps))))
}

/// Whether `avg1(P_{n+1}) - avg1(P_n) <= 2/3`.
pub fn path_increment_bound_check(n: usize) -> Result<bool> {
    let diff = avg1_path(n + 1)? - avg1_path(n)?;
    Ok(diff <= ExactRational::new(2, 3))
}

/// `(2n + 1) / 3`, an upper bound on `avg1(P_n)`.
pub fn path_linear_bound(n: usize) -> ExactRational {
    ExactRational::new(2 * n as i64 + 1, 3)
}

/// Central trinomial coefficient of order `n`.
pub fn count1_cycle(n: usize) -> Result<BigUint> {
    require("cycle", n, 3)?;
    Ok(central_trinomial(n as u64))
}

/// `(3^n + (-1)^n) / (2 * central_trinomial(n))`.
pub fn avg1_cycle(n: usize) -> Result<ExactRational> {
    let count = count1_cycle(n)?;
    let mut num = int(pow3(n as u64));
    if n.is_multiple_of(2) {
        num += 1;
    } else {
        num -= 1;
    }
    Ok(ExactRational::new(num, int(count) * 2))
}

/// Exact cycle average next to the asymptote `2 sqrt(pi n / 3)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleAsymptotics {
    pub n: usize,
    pub exact: ExactRational,
    pub asymptote: Approx,
}

impl CycleAsymptotics {
    /// `exact / asymptote` in floating point.
    pub fn ratio(&self) -> f64 {
        self.exact.approx().value() / self.asymptote.value()
    }
}

pub fn cycle_avg_asymptotic(n: usize) -> Result<CycleAsymptotics> {
    let exact = avg1_cycle(n)?;
    let asymptote = Approx(2.0 * (std::f64::consts::PI * n as f64 / 3.0).sqrt());
    Ok(CycleAsymptotics {
        n,
        exact,
        asymptote,
    })
}

/// Mappings of any unicyclic graph of order `n` whose cycle has length `c`:
/// `central_trinomial(c) * 3^(n-c)`.
pub fn count1_unicyclic(n: usize, c: usize) -> Result<BigUint> {
    if c < 3 || c > n {
        return Err(Error::InvalidArgument(format!(
            "unicyclic count needs 3 <= c <= n, got n = {n}, c = {c}"
        )));
    }
    Ok(central_trinomial(c as u64) * pow3((n - c) as u64))
}

/// A closed-form evaluation with its count, average and provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub formula_name: String,
    pub inputs: Vec<usize>,
    #[serde(with = "crate::decimal")]
    pub count: BigUint,
    pub value: ExactRational,
}

impl FormulaResult {
    fn new(name: &str, inputs: Vec<usize>, count: BigUint, value: ExactRational) -> Self {
        FormulaResult {
            formula_name: name.to_string(),
            inputs,
            count,
            value,
        }
    }

    /// Converts to a report; the range sum is `value * count`, which the
    /// formulas guarantee to be an integer.
    pub fn into_report(self, mode: Mode) -> Result<AvgRangeReport> {
        let sum = &self.value * &ExactRational::from(self.count.clone());
        if !sum.is_integer() || sum.numer() < &BigInt::zero() {
            return Err(Error::InvalidArgument(format!(
                "{} gives a non-integral range sum {sum}",
                self.formula_name
            )));
        }
        let range_sum = sum.numer().to_biguint().expect("checked non-negative");
        let report = AvgRangeReport::new(
            self.count,
            range_sum,
            mode,
            Source::ClosedForm(self.formula_name),
        )?;
        debug_assert_eq!(report.average(), &self.value);
        Ok(report)
    }
}

/// Closed form for `g` if its class has one for `mode`. Only `M = 1` is
/// covered; the strong variant only for stars.
pub fn closed_form(g: &RootedGraph, mode: Mode) -> Option<Result<FormulaResult>> {
    let n = g.order();
    let tag = classify(g);
    let eval =
        |name: &str, inputs: Vec<usize>, count: Result<BigUint>, avg: Result<ExactRational>| {
            Some(count.and_then(|c| avg.map(|a| FormulaResult::new(name, inputs, c, a))))
        };
    match (mode, tag) {
        (Mode::Weak(1), GraphClassTag::Complete) => {
            eval("complete", vec![n], count1_complete(n), avg1_complete(n))
        }
        (Mode::Weak(1), GraphClassTag::Path) => eval("path", vec![n], count1_path(n), avg1_path(n)),
        (Mode::Weak(1), GraphClassTag::Star) => eval("star", vec![n], count1_star(n), avg1_star(n)),
        (Mode::Weak(1), GraphClassTag::Cycle) => {
            eval("cycle", vec![n], count1_cycle(n), avg1_cycle(n))
        }
        (Mode::Weak(1), GraphClassTag::CompleteBipartite(p, q)) => eval(
            "complete_bipartite",
            vec![p, q],
            count1_complete_bipartite(p, q),
            avg1_complete_bipartite(p, q),
        ),
        (Mode::Strong(1), GraphClassTag::Star) => eval(
            "strong_star",
            vec![n],
            count_strong1_star(n),
            avg_strong1_star(n),
        ),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete_bipartite, make_corolla, make_cycle, make_path, make_star};
    use crate::lipschitz::{avg_range_bruteforce, count_mappings};

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn complete_values() {
        assert_eq!(avg1_complete(1).unwrap(), r(1, 1));
        assert_eq!(avg1_complete(2).unwrap(), r(5, 3));
        assert_eq!(avg1_complete(3).unwrap(), r(13, 7));
        assert!(avg1_complete(0).is_err());
    }

    #[test]
    fn complete_bipartite_values() {
        assert_eq!(count1_complete_bipartite(1, 1).unwrap(), big(3));
        assert_eq!(avg1_complete_bipartite(1, 1).unwrap(), r(5, 3));
        assert_eq!(count1_complete_bipartite(1, 2).unwrap(), big(9));
        assert_eq!(avg1_complete_bipartite(1, 2).unwrap(), r(19, 9));
        let k23 = make_complete_bipartite(2, 3).unwrap();
        let brute = avg_range_bruteforce(&k23, Mode::Weak(1)).unwrap();
        assert_eq!(
            &count1_complete_bipartite(2, 3).unwrap(),
            brute.mapping_count()
        );
        assert_eq!(
            count1_complete_bipartite(2, 3).unwrap(),
            count1_complete_bipartite(3, 2).unwrap()
        );
        assert!(count1_complete_bipartite(0, 2).is_err());
    }

    #[test]
    fn star_values() {
        assert_eq!(avg1_star(3).unwrap(), r(19, 9));
        assert_eq!(avg_strong1_star(2).unwrap(), r(2, 1));
        assert_eq!(avg_strong1_star(3).unwrap(), r(5, 2));
        assert!(avg1_star(1).is_err());
        assert!(avg_strong1_star(1).is_err());
    }

    #[test]
    fn path_values() {
        assert_eq!(avg1_path(1).unwrap(), r(1, 1));
        assert_eq!(avg1_path(2).unwrap(), r(5, 3));
        assert_eq!(avg1_path(5).unwrap(), r(227, 81));
        assert_eq!(avg1_path(7).unwrap(), r(2445, 729));
        assert_eq!(avg1_path(12).unwrap(), r(786985, 177147));
        assert!(avg1_path(0).is_err());
        for n in 1..=20 {
            assert_eq!(
                avg1_path(n).unwrap(),
                avg1_path_reflection(n).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn path_bounds() {
        assert_eq!(avg1_path(2).unwrap() - avg1_path(1).unwrap(), r(2, 3));
        assert_eq!(avg1_path(6).unwrap() - avg1_path(5).unwrap(), r(70, 243));
        assert!(path_increment_bound_check(1).unwrap());
        assert!(path_increment_bound_check(5).unwrap());
        assert_eq!(path_linear_bound(4), r(3, 1));
        assert!(path_linear_bound(4) >= avg1_path(4).unwrap());
    }

    #[test]
    fn cycle_values() {
        assert_eq!(count1_cycle(3).unwrap(), big(7));
        assert_eq!(avg1_cycle(3).unwrap(), r(13, 7));
        assert_eq!(count1_cycle(4).unwrap(), big(19));
        assert_eq!(avg1_cycle(4).unwrap(), r(41, 19));
        assert_eq!(avg1_cycle(12).unwrap(), r(265721, 73789));
        assert!(avg1_cycle(2).is_err());
    }

    #[test]
    fn asymptotic_pair() {
        let a = cycle_avg_asymptotic(12).unwrap();
        assert_eq!(a.exact, r(265721, 73789));
        assert!((a.asymptote.value() - 2.0 * (4.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
        assert!((a.exact.approx().value() - 3.601).abs() < 1e-3);
        assert_eq!(cycle_avg_asymptotic(3).unwrap().exact, r(13, 7));
    }

    #[test]
    fn unicyclic_counts() {
        assert_eq!(count1_unicyclic(3, 3).unwrap(), count1_cycle(3).unwrap());
        assert_eq!(count1_unicyclic(4, 3).unwrap(), big(21));
        assert_eq!(count1_unicyclic(5, 4).unwrap(), big(57));
        let tri_pendant = make_corolla(3, &[1, 0, 0]).unwrap();
        assert_eq!(
            count_mappings(&tri_pendant, Mode::Weak(1)).unwrap(),
            big(21)
        );
        let c4_pendant = make_corolla(4, &[1, 0, 0, 0]).unwrap();
        assert_eq!(count_mappings(&c4_pendant, Mode::Weak(1)).unwrap(), big(57));
        assert!(count1_unicyclic(4, 2).is_err());
        assert!(count1_unicyclic(4, 5).is_err());
    }

    #[test]
    fn closed_form_dispatch() {
        let w = Mode::Weak(1);
        let report = closed_form(&make_path(5).unwrap(), w)
            .unwrap()
            .unwrap()
            .into_report(w)
            .unwrap();
        assert_eq!(report.average(), &r(227, 81));
        assert_eq!(report.mapping_count(), &big(81));
        assert_eq!(report.range_sum(), &big(227));
        assert_eq!(report.source(), &Source::ClosedForm("path".into()));
        let c8 = closed_form(&make_cycle(8).unwrap(), w).unwrap().unwrap();
        assert_eq!(c8.value, r(3281, 1107));
        let s = Mode::Strong(1);
        let star = closed_form(&make_star(4).unwrap(), s).unwrap().unwrap();
        assert_eq!(star.formula_name, "strong_star");
        assert!(closed_form(&make_cycle(4).unwrap(), s).is_none());
        assert!(closed_form(&make_path(4).unwrap(), Mode::Weak(2)).is_none());
        assert!(closed_form(&make_corolla(3, &[1, 0, 0]).unwrap(), w).is_none());
    }
}
