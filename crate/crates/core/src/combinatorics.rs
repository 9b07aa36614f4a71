//! Binomial and trinomial coefficients, generalized Motzkin numbers and the
//! endpoint distribution of a lazy ±1 walk.
//!
//! Trinomial coefficients are indexed two ways:
//!
//! * centered, `trinomial(n, k)` for `-n <= k <= n`, the coefficient of
//!   `x^k` in `(x^-1 + 1 + x)^n`;
//! * irregular, `irregular_trinomial(n, k) = trinomial(n, k - n)` for
//!   `0 <= k <= 2n`.
//!
//! Everything outside those ranges is zero. Tables are built row by row
//! from the three-term recurrence and never touch floating point.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

static ZERO: BigUint = BigUint::ZERO;

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial with a possibly negative top index, which counts nothing.
pub(crate) fn binomial_signed(a: i64, b: i64) -> BigUint {
    if a < 0 {
        BigUint::zero()
    } else {
        binomial(a as u64, b)
    }
}

pub fn pow3(n: u64) -> BigUint {
    BigUint::from(3u32).pow(n as u32)
}

fn next_trinomial_row(prev: &[BigUint]) -> Vec<BigUint> {
    let mut next = vec![BigUint::zero(); prev.len() + 2];
    for (k, v) in prev.iter().enumerate() {
        next[k] += v;
        next[k + 1] += v;
        next[k + 2] += v;
    }
    next
}

/// Row `n` of the irregular triangle, computed with O(n) memory.
pub fn trinomial_row(n: u64) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        row = next_trinomial_row(&row);
    }
    row
}

/// Centered trinomial coefficient; zero for `|k| > n`.
pub fn trinomial(n: u64, k: i64) -> BigUint {
    irregular_trinomial(n, k + n as i64)
}

/// `T*(n, k)`; zero for `k < 0` or `k > 2n`.
pub fn irregular_trinomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > 2 * n {
        return BigUint::zero();
    }
    trinomial_row(n).swap_remove(k as usize)
}

pub fn central_trinomial(n: u64) -> BigUint {
    trinomial(n, 0)
}

/// Generalized Motzkin number: lattice paths from `(0,0)` to `(n,k)` with
/// steps -1/0/+1 that never go below zero.
pub fn motzkin(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        row = next_motzkin_row(&row);
    }
    row.swap_remove(k as usize)
}

fn next_motzkin_row(prev: &[BigUint]) -> Vec<BigUint> {
    let len = prev.len() + 1;
    (0..len)
        .map(|k| {
            let mut v = BigUint::zero();
            if k < prev.len() {
                v += &prev[k];
            }
            if k >= 1 && k - 1 < prev.len() {
                v += &prev[k - 1];
            }
            if k + 1 < prev.len() {
                v += &prev[k + 1];
            }
            v
        })
        .collect()
}

/// Memoized irregular trinomial triangle, rows `0..=max_n`. Immutable once
/// built.
#[derive(Clone, Debug)]
pub struct TrinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl TrinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let next = next_trinomial_row(&rows[n - 1]);
            rows.push(next);
        }
        TrinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Row `n` as `T*(n, 0..=2n)`. Panics if `n > max_n`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// `T*(n, k)`. Panics if `n > max_n`.
    pub fn irregular(&self, n: usize, k: i64) -> &BigUint {
        let row = &self.rows[n];
        if k < 0 || k as usize >= row.len() {
            &ZERO
        } else {
            &row[k as usize]
        }
    }

    pub fn centered(&self, n: usize, k: i64) -> &BigUint {
        self.irregular(n, k + n as i64)
    }

    pub fn central(&self, n: usize) -> &BigUint {
        self.irregular(n, n as i64)
    }
}

/// Memoized Motzkin numbers `M(n, k)` for `n <= max_n`.
#[derive(Clone, Debug)]
pub struct MotzkinTable {
    rows: Vec<Vec<BigUint>>,
}

impl MotzkinTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let next = next_motzkin_row(&rows[n - 1]);
            rows.push(next);
        }
        MotzkinTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Panics if `n > max_n`.
    pub fn get(&self, n: usize, k: i64) -> &BigUint {
        let row = &self.rows[n];
        if k < 0 || k as usize >= row.len() {
            &ZERO
        } else {
            &row[k as usize]
        }
    }
}

/// Probability that a uniformly random 1-Lipschitz mapping of the path on
/// `n` vertices, rooted at one end, sends the other end to `k`.
///
/// Counts step sequences of length `n - 1` with `|k| + i` up-steps and `i`
/// down-steps.
pub fn path_endpoint_probability(n: usize, k: i64) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::InvalidOrder {
            what: "path",
            got: n,
            min: 1,
        });
    }
    let steps = (n - 1) as i64;
    let k = k.abs();
    if k > steps {
        return Ok(ExactRational::zero());
    }
    let mut ways = BigUint::zero();
    for i in 0..=(steps - k) / 2 {
        ways += binomial(steps as u64, k + i) * binomial_signed(steps - k - i, i);
    }
    Ok(ExactRational::new(
        BigInt::from(ways),
        BigInt::from(pow3(steps as u64)),
    ))
}

/// `(k, P(X_n = k))` for every reachable `k`, ascending.
pub fn path_endpoint_distribution(n: usize) -> Result<Vec<(i64, ExactRational)>> {
    let span = n.saturating_sub(1) as i64;
    (-span..=span)
        .map(|k| path_endpoint_probability(n, k).map(|p| (k, p)))
        .collect()
}
