use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Largest trace the slow algorithm will materialize.
pub const SLOW_ROW_CAP: u64 = 5_000_000;

/// One subtraction step r = s·b + t·a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidRow {
    pub i: i64,
    pub j: u64,
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

#[derive(Clone, Debug)]
pub struct SlowEuclidTrace {
    pub a: BigInt,
    pub b: BigInt,
    pub rows: Vec<EuclidRow>,
    /// a₁, a₂, …, the number of rows in each block.
    pub block_sizes: Vec<BigInt>,
    /// Positions in `rows` of the simple rows (including the two initial rows).
    pub simple_rows: Vec<usize>,
}

impl SlowEuclidTrace {
    pub fn block(&self, i: i64) -> impl Iterator<Item = &EuclidRow> {
        self.rows.iter().filter(move |r| r.i == i)
    }

    pub fn simple(&self, i: i64) -> Option<&EuclidRow> {
        self.simple_rows.iter().map(|&k| &self.rows[k]).find(|r| r.i == i)
    }
}

/// Simple (fast-algorithm) row r_i = s_i·b + t_i·a for block i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleRow {
    pub i: i64,
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

fn check_pair(a: &BigInt, b: &BigInt) -> Result<()> {
    if !a.is_positive() || a >= b {
        return domain(format!("need 1 ≤ a < b, got a = {a}, b = {b}"));
    }
    if !a.gcd(b).is_one() {
        return domain(format!("gcd({a}, {b}) ≠ 1"));
    }
    Ok(())
}

/// Rows −1, 0, 1, … of the ordinary extended Euclidean algorithm, with the
/// quotient of each block, ending at r = 0.
pub fn simple_rows(a: &BigInt, b: &BigInt) -> Result<(Vec<SimpleRow>, Vec<BigInt>)> {
    check_pair(a, b)?;
    let mut rows = vec![
        SimpleRow { i: -1, r: b.clone(), s: BigInt::one(), t: BigInt::zero() },
        SimpleRow { i: 0, r: a.clone(), s: BigInt::zero(), t: BigInt::one() },
    ];
    let mut quotients = Vec::new();
    while !rows[rows.len() - 1].r.is_zero() {
        let (x, y) = (&rows[rows.len() - 2], &rows[rows.len() - 1]);
        let (q, r) = x.r.div_mod_floor(&y.r);
        let next = SimpleRow { i: y.i + 1, r, s: &x.s - &q * &y.s, t: &x.t - &q * &y.t };
        quotients.push(q);
        rows.push(next);
    }
    Ok((rows, quotients))
}

/// The subtraction-granular Euclidean algorithm on (a, b).
pub fn slow_euclid(a: &BigInt, b: &BigInt) -> Result<SlowEuclidTrace> {
    let (simple, sizes) = simple_rows(a, b)?;
    let total: BigInt = sizes.iter().sum();
    if total.to_u64().is_none_or(|t| t > SLOW_ROW_CAP) {
        return Err(Error::Resource(format!("slow trace of {a}/{b} has {total} rows")));
    }
    let mut rows = Vec::new();
    let mut simple_idx = Vec::new();
    for init in &simple[..2] {
        simple_idx.push(rows.len());
        rows.push(EuclidRow { i: init.i, j: 1, r: init.r.clone(), s: init.s.clone(), t: init.t.clone() });
    }
    for (k, size) in sizes.iter().enumerate() {
        let (x, y) = (&simple[k], &simple[k + 1]);
        let size = size.to_u64().expect("capped above");
        for j in 1..=size {
            let jj = BigInt::from(j);
            rows.push(EuclidRow {
                i: y.i + 1,
                j,
                r: &x.r - &jj * &y.r,
                s: &x.s - &jj * &y.s,
                t: &x.t - &jj * &y.t,
            });
        }
        simple_idx.push(rows.len() - 1);
    }
    Ok(SlowEuclidTrace { a: a.clone(), b: b.clone(), rows, block_sizes: sizes, simple_rows: simple_idx })
}
