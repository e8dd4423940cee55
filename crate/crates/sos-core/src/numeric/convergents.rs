use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::alpha::{ratio_coefficients, AlphaSpec};
use super::rational::Rational;
use crate::error::{domain, Result};

/// Extra blocks past the requested depth used as the reference value for δ of an irrational.
pub const PROXY_EXTRA_BLOCKS: usize = 8;

/// Stopping rule for [`convergent_table`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Need {
    /// Rows 0..=i.
    Depth(usize),
    /// Through the first row with q_i > bound.
    QAbove(BigInt),
    /// Through the first row with δ_i ≤ bound.
    DeltaAtMost(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentRow {
    pub index: usize,
    pub a: BigInt,
    pub p: BigInt,
    pub q: BigInt,
    pub delta: Rational,
    /// Sign of α − p/q.
    pub side: Ordering,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intermediate {
    pub i: usize,
    pub j: BigInt,
    pub p: BigInt,
    pub q: BigInt,
    pub delta: Rational,
}

#[derive(Clone, Debug)]
pub struct ConvergentTable {
    pub integer_part: BigInt,
    pub rows: Vec<ConvergentRow>,
    /// The expansion of a rational α ended before the stopping rule held.
    pub terminated: bool,
    /// δ values are measured against a deep convergent, not α itself.
    pub approximate: bool,
    reference: Rational,
}

impl ConvergentTable {
    pub fn coefficients(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.a.clone()).collect()
    }

    pub fn row(&self, i: usize) -> Option<&ConvergentRow> {
        self.rows.get(i)
    }

    /// β_i = 1/δ_i, `None` when δ_i = 0.
    pub fn beta(&self, i: usize) -> Option<Rational> {
        let d = &self.rows.get(i)?.delta;
        (!d.is_zero()).then(|| d.recip())
    }

    /// The value against which δ is measured.
    pub fn reference(&self) -> &Rational {
        &self.reference
    }

    /// p_{i,j}/q_{i,j} = [0; a₁, …, a_{i−1}, j] for 1 ≤ j ≤ a_i.
    pub fn intermediate(&self, i: usize, j: &BigInt) -> Option<Intermediate> {
        if i == 0 || i >= self.rows.len() || !j.is_positive() || j > &self.rows[i].a {
            return None;
        }
        let (p2, q2) = if i >= 2 {
            (self.rows[i - 2].p.clone(), self.rows[i - 2].q.clone())
        } else {
            (BigInt::one(), BigInt::zero())
        };
        let prev = &self.rows[i - 1];
        let p = p2 + j * &prev.p;
        let q = q2 + j * &prev.q;
        let delta = (&self.reference - Rational::new(p.clone(), q.clone())).abs();
        Some(Intermediate { i, j: j.clone(), p, q, delta })
    }

    /// All intermediates of block i, produced lazily.
    pub fn intermediates(&self, i: usize) -> impl Iterator<Item = Intermediate> + '_ {
        let size = self.rows.get(i).map(|r| r.a.clone()).unwrap_or_default();
        let mut j = BigInt::zero();
        std::iter::from_fn(move || {
            j += 1;
            if i == 0 || j > size {
                return None;
            }
            self.intermediate(i, &j)
        })
    }
}

/// [a₀; a₁, …] truncated to `depth` entries (a₀ counts as one).
pub fn cf_expand(alpha: &AlphaSpec, depth: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(depth);
    if depth == 0 {
        return out;
    }
    out.push(alpha.integer_part().clone());
    for i in 1..depth {
        match alpha.coefficient(i) {
            Some(a) => out.push(a),
            None => break,
        }
    }
    out
}

/// Full expansion of a/b for coprime 1 ≤ a < b.
pub fn cf_expand_ratio(a: &BigInt, b: &BigInt) -> Result<Vec<BigInt>> {
    if !a.is_positive() || a >= b {
        return domain(format!("need 1 ≤ a < b, got a = {a}, b = {b}"));
    }
    if !a.gcd(b).is_one() {
        return domain(format!("{a}/{b} is not reduced"));
    }
    Ok(ratio_coefficients(a, b))
}

fn last_needed(alpha: &AlphaSpec, need: &Need) -> (usize, bool) {
    let last = alpha.last_index();
    let cap = last.unwrap_or(usize::MAX);
    let mut i = 0;
    loop {
        let hit = match need {
            Need::Depth(d) => i >= *d,
            Need::QAbove(bound) => alpha.convergent(i).map(|(_, q)| q > *bound).unwrap_or(true),
            Need::DeltaAtMost(bound) => alpha.delta_at_most(i, bound).unwrap_or(true),
        };
        if hit {
            return (i.min(cap), i > cap);
        }
        if i == cap {
            return (cap, true);
        }
        i += 1;
    }
}

/// Principal convergents of α through the first row satisfying `need`.
pub fn convergent_table(alpha: &AlphaSpec, need: &Need) -> ConvergentTable {
    let (upto, terminated) = last_needed(alpha, need);
    let (reference, approximate) = match alpha.as_rational() {
        Some(r) => (r.clone(), false),
        None => {
            let (p, q) = alpha.convergent(upto + PROXY_EXTRA_BLOCKS).expect("irrational");
            (Rational::new(p, q), true)
        }
    };
    let rows = (0..=upto)
        .map(|i| {
            let (p, q) = alpha.convergent(i).expect("within expansion");
            let value = Rational::new(p.clone(), q.clone());
            let diff = &reference - &value;
            let side = if approximate {
                // even convergents lie below α, odd ones above
                if i % 2 == 0 { Ordering::Greater } else { Ordering::Less }
            } else {
                diff.cmp(&Rational::zero())
            };
            ConvergentRow { index: i, a: alpha.coefficient(i).expect("within expansion"), p, q, delta: diff.abs(), side }
        })
        .collect();
    ConvergentTable { integer_part: alpha.integer_part().clone(), rows, terminated, approximate, reference }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, Decimal};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn expand_51_71() {
        let cf = cf_expand_ratio(&BigInt::from(51), &BigInt::from(71)).unwrap();
        assert_eq!(cf, ints(&[0, 1, 2, 1, 1, 4, 2]));
        assert_eq!(cf_expand_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(), ints(&[0, 2]));
    }

    #[test]
    fn expand_rejects_bad_pairs() {
        assert!(cf_expand_ratio(&BigInt::from(6), &BigInt::from(8)).is_err());
        assert!(cf_expand_ratio(&BigInt::from(8), &BigInt::from(8)).is_err());
        assert!(cf_expand_ratio(&BigInt::from(0), &BigInt::from(8)).is_err());
    }

    #[test]
    fn expand_e() {
        assert_eq!(cf_expand(&AlphaSpec::e(), 9), ints(&[2, 1, 2, 1, 1, 4, 1, 1, 6]));
    }

    #[test]
    fn table_for_51_71() {
        let t = convergent_table(&AlphaSpec::from_ratio(51, 71).unwrap(), &Need::QAbove(BigInt::from(1000)));
        let qs: Vec<BigInt> = t.rows.iter().skip(1).map(|r| r.q.clone()).collect();
        assert_eq!(qs, ints(&[1, 3, 4, 7, 32, 71]));
        assert!(t.terminated);
        assert!(!t.approximate);
        assert!(t.rows.last().unwrap().delta.is_zero());
    }

    #[test]
    fn table_for_half() {
        let t = convergent_table(&AlphaSpec::from_ratio(1, 2).unwrap(), &Need::Depth(5));
        assert_eq!(t.rows.len(), 2);
        assert_eq!((t.rows[1].p.clone(), t.rows[1].q.clone()), (BigInt::from(1), BigInt::from(2)));
        assert!(t.rows[1].delta.is_zero());
    }

    #[test]
    fn e_deltas() {
        let t = convergent_table(&AlphaSpec::e(), &Need::DeltaAtMost(rat(1, 4700)));
        assert_eq!(t.rows.len(), 8);
        assert_eq!(Decimal::round(&t.rows[6].delta, 7).to_string(), "0.0003331");
        assert_eq!(Decimal::round(&t.rows[7].delta, 8).to_string(), "0.00002803");
        assert_eq!(t.rows[6].q, BigInt::from(39));
        assert_eq!(t.rows[7].q, BigInt::from(71));
        assert!(t.approximate);
    }

    #[test]
    fn intermediates_of_block_five() {
        let t = convergent_table(&AlphaSpec::from_ratio(51, 71).unwrap(), &Need::Depth(10));
        let qs: Vec<BigInt> = t.intermediates(5).map(|m| m.q).collect();
        assert_eq!(qs, ints(&[11, 18, 25, 32]));
        let last = t.intermediate(5, &BigInt::from(4)).unwrap();
        assert_eq!(last.delta, t.rows[5].delta);
        assert!(t.intermediate(5, &BigInt::from(5)).is_none());
    }
}
