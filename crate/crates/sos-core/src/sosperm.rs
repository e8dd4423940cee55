//! Sós permutations, their Farey intervals and the three-gap step rule.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::numeric::{rat, AlphaSpec, Rational};

/// Largest order accepted by [`enumerate_sos`].
pub const ENUMERATION_CAP: u64 = 3000;

/// One-line notation with values 1..=n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return domain(format!("not a permutation of 1..{n}: {values:?}"));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn reverse(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }
}

/// Consecutive order-n Farey fractions a/b < c/d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyInterval {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub order: u64,
    /// α equals the left endpoint a/b.
    pub endpoint: bool,
}

impl FareyInterval {
    pub fn left(&self) -> Rational {
        rat(self.a, self.b)
    }

    pub fn right(&self) -> Rational {
        rat(self.c, self.d)
    }

    /// Geometric probability c/d − a/b = 1/(bd).
    pub fn width(&self) -> Rational {
        rat(1, self.b * self.d)
    }

    pub fn mediant(&self) -> Rational {
        rat(self.a + self.c, self.b + self.d)
    }

    pub fn is_valid(&self) -> bool {
        self.b >= 1
            && self.d >= 1
            && self.b <= self.order
            && self.d <= self.order
            && (self.b * self.c) as i128 - (self.a * self.d) as i128 == 1
            && self.c <= self.d
    }
}

impl fmt::Display for FareyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{},{}/{}", self.a, self.b, self.c, self.d)
    }
}

/// Sorting permutation of the multiples p·i mod q, ties broken by index.
fn sort_multiples(n: usize, p: &BigInt, q: &BigInt) -> Permutation {
    // (key, index) pairs sort ties by index
    match (p.to_u64(), q.to_u64()) {
        (Some(p), Some(q)) if (q as u128) * (n as u128) <= u64::MAX as u128 && p < q => {
            let mut keyed: Vec<(u64, usize)> = (1..=n).map(|i| ((p * i as u64) % q, i)).collect();
            keyed.sort_unstable();
            return Permutation(keyed.into_iter().map(|(_, i)| i).collect());
        }
        _ => {}
    }
    match (p.to_u128(), q.to_u128()) {
        (Some(p), Some(q)) if q.checked_mul(n as u128).is_some() && p < q => {
            let mut keyed: Vec<(u128, usize)> = (1..=n).map(|i| ((p * i as u128) % q, i)).collect();
            keyed.sort_unstable();
            Permutation(keyed.into_iter().map(|(_, i)| i).collect())
        }
        _ => {
            let mut keyed: Vec<(BigInt, usize)> = (1..=n).map(|i| ((p * BigInt::from(i)).mod_floor(q), i)).collect();
            keyed.sort_unstable();
            Permutation(keyed.into_iter().map(|(_, i)| i).collect())
        }
    }
}

/// w(n, α): the permutation listing 1..n in increasing order of {iα}.
pub fn sos_permutation(n: usize, alpha: &AlphaSpec) -> Result<Permutation> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let proxy = alpha.proxy(&BigInt::from(n));
    Ok(sort_multiples(n, &proxy.p, &proxy.q))
}

/// w(n, p/q) for an explicit fraction.
pub fn sos_permutation_ratio(n: usize, p: &BigInt, q: &BigInt) -> Permutation {
    sort_multiples(n, &p.mod_floor(q), q)
}

/// Right neighbour of a/b in the Farey sequence of order n.
fn right_neighbour(a: u64, b: u64, n: u64) -> (u64, u64) {
    // b·c − a·d = 1  ⇔  a·d ≡ −1 (mod b)
    if b == 1 {
        return (a * n + 1, n);
    }
    let g = (a as i128).extended_gcd(&(b as i128));
    let inv = g.x.rem_euclid(b as i128);
    let d0 = ((b as i128 - inv) % b as i128) as u64;
    let d = d0 + b * ((n - d0) / b);
    let c = (1 + a as u128 * d as u128) / b as u128;
    (c as u64, d)
}

/// The order-n Farey interval a/b ≤ α < c/d.
pub fn farey_interval(n: u64, alpha: &AlphaSpec) -> Result<FareyInterval> {
    if n == 0 {
        return domain("order must be at least 1");
    }
    let nb = BigInt::from(n);
    let mut k = 0;
    while let Some((_, q)) = alpha.convergent(k + 1) {
        if q > nb {
            break;
        }
        k += 1;
    }
    let (pk, qk) = alpha.convergent(k).expect("row k exists");
    let (pk, qk) = (pk.to_u64().expect("≤ n"), qk.to_u64().expect("≤ n"));
    if let Some(value) = alpha.as_rational() {
        if *value == rat(pk, qk) {
            let (c, d) = right_neighbour(pk, qk, n);
            return Ok(FareyInterval { a: pk, b: qk, c, d, order: n, endpoint: true });
        }
    }
    let (pm, qm) = if k == 0 {
        (1, 0)
    } else {
        let (p, q) = alpha.convergent(k - 1).expect("row k−1 exists");
        (p.to_u64().expect("≤ n"), q.to_u64().expect("≤ n"))
    };
    let j = (n - qm) / qk;
    let (pi, qi) = (pm + j * pk, qm + j * qk);
    let (a, b, c, d) = if k % 2 == 0 { (pk, qk, pi, qi) } else { (pi, qi, pk, qk) };
    Ok(FareyInterval { a, b, c, d, order: n, endpoint: false })
}

/// Outcome of [`check_three_gap`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeGapReport {
    pub ok: bool,
    /// First failing position i (1-based), with the observed and expected next value.
    pub violation: Option<(usize, i64, i64)>,
}

/// Checks w(1) = b and the three-case step rule for the interval's b, d.
pub fn check_three_gap(w: &Permutation, iv: &FareyInterval) -> Result<ThreeGapReport> {
    let n = w.len() as i64;
    if n as u64 != iv.order {
        return domain(format!("permutation length {n} ≠ interval order {}", iv.order));
    }
    let (b, d) = (iv.b as i64, iv.d as i64);
    let v = w.values();
    if v[0] as i64 != b {
        return Ok(ThreeGapReport { ok: false, violation: Some((0, v[0] as i64, b)) });
    }
    for i in 0..v.len() - 1 {
        let cur = v[i] as i64;
        let step = if cur <= n - b {
            b
        } else if cur < d {
            b - d
        } else {
            -d
        };
        if v[i + 1] as i64 != cur + step {
            return Ok(ThreeGapReport { ok: false, violation: Some((i + 1, v[i + 1] as i64, cur + step)) });
        }
    }
    Ok(ThreeGapReport { ok: true, violation: None })
}

/// Σ_{k ≤ n} φ(k) by a totient sieve.
pub fn totient_sum(n: u64) -> u64 {
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi.iter().skip(1).sum()
}

/// Lazy walk over the order-n Farey intervals, left to right.
#[derive(Clone, Debug)]
pub struct SosEnumeration {
    n: u64,
    cur: Option<(u64, u64, u64, u64)>,
}

impl Iterator for SosEnumeration {
    type Item = (FareyInterval, Permutation);

    fn next(&mut self) -> Option<Self::Item> {
        let (a, b, c, d) = self.cur?;
        let iv = FareyInterval { a, b, c, d, order: self.n, endpoint: false };
        let w = sos_permutation_ratio(self.n as usize, &BigInt::from(a + c), &BigInt::from(b + d));
        self.cur = if c == d {
            None
        } else {
            let k = (self.n + b) / d;
            Some((c, d, k * c - a, k * d - b))
        };
        Some((iv, w))
    }
}

/// Every Sós permutation of order n with its Farey interval.
pub fn enumerate_sos(n: u64) -> Result<SosEnumeration> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    if n > ENUMERATION_CAP {
        return Err(Error::Resource(format!("enumeration of order {n} exceeds the cap {ENUMERATION_CAP}")));
    }
    Ok(SosEnumeration { n, cur: Some((0, 1, 1, n)) })
}

/// Sum of the geometric probabilities 1/(bd).
pub fn total_probability(intervals: impl IntoIterator<Item = FareyInterval>) -> Rational {
    intervals.into_iter().fold(Rational::zero(), |acc, iv| acc + iv.width())
}

impl FareyInterval {
    /// Whether x lies in [a/b, c/d).
    pub fn contains(&self, x: &Rational) -> bool {
        &self.left() <= x && x < &self.right()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> AlphaSpec {
        AlphaSpec::parse(s).unwrap()
    }

    #[test]
    fn three_tenths() {
        let w = sos_permutation(7, &alpha("3/10")).unwrap();
        assert_eq!(w.to_string(), "7 4 1 5 2 6 3");
        assert_eq!(w.inverse().to_string(), "3 5 7 2 4 6 1");
    }

    #[test]
    fn small_alpha_gives_identity() {
        assert_eq!(sos_permutation(5, &alpha("1/7")).unwrap(), Permutation::identity(5));
    }

    #[test]
    fn ties_break_by_index() {
        // 1/2 at n = 4: values 1/2, 0, 1/2, 0
        assert_eq!(sos_permutation(4, &alpha("1/2")).unwrap().to_string(), "2 4 1 3");
    }

    #[test]
    fn interval_for_three_tenths() {
        let iv = farey_interval(7, &alpha("3/10")).unwrap();
        assert_eq!(iv.to_string(), "2/7,1/3");
        assert!(iv.is_valid());
        assert!(!iv.endpoint);
    }

    #[test]
    fn interval_below_one_over_n() {
        let iv = farey_interval(9, &alpha("1/11")).unwrap();
        assert_eq!((iv.a, iv.b, iv.c, iv.d), (0, 1, 1, 9));
    }

    #[test]
    fn endpoint_interval() {
        let iv = farey_interval(7, &alpha("2/7")).unwrap();
        assert!(iv.endpoint);
        assert_eq!(iv.to_string(), "2/7,1/3");
        let iv = farey_interval(5, &alpha("1/2")).unwrap();
        assert_eq!(iv.to_string(), "1/2,3/5");
    }

    #[test]
    fn three_gap_examples() {
        let w: Permutation = "7 4 1 5 2 6 3".parse().unwrap();
        let iv = farey_interval(7, &alpha("3/10")).unwrap();
        assert!(check_three_gap(&w, &iv).unwrap().ok);
        let id = Permutation::identity(6);
        let iv = FareyInterval { a: 0, b: 1, c: 1, d: 6, order: 6, endpoint: false };
        assert!(check_three_gap(&id, &iv).unwrap().ok);
        let bad: Permutation = "1 3 2 4".parse().unwrap();
        for (iv, _) in enumerate_sos(4).unwrap() {
            assert!(!check_three_gap(&bad, &iv).unwrap().ok);
        }
        assert!(check_three_gap(&bad, &FareyInterval { a: 0, b: 1, c: 1, d: 5, order: 5, endpoint: false }).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_sos(1).unwrap().count(), 1);
        assert_eq!(enumerate_sos(3).unwrap().count(), 4);
        let all: Vec<_> = enumerate_sos(4).unwrap().collect();
        assert_eq!(all.len(), 6);
        let mut perms: Vec<_> = all.iter().map(|(_, w)| w.clone()).collect();
        perms.sort();
        perms.dedup();
        assert_eq!(perms.len(), 6);
        assert!(matches!(enumerate_sos(ENUMERATION_CAP + 1), Err(Error::Resource(_))));
    }

    #[test]
    fn totients() {
        assert_eq!(totient_sum(1), 1);
        assert_eq!(totient_sum(4), 6);
        assert_eq!(totient_sum(10), 32);
    }

    #[test]
    fn permutation_parsing() {
        assert!("1 2 2".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        let w: Permutation = "3,1,2".parse().unwrap();
        assert_eq!(w.inverse().inverse(), w);
    }
}
