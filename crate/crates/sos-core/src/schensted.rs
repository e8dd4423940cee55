//! Schensted insertion, shapes, and monotone subsequence counts.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::sosperm::Permutation;

/// Largest length accepted by [`greene_oracle`].
pub const GREENE_CAP: usize = 12;

/// λ₁ ≥ λ₂ ≥ … > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("not a partition: {rows:?}"));
        }
        Ok(Partition(rows))
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// λ_k for 1-based k, zero past the last row.
    pub fn part(&self, k: usize) -> usize {
        if k == 0 { 0 } else { self.0.get(k - 1).copied().unwrap_or(0) }
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        let mut cols = vec![0; width];
        for &r in &self.0 {
            for c in cols.iter_mut().take(r) {
                *c += 1;
            }
        }
        Partition(cols)
    }

    /// λ₁ + ⋯ + λ_k for k = 1..=len.
    pub fn prefix_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &r| {
                *acc += r;
                Some(*acc)
            })
            .collect()
    }

    /// Unit boxes [l−1, l] × [k−1, k] as (l, k).
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.0.iter().enumerate().flat_map(|(k, &r)| (1..=r).map(move |l| (l, k + 1))).collect()
    }

    /// Vertices of ∂A_λ from (0, m) down to (λ₁, 0).
    pub fn staircase(&self) -> Vec<(usize, usize)> {
        let m = self.0.len();
        let mut pts = Vec::with_capacity(2 * m + 1);
        pts.push((0, m));
        for k in (1..=m).rev() {
            let r = self.0[k - 1];
            pts.push((r, k));
            pts.push((r, k - 1));
        }
        pts.dedup();
        pts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(rows)
    }
}

/// Insertion tableau P and recording tableau Q, rows listed bottom-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauPair {
    pub p: Vec<Vec<usize>>,
    pub q: Vec<Vec<usize>>,
}

impl TableauPair {
    pub fn shape(&self) -> Partition {
        Partition(self.p.iter().map(Vec::len).collect())
    }

    /// French drawing: the first row at the bottom.
    pub fn render_french(tableau: &[Vec<usize>]) -> String {
        let width = tableau.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        tableau
            .iter()
            .rev()
            .map(|row| row.iter().map(|v| format!("{v:>width$}")).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Row-inserts x, returning the row where the insertion ended.
fn insert(rows: &mut Vec<Vec<usize>>, mut x: usize) -> usize {
    for (k, row) in rows.iter_mut().enumerate() {
        let pos = row.partition_point(|&v| v < x);
        if pos == row.len() {
            row.push(x);
            return k;
        }
        std::mem::swap(&mut row[pos], &mut x);
    }
    rows.push(vec![x]);
    rows.len() - 1
}

pub fn rsk(w: &Permutation) -> TableauPair {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &x) in w.values().iter().enumerate() {
        let k = insert(&mut p, x);
        if k == q.len() {
            q.push(Vec::new());
        }
        q[k].push(step + 1);
    }
    TableauPair { p, q }
}

/// sh(w) without building the recording tableau.
pub fn shape(w: &Permutation) -> Partition {
    shape_of_sequence(w.values())
}

/// Schensted shape of any sequence of distinct keys.
pub fn shape_of_sequence<T: Ord + Copy>(seq: &[T]) -> Partition {
    let mut rows: Vec<Vec<T>> = Vec::new();
    'outer: for &v in seq {
        let mut x = v;
        for row in rows.iter_mut() {
            let pos = row.partition_point(|&y| y < x);
            if pos == row.len() {
                row.push(x);
                continue 'outer;
            }
            std::mem::swap(&mut row[pos], &mut x);
        }
        rows.push(vec![x]);
    }
    Partition(rows.iter().map(Vec::len).collect())
}

/// Longest strictly increasing subsequence by patience sorting.
pub fn lis_length<T: Ord + Copy>(seq: &[T]) -> usize {
    let mut piles: Vec<T> = Vec::new();
    for &x in seq {
        let pos = piles.partition_point(|&y| y < x);
        if pos == piles.len() {
            piles.push(x);
        } else {
            piles[pos] = x;
        }
    }
    piles.len()
}

/// Longest strictly decreasing subsequence.
pub fn lds_length<T: Ord + Copy>(seq: &[T]) -> usize {
    let rev: Vec<std::cmp::Reverse<T>> = seq.iter().map(|&x| std::cmp::Reverse(x)).collect();
    lis_length(&rev)
}

/// (λ₁, λ′₁) = (longest increasing, longest decreasing).
pub fn arm_leg(w: &Permutation) -> (usize, usize) {
    (lis_length(w.values()), lds_length(w.values()))
}

/// All Greene invariants I_k and D_k for k = 1..=n by exhaustive subset search.
pub fn greene_all(w: &Permutation) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = w.len();
    if n > GREENE_CAP {
        return Err(Error::Resource(format!(
            "exhaustive Greene search is limited to n ≤ {GREENE_CAP}; use shape() prefix sums for n = {n}"
        )));
    }
    let v = w.values();
    let mut inc = vec![0; n + 1];
    let mut dec = vec![0; n + 1];
    let mut sub = Vec::with_capacity(n);
    for mask in 0u32..(1 << n) {
        sub.clear();
        sub.extend((0..n).filter(|&i| mask >> i & 1 == 1).map(|i| v[i]));
        let size = sub.len();
        // a set splits into k increasing chains iff its longest decreasing one has length ≤ k
        let (up, down) = (lis_length(&sub), lds_length(&sub));
        for best in &mut inc[down..] {
            *best = (*best).max(size);
        }
        for best in &mut dec[up..] {
            *best = (*best).max(size);
        }
    }
    Ok((inc[1..].to_vec(), dec[1..].to_vec()))
}

/// (I_k, D_k): largest unions of k increasing, resp. decreasing, subsequences.
pub fn greene_oracle(w: &Permutation, k: usize) -> Result<(usize, usize)> {
    if k == 0 {
        return Ok((0, 0));
    }
    let (inc, dec) = greene_all(w)?;
    let n = w.len();
    Ok((inc[k.min(n) - 1], dec[k.min(n) - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn figure_one_tableaux() {
        let t = rsk(&perm("7 4 1 5 2 6 3"));
        assert_eq!(t.p, vec![vec![1, 2, 3], vec![4, 5, 6], vec![7]]);
        assert_eq!(t.q, vec![vec![1, 4, 6], vec![2, 5, 7], vec![3]]);
        assert_eq!(TableauPair::render_french(&t.p), "7\n4 5 6\n1 2 3");
    }

    #[test]
    fn inverse_swaps_tableaux() {
        let w = perm("7 4 1 5 2 6 3");
        let (t, ti) = (rsk(&w), rsk(&w.inverse()));
        assert_eq!((t.p, t.q), (ti.q, ti.p));
    }

    #[test]
    fn trivial_shapes() {
        assert_eq!(shape(&Permutation::identity(5)).rows(), &[5]);
        assert_eq!(shape(&Permutation::reverse(4)).rows(), &[1, 1, 1, 1]);
        assert_eq!(arm_leg(&Permutation::identity(6)), (6, 1));
    }

    #[test]
    fn figure_one_shape() {
        let w = perm("7 4 1 5 2 6 3");
        assert_eq!(shape(&w).to_string(), "3,3,1");
        assert_eq!(arm_leg(&w), (3, 3));
        assert_eq!(shape(&w).conjugate().rows(), &[3, 2, 2]);
    }

    #[test]
    fn greene_on_figure_one() {
        let w = perm("7 4 1 5 2 6 3");
        let (inc, dec) = greene_all(&w).unwrap();
        assert_eq!(&inc[..3], &[3, 6, 7]);
        assert_eq!(&dec[..3], &[3, 5, 7]);
        assert_eq!(greene_oracle(&w, 2).unwrap(), (6, 5));
    }

    #[test]
    fn greene_trivial_and_guard() {
        assert_eq!(greene_oracle(&Permutation::identity(7), 1).unwrap().0, 7);
        assert_eq!(greene_oracle(&Permutation::reverse(7), 1).unwrap().1, 7);
        assert!(matches!(greene_oracle(&Permutation::identity(13), 1), Err(Error::Resource(_))));
    }

    #[test]
    fn arm_leg_of_51_mod_71() {
        // brute force over the 71 points gives 12; 13 is the length of the corner ⟨71,71⟩
        let seq: Vec<u64> = (1..=71).map(|i| 51 * i % 71).collect();
        assert_eq!((lis_length(&seq), lds_length(&seq)), (12, 9));
    }

    #[test]
    fn partition_helpers() {
        let p: Partition = "3,3,1".parse().unwrap();
        assert_eq!(p.prefix_sums(), vec![3, 6, 7]);
        assert_eq!(p.conjugate().conjugate(), p);
        assert_eq!(p.boxes().len(), 7);
        assert_eq!(p.staircase(), vec![(0, 3), (1, 3), (1, 2), (3, 2), (3, 1), (3, 0)]);
        assert!("1,2".parse::<Partition>().is_err());
    }
}
