use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::frame::RescaledFrame;
use super::profile::{crossing_profile, SideProfile};
use crate::error::{domain, Result};
use crate::numeric::{ceil, floor, int, Rational};

/// Largest number of skeleton widenings tried before giving up.
pub const WIDEN_CAP: u32 = 50;

/// Which end of the crossing lines the chains start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// j = j_k: chains hug the lower index end.
    Lower,
    /// j = ȷ̄_{k′}: chains hug the upper index end.
    Upper,
}

/// Lattice point J·x + i·y of L_n assigned to a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainPoint {
    pub line: i64,
    pub index: i64,
    pub chain: usize,
}

/// A set S of lattice points split into k chains, with the data needed to audit it.
#[derive(Clone, Debug)]
pub struct KPaths {
    pub k: u64,
    pub j: Rational,
    pub j_bar: Rational,
    pub orientation: Orientation,
    /// Extra lines added on either side of the connecting path.
    pub widen: u32,
    pub points: Vec<ChainPoint>,
    /// Σ min(l_i, k) over the integer lines.
    pub greene_sum: u64,
    /// Points of the untouched outer lines not covered (zero unless widened).
    pub missing_outer: usize,
    profile: SideProfile,
    swap_back: bool,
}

impl KPaths {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    fn coords(&self, p: &ChainPoint) -> (Rational, Rational) {
        let (x, y) = (&self.profile.x, &self.profile.y);
        let (jj, ii) = (int(p.line), int(p.index));
        (&jj * &x.h + &ii * &y.h, &jj * &x.v + &ii * &y.v)
    }

    /// Points of each chain, sorted.
    pub fn chains(&self) -> Vec<Vec<(Rational, Rational)>> {
        let mut out = vec![Vec::new(); self.k as usize];
        for p in &self.points {
            out[p.chain].push(self.coords(p));
        }
        for c in &mut out {
            c.sort();
        }
        out
    }

    /// Every chain is increasing and every point lies in [0, n]².
    pub fn certificate_holds(&self) -> bool {
        let n = &self.profile.n;
        let zero = Rational::from_integer(0.into());
        let inside = self.points.iter().all(|p| {
            let (a, b) = self.coords(p);
            a >= zero && &a <= n && b >= zero && &b <= n
        });
        inside
            && self.chains().iter().all(|c| c.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1))
    }

    /// Points of S that are permutation points (1 ≤ x ≤ n, 0 ≤ y < n in the original frame).
    pub fn permutation_point_count(&self) -> usize {
        let n = &self.profile.n;
        let one = int(1);
        let zero = int(0);
        self.points
            .iter()
            .filter(|p| {
                let (a, b) = self.coords(p);
                let (x, y) = if self.swap_back { (b, a) } else { (a, b) };
                x >= one && &x <= n && y >= zero && &y < n
            })
            .count()
    }
}

fn to_i64(r: &num_bigint::BigInt) -> i64 {
    r.to_i64().expect("line index fits in i64")
}

/// Union of k increasing paths through the crossing lines of the row profile.
pub fn construct_k_paths(frame: &RescaledFrame, k: u64) -> Result<KPaths> {
    let prof = crossing_profile(frame).rows;
    if k == 0 || k > prof.l_j0() {
        return domain(format!("k = {k} is outside 1..=l_J₀ = {}", prof.l_j0()));
    }
    let top = prof.top.clone();
    let ja = prof.jk(k);
    let jb = &top - prof.jk_prime(k);
    let (j, orientation) = if ja >= jb { (ja, Orientation::Lower) } else { (jb, Orientation::Upper) };
    let j_bar = &top - &j;
    let range = |jj: &Rational| {
        let (lo, hi) = prof.index_range(jj);
        (to_i64(&lo), to_i64(&hi))
    };
    let cj = to_i64(&ceil(&j));
    let fjb = to_i64(&floor(&j_bar));
    let last = to_i64(&floor(&top));
    let (a0, b0, sg) = match orientation {
        Orientation::Lower => (range(&j).0, range(&j_bar).0, 1),
        Orientation::Upper => (range(&j).1, range(&j_bar).1, -1),
    };
    let (x1, x2, y1) = (&prof.x.h, &prof.x.v, &prof.y.h);
    let cmin = -to_i64(&floor(&(x1 / y1)));
    let cmax = to_i64(&floor(&(x2 / -&prof.y.v)));
    let c = b0 - a0;
    let (mut s, mut e) = (cj, fjb);
    let mut widen = 0;
    while !((e - s) * cmin <= c && c <= (e - s) * cmax) {
        widen += 1;
        if widen > WIDEN_CAP {
            return domain(format!("no increasing connecting path for k = {k}"));
        }
        if widen % 2 == 1 {
            e += 1;
        } else {
            s -= 1;
        }
    }
    let idx = |line: i64, m: i64| -> i64 {
        if line <= s {
            a0 + sg * m
        } else if line >= e {
            b0 + sg * m
        } else {
            // integer division truncates toward zero
            a0 + c * (line - s) / (e - s) + sg * m
        }
    };
    let mut owner: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for m in 0..k as i64 {
        for line in 1..=last {
            let i = idx(line, m);
            let (lo, hi) = range(&int(line));
            if lo <= i && i <= hi {
                owner.insert((line, i), m as usize);
            }
        }
    }
    let outer: Vec<i64> = match orientation {
        Orientation::Lower => (1..cj).chain(fjb + 3..=last).collect(),
        Orientation::Upper => (1..cj - 2).chain(fjb + 1..=last).collect(),
    };
    let missing_outer = outer
        .into_iter()
        .map(|line| {
            let (lo, hi) = range(&int(line));
            (lo..=hi).filter(|&i| !owner.contains_key(&(line, i))).count()
        })
        .sum();
    let points = owner.into_iter().map(|((line, index), chain)| ChainPoint { line, index, chain }).collect();
    let greene_sum = prof.greene_sum(k);
    Ok(KPaths {
        k,
        j,
        j_bar,
        orientation,
        widen,
        points,
        greene_sum,
        missing_outer,
        swap_back: frame.case_tag.major() == 2,
        profile: prof,
    })
}
