use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::vector::{det, LatticeVector};
use crate::error::{domain, Error, Result};
use crate::numeric::{int, slow_euclid};

/// Largest modulus accepted by [`lattice_length_oracle`].
pub const ORACLE_CAP: i64 = 500;

/// Unit vectors of L_{a,b}: U by decreasing slope, V by increasing slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitVectorFan {
    pub b: BigInt,
    pub u: Vec<LatticeVector>,
    pub v: Vec<LatticeVector>,
}

impl UnitVectorFan {
    /// ⟨0, b⟩, U, ⟨b, 0⟩.
    pub fn extended_u(&self) -> Vec<LatticeVector> {
        let mut out = vec![LatticeVector::int(0, self.b.clone())];
        out.extend(self.u.iter().cloned());
        out.push(LatticeVector::int(self.b.clone(), 0));
        out
    }

    /// ⟨0, −b⟩, V, ⟨b, 0⟩.
    pub fn extended_v(&self) -> Vec<LatticeVector> {
        let mut out = vec![LatticeVector::int(0, -self.b.clone())];
        out.extend(self.v.iter().cloned());
        out.push(LatticeVector::int(self.b.clone(), 0));
        out
    }
}

/// U and V read off the slow Euclidean trace: ⟨t, r⟩ for t > 0 and ⟨−t, −r⟩ for t < 0, r > 0.
pub fn unit_vectors(a: &BigInt, b: &BigInt) -> Result<UnitVectorFan> {
    let trace = slow_euclid(a, b)?;
    let mut u = Vec::new();
    let mut v = Vec::new();
    for row in &trace.rows {
        if !row.r.is_positive() {
            continue;
        }
        if row.t.is_positive() {
            u.push(LatticeVector::int(row.t.clone(), row.r.clone()));
        } else if row.t.is_negative() {
            v.push(LatticeVector::int(-row.t.clone(), -row.r.clone()));
        }
    }
    Ok(UnitVectorFan { b: b.clone(), u, v })
}

type FanCache = RwLock<HashMap<(BigInt, BigInt), Arc<UnitVectorFan>>>;

/// Memoized [`unit_vectors`]; concurrent readers share one fan per (a, b).
pub fn unit_vectors_cached(a: &BigInt, b: &BigInt) -> Result<Arc<UnitVectorFan>> {
    static CACHE: OnceLock<FanCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (a.clone(), b.clone());
    if let Some(f) = cache.read().expect("fan cache").get(&key) {
        return Ok(f.clone());
    }
    let fan = Arc::new(unit_vectors(a, b)?);
    cache.write().expect("fan cache").entry(key).or_insert_with(|| fan.clone());
    Ok(fan)
}

/// Sign of m_e − m_p for vectors with h ≥ 0.
fn cmp_slopes(e: &LatticeVector, p: &LatticeVector) -> Ordering {
    (&e.v * &p.h).cmp(&(&p.v * &e.h))
}

/// Number of fan steps in the nonnegative decomposition of p over the bracketing pair.
fn fan_length(fan: &[LatticeVector], p: &LatticeVector, descending: bool) -> Result<u64> {
    if p.is_zero() {
        return Ok(0);
    }
    let k = fan.partition_point(|e| {
        let c = cmp_slopes(e, p);
        if descending { c == Ordering::Greater } else { c == Ordering::Less }
    });
    let e2 = fan.get(k).ok_or_else(|| Error::Domain(format!("{p} lies outside the fan")))?;
    let (c, d) = if cmp_slopes(e2, p) == Ordering::Equal {
        let c = if e2.h.is_zero() { &p.v / &e2.v } else { &p.h / &e2.h };
        (c, int(0))
    } else {
        let e1 = &fan[k - 1];
        let dt = det(e1, e2);
        (det(p, e2) / &dt, det(e1, p) / &dt)
    };
    if !c.is_integer() || !d.is_integer() || c.is_negative() || d.is_negative() {
        return domain(format!("{p} has no nonnegative decomposition"));
    }
    (c + d).to_integer().to_u64().ok_or_else(|| Error::Resource("length overflow".into()))
}

fn check_point(a: &BigInt, b: &BigInt, x: &BigInt, y: &BigInt) -> Result<()> {
    if x.is_negative() || y.is_negative() || x > b || y > b || !(a * x - y).is_multiple_of(b) {
        return domain(format!("({x},{y}) is not a point of L_{{{a},{b}}} in [0,{b}]²"));
    }
    Ok(())
}

/// (ℓ⁺⟨x, y⟩, ℓ⁻⟨x, y − b⟩) for a point of L_{a,b} in [0, b]².
pub fn lattice_length(a: &BigInt, b: &BigInt, x: &BigInt, y: &BigInt) -> Result<(u64, u64)> {
    check_point(a, b, x, y)?;
    let fan = unit_vectors_cached(a, b)?;
    let up = fan_length(&fan.extended_u(), &LatticeVector::int(x.clone(), y.clone()), true)?;
    let down = fan_length(&fan.extended_v(), &LatticeVector::int(x.clone(), y - b), false)?;
    Ok((up, down))
}

/// The points of L_{a,b} in [0, b]², sorted by x then y.
pub fn box_points(a: i64, b: i64) -> Vec<(i64, i64)> {
    let mut pts = vec![(0, 0), (0, b), (b, 0), (b, b)];
    pts.extend((1..b).map(|x| (x, a * x % b)));
    pts.sort_unstable();
    pts
}

/// Longest increasing and decreasing walks from the origin, by dynamic programming over
/// the box points using only the definition of increasing and decreasing steps.
pub fn lattice_length_oracle(a: i64, b: i64) -> Result<BTreeMap<(i64, i64), (u64, u64)>> {
    if b > ORACLE_CAP {
        return Err(Error::Resource(format!("lattice oracle is limited to b ≤ {ORACLE_CAP}")));
    }
    if a < 1 || a >= b || a.gcd(&b) != 1 {
        return domain(format!("need coprime 1 ≤ a < b, got ({a},{b})"));
    }
    let pts = box_points(a, b);
    // predecessors of a point come earlier in the given order
    let longest = |pts: &[(i64, i64)], below: fn(i64, i64) -> bool| -> Vec<u64> {
        let mut best = vec![0u64; pts.len()];
        for j in 1..pts.len() {
            let (xj, yj) = pts[j];
            best[j] = (0..j)
                .filter(|&i| pts[i].0 <= xj && below(pts[i].1, yj))
                .map(|i| best[i] + 1)
                .max()
                .unwrap_or(0);
        }
        best
    };
    let up = longest(&pts, |yi, yj| yi <= yj);
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by_key(|&i| (pts[i].0, b - pts[i].1));
    let shifted: Vec<(i64, i64)> = order.iter().map(|&i| (pts[i].0, pts[i].1 - b)).collect();
    let down_sorted = longest(&shifted, |yi, yj| yi >= yj);
    let mut down = vec![0; pts.len()];
    for (pos, &i) in order.iter().enumerate() {
        down[i] = down_sorted[pos];
    }
    Ok(pts.iter().enumerate().map(|(i, &p)| (p, (up[i], down[i]))).collect())
}

/// Lattice points other than 0 and p in the closed box spanned by p.
pub fn shadow(a: i64, b: i64, p: (i64, i64)) -> Vec<(i64, i64)> {
    let (h, v) = p;
    let (lo, hi) = if v >= 0 { (0, v) } else { (v, 0) };
    let mut out = Vec::new();
    for x in 0..=h {
        let base = a * x % b;
        let mut y = lo + (base - lo).rem_euclid(b);
        while y <= hi {
            if (x, y) != (0, 0) && (x, y) != (h, v) {
                out.push((x, y));
            }
            y += b;
        }
    }
    out
}

/// CSV rows x,y,ell_plus,ell_minus for every box point.
pub fn lattice_csv(a: i64, b: i64) -> Result<String> {
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let mut out = String::from("x,y,ell_plus,ell_minus\n");
    for (x, y) in box_points(a, b) {
        let (up, down) = lattice_length(&ab, &bb, &BigInt::from(x), &BigInt::from(y))?;
        out.push_str(&format!("{x},{y},{up},{down}\n"));
    }
    Ok(out)
}
