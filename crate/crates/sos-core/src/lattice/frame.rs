use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::vector::LatticeVector;
use crate::error::{domain, Error, Result};
use crate::numeric::{floor, int, simple_rows, Rational, SimpleRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    OneA,
    OneB,
    TwoA,
    TwoB,
}

impl CaseTag {
    /// 1 or 2.
    pub fn major(self) -> u8 {
        match self {
            CaseTag::OneA | CaseTag::OneB => 1,
            CaseTag::TwoA | CaseTag::TwoB => 2,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::OneA => "1a",
            CaseTag::OneB => "1b",
            CaseTag::TwoA => "2a",
            CaseTag::TwoB => "2b",
        };
        f.write_str(s)
    }
}

/// The unit vectors bracketing slopes ±τ and the basis x = c − d, y = b − a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeFrame {
    pub tau: Rational,
    pub a_vec: LatticeVector,
    pub b_vec: LatticeVector,
    pub c_vec: LatticeVector,
    pub d_vec: LatticeVector,
    pub x_vec: LatticeVector,
    pub y_vec: LatticeVector,
    pub case_tag: CaseTag,
    pub s: BigInt,
}

impl SlopeFrame {
    /// Whether the stored (case, s) reproduces a, b, c, d from x and y.
    pub fn relations_hold(&self) -> bool {
        relations(self.case_tag, &self.x_vec, &self.y_vec, &self.s)
            .map(|(a, b, c, d)| a == self.a_vec && b == self.b_vec && c == self.c_vec && d == self.d_vec)
            .unwrap_or(false)
    }

    /// m_a ≥ τ > m_b and m_c > −τ ≥ m_d.
    pub fn brackets_hold(&self) -> bool {
        use std::cmp::Ordering::*;
        let t = &self.tau;
        let nt = -t.clone();
        self.a_vec.cmp_slope(t) != Less
            && self.b_vec.cmp_slope(t) == Less
            && self.c_vec.cmp_slope(&nt) == Greater
            && self.d_vec.cmp_slope(&nt) != Greater
    }
}

/// (a, b, c, d) in terms of x, y and s for a case of the short-basis relations.
pub fn relations(
    case: CaseTag,
    x: &LatticeVector,
    y: &LatticeVector,
    s: &BigInt,
) -> Option<(LatticeVector, LatticeVector, LatticeVector, LatticeVector)> {
    let s = int(s.clone());
    let s1 = &s - int(1);
    Some(match case {
        CaseTag::OneA => (x - &y.scale(&s), x - &y.scale(&s1), y + x, y.clone()),
        CaseTag::OneB => (x - y, x.clone(), y + &x.scale(&s), y + &x.scale(&s1)),
        CaseTag::TwoA => (x + &y.scale(&s1), x + &y.scale(&s), y.clone(), y - x),
        CaseTag::TwoB => (x.clone(), y + x, y - &x.scale(&s1), y - &x.scale(&s)),
    })
}

/// ⟨|t|, ±r⟩ of a simple row, oriented to have h ≥ 0.
fn oriented(row_t: &BigInt, row_r: &BigInt) -> LatticeVector {
    if row_t.is_negative() {
        LatticeVector::int(-row_t.clone(), -row_r.clone())
    } else {
        LatticeVector::int(row_t.clone(), row_r.clone())
    }
}

/// First unit vector of a parity class with |slope| < τ, and its predecessor in the fan.
fn bracket(rows: &[SimpleRow], quotients: &[BigInt], tau: &Rational, parity: i64, start: LatticeVector, n: &BigInt) -> (LatticeVector, LatticeVector) {
    // rows[k] holds block index k − 1
    let row = |i: i64| &rows[(i + 1) as usize];
    let last = rows.len() as i64 - 2;
    let mut i = parity;
    while i <= last {
        let (r2, t2) = (&row(i - 2).r, row(i - 2).t.abs());
        let (r1, t1) = (&row(i - 1).r, row(i - 1).t.abs());
        let bound = (int(r2.clone()) - tau * int(t2.clone())) / (int(r1.clone()) + tau * int(t1.clone()));
        let j: BigInt = (floor(&bound) + BigInt::one()).max(BigInt::one());
        let size = &quotients[(i - 1) as usize];
        if &j <= size {
            let at = |j: &BigInt| oriented(&(&row(i - 2).t - j * &row(i - 1).t), &(&row(i - 2).r - j * &row(i - 1).r));
            let prev = if j.is_one() {
                if i - 2 < 0 { start.clone() } else { oriented(&row(i - 2).t, &row(i - 2).r) }
            } else {
                at(&(&j - 1))
            };
            return (prev, at(&j));
        }
        i += 2;
    }
    let prev = if last >= 1 && (last - 1) % 2 == parity % 2 {
        oriented(&row(last - 1).t, &row(last - 1).r)
    } else {
        oriented(&row(last - 2).t, &row(last - 2).r)
    };
    (prev, LatticeVector::int(n.clone(), 0))
}

/// Frame of L_{a,b} at slope τ ≥ 1, located block by block in the Euclidean trace.
pub fn slope_frame(a: &BigInt, b: &BigInt, tau: &Rational) -> Result<SlopeFrame> {
    if tau < &Rational::one() {
        return domain(format!("slope frames are defined for τ ≥ 1, got {tau}"));
    }
    let (rows, quotients) = simple_rows(a, b)?;
    let (a_vec, b_vec) = if int(a.clone()) < *tau {
        (LatticeVector::int(0, b.clone()), LatticeVector::int(1, a.clone()))
    } else {
        bracket(&rows, &quotients, tau, 2, LatticeVector::int(0, b.clone()), b)
    };
    let (d_vec, c_vec) = bracket(&rows, &quotients, tau, 1, LatticeVector::int(0, -b.clone()), b);
    let x_vec = &c_vec - &d_vec;
    let y_vec = &b_vec - &a_vec;
    let case_one = y_vec.cmp_slope(&-tau.clone()) != std::cmp::Ordering::Greater;
    let candidates: &[CaseTag] = if case_one { &[CaseTag::OneA, CaseTag::OneB] } else { &[CaseTag::TwoA, CaseTag::TwoB] };
    let mut found: Vec<(CaseTag, BigInt)> = Vec::new();
    for &case in candidates {
        let s = match case {
            CaseTag::OneA => (&x_vec.h - &a_vec.h) / &y_vec.h,
            CaseTag::OneB => (&c_vec.h - &y_vec.h) / &x_vec.h,
            CaseTag::TwoA => (&b_vec.h - &x_vec.h) / &y_vec.h,
            CaseTag::TwoB => (&y_vec.h - &d_vec.h) / &x_vec.h,
        };
        if !s.is_integer() {
            continue;
        }
        let s = s.to_integer();
        if !s.is_positive() {
            continue;
        }
        if let Some((ra, rb, rc, rd)) = relations(case, &x_vec, &y_vec, &s) {
            if ra == a_vec && rb == b_vec && rc == c_vec && rd == d_vec {
                found.push((case, s));
            }
        }
    }
    let (case_tag, s) = match found.len() {
        0 => {
            return Err(Error::Domain(format!(
                "degenerate frame for {a}/{b} at τ = {tau}: no relation holds with s ≥ 1"
            )))
        }
        1 => found.remove(0),
        _ => {
            // both sub-cases coincide at s = 1; the shorter of x, y decides
            let y_short = y_vec.norm_sq_tau(tau) <= x_vec.norm_sq_tau(tau);
            let want = match (case_one, y_short) {
                (true, true) => CaseTag::OneA,
                (true, false) => CaseTag::OneB,
                (false, true) => CaseTag::TwoA,
                (false, false) => CaseTag::TwoB,
            };
            found.into_iter().find(|(c, _)| *c == want).expect("both sub-cases present")
        }
    };
    Ok(SlopeFrame { tau: tau.clone(), a_vec, b_vec, c_vec, d_vec, x_vec, y_vec, case_tag, s })
}

/// Reference implementation scanning the whole extended fan.
pub fn slope_frame_scan(u_ext: &[LatticeVector], v_ext: &[LatticeVector], tau: &Rational) -> (LatticeVector, LatticeVector, LatticeVector, LatticeVector) {
    use std::cmp::Ordering::Less;
    let bi = u_ext.iter().position(|u| u.cmp_slope(tau) == Less).expect("⟨b,0⟩ closes the fan");
    let nt = -tau.clone();
    let ci = v_ext.iter().position(|v| v.cmp_slope(&nt) == std::cmp::Ordering::Greater).expect("⟨b,0⟩ closes the fan");
    (u_ext[bi - 1].clone(), u_ext[bi].clone(), v_ext[ci].clone(), v_ext[ci - 1].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Rho,
    Omega,
}

/// ρ: (x, y) ↦ (⟨−y₂, y₁⟩, ⟨x₂, −x₁⟩); ω: (x, y) ↦ (⟨y₁, −y₂⟩, ⟨x₁, −x₂⟩).
pub fn apply_symmetry(x: &LatticeVector, y: &LatticeVector, map: Symmetry) -> (LatticeVector, LatticeVector) {
    match map {
        Symmetry::Rho => (
            LatticeVector::new(-y.v.clone(), y.h.clone()),
            LatticeVector::new(x.v.clone(), -x.h.clone()),
        ),
        Symmetry::Omega => (
            LatticeVector::new(y.h.clone(), -y.v.clone()),
            LatticeVector::new(x.h.clone(), -x.v.clone()),
        ),
    }
}

fn ceil_div(num: &Rational, den: &Rational) -> BigInt {
    (num / den).ceil().to_integer()
}

/// Cases among the four inequality strings (slopes relative to ±1) satisfied by a
/// rescaled basis pair, each with its minimal s ≥ 1.
pub fn classify_rescaled(x: &LatticeVector, y: &LatticeVector) -> Vec<(CaseTag, BigInt)> {
    use std::cmp::Ordering::*;
    let one = Rational::one();
    let neg = -Rational::one();
    let zero = Rational::zero();
    let le = |v: &LatticeVector, m: &Rational| v.cmp_slope(m) != Greater;
    let ge = |v: &LatticeVector, m: &Rational| v.cmp_slope(m) != Less;
    let lt = |v: &LatticeVector, m: &Rational| v.cmp_slope(m) == Less;
    let gt = |v: &LatticeVector, m: &Rational| v.cmp_slope(m) == Greater;
    let (x1, x2, y1, y2) = (&x.h, &x.v, &y.h, &y.v);
    let mut out = Vec::new();
    let at_least_one = |b: BigInt| b.max(BigInt::one());

    // (5) m_y ≤ −1 ≤ m_{y+x} < 0 < m_x ≤ 1 ≤ m_{x−sy}
    if !(y1 - y2).is_zero() {
        let s = at_least_one(ceil_div(&(x1 - x2), &(y1 - y2)));
        let xs = x - &y.scale(&int(s.clone()));
        let yx = y + x;
        if le(y, &neg) && ge(&yx, &neg) && lt(&yx, &zero) && gt(x, &zero) && le(x, &one) && ge(&xs, &one) {
            out.push((CaseTag::OneA, s));
        }
    }
    // (6) m_y ≤ −1 ≤ m_{y+sx} < 0 < m_x ≤ 1 ≤ m_{x−y}
    if !(x1 + x2).is_zero() {
        let s = at_least_one(ceil_div(&-(y1 + y2), &(x1 + x2)));
        let ys = y + &x.scale(&int(s.clone()));
        let xy = x - y;
        if le(y, &neg) && ge(&ys, &neg) && lt(&ys, &zero) && gt(x, &zero) && le(x, &one) && ge(&xy, &one) {
            out.push((CaseTag::OneB, s));
        }
    }
    // (7) m_{y−x} ≤ −1 ≤ m_y < 0 < m_{x+sy} ≤ 1 ≤ m_x
    if !(y1 - y2).is_zero() {
        let s = at_least_one(ceil_div(&(x2 - x1), &(y1 - y2)));
        let xs = x + &y.scale(&int(s.clone()));
        let yx = y - x;
        if le(&yx, &neg) && ge(y, &neg) && lt(y, &zero) && gt(&xs, &zero) && le(&xs, &one) && ge(x, &one) {
            out.push((CaseTag::TwoA, s));
        }
    }
    // (8) m_{y−sx} ≤ −1 ≤ m_y < 0 < m_{y+x} ≤ 1 ≤ m_x
    if !(x1 + x2).is_zero() {
        let s = at_least_one(ceil_div(&(y1 + y2), &(x1 + x2)));
        let ys = y - &x.scale(&int(s.clone()));
        let yx = y + x;
        if le(&ys, &neg) && ge(y, &neg) && lt(y, &zero) && gt(&yx, &zero) && le(&yx, &one) && ge(x, &one) {
            out.push((CaseTag::TwoB, s));
        }
    }
    out
}
