use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::frame::RescaledFrame;
use crate::lattice::LatticeVector;
use crate::numeric::{ceil, floor, int, Rational};

/// Crossing counts l_j for one canonical basis pair ⟨x₁,x₂⟩, ⟨y₁,y₂⟩ with y₂ < 0.
#[derive(Clone, Debug)]
pub struct SideProfile {
    pub n: Rational,
    pub x: LatticeVector,
    pub y: LatticeVector,
    /// J₀ = y₁y₂(x₁ − x₂)/(x₁y₂ + x₂y₁).
    pub j0: Rational,
    /// y₁ − y₂, the end of the j-domain.
    pub top: Rational,
}

/// l_j for the rows and l*_j for the columns.
#[derive(Clone, Debug)]
pub struct CrossingProfile {
    pub rows: SideProfile,
    pub cols: SideProfile,
}

/// Smallest u ≥ u0 with ⌊c1 + uA⌋ + ⌊c2 + uB⌋ ≥ K.
fn min_u(c1: &Rational, a: &Rational, c2: &Rational, b: &Rational, k: &Rational, u0: &Rational) -> Rational {
    let ms = (b * c1 + a * (k - c2)) / (a + b);
    let m0 = int(floor(&ms));
    let best = [m0.clone(), m0 + int(1)]
        .into_iter()
        .map(|m| {
            let u1 = (&m - c1) / a;
            let u2 = (k - &m - c2) / b;
            u1.max(u2)
        })
        .min()
        .expect("two candidates");
    best.max(u0.clone())
}

impl SideProfile {
    pub fn new(x: LatticeVector, y: LatticeVector, n: Rational) -> Self {
        let (x1, x2, y1, y2) = (&x.h, &x.v, &y.h, &y.v);
        let j0 = y1 * y2 * (x1 - x2) / (x1 * y2 + x2 * y1);
        let top = y1 - y2;
        SideProfile { n, x, y, j0, top }
    }

    fn slopes(&self) -> (Rational, Rational) {
        (&self.x.h / &self.y.h, &self.x.v / -&self.y.v)
    }

    /// Integer range of i with f_j ∩ g_i inside [0, n]².
    pub fn index_range(&self, j: &Rational) -> (BigInt, BigInt) {
        let (x1, x2, y1) = (&self.x.h, &self.x.v, &self.y.h);
        let yy = -&self.y.v;
        let lo = (-(j * x1) / y1).max((j * x2 - &self.n) / &yy);
        let hi = ((&self.n - j * x1) / y1).min(j * x2 / &yy);
        (ceil(&lo), floor(&hi))
    }

    /// |χ_j|.
    pub fn lj(&self, j: &Rational) -> u64 {
        let (lo, hi) = self.index_range(j);
        let c: BigInt = hi - lo + BigInt::from(1);
        if c.is_positive() { c.to_u64().expect("count fits") } else { 0 }
    }

    /// j_k: the least j with l_j ≥ k.
    pub fn jk(&self, k: u64) -> Rational {
        if k <= 1 {
            return Rational::zero();
        }
        let (a, b) = self.slopes();
        let z = Rational::zero();
        min_u(&z, &a, &z, &b, &int(k - 1), &z)
    }

    /// j_k′: the largest j with l_j ≥ k.
    pub fn jk_prime(&self, k: u64) -> Rational {
        let (a, b) = self.slopes();
        let c = &self.x.v - &self.x.h;
        let u = min_u(&c, &a, &-c.clone(), &b, &int(k.saturating_sub(1)), &Rational::zero());
        &self.top - u
    }

    /// ⌊j_k′⌋ − ⌈j_k⌉ + 1.
    pub fn lin(&self, k: u64) -> i64 {
        (floor(&self.jk_prime(k)) - ceil(&self.jk(k)) + BigInt::from(1)).to_i64().expect("lin fits")
    }

    pub fn l_j0(&self) -> u64 {
        self.lj(&self.j0)
    }

    /// Σ_{i=1}^{⌊top⌋} min(l_i, k).
    pub fn greene_sum(&self, k: u64) -> u64 {
        let last = floor(&self.top).to_i64().unwrap_or(0);
        (1..=last).map(|i| self.lj(&int(i)).min(k)).sum()
    }

    /// The three-regime linear estimate of l_j.
    pub fn regime_estimate(&self, j: &Rational) -> Rational {
        let (y1, y2) = (&self.y.h, &self.y.v);
        let prod = (y1 * y2).abs();
        if j <= y1 {
            j * &self.n / prod
        } else if j <= &-y2.clone() {
            &self.n / y2.abs()
        } else {
            &self.n * (&self.top - j) / prod
        }
    }
}

pub fn crossing_profile(frame: &RescaledFrame) -> CrossingProfile {
    let n = frame.n_rat();
    let (xr, yr) = frame.rows_pair();
    let (xc, yc) = frame.cols_pair();
    CrossingProfile { rows: SideProfile::new(xr, yr, n.clone()), cols: SideProfile::new(xc, yc, n) }
}
