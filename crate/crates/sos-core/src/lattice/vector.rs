use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::numeric::{int, Rational};

/// ⟨h, v⟩ with exact coordinates; h is integral in L_{a,b} and stays exact under
/// the vertical rescaling and the coordinate swaps of ρ and ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    pub h: Rational,
    pub v: Rational,
}

impl LatticeVector {
    pub fn new(h: Rational, v: Rational) -> Self {
        LatticeVector { h, v }
    }

    pub fn int(h: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        LatticeVector { h: int(h), v: int(v) }
    }

    pub fn zero() -> Self {
        LatticeVector { h: Rational::zero(), v: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.v.is_zero()
    }

    /// v/h, `None` for a vertical vector.
    pub fn slope(&self) -> Option<Rational> {
        (!self.h.is_zero()).then(|| &self.v / &self.h)
    }

    /// Compares v/h with m, treating a vertical vector as ±∞ by the sign of v.
    pub fn cmp_slope(&self, m: &Rational) -> Ordering {
        match self.slope() {
            Some(s) => s.cmp(m),
            None if self.v.is_positive() => Ordering::Greater,
            None => Ordering::Less,
        }
    }

    pub fn is_increasing(&self) -> bool {
        !self.h.is_negative() && !self.v.is_negative() && !self.is_zero()
    }

    pub fn is_decreasing(&self) -> bool {
        !self.h.is_negative() && !self.v.is_positive() && !self.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        LatticeVector { h: &self.h * k, v: &self.v * k }
    }

    pub fn times(&self, k: i64) -> Self {
        self.scale(&int(k))
    }

    /// Entrywise product with ⟨1, k⟩.
    pub fn rescale_vertical(&self, k: &Rational) -> Self {
        LatticeVector { h: self.h.clone(), v: &self.v * k }
    }

    /// h²·τ² + v², the squared length after dividing the vertical axis by τ (scaled by τ²).
    pub fn norm_sq_tau(&self, tau: &Rational) -> Rational {
        &self.h * &self.h * tau * tau + &self.v * &self.v
    }

    pub fn is_integral(&self) -> bool {
        self.h.is_integer() && self.v.is_integer()
    }
}

/// Determinant h₁v₂ − v₁h₂.
pub fn det(x: &LatticeVector, y: &LatticeVector) -> Rational {
    &x.h * &y.v - &x.v * &y.h
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: &LatticeVector) -> LatticeVector {
        LatticeVector { h: &self.h + &o.h, v: &self.v + &o.v }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: &LatticeVector) -> LatticeVector {
        LatticeVector { h: &self.h - &o.h, v: &self.v - &o.v }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector { h: -&self.h, v: -&self.v }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{},{}⟩", self.h, self.v)
    }
}
