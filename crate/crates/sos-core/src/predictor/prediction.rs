use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::frame::{rescaled_frame, FrameOutcome, RescaledFrame, TrivialShape};
use crate::error::Result;
use crate::numeric::{floor, int, AlphaSpec, Rational};

/// Half-open interval (lo, hi].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo < v && v <= &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

/// center ± radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Estimate {
    pub center: Rational,
    pub radius: Rational,
}

impl Estimate {
    /// |v − center| < radius.
    pub fn admits(&self, v: &Rational) -> bool {
        (v - &self.center).abs() < self.radius
    }
}

/// y = intercept + slope·x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub intercept: Rational,
    pub slope: Rational,
}

impl Line {
    pub fn at(&self, x: &Rational) -> Rational {
        &self.intercept + &self.slope * x
    }
}

/// Predicted arm, leg, row and column lengths and the two-slope boundary.
#[derive(Clone, Debug)]
pub struct ShapePrediction {
    pub n: u64,
    pub arm_bounds: Interval,
    pub leg_bounds: Interval,
    /// Valid on [0, x₀].
    pub first: Line,
    /// Valid on [x₀, end].
    pub second: Line,
    pub corner: (Rational, Rational),
    pub end: Rational,
    /// 2|y₁y₂|/n and 2x₁x₂/n.
    row_rate: Rational,
    col_rate: Rational,
}

#[derive(Clone, Debug)]
pub enum Prediction {
    Shape(Box<ShapePrediction>),
    Trivial(TrivialShape),
}

impl ShapePrediction {
    pub fn from_frame(frame: &RescaledFrame) -> Self {
        let (x1, x2, y1, y2) = frame.coords();
        let n = frame.n_rat();
        let arm = &y1 - &y2;
        let leg = &x1 + &x2;
        let two = int(2);
        let row_rate = &two * (&y1 * &y2).abs() / &n;
        let col_rate = &two * &x1 * &x2 / &n;
        let den = &x1 * &y2 + &x2 * &y1;
        let x0 = &n * (&y1 + &y2) / &den;
        let y0 = &n * (&x2 - &x1) / &den;
        ShapePrediction {
            n: frame.n,
            arm_bounds: Interval { lo: &arm - &two, hi: arm.clone() },
            leg_bounds: Interval { lo: &leg - &two, hi: leg.clone() },
            first: Line { intercept: leg, slope: -col_rate.clone() },
            second: Line { intercept: &arm / &row_rate, slope: -row_rate.recip() },
            corner: (x0, y0),
            end: arm,
            row_rate,
            col_rate,
        }
    }

    /// L(x) on [0, end].
    pub fn boundary(&self, x: &Rational) -> Option<Rational> {
        if x.is_negative() || x > &self.end {
            return None;
        }
        Some(if x <= &self.corner.0 { self.first.at(x) } else { self.second.at(x) })
    }

    /// The slopes of the two pieces of L.
    pub fn slopes(&self) -> (Rational, Rational) {
        (self.first.slope.clone(), self.second.slope.clone())
    }

    /// Largest k covered by the row estimate (k ≤ y₀ − 1).
    pub fn row_limit(&self) -> u64 {
        limit(&self.corner.1)
    }

    /// Largest k covered by the column estimate (k ≤ x₀ − 1).
    pub fn col_limit(&self) -> u64 {
        limit(&self.corner.0)
    }

    /// Estimate of λ_k; `None` outside the range the theorem covers.
    pub fn row_estimate(&self, k: u64) -> Option<Estimate> {
        (k >= 1 && k <= self.row_limit()).then(|| Estimate {
            center: &self.arm_bounds.hi - int(k) * &self.row_rate,
            radius: int(4) + &self.row_rate,
        })
    }

    /// Estimate of λ′_k; `None` outside the range the theorem covers.
    pub fn col_estimate(&self, k: u64) -> Option<Estimate> {
        (k >= 1 && k <= self.col_limit()).then(|| Estimate {
            center: &self.leg_bounds.hi - int(k) * &self.col_rate,
            radius: int(4) + &self.col_rate,
        })
    }
}

fn limit(c: &Rational) -> u64 {
    let f: BigInt = floor(&(c - int(1)));
    if f.is_positive() { f.to_u64().unwrap_or(u64::MAX) } else { 0 }
}

pub fn shape_prediction(n: u64, alpha: &AlphaSpec) -> Result<Prediction> {
    Ok(match rescaled_frame(n, alpha)? {
        FrameOutcome::Frame(f) => Prediction::Shape(Box::new(ShapePrediction::from_frame(&f))),
        FrameOutcome::Trivial(t) => Prediction::Trivial(t),
    })
}

impl Prediction {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Prediction::Trivial(_))
    }
}
