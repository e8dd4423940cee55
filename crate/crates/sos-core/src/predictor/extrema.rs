use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::numeric::{convergent_table, int, to_f64, AlphaSpec, Decimal, Need};
use crate::schensted::arm_leg;
use crate::sosperm::sos_permutation;

/// Limiting extrema of arm/√n and leg/√n near n ≈ β_{2h} and β_{2h+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedExtrema {
    /// M⁺ = 1/(q_{2h}√δ_{2h}).
    pub arm_max: Decimal,
    /// m⁻ = 2q_{2h}√δ_{2h}.
    pub leg_min: Decimal,
    /// m⁺ = 2q_{2h+1}√δ_{2h+1}.
    pub arm_min: Decimal,
    /// M⁻ = 1/(q_{2h+1}√δ_{2h+1}).
    pub leg_max: Decimal,
}

pub fn normalized_extrema(alpha: &AlphaSpec, h: usize, digits: u32) -> Result<NormalizedExtrema> {
    let t = convergent_table(alpha, &Need::Depth(2 * h + 1));
    let (Some(even), Some(odd)) = (t.row(2 * h), t.row(2 * h + 1)) else {
        return domain(format!("the expansion of {} ends before index {}", alpha.label(), 2 * h + 1));
    };
    if even.delta.is_zero() || odd.delta.is_zero() {
        return domain("δ vanishes at the requested index");
    }
    let sq = |q: &BigInt, d| int(q.clone()) * int(q.clone()) * d;
    let (e, o) = (sq(&even.q, &even.delta), sq(&odd.q, &odd.delta));
    Ok(NormalizedExtrema {
        arm_max: Decimal::sqrt(&e.recip(), digits),
        leg_min: Decimal::sqrt(&(int(4) * &e), digits),
        arm_min: Decimal::sqrt(&(int(4) * &o), digits),
        leg_max: Decimal::sqrt(&o.recip(), digits),
    })
}

/// arm(w(n, α))/√n and leg(w(n, α))/√n at one n.
#[derive(Clone, Debug, PartialEq)]
pub struct ArmLegSample {
    pub n: u64,
    pub arm: usize,
    pub leg: usize,
    pub arm_norm: f64,
    pub leg_norm: f64,
}

pub fn armleg_sample(n: u64, alpha: &AlphaSpec) -> Result<ArmLegSample> {
    let w = sos_permutation(n as usize, alpha)?;
    let (arm, leg) = arm_leg(&w);
    let r = (n as f64).sqrt();
    Ok(ArmLegSample { n, arm, leg, arm_norm: arm as f64 / r, leg_norm: leg as f64 / r })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    Arm,
    Leg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    Max,
    Min,
}

/// A strict local extremum of a normalized series over n = 2^e and the convergent it lands on.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremumMatch {
    pub series: Series,
    pub turn: Turn,
    pub exponent: u32,
    /// Index i of the matching β_i, if any.
    pub index: Option<usize>,
}

/// Interior strict local maxima and minima of a sequence.
pub fn local_extrema(values: &[f64]) -> Vec<(usize, Turn)> {
    (1..values.len().saturating_sub(1))
        .filter_map(|k| {
            let (a, b, c) = (values[k - 1], values[k], values[k + 1]);
            if b > a && b > c {
                Some((k, Turn::Max))
            } else if b < a && b < c {
                Some((k, Turn::Min))
            } else {
                None
            }
        })
        .collect()
}

/// log₂ β_i for every i with β_i ≤ 2^max_exp·4.
pub fn log2_betas(alpha: &AlphaSpec, max_exp: u32) -> Vec<(usize, f64)> {
    let bound = crate::numeric::rat(1, BigInt::from(1u64) << (max_exp + 2));
    let t = convergent_table(alpha, &Need::DeltaAtMost(bound));
    t.rows
        .iter()
        .filter(|r| !r.delta.is_zero())
        .map(|r| (r.index, -to_f64(&r.delta).log2()))
        .collect()
}

/// Match each extremum of the arm and leg series at n = 2^e, e ∈ exponents, to a β_i of the
/// expected parity: arm maxima and leg minima to even i, arm minima and leg maxima to odd i.
pub fn match_extrema(samples: &[ArmLegSample], exponents: &[u32], betas: &[(usize, f64)]) -> Vec<ExtremumMatch> {
    let mut out = Vec::new();
    for series in [Series::Arm, Series::Leg] {
        let vals: Vec<f64> = samples
            .iter()
            .map(|s| if series == Series::Arm { s.arm_norm } else { s.leg_norm })
            .collect();
        for (k, turn) in local_extrema(&vals) {
            let parity = match (series, turn) {
                (Series::Arm, Turn::Max) | (Series::Leg, Turn::Min) => 0,
                _ => 1,
            };
            let e = exponents[k];
            let index = betas
                .iter()
                .filter(|(i, _)| i % 2 == parity)
                .find(|(_, lb)| (lb.round() as i64 - e as i64).abs() <= 1)
                .map(|(i, _)| *i);
            out.push(ExtremumMatch { series, turn, exponent: e, index });
        }
    }
    out
}
