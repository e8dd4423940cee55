use num_traits::Signed;

use super::distance::{boundary_distance, DistanceReport};
use super::frame::{rescaled_frame, FrameOutcome, RescaledFrame, TrivialShape};
use super::prediction::ShapePrediction;
use super::profile::crossing_profile;
use crate::error::Result;
use crate::lattice::CaseTag;
use crate::numeric::{int, to_f64, AlphaSpec, Rational};
use crate::schensted::{shape, Partition};
use crate::sosperm::{sos_permutation, sos_permutation_ratio};

/// Largest n for which the crossing-count checks are run.
pub const DEEP_LIMIT: u64 = 5000;

/// Bound on the sampled boundary distance.
pub const DISTANCE_BOUND: u64 = 8;

/// Everything verified at one (n, α).
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub n: u64,
    pub alpha: String,
    pub shape: Partition,
    pub arm: usize,
    pub leg: usize,
    pub trivial: Option<TrivialShape>,
    pub detail: Option<Box<Detail>>,
    /// Human-readable descriptions of every bound that failed.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Detail {
    pub frame: RescaledFrame,
    pub prediction: ShapePrediction,
    pub distance: DistanceReport,
    pub max_row_dev: f64,
    pub max_col_dev: f64,
    /// Whether the Greene, linear-count and corner checks ran.
    pub deep: bool,
}

impl Evaluation {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn case_tag(&self) -> Option<CaseTag> {
        self.detail.as_ref().map(|d| d.frame.case_tag)
    }
}

fn max_dev(values: &[usize], est: impl Fn(u64) -> Option<super::prediction::Estimate>, what: &str, out: &mut Vec<String>) -> f64 {
    let mut worst = 0.0f64;
    for (i, &v) in values.iter().enumerate() {
        let k = i as u64 + 1;
        let Some(e) = est(k) else { break };
        let v = int(v as u64);
        worst = worst.max(to_f64(&(&v - &e.center).abs()));
        if !e.admits(&v) {
            out.push(format!("{what}_{k} = {v} outside {} ± {}", e.center, e.radius));
        }
    }
    worst
}

fn deep_checks(frame: &RescaledFrame, pred: &ShapePrediction, lambda: &Partition, out: &mut Vec<String>) {
    let prof = crossing_profile(frame);
    let sums = lambda.prefix_sums();
    let n = frame.n as usize;
    for k in 1..=prof.rows.l_j0() {
        let ik = sums.get(k as usize - 1).copied().unwrap_or(n) as u64;
        let s = prof.rows.greene_sum(k);
        if ik + 3 < s || ik > s {
            out.push(format!("I_{k} = {ik} outside [{}, {s}]", s.saturating_sub(3)));
        }
        let lin = prof.rows.lin(k);
        if (lambda.part(k as usize) as i64 - lin).abs() > 3 {
            out.push(format!("λ_{k} = {} far from lin({k}) = {lin}", lambda.part(k as usize)));
        }
    }
    let one = int(1);
    let (x0, y0) = &pred.corner;
    let lc = int(prof.cols.l_j0());
    let lr = int(prof.rows.l_j0());
    if (x0 - &lc).abs() > one || (y0 - &lr).abs() > one {
        out.push(format!("corner ({x0}, {y0}) far from ({lc}, {lr})"));
    }
}

/// Shape of w(n, α) checked against every prediction.
pub fn evaluate(n: u64, alpha: &AlphaSpec) -> Result<Evaluation> {
    let outcome = rescaled_frame(n, alpha)?;
    let frame = match outcome {
        FrameOutcome::Trivial(t) => {
            let lambda = shape(&sos_permutation(n as usize, alpha)?);
            let (arm, leg) = (lambda.part(1), lambda.len());
            let mut violations = Vec::new();
            let want = match t {
                TrivialShape::Identity => (n as usize, 1),
                TrivialShape::Reverse => (1, n as usize),
            };
            if (arm, leg) != want {
                violations.push(format!("trivial shape {t:?} expected, got {lambda}"));
            }
            return Ok(Evaluation { n, alpha: alpha.label().to_string(), shape: lambda, arm, leg, trivial: Some(t), detail: None, violations });
        }
        FrameOutcome::Frame(f) => *f,
    };
    let w = sos_permutation_ratio(n as usize, &frame.a, &frame.big_n);
    let lambda = shape(&w);
    let conj = lambda.conjugate();
    let (arm, leg) = (lambda.part(1), lambda.len());
    let pred = ShapePrediction::from_frame(&frame);
    let mut violations = Vec::new();
    if frame.determinant() != frame.n_rat() {
        violations.push(format!("x₂y₁ − x₁y₂ = {} ≠ n", frame.determinant()));
    }
    let (arm_q, leg_q): (Rational, Rational) = (int(arm as u64), int(leg as u64));
    if !pred.arm_bounds.contains(&arm_q) {
        violations.push(format!("arm {arm} outside {}", pred.arm_bounds));
    }
    if !pred.leg_bounds.contains(&leg_q) {
        violations.push(format!("leg {leg} outside {}", pred.leg_bounds));
    }
    let max_row_dev = max_dev(lambda.rows(), |k| pred.row_estimate(k), "λ", &mut violations);
    let max_col_dev = max_dev(conj.rows(), |k| pred.col_estimate(k), "λ′", &mut violations);
    let distance = boundary_distance(&lambda, &pred);
    if !distance.below(DISTANCE_BOUND) {
        violations.push(format!("boundary distance {:.4} at x = {}", distance.max, distance.argmax));
    }
    let deep = n <= DEEP_LIMIT;
    if deep {
        deep_checks(&frame, &pred, &lambda, &mut violations);
    }
    Ok(Evaluation {
        n,
        alpha: alpha.label().to_string(),
        shape: lambda,
        arm,
        leg,
        trivial: None,
        detail: Some(Box::new(Detail { frame, prediction: pred, distance, max_row_dev, max_col_dev, deep })),
        violations,
    })
}
