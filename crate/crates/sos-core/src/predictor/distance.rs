use num_traits::{ToPrimitive, Zero};

use super::prediction::ShapePrediction;
use crate::numeric::{floor, int, rat, to_f64, Rational};
use crate::schensted::Partition;

/// Largest sampled distance between the predicted boundary and ∂A_λ.
#[derive(Clone, Debug)]
pub struct DistanceReport {
    pub max_sq: Rational,
    pub max: f64,
    pub argmax: Rational,
    pub samples: usize,
}

impl DistanceReport {
    /// max < bound, decided exactly.
    pub fn below(&self, bound: u64) -> bool {
        self.max_sq < int(bound * bound)
    }
}

fn gap(p: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    if p < lo {
        lo - p
    } else if p > hi {
        p - hi
    } else {
        Rational::zero()
    }
}

fn gap_f(p: f64, lo: f64, hi: f64) -> f64 {
    if p < lo { lo - p } else if p > hi { p - hi } else { 0.0 }
}

/// Max over the sample grid of the distance from (x, L(x)) to the staircase of λ.
///
/// The grid holds the integers and half-integers of [0, end], every staircase
/// abscissa, x₀ and both endpoints.
pub fn boundary_distance(lambda: &Partition, pred: &ShapePrediction) -> DistanceReport {
    let verts = lambda.staircase();
    let verts: Vec<(usize, usize)> = if verts.is_empty() { vec![(0, 0)] } else { verts };
    // axis-aligned segments as (x_lo, x_hi, y_lo, y_hi)
    let mut segs: Vec<[usize; 4]> = verts
        .windows(2)
        .map(|w| [w[0].0.min(w[1].0), w[0].0.max(w[1].0), w[0].1.min(w[1].1), w[0].1.max(w[1].1)])
        .collect();
    if segs.is_empty() {
        segs.push([verts[0].0, verts[0].0, verts[0].1, verts[0].1]);
    }
    let segs_f: Vec<[f64; 4]> = segs.iter().map(|s| s.map(|v| v as f64)).collect();
    let segs_q: Vec<[Rational; 4]> = segs.iter().map(|s| s.map(|v| int(v as u64))).collect();

    let end = &pred.end;
    let mut grid: Vec<Rational> = Vec::new();
    let halves = floor(&(end * int(2))).to_u64().unwrap_or(0);
    grid.extend((0..=halves).map(|h| rat(h, 2)));
    grid.extend(lambda.rows().iter().map(|&r| int(r as u64)).filter(|x| x <= end));
    grid.push(pred.corner.0.clone());
    grid.push(end.clone());
    grid.sort();
    grid.dedup();

    let mut best: Option<(Rational, Rational)> = None;
    for x in &grid {
        let y = pred.boundary(x).expect("grid lies in the domain");
        let (xf, yf) = (to_f64(x), to_f64(&y));
        let dist_f: Vec<f64> = segs_f
            .iter()
            .map(|s| {
                let (dx, dy) = (gap_f(xf, s[0], s[1]), gap_f(yf, s[2], s[3]));
                dx * dx + dy * dy
            })
            .collect();
        let min_f = dist_f.iter().cloned().fold(f64::INFINITY, f64::min);
        let slack = min_f * 1e-9 + 1e-9;
        let exact = segs_q
            .iter()
            .zip(&dist_f)
            .filter(|(_, &d)| d <= min_f + slack)
            .map(|(s, _)| {
                let (dx, dy) = (gap(x, &s[0], &s[1]), gap(&y, &s[2], &s[3]));
                &dx * &dx + &dy * &dy
            })
            .min()
            .expect("at least one segment");
        if best.as_ref().is_none_or(|(m, _)| &exact > m) {
            best = Some((exact, x.clone()));
        }
    }
    let (max_sq, argmax) = best.expect("grid is never empty");
    DistanceReport { max: to_f64(&max_sq).sqrt(), max_sq, argmax, samples: grid.len() }
}
