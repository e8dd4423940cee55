//! Shape predictions for Sós permutations from the rescaled slope frame.

mod construct;
mod distance;
mod evaluate;
mod extrema;
mod frame;
mod lsvk;
mod prediction;
mod profile;

pub use construct::{construct_k_paths, ChainPoint, KPaths, Orientation, WIDEN_CAP};
pub use distance::{boundary_distance, DistanceReport};
pub use evaluate::{evaluate, Detail, Evaluation, DEEP_LIMIT, DISTANCE_BOUND};
pub use extrema::{
    armleg_sample, local_extrema, log2_betas, match_extrema, normalized_extrema, ArmLegSample, ExtremumMatch,
    NormalizedExtrema, Series, Turn,
};
pub use frame::{permutation_points, rescaled_frame, FrameOutcome, RescaledFrame, TrivialShape};
pub use lsvk::lsvk_curve;
pub use prediction::{shape_prediction, Estimate, Interval, Line, Prediction, ShapePrediction};
pub use profile::{crossing_profile, CrossingProfile, SideProfile};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, AlphaSpec, Decimal};
    use crate::schensted::shape;
    use crate::sosperm::sos_permutation;
    use num_integer::Integer;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};

    fn frame_of(n: u64, alpha: &AlphaSpec) -> RescaledFrame {
        rescaled_frame(n, alpha).unwrap().frame().unwrap()
    }

    fn ex_210() -> RescaledFrame {
        frame_of(210, &AlphaSpec::from_ratio(25, 211).unwrap())
    }

    /// Random rational frames with 2 ≤ n < N and both trivial cases excluded.
    fn random_frames(seed: u64, count: usize, max_n: i64) -> Vec<RescaledFrame> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        while out.len() < count {
            let big: i64 = rng.gen_range(30..=max_n);
            let a = rng.gen_range(1..big);
            if a.gcd(&big) != 1 {
                continue;
            }
            let n = rng.gen_range(2..big);
            if n * a <= big || n * (big - a) <= big {
                continue;
            }
            out.push(frame_of(n as u64, &AlphaSpec::from_ratio(a, big).unwrap()));
        }
        out
    }

    #[test]
    fn frame_25_211() {
        let f = ex_210();
        assert_eq!(f.x_vec, crate::lattice::LatticeVector::new(int(17), rat(630, 211)));
        assert_eq!(f.y_vec, crate::lattice::LatticeVector::new(int(8), rat(-2310, 211)));
        assert_eq!(f.determinant(), int(210));
    }

    #[test]
    fn frame_for_e_at_4700() {
        let f = frame_of(4700, &AlphaSpec::e());
        assert_eq!(f.proxy.min_index, 7);
        assert_eq!((f.h, f.star, f.case_tag.major()), (3, 0, 2));
        assert_eq!(f.y_vec.h, int(71));
        assert_eq!(f.x_vec.h, int(39));
        assert_eq!(f.determinant(), int(4700));
    }

    #[test]
    fn trivial_inputs() {
        let e = AlphaSpec::e();
        assert!(matches!(rescaled_frame(3, &e).unwrap(), FrameOutcome::Trivial(TrivialShape::Reverse)));
        let tenth = AlphaSpec::from_ratio(1, 10).unwrap();
        assert!(matches!(rescaled_frame(9, &tenth).unwrap(), FrameOutcome::Trivial(TrivialShape::Identity)));
        assert!(shape_prediction(9, &tenth).unwrap().is_trivial());
        assert!(rescaled_frame(300, &AlphaSpec::from_ratio(51, 71).unwrap()).is_err());
    }

    #[test]
    fn random_frames_are_consistent() {
        for f in random_frames(11, 150, 3000) {
            assert_eq!(f.determinant(), f.n_rat());
            let q = |i: usize| int(AlphaSpec::from_ratio(f.a.clone(), f.big_n.clone()).unwrap().convergent(i).unwrap().1);
            assert_eq!(f.y_vec.h, q(2 * f.h + 1));
            assert_eq!(f.x_vec.h, q(2 * f.h + f.star as usize), "{}/{} n={}", f.a, f.big_n, f.n);
            assert!(f.slope.relations_hold());
        }
    }

    #[test]
    fn boundary_for_25_211() {
        let p = ShapePrediction::from_frame(&ex_210());
        assert_eq!((p.first.intercept.clone(), p.first.slope.clone()), (rat(4217, 211), rat(-102, 211)));
        assert_eq!((p.second.intercept.clone(), p.second.slope.clone()), (rat(1999, 88), rat(-211, 176)));
        assert_eq!(p.corner.0, rat(622, 163));
        assert_eq!(p.end, rat(3998, 211));
        assert_eq!(p.first.at(&p.corner.0), p.corner.1);
        assert_eq!(p.second.at(&p.corner.0), p.corner.1);
        assert_eq!(p.boundary(&p.end), Some(int(0)));
        assert_eq!(p.arm_bounds.hi, rat(3998, 211));
    }

    #[test]
    fn corner_on_both_lines_for_random_frames() {
        for f in random_frames(3, 200, 5000) {
            let p = ShapePrediction::from_frame(&f);
            assert_eq!(p.first.at(&p.corner.0), p.corner.1);
            assert_eq!(p.second.at(&p.corner.0), p.corner.1);
            assert!(p.first.slope < int(0) && p.second.slope < int(0));
        }
    }

    #[test]
    fn slopes_for_e_at_4700() {
        let Prediction::Shape(p) = shape_prediction(4700, &AlphaSpec::e()).unwrap() else { panic!() };
        let (s1, s2) = p.slopes();
        assert_eq!(Decimal::round(&-s1, 5).to_string(), "1.01332");
        assert_eq!(Decimal::round(&-s2, 5).to_string(), "3.53850");
    }

    #[test]
    fn crossing_counts_for_25_211() {
        let prof = crossing_profile(&ex_210()).rows;
        assert_eq!(prof.top, rat(3998, 211));
        assert_eq!(prof.lj(&int(0)), 1);
        let mut prev = prof.lj(&int(0));
        for t in 1..=1000 {
            let j = &prof.top * rat(t, 1000);
            let l = prof.lj(&j);
            assert!(l.abs_diff(prev) <= 2);
            prev = l;
        }
    }

    #[test]
    fn jk_is_the_first_crossing() {
        for f in random_frames(5, 60, 2000) {
            let prof = crossing_profile(&f).rows;
            let eps = rat(1, 1_000_000);
            for k in 1..=prof.l_j0() {
                let j = prof.jk(k);
                assert!(prof.lj(&j) >= k);
                if k > 1 {
                    assert!(prof.lj(&(&j - &eps)) < k);
                }
                let jp = prof.jk_prime(k);
                assert!(prof.lj(&jp) >= k);
                assert!(prof.lj(&(&jp + &eps)) < k || jp >= prof.top);
                assert!(k == 1 || prof.jk(k - 1) <= j);
            }
        }
    }

    #[test]
    fn crossing_symmetry_and_regimes() {
        for f in random_frames(9, 100, 2000) {
            let prof = crossing_profile(&f).rows;
            for t in 0..200 {
                let j = &prof.top * rat(t, 199);
                let l = int(prof.lj(&j));
                assert!((&l - prof.regime_estimate(&j)).abs() <= int(1));
                if j <= prof.y.h {
                    let mirror = int(prof.lj(&(&prof.top - &j)));
                    assert!((&l - mirror).abs() <= int(1));
                }
            }
        }
    }

    #[test]
    fn construction_for_25_211() {
        let f = ex_210();
        let lambda = shape(&sos_permutation(210, &AlphaSpec::from_ratio(25, 211).unwrap()).unwrap());
        let sums = lambda.prefix_sums();
        let top = crossing_profile(&f).rows.l_j0();
        assert!(top >= 9);
        for k in 1..=top {
            let s = construct_k_paths(&f, k).unwrap();
            assert!(s.certificate_holds());
            assert!(s.size() as u64 + 3 >= s.greene_sum);
            assert!(s.permutation_point_count() <= sums[k as usize - 1]);
        }
        assert!(construct_k_paths(&f, top + 1).is_err());
        assert_eq!(construct_k_paths(&f, 1).unwrap().chains().len(), 1);
    }

    #[test]
    fn distance_for_examples() {
        for (n, alpha) in [(210, AlphaSpec::from_ratio(25, 211).unwrap()), (4700, AlphaSpec::e())] {
            let ev = evaluate(n, &alpha).unwrap();
            assert!(ev.ok(), "{:?}", ev.violations);
            assert!(ev.detail.unwrap().distance.below(8));
        }
    }

    #[test]
    fn extrema_for_e() {
        let x = normalized_extrema(&AlphaSpec::e(), 3, 12).unwrap();
        assert_eq!(Decimal::round(&x.arm_max.to_rational(), 4).to_string(), "1.4049");
        assert_eq!(Decimal::round(&x.arm_min.to_rational(), 4).to_string(), "0.7518");
        let prod = x.arm_max.to_f64() * x.leg_min.to_f64();
        assert!((prod - 2.0).abs() < 1e-10);
        assert!((x.leg_max.to_f64() * x.arm_min.to_f64() - 2.0).abs() < 1e-10);
        assert!(normalized_extrema(&AlphaSpec::from_ratio(1, 2).unwrap(), 3, 12).is_err());
    }

    #[test]
    fn lsvk_points() {
        let c = lsvk_curve(5).unwrap();
        let t = 2.0 / std::f64::consts::PI;
        assert!((c[2].0 - t).abs() < 1e-12 && (c[2].1 - t).abs() < 1e-12);
        assert!((c[4].0 - 2.0).abs() < 1e-12 && c[4].1.abs() < 1e-12);
        for (p, q) in c.iter().zip(c.iter().rev()) {
            assert!((p.0 - q.1).abs() < 1e-12);
        }
        assert!(lsvk_curve(1).is_err());
    }

    #[test]
    fn local_extrema_of_a_zigzag() {
        let v = [1.0, 3.0, 2.0, 2.5, 2.5, 1.0];
        assert_eq!(local_extrema(&v), vec![(1, Turn::Max), (2, Turn::Min)]);
    }
}
