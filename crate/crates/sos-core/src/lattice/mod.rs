//! The lattice L_{a,b}, its unit vectors, lengths and slope frames.

mod fan;
mod frame;
mod vector;

pub use fan::{
    box_points, lattice_csv, lattice_length, lattice_length_oracle, shadow, unit_vectors, unit_vectors_cached,
    UnitVectorFan, ORACLE_CAP,
};
pub use frame::{apply_symmetry, classify_rescaled, relations, slope_frame, slope_frame_scan, CaseTag, SlopeFrame, Symmetry};
pub use vector::{det, LatticeVector};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use rand::{Rng, SeedableRng};

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn v(h: i64, v: i64) -> LatticeVector {
        LatticeVector::int(h, v)
    }

    #[test]
    fn fan_of_51_71() {
        let f = unit_vectors(&big(51), &big(71)).unwrap();
        assert_eq!(f.u, vec![v(1, 51), v(2, 31), v(3, 11), v(7, 2), v(39, 1)]);
        assert_eq!(f.v, vec![v(1, -20), v(4, -9), v(11, -7), v(18, -5), v(25, -3), v(32, -1)]);
    }

    #[test]
    fn fan_of_one_over_n() {
        let f = unit_vectors(&big(1), &big(9)).unwrap();
        assert_eq!(f.u, vec![v(1, 1)]);
        assert_eq!(f.v, (1..=8).map(|k| v(k, -(9 - k))).collect::<Vec<_>>());
    }

    #[test]
    fn lengths_at_known_points() {
        let l = |a, b, x, y| lattice_length(&big(a), &big(b), &big(x), &big(y)).unwrap();
        assert_eq!(l(51, 71, 0, 0), (0, 1));
        assert_eq!(l(51, 71, 0, 71).0, 1);
        assert_eq!(l(51, 71, 0, 71).1, 0);
        assert_eq!(l(51, 71, 71, 71).0, 13);
        assert_eq!(l(51, 71, 71, 0).1, 9);
        assert_eq!(l(51, 71, 37, 41), (7, 4));
        // (30,39) is 6 increasing steps: ⟨1,51⟩ never fits below it
        assert_eq!(l(51, 71, 30, 39), (6, 4));
        assert!(lattice_length(&big(51), &big(71), &big(1), &big(1)).is_err());
    }

    #[test]
    fn lengths_agree_with_oracle_on_51_71() {
        let oracle = lattice_length_oracle(51, 71).unwrap();
        for ((x, y), want) in oracle {
            assert_eq!(lattice_length(&big(51), &big(71), &big(x), &big(y)).unwrap(), want, "({x},{y})");
        }
    }

    #[test]
    fn lengths_agree_with_oracle_on_random_moduli() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..12 {
            let b: i64 = rng.gen_range(2..=120);
            let a = loop {
                let a = rng.gen_range(1..b);
                if a.gcd(&b) == 1 {
                    break a;
                }
            };
            for ((x, y), want) in lattice_length_oracle(a, b).unwrap() {
                assert_eq!(lattice_length(&big(a), &big(b), &big(x), &big(y)).unwrap(), want, "{a}/{b} ({x},{y})");
            }
        }
    }

    #[test]
    fn unit_vectors_have_empty_shadows() {
        for (a, b) in [(51, 71), (37, 41), (5, 13), (1, 7)] {
            let f = unit_vectors(&big(a), &big(b)).unwrap();
            let mut units: Vec<(i64, i64)> = f
                .extended_u()
                .iter()
                .chain(f.extended_v().iter())
                .map(|e| (e.h.to_integer().try_into().unwrap(), e.v.to_integer().try_into().unwrap()))
                .collect();
            units.sort_unstable();
            units.dedup();
            let mut empty = Vec::new();
            for x in 0..=b {
                for y in -b..=b {
                    if (x, y) != (0, 0) && (a * x - y).rem_euclid(b) == 0 && shadow(a, b, (x, y)).is_empty() {
                        empty.push((x, y));
                    }
                }
            }
            assert_eq!(units, empty, "{a}/{b}");
        }
    }

    #[test]
    fn frame_of_51_71_at_one() {
        let f = slope_frame(&big(51), &big(71), &int(1)).unwrap();
        assert_eq!((f.a_vec.clone(), f.b_vec.clone()), (v(3, 11), v(7, 2)));
        assert_eq!((f.c_vec.clone(), f.d_vec.clone()), (v(11, -7), v(4, -9)));
        assert_eq!((f.x_vec.clone(), f.y_vec.clone()), (v(7, 2), v(4, -9)));
        assert_eq!((f.case_tag, f.s.clone()), (CaseTag::OneB, big(1)));
        assert!(f.relations_hold() && f.brackets_hold());
    }

    #[test]
    fn frame_of_25_211() {
        let f = slope_frame(&big(25), &big(211), &rat(211, 210)).unwrap();
        assert_eq!((f.x_vec.clone(), f.y_vec.clone()), (v(17, 3), v(8, -11)));
        assert!(f.relations_hold() && f.brackets_hold());
    }

    #[test]
    fn frame_matches_fan_scan() {
        for (a, b) in [(51, 71), (37, 41), (1, 9), (1, 40), (5, 13), (25, 211), (13, 89), (21, 34)] {
            let fan = unit_vectors(&big(a), &big(b)).unwrap();
            for tau in [rat(1, 1), rat(3, 2), rat(5, 1), rat(b, 7), rat(b, 2)] {
                let (ea, eb, ec, ed) = slope_frame_scan(&fan.extended_u(), &fan.extended_v(), &tau);
                match slope_frame(&big(a), &big(b), &tau) {
                    Ok(f) => {
                        assert_eq!((f.a_vec.clone(), f.b_vec.clone(), f.c_vec.clone(), f.d_vec.clone()), (ea, eb, ec, ed), "{a}/{b} τ={tau}");
                        assert!(f.relations_hold() && f.brackets_hold());
                    }
                    Err(e) => assert!(matches!(e, crate::Error::Domain(_)), "{a}/{b} τ={tau}: {e}"),
                }
            }
        }
    }

    #[test]
    fn degenerate_and_small_slopes_rejected() {
        assert!(slope_frame(&big(1), &big(2), &int(1)).is_err());
        assert!(slope_frame(&big(51), &big(71), &rat(1, 2)).is_err());
    }

    #[test]
    fn symmetries() {
        let (x, y) = (v(7, 2), v(4, -9));
        for m in [Symmetry::Rho, Symmetry::Omega] {
            let (x1, y1) = apply_symmetry(&x, &y, m);
            let back = apply_symmetry(&x1, &y1, m);
            if m == Symmetry::Omega {
                assert_eq!(back, (x.clone(), y.clone()));
            } else {
                let (x2, y2) = apply_symmetry(&back.0, &back.1, m);
                let again = apply_symmetry(&x2, &y2, m);
                assert_eq!(again, (x.clone(), y.clone()));
            }
        }
    }

    #[test]
    fn symmetry_maps_inequality_strings() {
        let f = slope_frame(&big(25), &big(211), &rat(211, 210)).unwrap();
        let k = rat(210, 211);
        let (x, y) = (f.x_vec.rescale_vertical(&k), f.y_vec.rescale_vertical(&k));
        let base: Vec<CaseTag> = classify_rescaled(&x, &y).into_iter().map(|c| c.0).collect();
        assert!(!base.is_empty());
        let mapped = |m| {
            let (a, b) = apply_symmetry(&x, &y, m);
            classify_rescaled(&a, &b).into_iter().map(|c| c.0).collect::<Vec<_>>()
        };
        for c in base {
            let (r, o) = match c {
                CaseTag::OneA => (CaseTag::OneB, CaseTag::TwoB),
                CaseTag::TwoA => (CaseTag::TwoB, CaseTag::OneB),
                CaseTag::OneB => (CaseTag::OneA, CaseTag::TwoA),
                CaseTag::TwoB => (CaseTag::TwoA, CaseTag::OneA),
            };
            assert!(mapped(Symmetry::Rho).contains(&r), "{c} under ρ");
            assert!(mapped(Symmetry::Omega).contains(&o), "{c} under ω");
        }
    }
}
