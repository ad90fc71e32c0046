use overtwist::lifting::{lower_bound_g, lower_g_bimodal, DegreeOneLift, MonotoneLift, SigmaConjugacy};
use overtwist::pwlmap::BimodalAnatomy;
use overtwist::rational::{int, one, ratio, split_integer, zero, Rational};
use overtwist::rotation::MapAnatomy;
use overtwist::sample::random_bimodal_map;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bimodal(seed: u64) -> (BimodalAnatomy, DegreeOneLift) {
    let f = random_bimodal_map(&mut ChaCha8Rng::seed_from_u64(seed));
    let MapAnatomy::Bimodal(an) = MapAnatomy::detect(&f).unwrap() else {
        panic!("sampled map is not bimodal: {f}")
    };
    let lift = MapAnatomy::Bimodal(an.clone()).lift();
    (an, lift)
}

fn grid(n: i64) -> impl Iterator<Item = Rational> {
    (0..=n).map(move |k| ratio(k, n))
}

// knots of G, piece ends and midpoints of F, in [0, 1)
fn probe_points(lift: &DegreeOneLift, g: &MonotoneLift) -> Vec<Rational> {
    let mut xs: Vec<Rational> = g.knots().map(|(x, _)| x.clone()).collect();
    for p in lift.pieces() {
        xs.push(p.t0.clone());
        xs.push(p.t1.clone());
        xs.push((&p.t0 + &p.t1) / int(2));
    }
    xs.retain(|x| x < &one());
    xs.sort();
    xs.dedup();
    xs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_is_an_involution(a in 1i64..99, k in 0i64..=200) {
        let s = SigmaConjugacy::new(ratio(a, 100));
        let x = ratio(k, 200);
        prop_assert_eq!(s.apply(&s.apply(&x)), x);
    }

    #[test]
    fn lift_has_degree_one(seed in any::<u64>()) {
        let (_, lift) = bimodal(seed);
        for x in grid(97) {
            for k in -2..3 {
                let shifted = &x + int(k);
                prop_assert_eq!(lift.eval_right(&shifted), lift.eval_right(&x) + int(k));
                prop_assert_eq!(lift.eval_left(&shifted), lift.eval_left(&x) + int(k));
            }
        }
    }

    #[test]
    fn lift_maps_unit_interval_into_zero_two(seed in any::<u64>()) {
        let (_, lift) = bimodal(seed);
        for p in lift.pieces() {
            for v in [&p.v0, &p.v1] {
                prop_assert!(v >= &zero() && v <= &int(2), "value {} out of range", v);
            }
        }
    }

    #[test]
    fn jumps_land_on_fixed_point_levels(seed in any::<u64>()) {
        let (an, lift) = bimodal(seed);
        let on_level = |v: &Rational| {
            let (_, frac) = split_integer(v);
            frac == zero() || frac == an.a
        };
        for (t, left, right) in lift.jumps() {
            prop_assert!(on_level(&left) || on_level(&right), "jump at {} from {} to {}", t, left, right);
        }
    }

    #[test]
    fn lower_map_is_below_lift(seed in any::<u64>()) {
        let (an, lift) = bimodal(seed);
        let low = lower_g_bimodal(&an, &lift).unwrap();
        for x in probe_points(&lift, &low.g) {
            let g = low.g.eval(&x);
            prop_assert!(g <= lift.eval_right(&x) && g <= lift.eval_left(&x), "x = {}", x);
            prop_assert_eq!(low.g.eval(&(&x + one())), g + one());
        }
        let ys: Vec<&Rational> = low.g.knots().map(|(_, y)| y).collect();
        prop_assert!(ys.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn lower_map_equals_lift_off_collapse(seed in any::<u64>()) {
        let (an, lift) = bimodal(seed);
        let low = lower_g_bimodal(&an, &lift).unwrap();
        for x in probe_points(&lift, &low.g) {
            let inside = low.collapsed.iter().any(|(u, w)| &x > u && &x < w);
            let edge = low.collapsed.iter().any(|(u, w)| &x == u || &x == w);
            if !inside && !edge && lift.ambiguous().binary_search(&x).is_err() {
                prop_assert_eq!(low.g.eval(&x), lift.eval_right(&x), "x = {}", x);
            }
        }
    }

    #[test]
    fn landmark_formula_is_the_infimum(seed in any::<u64>()) {
        let (an, lift) = bimodal(seed);
        prop_assert_eq!(lower_g_bimodal(&an, &lift).unwrap().g, lower_bound_g(&lift).unwrap());
    }

    #[test]
    fn iterates_stay_ordered(seed in any::<u64>(), xs in prop::collection::vec((0i64..1000, 1i64..1000), 5)) {
        let (an, lift) = bimodal(seed);
        let g = lower_g_bimodal(&an, &lift).unwrap().g;
        for (num, den) in xs {
            let x0 = ratio(num, den);
            let (mut gx, mut fx) = (x0.clone(), x0);
            for n in 1..=20 {
                gx = g.eval(&gx);
                fx = lift.eval_right(&fx);
                prop_assert!(gx <= fx, "n = {}", n);
            }
        }
    }
}
