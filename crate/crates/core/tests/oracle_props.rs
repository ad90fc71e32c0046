use overtwist::combinatorics::{orp_of_cycle, CyclicPattern};
use overtwist::oracle::{
    build_covering_graph, downset_violations, enumerate_cycles_upto, enumerate_loops, left_endpoint, min_mean_by_enumeration,
    min_mean_cycle, orp_inventory, OracleError, Small,
};
use overtwist::pwlmap::{p_linear_from_pattern, p_linear_orbit};
use overtwist::rational::Rational;
use overtwist::sample::{random_bimodal_pattern, random_convergent_pattern};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn convergent(seed: u64, n: usize) -> CyclicPattern {
    random_convergent_pattern(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn to_rational(x: &Small) -> Rational {
    Rational::new((*x.numer()).into(), (*x.denom()).into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    // arcs recomputed from the P-linear map on the real line
    #[test]
    fn arcs_match_interval_images(seed in any::<u64>(), n in 3usize..=12) {
        let pat = convergent(seed, n);
        let g = build_covering_graph(&pat).unwrap();
        let f = p_linear_from_pattern(&pat);
        let orbit = p_linear_orbit(&pat);
        // orbit coordinates j map to orbit[j - 1]; the fixed point lies between two of them
        let place = |x: &Small| {
            let k = x.floor().to_integer() as usize;
            let frac = to_rational(&(x - x.floor()));
            if k == n { orbit[n - 1].clone() } else { &orbit[k - 1] + (&orbit[k] - &orbit[k - 1]) * frac }
        };
        let mut count = 0;
        for (u, w) in &g.vertices {
            let (lo, hi) = f.image(&place(u), &place(w));
            for (i, (x, y)) in g.vertices.iter().enumerate() {
                if lo <= place(x) && place(y) <= hi {
                    count += 1;
                    let from = g.vertices.iter().position(|v| v == &(*u, *w)).unwrap();
                    prop_assert!(g.has_arc(from, i));
                }
            }
        }
        prop_assert_eq!(count, g.arcs.len());
    }

    #[test]
    fn karp_agrees_with_cycle_enumeration(seed in any::<u64>(), n in 2usize..=9) {
        let g = build_covering_graph(&convergent(seed, n)).unwrap();
        prop_assert_eq!(min_mean_cycle(&g).unwrap(), min_mean_by_enumeration(&g).unwrap());
    }

    #[test]
    fn karp_ignores_vertex_names(seed in any::<u64>(), n in 2usize..=12) {
        let g = build_covering_graph(&convergent(seed, n)).unwrap();
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        prop_assert_eq!(min_mean_cycle(&g).unwrap(), min_mean_cycle(&g.relabeled(&perm)).unwrap());
    }

    #[test]
    fn mean_is_flip_invariant(seed in any::<u64>(), n in 2usize..=12) {
        let pat = convergent(seed, n);
        prop_assert_eq!(left_endpoint(&pat).unwrap(), left_endpoint(&pat.flip()).unwrap());
    }
}

// ψ along a loop against χ of the orbit it resolves to, traversed L/period times
#[test]
fn loop_weight_matches_orbit_numerator() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..25 {
        let n = 2 + checked % 7;
        let pat = random_convergent_pattern(&mut rng, n);
        let g = build_covering_graph(&pat).unwrap();
        for l in enumerate_loops(&g, 8).unwrap() {
            if l.period < 2 {
                continue;
            }
            let orbit = CyclicPattern::from_orbit(&l.orbit[..l.period]).unwrap();
            let orp = orp_of_cycle(&orbit).unwrap();
            assert_eq!(l.psi as u64, orp.l * (l.walk.len() / l.period) as u64, "{pat} {:?}", l.walk);
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn cycle_numbers_sit_above_the_left_endpoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for i in 0..20 {
        let pat = random_bimodal_pattern(&mut rng, 3 + i % 8);
        let rho = left_endpoint(&pat).unwrap();
        for c in enumerate_cycles_upto(&pat, 8).unwrap() {
            assert!(c.orp.rho() >= rho, "{pat}: {} below {rho}", c.orp);
        }
    }
}

#[test]
fn small_inventories_are_down_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..12 {
        let pat = random_convergent_pattern(&mut rng, 2 + i % 7);
        let inv = orp_inventory(&enumerate_cycles_upto(&pat, 8).unwrap());
        assert!(downset_violations(&inv, 8).is_empty(), "{pat}");
    }
}

#[test]
fn loop_length_guard() {
    let g = build_covering_graph(&CyclicPattern::new(&[2, 3, 1]).unwrap()).unwrap();
    assert!(matches!(enumerate_loops(&g, 40), Err(OracleError::MaxPeriod { requested: 40, .. })));
}
