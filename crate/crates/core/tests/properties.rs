use proptest::prelude::*;

use bdmmn::decomposition::{generating_set, Decomposition};
use bdmmn::generate::generate_random;
use bdmmn::svg::{render_svg, solution_options};
use bdmmn::verify::{verify_bidirected, verify_generating};
use bdmmn::{solve, Grid, Point, TerminalSet};

/// Arbitrary coordinates in general position, not just permutations.
fn scattered() -> impl Strategy<Value = TerminalSet> {
    (2usize..14)
        .prop_flat_map(|n| {
            (
                proptest::sample::subsequence((-60i64..60).collect::<Vec<_>>(), n).prop_shuffle(),
                proptest::sample::subsequence((-60i64..60).collect::<Vec<_>>(), n),
            )
        })
        .prop_map(|(xs, ys)| TerminalSet::new(xs.into_iter().zip(ys).map(|(x, y)| Point::new(x, y)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solve_is_feasible(t in scattered()) {
        let s = solve(&t).unwrap();
        prop_assert!(verify_bidirected(&s.network, &t).feasible);
        let f = generating_set(&t, &Decomposition::new(&t));
        prop_assert!(verify_generating(&s.network, &f, &t));
    }

    #[test]
    fn strip_boundaries_are_kept(t in scattered()) {
        let s = solve(&t).unwrap();
        for (e, o) in s.n_prime.arcs() {
            prop_assert_eq!(s.network.get(&e), Some(o));
        }
        for c in &s.completions {
            prop_assert!(c.dir_a.arcs().all(|(e, _)| c.dir_b.get(&e).is_none()));
            for (e, o) in c.n_local.arcs() {
                let kept = s.network.get(&e) == Some(o) || s.pruned.get(&e) == Some(o);
                prop_assert!(kept);
            }
        }
    }

    #[test]
    fn solve_is_deterministic(n in 2usize..40, seed in any::<u64>()) {
        let t = generate_random(n, seed);
        let (a, b) = (solve(&t).unwrap(), solve(&generate_random(n, seed)).unwrap());
        prop_assert_eq!(&a.network, &b.network);
        let dec = Decomposition::new(&t);
        prop_assert_eq!(
            render_svg(&a.network, &t, &solution_options(&t, &dec, &a)),
            render_svg(&b.network, &t, &solution_options(&t, &dec, &b))
        );
    }

    #[test]
    fn length_is_at_least_the_bounding_box_perimeter(t in scattered()) {
        // every extreme terminal must be reached and left, so the network
        // spans the bounding box in both directions twice
        let g = Grid::new(&t);
        let (xs, ys) = (g.xs(), g.ys());
        let perimeter = 2 * ((xs[xs.len() - 1] - xs[0]) + (ys[ys.len() - 1] - ys[0]));
        prop_assert!(solve(&t).unwrap().length(&g) >= perimeter);
    }
}
