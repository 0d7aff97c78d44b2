//! The flip-transport intersection pairing against the independent
//! continued-fraction oracle on the once-marked torus.

mod common;

use arcrigid::arcs::intersection_number;
use arcrigid::farey::{slope_arc, torus_base, Slope};

#[test]
fn intersections_match_the_continued_fraction_oracle_small() {
    let base = torus_base();
    let slopes = common::slope_census(5);
    for &x in &slopes {
        for &y in &slopes {
            let expected = common::farey_arc_intersection(x, y);
            let a = slope_arc(&base, Slope::new(x.0, x.1));
            let b = slope_arc(&base, Slope::new(y.0, y.1));
            assert_eq!(
                intersection_number(&a, &b).unwrap(),
                expected,
                "i({}/{}, {}/{})",
                x.0,
                x.1,
                y.0,
                y.1
            );
        }
    }
}

#[test]
fn oracle_differs_from_the_determinant_by_one_on_distinct_slopes() {
    let slopes = common::slope_census(6);
    for &(p, q) in &slopes {
        for &(r, s) in &slopes {
            let det = (p * s - q * r).abs() as u64;
            let oracle = common::farey_arc_intersection((p, q), (r, s));
            if det == 0 {
                assert_eq!(oracle, 0, "same slope");
            } else {
                assert_eq!(oracle + 1, det, "{p}/{q} vs {r}/{s}");
            }
        }
    }
}

#[test]
fn transport_profiles_follow_the_oracle_across_a_flip() {
    // Flipping the 1/1 edge of the base produces {0/1, 1/0, -1/1}; every
    // transported coordinate must equal the oracle value against -1/1.
    let base = torus_base();
    for &(p, q) in &common::slope_census(4) {
        let s = Slope::new(p, q);
        if s == Slope::new(1, 1) {
            continue;
        }
        let arc = slope_arc(&base, s);
        let moved = arc.transport(2).unwrap();
        if s == Slope::new(-1, 1) {
            // The arc is the new diagonal itself.
            assert_eq!(moved.sentinel_edge(), Some(2));
            continue;
        }
        let against_new_edge = common::farey_arc_intersection((p, q), (-1, 1));
        assert_eq!(
            moved.coords()[2],
            against_new_edge as i64,
            "slope {p}/{q} against -1/1"
        );
        // Sentinels stay put on the untouched edges.
        assert_eq!(arc.coords()[0], moved.coords()[0]);
        assert_eq!(arc.coords()[1], moved.coords()[1]);
    }
}

#[test]
fn farey_edges_are_exactly_the_disjoint_pairs() {
    let base = torus_base();
    for &x in &common::slope_census(4) {
        for &y in &common::slope_census(4) {
            let sx = Slope::new(x.0, x.1);
            let sy = Slope::new(y.0, y.1);
            if sx == sy {
                continue;
            }
            let disjoint =
                intersection_number(&slope_arc(&base, sx), &slope_arc(&base, sy)).unwrap() == 0;
            assert_eq!(disjoint, sx.det(sy) == 1, "{sx} vs {sy}");
        }
    }
}
