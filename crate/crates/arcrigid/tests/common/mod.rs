//! Independent oracles shared by the integration suites.
//!
//! Nothing here calls into the crate's flip-transport machinery; the values
//! come from classical routes (continued fractions, hand-derived tables) so
//! the main implementation can be checked against them.

#![allow(dead_code)]

/// Geometric intersection number of two slope arcs on the once-marked torus,
/// computed by continued-fraction reduction.
///
/// A slope is a primitive integer vector `(p, q)` up to sign, with `(1, 0)`
/// the vertical arc. Intersection numbers are invariant under the integer
/// shear and rotation generators, so the pair is reduced by the Euclidean
/// algorithm until the first slope is vertical; a vertical arc and the arc of
/// `r/s` then meet `|s| - 1` times in their interiors (the segment from the
/// origin to `(s, r)` crosses the interior vertical lattice lines
/// `x = 1..|s|-1` exactly once each).
pub fn farey_arc_intersection(x: (i64, i64), y: (i64, i64)) -> u64 {
    let (mut x, mut y) = (x, y);
    assert!(x != (0, 0) && y != (0, 0));
    if same_slope(x, y) {
        return 0;
    }
    // Reduce x to the vertical slope, dragging y through the same mapping
    // classes.
    while x.1 != 0 {
        if x.0 != 0 {
            let k = x.0.div_euclid(x.1.abs()) * x.1.signum();
            // Shear: (p, q) -> (p - k q, q).
            x = (x.0 - k * x.1, x.1);
            y = (y.0 - k * y.1, y.1);
        }
        // Quarter turn: (p, q) -> (-q, p).
        x = (-x.1, x.0);
        y = (-y.1, y.0);
    }
    (y.1.abs() - 1) as u64
}

fn same_slope(a: (i64, i64), b: (i64, i64)) -> bool {
    // Primitive vectors represent the same slope when proportional.
    a.0 * b.1 - a.1 * b.0 == 0
}

/// All reduced slopes `p/q` with `1 <= q <= max_den` and `|p| <= q`, plus the
/// vertical slope. About 66 slopes for `max_den = 10`, giving the roughly
/// four thousand ordered pairs the determinant sweep runs over.
pub fn slope_census(max_den: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(1, 0)];
    for q in 1..=max_den {
        for p in -q..=q {
            if gcd(p.unsigned_abs(), q as u64) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// The six arcs of the thrice-marked sphere and their pairwise geometric
/// intersection numbers, hand-derived from the disc-with-two-holes picture:
/// the three simple arcs joining distinct marked points are pairwise
/// disjoint; the loop at a marked point separating the other two meets the
/// arc joining those two points once and the arcs at its own point not at
/// all; two loops at distinct points always meet twice.
pub mod sphere3 {
    /// Arc names: `A12, A13, A23` join marked points, `L1, L2, L3` are the
    /// loops (indexed by their base point).
    #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
    pub enum Arc {
        A12,
        A13,
        A23,
        L1,
        L2,
        L3,
    }

    pub const ALL: [Arc; 6] = [Arc::A12, Arc::A13, Arc::A23, Arc::L1, Arc::L2, Arc::L3];

    pub fn intersection(a: Arc, b: Arc) -> u64 {
        use Arc::*;
        if a == b {
            return 0;
        }
        match (a.min(b), a.max(b)) {
            // Point-to-point arcs are pairwise disjoint.
            (A12, A13) | (A12, A23) | (A13, A23) => 0,
            // A loop and the arc at its base point are disjoint.
            (A12, L1) | (A12, L2) => 0,
            (A13, L1) | (A13, L3) => 0,
            (A23, L2) | (A23, L3) => 0,
            // A loop meets the opposite arc once.
            (A23, L1) | (A13, L2) | (A12, L3) => 1,
            // Loops at distinct points meet twice.
            (L1, L2) | (L1, L3) | (L2, L3) => 2,
            _ => unreachable!(),
        }
    }

    /// The four triangulations (maximal disjoint systems).
    pub fn triangulations() -> Vec<[Arc; 3]> {
        use Arc::*;
        vec![
            [A12, A13, A23],
            [L1, A12, A13],
            [L2, A12, A23],
            [L3, A13, A23],
        ]
    }
}
