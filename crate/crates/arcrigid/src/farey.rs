//! Slopes on the once-marked torus and truncations of its arc complex.
//!
//! The arc complex of the once-marked torus is the flag complex of the Farey
//! graph: vertices are reduced rational slopes plus infinity, with an edge
//! where the determinant `|ps - qr|` is one. Distinct slope arcs meet
//! `|ps - qr| - 1` times, so the determinant-one pairs are exactly the
//! disjoint ones.

use std::sync::Arc as Shared;

use crate::arcs::ArcCoordinates;
use crate::complex::{enumerate_locally_injective_maps, FiniteComplex, SimplicialMap};
use crate::error::{ComplexError, ConstructionError};
use crate::surface::Surface;
use crate::triangulation::{base_triangulation, Triangulation};

/// A reduced slope `num/den` with `den > 0`, or `1/0` for infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope {
    pub num: i64,
    pub den: i64,
}

impl Slope {
    pub fn new(num: i64, den: i64) -> Slope {
        assert!(num != 0 || den != 0, "0/0 is not a slope");
        if den == 0 {
            return Slope { num: 1, den: 0 };
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Slope { num, den }
    }

    pub fn infinity() -> Slope {
        Slope { num: 1, den: 0 }
    }

    /// `|ps - qr|`.
    pub fn det(self, other: Slope) -> i64 {
        (self.num * other.den - self.den * other.num).abs()
    }

    /// Farey neighbors span an edge of the arc complex.
    pub fn is_neighbor(self, other: Slope) -> bool {
        self.det(other) == 1
    }

    /// Geometric intersection number of the two slope arcs.
    pub fn arc_intersection(self, other: Slope) -> u64 {
        if self == other {
            0
        } else {
            (self.det(other) - 1) as u64
        }
    }

    /// The two slopes completing the Farey edge `{self, other}` to triangles
    /// (the vertices of the two triangles adjacent to the edge).
    pub fn edge_completions(self, other: Slope) -> [Slope; 2] {
        debug_assert!(self.is_neighbor(other));
        [
            Slope::new(self.num + other.num, self.den + other.den),
            Slope::new(self.num - other.num, self.den - other.den),
        ]
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 0 {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Slopes of the edges of the base triangulation of the once-marked torus.
pub const BASE_SLOPES: [(i64, i64); 3] = [(0, 1), (1, 0), (1, 1)];

/// The base triangulation of the once-marked torus.
pub fn torus_base() -> Shared<Triangulation> {
    Shared::new(base_triangulation(Surface::new(1, 1).unwrap()).unwrap())
}

/// The arc of a slope in coordinates against the torus base.
pub fn slope_arc(base: &Shared<Triangulation>, s: Slope) -> ArcCoordinates {
    let coords: Vec<i64> = BASE_SLOPES
        .iter()
        .map(|&(p, q)| {
            let e = Slope::new(p, q);
            if e == s {
                -1
            } else {
                s.arc_intersection(e) as i64
            }
        })
        .collect();
    ArcCoordinates::new_unchecked(Shared::clone(base), coords)
}

/// Recover the slope of a torus arc from its base coordinates.
pub fn arc_slope(arc: &ArcCoordinates) -> Option<Slope> {
    let w = arc.coords();
    if w.len() != 3 {
        return None;
    }
    if let Some(e) = arc.sentinel_edge() {
        let (p, q) = BASE_SLOPES[e];
        return Some(Slope::new(p, q));
    }
    // i(s, 0/1) = |p| - 1 and i(s, 1/0) = q - 1 determine the slope up to the
    // sign of p, which i(s, 1/1) resolves.
    let p_abs = w[0] + 1;
    let q = w[1] + 1;
    for p in [p_abs, -p_abs] {
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            continue;
        }
        let s = Slope::new(p, q);
        if slope_arc(arc.reference(), s).coords() == w {
            return Some(s);
        }
    }
    None
}

/// A finite piece of the Farey complex: all slopes with `|num| <= bound` and
/// `den <= bound`, with the flag complex of the determinant-one graph.
#[derive(Clone, Debug)]
pub struct FareyTruncation {
    pub bound: i64,
    /// Slope of each complex vertex, parallel to the vertex order.
    pub slopes: Vec<Slope>,
    pub complex: Shared<FiniteComplex>,
}

impl FareyTruncation {
    pub fn new(bound: i64) -> Result<FareyTruncation, ComplexError> {
        assert!(bound >= 1);
        let base = torus_base();
        let mut slopes = vec![Slope::infinity()];
        for den in 1..=bound {
            for num in -bound..=bound {
                if gcd(num.unsigned_abs(), den as u64) == 1 {
                    slopes.push(Slope::new(num, den));
                }
            }
        }
        // Pair each slope with its arc and sort by arc to match the complex's
        // canonical vertex order.
        let mut pairs: Vec<(ArcCoordinates, Slope)> = slopes
            .into_iter()
            .map(|s| (slope_arc(&base, s), s))
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let slopes: Vec<Slope> = pairs.iter().map(|p| p.1).collect();
        let vertices: Vec<ArcCoordinates> = pairs.into_iter().map(|p| p.0).collect();
        let n = slopes.len();
        let mut gens: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if slopes[i].is_neighbor(slopes[j]) {
                    gens.push(vec![i, j]);
                    for k in j + 1..n {
                        if slopes[i].is_neighbor(slopes[k]) && slopes[j].is_neighbor(slopes[k]) {
                            gens.push(vec![i, j, k]);
                        }
                    }
                }
            }
        }
        let complex = Shared::new(FiniteComplex::from_simplices(vertices, gens)?);
        Ok(FareyTruncation {
            bound,
            slopes,
            complex,
        })
    }

    pub fn vertex_of_slope(&self, s: Slope) -> Option<usize> {
        self.slopes.iter().position(|&x| x == s)
    }

    pub fn slope_of_vertex(&self, v: usize) -> Slope {
        self.slopes[v]
    }
}

/// The finite rigid set of the once-marked torus: the four consecutive Farey
/// triangles `{inf, n, n+1}`, `n = -2..1`, on vertices `inf, -2..2`. The
/// whole set lies in the closed star of the infinity vertex, which has five
/// neighbors inside the set.
pub fn farey_rigid_set() -> Result<(Vec<Slope>, Shared<FiniteComplex>), ComplexError> {
    let base = torus_base();
    let slopes: Vec<Slope> = std::iter::once(Slope::infinity())
        .chain((-2..=2).map(|n| Slope::new(n, 1)))
        .collect();
    let vertices: Vec<ArcCoordinates> = slopes.iter().map(|&s| slope_arc(&base, s)).collect();
    let mut gens = Vec::new();
    for n in -2..=1i64 {
        let tri: Vec<usize> = [
            Slope::infinity(),
            Slope::new(n, 1),
            Slope::new(n + 1, 1),
        ]
        .iter()
        .map(|s| slopes.iter().position(|x| x == s).unwrap())
        .collect();
        gens.push(tri);
    }
    let complex = FiniteComplex::from_simplices(vertices.clone(), gens)?;
    // Re-derive the slope order against the sorted vertex order.
    let sorted_slopes: Vec<Slope> = complex
        .vertices()
        .iter()
        .map(|a| arc_slope(a).expect("torus arc"))
        .collect();
    Ok((sorted_slopes, Shared::new(complex)))
}

/// Grow a subcomplex of the Farey complex by every triangle sharing a side
/// with a triangle already present.
pub fn farey_exhaustion_step(
    prev: &FiniteComplex,
) -> Result<(Vec<Slope>, Shared<FiniteComplex>), ComplexError> {
    let base = torus_base();
    let prev_slopes: Vec<Slope> = prev
        .vertices()
        .iter()
        .map(|a| arc_slope(a).expect("torus arc"))
        .collect();
    let mut slopes: Vec<Slope> = prev_slopes.clone();
    let mut triangles: Vec<[Slope; 3]> = Vec::new();
    for s in prev.simplices() {
        if s.len() == 3 {
            let tri = [prev_slopes[s[0]], prev_slopes[s[1]], prev_slopes[s[2]]];
            triangles.push(tri);
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                for c in tri[i].edge_completions(tri[j]) {
                    triangles.push([tri[i], tri[j], c]);
                    slopes.push(c);
                }
            }
        }
    }
    slopes.sort();
    slopes.dedup();
    // Keep previous simplices (edges that are not in any triangle survive).
    let vertices: Vec<ArcCoordinates> = slopes.iter().map(|&s| slope_arc(&base, s)).collect();
    let idx = |s: Slope| slopes.iter().position(|&x| x == s).unwrap();
    let mut gens: Vec<Vec<usize>> = triangles
        .iter()
        .map(|t| t.iter().map(|&s| idx(s)).collect())
        .collect();
    for s in prev.simplices() {
        gens.push(s.iter().map(|&v| idx(prev_slopes[v])).collect());
    }
    let complex = FiniteComplex::from_simplices(vertices, gens)?;
    let sorted_slopes: Vec<Slope> = complex
        .vertices()
        .iter()
        .map(|a| arc_slope(a).expect("torus arc"))
        .collect();
    Ok((sorted_slopes, Shared::new(complex)))
}

/// A simplicial embedding of the arc complex of the thrice-marked sphere into
/// a Farey truncation, found by exhaustive search among locally injective
/// maps.
pub fn s03_embedding(bound: i64) -> Result<SimplicialMap, ConstructionError> {
    let s03 = Surface::new(0, 3).unwrap();
    let arcs = crate::arcs::enumerate_arcs(s03, 4).map_err(ConstructionError::Arc)?;
    let source = Shared::new(crate::complex::build_complex(&arcs)?);
    let target = FareyTruncation::new(bound)?.complex;
    let found = enumerate_locally_injective_maps(&source, &target, Some(1));
    found
        .maps
        .into_iter()
        .next()
        .ok_or(ConstructionError::NoneFound {
            depth: bound as usize,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::intersection_number;

    #[test]
    fn slope_normalization() {
        assert_eq!(Slope::new(2, 4), Slope::new(1, 2));
        assert_eq!(Slope::new(-3, -6), Slope::new(1, 2));
        assert_eq!(Slope::new(3, -6), Slope::new(-1, 2));
        assert_eq!(Slope::new(-1, 0), Slope::infinity());
    }

    #[test]
    fn slope_arcs_are_valid_and_roundtrip() {
        let base = torus_base();
        for p in -6..=6i64 {
            for q in 0..=6i64 {
                if (p == 0 && q == 0) || gcd(p.unsigned_abs(), q as u64) != 1 {
                    continue;
                }
                let s = Slope::new(p, q);
                let arc = slope_arc(&base, s);
                // Also checks validity.
                ArcCoordinates::new(&base, arc.coords().to_vec()).unwrap();
                assert_eq!(arc_slope(&arc), Some(s), "roundtrip of {s}");
            }
        }
    }

    #[test]
    fn transported_intersections_match_determinants() {
        // Transport the 0/1 arc across the flip of the 1/1 edge; against the
        // new triangulation {0/1, 1/0, -1/1} it is still an edge.
        let base = torus_base();
        let a = slope_arc(&base, Slope::new(0, 1));
        let moved = a.transport(2).unwrap();
        assert_eq!(moved.sentinel_edge(), Some(0));
        // The 1/2 arc meets the new diagonal -1/1 twice.
        let b = slope_arc(&base, Slope::new(1, 2));
        let b_moved = b.transport(2).unwrap();
        assert_eq!(b_moved.coords()[2], Slope::new(1, 2).arc_intersection(Slope::new(-1, 1)) as i64);
    }

    #[test]
    fn intersection_number_matches_slope_formula_small() {
        let base = torus_base();
        let slopes = [
            Slope::new(0, 1),
            Slope::new(1, 0),
            Slope::new(1, 1),
            Slope::new(-1, 1),
            Slope::new(1, 2),
            Slope::new(2, 1),
            Slope::new(-2, 3),
            Slope::new(3, 2),
        ];
        for &x in &slopes {
            for &y in &slopes {
                let a = slope_arc(&base, x);
                let b = slope_arc(&base, y);
                assert_eq!(
                    intersection_number(&a, &b).unwrap(),
                    x.arc_intersection(y),
                    "i({x}, {y})"
                );
            }
        }
    }

    #[test]
    fn rigid_set_shape() {
        let (slopes, complex) = farey_rigid_set().unwrap();
        assert_eq!(complex.vertex_count(), 6);
        assert_eq!(complex.simplex_count_of_dim(2), 4);
        let inf = slopes.iter().position(|&s| s == Slope::infinity()).unwrap();
        assert_eq!(complex.neighbors(inf).len(), 5);
        // Contained in the closed star of the infinity vertex.
        let star = complex.closed_star(inf).unwrap();
        assert!(complex.is_subcomplex_of(&star));
    }

    #[test]
    fn truncation_contains_rigid_set() {
        let t = FareyTruncation::new(3).unwrap();
        let (_, rigid) = farey_rigid_set().unwrap();
        assert!(rigid.is_subcomplex_of(&t.complex));
    }

    #[test]
    fn exhaustion_steps_strictly_increase_and_cover() {
        let (_, x0) = farey_rigid_set().unwrap();
        let mut cur: Shared<FiniteComplex> = x0;
        let mut prev_count = cur.vertex_count();
        for _ in 0..3 {
            let (_, next) = farey_exhaustion_step(&cur).unwrap();
            assert!(cur.is_subcomplex_of(&next));
            assert!(next.vertex_count() > prev_count);
            prev_count = next.vertex_count();
            cur = next;
        }
        // After a few steps every slope of the denominator-2 truncation is
        // present.
        let t2 = FareyTruncation::new(2).unwrap();
        for s in &t2.slopes {
            let arc = slope_arc(&torus_base(), *s);
            assert!(cur.index_of(&arc).is_some(), "missing {s}");
        }
    }
}
