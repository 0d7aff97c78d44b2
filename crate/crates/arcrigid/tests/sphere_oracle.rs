//! The thrice-marked sphere against the frozen hand-derived structure: six
//! arcs, the full intersection table, the four-triangle tessellation, and the
//! flip graph on its four triangulations.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc as Shared;

use arcrigid::arcs::{enumerate_arcs, intersection_number, ArcCoordinates};
use arcrigid::complex::build_complex;
use arcrigid::error::TriangulationError;
use arcrigid::surface::Surface;
use arcrigid::triangulation::TriangleKind;
use common::sphere3::{self, Arc};

/// Match the six enumerated arcs to the named oracle arcs through their
/// intersection profiles: the three sentinels are the point-to-point arcs and
/// each loop is the unique arc meeting exactly one of them once.
fn identify(arcs: &[ArcCoordinates]) -> BTreeMap<Arc, ArcCoordinates> {
    assert_eq!(arcs.len(), 6);
    let mut out = BTreeMap::new();
    // The base triangulation realizes the three point-to-point arcs as its
    // edges; an edge's endpoints name it.
    let base = arcs[0].reference();
    let class_pair = |e: usize| {
        let (u, v) = base.edge_endpoints(e).unwrap();
        (u.min(v), u.max(v))
    };
    let edge_named = |e: usize| match class_pair(e) {
        (0, 1) => Arc::A12,
        (0, 2) => Arc::A13,
        (1, 2) => Arc::A23,
        other => panic!("unexpected endpoint classes {other:?}"),
    };
    for arc in arcs {
        if let Some(e) = arc.sentinel_edge() {
            out.insert(edge_named(e), arc.clone());
        }
    }
    // A loop is disjoint from the two arcs at its base point and meets the
    // opposite arc once.
    for arc in arcs {
        if arc.sentinel_edge().is_some() {
            continue;
        }
        let meets_once: Vec<Arc> = [Arc::A12, Arc::A13, Arc::A23]
            .into_iter()
            .filter(|name| intersection_number(arc, &out[name]).unwrap() == 1)
            .collect();
        assert_eq!(meets_once.len(), 1, "a loop meets exactly one edge");
        let name = match meets_once[0] {
            Arc::A23 => Arc::L1,
            Arc::A13 => Arc::L2,
            Arc::A12 => Arc::L3,
            _ => unreachable!(),
        };
        out.insert(name, arc.clone());
    }
    assert_eq!(out.len(), 6);
    out
}

#[test]
fn full_intersection_table_matches_the_oracle() {
    let arcs = enumerate_arcs(Surface::new(0, 3).unwrap(), 8).unwrap();
    let named = identify(&arcs);
    for &a in &sphere3::ALL {
        for &b in &sphere3::ALL {
            assert_eq!(
                intersection_number(&named[&a], &named[&b]).unwrap(),
                sphere3::intersection(a, b),
                "i({a:?}, {b:?})"
            );
        }
    }
}

#[test]
fn complex_is_the_four_triangle_tessellation() {
    let arcs = enumerate_arcs(Surface::new(0, 3).unwrap(), 8).unwrap();
    let complex = build_complex(&arcs).unwrap();
    assert_eq!(complex.vertex_count(), 6);
    assert_eq!(complex.simplex_count_of_dim(1), 9);
    assert_eq!(complex.simplex_count_of_dim(2), 4);
    assert_eq!(complex.dimension(), 2);
    // The maximal simplices are the oracle's four triangulations.
    let named = identify(&arcs);
    let expected: BTreeSet<Vec<ArcCoordinates>> = sphere3::triangulations()
        .into_iter()
        .map(|tri| {
            let mut v: Vec<ArcCoordinates> = tri.iter().map(|a| named[a].clone()).collect();
            v.sort();
            v
        })
        .collect();
    let got: BTreeSet<Vec<ArcCoordinates>> = complex
        .maximal_simplices()
        .into_iter()
        .map(|s| s.iter().map(|&v| complex.vertices()[v].clone()).collect())
        .collect();
    assert_eq!(got, expected);
    // Loops sit at the tessellation corners (degree 2), the point-to-point
    // arcs at the side midpoints (degree 4).
    for (name, arc) in [&named].into_iter().flatten() {
        let idx = complex.index_of(arc).unwrap();
        let degree = complex.neighbors(idx).len();
        match name {
            Arc::L1 | Arc::L2 | Arc::L3 => assert_eq!(degree, 2, "{name:?}"),
            _ => assert_eq!(degree, 4, "{name:?}"),
        }
    }
}

#[test]
fn flip_graph_closes_on_the_four_triangulations() {
    let arcs = enumerate_arcs(Surface::new(0, 3).unwrap(), 8).unwrap();
    let base = Shared::clone(arcs[0].reference());
    // Breadth-first closure of labelled triangulations under flips.
    let mut seen = BTreeSet::new();
    let mut queue = vec![base.as_ref().clone()];
    seen.insert(base.as_ref().clone());
    while let Some(t) = queue.pop() {
        for e in t.flippable_edges() {
            let f = t.flip(e).unwrap();
            if seen.insert(f.clone()) {
                queue.push(f);
            }
        }
    }
    // Four triangulations, mirroring the tessellation's four triangles.
    assert_eq!(seen.len(), 4);
    let embedded = seen
        .iter()
        .filter(|t| {
            t.classify_triangles()
                .iter()
                .all(|i| i.kind == TriangleKind::Embedded)
        })
        .count();
    assert_eq!(embedded, 1, "only the all-arcs triangulation is embedded");
}

#[test]
fn flip_moves_match_the_oracle_triangulations() {
    // Flipping one edge of {A12, A13, A23} yields {L_i, ...}: the new edge is
    // the loop meeting the removed arc once.
    let arcs = enumerate_arcs(Surface::new(0, 3).unwrap(), 8).unwrap();
    let named = identify(&arcs);
    let base = Shared::clone(arcs[0].reference());
    for e in 0..3 {
        let removed = ArcCoordinates::edge_arc(&base, e).unwrap();
        let new_arc = removed.transport(e).unwrap(); // crossing vector of the new edge
        // Identify the new edge by intersection with the removed arc.
        assert_eq!(new_arc.coords()[e], 1);
        let flipped = base.flip(e).unwrap();
        // The flipped triangulation has two non-embedded triangles whose
        // inner arcs are the surviving edges.
        let infos = flipped.classify_triangles();
        assert!(infos.iter().all(|i| i.kind == TriangleKind::NonEmbedded));
        // The inner arcs are not flippable in it.
        for info in infos {
            let inner = info.inner_edge.unwrap();
            assert!(matches!(
                flipped.flip(inner),
                Err(TriangulationError::NotFlippable { .. })
            ));
        }
    }
    // Cross-check one instance by name: flipping A23's edge gives L1.
    let a23 = &named[&Arc::A23];
    let e = a23.sentinel_edge().unwrap();
    let l1_coords = {
        let mut back = named[&Arc::L1].clone();
        back = back.transport(e).unwrap();
        back
    };
    assert_eq!(l1_coords.sentinel_edge(), Some(e), "the loop becomes the new edge");
}
