//! Seeded property runs: transport round trips and path independence, Euler
//! identities across the template family, span laws, and the uniqueness of
//! propagation for maps induced by mapping classes.

use std::collections::BTreeMap;
use std::sync::Arc as Shared;

use rand::Rng;

use arcrigid::arcs::{enumerate_arcs, enumerate_arcs_in, ArcCoordinates, FlipPath};
use arcrigid::complex::build_complex;
use arcrigid::sampling::{random_flip_walk, rng_from_seed, sample_mapping_class};
use arcrigid::surface::Surface;
use arcrigid::triangulation::{base_triangulation, Triangulation};
use arcrigid::verify::{propagate, ArcAssignment, InducedHomeomorphism};
use arcrigid::error::InducedError;

fn base(g: usize, n: usize) -> Shared<Triangulation> {
    Shared::new(base_triangulation(Surface::new(g, n).unwrap()).unwrap())
}

#[test]
fn transport_round_trips_along_random_paths() {
    for (g, n, seed) in [(0usize, 4usize, 11u64), (1, 2, 12)] {
        let b = base(g, n);
        let arcs = enumerate_arcs_in(&b, 4).unwrap();
        let mut rng = rng_from_seed(seed);
        for _ in 0..12 {
            let walk = random_flip_walk(&mut rng, &b, 20).unwrap();
            for arc in arcs.iter().take(12) {
                let there = arc.transport_along(walk.path()).unwrap();
                let mut back = there;
                for &e in walk.path().iter().rev() {
                    back = back.transport(e).unwrap();
                }
                assert_eq!(&back, arc);
            }
        }
    }
}

#[test]
fn transport_is_path_independent() {
    // Distinct flip paths with the same labelled endpoint transport arcs
    // identically. Pairs are generated two ways: inserting a double flip
    // (which cancels), and swapping two consecutive flips whenever both
    // orders are legal and land on the same triangulation.
    let b = base(0, 4);
    let arcs = enumerate_arcs_in(&b, 4).unwrap();
    let mut rng = rng_from_seed(23);
    let mut checked_swaps = 0usize;
    for _ in 0..20 {
        let walk = random_flip_walk(&mut rng, &b, 10).unwrap();
        let path = walk.path().to_vec();

        // Double-flip insertion at a random position.
        let mut t = b.as_ref().clone();
        let cut = rng.gen_range(0..=path.len());
        for &e in &path[..cut] {
            t = t.flip(e).unwrap();
        }
        if let Some(&extra) = t.flippable_edges().first() {
            let mut padded = path[..cut].to_vec();
            padded.push(extra);
            padded.push(extra);
            padded.extend_from_slice(&path[cut..]);
            let end_plain = FlipPath {
                root_digest: b.digest(),
                flips: path.clone(),
            }
            .apply(&b)
            .unwrap();
            let end_padded = FlipPath {
                root_digest: b.digest(),
                flips: padded.clone(),
            }
            .apply(&b)
            .unwrap();
            assert_eq!(end_plain, end_padded);
            for arc in arcs.iter().take(8) {
                assert_eq!(
                    arc.transport_along(&path).unwrap().coords(),
                    arc.transport_along(&padded).unwrap().coords()
                );
            }
        }

        // Adjacent swap where both orders are legal and agree.
        if path.len() >= 2 {
            let i = rng.gen_range(0..path.len() - 1);
            let (e1, e2) = (path[i], path[i + 1]);
            let mut prefix_t = b.as_ref().clone();
            for &e in &path[..i] {
                prefix_t = prefix_t.flip(e).unwrap();
            }
            let plain = prefix_t.flip(e1).and_then(|t| t.flip(e2));
            let swapped = prefix_t.flip(e2).and_then(|t| t.flip(e1));
            if let (Ok(a_end), Ok(b_end)) = (plain, swapped) {
                if a_end == b_end {
                    checked_swaps += 1;
                    let mut swapped_path = path.clone();
                    swapped_path.swap(i, i + 1);
                    let full_plain = FlipPath {
                        root_digest: b.digest(),
                        flips: path.clone(),
                    };
                    let full_swapped = FlipPath {
                        root_digest: b.digest(),
                        flips: swapped_path.clone(),
                    };
                    if full_plain.apply(&b).unwrap() == full_swapped.apply(&b).unwrap() {
                        for arc in arcs.iter().take(8) {
                            assert_eq!(
                                arc.transport_along(&path).unwrap().coords(),
                                arc.transport_along(&swapped_path).unwrap().coords()
                            );
                        }
                    }
                }
            }
        }
    }
    assert!(checked_swaps > 0, "the swap family must be exercised");
}

#[test]
fn euler_identities_across_the_template_family() {
    for g in 0..=3usize {
        for n in 1..=5usize {
            let s = Surface::new(g, n).unwrap();
            if !s.has_triangulation() {
                continue;
            }
            let t = base_triangulation(s).unwrap();
            assert_eq!(t.edge_count(), 6 * g + 3 * n - 6);
            assert_eq!(t.triangle_count(), 4 * g + 2 * n - 4);
            assert_eq!(t.vertex_class_count(), n);
            // Flip invariance of the derived surface.
            for e in t.flippable_edges() {
                assert_eq!(t.flip(e).unwrap().surface(), s);
            }
        }
    }
}

#[test]
fn span_is_idempotent_and_monotone() {
    let arcs = enumerate_arcs(Surface::new(0, 4).unwrap(), 3).unwrap();
    let complex = build_complex(&arcs).unwrap();
    let n = complex.vertex_count();
    let mut rng = rng_from_seed(31);
    for _ in 0..3 {
        // Three nested random vertex sets.
        let mut small: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        let mut mid: Vec<usize> = small.clone();
        mid.extend((0..n).filter(|_| rng.gen_bool(0.3)));
        mid.sort_unstable();
        mid.dedup();
        let mut big: Vec<usize> = (0..n).collect();
        small.sort_unstable();
        big.sort_unstable();

        let s_small = complex.span(&small).unwrap();
        let s_mid = complex.span(&mid).unwrap();
        let s_big = complex.span(&big).unwrap();
        assert!(s_small.is_subcomplex_of(&s_mid));
        assert!(s_mid.is_subcomplex_of(&s_big));
        assert_eq!(s_big, complex.span(&(0..n).collect::<Vec<_>>()).unwrap());
        // Idempotence: spanning the span over all its vertices changes
        // nothing.
        let again = s_mid
            .span(&(0..s_mid.vertex_count()).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(again, s_mid);
    }
}

#[test]
fn propagation_never_conflicts_for_induced_maps() {
    // Seeded mapping classes of the four-marked sphere; propagation along
    // random paths agrees with the induced action everywhere it reaches.
    let b = base(0, 4);
    let mut rng = rng_from_seed(47);
    for round in 0..12 {
        let mc = sample_mapping_class(&mut rng, &b, 4).unwrap();
        let seed: ArcAssignment = mc.base_assignment().unwrap();
        let walk = random_flip_walk(&mut rng, &b, 12).unwrap();
        let path = FlipPath {
            root_digest: b.digest(),
            flips: walk.path().to_vec(),
        };
        let extended = propagate(&seed, &b, &b, &path)
            .unwrap_or_else(|e| panic!("round {round}: unexpected conflict {e}"));
        for (arc, image) in &extended {
            assert_eq!(
                image,
                &mc.apply_arc(arc).unwrap(),
                "round {round}: propagation disagrees with the induced action"
            );
        }
    }
}

#[test]
fn single_vertex_mutations_conflict() {
    let b = base(0, 4);
    let mut rng = rng_from_seed(53);
    let mut mutated_runs = 0;
    for _ in 0..12 {
        let mc = sample_mapping_class(&mut rng, &b, 4).unwrap();
        let mut seed: ArcAssignment = mc.base_assignment().unwrap();
        let walk = random_flip_walk(&mut rng, &b, 12).unwrap();
        if walk.path().is_empty() {
            continue;
        }
        let path = FlipPath {
            root_digest: b.digest(),
            flips: walk.path().to_vec(),
        };
        // The arc created by the final flip of the path, in base coordinates.
        let far_arc = walk.edge_arc_in_base(*walk.path().last().unwrap()).unwrap();
        if seed.contains_key(&far_arc) {
            continue;
        }
        // Record a wrong image for it: the image of a base arc, which the
        // induced action cannot repeat on another vertex.
        let wrong = seed.values().next().unwrap().clone();
        let truth = mc.apply_arc(&far_arc).unwrap();
        assert_ne!(wrong, truth, "mutation must actually change the image");
        seed.insert(far_arc, wrong);
        mutated_runs += 1;
        match propagate(&seed, &b, &b, &path) {
            Err(InducedError::Conflict { .. }) => {}
            other => panic!("expected a conflict, got {other:?}"),
        }
    }
    assert!(mutated_runs >= 6, "mutation family must be exercised");
}

#[test]
fn reconstruction_recovers_sampled_classes_on_their_rigid_set() {
    // Round trip through the whole verifier pipeline on the four-marked
    // sphere: the map induced by a sampled class on the rigid set is
    // accepted, and the reconstructed homeomorphism reproduces it.
    use arcrigid::complex::SimplicialMap;
    use arcrigid::rigid::build_x;
    use arcrigid::verify::homeomorphism_from_map;

    let b = base(0, 4);
    let report = build_x(&b).unwrap();
    let mut rng = rng_from_seed(61);
    for _ in 0..4 {
        let mc = sample_mapping_class(&mut rng, &b, 3).unwrap();
        let images: Vec<ArcCoordinates> = report
            .complex
            .vertices()
            .iter()
            .map(|a| mc.apply_arc(a).unwrap())
            .collect();
        // Build the image complex and the map between them.
        let mut all = images.clone();
        all.extend(report.complex.vertices().iter().cloned());
        let target = Shared::new(build_complex(&all).unwrap());
        let assignment: Vec<usize> = images.iter().map(|a| target.index_of(a).unwrap()).collect();
        let m = SimplicialMap::new(
            Shared::clone(&report.complex),
            Shared::clone(&target),
            assignment,
        )
        .unwrap();
        let h: InducedHomeomorphism = homeomorphism_from_map(&m, &b).unwrap();
        let mut agreements = BTreeMap::new();
        for (v, arc) in report.complex.vertices().iter().enumerate() {
            let induced = h.apply(arc).unwrap();
            agreements.insert(v, induced == images[v]);
        }
        assert!(agreements.values().all(|&ok| ok));
    }
}
