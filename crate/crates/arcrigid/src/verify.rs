//! Deciding whether a locally injective simplicial map of a rigid set is
//! induced by a homeomorphism.
//!
//! The decision runs in three stages: reconstruct a combinatorial isomorphism
//! from the image of the base triangulation (triangle types and a globally
//! consistent orientation), extend it uniquely along the rigid set's flip
//! paths (at each flip the image of the new arc is forced, since a
//! codimension-one system has at most two completions), and compare the
//! forced values against the map. A disagreement certifies that no
//! homeomorphism induces the map.

use std::collections::BTreeMap;
use std::sync::Arc as Shared;

use rayon::prelude::*;
use serde::Serialize;

use crate::arcs::{complete_to_triangulation, ArcCoordinates, FlipPath, Frame};
use crate::complex::{
    enumerate_locally_injective_maps, FiniteComplex, LocallyInjectiveMaps, SimplicialMap,
};
use crate::error::{ComplexError, InducedError};
use crate::isomorphism::{isomorphisms, CombinatorialIsomorphism};
use crate::rigid::RigidSetReport;
use crate::triangulation::Triangulation;

/// A homeomorphism between the surfaces of two triangulations, represented by
/// a combinatorial isomorphism from the source base onto a triangulation
/// reached from the target base by a flip path.
#[derive(Clone, Debug)]
pub struct InducedHomeomorphism {
    pub source_base: Shared<Triangulation>,
    /// Flip path from the target base to the completed image triangulation.
    pub completion: Frame,
    /// The isomorphism from the source base onto the completion endpoint.
    pub iso: CombinatorialIsomorphism,
}

impl InducedHomeomorphism {
    /// Push an arc in source-base coordinates forward to target-base
    /// coordinates: permute coordinates along the edge bijection, then
    /// transport back along the completion path.
    pub fn apply(&self, arc: &ArcCoordinates) -> Result<ArcCoordinates, InducedError> {
        if arc.reference() != &self.source_base {
            return Err(InducedError::Arc(crate::error::ArcError::ReferenceMismatch));
        }
        let image = Shared::clone(self.completion.current());
        let mut coords = vec![0i64; image.edge_count()];
        for (e, &w) in arc.coords().iter().enumerate() {
            coords[self.iso.edge_map[e]] = w;
        }
        let moved = ArcCoordinates::new_unchecked(image, coords);
        self.completion.to_base(&moved).map_err(InducedError::Arc)
    }
}

/// Push an arc through an isomorphism of its reference triangulation:
/// coordinates permute along the edge bijection.
pub fn induced_arc(
    h: &CombinatorialIsomorphism,
    arc: &ArcCoordinates,
    target: &Shared<Triangulation>,
) -> ArcCoordinates {
    let mut coords = vec![0i64; target.edge_count()];
    for (e, &w) in arc.coords().iter().enumerate() {
        coords[h.edge_map[e]] = w;
    }
    ArcCoordinates::new_unchecked(Shared::clone(target), coords)
}

/// The simplicial map a combinatorial isomorphism induces on a complex: each
/// vertex arc is pushed forward, and the image complex carries the same
/// simplices.
pub fn induced_map(
    h: &CombinatorialIsomorphism,
    x: &Shared<FiniteComplex>,
    target: &Shared<Triangulation>,
) -> Result<SimplicialMap, ComplexError> {
    let images: Vec<ArcCoordinates> = x
        .vertices()
        .iter()
        .map(|a| induced_arc(h, a, target))
        .collect();
    let gens: Vec<Vec<usize>> = x.simplices().cloned().collect();
    let target_complex = Shared::new(FiniteComplex::from_simplices(images.clone(), gens)?);
    let assignment: Vec<usize> = images
        .iter()
        .map(|a| target_complex.index_of(a).expect("image vertex present"))
        .collect();
    SimplicialMap::new(Shared::clone(x), target_complex, assignment)
}

/// Reconstruct the combinatorial isomorphism a map induces on a triangulation
/// contained in its source.
///
/// The images of the triangulation's arcs are completed to a triangulation of
/// the target surface; the forced edge bijection must then match triangle
/// types and admit one globally consistent orientation.
pub fn homeomorphism_from_map(
    m: &SimplicialMap,
    base: &Shared<Triangulation>,
) -> Result<InducedHomeomorphism, InducedError> {
    let e_count = base.edge_count();
    let mut images = Vec::with_capacity(e_count);
    for e in 0..e_count {
        let arc = ArcCoordinates::edge_arc(base, e).map_err(InducedError::Arc)?;
        let idx = m
            .source
            .index_of(&arc)
            .ok_or(InducedError::MissingArc { edge: e })?;
        images.push(m.target.vertices()[m.assignment[idx]].clone());
    }
    let target_base = Shared::clone(images[0].reference());
    if target_base.edge_count() != e_count {
        return Err(InducedError::NotATriangulation {
            reason: format!(
                "image lives on a surface with {} arcs per triangulation, source has {}",
                target_base.edge_count(),
                e_count
            ),
        });
    }
    let completion =
        complete_to_triangulation(&target_base, &images).map_err(InducedError::Arc)?;
    let t_image = Shared::clone(completion.frame.current());
    let edge_map = completion.edge_of.clone();

    // The candidate isomorphism must carry edge e to edge_map[e]; search the
    // gluing isomorphisms for one realizing exactly that bijection.
    let found = isomorphisms(base, &t_image)
        .into_iter()
        .find(|iso| iso.edge_map == edge_map);
    match found {
        Some(iso) => Ok(InducedHomeomorphism {
            source_base: Shared::clone(base),
            completion: completion.frame,
            iso,
        }),
        None => Err(diagnose_failure(base, &t_image, &edge_map)),
    }
}

/// Distinguish a triangle-type failure from an orientation failure when the
/// forced edge bijection is not an isomorphism.
fn diagnose_failure(
    base: &Triangulation,
    image: &Triangulation,
    edge_map: &[usize],
) -> InducedError {
    if base.triangle_count() != image.triangle_count() {
        return InducedError::NotATriangulation {
            reason: format!(
                "image triangulation is of {} while the source is of {}",
                image.surface(),
                base.surface()
            ),
        };
    }
    // Multiset matching of mapped triangles against image triangles.
    let mut available: Vec<[usize; 3]> = image
        .triangles()
        .iter()
        .map(|t| {
            let mut s = *t;
            s.sort_unstable();
            s
        })
        .collect();
    for (i, tri) in base.triangles().iter().enumerate() {
        let mut mapped = [edge_map[tri[0]], edge_map[tri[1]], edge_map[tri[2]]];
        mapped.sort_unstable();
        match available.iter().position(|s| *s == mapped) {
            Some(p) => {
                available.swap_remove(p);
            }
            None => return InducedError::TypeMismatch { triangle: i },
        }
    }
    InducedError::OrientationConflict
}

/// A partial assignment of image arcs to source arcs, both in base
/// coordinates of their respective surfaces.
pub type ArcAssignment = BTreeMap<ArcCoordinates, ArcCoordinates>;

/// Extend an assignment defined on the arcs of the path's root triangulation
/// along a flip path. At each flip the image of the incoming arc is forced:
/// the image system of the common codimension-one face has at most two
/// completions, and local injectivity rules out re-using the outgoing image.
///
/// A `Conflict` certifies that the assignment extends to no map induced by a
/// homeomorphism.
pub fn propagate(
    seed: &ArcAssignment,
    source_base: &Shared<Triangulation>,
    target_base: &Shared<Triangulation>,
    path: &FlipPath,
) -> Result<ArcAssignment, InducedError> {
    let mut frame = Frame::new(Shared::clone(source_base));
    let mut cur_edges: Vec<ArcCoordinates> =
        frame.edge_arcs_in_base().map_err(InducedError::Arc)?;
    let mut images: Vec<ArcCoordinates> = Vec::with_capacity(cur_edges.len());
    for (e, arc) in cur_edges.iter().enumerate() {
        match seed.get(arc) {
            Some(img) => images.push(img.clone()),
            None => return Err(InducedError::MissingArc { edge: e }),
        }
    }
    let mut assignment = seed.clone();
    for (step, &e) in path.flips.iter().enumerate() {
        let old_image = images[e].clone();
        let rest: Vec<ArcCoordinates> = images
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != e)
            .map(|(_, a)| a.clone())
            .collect();
        let completion =
            complete_to_triangulation(target_base, &rest).map_err(InducedError::Arc)?;
        let candidates = completion.codim1_completions.unwrap_or_default();
        let forced = candidates.into_iter().find(|c| *c != old_image);
        let forced = match forced {
            Some(f) => f,
            None => {
                return Err(InducedError::Conflict {
                    step,
                    reason: "image system admits no second completion".into(),
                })
            }
        };
        frame.flip(e).map_err(|err| InducedError::Arc(err.into()))?;
        let new_arc = frame.edge_arc_in_base(e).map_err(InducedError::Arc)?;
        if let Some(existing) = assignment.get(&new_arc) {
            if *existing != forced {
                return Err(InducedError::Conflict {
                    step,
                    reason: format!(
                        "forced image {:?} contradicts recorded image {:?}",
                        forced.coords(),
                        existing.coords()
                    ),
                });
            }
        } else {
            assignment.insert(new_arc.clone(), forced.clone());
        }
        cur_edges[e] = new_arc;
        images[e] = forced;
    }
    Ok(assignment)
}

/// One non-induced map, with the reason it was rejected.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<usize>,
    pub reason: String,
}

/// Outcome of an exhaustive rigidity check of a rigid set against a finite
/// target complex.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub maps_examined: usize,
    pub maps_induced: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Set when the enumeration was cut off by the map cap; a truncated run
    /// never certifies rigidity.
    pub truncation_flag: bool,
    /// Maps whose completed image triangulation has its whole flip
    /// neighborhood inside the target complex (nothing near them is clipped
    /// by the truncation boundary).
    pub interior_maps: usize,
    /// The recorded margin check. Classification of a single map is exact
    /// and does not consult the truncation, so a clipped margin can never
    /// produce a false counterexample; this flag documents that (a) every
    /// counterexample map sits at full margin, so no rejection can be
    /// blamed on the boundary, and (b) at least one induced map sits at
    /// full margin, so the interior of the truncation was genuinely
    /// explored.
    pub star_containment_ok: bool,
    /// The rigid set contains no full triangulation; maps were counted but
    /// cannot be classified.
    pub not_applicable: bool,
    pub wall_ms: u128,
}

impl RigidityReport {
    /// The verdict this report supports: every examined map induced, the
    /// enumeration exhaustive, and the margin check clean.
    pub fn rigid_at_this_scale(&self) -> bool {
        !self.not_applicable
            && !self.truncation_flag
            && self.star_containment_ok
            && self.counterexamples.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub map_cap: Option<usize>,
    pub parallel: bool,
}

/// Classification of one enumerated map.
enum VerifyOutcome {
    Induced { interior: bool },
    Rejected { interior: bool, reason: String },
}

/// Verify one enumerated map. `Err` carries rejections where the margin
/// could not even be measured (no reconstruction at all).
fn verify_map(
    report: &RigidSetReport,
    target_base: &Shared<Triangulation>,
    target: &Shared<FiniteComplex>,
    m: &SimplicialMap,
) -> Result<VerifyOutcome, String> {
    // Margin of the image simplex of the base triangulation, measured
    // directly on the image arcs whenever they complete to a triangulation.
    let interior = image_margin_clean(report, target, m).unwrap_or(false);
    let h = match homeomorphism_from_map(m, &report.base) {
        Ok(h) => h,
        Err(e) => {
            return Ok(VerifyOutcome::Rejected {
                interior,
                reason: e.to_string(),
            })
        }
    };
    // Direct comparison: the induced map must agree with the map vertex by
    // vertex.
    for (v, arc) in report.complex.vertices().iter().enumerate() {
        let induced = h.apply(arc).map_err(|e| e.to_string())?;
        let declared = &m.target.vertices()[m.assignment[v]];
        if induced != *declared {
            return Ok(VerifyOutcome::Rejected {
                interior,
                reason: format!(
                    "vertex {v}: induced image {:?} differs from the map's {:?}",
                    induced.coords(),
                    declared.coords()
                ),
            });
        }
    }
    // Mechanism cross-check: propagation along every vertex path forces the
    // same values.
    let mut seed: ArcAssignment = BTreeMap::new();
    for e in 0..report.base.edge_count() {
        let arc = ArcCoordinates::edge_arc(&report.base, e).map_err(|e| e.to_string())?;
        let idx = m.source.index_of(&arc).ok_or("base arc missing")?;
        seed.insert(arc, m.target.vertices()[m.assignment[idx]].clone());
    }
    for (v, path) in report.flip_paths.iter().enumerate() {
        let extended = match propagate(&seed, &report.base, target_base, path) {
            Ok(x) => x,
            Err(e) => {
                return Ok(VerifyOutcome::Rejected {
                    interior,
                    reason: format!("propagation for vertex {v}: {e}"),
                })
            }
        };
        let arc = &report.complex.vertices()[v];
        if let Some(forced) = extended.get(arc) {
            let declared = &m.target.vertices()[m.assignment[v]];
            if forced != declared {
                return Ok(VerifyOutcome::Rejected {
                    interior,
                    reason: format!(
                        "vertex {v}: propagation forces {:?}, map says {:?}",
                        forced.coords(),
                        declared.coords()
                    ),
                });
            }
        }
    }
    Ok(VerifyOutcome::Induced { interior })
}

/// Whether the whole flip neighborhood of the map's completed image
/// triangulation lies inside the target complex. `None` when the image arcs
/// do not complete (no margin to speak of).
fn image_margin_clean(
    report: &RigidSetReport,
    target: &Shared<FiniteComplex>,
    m: &SimplicialMap,
) -> Option<bool> {
    let mut images = Vec::with_capacity(report.base.edge_count());
    for e in 0..report.base.edge_count() {
        let arc = ArcCoordinates::edge_arc(&report.base, e).ok()?;
        let idx = m.source.index_of(&arc)?;
        images.push(m.target.vertices()[m.assignment[idx]].clone());
    }
    let target_base = Shared::clone(images[0].reference());
    let completion = complete_to_triangulation(&target_base, &images).ok()?;
    if completion.frame.current().edge_count() != report.base.edge_count() {
        return Some(false);
    }
    for e in 0..completion.frame.current().edge_count() {
        if !completion.frame.current().is_flippable(e) {
            continue;
        }
        let mut alt = completion.frame.clone();
        alt.flip(e).ok()?;
        let neighbor = alt.edge_arc_in_base(e).ok()?;
        if target.index_of(&neighbor).is_none() {
            return Some(false);
        }
    }
    Some(true)
}

/// Enumerate every locally injective simplicial map of the rigid set into the
/// target complex and classify each as induced by a combinatorial isomorphism
/// or a counterexample.
pub fn check_rigidity(
    report: &RigidSetReport,
    target: &Shared<FiniteComplex>,
    opts: CheckOptions,
) -> RigidityReport {
    let started = std::time::Instant::now();
    let base_arcs_present = (0..report.base.edge_count()).all(|e| {
        ArcCoordinates::edge_arc(&report.base, e)
            .ok()
            .and_then(|a| report.complex.index_of(&a))
            .is_some()
    });
    let target_base = target
        .vertices()
        .first()
        .map(|a| Shared::clone(a.reference()));

    let enumerated = enumerate_locally_injective_maps(&report.complex, target, opts.map_cap);
    let maps_examined = enumerated.maps.len();
    if !base_arcs_present || target_base.is_none() {
        return RigidityReport {
            maps_examined,
            maps_induced: 0,
            counterexamples: Vec::new(),
            truncation_flag: enumerated.truncated,
            interior_maps: 0,
            star_containment_ok: false,
            not_applicable: true,
            wall_ms: started.elapsed().as_millis(),
        };
    }
    let target_base = target_base.unwrap();

    let verify = |m: &SimplicialMap| verify_map(report, &target_base, target, m);
    let results: Vec<Result<VerifyOutcome, String>> = if opts.parallel {
        enumerated.maps.par_iter().map(verify).collect()
    } else {
        enumerated.maps.iter().map(verify).collect()
    };

    let mut maps_induced = 0usize;
    let mut counterexamples = Vec::new();
    let mut interior_maps = 0usize;
    let mut interior_induced = 0usize;
    let mut clipped_rejections = 0usize;
    for (m, r) in enumerated.maps.iter().zip(results) {
        match r {
            Ok(VerifyOutcome::Induced { interior }) => {
                maps_induced += 1;
                if interior {
                    interior_maps += 1;
                    interior_induced += 1;
                }
            }
            Ok(VerifyOutcome::Rejected { interior, reason }) => {
                if interior {
                    interior_maps += 1;
                } else {
                    clipped_rejections += 1;
                }
                counterexamples.push(Counterexample {
                    assignment: m.assignment.clone(),
                    reason,
                });
            }
            Err(reason) => {
                clipped_rejections += 1;
                counterexamples.push(Counterexample {
                    assignment: m.assignment.clone(),
                    reason,
                });
            }
        }
    }
    let star_containment_ok =
        clipped_rejections == 0 && (maps_induced == 0 || interior_induced > 0);
    RigidityReport {
        maps_examined,
        maps_induced,
        counterexamples,
        truncation_flag: enumerated.truncated,
        interior_maps,
        star_containment_ok,
        not_applicable: false,
        wall_ms: started.elapsed().as_millis(),
    }
}

/// A mapping class presented combinatorially: a flip path from the base
/// composed with a gluing isomorphism back onto the base. Applying it to arcs
/// realizes the induced simplicial automorphism of the arc complex.
#[derive(Clone, Debug)]
pub struct MappingClass {
    pub frame: Frame,
    pub iso: CombinatorialIsomorphism,
}

impl MappingClass {
    pub fn identity(base: &Shared<Triangulation>) -> Self {
        MappingClass {
            frame: Frame::new(Shared::clone(base)),
            iso: CombinatorialIsomorphism::identity(base),
        }
    }

    /// The image of an arc (base coordinates in, base coordinates out).
    pub fn apply_arc(&self, arc: &ArcCoordinates) -> Result<ArcCoordinates, InducedError> {
        let moved = self.frame.to_current(arc).map_err(InducedError::Arc)?;
        Ok(induced_arc(&self.iso, &moved, self.frame.base()))
    }

    /// Seed assignment on the base triangulation's arcs.
    pub fn base_assignment(&self) -> Result<ArcAssignment, InducedError> {
        let mut out = BTreeMap::new();
        for e in 0..self.frame.base().edge_count() {
            let arc = ArcCoordinates::edge_arc(self.frame.base(), e).map_err(InducedError::Arc)?;
            let img = self.apply_arc(&arc)?;
            out.insert(arc, img);
        }
        Ok(out)
    }
}

/// Iterator access for callers that stream maps rather than collecting.
pub fn map_stream<'a>(
    source: &'a Shared<FiniteComplex>,
    target: &'a Shared<FiniteComplex>,
) -> LocallyInjectiveMaps<'a> {
    LocallyInjectiveMaps::new(source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::enumerate_arcs;
    use crate::complex::build_complex;
    use crate::farey::{farey_rigid_set, torus_base, FareyTruncation};
    use crate::surface::Surface;
    use crate::triangulation::base_triangulation;

    fn farey_report() -> RigidSetReport {
        let (_, complex) = farey_rigid_set().unwrap();
        RigidSetReport::assemble(torus_base(), complex, "farey").unwrap()
    }

    #[test]
    fn identity_isomorphism_induces_identity_map() {
        let base = torus_base();
        let (_, complex) = farey_rigid_set().unwrap();
        let id = CombinatorialIsomorphism::identity(&base);
        let m = induced_map(&id, &complex, &base).unwrap();
        for (v, arc) in complex.vertices().iter().enumerate() {
            assert_eq!(m.target.vertices()[m.assignment[v]], *arc);
        }
    }

    #[test]
    fn reconstruction_round_trips_on_the_rigid_set() {
        // The identity embedding of the rigid set into a truncation is
        // induced by the identity; reconstruction must accept it.
        let report = farey_report();
        let target = FareyTruncation::new(3).unwrap().complex;
        let assignment: Vec<usize> = report
            .complex
            .vertices()
            .iter()
            .map(|a| target.index_of(a).unwrap())
            .collect();
        let m = SimplicialMap::new(
            Shared::clone(&report.complex),
            Shared::clone(&target),
            assignment,
        )
        .unwrap();
        let h = homeomorphism_from_map(&m, &report.base).unwrap();
        for arc in report.complex.vertices() {
            let img = h.apply(arc).unwrap();
            assert_eq!(img, *arc);
        }
    }

    #[test]
    fn propagation_of_identity_returns_identity() {
        let report = farey_report();
        let base = &report.base;
        let mut seed: ArcAssignment = BTreeMap::new();
        for e in 0..base.edge_count() {
            let arc = ArcCoordinates::edge_arc(base, e).unwrap();
            seed.insert(arc.clone(), arc);
        }
        for path in &report.flip_paths {
            let out = propagate(&seed, base, base, path).unwrap();
            for (k, v) in &out {
                assert_eq!(k, v);
            }
        }
    }

    #[test]
    fn mutated_assignment_conflicts() {
        // Propagate the identity seed but pre-record a wrong image for the
        // arc the first nonempty path reaches.
        let report = farey_report();
        let base = &report.base;
        let (v, path) = report
            .flip_paths
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_empty())
            .map(|(v, p)| (v, p.clone()))
            .unwrap();
        let mut seed: ArcAssignment = BTreeMap::new();
        for e in 0..base.edge_count() {
            let arc = ArcCoordinates::edge_arc(base, e).unwrap();
            seed.insert(arc.clone(), arc);
        }
        // Wrong image: an arc different from the vertex itself.
        let vertex = report.complex.vertices()[v].clone();
        let wrong = report
            .complex
            .vertices()
            .iter()
            .find(|a| **a != vertex && !seed.contains_key(*a))
            .unwrap()
            .clone();
        seed.insert(vertex, wrong);
        let err = propagate(&seed, base, base, &path).unwrap_err();
        assert!(matches!(err, InducedError::Conflict { .. }), "{err}");
    }

    #[test]
    fn farey_rigid_set_has_no_counterexamples_in_a_small_truncation() {
        let report = farey_report();
        let target = FareyTruncation::new(5).unwrap().complex;
        let out = check_rigidity(&report, &target, CheckOptions::default());
        assert!(out.maps_examined > 0);
        assert_eq!(out.maps_induced, out.maps_examined);
        assert!(out.counterexamples.is_empty());
        assert!(!out.truncation_flag);
        assert!(!out.not_applicable);
    }

    #[test]
    fn sphere_complex_maps_are_rejected() {
        // The arc complex of the thrice-marked sphere embeds in the Farey
        // complex, but its base triangulation lives on a different surface;
        // reconstruction must reject every such map.
        let s = Surface::new(0, 3).unwrap();
        let arcs = enumerate_arcs(s, 6).unwrap();
        let pillow = Shared::clone(arcs[0].reference());
        let complex = Shared::new(build_complex(&arcs).unwrap());
        let report = RigidSetReport::assemble(pillow, complex, "sphere").unwrap();
        let target = FareyTruncation::new(3).unwrap().complex;
        let out = check_rigidity(&report, &target, CheckOptions::default());
        assert!(out.maps_examined > 0, "the embedding exists");
        assert_eq!(out.maps_induced, 0);
        assert_eq!(out.counterexamples.len(), out.maps_examined);
        for c in &out.counterexamples {
            assert!(
                c.reason.contains("orientation") || c.reason.contains("triangulation"),
                "{}",
                c.reason
            );
        }
    }

    #[test]
    fn edge_only_set_is_not_applicable() {
        // A rigid set without a full triangulation cannot be classified.
        let base = torus_base();
        let arcs = vec![
            ArcCoordinates::edge_arc(&base, 0).unwrap(),
            ArcCoordinates::edge_arc(&base, 1).unwrap(),
        ];
        let complex = Shared::new(build_complex(&arcs).unwrap());
        let report = RigidSetReport {
            base: Shared::clone(&base),
            complex: Shared::clone(&complex),
            flip_paths: vec![crate::arcs::FlipPath::empty(&base); complex.vertex_count()],
            provenance: vec!["edge".into(); complex.vertex_count()],
        };
        let target = FareyTruncation::new(2).unwrap().complex;
        let out = check_rigidity(&report, &target, CheckOptions::default());
        assert!(out.not_applicable);
        assert!(out.maps_examined > 0);
    }

    #[test]
    fn mapping_class_action_on_the_base_is_consistent() {
        let base = Shared::new(base_triangulation(Surface::new(0, 4).unwrap()).unwrap());
        let mut rng = crate::sampling::rng_from_seed(5);
        let mc = crate::sampling::sample_mapping_class(&mut rng, &base, 4).unwrap();
        // Images of the base arcs are pairwise disjoint and complete to a
        // triangulation (they are one).
        let images: Vec<ArcCoordinates> = (0..base.edge_count())
            .map(|e| {
                mc.apply_arc(&ArcCoordinates::edge_arc(&base, e).unwrap())
                    .unwrap()
            })
            .collect();
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                assert_eq!(
                    crate::arcs::intersection_number(&images[i], &images[j]).unwrap(),
                    0
                );
            }
        }
    }
}
