//! Constructive rigid sets: the detector complexes for intersection-one
//! pairs, embedded and non-embedded triangles, orientation agreement across a
//! shared side, candidate-homeomorphism support, and the span-closed sets
//! with flip paths that the verifier consumes.
//!
//! Every construction returns a complex whose vertices are arcs in base
//! coordinates, so outputs can be unioned freely.

use std::collections::BTreeMap;
use std::sync::Arc as Shared;

use crate::arcs::{
    complete_to_triangulation, flip_path_to_contain, ArcCoordinates, FlipPath, Frame,
};
use crate::complex::{build_complex, FiniteComplex};
use crate::error::{ArcError, ConstructionError};
use crate::triangulation::{TriangleKind, Triangulation};

/// A finite rigid set with the data the verifier needs: for every vertex, a
/// flip path from the base triangulation to a triangulation containing it,
/// all of whose arcs stay inside the complex.
#[derive(Clone, Debug)]
pub struct RigidSetReport {
    pub base: Shared<Triangulation>,
    pub complex: Shared<FiniteComplex>,
    /// Parallel to `complex.vertices()`.
    pub flip_paths: Vec<FlipPath>,
    /// Parallel to `complex.vertices()`.
    pub provenance: Vec<String>,
}

impl RigidSetReport {
    /// Check the structural invariants: base arcs in the complex, every path
    /// rooted at the base, every path triangulation inside the complex, and
    /// the path endpoint containing its vertex.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let base_digest = self.base.digest();
        for e in 0..self.base.edge_count() {
            let arc = ArcCoordinates::edge_arc(&self.base, e).map_err(ConstructionError::Arc)?;
            if self.complex.index_of(&arc).is_none() {
                return Err(ConstructionError::Precondition(format!(
                    "base edge {e} missing from the complex"
                )));
            }
        }
        if self.flip_paths.len() != self.complex.vertex_count()
            || self.provenance.len() != self.complex.vertex_count()
        {
            return Err(ConstructionError::Precondition(
                "paths/provenance tables out of step with the vertex set".into(),
            ));
        }
        for (v, path) in self.flip_paths.iter().enumerate() {
            if path.root_digest != base_digest {
                return Err(ConstructionError::Precondition(format!(
                    "path of vertex {v} not rooted at the base"
                )));
            }
            let mut frame = Frame::new(Shared::clone(&self.base));
            for arc in frame.edge_arcs_in_base().map_err(ConstructionError::Arc)? {
                if self.complex.index_of(&arc).is_none() {
                    return Err(ConstructionError::Precondition(format!(
                        "path of vertex {v} leaves the complex at step 0"
                    )));
                }
            }
            for (step, &e) in path.flips.iter().enumerate() {
                frame.flip(e).map_err(ConstructionError::Triangulation)?;
                for arc in frame.edge_arcs_in_base().map_err(ConstructionError::Arc)? {
                    if self.complex.index_of(&arc).is_none() {
                        return Err(ConstructionError::Precondition(format!(
                            "path of vertex {v} leaves the complex at step {}",
                            step + 1
                        )));
                    }
                }
            }
            let target = &self.complex.vertices()[v];
            let endpoint_arcs = frame.edge_arcs_in_base().map_err(ConstructionError::Arc)?;
            if !endpoint_arcs.contains(target) {
                return Err(ConstructionError::Precondition(format!(
                    "path of vertex {v} does not reach its vertex"
                )));
            }
        }
        Ok(())
    }

    /// Assemble a report for a complex by computing greedy flip paths per
    /// vertex; fails when some path leaves the complex.
    pub fn assemble(
        base: Shared<Triangulation>,
        complex: Shared<FiniteComplex>,
        tag: &str,
    ) -> Result<RigidSetReport, ConstructionError> {
        let mut flip_paths = Vec::with_capacity(complex.vertex_count());
        let provenance = vec![tag.to_string(); complex.vertex_count()];
        for v in complex.vertices() {
            let (frame, _) = flip_path_to_contain(v).map_err(ConstructionError::Arc)?;
            flip_paths.push(frame.flip_path());
        }
        let report = RigidSetReport {
            base,
            complex,
            flip_paths,
            provenance,
        };
        report.validate()?;
        Ok(report)
    }
}

fn ensure_dim_above_two(t: &Triangulation) -> Result<(), ConstructionError> {
    let s = t.surface();
    let dim = s.invariants().dim_arc_complex;
    if dim <= 2 {
        return Err(ConstructionError::DimensionTooSmall {
            genus: s.genus,
            marked_points: s.marked_points,
            dim,
        });
    }
    Ok(())
}

/// Coordinate vector crossing the listed edges once each.
fn crossing_vector(
    t: &Shared<Triangulation>,
    edges: &[usize],
) -> Result<ArcCoordinates, ArcError> {
    let mut coords = vec![0i64; t.edge_count()];
    for &e in edges {
        coords[e] += 1;
    }
    ArcCoordinates::new(t, coords)
}

// ---------------------------------------------------------------------------
// The intersection-one detector
// ---------------------------------------------------------------------------

/// The detector complex of a pair of arcs with intersection number one: the
/// full subcomplex on `T_a` and `T_b`, two triangulations sharing every arc
/// except `a` and `b`. Any locally injective map defined on a complex
/// containing it sends the pair to arcs meeting exactly once.
pub fn build_b(a: &ArcCoordinates, b: &ArcCoordinates) -> Result<FiniteComplex, ConstructionError> {
    let n = crate::arcs::intersection_number(a, b).map_err(ConstructionError::Arc)?;
    if n != 1 {
        return Err(ConstructionError::NotIntersectionOne { got: n });
    }
    // Put a on an edge, then shrink b against the rest of the triangulation
    // while keeping a fixed; b ends as the flip partner of a.
    let (mut frame, ea) = flip_path_to_contain(a).map_err(ConstructionError::Arc)?;
    let mut b_cur = frame.to_current(b).map_err(ConstructionError::Arc)?;
    loop {
        if b_cur.coordinate_sum() == 1 && b_cur.coords()[ea] == 1 {
            break;
        }
        let t = Shared::clone(frame.current());
        let mut progressed = false;
        for e in 0..t.edge_count() {
            if e == ea || !t.is_flippable(e) || b_cur.coords()[e] <= 0 {
                continue;
            }
            let moved = b_cur.transport(e).map_err(ConstructionError::Arc)?;
            if moved.coordinate_sum() < b_cur.coordinate_sum() {
                b_cur = moved;
                frame.flip(e).map_err(ConstructionError::Triangulation)?;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(ConstructionError::Precondition(format!(
                "descent toward the flip pair stalled at {:?}",
                b_cur.coords()
            )));
        }
    }
    // frame.current() is the triangulation through a; flipping a's edge
    // yields the one through b, and the union of the two is the detector.
    let mut vertices = frame.edge_arcs_in_base().map_err(ConstructionError::Arc)?;
    vertices.push(b.clone());
    let complex = build_complex(&vertices)?;
    debug_assert!(complex.index_of(a).is_some() && complex.index_of(b).is_some());
    Ok(complex)
}

// ---------------------------------------------------------------------------
// Nice triangulations
// ---------------------------------------------------------------------------

/// Locate the triangle with the given side multiset.
fn triangle_with_sides(t: &Triangulation, sides: &[usize; 3]) -> Option<usize> {
    let mut want = *sides;
    want.sort_unstable();
    t.triangles().iter().position(|tri| {
        let mut got = *tri;
        got.sort_unstable();
        got == want
    })
}

fn is_nice_for(t: &Triangulation, sides: &[usize; 3]) -> bool {
    let Some(delta) = triangle_with_sides(t, sides) else {
        return false;
    };
    let mut neighbors = Vec::new();
    for &s in sides {
        let [(t1, _), (t2, _)] = t.slots_of_edge(s).unwrap();
        let other = if t1 == delta { t2 } else { t1 };
        if other == delta {
            return false;
        }
        neighbors.push(other);
    }
    neighbors.sort_unstable();
    neighbors.dedup();
    neighbors.len() == 3
}

/// Search, by flips avoiding the triangle's own sides, for a triangulation in
/// which the three triangles adjacent to the given embedded triangle are
/// pairwise distinct (and distinct from it). Breadth-first with deterministic
/// tie-breaks; depth capped, then widened once.
pub fn nice_triangulation(frame: &Frame, tri: usize) -> Result<Frame, ConstructionError> {
    ensure_dim_above_two(frame.current())?;
    let sides = frame.current().triangles()[tri];
    if sides[0] == sides[1] || sides[0] == sides[2] || sides[1] == sides[2] {
        return Err(ConstructionError::Precondition(
            "nice triangulations are sought for embedded triangles".into(),
        ));
    }
    for depth_cap in [8usize, 12] {
        let mut queue = std::collections::VecDeque::new();
        let mut seen = std::collections::HashSet::new();
        queue.push_back(frame.clone());
        seen.insert(frame.current().as_ref().clone());
        while let Some(f) = queue.pop_front() {
            if is_nice_for(f.current(), &sides) {
                return Ok(f);
            }
            if f.path().len() - frame.path().len() >= depth_cap {
                continue;
            }
            for e in 0..f.current().edge_count() {
                if sides.contains(&e) || !f.current().is_flippable(e) {
                    continue;
                }
                let mut next = f.clone();
                next.flip(e).map_err(ConstructionError::Triangulation)?;
                if seen.insert(next.current().as_ref().clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Err(ConstructionError::NoneFound { depth: 12 })
}

// ---------------------------------------------------------------------------
// Embedded triangles
// ---------------------------------------------------------------------------

/// The detector complex of an embedded triangle: built over a nice
/// triangulation through its sides `a, b, c`, the three corner-to-corner arcs
/// of the adjacent triangles, and the six intersection-one detectors pairing
/// each side with the two corner arcs crossing it.
pub fn build_c(frame: &Frame, tri: usize) -> Result<FiniteComplex, ConstructionError> {
    ensure_dim_above_two(frame.current())?;
    let sides = frame.current().triangles()[tri];
    let [a, b, c] = sides;
    if a == b || a == c || b == c {
        return Err(ConstructionError::Precondition(
            "triangle is not embedded".into(),
        ));
    }
    let nice = nice_triangulation(frame, tri)?;
    let t = Shared::clone(nice.current());
    // Corner arcs: each crosses two of the triangle's sides once and nothing
    // else; a nice triangulation is exactly what makes these single arcs.
    let d = crossing_vector(&t, &[a, b]).map_err(ConstructionError::Arc)?;
    let e = crossing_vector(&t, &[b, c]).map_err(ConstructionError::Arc)?;
    let f = crossing_vector(&t, &[a, c]).map_err(ConstructionError::Arc)?;
    let to_base = |arc: &ArcCoordinates| nice.to_base(arc).map_err(ConstructionError::Arc);
    let (d, e, f) = (to_base(&d)?, to_base(&e)?, to_base(&f)?);
    let side_arc = |s: usize| nice.edge_arc_in_base(s).map_err(ConstructionError::Arc);
    let (a_arc, b_arc, c_arc) = (side_arc(a)?, side_arc(b)?, side_arc(c)?);

    let mut vertices = nice.edge_arcs_in_base().map_err(ConstructionError::Arc)?;
    vertices.extend([d.clone(), e.clone(), f.clone()]);
    for (x, y) in [
        (&a_arc, &d),
        (&a_arc, &f),
        (&b_arc, &d),
        (&b_arc, &e),
        (&c_arc, &e),
        (&c_arc, &f),
    ] {
        let detector = build_b(x, y)?;
        vertices.extend(detector.vertices().iter().cloned());
    }
    Ok(build_complex(&vertices)?)
}

// ---------------------------------------------------------------------------
// Non-embedded triangles
// ---------------------------------------------------------------------------

/// The detector complex of a non-embedded triangle with inner arc `a` and
/// outer arc `b`: requires an embedded triangle `(b, c, d)` across the outer
/// arc (reached by flips when necessary), the arc `e` through the outer arc,
/// the intersection-one detector of `(b, e)`, and the embedded-triangle
/// detectors of `(a, c, e)`, `(a, d, e)` and `(b, c, d)`.
pub fn build_d(frame: &Frame, tri: usize) -> Result<FiniteComplex, ConstructionError> {
    ensure_dim_above_two(frame.current())?;
    let info = frame.current().classify_triangles()[tri];
    let (Some(inner), Some(outer)) = (info.inner_edge, info.outer_edge) else {
        return Err(ConstructionError::Precondition(
            "triangle is not non-embedded".into(),
        ));
    };

    // Flip until the triangle across the outer arc is embedded, keeping the
    // non-embedded triangle itself intact.
    let mut work = frame.clone();
    let mut found = false;
    'search: for _ in 0..=12usize {
        let t = Shared::clone(work.current());
        let delta = triangle_with_sides(&t, &[inner, inner, outer]).ok_or_else(|| {
            ConstructionError::Precondition("lost the non-embedded triangle".into())
        })?;
        let [(t1, _), (t2, _)] = t.slots_of_edge(outer).unwrap();
        let other = if t1 == delta { t2 } else { t1 };
        let sides = t.triangles()[other];
        if sides[0] != sides[1] && sides[0] != sides[2] && sides[1] != sides[2] {
            found = true;
            break 'search;
        }
        // Flip the duplicated side of the neighbor when possible, otherwise
        // any flippable edge off the protected triangle.
        let mut candidates: Vec<usize> =
            sides.iter().copied().filter(|&s| s != inner && s != outer).collect();
        candidates.extend(0..t.edge_count());
        let mut flipped = false;
        for e in candidates {
            if e != inner && e != outer && t.is_flippable(e) {
                work.flip(e).map_err(ConstructionError::Triangulation)?;
                flipped = true;
                break;
            }
        }
        if !flipped {
            break 'search;
        }
    }
    if !found {
        return Err(ConstructionError::NoneFound { depth: 12 });
    }

    let t = Shared::clone(work.current());
    let delta = triangle_with_sides(&t, &[inner, inner, outer]).unwrap();
    let [(t1, _), (t2, _)] = t.slots_of_edge(outer).unwrap();
    let other = if t1 == delta { t2 } else { t1 };
    let rest: Vec<usize> = t.triangles()[other]
        .iter()
        .copied()
        .filter(|&s| s != outer)
        .collect();
    let (c, d) = (rest[0], rest[1]);

    // The arc through the outer loop, from the inner tip to the far corner.
    let e_arc = crossing_vector(&t, &[outer]).map_err(ConstructionError::Arc)?;
    let e_base = work.to_base(&e_arc).map_err(ConstructionError::Arc)?;
    let arc_of = |s: usize| work.edge_arc_in_base(s).map_err(ConstructionError::Arc);
    let (a_base, b_base, c_base, d_base) = (arc_of(inner)?, arc_of(outer)?, arc_of(c)?, arc_of(d)?);

    let mut vertices = vec![
        a_base.clone(),
        b_base.clone(),
        c_base.clone(),
        d_base.clone(),
        e_base.clone(),
    ];
    vertices.extend(build_b(&b_base, &e_base)?.vertices().iter().cloned());
    // The embedded triangle (b, c, d) sits in the working triangulation.
    vertices.extend(build_c(&work, other)?.vertices().iter().cloned());
    // The embedded triangles (a, c, e) and (a, d, e) live in completions of
    // those arc systems.
    for (side_arc, name) in [(&c_base, "c"), (&d_base, "d")] {
        let sys = vec![a_base.clone(), side_arc.clone(), e_base.clone()];
        let completion =
            complete_to_triangulation(a_base.reference(), &sys).map_err(ConstructionError::Arc)?;
        let edges = [
            completion.edge_of[0],
            completion.edge_of[1],
            completion.edge_of[2],
        ];
        let idx = triangle_with_sides(completion.frame.current(), &edges).ok_or_else(|| {
            ConstructionError::Precondition(format!(
                "arcs (a, {name}, e) do not bound a triangle in their completion"
            ))
        })?;
        vertices.extend(build_c(&completion.frame, idx)?.vertices().iter().cloned());
    }
    Ok(build_complex(&vertices)?)
}

// ---------------------------------------------------------------------------
// Orientation agreement across a shared side
// ---------------------------------------------------------------------------

/// The orientation detector for two distinct embedded triangles sharing side
/// `c`: the arc `f` crossing `c` once and nothing else, its intersection-one
/// detector with `c`, the embedded detectors of both triangles, and the
/// detector of the triangle cut off by `f` after the flip of `c` (embedded or
/// non-embedded depending on side identifications).
pub fn build_e(frame: &Frame, shared: usize) -> Result<FiniteComplex, ConstructionError> {
    ensure_dim_above_two(frame.current())?;
    let t = Shared::clone(frame.current());
    let [(t1, _), (t2, _)] = t
        .slots_of_edge(shared)
        .map_err(ConstructionError::Triangulation)?;
    if t1 == t2 {
        return Err(ConstructionError::NotAdjacent);
    }
    let infos = t.classify_triangles();
    if infos[t1].kind != TriangleKind::Embedded || infos[t2].kind != TriangleKind::Embedded {
        return Err(ConstructionError::Precondition(
            "both triangles on the shared side must be embedded".into(),
        ));
    }
    let f_arc = crossing_vector(&t, &[shared]).map_err(ConstructionError::Arc)?;
    let f_base = frame.to_base(&f_arc).map_err(ConstructionError::Arc)?;
    let c_base = frame
        .edge_arc_in_base(shared)
        .map_err(ConstructionError::Arc)?;

    let mut vertices: Vec<ArcCoordinates> = Vec::new();
    for e in t.triangles()[t1].iter().chain(t.triangles()[t2].iter()) {
        vertices.push(frame.edge_arc_in_base(*e).map_err(ConstructionError::Arc)?);
    }
    vertices.push(f_base.clone());
    vertices.extend(build_b(&c_base, &f_base)?.vertices().iter().cloned());
    vertices.extend(build_c(frame, t1)?.vertices().iter().cloned());
    vertices.extend(build_c(frame, t2)?.vertices().iter().cloned());

    // After flipping the shared side, `f` becomes the new edge and the two
    // new triangles are cut off by it; their type depends on identifications
    // among the square's sides.
    let mut flipped = frame.clone();
    flipped
        .flip(shared)
        .map_err(ConstructionError::Triangulation)?;
    let ft = Shared::clone(flipped.current());
    let [(n1, _), (n2, _)] = ft.slots_of_edge(shared).unwrap();
    let pick = n1.min(n2);
    let k = match ft.classify_triangles()[pick].kind {
        TriangleKind::Embedded => build_c(&flipped, pick)?,
        TriangleKind::NonEmbedded => build_d(&flipped, pick)?,
    };
    vertices.extend(k.vertices().iter().cloned());
    Ok(build_complex(&vertices)?)
}

// ---------------------------------------------------------------------------
// Candidate homeomorphism support and the rigid set
// ---------------------------------------------------------------------------

/// Union of the per-triangle and per-side detector complexes of a whole
/// triangulation, with a provenance tag per contributing construction.
pub fn build_f(
    frame: &Frame,
) -> Result<(FiniteComplex, Vec<(ArcCoordinates, String)>), ConstructionError> {
    ensure_dim_above_two(frame.current())?;
    let t = Shared::clone(frame.current());
    let mut tagged: Vec<(ArcCoordinates, String)> = Vec::new();
    for e in 0..t.edge_count() {
        tagged.push((
            frame.edge_arc_in_base(e).map_err(ConstructionError::Arc)?,
            "T".to_string(),
        ));
    }
    let infos = t.classify_triangles();
    for info in &infos {
        let (cx, tag) = match info.kind {
            TriangleKind::Embedded => (build_c(frame, info.index)?, format!("C({})", info.index)),
            TriangleKind::NonEmbedded => {
                (build_d(frame, info.index)?, format!("D({})", info.index))
            }
        };
        tagged.extend(cx.vertices().iter().cloned().map(|v| (v, tag.clone())));
    }
    for e in 0..t.edge_count() {
        let [(t1, _), (t2, _)] = t.slots_of_edge(e).unwrap();
        if t1 == t2 {
            continue;
        }
        if infos[t1].kind == TriangleKind::Embedded && infos[t2].kind == TriangleKind::Embedded {
            let cx = build_e(frame, e)?;
            tagged.extend(cx.vertices().iter().cloned().map(|v| (v, format!("E({e})"))));
        }
    }
    let arcs: Vec<ArcCoordinates> = tagged.iter().map(|(a, _)| a.clone()).collect();
    let complex = build_complex(&arcs)?;
    Ok((complex, tagged))
}

/// The rigid set of a triangulation: the candidate-homeomorphism support
/// complex together with, for every vertex, a flip path from the base whose
/// intermediate triangulations all stay inside the set.
pub fn build_x(base: &Shared<Triangulation>) -> Result<RigidSetReport, ConstructionError> {
    let frame = Frame::new(Shared::clone(base));
    let (f_complex, tagged) = build_f(&frame)?;

    // Record the greedy path of every vertex of the support complex and add
    // every triangulation along those paths.
    let mut all: Vec<(ArcCoordinates, String)> = tagged;
    let mut paths_data: Vec<(Frame, ArcCoordinates)> = Vec::new();
    for v in f_complex.vertices() {
        let (path_frame, _) = flip_path_to_contain(v).map_err(ConstructionError::Arc)?;
        paths_data.push((path_frame, v.clone()));
    }
    for (path_frame, _) in &paths_data {
        let mut replay = Frame::new(Shared::clone(base));
        for arc in replay.edge_arcs_in_base().map_err(ConstructionError::Arc)? {
            all.push((arc, "X".into()));
        }
        for &e in path_frame.path() {
            replay.flip(e).map_err(ConstructionError::Triangulation)?;
            for arc in replay.edge_arcs_in_base().map_err(ConstructionError::Arc)? {
                all.push((arc, "X".into()));
            }
        }
    }
    let arcs: Vec<ArcCoordinates> = all.iter().map(|(a, _)| a.clone()).collect();
    let complex = Shared::new(build_complex(&arcs)?);

    // First tag wins; the T/C/D/E tags precede the closure tags.
    let mut provenance = vec![String::new(); complex.vertex_count()];
    for (arc, tag) in &all {
        if let Some(i) = complex.index_of(arc) {
            if provenance[i].is_empty() {
                provenance[i] = tag.clone();
            }
        }
    }

    let flip_paths = require_all(assign_paths(base, &complex, &paths_data)?)?;
    let report = RigidSetReport {
        base: Shared::clone(base),
        complex,
        flip_paths,
        provenance,
    };
    report.validate()?;
    Ok(report)
}

/// Assign each vertex the shortest prefix of the first recorded path whose
/// endpoint triangulation contains it; base arcs get the empty path. Vertices
/// on no recorded path stay unassigned.
fn assign_paths(
    base: &Shared<Triangulation>,
    complex: &Shared<FiniteComplex>,
    paths_data: &[(Frame, ArcCoordinates)],
) -> Result<Vec<Option<FlipPath>>, ConstructionError> {
    let mut assigned: Vec<Option<FlipPath>> = vec![None; complex.vertex_count()];
    let empty = FlipPath::empty(base);
    let mut claim = |arc: &ArcCoordinates, path: &FlipPath, assigned: &mut Vec<Option<FlipPath>>| {
        if let Some(i) = complex.index_of(arc) {
            if assigned[i].is_none() {
                assigned[i] = Some(path.clone());
            }
        }
    };
    {
        let f = Frame::new(Shared::clone(base));
        for arc in f.edge_arcs_in_base().map_err(ConstructionError::Arc)? {
            claim(&arc, &empty, &mut assigned);
        }
    }
    for (path_frame, _) in paths_data {
        let mut replay = Frame::new(Shared::clone(base));
        for (k, &e) in path_frame.path().iter().enumerate() {
            replay.flip(e).map_err(ConstructionError::Triangulation)?;
            let prefix = FlipPath {
                root_digest: base.digest(),
                flips: path_frame.path()[..=k].to_vec(),
            };
            for arc in replay.edge_arcs_in_base().map_err(ConstructionError::Arc)? {
                claim(&arc, &prefix, &mut assigned);
            }
        }
    }
    Ok(assigned)
}

fn require_all(paths: Vec<Option<FlipPath>>) -> Result<Vec<FlipPath>, ConstructionError> {
    let missing: Vec<usize> = paths
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_none())
        .map(|(i, _)| i)
        .collect();
    if !missing.is_empty() {
        return Err(ConstructionError::Precondition(format!(
            "vertices {missing:?} lie on no recorded path"
        )));
    }
    Ok(paths.into_iter().map(|p| p.unwrap()).collect())
}

/// Extend a rigid set by one arc along its greedy flip path, taking the span
/// closure of the union. The result contains the previous complex.
pub fn exhaustion_step(
    prev: &RigidSetReport,
    x: &ArcCoordinates,
) -> Result<RigidSetReport, ConstructionError> {
    let base = &prev.base;
    let (path_frame, _) = flip_path_to_contain(x).map_err(ConstructionError::Arc)?;
    let mut arcs: Vec<ArcCoordinates> = prev.complex.vertices().to_vec();
    let mut replay = Frame::new(Shared::clone(base));
    arcs.extend(replay.edge_arcs_in_base().map_err(ConstructionError::Arc)?);
    for &e in path_frame.path() {
        replay.flip(e).map_err(ConstructionError::Triangulation)?;
        arcs.extend(replay.edge_arcs_in_base().map_err(ConstructionError::Arc)?);
    }
    let complex = Shared::new(build_complex(&arcs)?);
    // Carry over previous paths; new vertices get prefixes of the new path.
    let mut provenance = vec![String::new(); complex.vertex_count()];
    let mut assigned: Vec<Option<FlipPath>> = vec![None; complex.vertex_count()];
    for (old_idx, arc) in prev.complex.vertices().iter().enumerate() {
        if let Some(i) = complex.index_of(arc) {
            assigned[i] = Some(prev.flip_paths[old_idx].clone());
            provenance[i] = prev.provenance[old_idx].clone();
        }
    }
    let fallback = assign_paths(base, &complex, &[(path_frame, x.clone())])?;
    for i in 0..assigned.len() {
        if assigned[i].is_none() {
            assigned[i] = fallback[i].clone();
        }
        if provenance[i].is_empty() {
            provenance[i] = "X".into();
        }
    }
    let report = RigidSetReport {
        base: Shared::clone(base),
        complex,
        flip_paths: require_all(assigned)?,
        provenance,
    };
    report.validate()?;
    Ok(report)
}

/// Vertex counts by provenance tag.
pub fn provenance_summary(report: &RigidSetReport) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for tag in &report.provenance {
        *out.entry(tag.clone()).or_insert(0) += 1;
    }
    out
}
