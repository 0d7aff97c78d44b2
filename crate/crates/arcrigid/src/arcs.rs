//! Isotopy classes of arcs as edge-intersection coordinate vectors.
//!
//! An arc is encoded against a reference triangulation by its geometric
//! intersection numbers with the triangulation's edges. An arc isotopic to
//! edge `e` is the sentinel vector with `-1` at `e` and zeros elsewhere; every
//! other essential arc has a nonnegative vector satisfying, in each triangle,
//! the matching conditions of a single properly embedded arc with endpoints
//! at marked points.
//!
//! Inside a triangle the strands of an arc decompose into corner segments
//! (cutting off one corner) and vertex segments (running from a corner to the
//! opposite side); a single arc has exactly two vertex segments in total, one
//! per endpoint. Validity checking, flip transport and the intersection
//! pairing all work on this segment decomposition, so they stay exact on
//! self-glued configurations where closed-form update rules break down.

use std::sync::Arc as Shared;

use crate::error::{ArcError, TriangulationError};
use crate::surface::Surface;
use crate::triangulation::{base_triangulation, Triangulation};

/// Edge-intersection coordinates of one isotopy class of essential arc.
#[derive(Clone, Debug)]
pub struct ArcCoordinates {
    reference: Shared<Triangulation>,
    coords: Vec<i64>,
}

/// A sequence of flips rooted at a triangulation. Every prefix is applicable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlipPath {
    pub root_digest: String,
    pub flips: Vec<usize>,
}

impl FlipPath {
    pub fn empty(root: &Triangulation) -> Self {
        FlipPath {
            root_digest: root.digest(),
            flips: Vec::new(),
        }
    }

    pub fn apply(&self, root: &Triangulation) -> Result<Triangulation, TriangulationError> {
        let mut t = root.clone();
        for &e in &self.flips {
            t = t.flip(e)?;
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Per-triangle segment decomposition
// ---------------------------------------------------------------------------

/// Counts of normal segments inside one triangle: `corner[k]` corner segments
/// cutting off corner `k`, plus `v` vertex segments from `vertex_corner` to
/// the opposite side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct TriDecomp {
    corner: [i64; 3],
    vertex_corner: usize,
    v: i64,
}

/// Solve the matching conditions for side values `m`: side `s` carries
/// `corner[s] + corner[s+1]` corner-segment ends plus the vertex segments
/// from the opposite corner `s+2`. Returns `None` when no decomposition
/// exists.
fn decompose(m: [i64; 3]) -> Option<TriDecomp> {
    if m.iter().any(|&x| x < 0) {
        return None;
    }
    let sum: i64 = m.iter().sum();
    let (smax, &mmax) = m.iter().enumerate().max_by_key(|&(_, &x)| x).unwrap();
    if 2 * mmax > sum {
        // One side exceeds the other two: vertex segments from the corner
        // opposite it. With corner[j] = 0 the side equations give
        //   m[j] = corner[j+1],  m[j+2] = corner[j+2],
        //   m[j+1] = corner[j+1] + corner[j+2] + v.
        let j = (smax + 2) % 3;
        let mut corner = [0i64; 3];
        corner[(j + 1) % 3] = m[j];
        corner[(j + 2) % 3] = m[(j + 2) % 3];
        let v = m[(j + 1) % 3] - m[j] - m[(j + 2) % 3];
        debug_assert!(v > 0);
        Some(TriDecomp {
            corner,
            vertex_corner: j,
            v,
        })
    } else {
        if sum % 2 != 0 {
            return None;
        }
        let c0 = (m[0] - m[1] + m[2]) / 2;
        let c1 = (m[0] + m[1] - m[2]) / 2;
        let c2 = (-m[0] + m[1] + m[2]) / 2;
        if c0 < 0 || c1 < 0 || c2 < 0 {
            return None;
        }
        Some(TriDecomp {
            corner: [c0, c1, c2],
            vertex_corner: 0,
            v: 0,
        })
    }
}

/// One end of a normal segment, tagged with the slot it lies on so that edges
/// occupying two sides of the same square stay distinguishable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SegEnd {
    Point {
        edge: usize,
        /// Index along the edge; points are numbered along the traversal of
        /// the edge's first slot, and the second slot runs backwards.
        point: i64,
        tri: usize,
        side: usize,
    },
    /// A vertex-segment end at corner `(triangle, corner)`.
    Corner(usize, usize),
}

impl SegEnd {
    fn point_on(&self, e: usize) -> Option<i64> {
        match *self {
            SegEnd::Point { edge, point, .. } if edge == e => Some(point),
            _ => None,
        }
    }
}

fn slot_point(t: &Triangulation, coords: &[i64], tri: usize, side: usize, pos: i64) -> SegEnd {
    let e = t.triangles()[tri][side];
    let [s1, _] = t.slots_of_edge(e).unwrap();
    let point = if s1 == (tri, side) {
        pos
    } else {
        coords[e] - 1 - pos
    };
    SegEnd::Point {
        edge: e,
        point,
        tri,
        side,
    }
}

/// All normal segments of one triangle under a decomposition.
///
/// Occupancy along side `s`, in traversal order: first `corner[s]` ends of
/// corner segments at corner `s`, then the vertex segments from corner `s+2`
/// (when present), then `corner[s+1]` ends of corner segments at corner
/// `s+1`.
fn triangle_segments(
    t: &Triangulation,
    coords: &[i64],
    tri: usize,
    d: &TriDecomp,
) -> Vec<(SegEnd, SegEnd)> {
    let m = |s: usize| coords[t.triangles()[tri][s]];
    let mut segs = Vec::new();
    for k in 0..3 {
        // Corner segments at corner k join side k-1 (near its end) with side
        // k (near its start).
        let prev = (k + 2) % 3;
        for i in 0..d.corner[k] {
            let a = slot_point(t, coords, tri, prev, m(prev) - 1 - i);
            let b = slot_point(t, coords, tri, k, i);
            segs.push((a, b));
        }
    }
    if d.v > 0 {
        let j = d.vertex_corner;
        let side = (j + 1) % 3;
        for i in 0..d.v {
            let b = slot_point(t, coords, tri, side, d.corner[side] + i);
            segs.push((SegEnd::Corner(tri, j), b));
        }
    }
    segs
}

impl ArcCoordinates {
    /// The arc isotopic to edge `e` of the reference.
    pub fn edge_arc(reference: &Shared<Triangulation>, e: usize) -> Result<Self, ArcError> {
        if e >= reference.edge_count() {
            return Err(ArcError::OutOfRange {
                edge: e,
                edge_count: reference.edge_count(),
            });
        }
        let mut coords = vec![0i64; reference.edge_count()];
        coords[e] = -1;
        Ok(ArcCoordinates {
            reference: Shared::clone(reference),
            coords,
        })
    }

    /// Validate and wrap a coordinate vector.
    pub fn new(reference: &Shared<Triangulation>, coords: Vec<i64>) -> Result<Self, ArcError> {
        if coords.len() != reference.edge_count() {
            return Err(ArcError::LengthMismatch {
                got: coords.len(),
                expected: reference.edge_count(),
            });
        }
        validate_coords(reference, &coords)?;
        Ok(ArcCoordinates {
            reference: Shared::clone(reference),
            coords,
        })
    }

    pub(crate) fn new_unchecked(reference: Shared<Triangulation>, coords: Vec<i64>) -> Self {
        debug_assert!(
            coords.is_empty() || validate_coords(&reference, &coords).is_ok(),
            "invalid coordinates {coords:?}"
        );
        ArcCoordinates { reference, coords }
    }

    pub fn reference(&self) -> &Shared<Triangulation> {
        &self.reference
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// The edge this arc is isotopic to, when it is one.
    pub fn sentinel_edge(&self) -> Option<usize> {
        self.coords.iter().position(|&x| x == -1)
    }

    /// Sum of the nonnegative entries; zero exactly for edge arcs.
    pub fn coordinate_sum(&self) -> i64 {
        self.coords.iter().filter(|&&x| x > 0).sum()
    }

    /// Re-express this arc in the triangulation obtained by flipping edge `e`
    /// of the reference. Transporting back across the same flip restores the
    /// original vector.
    pub fn transport(&self, e: usize) -> Result<ArcCoordinates, ArcError> {
        let new_ref = Shared::new(self.reference.flip(e)?);
        // Edge arcs: the flipped diagonal becomes the unique arc crossing the
        // new edge once; any other edge arc survives as an edge.
        if let Some(x) = self.sentinel_edge() {
            let mut coords = vec![0i64; self.coords.len()];
            if x == e {
                coords[e] = 1;
            } else {
                coords[x] = -1;
            }
            return Ok(ArcCoordinates {
                reference: new_ref,
                coords,
            });
        }
        let new_e = transported_diagonal_count(&self.reference, &self.coords, e)?;
        let mut coords = self.coords.clone();
        coords[e] = new_e;
        if new_e == -1 {
            debug_assert!(
                coords.iter().enumerate().all(|(i, &x)| i == e || x == 0),
                "arc parallel to the new diagonal must cross nothing else"
            );
        }
        Ok(ArcCoordinates {
            reference: new_ref,
            coords,
        })
    }

    /// Transport along a whole flip path.
    pub fn transport_along(&self, flips: &[usize]) -> Result<ArcCoordinates, ArcError> {
        let mut a = self.clone();
        for &e in flips {
            a = a.transport(e)?;
        }
        Ok(a)
    }
}

impl PartialEq for ArcCoordinates {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
            && (Shared::ptr_eq(&self.reference, &other.reference)
                || self.reference == other.reference)
    }
}
impl Eq for ArcCoordinates {}

impl std::hash::Hash for ArcCoordinates {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for ArcCoordinates {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ArcCoordinates {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords
            .cmp(&other.coords)
            .then_with(|| self.reference.cmp(&other.reference))
    }
}

/// Check that `coords` encodes a single essential arc against `t`.
fn validate_coords(t: &Triangulation, coords: &[i64]) -> Result<(), ArcError> {
    let neg: Vec<usize> = coords
        .iter()
        .enumerate()
        .filter(|(_, &x)| x < 0)
        .map(|(i, _)| i)
        .collect();
    if !neg.is_empty() {
        let ok = neg.len() == 1
            && coords[neg[0]] == -1
            && coords.iter().enumerate().all(|(i, &x)| i == neg[0] || x == 0);
        if ok {
            return Ok(());
        }
        return Err(ArcError::InvalidCoordinates {
            reason: "negative entries other than a single -1 sentinel".into(),
        });
    }
    if coords.iter().all(|&x| x == 0) {
        return Err(ArcError::InvalidCoordinates {
            reason: "zero vector (edge arcs use the -1 sentinel)".into(),
        });
    }
    // Per-triangle decompositions; exactly two vertex segments overall.
    let mut segs: Vec<(SegEnd, SegEnd)> = Vec::new();
    let mut total_v = 0i64;
    for (ti, triple) in t.triangles().iter().enumerate() {
        let m = [coords[triple[0]], coords[triple[1]], coords[triple[2]]];
        let d = decompose(m).ok_or_else(|| ArcError::InvalidCoordinates {
            reason: format!("triangle {ti} admits no segment matching"),
        })?;
        total_v += d.v;
        segs.extend(triangle_segments(t, coords, ti, &d));
    }
    if total_v != 2 {
        return Err(ArcError::InvalidCoordinates {
            reason: format!("expected 2 vertex segments, found {total_v}"),
        });
    }
    trace_single_arc(t, coords, &segs).map_err(|reason| ArcError::InvalidCoordinates { reason })
}

/// Walk the segment graph from one vertex segment; succeed when the walk ends
/// at the other vertex segment having consumed every segment (no closed
/// components, no pinched points).
fn trace_single_arc(
    t: &Triangulation,
    coords: &[i64],
    segs: &[(SegEnd, SegEnd)],
) -> Result<(), String> {
    let mut offset = vec![0usize; t.edge_count() + 1];
    for e in 0..t.edge_count() {
        offset[e + 1] = offset[e] + coords[e].max(0) as usize;
    }
    let node = |end: &SegEnd| -> Option<usize> {
        match end {
            SegEnd::Point { edge, point, .. } => Some(offset[*edge] + *point as usize),
            SegEnd::Corner(..) => None,
        }
    };
    let total_points = offset[t.edge_count()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); total_points];
    let mut start = None;
    for (si, seg) in segs.iter().enumerate() {
        for end in [&seg.0, &seg.1] {
            match node(end) {
                Some(nid) => incident[nid].push(si),
                None => {
                    if start.is_none() {
                        start = Some(si);
                    }
                }
            }
        }
    }
    if incident.iter().any(|v| v.len() != 2) {
        return Err("an edge point is not met by exactly two segment ends".into());
    }
    let start = start.ok_or_else(|| "no vertex segment to start from".to_string())?;
    let mut visited = vec![false; segs.len()];
    let mut cur = start;
    let mut enter_via: Option<usize> = None;
    let mut count = 0usize;
    loop {
        visited[cur] = true;
        count += 1;
        let (a, b) = (&segs[cur].0, &segs[cur].1);
        let exit = match (node(a), node(b)) {
            (None, None) => None, // corner-to-corner: the whole arc
            (Some(x), None) | (None, Some(x)) => {
                if enter_via == Some(x) {
                    None
                } else {
                    Some(x)
                }
            }
            (Some(x), Some(y)) => {
                if x == y {
                    // A segment looping back to the same edge point encircles
                    // a marked point; not part of an embedded arc.
                    return Err("segment returns to its own edge point".into());
                }
                if enter_via == Some(x) {
                    Some(y)
                } else {
                    Some(x)
                }
            }
        };
        match exit {
            None => break,
            Some(nid) => {
                let pair = &incident[nid];
                let next = if pair[0] == cur { pair[1] } else { pair[0] };
                if next == cur || visited[next] {
                    return Err("trace closed up before consuming the arc".into());
                }
                enter_via = Some(nid);
                cur = next;
            }
        }
    }
    if count != segs.len() {
        return Err("coordinates contain closed components".into());
    }
    Ok(())
}

/// Exact crossing count of the arc with the new diagonal of the square around
/// flippable edge `e`. Returns `-1` when the arc is the new diagonal itself.
///
/// The strands of the arc inside the square are rebuilt from the segment
/// decompositions of the two triangles, stitched along the crossings of `e`.
/// Labelling the square corners 1..4 with the old diagonal 1-3 and the new
/// one 2-4, the new diagonal separates a region holding corner 1 and the
/// sides after `e` in each triangle from a region holding corner 3 and the
/// sides before it. A strand crosses the new diagonal exactly when its two
/// endpoints lie in different regions; strands ending at corners 2 or 4 reach
/// the diagonal's own endpoints and cross nothing, and a strand joining
/// corners 2 and 4 is the new diagonal itself.
fn transported_diagonal_count(
    t: &Triangulation,
    coords: &[i64],
    e: usize,
) -> Result<i64, ArcError> {
    let [(t1, s1), (t2, s2)] = t.slots_of_edge(e)?;
    if t1 == t2 {
        return Err(TriangulationError::NotFlippable { edge: e }.into());
    }

    let mut segs: Vec<(SegEnd, SegEnd)> = Vec::new();
    for &tri in &[t1, t2] {
        let triple = t.triangles()[tri];
        let m = [coords[triple[0]], coords[triple[1]], coords[triple[2]]];
        let d = decompose(m).ok_or_else(|| ArcError::InvalidCoordinates {
            reason: format!("triangle {tri} admits no segment matching"),
        })?;
        segs.extend(triangle_segments(t, coords, tri, &d));
    }

    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    enum Region {
        A,        // corner 1 side: slots (t1, s1+2) and (t2, s2+1)
        B,        // corner 3 side: slots (t1, s1+1) and (t2, s2+2)
        Diagonal, // corners 2 and 4
    }
    let region_of = |end: &SegEnd| -> Option<Region> {
        match *end {
            SegEnd::Point { edge, tri, side, .. } => {
                if edge == e {
                    return None; // interior stitch point
                }
                let slot = (tri, side);
                if slot == (t1, (s1 + 1) % 3) || slot == (t2, (s2 + 2) % 3) {
                    Some(Region::B)
                } else if slot == (t1, (s1 + 2) % 3) || slot == (t2, (s2 + 1) % 3) {
                    Some(Region::A)
                } else {
                    unreachable!("strand endpoint outside the square")
                }
            }
            SegEnd::Corner(tri, c) => {
                if (tri, c) == (t1, s1) || (tri, c) == (t2, (s2 + 1) % 3) {
                    Some(Region::A) // square corner 1
                } else if (tri, c) == (t1, (s1 + 1) % 3) || (tri, c) == (t2, s2) {
                    Some(Region::B) // square corner 3
                } else {
                    Some(Region::Diagonal) // square corners 2 and 4
                }
            }
        }
    };

    // Stitch table over the crossings of `e`.
    let w = coords[e].max(0) as usize;
    let mut on_e: Vec<Vec<usize>> = vec![Vec::new(); w];
    for (si, seg) in segs.iter().enumerate() {
        for end in [&seg.0, &seg.1] {
            if let Some(p) = end.point_on(e) {
                on_e[p as usize].push(si);
            }
        }
    }
    if on_e.iter().any(|v| v.len() != 2 || v[0] == v[1]) {
        return Err(ArcError::InvalidCoordinates {
            reason: "crossings of the flipped edge are not properly stitched".into(),
        });
    }

    let mut visited = vec![false; segs.len()];
    let mut crossings = 0i64;
    let mut diagonal_strand = false;
    for s0 in 0..segs.len() {
        if visited[s0] {
            continue;
        }
        let (r0, r1) = (region_of(&segs[s0].0), region_of(&segs[s0].1));
        let (first, mut cur_end) = match (r0, r1) {
            (Some(r), _) => (r, segs[s0].1),
            (None, Some(r)) => (r, segs[s0].0),
            (None, None) => continue, // both ends stitched; consumed later
        };
        visited[s0] = true;
        let mut cur_seg = s0;
        let last = loop {
            match region_of(&cur_end) {
                Some(r) => break r,
                None => {
                    let p = cur_end.point_on(e).unwrap() as usize;
                    let pair = &on_e[p];
                    let next = if pair[0] == cur_seg { pair[1] } else { pair[0] };
                    visited[next] = true;
                    let seg = &segs[next];
                    cur_end = if seg.0.point_on(e) == Some(p as i64) {
                        seg.1
                    } else {
                        seg.0
                    };
                    cur_seg = next;
                }
            }
        };
        match (first, last) {
            (Region::A, Region::B) | (Region::B, Region::A) => crossings += 1,
            (Region::Diagonal, Region::Diagonal) => diagonal_strand = true,
            _ => {}
        }
    }
    if visited.iter().any(|&v| !v) {
        return Err(ArcError::InvalidCoordinates {
            reason: "closed strand inside the flip square".into(),
        });
    }
    if diagonal_strand {
        if crossings != 0 {
            return Err(ArcError::InvalidCoordinates {
                reason: "diagonal strand coexists with other crossings".into(),
            });
        }
        return Ok(-1);
    }
    Ok(crossings)
}

// ---------------------------------------------------------------------------
// Frames: triangulations reached from a base by a flip path
// ---------------------------------------------------------------------------

/// A triangulation reached from a base by a recorded flip path, with
/// transport of arcs between the two coordinate systems.
#[derive(Clone, Debug)]
pub struct Frame {
    stages: Vec<Shared<Triangulation>>,
    path: Vec<usize>,
}

impl Frame {
    pub fn new(base: Shared<Triangulation>) -> Self {
        Frame {
            stages: vec![base],
            path: Vec::new(),
        }
    }

    pub fn base(&self) -> &Shared<Triangulation> {
        &self.stages[0]
    }

    pub fn current(&self) -> &Shared<Triangulation> {
        self.stages.last().unwrap()
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn flip_path(&self) -> FlipPath {
        FlipPath {
            root_digest: self.base().digest(),
            flips: self.path.clone(),
        }
    }

    pub fn flip(&mut self, e: usize) -> Result<(), TriangulationError> {
        let next = self.current().flip(e)?;
        self.stages.push(Shared::new(next));
        self.path.push(e);
        Ok(())
    }

    /// Express a base arc in the current triangulation.
    pub fn to_current(&self, arc: &ArcCoordinates) -> Result<ArcCoordinates, ArcError> {
        if arc.reference() != self.base() {
            return Err(ArcError::ReferenceMismatch);
        }
        arc.transport_along(&self.path)
    }

    /// Express an arc given in the current triangulation against the base.
    pub fn to_base(&self, arc: &ArcCoordinates) -> Result<ArcCoordinates, ArcError> {
        if arc.reference() != self.current() {
            return Err(ArcError::ReferenceMismatch);
        }
        let mut a = arc.clone();
        for &e in self.path.iter().rev() {
            a = a.transport(e)?;
        }
        Ok(a)
    }

    /// Edge `e` of the current triangulation as an arc in base coordinates.
    pub fn edge_arc_in_base(&self, e: usize) -> Result<ArcCoordinates, ArcError> {
        let sentinel = ArcCoordinates::edge_arc(self.current(), e)?;
        self.to_base(&sentinel)
    }

    /// All edges of the current triangulation in base coordinates.
    pub fn edge_arcs_in_base(&self) -> Result<Vec<ArcCoordinates>, ArcError> {
        (0..self.current().edge_count())
            .map(|e| self.edge_arc_in_base(e))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Flip descent
// ---------------------------------------------------------------------------

/// A flip path from the arc's reference to a triangulation containing the arc
/// as an edge, together with the edge id it ends up on.
///
/// Greedy descent: at each step flip the smallest-id edge whose flip strictly
/// reduces the arc's total intersection with the triangulation. The total
/// strictly decreases, so the walk terminates.
pub fn flip_path_to_contain(arc: &ArcCoordinates) -> Result<(Frame, usize), ArcError> {
    flip_path_avoiding(arc, &[])
}

/// Same as [`flip_path_to_contain`] but never flipping the listed edges.
pub fn flip_path_avoiding(
    arc: &ArcCoordinates,
    forbidden: &[usize],
) -> Result<(Frame, usize), ArcError> {
    let mut frame = Frame::new(Shared::clone(arc.reference()));
    let mut cur = arc.clone();
    loop {
        if let Some(e) = cur.sentinel_edge() {
            return Ok((frame, e));
        }
        let t = Shared::clone(frame.current());
        let mut best: Option<usize> = None;
        for e in 0..t.edge_count() {
            if forbidden.contains(&e) || !t.is_flippable(e) {
                continue;
            }
            if cur.coords()[e] <= 0 {
                // A flip here can only keep or raise the total.
                continue;
            }
            let new_e = transported_diagonal_count(&t, cur.coords(), e)?;
            if new_e < cur.coords()[e] {
                best = Some(e);
                break; // smallest edge id wins
            }
        }
        let e = best.ok_or_else(|| ArcError::DescentStalled {
            coords: cur.coords().to_vec(),
        })?;
        cur = cur.transport(e)?;
        frame.flip(e).map_err(ArcError::NotFlippable)?;
    }
}

// ---------------------------------------------------------------------------
// Intersection numbers
// ---------------------------------------------------------------------------

/// Geometric intersection number of two arcs over a common reference.
///
/// Flips the first arc into a triangulation as an edge and reads the second
/// arc's transported coordinate there; isotopic arcs give zero.
pub fn intersection_number(a: &ArcCoordinates, b: &ArcCoordinates) -> Result<u64, ArcError> {
    if a.reference() != b.reference() {
        return Err(ArcError::ReferenceMismatch);
    }
    if a == b {
        return Ok(0);
    }
    let (frame, e) = flip_path_to_contain(a)?;
    let b_there = frame.to_current(b)?;
    let c = b_there.coords()[e];
    Ok(if c < 0 { 0 } else { c as u64 })
}

// ---------------------------------------------------------------------------
// Arc enumeration
// ---------------------------------------------------------------------------

/// All arcs whose coordinate sum against the base triangulation of `s` is at
/// most `bound`. Monotone in `bound`; exhaustive for surfaces with a finite
/// arc complex once the bound passes their maximum.
pub fn enumerate_arcs(s: Surface, bound: i64) -> Result<Vec<ArcCoordinates>, ArcError> {
    if s.is_empty_complex() {
        return Err(ArcError::EmptyComplex);
    }
    if !s.has_triangulation() {
        // S_{0,2}: the single essential arc, represented over the empty edge
        // set.
        let t = Shared::new(Triangulation::degenerate_two_marked_sphere());
        return Ok(vec![ArcCoordinates {
            reference: t,
            coords: Vec::new(),
        }]);
    }
    let base = Shared::new(base_triangulation(s).map_err(ArcError::NotFlippable)?);
    enumerate_arcs_in(&base, bound)
}

/// All arcs with coordinate sum at most `bound` against a given reference.
pub fn enumerate_arcs_in(
    base: &Shared<Triangulation>,
    bound: i64,
) -> Result<Vec<ArcCoordinates>, ArcError> {
    let e = base.edge_count();
    let mut out: Vec<ArcCoordinates> = (0..e)
        .map(|i| ArcCoordinates::edge_arc(base, i).unwrap())
        .collect();
    let mut coords = vec![0i64; e];
    scan(base, &mut coords, 0, bound, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

fn scan(
    base: &Shared<Triangulation>,
    coords: &mut Vec<i64>,
    idx: usize,
    budget: i64,
    out: &mut Vec<ArcCoordinates>,
) {
    if idx == coords.len() {
        if coords.iter().any(|&x| x > 0) && validate_coords(base, coords).is_ok() {
            out.push(ArcCoordinates {
                reference: Shared::clone(base),
                coords: coords.clone(),
            });
        }
        return;
    }
    for v in 0..=budget {
        coords[idx] = v;
        scan(base, coords, idx + 1, budget - v, out);
    }
    coords[idx] = 0;
}

// ---------------------------------------------------------------------------
// Completing disjoint systems to triangulations
// ---------------------------------------------------------------------------

/// Result of completing a disjoint arc system.
#[derive(Clone, Debug)]
pub struct Completion {
    /// Frame from the reference to a triangulation containing every input
    /// arc as an edge.
    pub frame: Frame,
    /// Edge id carrying each input arc, parallel to the input order.
    pub edge_of: Vec<usize>,
    /// For codimension-one input: every arc completing the system (two in
    /// general, one when the open slot is the inner arc of a non-embedded
    /// triangle). The first entry is the completion realized by `frame`.
    pub codim1_completions: Option<Vec<ArcCoordinates>>,
}

/// Complete a set of pairwise disjoint arcs to a triangulation containing
/// them.
pub fn complete_to_triangulation(
    reference: &Shared<Triangulation>,
    arcs: &[ArcCoordinates],
) -> Result<Completion, ArcError> {
    for a in arcs {
        if a.reference() != reference {
            return Err(ArcError::ReferenceMismatch);
        }
    }
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            let n = intersection_number(&arcs[i], &arcs[j])?;
            if n != 0 {
                return Err(ArcError::NotDisjoint {
                    first: i,
                    second: j,
                    count: n,
                });
            }
        }
    }
    let mut frame = Frame::new(Shared::clone(reference));
    let mut placed: Vec<usize> = Vec::new();
    let mut edge_of = vec![usize::MAX; arcs.len()];
    // Deterministic processing order.
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by(|&i, &j| arcs[i].cmp(&arcs[j]));
    for &i in &order {
        let here = frame.to_current(&arcs[i])?;
        // The greedy step only flips edges the arc crosses, and the arc is
        // disjoint from every placed arc, so placed edges are never flipped;
        // the explicit guard documents the invariant.
        let (subframe, e) = flip_path_avoiding(&here, &placed)?;
        for &f in subframe.path() {
            frame.flip(f).map_err(ArcError::NotFlippable)?;
        }
        edge_of[i] = e;
        placed.push(e);
    }
    let codim1_completions = if arcs.len() + 1 == reference.edge_count() {
        let extra = (0..frame.current().edge_count())
            .find(|e| !placed.contains(e))
            .expect("exactly one unplaced edge");
        let first = frame.edge_arc_in_base(extra)?;
        if frame.current().is_flippable(extra) {
            let mut alt = frame.clone();
            alt.flip(extra).map_err(ArcError::NotFlippable)?;
            let second = alt.edge_arc_in_base(extra)?;
            Some(vec![first, second])
        } else {
            Some(vec![first])
        }
    } else {
        None
    };
    Ok(Completion {
        frame,
        edge_of,
        codim1_completions,
    })
}
