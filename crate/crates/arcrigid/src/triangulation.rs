//! Labelled combinatorial triangulations of marked surfaces.
//!
//! A triangulation is stored as a coherently oriented gluing of triangles:
//! each triangle is an ordered triple of edge ids, read along the triangle
//! boundary in the positive direction, and the two sides carrying the same
//! edge id are glued so that their boundary directions disagree. This is the
//! unique orientation-compatible gluing of two oriented triangle sides, so
//! bare edge ids determine the surface completely.
//!
//! Values are kept in canonical form (each triple rotated so its smallest
//! presentation comes first, triples sorted), which makes equality, hashing
//! and the flip involution exact on labelled triangulations. Edge ids are
//! the labels and are never renamed.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::TriangulationError;
use crate::surface::Surface;

/// An ordered triple of edge ids: one triangle of the gluing.
pub type Triple = [usize; 3];

/// A side of a triangle: `(triangle index, side index 0..3)`.
pub type Slot = (usize, usize);

/// A labelled, coherently oriented combinatorial triangulation.
#[derive(Clone, Debug)]
pub struct Triangulation {
    edge_count: usize,
    triangles: Vec<Triple>,
    // Derived data, computed once at construction.
    slots: Vec<[Slot; 2]>,
    corner_class: Vec<[usize; 3]>,
    vertex_class_count: usize,
    surface: Surface,
}

/// Classification of one triangle of a triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleKind {
    Embedded,
    NonEmbedded,
}

/// A triangle together with its classification. Non-embedded triangles carry
/// their inner arc (the side occurring twice, joining two distinct marked
/// points) and outer arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleInfo {
    pub index: usize,
    pub kind: TriangleKind,
    pub inner_edge: Option<usize>,
    pub outer_edge: Option<usize>,
}

fn rotate_min(t: Triple) -> Triple {
    let r1 = [t[1], t[2], t[0]];
    let r2 = [t[2], t[0], t[1]];
    let mut best = t;
    if r1 < best {
        best = r1;
    }
    if r2 < best {
        best = r2;
    }
    best
}

/// Union-find over `n` items.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Triangulation {
    /// Build and validate a triangulation from bare triples.
    ///
    /// The triples are assumed coherently oriented (see module docs); inputs
    /// with explicit direction flags go through [`Triangulation::from_directed`].
    pub fn new(edge_count: usize, triangles: Vec<Triple>) -> Result<Self, TriangulationError> {
        if triangles.is_empty() {
            return Err(TriangulationError::Empty);
        }
        // Canonical form first: rotate each triple, then sort.
        let mut tris: Vec<Triple> = triangles.into_iter().map(rotate_min).collect();
        tris.sort_unstable();

        // Every edge id in range and used exactly twice.
        let mut count = vec![0usize; edge_count];
        for t in &tris {
            for &e in t {
                if e >= edge_count {
                    return Err(TriangulationError::EdgeOutOfRange {
                        edge: e,
                        edge_count,
                    });
                }
                count[e] += 1;
            }
        }
        if let Some((e, &c)) = count.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(TriangulationError::EdgeUsedNotTwice { edge: e, count: c });
        }

        // Slot table.
        let mut slots: Vec<Vec<Slot>> = vec![Vec::new(); edge_count];
        for (ti, t) in tris.iter().enumerate() {
            for (si, &e) in t.iter().enumerate() {
                slots[e].push((ti, si));
            }
        }
        let slots: Vec<[Slot; 2]> = slots.into_iter().map(|v| [v[0], v[1]]).collect();

        // Connectivity of the dual graph.
        let f = tris.len();
        let mut seen = vec![false; f];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        while let Some(t) = queue.pop_front() {
            for &e in &tris[t] {
                for &(t2, _) in &slots[e] {
                    if !seen[t2] {
                        seen[t2] = true;
                        queue.push_back(t2);
                    }
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(TriangulationError::Disconnected);
        }

        // Vertex classes: orbits of corners under the side gluings. Corner k
        // of a triangle sits at the start of side k. Gluing side (t,s) to
        // (t',s') reversing direction identifies corner (t,s) with (t',s'+1)
        // and corner (t,s+1) with (t',s').
        let corner_id = |t: usize, c: usize| 3 * t + c;
        let mut uf = UnionFind::new(3 * f);
        for pair in &slots {
            let (t1, s1) = pair[0];
            let (t2, s2) = pair[1];
            uf.union(corner_id(t1, s1), corner_id(t2, (s2 + 1) % 3));
            uf.union(corner_id(t1, (s1 + 1) % 3), corner_id(t2, s2));
        }
        // Class ids numbered by smallest corner.
        let mut class_of_root = vec![usize::MAX; 3 * f];
        let mut vertex_class_count = 0usize;
        let mut corner_class = vec![[0usize; 3]; f];
        for t in 0..f {
            for c in 0..3 {
                let root = uf.find(corner_id(t, c));
                if class_of_root[root] == usize::MAX {
                    class_of_root[root] = vertex_class_count;
                    vertex_class_count += 1;
                }
                corner_class[t][c] = class_of_root[root];
            }
        }

        // Euler characteristic: V - E + F = 2 - 2g for orientable gluings.
        let chi = vertex_class_count as i64 - edge_count as i64 + f as i64;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(TriangulationError::NonIntegerGenus { chi });
        }
        let genus = ((2 - chi) / 2) as usize;
        let surface = Surface::new(genus, vertex_class_count)
            .map_err(|_| TriangulationError::NonIntegerGenus { chi })?;

        Ok(Triangulation {
            edge_count,
            triangles: tris,
            slots,
            corner_class,
            vertex_class_count,
            surface,
        })
    }

    /// Build from triples with explicit direction flags (`+1`/`-1` per side).
    ///
    /// The flags describe how each side traverses its edge; a coherent global
    /// orientation must assign every edge one traversal in each direction.
    /// Triangles are reflected as needed to realize it (the first triangle
    /// anchors the orientation); if no assignment exists the gluing is
    /// non-orientable and rejected.
    pub fn from_directed(
        edge_count: usize,
        triangles: &[[(usize, i8); 3]],
    ) -> Result<Self, TriangulationError> {
        if triangles.is_empty() {
            return Err(TriangulationError::Empty);
        }
        let mut count = vec![0usize; edge_count];
        let mut slot_dirs: Vec<Vec<(usize, i8)>> = vec![Vec::new(); edge_count];
        for (ti, t) in triangles.iter().enumerate() {
            for &(e, d) in t {
                if e >= edge_count {
                    return Err(TriangulationError::EdgeOutOfRange {
                        edge: e,
                        edge_count,
                    });
                }
                if d != 1 && d != -1 {
                    return Err(TriangulationError::NonOrientable);
                }
                count[e] += 1;
                slot_dirs[e].push((ti, d));
            }
        }
        if let Some((e, &c)) = count.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(TriangulationError::EdgeUsedNotTwice { edge: e, count: c });
        }

        // 2-color triangles (reflect or keep) so that each edge is traversed
        // once in each direction. BFS over the dual graph.
        let f = triangles.len();
        let mut reflect: Vec<Option<bool>> = vec![None; f];
        let mut queue = VecDeque::new();
        for start in 0..f {
            if reflect[start].is_some() {
                continue;
            }
            reflect[start] = Some(false);
            queue.push_back(start);
            while let Some(t) = queue.pop_front() {
                let rt = reflect[t].unwrap();
                for &(e, d) in &triangles[t] {
                    let pair = &slot_dirs[e];
                    let (other_t, other_d) = if pair[0].0 == t && pair[0].1 == d {
                        pair[1]
                    } else {
                        pair[0]
                    };
                    if other_t == t {
                        // Both sides in one triangle: reflection cannot change
                        // their relative direction, so the flags must already
                        // disagree.
                        let (a, b) = (pair[0].1, pair[1].1);
                        if a == b {
                            return Err(TriangulationError::NonOrientable);
                        }
                        continue;
                    }
                    // Need final directions opposite: d*(-1)^rt != d'*(-1)^rt'.
                    let want = if d == other_d { !rt } else { rt };
                    match reflect[other_t] {
                        None => {
                            reflect[other_t] = Some(want);
                            queue.push_back(other_t);
                        }
                        Some(have) => {
                            if have != want {
                                return Err(TriangulationError::NonOrientable);
                            }
                        }
                    }
                }
            }
        }

        let bare: Vec<Triple> = triangles
            .iter()
            .zip(reflect.iter())
            .map(|(t, r)| {
                let ids = [t[0].0, t[1].0, t[2].0];
                if r.unwrap() {
                    [ids[2], ids[1], ids[0]]
                } else {
                    ids
                }
            })
            .collect();
        Self::new(edge_count, bare)
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn triangles(&self) -> &[Triple] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// The derived surface.
    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn vertex_class_count(&self) -> usize {
        self.vertex_class_count
    }

    /// Vertex class at corner `c` of triangle `t` (the corner at the start of
    /// side `c`).
    pub fn corner_class(&self, t: usize, c: usize) -> usize {
        self.corner_class[t][c]
    }

    /// The two slots carrying edge `e`.
    pub fn slots_of_edge(&self, e: usize) -> Result<[Slot; 2], TriangulationError> {
        if e >= self.edge_count {
            return Err(TriangulationError::EdgeOutOfRange {
                edge: e,
                edge_count: self.edge_count,
            });
        }
        Ok(self.slots[e])
    }

    /// Vertex classes of the two endpoints of edge `e`, in slot order of its
    /// first slot.
    pub fn edge_endpoints(&self, e: usize) -> Result<(usize, usize), TriangulationError> {
        let [(t, s), _] = self.slots_of_edge(e)?;
        Ok((self.corner_class[t][s], self.corner_class[t][(s + 1) % 3]))
    }

    /// Classify every triangle.
    pub fn classify_triangles(&self) -> Vec<TriangleInfo> {
        self.triangles
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let dup = if t[0] == t[1] || t[0] == t[2] {
                    Some(t[0])
                } else if t[1] == t[2] {
                    Some(t[1])
                } else {
                    None
                };
                match dup {
                    Some(inner) => {
                        let outer = *t.iter().find(|&&e| e != inner).unwrap();
                        TriangleInfo {
                            index: i,
                            kind: TriangleKind::NonEmbedded,
                            inner_edge: Some(inner),
                            outer_edge: Some(outer),
                        }
                    }
                    None => TriangleInfo {
                        index: i,
                        kind: TriangleKind::Embedded,
                        inner_edge: None,
                        outer_edge: None,
                    },
                }
            })
            .collect()
    }

    /// True when edge `e` borders two distinct triangles.
    pub fn is_flippable(&self, e: usize) -> bool {
        match self.slots_of_edge(e) {
            Ok([(t1, _), (t2, _)]) => t1 != t2,
            Err(_) => false,
        }
    }

    /// All flippable edges, ascending.
    pub fn flippable_edges(&self) -> Vec<usize> {
        (0..self.edge_count).filter(|&e| self.is_flippable(e)).collect()
    }

    /// The four sides of the square around a flippable edge `e`, in cyclic
    /// boundary order `(p, q, r, s)` with `p, q` in one triangle and `r, s`
    /// in the other. Opposite sides are `(p, r)` and `(q, s)`.
    pub fn quad_sides(&self, e: usize) -> Result<[usize; 4], TriangulationError> {
        let [(t1, s1), (t2, s2)] = self.slots_of_edge(e)?;
        if t1 == t2 {
            return Err(TriangulationError::NotFlippable { edge: e });
        }
        let a = self.triangles[t1];
        let b = self.triangles[t2];
        Ok([
            a[(s1 + 1) % 3],
            a[(s1 + 2) % 3],
            b[(s2 + 1) % 3],
            b[(s2 + 2) % 3],
        ])
    }

    /// Flip edge `e`: replace it by the opposite diagonal of the square formed
    /// by its two triangles. Edge ids are preserved; applying the same flip
    /// twice restores the original triangulation exactly.
    pub fn flip(&self, e: usize) -> Result<Triangulation, TriangulationError> {
        let [p, q, r, s] = self.quad_sides(e)?;
        let [(t1, _), (t2, _)] = self.slots_of_edge(e)?;
        let mut tris = self.triangles.clone();
        tris[t1] = [e, q, r];
        tris[t2] = [e, s, p];
        Triangulation::new(self.edge_count, tris)
    }

    /// Canonical content digest (stable across runs).
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.edge_count as u64).to_le_bytes());
        for t in &self.triangles {
            for &e in t {
                hasher.update((e as u64).to_le_bytes());
            }
        }
        let out = hasher.finalize();
        out[..6].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The empty gluing standing in for the twice-marked sphere, which has a
    /// single essential arc and no triangulation.
    pub(crate) fn degenerate_two_marked_sphere() -> Triangulation {
        Triangulation {
            edge_count: 0,
            triangles: Vec::new(),
            slots: Vec::new(),
            corner_class: Vec::new(),
            vertex_class_count: 2,
            surface: Surface::new(0, 2).unwrap(),
        }
    }

    /// DOT rendering of the dual graph: triangles as nodes, one link per edge.
    pub fn dual_graph_dot(&self) -> String {
        let mut s = String::from("graph dual {\n");
        for (i, t) in self.triangles.iter().enumerate() {
            s.push_str(&format!(
                "  t{} [label=\"t{} ({},{},{})\"];\n",
                i, i, t[0], t[1], t[2]
            ));
        }
        for e in 0..self.edge_count {
            let [(t1, _), (t2, _)] = self.slots[e];
            s.push_str(&format!("  t{t1} -- t{t2} [label=\"e{e}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.edge_count == other.edge_count && self.triangles == other.triangles
    }
}
impl Eq for Triangulation {}

impl std::hash::Hash for Triangulation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.edge_count.hash(state);
        self.triangles.hash(state);
    }
}

impl PartialOrd for Triangulation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Triangulation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.edge_count
            .cmp(&other.edge_count)
            .then_with(|| self.triangles.cmp(&other.triangles))
    }
}

/// The fixed base triangulation of a surface.
///
/// Construction: genus 0 starts from the two-triangle sphere gluing
/// `[(0,1,2), (0,2,1)]` (three marked points); genus `g >= 1` starts from the
/// fan triangulation of the standard `4g`-gon with side word
/// `a_1 b_1 a_1^- b_1^- ...` (one marked point). Additional marked points are
/// added by coning the first triangle in canonical order, each step appending
/// three fresh edge ids.
pub fn base_triangulation(surface: Surface) -> Result<Triangulation, TriangulationError> {
    if !surface.has_triangulation() {
        return Err(TriangulationError::NoTriangulation {
            genus: surface.genus,
            marked_points: surface.marked_points,
        });
    }
    let g = surface.genus;
    let (mut tri, mut n_now) = if g == 0 {
        (Triangulation::new(3, vec![[0, 1, 2], [0, 2, 1]])?, 3)
    } else {
        // Fan of the 4g-gon. Boundary sides s_i: s_{4k} ~ s_{4k+2} get edge
        // id 2k, s_{4k+1} ~ s_{4k+3} get 2k+1. Diagonals from corner 0 to
        // corner j (j = 2..4g-2) get ids 2g..6g-4.
        let sides = 4 * g;
        let side_edge = |i: usize| -> usize {
            let k = i / 4;
            match i % 4 {
                0 | 2 => 2 * k,
                _ => 2 * k + 1,
            }
        };
        let diag_edge = |j: usize| -> usize { 2 * g + (j - 2) };
        let mut tris = Vec::new();
        for j in 1..sides - 1 {
            let first = if j == 1 { side_edge(0) } else { diag_edge(j) };
            let last = if j == sides - 2 {
                side_edge(sides - 1)
            } else {
                diag_edge(j + 1)
            };
            tris.push([first, side_edge(j), last]);
        }
        (Triangulation::new(6 * g - 3, tris)?, 1)
    };
    while n_now < surface.marked_points {
        tri = cone_subdivide_first(&tri)?;
        n_now += 1;
    }
    debug_assert_eq!(tri.surface(), surface);
    Ok(tri)
}

/// Replace the first triangle by the cone over a new marked point in its
/// interior, appending three fresh edge ids.
fn cone_subdivide_first(t: &Triangulation) -> Result<Triangulation, TriangulationError> {
    let e = t.edge_count();
    let (a, b, c) = (e, e + 1, e + 2);
    let [x, y, z] = t.triangles()[0];
    let mut tris: Vec<Triple> = t.triangles()[1..].to_vec();
    tris.push([a, x, b]);
    tris.push([b, y, c]);
    tris.push([c, z, a]);
    Triangulation::new(e + 3, tris)
}
