//! Finite simplicial complexes over arc vertices and the maps between them.
//!
//! Simplices are stored explicitly (closed under faces), not implied by the
//! 1-skeleton: subcomplexes arising from the rigidity constructions need not
//! be flag. [`build_complex`] is the one constructor that takes the flag
//! closure over disjointness.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc as Shared;

use crate::arcs::{intersection_number, ArcCoordinates};
use crate::error::ComplexError;

/// A sorted set of vertex indices.
pub type Simplex = Vec<usize>;

/// A finite simplicial complex whose vertices are arcs.
///
/// Vertices are kept sorted by coordinate vector; simplices are sorted index
/// sets closed under subsets. Every pair of vertices spanning a listed
/// simplex has intersection number zero (checked at construction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    vertices: Vec<ArcCoordinates>,
    simplices: BTreeSet<Simplex>,
}

impl FiniteComplex {
    /// Assemble a complex from vertices and generating simplices (faces are
    /// added automatically). Verifies the disjointness invariant.
    pub fn from_simplices(
        vertices: Vec<ArcCoordinates>,
        generators: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self, ComplexError> {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&i, &j| vertices[i].cmp(&vertices[j]));
        order.dedup_by(|&mut i, &mut j| vertices[i] == vertices[j]);
        let sorted: Vec<ArcCoordinates> = order.iter().map(|&i| vertices[i].clone()).collect();
        let mut renumber = BTreeMap::new();
        for (new, &old) in order.iter().enumerate() {
            renumber.insert(old, new);
        }
        // Remap duplicates of dropped originals onto their surviving twin.
        let position_of = |arc: &ArcCoordinates| sorted.binary_search_by(|v| v.cmp(arc)).ok();
        let mut simplices = BTreeSet::new();
        for v in 0..sorted.len() {
            simplices.insert(vec![v]);
        }
        for g in generators {
            let mut s: Simplex = g
                .iter()
                .map(|&old| {
                    renumber
                        .get(&old)
                        .copied()
                        .or_else(|| vertices.get(old).and_then(|a| position_of(a)))
                        .ok_or(ComplexError::UnknownVertex { index: old })
                })
                .collect::<Result<_, _>>()?;
            s.sort_unstable();
            s.dedup();
            insert_with_faces(&mut simplices, &s);
        }
        let c = FiniteComplex {
            vertices: sorted,
            simplices,
        };
        c.check_disjointness()?;
        Ok(c)
    }

    fn check_disjointness(&self) -> Result<(), ComplexError> {
        for s in &self.simplices {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    let n = intersection_number(&self.vertices[s[i]], &self.vertices[s[j]])
                        .map_err(|_| ComplexError::SimplexNotDisjoint { simplex: s.clone() })?;
                    if n != 0 {
                        return Err(ComplexError::SimplexNotDisjoint { simplex: s.clone() });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[ArcCoordinates] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Index of an arc among the vertices.
    pub fn index_of(&self, arc: &ArcCoordinates) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.cmp(arc)).ok()
    }

    /// All simplices, including faces and vertices.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    /// Simplices not properly contained in any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() > s.len() && is_subset(s, t))
            })
            .cloned()
            .collect()
    }

    /// Max simplex size minus one; -1 for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| s.len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn simplex_count_of_dim(&self, d: usize) -> usize {
        self.simplices.iter().filter(|s| s.len() == d + 1).count()
    }

    /// Indices of the vertices adjacent to `v` (sharing an edge).
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for s in &self.simplices {
            if s.len() == 2 && s.contains(&v) {
                out.push(if s[0] == v { s[1] } else { s[0] });
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The open star of a vertex: all simplices containing it. Not itself a
    /// complex; see [`FiniteComplex::closed_star`] for the subcomplex.
    pub fn star(&self, v: usize) -> Result<Vec<Simplex>, ComplexError> {
        if v >= self.vertices.len() {
            return Err(ComplexError::UnknownVertex { index: v });
        }
        Ok(self
            .simplices
            .iter()
            .filter(|s| s.contains(&v))
            .cloned()
            .collect())
    }

    /// The closed star of a vertex: the smallest subcomplex containing every
    /// simplex that contains `v`.
    pub fn closed_star(&self, v: usize) -> Result<FiniteComplex, ComplexError> {
        let star = self.star(v)?;
        self.subcomplex_from(star)
    }

    /// Whether this complex is a subcomplex of `other`, matching vertices by
    /// arc value.
    pub fn is_subcomplex_of(&self, other: &FiniteComplex) -> bool {
        let mapping: Option<Vec<usize>> = self
            .vertices
            .iter()
            .map(|a| other.index_of(a))
            .collect();
        let Some(mapping) = mapping else {
            return false;
        };
        self.simplices.iter().all(|s| {
            let mut img: Simplex = s.iter().map(|&v| mapping[v]).collect();
            img.sort_unstable();
            other.contains_simplex(&img)
        })
    }

    /// Build the subcomplex generated by the given simplices (indices into
    /// this complex), keeping only the touched vertices.
    fn subcomplex_from(&self, generators: Vec<Simplex>) -> Result<FiniteComplex, ComplexError> {
        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for s in &generators {
            touched.extend(s.iter().copied());
        }
        let keep: Vec<usize> = touched.into_iter().collect();
        let vertices: Vec<ArcCoordinates> =
            keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let renumber: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut simplices = BTreeSet::new();
        for v in 0..vertices.len() {
            simplices.insert(vec![v]);
        }
        for s in generators {
            let mapped: Simplex = s.iter().map(|v| renumber[v]).collect();
            insert_with_faces(&mut simplices, &mapped);
        }
        Ok(FiniteComplex {
            vertices,
            simplices,
        })
    }

    /// Span: the subcomplex of all simplices of this complex whose vertices
    /// all lie in the given vertex set.
    pub fn span(&self, vertex_set: &[usize]) -> Result<FiniteComplex, ComplexError> {
        for &v in vertex_set {
            if v >= self.vertices.len() {
                return Err(ComplexError::VertexNotInAmbient { index: v });
            }
        }
        let inside: BTreeSet<usize> = vertex_set.iter().copied().collect();
        let gens: Vec<Simplex> = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|v| inside.contains(v)))
            .cloned()
            .collect();
        self.subcomplex_from(gens)
    }

    /// DOT rendering of the 1-skeleton.
    pub fn skeleton_dot(&self) -> String {
        let mut s = String::from("graph skeleton {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{} [label=\"{:?}\"];\n", i, v.coords()));
        }
        for sx in &self.simplices {
            if sx.len() == 2 {
                s.push_str(&format!("  v{} -- v{};\n", sx[0], sx[1]));
            }
        }
        s.push_str("}\n");
        s
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn insert_with_faces(set: &mut BTreeSet<Simplex>, s: &Simplex) {
    if s.is_empty() || set.contains(s) {
        return;
    }
    set.insert(s.clone());
    if s.len() > 1 {
        for drop in 0..s.len() {
            let mut face = s.clone();
            face.remove(drop);
            insert_with_faces(set, &face);
        }
    }
}

/// The full complex on a set of arcs: all pairwise-disjoint subsets span
/// simplices (the flag closure of the disjointness graph).
pub fn build_complex(arcs: &[ArcCoordinates]) -> Result<FiniteComplex, ComplexError> {
    let mut vertices: Vec<ArcCoordinates> = arcs.to_vec();
    vertices.sort();
    vertices.dedup();
    let n = vertices.len();
    let mut disjoint = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = intersection_number(&vertices[i], &vertices[j]).map_err(|_| {
                ComplexError::SimplexNotDisjoint {
                    simplex: vec![i, j],
                }
            })? == 0;
            disjoint[i][j] = d;
            disjoint[j][i] = d;
        }
    }
    // Enumerate maximal cliques by branch and bound; the complexes at desk
    // scale are small, so a simple expansion suffices.
    let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
    for v in 0..n {
        simplices.insert(vec![v]);
    }
    let mut stack: Vec<Simplex> = (0..n).map(|v| vec![v]).collect();
    while let Some(s) = stack.pop() {
        let last = *s.last().unwrap();
        for next in last + 1..n {
            if s.iter().all(|&v| disjoint[v][next]) {
                let mut bigger = s.clone();
                bigger.push(next);
                if !simplices.contains(&bigger) {
                    insert_with_faces(&mut simplices, &bigger);
                    stack.push(bigger);
                }
            }
        }
    }
    let c = FiniteComplex {
        vertices,
        simplices,
    };
    Ok(c)
}

/// A vertex association between two finite complexes sending simplices to
/// simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: Shared<FiniteComplex>,
    pub target: Shared<FiniteComplex>,
    /// `assignment[v]` is the target vertex index of source vertex `v`.
    pub assignment: Vec<usize>,
}

impl SimplicialMap {
    /// Build and check simpliciality: the image of every simplex of the
    /// source is a simplex of the target (possibly of smaller dimension).
    pub fn new(
        source: Shared<FiniteComplex>,
        target: Shared<FiniteComplex>,
        assignment: Vec<usize>,
    ) -> Result<Self, ComplexError> {
        if assignment.len() != source.vertex_count() {
            return Err(ComplexError::AssignmentLength {
                got: assignment.len(),
                expected: source.vertex_count(),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&i| i >= target.vertex_count()) {
            return Err(ComplexError::TargetOutOfRange {
                index: bad,
                len: target.vertex_count(),
            });
        }
        let m = SimplicialMap {
            source,
            target,
            assignment,
        };
        m.check_simplicial()?;
        Ok(m)
    }

    fn check_simplicial(&self) -> Result<(), ComplexError> {
        for s in self.source.simplices() {
            let mut img: Simplex = s.iter().map(|&v| self.assignment[v]).collect();
            img.sort_unstable();
            img.dedup();
            if !self.target.contains_simplex(&img) {
                return Err(ComplexError::NotSimplicial { simplex: s.clone() });
            }
        }
        Ok(())
    }

    pub fn image_of(&self, v: usize) -> &ArcCoordinates {
        &self.target.vertices()[self.assignment[v]]
    }

    /// True when the vertex assignment is injective on the whole source.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.assignment.iter().all(|&v| seen.insert(v))
    }
}

/// Whether the map restricts injectively to the star of every source vertex.
pub fn is_locally_injective(m: &SimplicialMap) -> Result<bool, ComplexError> {
    m.check_simplicial()?;
    for v in 0..m.source.vertex_count() {
        let mut star_vertices: BTreeSet<usize> = BTreeSet::new();
        for s in m.source.star(v)? {
            star_vertices.extend(s);
        }
        let mut images = BTreeSet::new();
        for u in star_vertices {
            if !images.insert(m.assignment[u]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Deterministic backtracking enumeration of every locally injective
/// simplicial map from `source` into `target`.
///
/// Source vertices are assigned in decreasing star-size order; candidate
/// images are pruned by adjacency with already-assigned neighbors and by the
/// local-injectivity constraint (distinct images across every star).
pub struct LocallyInjectiveMaps<'a> {
    source: &'a Shared<FiniteComplex>,
    target: &'a Shared<FiniteComplex>,
    order: Vec<usize>,
    /// For each position in `order`, the earlier positions adjacent to it and
    /// the earlier positions within distance two (sharing a star).
    adjacent_prev: Vec<Vec<usize>>,
    conflict_prev: Vec<Vec<usize>>,
    target_adjacency: Vec<BTreeSet<usize>>,
    /// Backtracking state: chosen candidate index per depth.
    stack: Vec<(usize, usize)>, // (candidate target vertex, next candidate to try)
    done: bool,
}

impl<'a> LocallyInjectiveMaps<'a> {
    pub fn new(source: &'a Shared<FiniteComplex>, target: &'a Shared<FiniteComplex>) -> Self {
        let n = source.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        let star_size: Vec<usize> = (0..n)
            .map(|v| source.star(v).map(|s| s.len()).unwrap_or(0))
            .collect();
        // Seed with the largest star, then grow by connectivity so candidate
        // pruning has bite; ties broken by vertex index.
        order.sort_by_key(|&v| (std::cmp::Reverse(star_size[v]), v));
        let order = connectivity_order(source, order);

        let pos_of = {
            let mut p = vec![usize::MAX; n];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let mut adjacent_prev = vec![Vec::new(); n];
        let mut conflict_prev = vec![Vec::new(); n];
        // distance-1 (edges) and distance <= 2 via shared stars.
        let mut adj = vec![BTreeSet::new(); n];
        for s in source.simplices() {
            if s.len() == 2 {
                adj[s[0]].insert(s[1]);
                adj[s[1]].insert(s[0]);
            }
        }
        for (i, &v) in order.iter().enumerate() {
            for &u in &adj[v] {
                if pos_of[u] < i {
                    adjacent_prev[i].push(pos_of[u]);
                }
            }
            let mut conflicts: BTreeSet<usize> = BTreeSet::new();
            for &u in &adj[v] {
                conflicts.insert(u);
                for &w in &adj[u] {
                    conflicts.insert(w);
                }
            }
            conflicts.remove(&v);
            for u in conflicts {
                if pos_of[u] < i {
                    conflict_prev[i].push(pos_of[u]);
                }
            }
        }
        let mut target_adjacency = vec![BTreeSet::new(); target.vertex_count()];
        for s in target.simplices() {
            if s.len() == 2 {
                target_adjacency[s[0]].insert(s[1]);
                target_adjacency[s[1]].insert(s[0]);
            }
        }
        LocallyInjectiveMaps {
            source,
            target,
            order,
            adjacent_prev,
            conflict_prev,
            target_adjacency,
            stack: Vec::new(),
            done: source.vertex_count() == 0 || target.vertex_count() == 0,
        }
    }

    fn candidate_ok(&self, depth: usize, cand: usize) -> bool {
        // Adjacency: cand must be adjacent in the target to the image of
        // every earlier neighbor.
        for &p in &self.adjacent_prev[depth] {
            let img = self.stack[p].0;
            if !self.target_adjacency[img].contains(&cand) {
                return false;
            }
        }
        // Local injectivity: distinct from images of all conflicting
        // earlier vertices.
        for &p in &self.conflict_prev[depth] {
            if self.stack[p].0 == cand {
                return false;
            }
        }
        true
    }

    /// Verify that every simplex of the source maps to a simplex of the
    /// target under the completed assignment.
    fn full_check(&self, assignment: &[usize]) -> bool {
        for s in self.source.simplices() {
            if s.len() < 3 {
                continue; // vertices and edges already enforced
            }
            let mut img: Simplex = s.iter().map(|&v| assignment[v]).collect();
            img.sort_unstable();
            img.dedup();
            if !self.target.contains_simplex(&img) {
                return false;
            }
        }
        true
    }

    fn assignment_from_stack(&self) -> Vec<usize> {
        let mut assignment = vec![0usize; self.source.vertex_count()];
        for (depth, &(cand, _)) in self.stack.iter().enumerate() {
            assignment[self.order[depth]] = cand;
        }
        assignment
    }
}

impl<'a> Iterator for LocallyInjectiveMaps<'a> {
    type Item = SimplicialMap;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.order.len();
        let t = self.target.vertex_count();
        loop {
            if self.stack.len() == n {
                // A full assignment: validate, step the state, maybe yield.
                let assignment = self.assignment_from_stack();
                let ok = self.full_check(&assignment);
                let has_more = self.advance();
                if ok {
                    if !has_more {
                        self.done = true;
                    }
                    return Some(SimplicialMap {
                        source: Shared::clone(self.source),
                        target: Shared::clone(self.target),
                        assignment,
                    });
                }
                if !has_more {
                    self.done = true;
                    return None;
                }
                continue;
            }
            // Descend with the first viable candidate at this depth.
            let depth = self.stack.len();
            match (0..t).find(|&c| self.candidate_ok(depth, c)) {
                Some(c) => self.stack.push((c, c + 1)),
                None => {
                    if !self.advance() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

impl<'a> LocallyInjectiveMaps<'a> {
    /// Move the deepest frame to its next viable candidate, popping exhausted
    /// frames. Returns false when the search space is exhausted.
    fn advance(&mut self) -> bool {
        let t = self.target.vertex_count();
        while let Some((_, next)) = self.stack.pop() {
            let depth = self.stack.len();
            let mut cand = next;
            while cand < t {
                if self.candidate_ok(depth, cand) {
                    self.stack.push((cand, cand + 1));
                    return true;
                }
                cand += 1;
            }
        }
        false
    }
}

fn connectivity_order(source: &FiniteComplex, preferred: Vec<usize>) -> Vec<usize> {
    let n = source.vertex_count();
    let mut adj = vec![BTreeSet::new(); n];
    for s in source.simplices() {
        if s.len() == 2 {
            adj[s[0]].insert(s[1]);
            adj[s[1]].insert(s[0]);
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for &seed in &preferred {
        if placed[seed] {
            continue;
        }
        order.push(seed);
        placed[seed] = true;
        loop {
            // Among unplaced vertices adjacent to placed ones, take the one
            // earliest in the preferred order.
            let next = preferred
                .iter()
                .copied()
                .find(|&v| !placed[v] && adj[v].iter().any(|&u| placed[u]));
            match next {
                Some(v) => {
                    order.push(v);
                    placed[v] = true;
                }
                None => break,
            }
        }
    }
    order
}

/// Collect up to `limit` locally injective maps; the flag reports truncation.
pub struct EnumeratedMaps {
    pub maps: Vec<SimplicialMap>,
    pub truncated: bool,
}

pub fn enumerate_locally_injective_maps(
    source: &Shared<FiniteComplex>,
    target: &Shared<FiniteComplex>,
    limit: Option<usize>,
) -> EnumeratedMaps {
    let mut it = LocallyInjectiveMaps::new(source, target);
    let mut maps = Vec::new();
    let mut truncated = false;
    loop {
        match it.next() {
            None => break,
            Some(m) => {
                if let Some(cap) = limit {
                    if maps.len() == cap {
                        truncated = true;
                        break;
                    }
                }
                maps.push(m);
            }
        }
    }
    EnumeratedMaps { maps, truncated }
}
