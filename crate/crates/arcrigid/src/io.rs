//! JSON interchange for triangulations, arcs, complexes and rigid-set
//! bundles, plus the DOT exports. All emitted documents are deterministic:
//! map keys are sorted and vertex orders are canonical.

use std::collections::BTreeMap;
use std::sync::Arc as Shared;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arcs::{ArcCoordinates, FlipPath};
use crate::complex::FiniteComplex;
use crate::error::{ArcError, ComplexError, TriangulationError};
use crate::rigid::RigidSetReport;
use crate::surface::Surface;
use crate::triangulation::Triangulation;

/// One oriented side of a triangle: an edge id and a traversal direction.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SlotJson {
    pub edge: usize,
    pub dir: i8,
}

/// Wire format of a triangulation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub edge_count: usize,
    pub triangles: Vec<[SlotJson; 3]>,
}

impl TriangulationJson {
    /// Export with direction flags assigned by first occurrence: the first
    /// slot of each edge in triangle-major order traverses it positively.
    pub fn from_triangulation(t: &Triangulation) -> Self {
        let mut seen = vec![false; t.edge_count()];
        let triangles = t
            .triangles()
            .iter()
            .map(|tri| {
                let mut out = [SlotJson { edge: 0, dir: 1 }; 3];
                for (i, &e) in tri.iter().enumerate() {
                    let dir = if seen[e] { -1 } else { 1 };
                    seen[e] = true;
                    out[i] = SlotJson { edge: e, dir };
                }
                out
            })
            .collect();
        TriangulationJson {
            edge_count: t.edge_count(),
            triangles,
        }
    }

    pub fn to_triangulation(&self) -> Result<Triangulation, TriangulationError> {
        let raw: Vec<[(usize, i8); 3]> = self
            .triangles
            .iter()
            .map(|t| [(t[0].edge, t[0].dir), (t[1].edge, t[1].dir), (t[2].edge, t[2].dir)])
            .collect();
        Triangulation::from_directed(self.edge_count, &raw)
    }
}

/// Stable content id of an arc relative to its reference triangulation.
pub fn arc_id(arc: &ArcCoordinates) -> String {
    let mut hasher = Sha256::new();
    hasher.update(arc.reference().digest().as_bytes());
    for &c in arc.coords() {
        hasher.update(c.to_le_bytes());
    }
    let out = hasher.finalize();
    let hex: String = out[..5].iter().map(|b| format!("{b:02x}")).collect();
    format!("a{hex}")
}

/// Wire format of one arc.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcJson {
    pub reference: String,
    pub coords: Vec<i64>,
}

impl ArcJson {
    pub fn from_arc(arc: &ArcCoordinates) -> Self {
        ArcJson {
            reference: arc.reference().digest(),
            coords: arc.coords().to_vec(),
        }
    }

    pub fn to_arc(&self, reference: &Shared<Triangulation>) -> Result<ArcCoordinates, ArcError> {
        if reference.digest() != self.reference {
            return Err(ArcError::ReferenceMismatch);
        }
        ArcCoordinates::new(reference, self.coords.clone())
    }
}

/// Wire format of a complex: arc ids for vertices, maximal simplices only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<usize>>,
}

impl ComplexJson {
    pub fn from_complex(c: &FiniteComplex) -> Self {
        ComplexJson {
            vertices: c.vertices().iter().map(arc_id).collect(),
            simplices: c.maximal_simplices(),
        }
    }
}

/// Self-contained bundle of a rigid set: the surface, base triangulation,
/// every arc by id, the complex, and the per-vertex flip paths and provenance
/// tags.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RigidSetJson {
    pub surface: Surface,
    pub base: TriangulationJson,
    pub arcs: BTreeMap<String, Vec<i64>>,
    pub complex: ComplexJson,
    pub paths: BTreeMap<String, Vec<usize>>,
    pub provenance: BTreeMap<String, String>,
}

impl RigidSetJson {
    pub fn from_report(r: &RigidSetReport) -> Self {
        let mut arcs = BTreeMap::new();
        let mut paths = BTreeMap::new();
        let mut provenance = BTreeMap::new();
        for (i, arc) in r.complex.vertices().iter().enumerate() {
            let id = arc_id(arc);
            arcs.insert(id.clone(), arc.coords().to_vec());
            paths.insert(id.clone(), r.flip_paths[i].flips.clone());
            provenance.insert(id, r.provenance[i].clone());
        }
        RigidSetJson {
            surface: r.base.surface(),
            base: TriangulationJson::from_triangulation(&r.base),
            arcs,
            complex: ComplexJson::from_complex(&r.complex),
            paths,
            provenance,
        }
    }

    pub fn to_report(&self) -> Result<RigidSetReport, ComplexError> {
        let base = Shared::new(
            self.base
                .to_triangulation()
                .map_err(|_| ComplexError::UnknownVertex { index: 0 })?,
        );
        let mut vertices = Vec::new();
        let mut by_id: BTreeMap<String, usize> = BTreeMap::new();
        for (i, (id, coords)) in self.arcs.iter().enumerate() {
            let arc = ArcCoordinates::new(&base, coords.clone())
                .map_err(|_| ComplexError::UnknownVertex { index: i })?;
            by_id.insert(id.clone(), vertices.len());
            vertices.push(arc);
        }
        // Rebuild simplices through the id order used in the complex section.
        let gens: Vec<Vec<usize>> = self
            .complex
            .simplices
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&v| {
                        let id = &self.complex.vertices[v];
                        by_id[id]
                    })
                    .collect()
            })
            .collect();
        let complex = Shared::new(FiniteComplex::from_simplices(vertices, gens)?);
        let digest = base.digest();
        let mut flip_paths = vec![
            FlipPath {
                root_digest: digest.clone(),
                flips: Vec::new()
            };
            complex.vertex_count()
        ];
        let mut provenance = vec![String::new(); complex.vertex_count()];
        for (i, arc) in complex.vertices().iter().enumerate() {
            let id = arc_id(arc);
            if let Some(flips) = self.paths.get(&id) {
                flip_paths[i] = FlipPath {
                    root_digest: digest.clone(),
                    flips: flips.clone(),
                };
            }
            if let Some(tag) = self.provenance.get(&id) {
                provenance[i] = tag.clone();
            }
        }
        Ok(RigidSetReport {
            base,
            complex,
            flip_paths,
            provenance,
        })
    }
}

/// Arc-set files are arrays of arc records.
pub fn arc_set_to_json(arcs: &[ArcCoordinates]) -> String {
    let records: Vec<ArcJson> = arcs.iter().map(ArcJson::from_arc).collect();
    serde_json::to_string_pretty(&records).expect("serializable")
}

pub fn arc_set_from_json(
    data: &str,
    reference: &Shared<Triangulation>,
) -> Result<Vec<ArcCoordinates>, ArcError> {
    let records: Vec<ArcJson> =
        serde_json::from_str(data).map_err(|e| ArcError::InvalidCoordinates {
            reason: format!("malformed arc set: {e}"),
        })?;
    records.iter().map(|r| r.to_arc(reference)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::enumerate_arcs;
    use crate::rigid::build_x;
    use crate::triangulation::base_triangulation;

    #[test]
    fn triangulation_roundtrip() {
        for (g, n) in [(1usize, 1usize), (0, 3), (0, 4), (2, 1)] {
            let t = base_triangulation(Surface::new(g, n).unwrap()).unwrap();
            let json = TriangulationJson::from_triangulation(&t);
            let back = json.to_triangulation().unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn arc_set_roundtrip() {
        let s = Surface::new(0, 3).unwrap();
        let arcs = enumerate_arcs(s, 6).unwrap();
        let reference = Shared::clone(arcs[0].reference());
        let json = arc_set_to_json(&arcs);
        let back = arc_set_from_json(&json, &reference).unwrap();
        assert_eq!(back, arcs);
    }

    #[test]
    fn rigid_set_bundle_roundtrip() {
        let base = Shared::new(base_triangulation(Surface::new(0, 4).unwrap()).unwrap());
        let report = build_x(&base).unwrap();
        let bundle = RigidSetJson::from_report(&report);
        let text = serde_json::to_string(&bundle).unwrap();
        let parsed: RigidSetJson = serde_json::from_str(&text).unwrap();
        let back = parsed.to_report().unwrap();
        assert_eq!(back.complex.vertex_count(), report.complex.vertex_count());
        back.validate().unwrap();
        // Deterministic bytes.
        let again = serde_json::to_string(&RigidSetJson::from_report(&report)).unwrap();
        assert_eq!(text, again);
    }
}
