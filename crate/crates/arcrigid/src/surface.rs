//! Marked surfaces and their closed-form triangulation counts.

use serde::{Deserialize, Serialize};

use crate::error::TriangulationError;

/// A compact connected orientable surface of genus `g` with `n >= 1` marked
/// points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surface {
    pub genus: usize,
    pub marked_points: usize,
}

/// Closed-form counts attached to a surface.
///
/// For surfaces admitting a triangulation these are `6g+3n-7`, `6g+3n-6` and
/// `4g+2n-4`. The two degenerate spheres are reported by convention: the
/// once-marked sphere has an empty arc complex (dimension -1) and the
/// twice-marked sphere a single arc (dimension 0); neither has a
/// triangulation, so the per-triangulation counts are zero there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub dim_arc_complex: i64,
    pub arcs_per_triangulation: usize,
    pub triangles_per_triangulation: usize,
    pub has_triangulation: bool,
}

impl Surface {
    pub fn new(genus: usize, marked_points: usize) -> Result<Self, TriangulationError> {
        if marked_points == 0 {
            return Err(TriangulationError::NoTriangulation {
                genus,
                marked_points,
            });
        }
        Ok(Surface {
            genus,
            marked_points,
        })
    }

    /// The once-marked sphere: empty arc complex.
    pub fn is_empty_complex(&self) -> bool {
        self.genus == 0 && self.marked_points == 1
    }

    /// True when the surface carries ideal triangulations, i.e. `6g+3n-6 >= 3`.
    pub fn has_triangulation(&self) -> bool {
        6 * self.genus + 3 * self.marked_points >= 9
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        let g = self.genus as i64;
        let n = self.marked_points as i64;
        if self.is_empty_complex() {
            return SurfaceInvariants {
                dim_arc_complex: -1,
                arcs_per_triangulation: 0,
                triangles_per_triangulation: 0,
                has_triangulation: false,
            };
        }
        if !self.has_triangulation() {
            // S_{0,2}: a single essential arc and nothing else.
            return SurfaceInvariants {
                dim_arc_complex: 0,
                arcs_per_triangulation: 0,
                triangles_per_triangulation: 0,
                has_triangulation: false,
            };
        }
        SurfaceInvariants {
            dim_arc_complex: 6 * g + 3 * n - 7,
            arcs_per_triangulation: (6 * g + 3 * n - 6) as usize,
            triangles_per_triangulation: (4 * g + 2 * n - 4) as usize,
            has_triangulation: true,
        }
    }

    /// Number of arcs in any triangulation (`6g+3n-6`).
    pub fn edge_count(&self) -> usize {
        self.invariants().arcs_per_triangulation
    }

    /// Number of triangles in any triangulation (`4g+2n-4`).
    pub fn triangle_count(&self) -> usize {
        self.invariants().triangles_per_triangulation
    }
}

/// All surfaces whose arc complex has the given dimension `6g+3n-7 = d`.
///
/// Returned in lexicographic `(genus, marked_points)` order. Only surfaces
/// admitting triangulations are listed (dimension >= 2).
pub fn surfaces_with_dimension(dim: i64) -> Vec<Surface> {
    let mut out = Vec::new();
    if dim < 2 {
        return out;
    }
    let total = dim + 7; // 6g + 3n
    let mut g: i64 = 0;
    while 6 * g < total {
        let rem = total - 6 * g;
        if rem % 3 == 0 {
            let n = rem / 3;
            if n >= 1 {
                let s = Surface {
                    genus: g as usize,
                    marked_points: n as usize,
                };
                if s.has_triangulation() {
                    out.push(s);
                }
            }
        }
        g += 1;
    }
    out
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.marked_points)
    }
}
