//! Combinatorial triangulations and arc complexes of marked surfaces, with
//! finite rigid sets and a verifier for locally injective simplicial maps.
//!
//! The crate works with exact integer combinatorics throughout: labelled
//! triangulations as oriented gluings of triangles, isotopy classes of arcs
//! as edge-intersection coordinate vectors, finite simplicial complexes over
//! arc vertices, and a verifier that decides whether a locally injective
//! simplicial map of a rigid set is induced by a homeomorphism of the
//! underlying surfaces.

pub mod arcs;
pub mod complex;
pub mod error;
pub mod farey;
pub mod io;
pub mod isomorphism;
pub mod rigid;
pub mod sampling;
pub mod surface;
pub mod triangulation;
pub mod verify;

pub use arcs::{
    complete_to_triangulation, enumerate_arcs, flip_path_to_contain, intersection_number,
    ArcCoordinates, FlipPath, Frame,
};
pub use complex::{
    build_complex, enumerate_locally_injective_maps, is_locally_injective, FiniteComplex,
    SimplicialMap,
};
pub use isomorphism::{isomorphisms, CombinatorialIsomorphism};
pub use rigid::{build_x, exhaustion_step, RigidSetReport};
pub use surface::{Surface, SurfaceInvariants};
pub use triangulation::{base_triangulation, TriangleInfo, TriangleKind, Triangulation};
pub use verify::{check_rigidity, CheckOptions, RigidityReport};
