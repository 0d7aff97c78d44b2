//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while validating or manipulating combinatorial triangulations.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TriangulationError {
    /// An edge id does not occur exactly twice among the triangle sides.
    #[error("edge {edge} is used {count} times; every edge must appear exactly twice")]
    EdgeUsedNotTwice { edge: usize, count: usize },

    /// Some edge id is out of the declared range.
    #[error("edge {edge} out of range (edge_count = {edge_count})")]
    EdgeOutOfRange { edge: usize, edge_count: usize },

    /// The glued surface is not connected.
    #[error("the triangulated surface is not connected")]
    Disconnected,

    /// The direction flags admit no coherent orientation of the gluing.
    #[error("the gluing is not orientable")]
    NonOrientable,

    /// Euler characteristic does not correspond to an orientable surface.
    #[error("Euler characteristic {chi} does not yield an integer genus >= 0")]
    NonIntegerGenus { chi: i64 },

    /// The triangulation has no triangles at all.
    #[error("a triangulation needs at least one triangle")]
    Empty,

    /// The requested edge cannot be flipped: both of its sides lie in one
    /// triangle (it is the inner arc of a non-embedded triangle).
    #[error("edge {edge} is not flippable: it borders a single triangle")]
    NotFlippable { edge: usize },

    /// A marked surface without triangulations (the once- or twice-marked
    /// sphere) was asked for one.
    #[error("surface S_{{{genus},{marked_points}}} has no triangulation")]
    NoTriangulation { genus: usize, marked_points: usize },
}

/// Errors raised by arc-coordinate operations.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ArcError {
    /// Coordinate vector length does not match the reference edge count.
    #[error("coordinate vector has length {got}, reference has {expected} edges")]
    LengthMismatch { got: usize, expected: usize },

    /// The vector is not the coordinate vector of a single essential arc.
    #[error("invalid arc coordinates: {reason}")]
    InvalidCoordinates { reason: String },

    /// Edge index out of range.
    #[error("edge {edge} out of range (edge_count = {edge_count})")]
    OutOfRange { edge: usize, edge_count: usize },

    /// Two arcs were expected to share a reference triangulation.
    #[error("arcs reference different triangulations")]
    ReferenceMismatch,

    /// Flip transport requested across a non-flippable edge.
    #[error(transparent)]
    NotFlippable(#[from] TriangulationError),

    /// A set of arcs expected to be pairwise disjoint is not.
    #[error("arcs {first} and {second} intersect {count} times; expected disjoint")]
    NotDisjoint {
        first: usize,
        second: usize,
        count: u64,
    },

    /// The arc complex of the surface is empty (once-marked sphere).
    #[error("the arc complex of S_{{0,1}} is empty")]
    EmptyComplex,

    /// Greedy descent could not make progress; indicates an internal bug.
    #[error("flip descent stalled on coordinate vector {coords:?}")]
    DescentStalled { coords: Vec<i64> },
}

/// Errors raised by simplicial-complex operations.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    /// A vertex is missing from the ambient complex.
    #[error("vertex {index} is not a vertex of the ambient complex")]
    VertexNotInAmbient { index: usize },

    /// An unknown vertex was referenced.
    #[error("unknown vertex {index}")]
    UnknownVertex { index: usize },

    /// A claimed simplicial map fails to send some simplex to a simplex.
    #[error("map is not simplicial: image of simplex {simplex:?} is not a simplex of the target")]
    NotSimplicial { simplex: Vec<usize> },

    /// Vertex assignment length does not match the source complex.
    #[error("assignment has length {got}, source has {expected} vertices")]
    AssignmentLength { got: usize, expected: usize },

    /// Assigned target index out of range.
    #[error("assigned target vertex {index} out of range ({len} vertices)")]
    TargetOutOfRange { index: usize, len: usize },

    /// The listed simplex has a pair of vertices that are not disjoint arcs.
    #[error("simplex {simplex:?} contains intersecting arcs")]
    SimplexNotDisjoint { simplex: Vec<usize> },
}

/// Errors raised by the rigidity constructions.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    /// build_B requires a pair of arcs with intersection number one.
    #[error("arcs have intersection number {got}; expected exactly 1")]
    NotIntersectionOne { got: u64 },

    /// Bounded search for a suitable triangulation was exhausted.
    #[error("no triangulation found within search depth {depth}")]
    NoneFound { depth: usize },

    /// The construction needs an arc complex of dimension > 2.
    #[error("surface S_{{{genus},{marked_points}}} has arc complex of dimension {dim}; need > 2")]
    DimensionTooSmall {
        genus: usize,
        marked_points: usize,
        dim: i64,
    },

    /// The two triangles passed to the orientation construction do not share
    /// the named side.
    #[error("triangles are not adjacent along the given arc")]
    NotAdjacent,

    /// A precondition on triangle type was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Arc(#[from] ArcError),

    #[error(transparent)]
    Complex(#[from] ComplexError),

    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
}

/// Errors raised while reconstructing a homeomorphism from a simplicial map.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InducedError {
    /// A triangle maps to sides that do not bound a triangle of the matching
    /// type in the image triangulation.
    #[error("triangle {triangle} maps to a configuration of the wrong type")]
    TypeMismatch { triangle: usize },

    /// No global orientation assignment makes all triangle correspondences
    /// consistent.
    #[error("no consistent orientation for the reconstructed correspondence")]
    OrientationConflict,

    /// The image arcs do not form a triangulation.
    #[error("image arcs do not form a triangulation: {reason}")]
    NotATriangulation { reason: String },

    /// The propagated extension contradicts an existing assignment. This
    /// certifies that the map is not induced by any homeomorphism.
    #[error("propagation conflict at step {step}: {reason}")]
    Conflict { step: usize, reason: String },

    /// The base triangulation's arcs are not all vertices of the map's source.
    #[error("triangulation arc {edge} is not a vertex of the map's source complex")]
    MissingArc { edge: usize },

    #[error(transparent)]
    Arc(#[from] ArcError),

    #[error(transparent)]
    Complex(#[from] ComplexError),
}
