//! Ideal triangulations, edge classes and (possibly augmented) spines.

mod abstract_spine;
mod triangulation;

pub use abstract_spine::{dual_spine, AbstractSpine, SpineEdge, SpineFace, SpineVertex};
pub use triangulation::{
    edge_classes, edge_slot, face_vertices, Partition, Perm4, Tetrahedron, Triangulation, TET_EDGES,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpineError {
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("tetrahedron {tet} face {face}: neighbor {neighbor} does not exist")]
    DanglingNeighbor { tet: usize, face: usize, neighbor: usize },
    #[error("tetrahedron {tet} face {face}: gluing is not a permutation of 0..3")]
    NotAPermutation { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face}: gluing is not matched by the inverse on the other side")]
    NonInvolutive { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("{what} {index} refers to missing face {face}")]
    UnknownFace { what: &'static str, index: usize, face: usize },
    #[error("{what} {index} has Euler weight {chi}, expected 0 or 1")]
    BadEulerWeight { what: &'static str, index: usize, chi: u8 },
    #[error("face {face} has forced color {color}; only 1 is allowed")]
    BadForcedColor { face: usize, color: u32 },
    #[error("forced face {face} must have Euler weight 0")]
    ForcedFaceWeight { face: usize },
    #[error("vertex corners with faces {triple:?} do not pair with edge ends")]
    InconsistentIncidence { triple: [usize; 3] },
    #[error("spine is augmented; the boundary coloring is undefined")]
    Augmented,
}
