//! Structural recognition of VCSP instances.

pub mod arcs;
pub mod border;
pub mod independence;
pub mod pathdecomp;
pub mod poset;

pub use arcs::{
    arc_direction, arc_direction_with_limit, classify, classify_with_limit, oriented_poset,
    ArcKind, ArcSet, ClassLabel, ClassWitness, Classification, EdgeArcs, DEFAULT_BACKGROUND_LIMIT,
};
pub use border::{correct_border, free_height, BorderInfo};
pub use independence::{
    conditionally_sign_independent, conditionally_smooth, is_smooth, SmoothCert,
};
pub use pathdecomp::{verify_path_decomposition, PathDecompositionCheck};
pub use poset::Poset;
