//! Coding of modular geodesics by words in `x` and `y`, their arrangement on
//! the branch line of the geodesic-flow template, and explicit upper bounds
//! for the volume of the complement of their lifts in the unit tangent
//! bundle of the modular surface.

pub mod bound;
pub mod cli;
pub mod covers;
pub mod format;
pub mod geodesic;
pub mod lobachevsky;
pub mod template;
pub mod word;

pub use bound::{total_bound, BoundReport};
pub use geodesic::{geodesic_length, matrix_of, GeodMatrix};
pub use lobachevsky::{group_volume_bound, lambda, v_max, Angle};
pub use template::{arrange, crossings, decompose, piece_counts, BranchArrangement};
pub use word::{parse, CyclicWord, Letter, Syllables};
