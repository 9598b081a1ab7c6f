//! Four-piece paradoxical decompositions of finitely many free orbits and
//! the non-amenability constants they witness.

pub mod orbits;
pub mod pieces;
pub mod report;

pub use orbits::{orbit_decompose, OrbitMember, OrbitRecord, StabilizerStatus};
pub use pieces::{dekker_pieces, piece_of, AssignedPoint, CoverCheck, Multiplier, PieceAssignment};
pub use report::{nonamenability_report, uniform_displacement, NonamenabilityReport, NStepRow, PieceChain, PointMassReport};
