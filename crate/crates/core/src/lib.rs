//! Finite models of algebraic patterns: pointed finite sets, simplices,
//! level forests from the plus construction, Segal conditions for operadic
//! nerves, and monoidal envelopes, all checked exhaustively on bounded
//! windows.

pub mod envelope;
pub mod forest;
pub mod gamma;
pub mod kernel;
pub mod operad;
pub mod segal;
pub mod simplex;
pub mod suites;
