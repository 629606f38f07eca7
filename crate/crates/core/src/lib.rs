//! Exact combinatorics and linear algebra for representations of the type-A
//! chain `U_1 <-> ... <-> U_t` with the relations `B_1A_1 = 0`,
//! `B_iA_i = A_(i-1)B_(i-1)`.
//!
//! - [`partitions`]: duality, dominance, the `eta + a` operation, dimension
//!   vector classification and the partitions `lambda` and `mu`.
//! - [`exactmat`]: dense matrices over `F_p`, Jordan types and bases.
//! - [`abdiagrams`]: ab-diagrams and the pairs `(A, B)` they describe.
//! - [`quiverrep`]: points of `Z`, stability, the quotient map, flags and
//!   reducibility witnesses.
//! - [`verify`]: exhaustive and randomized checks of the structural
//!   statements, with deterministic seeding.

pub mod abdiagrams;
pub mod cli;
pub mod error;
pub mod exactmat;
pub mod partitions;
pub mod quiverrep;
pub mod verify;

pub use abdiagrams::{ABDiagram, ABRow};
pub use error::{Error, Result};
pub use exactmat::{ExactMatrix, FieldSpec};
pub use partitions::{DimVecClass, DimVecTag, DimVector, Obstruction, Partition};
pub use quiverrep::{FlagPoint, GroupElement, QuiverRep};
