//! Exact arithmetic over arithmetic matroids: integer normal forms,
//! finitely generated abelian groups, multiplicity oracles, duality,
//! Tutte-style polynomials, activity decompositions, and toric point
//! counts.

pub mod abelian_group;
pub mod activity;
pub mod arith_matroid;
pub mod error;
pub mod exact_linalg;
pub mod fixtures;
pub mod representation;
pub mod toric_points;
pub mod tutte_poly;

pub use arith_matroid::{ArithmeticMatroid, ElementClass, GroundSet, Subset};
pub use error::{Error, Result};
pub use exact_linalg::IntMatrix;
pub use representation::Representation;
pub use tutte_poly::{BiPoly, UniPoly};
