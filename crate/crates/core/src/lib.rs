//! Exact computations in right-symmetric metabelian algebras: structure
//! constant algebras, the family `P_n`, normal forms in the free algebra of
//! the variety, operator identities, and a finite algebra whose operator
//! identities admit no finite basis.

pub mod algebra;
pub mod counterexample;
pub mod error;
pub mod free;
pub mod identity;
pub mod linalg;
pub mod operator;
pub mod parse;
pub mod pn;
pub mod poly;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod spec_file;
pub mod verify;

pub use algebra::{Algebra, Element, LinOp, Subspace};
pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
