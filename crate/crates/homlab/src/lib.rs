//! Finite homogeneous metric spaces as edge-colored complete graphs:
//! homogeneity predicates, invariant decompositions, normed Z2-space
//! representations, the constructions they classify, triangle schemes, and
//! an exhaustive search for the maximal number of distances over small
//! vertex-transitive colorings.

pub mod amalgamation;
pub mod canon;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod homogeneity;
pub mod perm;
pub mod search;
pub mod space;
pub mod structure;

pub use canon::{canonical_form, equivalent};
pub use error::{Error, Result};
pub use perm::{close, PermGroup, Permutation, DEFAULT_ORDER_CAP};
pub use space::{ColoredSpace, PartialIsometry};
