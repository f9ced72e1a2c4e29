//! Formal sums of generators and the abelian groups they span.
pub mod gens;
pub mod linear;
pub mod modular;
pub mod relations;
pub mod span;
pub mod sum;

pub use gens::{Mid, Tb2, Tb3, Tensor, Wedge, B2};
pub use relations::{relation_instance, RelElement, RelationInstance, RelationKind};
pub use linear::{is_zero_nf, nf_equal, Element, Linear};
pub use span::{span_membership, Membership, Ring};
pub use sum::{Combination, DirectSum, FormalSum};
