//! The operator algebra `E₀` generated by the `V_{x,y}`, its action on
//! concrete algebras, and the reduction of identities to operator identities.

mod element;
mod eval;
mod matrix;
mod reduce;

pub use element::{hall_element, LinearSubstitution, OperatorElement, OperatorWord};
pub use eval::{apply_operator, eval_operator, is_v_identity, vanishes_on_subspace};
pub use matrix::{
    e0_algebra, find_hall_violation, hall_identity_holds, hall_value, is_full_matrix_algebra,
    matrix_units, operator_algebra, random_matrix, MatrixAlgebra, MatrixUnits,
};
pub use reduce::{
    check_certificate, ideal_membership_expand, reduce_to_operator_identities, reduction_bound,
    Membership, MembershipBounds, MembershipTerm, ReducedIdentity,
};
