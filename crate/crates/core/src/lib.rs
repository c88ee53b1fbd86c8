//! Exact computations for affine toric varieties: integer normal forms,
//! rational polyhedral cones, Groebner bases over prime fields, toric ideals,
//! divisor class groups and divisorial modules, and line-bundle cohomology on
//! products of projective lines.

pub mod cohomology;
pub mod cone;
pub mod divisor;
pub mod par;
pub mod polyring;
pub mod toric;
pub mod zlinalg;
