//! Exact verification toolkit for a family of congruence lattices in SL(8,R)
//! that all contain one fixed hyperbolic 3-manifold group.

pub mod congruence;
pub mod funcfield;
pub mod linalg;
pub mod numbers;
pub mod pell;
pub mod ring;
pub mod systole;
pub mod vol3;
