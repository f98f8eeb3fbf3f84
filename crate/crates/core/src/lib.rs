//! Exact enumeration, classification and point counting for two-column
//! Springer fibers of types A and D over small prime fields.

pub mod bs;
pub mod combinat;
pub mod flags_a;
pub mod flags_d;
pub mod gf;
pub mod pointcount;
pub mod qpoly;
pub mod search;
pub mod verify;
pub mod weyl;
