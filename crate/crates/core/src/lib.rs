//! Toric evaluation codes over GF(q) and CSS quantum codes built from them.

pub mod cli;
pub mod codes;
pub mod gf;
pub mod lattice;
pub mod quantum;
pub mod toric;
