//! Combinatorics of the weight-13 Getzler–Kapranov graph complex.
//!
//! The crate is built around a half-edge multigraph substrate ([`graph`])
//! with deterministic canonical forms ([`canon`]), decorated generators and
//! their local normalization ([`generator`]), the vertex-splitting
//! differential ([`differential`]), the blown-up component census
//! ([`component`], [`census`]), exact rational sparse linear algebra
//! ([`linalg`]), symmetric-group characters ([`specht`]) and the per-(g,n)
//! chain complex assembly ([`complex`]).
//!
//! Everything here is exact (arbitrary-precision rationals) and
//! deterministic: all collections iterate in canonical order, so repeated
//! runs produce byte-identical results.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canon;
pub mod census;
pub mod complex;
pub mod component;
pub mod decoration;
pub mod differential;
pub mod generator;
pub mod graph;
pub mod linalg;
pub mod rat;
pub mod specht;

pub(crate) mod prelude {
    pub use alloc::borrow::ToOwned;
    pub use alloc::collections::{BTreeMap, BTreeSet};
    pub use alloc::format;
    pub use alloc::string::{String, ToString};
    pub use alloc::vec;
    pub use alloc::vec::Vec;
}
