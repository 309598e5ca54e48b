//! Exact verification toolkit for K3 surfaces whose automorphism group
//! contains a Klein four-group.
//!
//! The crate is split along the natural layers of the computation:
//! [`poly`] does exact polynomial algebra over Q, [`lattice`] handles even
//! integral lattices, [`divisor`] works on dual graphs of (-2)-curves,
//! [`fibration`] analyses Weierstrass models, [`surface`] builds the double
//! sextic and quartic normal forms and checks birational maps, and
//! [`singularity`] classifies rational double points. [`report`] glues all
//! of it into a reproducible suite.

#![allow(clippy::needless_range_loop)]

pub mod ade;
pub mod divisor;
pub mod fibration;
pub mod lattice;
pub mod poly;
pub mod random;
pub mod report;
pub mod singularity;
pub mod surface;

pub use poly::{MultiPoly, RationalFunction, RationalMap, Scalar};
