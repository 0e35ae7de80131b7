//! Exact-arithmetic workbench for the exceptional Lie superalgebra D(2,1;a).
//!
//! The crate constructs the one-parameter family Gamma(s1,s2,s3), classifies
//! its parabolic gradings, computes Tanaka-Weisfeiler prolongations and
//! Spencer cohomology over the rational-function field, and symbolically
//! verifies explicit supervector-field realizations. All arithmetic is exact;
//! generic-rank statements carry an explicit exceptional locus.

pub mod error;
pub mod scalars;

pub mod liesuper;
pub mod prolong;
pub mod roots;
pub mod spencer;
pub mod superfields;

pub mod reductions;

pub mod acceptance;
