//! Block-wise simple permutations.
//!
//! A permutation is block-wise simple when none of its intervals (the whole
//! permutation included) is a direct sum or a skew sum. This crate detects
//! and decomposes them, counts them three independent ways (exhaustive
//! search, the composition recursion, and exact generating functions),
//! builds their interval posets, maps those posets to polygon dissections,
//! evaluates Möbius values, and expands two-sided Eulerian polynomials in
//! the gamma basis.

pub mod counting;
pub mod decomposition;
pub mod enumeration;
pub mod error;
pub mod eulerian;
pub mod perm;
pub mod polygon;
pub mod poset;
pub mod series;

pub use decomposition::{
    decomp_tree, is_blockwise_simple, is_blockwise_simple_by_intervals,
    is_blockwise_simple_recursive, is_skew_decomposable, is_sum_decomposable, skeleton_decompose,
    DecompTree, NodeKind, Substitution,
};
pub use enumeration::{PermClass, DEFAULT_CAP};
pub use error::{Error, Result};
pub use eulerian::{BivarPoly, GammaExpansion};
pub use perm::{AllPermutations, Permutation, ValueRange, Window};
pub use polygon::PolygonDissection;
pub use poset::{build_interval_poset, IntervalPoset, PosetElement, PosetSignature};
pub use series::Series;
