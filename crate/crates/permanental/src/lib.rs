//! Exact machinery for cycle-weighted matrix permanents and the graph,
//! permutation, and partition distributions built on them.
//!
//! The centrepiece is the alpha-weighted permanent
//! `per_alpha(G) = sum_{sigma in S_n} alpha^(#sigma) prod_i G[i][sigma(i)]`
//! (`#sigma` = number of cycles), computed exactly for boolean graphs as a
//! cycle polynomial. On top of it:
//!
//! * [`pgm`] — the Permanental Graph Model `P(G) ∝ beta^(#G) per_alpha(G)`,
//!   with a closed-form normalizer, exact degree law, and an O(n^2) exact
//!   sampler.
//! * [`crp`] — Ewens/CRP(alpha) distributions on permutations and set
//!   partitions, plus the delete-and-repair consistency identity they
//!   satisfy.
//! * [`projection`] — the two vertex-removal operators (subselection and
//!   delete-and-repair) with exact preimage enumeration.
//! * [`consistency`] — exact law-of-total-probability checking for both
//!   operators, including the bivariate-polynomial certificate showing that
//!   no `(alpha, beta)` makes the full-support model projectively
//!   consistent, and the positive result for the Ewens family.
//!
//! Everything model-facing is exact: big integers and big rationals
//! throughout, floating point only in statistical test helpers. All public
//! types are immutable values, safe to share between threads.

pub mod consistency;
pub mod crp;
pub mod error;
pub mod fixtures;
pub mod graphs;
pub mod permanent;
pub mod pgm;
pub mod projection;
pub mod rational;

pub use error::{Error, Result};
pub use graphs::{enumerate_graphs, DirectedGraph, Partition, Permutation, MAX_VERTICES};
pub use permanent::{
    alpha_permanent_bruteforce, cycle_polynomial, has_permutation, ryser_permanent,
    CyclePolynomial, RationalMatrix,
};
