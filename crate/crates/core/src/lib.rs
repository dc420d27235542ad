//! Exact computations around free products of tracial von Neumann algebras:
//! non-crossing partitions, traces of words in `L∞([0,π/2]) ∗ LZ ∗ LZ`,
//! 2×2 matrix models, and a rewriting normalizer for free-product
//! expressions with an exact free-dimension invariant.

pub mod cli;
pub mod freedim;
pub mod freeword;
pub mod matmodel;
pub mod ncpart;
pub mod rational;
pub mod trigalg;
