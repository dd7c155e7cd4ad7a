//! Exact word and automorphism arithmetic in F_n.

pub mod automorphism;
pub mod stallings;
#[cfg(test)]
mod tests;
pub mod words;

pub use automorphism::{cusp_word, whitehead_generators, FreeMap};
pub use stallings::SubgroupGraph;
pub use words::{cyclic_reduce, conjugator, CyclicWord, Letter, Word};
