//! Computational algebra for the group of parenthesized braids: a group
//! blending the infinite braid group with Thompson's group F.
//!
//! The crate provides the word problem via subword reversing, fraction and
//! splitting normal forms, decompositions into special elements, the
//! canonical left-invariant order with sigma-positive certificates, the
//! self-distributive colouring calculus on trees, a faithful action on a
//! free group, and strand-diagram rendering.

pub mod error;
pub mod words;
pub mod trees;
pub mod reversing;
pub mod ld;
pub mod normal;
pub mod artin;
pub mod ordering;
pub mod render;

pub use error::{Error, Result};
pub use words::{Family, Letter, Sign, Word};
pub use trees::{Address, Dyadic, Position, Tree};
