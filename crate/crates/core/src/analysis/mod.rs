//! Isomorphism invariants and simplification for finitely presented groups.

mod abelian;
mod hom;
mod tietze;

pub use abelian::{abelianize, exponent_matrix, smith_diagonal, AbelianInvariants};
pub use hom::{
    fingerprint, hom_count, HomCounter, HomFingerprint, SymmetricGroup, DEFAULT_DEGREE_CAP,
    MAX_DEGREE,
};
pub use tietze::{cyclic_key, cyclic_reduce, eliminate_generator, tietze_simplify};
