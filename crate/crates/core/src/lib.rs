//! Knot groups of torus links, torus links with core unknots, and nested torus
//! links, computed with the groupoid Seifert–van Kampen theorem and checked
//! against closed forms with isomorphism invariants.
//!
//! Parallel search in homomorphism counting and pushout relation assembly is
//! enabled by the default `parallel` feature; without it every operation runs
//! sequentially and gives identical results.

pub mod analysis;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod links;
pub mod svk;
pub mod word;

pub use analysis::{
    abelianize, fingerprint, hom_count, tietze_simplify, AbelianInvariants, HomFingerprint,
};
pub use error::{Error, Result};
pub use group::GroupPresentation;
pub use groupoid::{retract, GroupoidPresentation, Retraction};
pub use links::{link_group, LinkSpec, Method, TorusLinkParams};
pub use svk::{pushout, PushoutInput};
pub use word::{GenId, Generator, GroupoidMorphism, Letter, ObjectId, Word};
