//! Seifert–van Kampen pushout for groupoids.
//!
//! Given connected `πA`, `πB` and a totally disconnected `πC` over one object
//! set `P`, inclusions `i: πC → πA`, `j: πC → πB` and retractions `r`, `s`
//! onto a base `x₀`, the object group `πX(x₀)` is
//!
//! ```text
//! ⟨ πA(x₀) ∗ πB(x₀) ∗ F(x₀) | (r i γ) f_y (s j γ)⁻¹ f_y⁻¹  for γ generating πC(y), y ∈ P ⟩
//! ```
//!
//! where `F(x₀)` is free on `f_y` with `f_{x₀} = 1`.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{GroupPresentation, BASE};
use crate::groupoid::{retract, GroupoidPresentation, Retracted, Retraction};
use crate::word::{GenId, GroupoidMorphism, Letter, ObjectId, Word};

/// Namespace tags for the three free factors.
pub const TAG_A: &str = "A";
pub const TAG_B: &str = "B";
pub const TAG_F: &str = "F";

#[derive(Debug, Clone)]
pub struct PushoutInput {
    pub pi_a: GroupoidPresentation,
    pub pi_b: GroupoidPresentation,
    pub pi_c: GroupoidPresentation,
    pub i: GroupoidMorphism,
    pub j: GroupoidMorphism,
    pub r_a: Retraction,
    pub r_b: Retraction,
    pub base: ObjectId,
}

impl PushoutInput {
    pub fn validate(&self) -> Result<()> {
        let n = self.pi_c.num_objects();
        for other in [&self.pi_a, &self.pi_b] {
            if other.num_objects() != n {
                return Err(Error::ObjectSetMismatch(other.num_objects(), n));
            }
        }
        if self.base.0 >= n {
            return Err(Error::ObjectSetMismatch(self.base.0 + 1, n));
        }
        if !self.pi_c.is_totally_disconnected() {
            return Err(Error::NonFreeIntersection(
                "a generator joins distinct objects".into(),
            ));
        }
        if !self.pi_c.relations().is_empty() {
            return Err(Error::NonFreeIntersection("relations are not supported".into()));
        }
        if self.r_a.base() != self.base || self.r_b.base() != self.base {
            return Err(Error::ConnectorInvalid {
                object: self.base,
                reason: "retraction base differs from the pushout base".into(),
            });
        }
        for (m, target) in [(&self.i, &self.pi_a), (&self.j, &self.pi_b)] {
            // Re-check the morphism against both ends.
            GroupoidMorphism::new(self.pi_c.generators(), m.images().to_vec())?;
            for w in m.images() {
                if !w.is_identity() {
                    Word::from_letters(w.letters().to_vec(), target.generators())?;
                }
            }
        }
        Ok(())
    }
}

/// Free group on `f_y`, `y ≠ base`, labelled `f{y}`.
pub fn make_f_generators(objects: usize, base: ObjectId) -> GroupPresentation {
    let labels = (0..objects)
        .filter(|&y| y != base.0)
        .map(|y| format!("f{y}"))
        .collect();
    GroupPresentation::from_parts(labels, Vec::new())
}

fn shift(w: &Word, offset: usize) -> Vec<Letter> {
    w.letters()
        .iter()
        .map(|l| Letter::new(GenId(l.gen.0 + offset), l.inverse))
        .collect()
}

/// Presentation of `πX(base)`. Generators are namespaced `A_…`, `B_…`, `F_f{y}`.
pub fn pushout(input: &PushoutInput) -> Result<GroupPresentation> {
    input.validate()?;
    let ra = retract(&input.pi_a, &input.r_a)?;
    let rb = retract(&input.pi_b, &input.r_b)?;
    let f = make_f_generators(input.pi_c.num_objects(), input.base);

    let off_b = ra.group.num_generators();
    let off_f = off_b + rb.group.num_generators();
    let mut labels = Vec::with_capacity(off_f + f.num_generators());
    labels.extend(ra.group.generators().iter().map(|g| format!("{TAG_A}_{g}")));
    labels.extend(rb.group.generators().iter().map(|g| format!("{TAG_B}_{g}")));
    labels.extend(f.generators().iter().map(|g| format!("{TAG_F}_{g}")));

    let mut relations: Vec<Word> = Vec::new();
    relations.extend(ra.group.relations().iter().map(|r| Word::group_word(shift(r, 0), BASE)));
    relations.extend(rb.group.relations().iter().map(|r| Word::group_word(shift(r, off_b), BASE)));

    let f_letter = |y: ObjectId| -> Option<Letter> {
        if y == input.base {
            None
        } else {
            let idx = if y.0 > input.base.0 { y.0 - 1 } else { y.0 };
            Some(Letter::new(GenId(off_f + idx), false))
        }
    };
    let relator = |gi: usize| -> Word {
        let y = input.pi_c.generators()[gi].source;
        let gamma = GenId(gi);
        let ri = image(&ra, &input.i, gamma);
        let sj = image(&rb, &input.j, gamma);
        let fy = f_letter(y);
        let mut letters = shift(&ri, 0);
        letters.extend(fy);
        letters.extend(shift(&sj.invert(), off_b));
        letters.extend(fy.map(Letter::inv));
        Word::group_word(letters, BASE)
    };
    let count = input.pi_c.generators().len();
    #[cfg(feature = "parallel")]
    let glued: Vec<Word> = (0..count).into_par_iter().map(relator).collect();
    #[cfg(not(feature = "parallel"))]
    let glued: Vec<Word> = (0..count).map(relator).collect();
    relations.extend(glued);

    GroupPresentation::new(labels, relations)
}

fn image(r: &Retracted, m: &GroupoidMorphism, gamma: GenId) -> Word {
    r.apply(m.image(gamma).expect("validated morphism is total"))
}
