//! Words in a freely generated groupoid.
//!
//! Words are written in function order: the rightmost letter is traversed
//! first. `ã₂ã₁` therefore means "first `ã₁`, then `ã₂`", and the word runs
//! from the source of `ã₁` to the target of `ã₂`.

use std::fmt;

use crate::error::{Error, Result};

/// A base point of a groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub usize);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Index into a presentation's generator table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub usize);

/// A generating edge of a groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

impl Generator {
    pub fn new(label: impl Into<String>, source: ObjectId, target: ObjectId) -> Self {
        Self {
            label: label.into(),
            source,
            target,
        }
    }

    /// A loop at `object`.
    pub fn looped(label: impl Into<String>, object: ObjectId) -> Self {
        Self::new(label, object, object)
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: GenId, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn endpoints(self, gens: &[Generator]) -> Result<(ObjectId, ObjectId)> {
        let g = gens
            .get(self.gen.0)
            .ok_or(Error::UnmappedGenerator(self.gen.0))?;
        Ok(if self.inverse {
            (g.target, g.source)
        } else {
            (g.source, g.target)
        })
    }
}

/// Cancels adjacent inverse pairs in place.
pub(crate) fn reduce_letters(letters: &mut Vec<Letter>) {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters.iter() {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    *letters = out;
}

/// A freely reduced, composable word with explicit endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    source: ObjectId,
    target: ObjectId,
}

impl Word {
    pub fn identity(object: ObjectId) -> Self {
        Self {
            letters: Vec::new(),
            source: object,
            target: object,
        }
    }

    pub fn generator(gen: GenId, gens: &[Generator]) -> Result<Self> {
        Self::from_letters(vec![Letter::new(gen, false)], gens)
    }

    /// Builds a word from letters in function order, checking composability
    /// against `gens`. An empty letter list needs [`Word::identity`].
    pub fn from_letters(letters: Vec<Letter>, gens: &[Generator]) -> Result<Self> {
        let mut endpoints = Vec::with_capacity(letters.len());
        for &l in &letters {
            endpoints.push(l.endpoints(gens)?);
        }
        // Traversal runs right to left.
        for w in endpoints.windows(2) {
            let (left_source, _) = w[0];
            let (_, right_target) = w[1];
            if left_source != right_target {
                return Err(Error::CompositionMismatch {
                    left_source,
                    right_target,
                });
            }
        }
        match (endpoints.first(), endpoints.last()) {
            (Some(&(_, target)), Some(&(source, _))) => {
                Ok(Self::from_raw(letters, source, target))
            }
            _ => Err(Error::Parse {
                position: 0,
                message: "empty letter sequence needs an explicit object".into(),
            }),
        }
    }

    /// Builds a loop at a single object without a generator table; every
    /// letter is taken to be a loop at `object`.
    pub fn group_word(letters: Vec<Letter>, object: ObjectId) -> Self {
        Self::from_raw(letters, object, object)
    }

    pub(crate) fn from_raw(mut letters: Vec<Letter>, source: ObjectId, target: ObjectId) -> Self {
        reduce_letters(&mut letters);
        Self {
            letters,
            source,
            target,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn source(&self) -> ObjectId {
        self.source
    }

    pub fn target(&self) -> ObjectId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    /// Returns `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Word) -> Result<Word> {
        if other.target != self.source {
            return Err(Error::CompositionMismatch {
                left_source: self.source,
                right_target: other.target,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self::from_raw(letters, other.source, self.target))
    }

    pub fn invert(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inv()).collect();
        Self::from_raw(letters, self.target, self.source)
    }

    /// Re-runs free reduction. Words are reduced on construction, so this is
    /// the identity on any `Word` value; it exists for callers holding raw
    /// letter sequences via [`free_reduce`].
    pub fn free_reduce(&self) -> Word {
        Self::from_raw(self.letters.clone(), self.source, self.target)
    }

    /// `w^e`; negative exponents power the inverse. Non-loops only admit `e = 1`.
    pub fn pow(&self, exponent: i64) -> Result<Word> {
        if exponent == 1 {
            return Ok(self.clone());
        }
        if !self.is_loop() {
            return Err(Error::PowerOfNonLoop {
                source_obj: self.source,
                target: self.target,
                exponent,
            });
        }
        let base = if exponent < 0 { self.invert() } else { self.clone() };
        let reps = exponent.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        Ok(Self::from_raw(letters, self.source, self.target))
    }

    /// Renders the word with `^` powers and `*` separators, e.g. `a^2*b^-3`.
    pub fn render(&self, labels: &[String]) -> String {
        render_letters(&self.letters, labels)
    }
}

/// Free reduction of a raw letter sequence; see [`Word`] for ordering.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut v = letters.to_vec();
    reduce_letters(&mut v);
    v
}

pub(crate) fn render_letters(letters: &[Letter], labels: &[String]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let power = (j - i) as i64 * l.sign();
        let name = labels
            .get(l.gen.0)
            .cloned()
            .unwrap_or_else(|| format!("g{}", l.gen.0));
        if power == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{power}"));
        }
        i = j;
    }
    parts.join("*")
}

/// An object-fixing map from the generators of one groupoid to words of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidMorphism {
    images: Vec<Word>,
}

impl GroupoidMorphism {
    /// Checks totality and object-fixing against the domain's generator table.
    pub fn new(domain: &[Generator], images: Vec<Word>) -> Result<Self> {
        if images.len() < domain.len() {
            return Err(Error::UnmappedGenerator(images.len()));
        }
        for (g, w) in domain.iter().zip(&images) {
            if g.source != w.source() || g.target != w.target() {
                return Err(Error::NotObjectFixing {
                    label: g.label.clone(),
                });
            }
        }
        Ok(Self { images })
    }

    pub fn identity(domain: &[Generator]) -> Result<Self> {
        let images = (0..domain.len())
            .map(|i| Word::generator(GenId(i), domain))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, images)
    }

    pub fn image(&self, gen: GenId) -> Option<&Word> {
        self.images.get(gen.0)
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Substitutes each letter by its image and reduces.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut letters = Vec::new();
        for l in w.letters() {
            let img = self
                .images
                .get(l.gen.0)
                .ok_or(Error::UnmappedGenerator(l.gen.0))?;
            if l.inverse {
                letters.extend(img.letters().iter().rev().map(|x| x.inv()));
            } else {
                letters.extend_from_slice(img.letters());
            }
        }
        Ok(Word::from_raw(letters, w.source(), w.target()))
    }
}
