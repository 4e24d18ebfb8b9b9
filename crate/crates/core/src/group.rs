//! Finitely presented groups: a generator table plus relator words over a
//! single base object.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{render_letters, GenId, Letter, ObjectId, Word};

/// The implicit base object of every group word.
pub const BASE: ObjectId = ObjectId(0);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relations: Vec<Word>,
}

impl GroupPresentation {
    /// Builds a presentation; relators are reduced, identities dropped and
    /// duplicates removed (first occurrence wins).
    pub fn new(generators: Vec<String>, relations: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateLabel(g.clone()));
            }
        }
        for r in &relations {
            if let Some(l) = r.letters().iter().find(|l| l.gen.0 >= generators.len()) {
                return Err(Error::UnmappedGenerator(l.gen.0));
            }
        }
        Ok(Self::from_parts(generators, relations))
    }

    pub(crate) fn from_parts(generators: Vec<String>, relations: Vec<Word>) -> Self {
        let mut seen = HashSet::new();
        let relations = relations
            .into_iter()
            .map(|r| Word::group_word(r.letters().to_vec(), BASE))
            .filter(|r| !r.is_identity() && seen.insert(r.clone()))
            .collect();
        Self {
            generators,
            relations,
        }
    }

    pub fn free(generators: Vec<String>) -> Result<Self> {
        Self::new(generators, Vec::new())
    }

    pub fn trivial() -> Self {
        Self::from_parts(Vec::new(), Vec::new())
    }

    /// Parses relator strings such as `a^2*b^-3` over `generators`.
    pub fn parse(generators: Vec<String>, relations: &[&str]) -> Result<Self> {
        let mut words = Vec::with_capacity(relations.len());
        for r in relations {
            words.push(parse_word(r, &generators)?);
        }
        Self::new(generators, words)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn gen_index(&self, label: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g == label).map(GenId)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.generators)
    }

    pub fn generator_word(&self, label: &str) -> Result<Word> {
        let id = self
            .gen_index(label)
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))?;
        Ok(Word::group_word(vec![Letter::new(id, false)], BASE))
    }

    pub fn render(&self, w: &Word) -> String {
        render_letters(w.letters(), &self.generators)
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.render(r)).collect()
    }

    /// Renames generators; the new labels must stay distinct.
    pub fn rename<F: Fn(&str) -> String>(&self, f: F) -> Result<Self> {
        let generators = self.generators.iter().map(|g| f(g)).collect();
        Self::new(generators, self.relations.clone())
    }

    /// Renames by an explicit table; unlisted generators keep their labels.
    pub fn rename_with(&self, table: &[(&str, &str)]) -> Result<Self> {
        let map: HashMap<&str, &str> = table.iter().copied().collect();
        self.rename(|g| map.get(g).map_or_else(|| g.to_string(), |s| s.to_string()))
    }

    /// Adds relators, keeping the generator table.
    pub fn with_relations(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra);
        Self::new(self.generators.clone(), rels)
    }

    /// Replaces every occurrence of `gen` by `replacement` (which must not
    /// mention `gen`) and removes `gen` from the generator table.
    pub fn eliminate(&self, gen: GenId, replacement: &Word) -> Result<Self> {
        if replacement.letters().iter().any(|l| l.gen == gen) {
            return Err(Error::UnknownGenerator(format!(
                "replacement for `{}` mentions it",
                self.generators[gen.0]
            )));
        }
        let shift = |l: Letter| {
            if l.gen.0 > gen.0 {
                Letter::new(GenId(l.gen.0 - 1), l.inverse)
            } else {
                l
            }
        };
        let repl: Vec<Letter> = replacement.letters().iter().map(|&l| shift(l)).collect();
        let repl_inv: Vec<Letter> = repl.iter().rev().map(|l| l.inv()).collect();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let mut out = Vec::with_capacity(r.len());
                for &l in r.letters() {
                    if l.gen == gen {
                        out.extend_from_slice(if l.inverse { &repl_inv } else { &repl });
                    } else {
                        out.push(shift(l));
                    }
                }
                Word::group_word(out, BASE)
            })
            .collect();
        let mut generators = self.generators.clone();
        generators.remove(gen.0);
        Ok(Self::from_parts(generators, relations))
    }

    /// Generators sorted by label, relators re-indexed and sorted. Two
    /// presentations that agree word for word up to ordering have equal
    /// canonical forms.
    pub fn canonical(&self) -> Self {
        let mut order: Vec<usize> = (0..self.generators.len()).collect();
        order.sort_by(|&a, &b| self.generators[a].cmp(&self.generators[b]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let generators = order.iter().map(|&i| self.generators[i].clone()).collect();
        let mut relations: Vec<Word> = self
            .relations
            .iter()
            .map(|r| {
                let letters = r
                    .letters()
                    .iter()
                    .map(|l| Letter::new(GenId(new_index[l.gen.0]), l.inverse))
                    .collect();
                Word::group_word(letters, BASE)
            })
            .collect();
        relations.sort();
        Self::from_parts(generators, relations)
    }

    /// Word-for-word equality up to generator and relator ordering.
    pub fn same_as(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "< {} | {} >",
            self.generators.join(", "),
            self.relation_strings().join(", ")
        )
    }
}

/// Parses `name`, `name^k` factors joined by `*`. Whitespace is ignored and
/// `1` denotes the identity.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word> {
    let compact: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    if compact.is_empty() {
        return Err(err(0, "empty word"));
    }
    if compact.len() == 1 && compact[0].1 == '1' {
        return Ok(Word::identity(BASE));
    }
    let mut letters = Vec::new();
    let mut i = 0;
    loop {
        let start = compact.get(i).map_or(text.len(), |c| c.0);
        let mut name = String::new();
        while let Some(&(_, c)) = compact.get(i) {
            if c.is_alphanumeric() || c == '_' || c == '.' || c == '~' {
                name.push(c);
                i += 1;
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err(err(start, "expected generator name"));
        }
        let id = generators
            .iter()
            .position(|g| *g == name)
            .ok_or_else(|| err(start, &format!("unknown generator `{name}`")))?;
        let mut power: i64 = 1;
        if let Some(&(_, '^')) = compact.get(i) {
            i += 1;
            let pstart = compact.get(i).map_or(text.len(), |c| c.0);
            let mut digits = String::new();
            if let Some(&(_, c)) = compact.get(i) {
                if c == '-' || c == '+' {
                    digits.push(c);
                    i += 1;
                }
            }
            while let Some(&(_, c)) = compact.get(i) {
                if c.is_ascii_digit() {
                    digits.push(c);
                    i += 1;
                } else {
                    break;
                }
            }
            power = digits
                .parse()
                .map_err(|_| err(pstart, "expected integer exponent"))?;
        }
        let l = Letter::new(GenId(id), power < 0);
        for _ in 0..power.unsigned_abs() {
            letters.push(l);
        }
        match compact.get(i) {
            None => break,
            Some(&(_, '*')) => i += 1,
            Some(&(p, _)) => return Err(err(p, "expected `*` or end of word")),
        }
    }
    Ok(Word::group_word(letters, BASE))
}
