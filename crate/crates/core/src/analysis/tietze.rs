//! Tietze simplification of group presentations.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{GroupPresentation, BASE};
use crate::word::{GenId, Letter, Word};

/// Cyclically reduces a freely reduced relator.
pub fn cyclic_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    letters[lo..hi].to_vec()
}

/// Least rotation of the relator or its inverse; equal keys define the same
/// normal closure.
pub fn cyclic_key(letters: &[Letter]) -> Vec<Letter> {
    let inverse: Vec<Letter> = letters.iter().rev().map(|l| l.inv()).collect();
    let n = letters.len();
    let mut best: Option<Vec<Letter>> = None;
    for word in [letters, &inverse[..]] {
        for s in 0..n.max(1) {
            let rot: Vec<Letter> = word[s..].iter().chain(&word[..s]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn normalize(g: &GroupPresentation) -> GroupPresentation {
    let mut seen = HashSet::new();
    let relations = g
        .relations()
        .iter()
        .map(|r| Word::group_word(cyclic_reduce(r.letters()), BASE))
        .filter(|r| !r.is_identity() && seen.insert(cyclic_key(r.letters())))
        .collect();
    GroupPresentation::from_parts(g.generators().to_vec(), relations)
}

/// Solves relator `rel` for the single occurrence of `gen`.
fn solve_for(rel: &Word, gen: GenId) -> Word {
    let letters = rel.letters();
    let at = letters.iter().position(|l| l.gen == gen).expect("occurrence");
    // rel ~ g^e * rest, so g^e = rest^-1
    let rest: Vec<Letter> = letters[at + 1..]
        .iter()
        .chain(&letters[..at])
        .copied()
        .collect();
    let rest = Word::group_word(rest, BASE);
    if letters[at].inverse {
        rest
    } else {
        rest.invert()
    }
}

fn single_occurrences(rel: &Word) -> Vec<GenId> {
    let mut counts = std::collections::BTreeMap::new();
    for l in rel.letters() {
        *counts.entry(l.gen).or_insert(0usize) += 1;
    }
    counts
        .into_iter()
        .filter(|&(_, c)| c == 1)
        .map(|(g, _)| g)
        .collect()
}

fn drop_relation(g: &GroupPresentation, index: usize) -> GroupPresentation {
    let mut rels = g.relations().to_vec();
    rels.remove(index);
    GroupPresentation::from_parts(g.generators().to_vec(), rels)
}

/// Eliminates `label` using the shortest relator in which it occurs exactly
/// once.
pub fn eliminate_generator(g: &GroupPresentation, label: &str) -> Result<GroupPresentation> {
    let gen = g
        .gen_index(label)
        .ok_or_else(|| Error::UnknownGenerator(label.to_string()))?;
    let (index, rel) = g
        .relations()
        .iter()
        .enumerate()
        .filter(|(_, r)| single_occurrences(r).contains(&gen))
        .min_by_key(|(_, r)| r.len())
        .ok_or_else(|| Error::NotEliminable(label.to_string()))?;
    let replacement = solve_for(rel, gen);
    drop_relation(g, index).eliminate(gen, &replacement)
}

/// Applies up to `budget` generator eliminations, interleaved with free and
/// cyclic reduction and removal of identity and duplicate relators.
///
/// Each elimination uses the shortest relator containing some generator
/// exactly once; among such generators the last one in the table goes.
pub fn tietze_simplify(g: &GroupPresentation, budget: usize) -> GroupPresentation {
    let mut cur = normalize(g);
    for _ in 0..budget {
        let candidate = cur
            .relations()
            .iter()
            .enumerate()
            .filter_map(|(i, r)| single_occurrences(r).last().map(|&gen| (i, r.len(), gen)))
            .min_by_key(|&(i, len, _)| (len, i));
        let Some((index, _, gen)) = candidate else {
            break;
        };
        let replacement = solve_for(&cur.relations()[index], gen);
        cur = match drop_relation(&cur, index).eliminate(gen, &replacement) {
            Ok(next) => normalize(&next),
            Err(_) => break,
        };
    }
    cur
}
