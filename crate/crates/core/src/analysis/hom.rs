//! Counting homomorphisms into symmetric groups.
//!
//! `|Hom(G, S_k)|` is an isomorphism invariant of `G`. Fingerprint equality is
//! evidence that two presentations define the same group, never a proof.

use std::collections::{BTreeMap, HashMap};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::GroupPresentation;

/// Default upper bound on the symmetric group degree.
pub const DEFAULT_DEGREE_CAP: usize = 5;
/// Largest degree the multiplication tables are ever built for.
pub const MAX_DEGREE: usize = 6;

/// Multiplication table of `S_k`, permutations indexed in lexicographic order.
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    degree: usize,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl SymmetricGroup {
    pub fn new(degree: usize) -> Self {
        let perms = permutations(degree);
        let order = perms.len();
        let index: HashMap<&[u8], u16> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i as u16))
            .collect();
        let mut mul = vec![0u16; order * order];
        let mut inv = vec![0u16; order];
        let mut buf = vec![0u8; degree];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // (a·b)(x) = a(b(x))
                for x in 0..degree {
                    buf[x] = pa[pb[x] as usize];
                }
                mul[a * order + b] = index[buf.as_slice()];
            }
            for x in 0..degree {
                buf[pa[x] as usize] = x as u8;
            }
            inv[a] = index[buf.as_slice()];
        }
        Self {
            degree,
            order,
            mul,
            inv,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Index of the identity permutation.
    pub fn identity(&self) -> u16 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Backtracking counter for `|Hom(G, S_k)|`.
///
/// Generators are assigned in a greedy order that completes relators as early
/// as possible; each relator is checked as soon as all of its generators have
/// images. Generators absent from every relator contribute a factor `k!`.
#[derive(Debug, Clone)]
pub struct HomCounter {
    sym: SymmetricGroup,
    /// Relators rewritten over positions in the assignment order.
    relators: Vec<Vec<(usize, bool)>>,
    /// Relators to check right after position `i` is assigned.
    checks: Vec<Vec<usize>>,
    assigned: usize,
    free_factor: u32,
}

impl HomCounter {
    pub fn new(g: &GroupPresentation, degree: usize) -> Result<Self> {
        Self::with_cap(g, degree, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(g: &GroupPresentation, degree: usize, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_DEGREE);
        if degree > cap || degree == 0 {
            return Err(Error::DegreeTooLarge { degree, cap });
        }
        let n = g.num_generators();
        let rel_gens: Vec<Vec<usize>> = g
            .relations()
            .iter()
            .map(|r| {
                let mut v: Vec<usize> = r.letters().iter().map(|l| l.gen.0).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let mut occurrences = vec![0usize; n];
        for gs in &rel_gens {
            for &x in gs {
                occurrences[x] += 1;
            }
        }

        let mut order = Vec::new();
        let mut placed = vec![false; n];
        let constrained = (0..n).filter(|&x| occurrences[x] > 0).count();
        while order.len() < constrained {
            // Prefer the generator that closes the most relators, then the one
            // sharing the most relators with already placed generators.
            let score = |x: usize| {
                let mut closes = 0;
                let mut touches = 0;
                for gs in rel_gens.iter().filter(|gs| gs.contains(&x)) {
                    let missing = gs.iter().filter(|&&y| y != x && !placed[y]).count();
                    if missing == 0 {
                        closes += 1;
                    }
                    if missing < gs.len() - 1 {
                        touches += 1;
                    }
                }
                (closes, touches, occurrences[x], std::cmp::Reverse(x))
            };
            let next = (0..n)
                .filter(|&x| !placed[x] && occurrences[x] > 0)
                .max_by_key(|&x| score(x))
                .expect("unplaced constrained generator");
            placed[next] = true;
            order.push(next);
        }
        let mut position = vec![usize::MAX; n];
        for (p, &x) in order.iter().enumerate() {
            position[x] = p;
        }
        let relators: Vec<Vec<(usize, bool)>> = g
            .relations()
            .iter()
            .map(|r| {
                r.letters()
                    .iter()
                    .map(|l| (position[l.gen.0], l.inverse))
                    .collect()
            })
            .collect();
        let mut checks = vec![Vec::new(); order.len()];
        for (ri, gs) in rel_gens.iter().enumerate() {
            if let Some(last) = gs.iter().map(|&x| position[x]).max() {
                checks[last].push(ri);
            }
        }
        Ok(Self {
            sym: SymmetricGroup::new(degree),
            relators,
            checks,
            assigned: order.len(),
            free_factor: (n - order.len()) as u32,
        })
    }

    fn relator_holds(&self, r: &[(usize, bool)], images: &[u16]) -> bool {
        let mut acc = self.sym.identity();
        for &(p, inv) in r {
            let x = if inv {
                self.sym.inv(images[p])
            } else {
                images[p]
            };
            acc = self.sym.mul(acc, x);
        }
        acc == self.sym.identity()
    }

    fn extend(&self, pos: usize, images: &mut Vec<u16>) -> u128 {
        if pos == self.assigned {
            return 1;
        }
        let mut total = 0;
        for img in 0..self.sym.order() as u16 {
            images[pos] = img;
            if self.checks[pos]
                .iter()
                .all(|&ri| self.relator_holds(&self.relators[ri], images))
            {
                total += self.extend(pos + 1, images);
            }
        }
        total
    }

    fn scale(&self, constrained: u128) -> u128 {
        constrained * (self.sym.order() as u128).pow(self.free_factor)
    }

    fn count_from(&self, first: u16) -> u128 {
        let mut images = vec![0u16; self.assigned];
        images[0] = first;
        if self.checks[0]
            .iter()
            .all(|&ri| self.relator_holds(&self.relators[ri], &images))
        {
            self.extend(1, &mut images)
        } else {
            0
        }
    }

    pub fn count_sequential(&self) -> u128 {
        if self.assigned == 0 {
            return self.scale(1);
        }
        let n = (0..self.sym.order() as u16)
            .map(|f| self.count_from(f))
            .sum();
        self.scale(n)
    }

    /// Splits the search over the image of the first generator.
    #[cfg(feature = "parallel")]
    pub fn count_parallel(&self) -> u128 {
        if self.assigned == 0 {
            return self.scale(1);
        }
        let n = (0..self.sym.order() as u16)
            .into_par_iter()
            .map(|f| self.count_from(f))
            .sum();
        self.scale(n)
    }

    pub fn count(&self) -> u128 {
        #[cfg(feature = "parallel")]
        {
            self.count_parallel()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.count_sequential()
        }
    }
}

pub fn hom_count(g: &GroupPresentation, degree: usize) -> Result<u128> {
    Ok(HomCounter::new(g, degree)?.count())
}

/// `k ↦ |Hom(G, S_k)|` for `k = 1 ..= kmax`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomFingerprint {
    pub counts: BTreeMap<usize, u128>,
}

impl HomFingerprint {
    pub fn as_vec(&self) -> Vec<u128> {
        self.counts.values().copied().collect()
    }
}

pub fn fingerprint(g: &GroupPresentation, kmax: usize) -> Result<HomFingerprint> {
    let mut counts = BTreeMap::new();
    for k in 1..=kmax {
        counts.insert(k, hom_count(g, k)?);
    }
    Ok(HomFingerprint { counts })
}
