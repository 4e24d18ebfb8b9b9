//! Groupoid presentations and their deformation retraction to an object group.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::{GroupPresentation, BASE};
use crate::word::{GenId, Generator, Letter, ObjectId, Word};

/// Generator graph plus relation loops over objects `x0 .. x{objects-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidPresentation {
    objects: usize,
    generators: Vec<Generator>,
    relations: Vec<Word>,
}

impl GroupoidPresentation {
    /// Validates and normalizes: identity relations are dropped and
    /// duplicates removed.
    pub fn new(objects: usize, generators: Vec<Generator>, relations: Vec<Word>) -> Result<Self> {
        let g = Self {
            objects,
            generators,
            relations,
        };
        g.validate()?;
        let mut seen = HashSet::new();
        let relations = g
            .relations
            .into_iter()
            .filter(|r| !r.is_identity() && seen.insert(r.clone()))
            .collect();
        Ok(Self {
            objects: g.objects,
            generators: g.generators,
            relations,
        })
    }

    /// Free groupoid on a generator graph.
    pub fn free(objects: usize, generators: Vec<Generator>) -> Result<Self> {
        Self::new(objects, generators, Vec::new())
    }

    pub fn validate(&self) -> Result<()> {
        let mut labels = HashSet::new();
        for g in &self.generators {
            if g.source.0 >= self.objects || g.target.0 >= self.objects {
                return Err(Error::DanglingEndpoint {
                    label: g.label.clone(),
                    objects: self.objects,
                });
            }
            if !labels.insert(g.label.as_str()) {
                return Err(Error::DuplicateLabel(g.label.clone()));
            }
        }
        for (index, r) in self.relations.iter().enumerate() {
            if !r.is_loop() || r.source().0 >= self.objects {
                return Err(Error::RelationNotLoop {
                    index,
                    source_obj: r.source(),
                    target: r.target(),
                });
            }
            if !r.is_identity() {
                // Re-derive endpoints from the generator table.
                let w = Word::from_letters(r.letters().to_vec(), &self.generators)?;
                if w.source() != r.source() || w.target() != r.target() {
                    return Err(Error::RelationNotLoop {
                        index,
                        source_obj: w.source(),
                        target: w.target(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn gen_index(&self, label: &str) -> Option<GenId> {
        self.generators
            .iter()
            .position(|g| g.label == label)
            .map(GenId)
    }

    /// Single-generator word for `label`.
    pub fn gen_word(&self, label: &str) -> Result<Word> {
        let id = self
            .gen_index(label)
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))?;
        Word::generator(id, &self.generators)
    }

    /// Word from `(label, exponent)` factors in function order; every factor
    /// with exponent other than ±1 must be a loop.
    pub fn word(&self, factors: &[(&str, i64)]) -> Result<Word> {
        let mut letters = Vec::new();
        for &(label, e) in factors {
            let id = self
                .gen_index(label)
                .ok_or_else(|| Error::UnknownGenerator(label.to_string()))?;
            for _ in 0..e.unsigned_abs() {
                letters.push(Letter::new(id, e < 0));
            }
        }
        Word::from_letters(letters, &self.generators)
    }

    pub fn is_connected(&self) -> bool {
        if self.objects == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.objects).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.objects;
        for g in &self.generators {
            let (a, b) = (find(&mut parent, g.source.0), find(&mut parent, g.target.0));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// Every generator is a loop.
    pub fn is_totally_disconnected(&self) -> bool {
        self.generators.iter().all(Generator::is_loop)
    }

    /// Generators of the object group at `x` for the two graph shapes the
    /// link constructions produce: a single directed cycle through every
    /// object, or disjoint loops.
    pub fn object_group_generators(&self, x: ObjectId) -> Result<Vec<Word>> {
        if !self.relations.is_empty() || x.0 >= self.objects {
            return Err(Error::UnsupportedShape);
        }
        if self.is_totally_disconnected() {
            return self
                .generators
                .iter()
                .enumerate()
                .filter(|(_, g)| g.source == x)
                .map(|(i, _)| Word::generator(GenId(i), &self.generators))
                .collect();
        }
        if self.generators.len() != self.objects {
            return Err(Error::UnsupportedShape);
        }
        let mut out_edge = vec![None; self.objects];
        let mut in_deg = vec![0usize; self.objects];
        for (i, g) in self.generators.iter().enumerate() {
            if out_edge[g.source.0].replace(i).is_some() {
                return Err(Error::UnsupportedShape);
            }
            in_deg[g.target.0] += 1;
        }
        if in_deg.iter().any(|&d| d != 1) {
            return Err(Error::UnsupportedShape);
        }
        let mut word = Word::identity(x);
        let mut at = x;
        for _ in 0..self.objects {
            let e = out_edge[at.0].ok_or(Error::UnsupportedShape)?;
            word = Word::generator(GenId(e), &self.generators)?.compose(&word)?;
            at = self.generators[e].target;
            if at == x {
                break;
            }
        }
        if at != x || word.len() != self.objects {
            return Err(Error::UnsupportedShape);
        }
        Ok(vec![word])
    }
}

/// Connector choice `y ↦ α_y ∈ G(x0, y)` defining a deformation retraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    base: ObjectId,
    connectors: Vec<Word>,
}

impl Retraction {
    pub fn new(base: ObjectId, connectors: Vec<Word>) -> Result<Self> {
        for (y, c) in connectors.iter().enumerate() {
            let y = ObjectId(y);
            if c.source() != base || c.target() != y {
                return Err(Error::ConnectorInvalid {
                    object: y,
                    reason: format!("runs {} -> {}", c.source(), c.target()),
                });
            }
            if y == base && !c.is_identity() {
                return Err(Error::ConnectorInvalid {
                    object: y,
                    reason: "connector at the base must be the identity".into(),
                });
            }
        }
        if base.0 >= connectors.len() {
            return Err(Error::ConnectorInvalid {
                object: base,
                reason: "base outside the object set".into(),
            });
        }
        Ok(Self { base, connectors })
    }

    /// Identity retraction of a one-object groupoid.
    pub fn trivial() -> Self {
        Self {
            base: ObjectId(0),
            connectors: vec![Word::identity(ObjectId(0))],
        }
    }

    /// Connectors along a breadth-first spanning tree rooted at `base`.
    pub fn spanning_tree(g: &GroupoidPresentation, base: ObjectId) -> Result<Self> {
        let n = g.num_objects();
        let mut conn: Vec<Option<Word>> = vec![None; n];
        conn[base.0] = Some(Word::identity(base));
        let mut queue = VecDeque::from([base]);
        while let Some(at) = queue.pop_front() {
            let here = conn[at.0].clone().expect("visited");
            for (i, e) in g.generators().iter().enumerate() {
                let step = if e.source == at && conn[e.target.0].is_none() {
                    Some((e.target, Word::generator(GenId(i), g.generators())?))
                } else if e.target == at && conn[e.source.0].is_none() {
                    Some((e.source, Word::generator(GenId(i), g.generators())?.invert()))
                } else {
                    None
                };
                if let Some((next, w)) = step {
                    conn[next.0] = Some(w.compose(&here)?);
                    queue.push_back(next);
                }
            }
        }
        let connectors = conn
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NotConnected)?;
        Self::new(base, connectors)
    }

    pub fn base(&self) -> ObjectId {
        self.base
    }

    pub fn connectors(&self) -> &[Word] {
        &self.connectors
    }

    pub fn connector(&self, y: ObjectId) -> &Word {
        &self.connectors[y.0]
    }
}

/// Result of retracting a groupoid presentation onto its base object.
#[derive(Debug, Clone)]
pub struct Retracted {
    pub group: GroupPresentation,
    /// Groupoid generator → group generator, `None` where the retracted loop
    /// is the identity.
    pub gen_map: Vec<Option<GenId>>,
}

impl Retracted {
    /// Image of a groupoid word under the retraction, as a group word.
    pub fn apply(&self, w: &Word) -> Word {
        let letters = w
            .letters()
            .iter()
            .filter_map(|l| self.gen_map[l.gen.0].map(|g| Letter::new(g, l.inverse)))
            .collect();
        Word::group_word(letters, BASE)
    }
}

/// Presentation of the object group at the retraction's base.
///
/// One group generator per groupoid generator `g: y → z`, standing for the
/// loop `α_z⁻¹ g α_y`; generators whose loop freely reduces to the identity
/// are dropped. Relators are the images of the groupoid relations together
/// with the images of the connectors themselves, which vanish for
/// spanning-tree connectors.
pub fn retract(g: &GroupoidPresentation, r: &Retraction) -> Result<Retracted> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if r.connectors.len() != g.num_objects() {
        return Err(Error::ConnectorInvalid {
            object: ObjectId(r.connectors.len()),
            reason: format!(
                "{} connectors for {} objects",
                r.connectors.len(),
                g.num_objects()
            ),
        });
    }
    for (y, c) in r.connectors.iter().enumerate() {
        if !c.is_identity() {
            Word::from_letters(c.letters().to_vec(), g.generators()).map_err(|e| {
                Error::ConnectorInvalid {
                    object: ObjectId(y),
                    reason: e.to_string(),
                }
            })?;
        }
    }

    let mut gen_map = Vec::with_capacity(g.generators().len());
    let mut labels = Vec::new();
    for (i, e) in g.generators().iter().enumerate() {
        let loop_word = r
            .connector(e.target)
            .invert()
            .compose(&Word::generator(GenId(i), g.generators())?)?
            .compose(r.connector(e.source))?;
        if loop_word.is_identity() {
            gen_map.push(None);
        } else {
            gen_map.push(Some(GenId(labels.len())));
            labels.push(e.label.clone());
        }
    }
    let partial = Retracted {
        group: GroupPresentation::trivial(),
        gen_map,
    };
    let relations: Vec<Word> = g
        .relations()
        .iter()
        .chain(r.connectors.iter())
        .map(|w| partial.apply(w))
        .collect();
    Ok(Retracted {
        group: GroupPresentation::new(labels, relations)?,
        gen_map: partial.gen_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::abelianize;

    fn x(i: usize) -> ObjectId {
        ObjectId(i)
    }

    #[test]
    fn validate_disconnected_loops() {
        let c = GroupoidPresentation::free(
            3,
            (0..3).map(|k| Generator::looped(format!("g{k}"), x(k))).collect(),
        )
        .unwrap();
        assert!(c.validate().is_ok());
        assert!(!c.is_connected());
        assert!(c.is_totally_disconnected());
    }

    #[test]
    fn relation_must_be_loop() {
        let gens = vec![Generator::new("a1", x(0), x(1))];
        let a1 = Word::generator(GenId(0), &gens).unwrap();
        assert!(matches!(
            GroupoidPresentation::new(2, gens, vec![a1]),
            Err(Error::RelationNotLoop { index: 0, .. })
        ));
    }

    #[test]
    fn dangling_endpoint() {
        let gens = vec![Generator::new("a1", x(0), x(5))];
        assert!(matches!(
            GroupoidPresentation::free(2, gens),
            Err(Error::DanglingEndpoint { .. })
        ));
    }

    #[test]
    fn empty_presentation_is_ok_and_connected() {
        let g = GroupoidPresentation::free(1, vec![]).unwrap();
        assert!(g.validate().is_ok());
        assert!(g.is_connected());
        let out = retract(&g, &Retraction::trivial()).unwrap();
        assert_eq!(out.group.num_generators(), 0);
    }

    #[test]
    fn cycle_is_connected() {
        let gens = (1..=3)
            .map(|k| Generator::new(format!("a{k}"), x(k - 1), x(k % 3)))
            .collect();
        let g = GroupoidPresentation::free(3, gens).unwrap();
        assert!(g.is_connected());
        let gens = g.object_group_generators(x(0)).unwrap();
        assert_eq!(gens.len(), 1);
        let labels = g.labels();
        assert_eq!(gens[0].render(&labels), "a3*a2*a1");
    }

    #[test]
    fn object_group_generators_shapes() {
        let c = GroupoidPresentation::free(
            2,
            vec![Generator::looped("g0", x(0)), Generator::looped("g1", x(1))],
        )
        .unwrap();
        let at1 = c.object_group_generators(x(1)).unwrap();
        assert_eq!(at1, vec![c.gen_word("g1").unwrap()]);
        let single = GroupoidPresentation::free(1, vec![Generator::looped("g", x(0))]).unwrap();
        assert_eq!(
            single.object_group_generators(x(0)).unwrap(),
            vec![single.gen_word("g").unwrap()]
        );
        let df1 = df1();
        assert!(matches!(
            df1.object_group_generators(x(0)),
            Err(Error::UnsupportedShape)
        ));
    }

    // objects x = 0, y = 1
    fn df1() -> GroupoidPresentation {
        GroupoidPresentation::free(
            2,
            vec![
                Generator::new("alpha_y", x(0), x(1)),
                Generator::looped("beta", x(0)),
                Generator::looped("gamma", x(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn retract_df1_along_alpha() {
        let g = df1();
        let r = Retraction::new(x(0), vec![Word::identity(x(0)), g.gen_word("alpha_y").unwrap()])
            .unwrap();
        let out = retract(&g, &r).unwrap();
        assert_eq!(out.group.generators(), &["beta".to_string(), "gamma".to_string()]);
        assert!(out.group.relations().is_empty());
        // gamma stands for alpha_y^-1 gamma alpha_y
        let gamma = g.gen_word("gamma").unwrap();
        assert_eq!(out.group.render(&out.apply(&gamma)), "gamma");
    }

    fn grex(n: i64) -> GroupoidPresentation {
        // alpha: y -> x, beta: x -> y, gamma: x -> x
        let gens = vec![
            Generator::new("alpha", x(1), x(0)),
            Generator::new("beta", x(0), x(1)),
            Generator::looped("gamma", x(0)),
        ];
        let base = GroupoidPresentation::free(2, gens.clone()).unwrap();
        let gamma_n = base.word(&[("gamma", n)]).unwrap();
        let comm = base
            .word(&[("gamma", 1), ("alpha", 1), ("beta", 1), ("gamma", -1), ("beta", -1), ("alpha", -1)])
            .unwrap();
        GroupoidPresentation::new(2, gens, vec![gamma_n, comm]).unwrap()
    }

    #[test]
    fn retract_grex_along_beta() {
        for n in 2..=4 {
            let g = grex(n);
            let r = Retraction::new(x(0), vec![Word::identity(x(0)), g.gen_word("beta").unwrap()])
                .unwrap();
            let out = retract(&g, &r).unwrap();
            assert_eq!(out.group.num_generators(), 2);
            let rels = out.group.relation_strings();
            assert!(rels.contains(&format!("gamma^{n}")));
            assert!(rels.contains(&"gamma*alpha*gamma^-1*alpha^-1".to_string()));
            let ab = abelianize(&out.group);
            assert_eq!(ab.free_rank, 1);
            assert_eq!(ab.torsion_u64(), vec![n as u64]);
        }
    }

    #[test]
    fn retract_grex_along_alpha_inverse() {
        let g = grex(3);
        let r = Retraction::new(
            x(0),
            vec![Word::identity(x(0)), g.gen_word("alpha").unwrap().invert()],
        )
        .unwrap();
        let out = retract(&g, &r).unwrap();
        let ab = abelianize(&out.group);
        assert_eq!((ab.free_rank, ab.torsion_u64()), (1, vec![3]));
    }

    #[test]
    fn retract_requires_connected() {
        let c = GroupoidPresentation::free(
            2,
            vec![Generator::looped("g0", x(0)), Generator::looped("g1", x(1))],
        )
        .unwrap();
        let r = Retraction::trivial();
        assert!(matches!(retract(&c, &r), Err(Error::NotConnected)));
    }

    #[test]
    fn connector_validation() {
        let g = df1();
        assert!(Retraction::new(x(0), vec![Word::identity(x(0)), Word::identity(x(0))]).is_err());
        let beta = g.gen_word("beta").unwrap();
        assert!(Retraction::new(x(0), vec![beta, g.gen_word("alpha_y").unwrap()]).is_err());
        let short = Retraction::new(x(0), vec![Word::identity(x(0))]).unwrap();
        assert!(matches!(retract(&g, &short), Err(Error::ConnectorInvalid { .. })));
    }

    #[test]
    fn single_object_identity_retraction_is_identity() {
        let gens = vec![Generator::looped("a", x(0)), Generator::looped("b", x(0))];
        let base = GroupoidPresentation::free(1, gens.clone()).unwrap();
        let rel = base.word(&[("a", 2), ("b", -3)]).unwrap();
        let g = GroupoidPresentation::new(1, gens, vec![rel]).unwrap();
        let out = retract(&g, &Retraction::trivial()).unwrap();
        assert_eq!(out.group.generators(), &["a".to_string(), "b".to_string()]);
        assert_eq!(out.group.relation_strings(), vec!["a^2*b^-3"]);
    }

    #[test]
    fn spanning_tree_drops_tree_edges() {
        let gens = (1..=4)
            .map(|k| Generator::new(format!("a{k}"), x(k - 1), x(k % 4)))
            .collect();
        let g = GroupoidPresentation::free(4, gens).unwrap();
        let r = Retraction::spanning_tree(&g, x(0)).unwrap();
        let out = retract(&g, &r).unwrap();
        // 4 generators - 3 tree edges
        assert_eq!(out.group.num_generators(), 1);
        assert!(out.group.relations().is_empty());
    }
}
