mod common;

use common::*;
use knotgroup::analysis::{abelianize, fingerprint, hom_count, tietze_simplify, AbelianInvariants};
use knotgroup::group::{parse_word, BASE};
use knotgroup::links::{build_link_groupoids, nested_link_group, torus_link_group};
use knotgroup::word::{free_reduce, GenId, Generator, GroupoidMorphism, Letter, ObjectId, Word};
use knotgroup::{GroupoidPresentation, LinkSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Cycle x0 -t1-> x1 -t2-> x2 -t3-> x0 plus a loop at each object.
fn graph() -> Vec<Generator> {
    let x = ObjectId;
    vec![
        Generator::new("t1", x(0), x(1)),
        Generator::new("t2", x(1), x(2)),
        Generator::new("t3", x(2), x(0)),
        Generator::looped("l0", x(0)),
        Generator::looped("l1", x(1)),
        Generator::looped("l2", x(2)),
    ]
}

/// A random composable word from `start` built by walking the graph.
fn walk(steps: Vec<(usize, bool)>, start: usize) -> Word {
    let gens = graph();
    let mut w = Word::identity(ObjectId(start));
    for (choice, inv) in steps {
        let at = w.target();
        let options: Vec<Letter> = gens
            .iter()
            .enumerate()
            .flat_map(|(i, g)| {
                let mut v = Vec::new();
                if g.source == at {
                    v.push(Letter::new(GenId(i), false));
                }
                if g.target == at {
                    v.push(Letter::new(GenId(i), true));
                }
                v
            })
            .collect();
        let mut l = options[choice % options.len()];
        if inv && gens[l.gen.0].is_loop() {
            l = l.inv();
        }
        let step = Word::from_letters(vec![l], &gens).unwrap();
        w = step.compose(&w).unwrap();
    }
    w
}

fn steps() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..8, any::<bool>()), 0..12)
}

proptest! {
    #[test]
    fn composition_is_associative(a in steps(), b in steps(), c in steps(), s in 0usize..3) {
        let w3 = walk(c, s);
        let w2 = walk(b, w3.target().0);
        let w1 = walk(a, w2.target().0);
        let left = w1.compose(&w2).unwrap().compose(&w3).unwrap();
        let right = w1.compose(&w2.compose(&w3).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(a in steps(), s in 0usize..3) {
        let w = walk(a, s);
        prop_assert_eq!(w.invert().compose(&w).unwrap(), Word::identity(w.source()));
        prop_assert_eq!(w.compose(&w.invert()).unwrap(), Word::identity(w.target()));
    }

    #[test]
    fn reduction_is_idempotent(raw in prop::collection::vec((0usize..3, any::<bool>()), 0..30)) {
        let letters: Vec<Letter> = raw.iter().map(|&(g, i)| Letter::new(GenId(g), i)).collect();
        let once = free_reduce(&letters);
        prop_assert_eq!(free_reduce(&once), once.clone());
        prop_assert!(once.windows(2).all(|w| w[0] != w[1].inv()));
        // stack-free oracle: repeatedly delete the first cancelling pair
        let mut slow = letters.clone();
        while let Some(i) = slow.windows(2).position(|w| w[0] == w[1].inv()) {
            slow.drain(i..i + 2);
        }
        prop_assert_eq!(once, slow);
    }

    #[test]
    fn morphism_respects_composition_and_inverse(a in steps(), b in steps(), s in 0usize..3, p in -3i64..=3) {
        // send each loop l_k to its cycle loop to the power p, fix the t's
        let gens = graph();
        let dom = GroupoidPresentation::free(3, gens.clone()).unwrap();
        let mut images = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.is_loop() {
                let k = g.source.0;
                let around: Vec<Letter> = (0..3).map(|m| Letter::new(GenId((k + 3 - m + 2) % 3), false)).collect();
                images.push(Word::from_letters(around, &gens).unwrap().pow(p).unwrap());
            } else {
                images.push(Word::generator(GenId(i), &gens).unwrap());
            }
        }
        let m = GroupoidMorphism::new(dom.generators(), images).unwrap();
        let w2 = walk(b, s);
        let w1 = walk(a, w2.target().0);
        let lhs = m.apply(&w1.compose(&w2).unwrap()).unwrap();
        let rhs = m.apply(&w1).unwrap().compose(&m.apply(&w2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(m.apply(&w1.invert()).unwrap(), m.apply(&w1).unwrap().invert());
    }

    #[test]
    fn render_parse_round_trip(raw in prop::collection::vec((0usize..3, any::<bool>()), 1..20)) {
        let labels: Vec<String> = ["alpha", "beta", "f1"].map(String::from).to_vec();
        let w = Word::group_word(raw.iter().map(|&(g, i)| Letter::new(GenId(g), i)).collect(), BASE);
        let text = w.render(&labels);
        prop_assert_eq!(parse_word(&text, &labels).unwrap(), w);
    }
}

#[test]
fn pruned_count_matches_naive_enumeration() {
    for (name, g) in small_corpus() {
        for k in 1..=3 {
            assert_eq!(hom_count(&g, k).unwrap(), naive_hom_count(&g, k), "{name} k={k}");
        }
    }
}

#[test]
fn oracle_values_for_named_groups() {
    // commuting pairs in S3 and pairs with A^2 = B^3 in S2 / S3
    assert_eq!(naive_hom_count(&pres(&["a", "f"], &["a*f*a^-1*f^-1"]), 3), 18);
    let trefoil = pres(&["alpha", "beta"], &["alpha^2*beta^-3"]);
    assert_eq!(naive_hom_count(&trefoil, 2), 2);
    assert_eq!(naive_hom_count(&trefoil, 3), 12);
}

#[test]
fn simplification_preserves_invariants() {
    let mut corpus = small_corpus();
    for (n, p, q) in [(3, 2, 3), (4, 1, 1), (3, -1, 2)] {
        corpus.push((format!("T{n}"), torus_link_group(tl(n, p, q)).unwrap()));
    }
    let nested: LinkSpec = "1:2,3/2:1,1+extB".parse().unwrap();
    corpus.push(("nested".into(), nested_link_group(&nested).unwrap()));
    for (name, g) in corpus {
        let s = tietze_simplify(&g, 100);
        assert_eq!(abelianize(&g), abelianize(&s), "{name}");
        assert_eq!(fingerprint(&g, 4).unwrap(), fingerprint(&s, 4).unwrap(), "{name}");
    }
}

#[test]
fn torus_link_abelianization_is_free_of_rank_n() {
    for n in 1..=4 {
        for p in -4i64..=4 {
            for q in -4i64..=4 {
                let Ok(params) = knotgroup::TorusLinkParams::new(n, p, q) else {
                    continue;
                };
                let g = torus_link_group(params).unwrap();
                assert_eq!(abelianize(&g), AbelianInvariants::free(n), "{params}");
            }
        }
    }
}

#[test]
fn alternate_retractions_share_invariants() {
    let input = build_link_groupoids(tl(2, 2, 3)).unwrap();
    let reference = engine(&input);
    let fp = fingerprint(&reference, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let ra = random_cycle_retraction(&input.pi_a, "at", 2, &mut rng);
        let rb = random_cycle_retraction(&input.pi_b, "bt", 2, &mut rng);
        let g = engine(&with_retractions(&input, ra, rb));
        assert_eq!(fingerprint(&g, 4).unwrap(), fp);
        assert_eq!(abelianize(&g), abelianize(&reference));
    }
}

#[test]
fn adding_squared_loop_relation_is_redundant() {
    // relation for gamma_k^2 follows from the one for gamma_k
    let params = tl(2, 2, 3);
    let g = torus_link_group(params).unwrap();
    let extra = ["alpha^4*beta^-6", "alpha^4*f1*beta^-6*f1^-1"]
        .iter()
        .map(|r| g.word(r).unwrap())
        .collect::<Vec<_>>();
    let bigger = g.with_relations(extra).unwrap();
    assert_eq!(fingerprint(&bigger, 4).unwrap(), fingerprint(&g, 4).unwrap());
    assert_eq!(abelianize(&bigger), abelianize(&g));
}
