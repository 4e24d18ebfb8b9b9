#![allow(dead_code)]

use knotgroup::analysis::tietze_simplify;
use knotgroup::groupoid::{retract, GroupoidPresentation, Retraction};
use knotgroup::links::{link_with_unknots_group, torus_link_group};
use knotgroup::svk::pushout;
use knotgroup::word::{Generator, ObjectId, Word};
use knotgroup::{GroupPresentation, PushoutInput, TorusLinkParams};
use rand::Rng;

/// All permutations of `0..k` by recursive insertion.
pub fn all_perms(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Full enumeration of generator tuples in `S_k`, no pruning.
pub fn naive_hom_count(g: &GroupPresentation, k: usize) -> u128 {
    let perms = all_perms(k);
    let n = g.num_generators();
    let identity: Vec<usize> = (0..k).collect();
    let mut idx = vec![0usize; n];
    let mut count = 0u128;
    loop {
        let ok = g.relations().iter().all(|r| {
            let mut acc = identity.clone();
            for l in r.letters() {
                let p = &perms[idx[l.gen.0]];
                let p = if l.inverse { inverse(p) } else { p.clone() };
                acc = compose(&acc, &p);
            }
            acc == identity
        });
        if ok {
            count += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            idx[i] += 1;
            if idx[i] < perms.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

pub fn tl(n: usize, p: i64, q: i64) -> TorusLinkParams {
    TorusLinkParams::new(n, p, q).unwrap()
}

pub fn pres(gens: &[&str], rels: &[&str]) -> GroupPresentation {
    GroupPresentation::parse(gens.iter().map(|s| s.to_string()).collect(), rels).unwrap()
}

/// The `grex` groupoid: `alpha: y → x`, `beta: x → y`, `gamma` at `x`, with
/// `gamma^n` and `gamma (alpha beta) gamma⁻¹ (alpha beta)⁻¹`.
pub fn grex(n: i64) -> GroupoidPresentation {
    let x = ObjectId(0);
    let y = ObjectId(1);
    let gens = vec![
        Generator::new("alpha", y, x),
        Generator::new("beta", x, y),
        Generator::looped("gamma", x),
    ];
    let free = GroupoidPresentation::free(2, gens.clone()).unwrap();
    let rels = vec![
        free.word(&[("gamma", n)]).unwrap(),
        free.word(&[
            ("gamma", 1),
            ("alpha", 1),
            ("beta", 1),
            ("gamma", -1),
            ("beta", -1),
            ("alpha", -1),
        ])
        .unwrap(),
    ];
    GroupoidPresentation::new(2, gens, rels).unwrap()
}

pub fn grex_group(n: i64) -> GroupPresentation {
    let g = grex(n);
    let r = Retraction::new(
        ObjectId(0),
        vec![Word::identity(ObjectId(0)), g.gen_word("beta").unwrap()],
    )
    .unwrap();
    retract(&g, &r).unwrap().group
}

/// Presentations with at most three generators used for oracle comparisons.
pub fn small_corpus() -> Vec<(String, GroupPresentation)> {
    let mut out = vec![
        ("trivial".to_string(), GroupPresentation::trivial()),
        ("Z".into(), pres(&["a"], &[])),
        ("F2".into(), pres(&["a", "b"], &[])),
        ("Z/4".into(), pres(&["a"], &["a^4"])),
        ("Z^2".into(), pres(&["a", "f"], &["a*f*a^-1*f^-1"])),
        ("S3".into(), pres(&["a", "b"], &["a^2", "b^3", "a*b*a^-1*b"])),
        ("grex2".into(), grex_group(2)),
        ("grex3".into(), grex_group(3)),
    ];
    for (n, p, q) in [(1, 2, 3), (1, 2, 5), (1, 3, 4), (1, 1, 0), (1, -2, 3), (2, 1, 1), (2, 1, 2), (2, 3, 2)] {
        out.push((format!("T{n}:{p},{q}"), torus_link_group(tl(n, p, q)).unwrap()));
    }
    let unknots = link_with_unknots_group(tl(1, 1, 2)).unwrap();
    out.push(("unknots-simplified".into(), tietze_simplify(&unknots, 10)));
    out.retain(|(_, g)| g.num_generators() <= 3);
    out
}

/// Random connector words for a cycle groupoid with generators `t1 … tn` at
/// indices `first ..`: go around either way, then wind a random number of times.
pub fn random_cycle_retraction<R: Rng>(
    g: &GroupoidPresentation,
    prefix: &str,
    n: usize,
    rng: &mut R,
) -> Retraction {
    let t = |k: usize| g.gen_word(&format!("{prefix}{k}")).unwrap();
    let around = (1..=n).fold(Word::identity(ObjectId(0)), |w, k| t(k).compose(&w).unwrap());
    let mut connectors = vec![Word::identity(ObjectId(0))];
    for k in 1..n {
        let path = if rng.gen_bool(0.5) {
            (1..=k).fold(Word::identity(ObjectId(0)), |w, i| t(i).compose(&w).unwrap())
        } else {
            // backwards: t_{k+1}⁻¹ … t_n⁻¹
            (k + 1..=n)
                .rev()
                .fold(Word::identity(ObjectId(0)), |w, i| t(i).invert().compose(&w).unwrap())
        };
        let winding = around.pow(rng.gen_range(-2..=2)).unwrap();
        connectors.push(path.compose(&winding).unwrap());
    }
    Retraction::new(ObjectId(0), connectors).unwrap()
}

pub fn with_retractions(input: &PushoutInput, r_a: Retraction, r_b: Retraction) -> PushoutInput {
    PushoutInput {
        r_a,
        r_b,
        ..input.clone()
    }
}

pub fn engine(input: &PushoutInput) -> GroupPresentation {
    pushout(input).unwrap()
}

/// Two-base-point decomposition of the 2-torus: `alpha`, `beta` join the base
/// points, `dA`, `dB` are loops at `x0`.
pub fn two_torus_input() -> PushoutInput {
    use knotgroup::GroupoidMorphism;
    let x = ObjectId;
    let pi_a = GroupoidPresentation::free(
        2,
        vec![Generator::new("alpha", x(0), x(1)), Generator::looped("dA", x(0))],
    )
    .unwrap();
    let pi_b = GroupoidPresentation::free(
        2,
        vec![Generator::new("beta", x(0), x(1)), Generator::looped("dB", x(0))],
    )
    .unwrap();
    let pi_c = GroupoidPresentation::free(
        2,
        vec![Generator::looped("g0", x(0)), Generator::looped("g1", x(1))],
    )
    .unwrap();
    let i = GroupoidMorphism::new(
        pi_c.generators(),
        vec![
            pi_a.word(&[("dA", 1)]).unwrap(),
            pi_a.word(&[("alpha", 1), ("dA", 1), ("alpha", -1)]).unwrap(),
        ],
    )
    .unwrap();
    let j = GroupoidMorphism::new(
        pi_c.generators(),
        vec![
            pi_b.word(&[("dB", 1)]).unwrap(),
            pi_b.word(&[("beta", 1), ("dB", 1), ("beta", -1)]).unwrap(),
        ],
    )
    .unwrap();
    let r_a = Retraction::new(x(0), vec![Word::identity(x(0)), pi_a.gen_word("alpha").unwrap()]).unwrap();
    let r_b = Retraction::new(x(0), vec![Word::identity(x(0)), pi_b.gen_word("beta").unwrap()]).unwrap();
    PushoutInput {
        pi_a,
        pi_b,
        pi_c,
        i,
        j,
        r_a,
        r_b,
        base: x(0),
    }
}

/// Every valid `(n, p, q)` in the given ranges.
pub fn param_grid(max_n: usize, max_abs: i64, allow_zero: bool) -> Vec<TorusLinkParams> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for p in -max_abs..=max_abs {
            for q in -max_abs..=max_abs {
                if !allow_zero && (p == 0 || q == 0) {
                    continue;
                }
                if let Ok(t) = TorusLinkParams::new(n, p, q) {
                    out.push(t);
                }
            }
        }
    }
    out
}
