//! Groupoid data and knot group presentations for torus links, torus links
//! with the two core unknots, and nested torus links.
//!
//! Generator labels of the produced groups:
//!
//! | group | labels |
//! |---|---|
//! | torus link | `alpha`, `beta`, `f1 … f{n-1}` |
//! | with unknots | additionally `deltaA`, `deltaB` |
//! | nested, level `a` | `alpha{a}`, `beta{a}`, `f{a}_{k}`, exterior `alpha{m+1}` |

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::analysis::eliminate_generator;
use crate::error::{Error, Result};
use crate::group::{GroupPresentation, BASE};
use crate::groupoid::{GroupoidPresentation, Retraction};
use crate::svk::{pushout, PushoutInput};
use crate::word::{GenId, Generator, GroupoidMorphism, Letter, ObjectId, Word};

/// `K^n_{p,q}`: `n` parallel `(p,q)` curves on a torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusLinkParams {
    pub n: usize,
    pub p: i64,
    pub q: i64,
}

impl TorusLinkParams {
    pub fn new(n: usize, p: i64, q: i64) -> Result<Self> {
        let params = Self { n, p, q };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidParams("need at least one component".into()));
        }
        if self.p == 0 && self.q == 0 {
            return Err(Error::InvalidParams("(p, q) = (0, 0)".into()));
        }
        let g = self.p.gcd(&self.q);
        if g != 1 {
            return Err(Error::InvalidParams(format!(
                "gcd({}, {}) = {g}",
                self.p, self.q
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TorusLinkParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.n, self.p, self.q)
    }
}

/// Nested torus link, innermost level first, with optional core unknots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkSpec {
    pub levels: Vec<TorusLinkParams>,
    /// The unknot through the exterior of the outermost torus.
    pub exterior_unknot: bool,
    /// The unknot through the interior; single-level links only.
    pub interior_unknot: bool,
}

impl LinkSpec {
    pub fn new(levels: Vec<TorusLinkParams>, exterior_unknot: bool, interior_unknot: bool) -> Result<Self> {
        let spec = Self {
            levels,
            exterior_unknot,
            interior_unknot,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn single(params: TorusLinkParams) -> Self {
        Self {
            levels: vec![params],
            exterior_unknot: false,
            interior_unknot: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::InvalidParams("no levels".into()));
        }
        for l in &self.levels {
            l.validate()?;
        }
        if self.interior_unknot && self.levels.len() > 1 {
            return Err(Error::InvalidParams(
                "the interior unknot is only supported for a single level".into(),
            ));
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Number of link components, unknots included.
    pub fn components(&self) -> usize {
        self.levels.iter().map(|l| l.n).sum::<usize>()
            + usize::from(self.exterior_unknot)
            + usize::from(self.interior_unknot)
    }
}

impl fmt::Display for LinkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<String> = self.levels.iter().map(ToString::to_string).collect();
        write!(f, "{}", levels.join("/"))?;
        if self.interior_unknot {
            write!(f, "+extA")?;
        }
        if self.exterior_unknot {
            write!(f, "+extB")?;
        }
        Ok(())
    }
}

impl FromStr for LinkSpec {
    type Err = Error;

    /// `n:p,q` levels joined by `/`, innermost first, followed by optional
    /// `+extA` / `+extB` flags, e.g. `1:2,3/2:1,1+extB`.
    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let end = text.len();
        let mut i = 0;
        let err = |pos: usize, msg: &str| Error::Parse {
            position: pos,
            message: msg.to_string(),
        };
        let pos_at = |i: usize| chars.get(i).map_or(end, |c| c.0);

        let int = |i: &mut usize, signed: bool| -> Result<i64> {
            let start = pos_at(*i);
            let mut s = String::new();
            if signed {
                if let Some(&(_, c @ ('-' | '+'))) = chars.get(*i) {
                    s.push(c);
                    *i += 1;
                }
            }
            while let Some(&(_, c)) = chars.get(*i) {
                if c.is_ascii_digit() {
                    s.push(c);
                    *i += 1;
                } else {
                    break;
                }
            }
            s.parse().map_err(|_| err(start, "expected integer"))
        };
        let expect = |i: &mut usize, want: char| -> Result<()> {
            match chars.get(*i) {
                Some(&(_, c)) if c == want => {
                    *i += 1;
                    Ok(())
                }
                _ => Err(err(pos_at(*i), &format!("expected `{want}`"))),
            }
        };

        let mut levels = Vec::new();
        loop {
            let n_pos = pos_at(i);
            let n = int(&mut i, false)?;
            expect(&mut i, ':')?;
            let p = int(&mut i, true)?;
            expect(&mut i, ',')?;
            let q = int(&mut i, true)?;
            let n = usize::try_from(n).map_err(|_| err(n_pos, "component count out of range"))?;
            levels.push(TorusLinkParams { n, p, q });
            match chars.get(i) {
                Some(&(_, '/')) => i += 1,
                _ => break,
            }
        }
        let (mut ext_a, mut ext_b) = (false, false);
        while i < chars.len() {
            let start = pos_at(i);
            expect(&mut i, '+')?;
            let flag: String = chars[i..].iter().take(4).map(|c| c.1).collect();
            match flag.as_str() {
                "extA" => ext_a = true,
                "extB" => ext_b = true,
                _ => return Err(err(start, "expected `+extA` or `+extB`")),
            }
            i += 4;
        }
        LinkSpec::new(levels, ext_b, ext_a)
    }
}

fn x(k: usize) -> ObjectId {
    ObjectId(k)
}

/// Generators `{prefix}1 … {prefix}n`, the `k`-th running `x_{k-1} → x_{k mod n}`.
fn cycle_generators(prefix: &str, n: usize) -> Vec<Generator> {
    (1..=n)
        .map(|k| Generator::new(format!("{prefix}{k}"), x(k - 1), x(k % n)))
        .collect()
}

/// Letters of the loop at `x_k` winding once around the cycle, in function
/// order: `t_k t_{k-1} … t_{k+1}` (indices mod `n`, `t_0 = t_n`).
fn cycle_loop(first: usize, n: usize, k: usize) -> Vec<Letter> {
    (0..n)
        .map(|m| {
            let idx = (k + n - m) % n; // 0 stands for n
            let label = if idx == 0 { n } else { idx };
            Letter::new(GenId(first + label - 1), false)
        })
        .collect()
}

/// `t_k … t_1`, the path from `x_0` to `x_k`.
fn cycle_path(first: usize, k: usize) -> Vec<Letter> {
    (1..=k)
        .rev()
        .map(|i| Letter::new(GenId(first + i - 1), false))
        .collect()
}

fn cycle_retraction(g: &GroupoidPresentation, first: usize, n: usize) -> Result<Retraction> {
    let connectors = (0..n)
        .map(|k| {
            if k == 0 {
                Ok(Word::identity(x(0)))
            } else {
                Word::from_letters(cycle_path(first, k), g.generators())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Retraction::new(x(0), connectors)
}

fn winding_morphism(
    pi_c: &GroupoidPresentation,
    target: &GroupoidPresentation,
    first: usize,
    n: usize,
    power: i64,
) -> Result<GroupoidMorphism> {
    let images = (0..n)
        .map(|k| Word::from_letters(cycle_loop(first, n, k), target.generators())?.pow(power))
        .collect::<Result<Vec<_>>>()?;
    GroupoidMorphism::new(pi_c.generators(), images)
}

fn intersection_groupoid(n: usize) -> Result<GroupoidPresentation> {
    GroupoidPresentation::free(
        n,
        (0..n).map(|k| Generator::looped(format!("g{k}"), x(k))).collect(),
    )
}

/// `(t_n … t_1) δ (t_n … t_1)⁻¹ δ⁻¹` with `δ` at generator index `delta`.
fn torus_relation(
    gens: &[Generator],
    first: usize,
    n: usize,
    delta: usize,
) -> Result<Word> {
    let around = Word::from_letters(cycle_path(first, n), gens)?;
    let d = Word::generator(GenId(delta), gens)?;
    around
        .compose(&d)?
        .compose(&around.invert())?
        .compose(&d.invert())
}

/// Cycle graphs `ã₁…ã_n`, `b̃₁…b̃_n`, loops `γ_k`, the winding inclusions
/// `iγ_k = (ã_k … ã_{k+1})^p`, `jγ_k = (b̃_k … b̃_{k+1})^q` and retractions
/// along `ã_k … ã₁`, `b̃_k … b̃₁`.
pub fn build_link_groupoids(params: TorusLinkParams) -> Result<PushoutInput> {
    params.validate()?;
    let n = params.n;
    let pi_a = GroupoidPresentation::free(n, cycle_generators("at", n))?;
    let pi_b = GroupoidPresentation::free(n, cycle_generators("bt", n))?;
    let pi_c = intersection_groupoid(n)?;
    Ok(PushoutInput {
        i: winding_morphism(&pi_c, &pi_a, 0, n, params.p)?,
        j: winding_morphism(&pi_c, &pi_b, 0, n, params.q)?,
        r_a: cycle_retraction(&pi_a, 0, n)?,
        r_b: cycle_retraction(&pi_b, 0, n)?,
        pi_a,
        pi_b,
        pi_c,
        base: x(0),
    })
}

/// As [`build_link_groupoids`], with the torus loops `dA` in `πA` and `dB` in
/// `πB` commuting with the cycle products.
pub fn build_unknot_groupoids(params: TorusLinkParams) -> Result<PushoutInput> {
    let base = build_link_groupoids(params)?;
    let n = params.n;
    let torus = |prefix: &str, delta: &str| -> Result<GroupoidPresentation> {
        let mut gens = cycle_generators(prefix, n);
        gens.push(Generator::looped(delta, x(0)));
        let rel = torus_relation(&gens, 0, n, n)?;
        GroupoidPresentation::new(n, gens, vec![rel])
    };
    Ok(PushoutInput {
        pi_a: torus("at", "dA")?,
        pi_b: torus("bt", "dB")?,
        ..base
    })
}

/// Torus link group `⟨α, β, f_k | α^p β^{-q}, α^p f_k β^{-q} f_k⁻¹⟩`.
pub fn torus_link_group(params: TorusLinkParams) -> Result<GroupPresentation> {
    params.validate()?;
    let mut labels = vec!["alpha".to_string(), "beta".to_string()];
    labels.extend((1..params.n).map(|k| format!("f{k}")));
    let relations = glue_relations(0, 1, (2..1 + params.n).collect(), params);
    GroupPresentation::new(labels, relations)
}

/// Relators `α^p β^{-q}` and `α^p f β^{-q} f⁻¹` for every `f` in `fs`.
fn glue_relations(alpha: usize, beta: usize, fs: Vec<usize>, params: TorusLinkParams) -> Vec<Word> {
    let power = |g: usize, e: i64| -> Vec<Letter> {
        vec![Letter::new(GenId(g), e < 0); e.unsigned_abs() as usize]
    };
    let mut out = vec![Word::group_word(
        [power(alpha, params.p), power(beta, -params.q)].concat(),
        BASE,
    )];
    for f in fs {
        let fl = Letter::new(GenId(f), false);
        let letters = [
            power(alpha, params.p),
            vec![fl],
            power(beta, -params.q),
            vec![fl.inv()],
        ]
        .concat();
        out.push(Word::group_word(letters, BASE));
    }
    out
}

fn commutator(a: usize, b: usize) -> Word {
    let (a, b) = (Letter::new(GenId(a), false), Letter::new(GenId(b), false));
    Word::group_word(vec![a, b, a.inv(), b.inv()], BASE)
}

/// `⟨α, δ_A, β, δ_B, f_k | [α, δ_A], [β, δ_B], α^p β^{-q}, α^p f_k β^{-q} f_k⁻¹⟩`.
pub fn link_with_unknots_group(params: TorusLinkParams) -> Result<GroupPresentation> {
    params.validate()?;
    let mut labels: Vec<String> = ["alpha", "deltaA", "beta", "deltaB"]
        .map(String::from)
        .to_vec();
    labels.extend((1..params.n).map(|k| format!("f{k}")));
    let mut relations = vec![commutator(0, 1), commutator(2, 3)];
    relations.extend(glue_relations(0, 2, (4..3 + params.n).collect(), params));
    GroupPresentation::new(labels, relations)
}

/// Adds the relation `gen = 1` and eliminates `gen`.
pub fn fill_unknot(g: &GroupPresentation, gen: &str) -> Result<GroupPresentation> {
    let id = g
        .gen_index(gen)
        .ok_or_else(|| Error::UnknownGenerator(gen.to_string()))?;
    g.eliminate(id, &Word::identity(BASE))
}

/// Closed form for the complement of the exterior unknot together with the
/// nested link.
pub fn nested_link_group(spec: &LinkSpec) -> Result<GroupPresentation> {
    spec.validate()?;
    let m = spec.depth();
    let mut labels = Vec::new();
    for a in 1..=m {
        labels.push(format!("alpha{a}"));
        labels.push(format!("beta{a}"));
    }
    labels.push(format!("alpha{}", m + 1));
    let alpha = |a: usize| 2 * (a - 1);
    let beta = |a: usize| 2 * (a - 1) + 1;
    let mut relations = Vec::new();
    for (a, level) in spec.levels.iter().enumerate().map(|(i, l)| (i + 1, l)) {
        let first_f = labels.len();
        labels.extend((1..level.n).map(|k| format!("f{a}_{k}")));
        relations.extend(glue_relations(
            alpha(a),
            beta(a),
            (first_f..labels.len()).collect(),
            *level,
        ));
        relations.push(commutator(beta(a), alpha(a + 1)));
    }
    GroupPresentation::new(labels, relations)
}

fn engine_labels(g: &GroupPresentation, n: usize) -> Result<GroupPresentation> {
    let an = format!("A_at{n}");
    let bn = format!("B_bt{n}");
    g.rename(|l| {
        if l == an {
            "alpha".into()
        } else if l == bn {
            "beta".into()
        } else if l == "A_dA" {
            "deltaA".into()
        } else if l == "B_dB" {
            "deltaB".into()
        } else if let Some(f) = l.strip_prefix("F_") {
            f.to_string()
        } else {
            l.to_string()
        }
    })
}

/// [`torus_link_group`] computed by the pushout engine.
pub fn torus_link_group_engine(params: TorusLinkParams) -> Result<GroupPresentation> {
    engine_labels(&pushout(&build_link_groupoids(params)?)?, params.n)
}

/// [`link_with_unknots_group`] computed by the pushout engine.
pub fn link_with_unknots_group_engine(params: TorusLinkParams) -> Result<GroupPresentation> {
    engine_labels(&pushout(&build_unknot_groupoids(params)?)?, params.n)
}

/// Level-1 relabelling: `alpha → alpha1`, `deltaB → alpha2`, `f{k} → f1_{k}`.
fn first_level_labels(g: &GroupPresentation) -> Result<GroupPresentation> {
    g.rename(|l| match l {
        "alpha" => "alpha1".into(),
        "beta" => "beta1".into(),
        "deltaB" => "alpha2".into(),
        f => match f.strip_prefix('f') {
            Some(k) => format!("f1_{k}"),
            None => f.to_string(),
        },
    })
}

/// Inductive computation of [`nested_link_group`]: level one fills the
/// interior unknot of the two-unknot link; each further level glues the
/// previous group in as the object group of `πA` at `x₀`.
pub fn nested_link_group_engine(spec: &LinkSpec) -> Result<GroupPresentation> {
    spec.validate()?;
    let first = spec.levels[0];
    let mut group = first_level_labels(&fill_unknot(
        &link_with_unknots_group_engine(first)?,
        "deltaA",
    )?)?;
    for (idx, &level) in spec.levels.iter().enumerate().skip(1) {
        group = nested_step(&group, idx + 1, level)?;
    }
    Ok(group)
}

/// One induction step: level `a` with parameters `level` around `prev`.
fn nested_step(prev: &GroupPresentation, a: usize, level: TorusLinkParams) -> Result<GroupPresentation> {
    level.validate()?;
    let n = level.n;
    let exterior = format!("alpha{a}");
    let outer = prev
        .gen_index(&exterior)
        .ok_or_else(|| Error::UnknownGenerator(exterior.clone()))?;

    // πA: previous group as loops at x0, plus the cycle ã_1 … ã_n.
    let first = prev.num_generators();
    let mut gens: Vec<Generator> = prev
        .generators()
        .iter()
        .map(|l| Generator::looped(l.clone(), x(0)))
        .collect();
    gens.extend(cycle_generators("at", n));
    let mut relations: Vec<Word> = prev
        .relations()
        .iter()
        .map(|r| Word::from_letters(r.letters().to_vec(), &gens))
        .collect::<Result<_>>()?;
    let mut gluing = cycle_path(first, n);
    gluing.push(Letter::new(outer, true));
    relations.push(Word::from_letters(gluing, &gens)?);
    let pi_a = GroupoidPresentation::new(n, gens, relations)?;

    let unknot = build_unknot_groupoids(level)?;
    let input = PushoutInput {
        i: winding_morphism(&unknot.pi_c, &pi_a, first, n, level.p)?,
        r_a: cycle_retraction(&pi_a, first, n)?,
        pi_a,
        ..unknot
    };
    let raw = pushout(&input)?;
    let an = format!("A_at{n}");
    let bn = format!("B_bt{n}");
    let renamed = raw.rename(|l| {
        if l == an {
            "at".into()
        } else if l == bn {
            format!("beta{a}")
        } else if l == "B_dB" {
            format!("alpha{}", a + 1)
        } else if let Some(f) = l.strip_prefix("F_f") {
            format!("f{a}_{f}")
        } else if let Some(rest) = l.strip_prefix("A_") {
            rest.to_string()
        } else {
            l.to_string()
        }
    })?;
    eliminate_generator(&renamed, "at")
}

/// How a presentation is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Engine,
    ClosedForm,
}

/// Knot group of any supported link specification.
pub fn link_group(spec: &LinkSpec, method: Method) -> Result<GroupPresentation> {
    spec.validate()?;
    let engine = method == Method::Engine;
    if spec.depth() == 1 && !spec.exterior_unknot {
        let params = spec.levels[0];
        if !spec.interior_unknot {
            return if engine {
                torus_link_group_engine(params)
            } else {
                torus_link_group(params)
            };
        }
        let both = if engine {
            link_with_unknots_group_engine(params)?
        } else {
            link_with_unknots_group(params)?
        };
        return fill_unknot(&both, "deltaB");
    }
    if spec.depth() == 1 && spec.interior_unknot {
        return if engine {
            link_with_unknots_group_engine(spec.levels[0])
        } else {
            link_with_unknots_group(spec.levels[0])
        };
    }
    let nested = if engine {
        nested_link_group_engine(spec)?
    } else {
        nested_link_group(spec)?
    };
    if spec.exterior_unknot {
        Ok(nested)
    } else {
        fill_unknot(&nested, &format!("alpha{}", spec.depth() + 1))
    }
}
