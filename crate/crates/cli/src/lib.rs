//! Command-line driver: parse a link specification, build its group by the
//! pushout engine and/or the closed form, and print it with invariants.

use std::fmt::Write as _;

use clap::{Parser, ValueEnum};
use knotgroup::analysis::{abelianize, fingerprint, tietze_simplify, AbelianInvariants, HomFingerprint};
use knotgroup::{link_group, Error, GroupPresentation, LinkSpec, Method};
use serde_json::{json, Map, Number, Value};

/// Tietze moves allowed for `--simplify`.
const SIMPLIFY_BUDGET: usize = 10_000;
/// Degree bound used to compare methods when `--fingerprint` is absent.
const COMPARE_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Engine,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Algebra,
}

#[derive(Debug, Parser)]
#[command(name = "knotgroup", version, about = "Knot groups of (nested) torus links")]
pub struct Args {
    /// Link specification, e.g. `1:2,3` or `1:2,3/2:1,1+extB`.
    #[arg(long)]
    pub spec: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Engine)]
    pub method: MethodArg,
    /// Report |Hom(G, S_k)| for k = 1..=KMAX.
    #[arg(long, value_name = "KMAX")]
    pub fingerprint: Option<usize>,
    /// Tietze-simplify the printed presentation.
    #[arg(long)]
    pub simplify: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub degree: usize,
    pub engine: HomFingerprint,
    pub closed: HomFingerprint,
    pub abelian_equal: bool,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.abelian_equal && self.engine == self.closed
    }
}

#[derive(Debug, Clone)]
pub struct OutputDocument {
    pub spec: String,
    pub method: MethodArg,
    pub group: GroupPresentation,
    pub abelian: AbelianInvariants,
    pub fingerprint: Option<HomFingerprint>,
    pub comparison: Option<Comparison>,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Engine => "engine",
        MethodArg::Closed => "closed-form",
        MethodArg::Both => "both",
    }
}

pub fn build(args: &Args) -> knotgroup::Result<OutputDocument> {
    let spec: LinkSpec = args.spec.parse()?;
    let (group, comparison) = match args.method {
        MethodArg::Engine => (link_group(&spec, Method::Engine)?, None),
        MethodArg::Closed => (link_group(&spec, Method::ClosedForm)?, None),
        MethodArg::Both => {
            let engine = link_group(&spec, Method::Engine)?;
            let closed = link_group(&spec, Method::ClosedForm)?;
            let degree = args.fingerprint.unwrap_or(COMPARE_DEGREE);
            let cmp = Comparison {
                degree,
                engine: fingerprint(&engine, degree)?,
                closed: fingerprint(&closed, degree)?,
                abelian_equal: abelianize(&engine) == abelianize(&closed),
            };
            (closed, Some(cmp))
        }
    };
    let group = if args.simplify {
        tietze_simplify(&group, SIMPLIFY_BUDGET)
    } else {
        group
    };
    let fp = match args.fingerprint {
        Some(k) => Some(match &comparison {
            Some(c) => c.closed.clone(),
            None => fingerprint(&group, k)?,
        }),
        None => None,
    };
    Ok(OutputDocument {
        spec: spec.to_string(),
        method: args.method,
        abelian: abelianize(&group),
        group,
        fingerprint: fp,
        comparison,
    })
}

fn big(n: impl ToString) -> Value {
    // arbitrary_precision keeps the digits exact
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

fn fingerprint_json(fp: &HomFingerprint) -> Value {
    let map: Map<String, Value> = fp.counts.iter().map(|(k, c)| (k.to_string(), big(c))).collect();
    Value::Object(map)
}

pub fn to_json(doc: &OutputDocument) -> String {
    let mut v = json!({
        "spec": doc.spec,
        "generators": doc.group.generators(),
        "relations": doc.group.relation_strings(),
        "abelian": {
            "rank": doc.abelian.free_rank,
            "torsion": doc.abelian.torsion.iter().map(big).collect::<Vec<_>>(),
        },
        "method": method_name(doc.method),
    });
    if let Some(fp) = &doc.fingerprint {
        v["fingerprint"] = fingerprint_json(fp);
    }
    if let Some(c) = &doc.comparison {
        v["comparison"] = json!({
            "degree": c.degree,
            "engine": fingerprint_json(&c.engine),
            "closed": fingerprint_json(&c.closed),
            "abelian_equal": c.abelian_equal,
            "match": c.matches(),
        });
    }
    serde_json::to_string_pretty(&v).expect("json value") + "\n"
}

fn counts(fp: &HomFingerprint) -> String {
    let v: Vec<String> = fp.as_vec().iter().map(u128::to_string).collect();
    format!("[{}]", v.join(","))
}

pub fn to_text(doc: &OutputDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "spec: {}", doc.spec);
    let _ = writeln!(s, "method: {}", method_name(doc.method));
    let _ = writeln!(s, "presentation: {}", doc.group);
    let _ = writeln!(s, "abelian: {}", doc.abelian);
    if let Some(fp) = &doc.fingerprint {
        let _ = writeln!(s, "fingerprint: {}", counts(fp));
    }
    if let Some(c) = &doc.comparison {
        let verdict = if c.matches() { "match" } else { "MISMATCH" };
        let _ = writeln!(
            s,
            "comparison: {verdict} (engine {}, closed {}, abelian {})",
            counts(&c.engine),
            counts(&c.closed),
            if c.abelian_equal { "equal" } else { "differ" }
        );
    }
    s
}

/// GAP-style `FreeGroup` / quotient text.
pub fn to_algebra(doc: &OutputDocument) -> String {
    let g = &doc.group;
    let mut s = String::new();
    let _ = writeln!(s, "# {}", doc.spec);
    let names: Vec<String> = g.generators().iter().map(|n| format!("\"{n}\"")).collect();
    if names.is_empty() {
        let _ = writeln!(s, "F := FreeGroup([]);");
    } else {
        let _ = writeln!(s, "F := FreeGroup({});", names.join(", "));
    }
    for (i, n) in g.generators().iter().enumerate() {
        let _ = writeln!(s, "{n} := F.{};", i + 1);
    }
    let _ = writeln!(s, "G := F / [ {} ];", g.relation_strings().join(", "));
    s
}

fn parse_list(body: &str) -> Vec<&str> {
    body.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

/// Reads back the `presentation:` line of [`to_text`] output.
pub fn parse_text(text: &str) -> knotgroup::Result<GroupPresentation> {
    let bad = |m: &str| Error::Parse {
        position: 0,
        message: m.to_string(),
    };
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix("presentation:"))
        .ok_or_else(|| bad("no presentation line"))?;
    let inner = line
        .trim()
        .strip_prefix('<')
        .and_then(|l| l.strip_suffix('>'))
        .ok_or_else(|| bad("presentation must be enclosed in < >"))?;
    let (gens, rels) = inner.split_once('|').ok_or_else(|| bad("missing `|`"))?;
    let gens = parse_list(gens).into_iter().map(String::from).collect();
    GroupPresentation::parse(gens, &parse_list(rels))
}

/// Reads back [`to_algebra`] output.
pub fn parse_algebra(text: &str) -> knotgroup::Result<GroupPresentation> {
    let bad = |m: &str| Error::Parse {
        position: 0,
        message: m.to_string(),
    };
    let free = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("F := FreeGroup("))
        .and_then(|l| l.strip_suffix(");"))
        .ok_or_else(|| bad("no FreeGroup line"))?;
    let gens = if free.trim() == "[]" {
        Vec::new()
    } else {
        parse_list(free)
            .into_iter()
            .map(|n| n.trim_matches('"').to_string())
            .collect()
    };
    let rels = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("G := F / ["))
        .and_then(|l| l.strip_suffix("];"))
        .ok_or_else(|| bad("no quotient line"))?;
    GroupPresentation::parse(gens, &parse_list(rels))
}

/// Runs the tool on already-split arguments (program name first).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let doc = match build(&args) {
        Ok(d) => d,
        Err(e) => {
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let stdout = match args.format {
        Format::Text => to_text(&doc),
        Format::Json => to_json(&doc),
        Format::Algebra => to_algebra(&doc),
    };
    let mismatch = doc.comparison.as_ref().is_some_and(|c| !c.matches());
    Outcome {
        code: if mismatch { 2 } else { 0 },
        stderr: if mismatch {
            "error: engine and closed form disagree\n".into()
        } else {
            String::new()
        },
        stdout,
    }
}
