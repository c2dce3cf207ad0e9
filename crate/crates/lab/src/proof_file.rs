//! Proof files: JSON lines, a header record followed by one record per node
//! in id order.
//!
//! ```text
//! {"format":"lstar-proof/1","goal":"...","basis":"empty","level":"none"}
//! {"id":0,"parent":null,"sentence":"...","justification":{"kind":"root"}}
//! {"id":1,"parent":0,"sentence":"...","justification":{"kind":"rule","rule":2,"ancestor":0}}
//! ```

use std::path::Path;

use lstar::enrichment::{EnrichmentLevel, LemShape};
use lstar::lang::{parse_formula_with_params, parse_term_with_params, print_formula, print_term, Symbol};
use lstar::tableaux::{Justification, Proof, ProofNode, Rule, Side};
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "lstar-proof/1";

#[derive(Debug, thiserror::Error)]
pub enum ProofFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("empty proof file")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    goal: String,
    basis: String,
    level: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeRecord {
    id: usize,
    parent: Option<usize>,
    sentence: String,
    justification: JustRecord,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JustRecord {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    axiom: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    shape: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    rule: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    ancestor: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    side: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    param: Option<String>,
}

impl JustRecord {
    fn kind(kind: &str) -> Self {
        JustRecord {
            kind: kind.into(),
            axiom: None,
            shape: None,
            rule: None,
            ancestor: None,
            side: None,
            term: None,
            param: None,
        }
    }
}

pub fn write_proof(p: &Proof) -> String {
    let mut out = String::new();
    let header = Header {
        format: FORMAT.into(),
        goal: print_formula(&p.goal),
        basis: p.basis.clone(),
        level: p.level.to_string(),
    };
    push_line(&mut out, &header);
    for (id, n) in p.nodes.iter().enumerate() {
        let justification = match &n.justification {
            Justification::Root => JustRecord::kind("root"),
            Justification::ProperAxiom(i) => JustRecord { axiom: Some(*i), ..JustRecord::kind("axiom") },
            Justification::LogicalAxiom(s) => JustRecord { shape: Some(s.to_string()), ..JustRecord::kind("logical") },
            Justification::Rule { rule, ancestor } => JustRecord {
                rule: Some(rule.number()),
                ancestor: Some(*ancestor),
                side: rule.side().map(|s| s.name().into()),
                term: rule.term().map(print_term),
                param: rule.param().map(|p| p.to_string()),
                ..JustRecord::kind("rule")
            },
        };
        let record = NodeRecord { id, parent: n.parent, sentence: print_formula(&n.sentence), justification };
        push_line(&mut out, &record);
    }
    out
}

fn push_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("plain records serialize"));
    out.push('\n');
}

pub fn read_proof(text: &str) -> Result<Proof, ProofFileError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or(ProofFileError::Empty)?;
    let err = |line: usize, message: String| ProofFileError::Syntax { line: line + 1, message };
    let header: Header = serde_json::from_str(first).map_err(|e| err(0, e.to_string()))?;
    if header.format != FORMAT {
        return Err(err(0, format!("unsupported format `{}`", header.format)));
    }
    let goal = parse_formula_with_params(&header.goal).map_err(|e| err(0, e.to_string()))?;
    let level: EnrichmentLevel = header.level.parse().map_err(|e: lstar::enrichment::LevelParseError| err(0, e.to_string()))?;
    let mut nodes = Vec::new();
    for (line, text) in lines {
        let r: NodeRecord = serde_json::from_str(text).map_err(|e| err(line, e.to_string()))?;
        if r.id != nodes.len() {
            return Err(err(line, format!("expected node id {}, found {}", nodes.len(), r.id)));
        }
        let sentence = parse_formula_with_params(&r.sentence).map_err(|e| err(line, e.to_string()))?;
        let justification = read_justification(r.justification).map_err(|m| err(line, m))?;
        nodes.push(ProofNode { parent: r.parent, sentence, justification });
    }
    Ok(Proof { goal, basis: header.basis, level, nodes })
}

fn read_justification(j: JustRecord) -> Result<Justification, String> {
    let need = |v: Option<usize>, what: &str| v.ok_or_else(|| format!("missing `{what}`"));
    Ok(match j.kind.as_str() {
        "root" => Justification::Root,
        "axiom" => Justification::ProperAxiom(need(j.axiom, "axiom")?),
        "logical" => {
            let shape = j.shape.ok_or("missing `shape`")?;
            Justification::LogicalAxiom(parse_shape(&shape).ok_or_else(|| format!("unknown shape `{shape}`"))?)
        }
        "rule" => {
            let ancestor = need(j.ancestor, "ancestor")?;
            let side = || -> Result<Side, String> {
                let s = j.side.as_deref().ok_or("missing `side`")?;
                Side::from_name(s).ok_or_else(|| format!("unknown side `{s}`"))
            };
            let term = || -> Result<_, String> {
                let t = j.term.as_deref().ok_or("missing `term`")?;
                parse_term_with_params(t).map_err(|e| e.to_string())
            };
            let param = || -> Result<Symbol, String> { Ok(Symbol::from(j.param.as_deref().ok_or("missing `param`")?)) };
            let rule = match j.rule.ok_or("missing `rule`")? {
                1 => Rule::Conjunction(side()?),
                2 => Rule::Negation,
                3 => Rule::Disjunction(side()?),
                4 => Rule::Implication(side()?),
                5 => Rule::Witness(param()?),
                6 => Rule::BoundedWitness(param()?),
                7 => Rule::Instance(term()?),
                8 => Rule::BoundedInstance(term()?),
                n => return Err(format!("unknown rule {n}")),
            };
            Justification::Rule { rule, ancestor }
        }
        k => return Err(format!("unknown justification kind `{k}`")),
    })
}

fn parse_shape(s: &str) -> Option<LemShape> {
    match s {
        "lem" => Some(LemShape::Lem),
        _ => {
            let arity: usize = s.strip_prefix("lem+")?.parse().ok()?;
            (arity >= 1).then_some(LemShape::LemPlus { arity })
        }
    }
}

pub fn load_proof(path: &Path) -> Result<Proof, ProofFileError> {
    read_proof(&std::fs::read_to_string(path)?)
}

pub fn save_proof(path: &Path, p: &Proof) -> Result<(), ProofFileError> {
    Ok(std::fs::write(path, write_proof(p))?)
}

/// The goal as it appears in a file header, for messages.
pub fn describe(p: &Proof) -> String {
    format!("{} ({} nodes)", print_formula(&p.goal), p.size())
}

