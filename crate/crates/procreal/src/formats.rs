//! JSON and DOT file formats: LTS and failure-set exports, proof trees, atom
//! environments and type environments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use procreal_core::equivalence::FailureSet;
use procreal_core::extraction::AtomEnv;
use procreal_core::logic::{parse_formula, print_formula, Formula, Proof};
use procreal_core::semantics::{ExplorationBudget, Lts};
use procreal_core::semtypes::{SemType, TypeEnv};
use procreal_core::syntax::{parse_term, print_term};
use procreal_core::{Action, Name, Registry, Term};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(msg.into()))
}

fn action_labels(a: &Action, reg: &Registry) -> Vec<String> {
    a.labels().iter().map(|l| reg.label_string(*l)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtsDoc {
    pub states: Vec<String>,
    pub initial: usize,
    pub transitions: Vec<(usize, Vec<String>, usize)>,
    pub complete: bool,
}

pub fn lts_doc(lts: &Lts, reg: &Registry) -> LtsDoc {
    LtsDoc {
        states: lts.states.iter().map(|t| print_term(t, reg)).collect(),
        initial: lts.initial(),
        transitions: lts.transitions().map(|(s, a, d)| (s, action_labels(a, reg), d)).collect(),
        complete: lts.is_complete(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn lts_dot(lts: &Lts, reg: &Registry) -> String {
    let mut out = String::from("digraph lts {\n  rankdir=LR;\n");
    for (i, t) in lts.states.iter().enumerate() {
        let shape = if i == lts.initial() { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  s{i} [shape={shape}, tooltip=\"{}\"];", dot_escape(&print_term(t, reg)));
    }
    for (s, a, d) in lts.transitions() {
        let label = if a.is_tau() { String::from("τ") } else { action_labels(a, reg).join(",") };
        let _ = writeln!(out, "  s{s} -> s{d} [label=\"{}\"];", dot_escape(&label));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureEntry {
    pub trace: Vec<Vec<String>>,
    pub acceptances: Vec<Vec<Vec<String>>>,
}

pub fn failure_doc(fs: &FailureSet, reg: &Registry) -> Vec<FailureEntry> {
    fs.traces
        .iter()
        .map(|(trace, accs)| FailureEntry {
            trace: trace.iter().map(|a| action_labels(a, reg)).collect(),
            acceptances: accs.iter().map(|acc| acc.iter().map(|a| action_labels(a, reg)).collect()).collect(),
        })
        .collect()
}

/// One node of a proof file. `rule` is one of the rule names of
/// [`Proof::rule_name`], or `eta` for the η-expanded identity on `formula`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofNode {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_pos: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_pos: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<ProofNode>,
}

fn node(rule: &str, premises: Vec<ProofNode>) -> ProofNode {
    ProofNode { rule: rule.into(), premises, ..ProofNode::default() }
}

pub fn proof_to_node(p: &Proof) -> ProofNode {
    let prem = |q: &Proof| proof_to_node(q);
    let mut n = node(p.rule_name(), p.premises().into_iter().map(prem).collect());
    match p {
        Proof::Axiom(f) => n.formula = Some(print_formula(f)),
        Proof::Cut { left_pos, right_pos, .. } => {
            n.left_pos = Some(*left_pos);
            n.right_pos = Some(*right_pos);
        }
        Proof::PlusR1 { other, .. } | Proof::PlusR2 { other, .. } => n.formula = Some(print_formula(other)),
        Proof::Exchange { perm, .. } => n.perm = Some(perm.clone()),
        Proof::Weakening { formula, .. } => n.formula = Some(print_formula(formula)),
        Proof::ForallR { var, domain, body, .. } => {
            n.var = Some(var.clone());
            n.domain = Some(domain.clone());
            n.formula = Some(print_formula(body));
        }
        Proof::ExistsR { var, domain, body, value, .. } => {
            n.var = Some(var.clone());
            n.domain = Some(domain.clone());
            n.formula = Some(print_formula(body));
            n.value = Some(*value);
        }
        _ => {}
    }
    n
}

pub fn node_to_proof(n: &ProofNode) -> Result<Proof, FormatError> {
    let formula = || -> Result<Formula, FormatError> {
        let src = n.formula.as_deref().ok_or_else(|| FormatError(format!("`{}` needs a formula", n.rule)))?;
        parse_formula(src).map_err(|e| FormatError(format!("in `{src}`: {e}")))
    };
    let arity = |k: usize| -> Result<Vec<Proof>, FormatError> {
        if n.premises.len() != k {
            return err(format!("`{}` takes {k} premises, found {}", n.rule, n.premises.len()));
        }
        n.premises.iter().map(node_to_proof).collect()
    };
    let one = || -> Result<Box<Proof>, FormatError> { Ok(Box::new(arity(1)?.remove(0))) };
    let two = || -> Result<(Box<Proof>, Box<Proof>), FormatError> {
        let mut v = arity(2)?;
        let b = v.pop().unwrap();
        Ok((Box::new(v.pop().unwrap()), Box::new(b)))
    };
    let field = |v: Option<usize>, name: &str| v.ok_or_else(|| FormatError(format!("`{}` needs `{name}`", n.rule)));
    let var = || n.var.clone().ok_or_else(|| FormatError(format!("`{}` needs `var`", n.rule)));
    let domain = || n.domain.clone().unwrap_or_else(|| procreal_core::logic::DEFAULT_VALUE_DOMAIN.to_vec());
    Ok(match n.rule.as_str() {
        "axiom" => {
            arity(0)?;
            Proof::Axiom(formula()?)
        }
        "eta" => {
            arity(0)?;
            procreal_core::logic::eta_expand(&formula()?)
        }
        "cut" => {
            let (left, right) = two()?;
            Proof::Cut { left_pos: field(n.left_pos, "left_pos")?, right_pos: field(n.right_pos, "right_pos")?, left, right }
        }
        "tensor" => {
            let (a, b) = two()?;
            Proof::TensorR(a, b)
        }
        "with" => {
            let (a, b) = two()?;
            Proof::WithR(a, b)
        }
        "par" => Proof::ParR(one()?),
        "dereliction" => Proof::Dereliction(one()?),
        "contraction" => Proof::Contraction(one()?),
        "promotion" => Proof::Promotion(one()?),
        "plus1" => Proof::PlusR1 { other: formula()?, premise: one()? },
        "plus2" => Proof::PlusR2 { other: formula()?, premise: one()? },
        "exchange" => Proof::Exchange {
            perm: n.perm.clone().ok_or_else(|| FormatError("`exchange` needs `perm`".into()))?,
            premise: one()?,
        },
        "weakening" => Proof::Weakening { formula: formula()?, premise: one()? },
        "forall" => {
            let domain = domain();
            Proof::ForallR { var: var()?, body: formula()?, premises: arity(domain.len())?, domain }
        }
        "exists" => Proof::ExistsR {
            var: var()?,
            domain: domain(),
            body: formula()?,
            value: n.value.ok_or_else(|| FormatError("`exists` needs `value`".into()))?,
            premise: one()?,
        },
        other => return err(format!("unknown rule `{other}`")),
    })
}

pub fn parse_proof_json(src: &str) -> Result<Proof, FormatError> {
    let n: ProofNode = serde_json::from_str(src).map_err(|e| FormatError(format!("proof file: {e}")))?;
    node_to_proof(&n)
}

pub fn proof_json(p: &Proof) -> String {
    serde_json::to_string_pretty(&proof_to_node(p)).expect("proof nodes serialize")
}

/// Atom alphabets: `{"atoms": {"a": ["a"], "p_0": ["p0", "q0"]}, "wire_cap": 6}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEnvDoc {
    #[serde(default)]
    pub atoms: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wire_cap: Option<usize>,
}

fn intern_all(names: &[String], reg: &mut Registry) -> Result<BTreeSet<Name>, FormatError> {
    names.iter().map(|n| reg.intern(n).map_err(|e| FormatError(format!("name `{n}`: {e}")))).collect()
}

pub fn atom_env(doc: &AtomEnvDoc, reg: &mut Registry) -> Result<AtomEnv, FormatError> {
    let mut env = AtomEnv::new();
    env.wire_cap = doc.wire_cap;
    for (atom, names) in &doc.atoms {
        env.declare(atom, intern_all(names, reg)?);
    }
    Ok(env)
}

/// One atom's semantic type: its alphabet and the classes of positive and
/// negative representatives, as term source text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomTypeDoc {
    pub alphabet: Vec<String>,
    pub pos: Vec<Vec<String>>,
    pub neg: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeEnvDoc {
    pub atoms: BTreeMap<String, AtomTypeDoc>,
    /// Rounds of `!` negative generation.
    #[serde(default)]
    pub fuel: usize,
}

fn terms(classes: &[Vec<String>], reg: &mut Registry) -> Result<Vec<Vec<Term>>, FormatError> {
    classes
        .iter()
        .map(|c| c.iter().map(|src| parse_term(src, reg).map_err(|e| FormatError(format!("in `{src}`: {e}")))).collect())
        .collect()
}

pub fn type_env(doc: &TypeEnvDoc, reg: &mut Registry, budget: ExplorationBudget) -> Result<TypeEnv, FormatError> {
    let mut out = TypeEnv::new();
    for (atom, t) in &doc.atoms {
        let alphabet = intern_all(&t.alphabet, reg)?;
        let pos = terms(&t.pos, reg)?;
        let neg = terms(&t.neg, reg)?;
        let ty = SemType::new(pos, neg, Some(alphabet), budget).map_err(|e| FormatError(format!("atom `{atom}`: {e}")))?;
        out.insert(atom.clone(), ty);
    }
    Ok(out)
}

/// The atom environment implied by a type environment's alphabets.
pub fn atom_env_of_types(doc: &TypeEnvDoc) -> AtomEnvDoc {
    AtomEnvDoc { atoms: doc.atoms.iter().map(|(k, v)| (k.clone(), v.alphabet.clone())).collect(), wire_cap: None }
}
