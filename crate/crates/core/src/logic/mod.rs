//! Classical linear logic: formulas in negation normal form, sequent proofs,
//! proof checking, and cut elimination.

mod cut;
mod text;

pub use cut::{contains_cut, cut_eliminate, cut_step, find_innermost_cut, CutError, Eliminated, RuleKind, StepKind};
pub use text::{parse_formula, parse_formula_with, print_formula, FormulaError};

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Value domain used when a quantifier is written without one.
pub const DEFAULT_VALUE_DOMAIN: [u32; 2] = [0, 1];

/// Argument of an atom under a first-order quantifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arg {
    Var(String),
    Val(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// `neg` marks the dual atom `a⊥`.
    Atom { name: String, arg: Option<Arg>, neg: bool },
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
    Quest(Box<Formula>),
    Forall { var: String, domain: Vec<u32>, body: Box<Formula> },
    Exists { var: String, domain: Vec<u32>, body: Box<Formula> },
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom { name: name.into(), arg: None, neg: false }
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Formula {
        Formula::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Formula {
        Formula::Plus(Box::new(a), Box::new(b))
    }

    pub fn bang(a: Formula) -> Formula {
        Formula::Bang(Box::new(a))
    }

    pub fn quest(a: Formula) -> Formula {
        Formula::Quest(Box::new(a))
    }

    /// `A ⊸ B = A⊥ ⅋ B`.
    pub fn lolli(a: Formula, b: Formula) -> Formula {
        Formula::par(a.negate(), b)
    }

    /// Linear negation, pushed to the atoms.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom { name, arg, neg } => Formula::Atom { name: name.clone(), arg: arg.clone(), neg: !neg },
            Formula::Tensor(a, b) => Formula::par(a.negate(), b.negate()),
            Formula::Par(a, b) => Formula::tensor(a.negate(), b.negate()),
            Formula::With(a, b) => Formula::plus(a.negate(), b.negate()),
            Formula::Plus(a, b) => Formula::with(a.negate(), b.negate()),
            Formula::Bang(a) => Formula::quest(a.negate()),
            Formula::Quest(a) => Formula::bang(a.negate()),
            Formula::Forall { var, domain, body } => {
                Formula::Exists { var: var.clone(), domain: domain.clone(), body: Box::new(body.negate()) }
            }
            Formula::Exists { var, domain, body } => {
                Formula::Forall { var: var.clone(), domain: domain.clone(), body: Box::new(body.negate()) }
            }
        }
    }

    /// Replaces free occurrences of the value variable `x` by `v`.
    pub fn subst(&self, x: &str, v: u32) -> Formula {
        match self {
            Formula::Atom { name, arg: Some(Arg::Var(y)), neg } if y == x => {
                Formula::Atom { name: name.clone(), arg: Some(Arg::Val(v)), neg: *neg }
            }
            Formula::Atom { .. } => self.clone(),
            Formula::Tensor(a, b) => Formula::tensor(a.subst(x, v), b.subst(x, v)),
            Formula::Par(a, b) => Formula::par(a.subst(x, v), b.subst(x, v)),
            Formula::With(a, b) => Formula::with(a.subst(x, v), b.subst(x, v)),
            Formula::Plus(a, b) => Formula::plus(a.subst(x, v), b.subst(x, v)),
            Formula::Bang(a) => Formula::bang(a.subst(x, v)),
            Formula::Quest(a) => Formula::quest(a.subst(x, v)),
            Formula::Forall { var, .. } | Formula::Exists { var, .. } if var == x => self.clone(),
            Formula::Forall { var, domain, body } => {
                Formula::Forall { var: var.clone(), domain: domain.clone(), body: Box::new(body.subst(x, v)) }
            }
            Formula::Exists { var, domain, body } => {
                Formula::Exists { var: var.clone(), domain: domain.clone(), body: Box::new(body.subst(x, v)) }
            }
        }
    }

    pub fn is_quest(&self) -> bool {
        matches!(self, Formula::Quest(_))
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom { .. } => 1,
            Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::With(a, b) | Formula::Plus(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Bang(a) | Formula::Quest(a) => 1 + a.size(),
            Formula::Forall { body, .. } | Formula::Exists { body, .. } => 1 + body.size(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

pub type Sequent = Vec<Formula>;

/// Sequent proofs. Every logical rule acts on the last formulas of its
/// premises and puts its conclusion formula last; `Exchange` reorders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Proof {
    /// `⊢ A⊥, A`
    Axiom(Formula),
    /// From `⊢ Γ` with `Γ[left_pos] = A` and `⊢ Δ` with `Δ[right_pos] = A⊥`,
    /// conclude `Γ∖A, Δ∖A⊥`.
    Cut { left_pos: usize, right_pos: usize, left: Box<Proof>, right: Box<Proof> },
    /// `⊢ Γ, A` and `⊢ Δ, B` give `⊢ Γ, Δ, A ⊗ B`.
    TensorR(Box<Proof>, Box<Proof>),
    /// `⊢ Γ, A, B` gives `⊢ Γ, A ⅋ B`.
    ParR(Box<Proof>),
    /// `⊢ Γ, A` and `⊢ Γ, B` give `⊢ Γ, A & B`.
    WithR(Box<Proof>, Box<Proof>),
    /// `⊢ Γ, A` gives `⊢ Γ, A ⊕ other`.
    PlusR1 { other: Formula, premise: Box<Proof> },
    /// `⊢ Γ, B` gives `⊢ Γ, other ⊕ B`.
    PlusR2 { other: Formula, premise: Box<Proof> },
    /// Conclusion position `t` holds premise position `perm[t]`.
    Exchange { perm: Vec<usize>, premise: Box<Proof> },
    /// `⊢ Γ` gives `⊢ Γ, ?formula`.
    Weakening { formula: Formula, premise: Box<Proof> },
    /// `⊢ Γ, A` gives `⊢ Γ, ?A`.
    Dereliction(Box<Proof>),
    /// `⊢ Γ, ?A, ?A` gives `⊢ Γ, ?A`.
    Contraction(Box<Proof>),
    /// `⊢ ?Γ, A` gives `⊢ ?Γ, !A`.
    Promotion(Box<Proof>),
    /// One premise `⊢ Γ, body[v/var]` per value `v` of the domain.
    ForallR { var: String, domain: Vec<u32>, body: Formula, premises: Vec<Proof> },
    /// `⊢ Γ, body[value/var]` gives `⊢ Γ, ∃var. body`.
    ExistsR { var: String, domain: Vec<u32>, body: Formula, value: u32, premise: Box<Proof> },
}

impl Proof {
    pub fn premises(&self) -> Vec<&Proof> {
        match self {
            Proof::Axiom(_) => Vec::new(),
            Proof::Cut { left, right, .. } => alloc::vec![&**left, &**right],
            Proof::TensorR(a, b) | Proof::WithR(a, b) => alloc::vec![&**a, &**b],
            Proof::ParR(p) | Proof::Dereliction(p) | Proof::Contraction(p) | Proof::Promotion(p) => {
                alloc::vec![&**p]
            }
            Proof::PlusR1 { premise, .. }
            | Proof::PlusR2 { premise, .. }
            | Proof::Exchange { premise, .. }
            | Proof::Weakening { premise, .. }
            | Proof::ExistsR { premise, .. } => alloc::vec![&**premise],
            Proof::ForallR { premises, .. } => premises.iter().collect(),
        }
    }

    pub fn premises_mut(&mut self) -> Vec<&mut Proof> {
        match self {
            Proof::Axiom(_) => Vec::new(),
            Proof::Cut { left, right, .. } => alloc::vec![&mut **left, &mut **right],
            Proof::TensorR(a, b) | Proof::WithR(a, b) => alloc::vec![&mut **a, &mut **b],
            Proof::ParR(p) | Proof::Dereliction(p) | Proof::Contraction(p) | Proof::Promotion(p) => {
                alloc::vec![&mut **p]
            }
            Proof::PlusR1 { premise, .. }
            | Proof::PlusR2 { premise, .. }
            | Proof::Exchange { premise, .. }
            | Proof::Weakening { premise, .. }
            | Proof::ExistsR { premise, .. } => alloc::vec![&mut **premise],
            Proof::ForallR { premises, .. } => premises.iter_mut().collect(),
        }
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Proof::Axiom(_) => "axiom",
            Proof::Cut { .. } => "cut",
            Proof::TensorR(..) => "tensor",
            Proof::ParR(_) => "par",
            Proof::WithR(..) => "with",
            Proof::PlusR1 { .. } => "plus1",
            Proof::PlusR2 { .. } => "plus2",
            Proof::Exchange { .. } => "exchange",
            Proof::Weakening { .. } => "weakening",
            Proof::Dereliction(_) => "dereliction",
            Proof::Contraction(_) => "contraction",
            Proof::Promotion(_) => "promotion",
            Proof::ForallR { .. } => "forall",
            Proof::ExistsR { .. } => "exists",
        }
    }

    /// Number of rule instances.
    pub fn size(&self) -> usize {
        1 + self.premises().iter().map(|p| p.size()).sum::<usize>()
    }

    pub fn subproof(&self, path: &[usize]) -> Option<&Proof> {
        let mut cur = self;
        for &i in path {
            cur = *cur.premises().get(i)?;
        }
        Some(cur)
    }

    pub fn subproof_mut(&mut self, path: &[usize]) -> Option<&mut Proof> {
        let mut cur = self;
        for &i in path {
            cur = cur.premises_mut().into_iter().nth(i)?;
        }
        Some(cur)
    }

    /// Wraps in an exchange unless `perm` is the identity.
    pub fn exchange(self, perm: Vec<usize>) -> Proof {
        if perm.iter().enumerate().all(|(i, p)| i == *p) {
            self
        } else {
            Proof::Exchange { perm, premise: Box::new(self) }
        }
    }
}

/// A proof-checking failure at the rule reached by `path` (premise indices from the root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofError {
    pub path: Vec<usize>,
    pub message: String,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at /")?;
        for (i, p) in self.path.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl core::error::Error for ProofError {}

/// Checks every rule application and returns the conclusion.
pub fn check_proof(p: &Proof) -> Result<Sequent, ProofError> {
    check_at(p, &mut Vec::new())
}

fn fail<T>(path: &[usize], message: String) -> Result<T, ProofError> {
    Err(ProofError { path: path.to_vec(), message })
}

fn show(seq: &[Formula]) -> String {
    let parts: Vec<String> = seq.iter().map(print_formula).collect();
    format!("⊢ {}", parts.join(", "))
}

fn premise(p: &Proof, i: usize, path: &mut Vec<usize>) -> Result<Sequent, ProofError> {
    path.push(i);
    let r = check_at(p, path);
    path.pop();
    r
}

fn split_last(mut seq: Sequent, path: &[usize], rule: &str) -> Result<(Sequent, Formula), ProofError> {
    match seq.pop() {
        Some(f) => Ok((seq, f)),
        None => fail(path, format!("{rule}: premise sequent is empty")),
    }
}

fn check_at(p: &Proof, path: &mut Vec<usize>) -> Result<Sequent, ProofError> {
    match p {
        Proof::Axiom(a) => Ok(alloc::vec![a.negate(), a.clone()]),
        Proof::Cut { left_pos, right_pos, left, right } => {
            let mut g = premise(left, 0, path)?;
            let mut d = premise(right, 1, path)?;
            if *left_pos >= g.len() || *right_pos >= d.len() {
                return fail(path, format!("cut: position out of range ({left_pos}, {right_pos})"));
            }
            let a = g.remove(*left_pos);
            let b = d.remove(*right_pos);
            if b != a.negate() {
                return fail(path, format!("cut: {} is not the dual of {}", print_formula(&b), print_formula(&a)));
            }
            g.extend(d);
            Ok(g)
        }
        Proof::TensorR(l, r) => {
            let (mut g, a) = split_last(premise(l, 0, path)?, path, "tensor")?;
            let (d, b) = split_last(premise(r, 1, path)?, path, "tensor")?;
            g.extend(d);
            g.push(Formula::tensor(a, b));
            Ok(g)
        }
        Proof::ParR(q) => {
            let (g, b) = split_last(premise(q, 0, path)?, path, "par")?;
            let (mut g, a) = split_last(g, path, "par")?;
            g.push(Formula::par(a, b));
            Ok(g)
        }
        Proof::WithR(l, r) => {
            let (mut g, a) = split_last(premise(l, 0, path)?, path, "with")?;
            let (d, b) = split_last(premise(r, 1, path)?, path, "with")?;
            if g != d {
                return fail(path, format!("with: contexts differ: {} vs {}", show(&g), show(&d)));
            }
            g.push(Formula::with(a, b));
            Ok(g)
        }
        Proof::PlusR1 { other, premise: q } => {
            let (mut g, a) = split_last(premise(q, 0, path)?, path, "plus1")?;
            g.push(Formula::plus(a, other.clone()));
            Ok(g)
        }
        Proof::PlusR2 { other, premise: q } => {
            let (mut g, b) = split_last(premise(q, 0, path)?, path, "plus2")?;
            g.push(Formula::plus(other.clone(), b));
            Ok(g)
        }
        Proof::Exchange { perm, premise: q } => {
            let g = premise(q, 0, path)?;
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if perm.len() != g.len() || sorted.iter().enumerate().any(|(i, x)| i != *x) {
                return fail(path, format!("exchange: {perm:?} is not a permutation of {} positions", g.len()));
            }
            Ok(perm.iter().map(|i| g[*i].clone()).collect())
        }
        Proof::Weakening { formula, premise: q } => {
            let mut g = premise(q, 0, path)?;
            g.push(Formula::quest(formula.clone()));
            Ok(g)
        }
        Proof::Dereliction(q) => {
            let (mut g, a) = split_last(premise(q, 0, path)?, path, "dereliction")?;
            g.push(Formula::quest(a));
            Ok(g)
        }
        Proof::Contraction(q) => {
            let (g, a) = split_last(premise(q, 0, path)?, path, "contraction")?;
            let (g, b) = split_last(g, path, "contraction")?;
            if a != b || !a.is_quest() {
                return fail(path, format!("contraction: needs two equal ?-formulas, got {} and {}", print_formula(&b), print_formula(&a)));
            }
            let mut g = g;
            g.push(a);
            Ok(g)
        }
        Proof::Promotion(q) => {
            let (mut g, a) = split_last(premise(q, 0, path)?, path, "promotion")?;
            if let Some(bad) = g.iter().find(|f| !f.is_quest()) {
                return fail(path, format!("promotion: context formula {} is not a ?-formula", print_formula(bad)));
            }
            g.push(Formula::bang(a));
            Ok(g)
        }
        Proof::ForallR { var, domain, body, premises } => {
            if domain.is_empty() {
                return fail(path, "forall: empty value domain".into());
            }
            if premises.len() != domain.len() {
                return fail(path, format!("forall: {} premises for {} values", premises.len(), domain.len()));
            }
            let mut ctx: Option<Sequent> = None;
            for (i, (q, v)) in premises.iter().zip(domain).enumerate() {
                let (g, a) = split_last(premise(q, i, path)?, path, "forall")?;
                let want = body.subst(var, *v);
                if a != want {
                    return fail(path, format!("forall: premise {i} proves {}, expected {}", print_formula(&a), print_formula(&want)));
                }
                match &ctx {
                    Some(c) if *c != g => return fail(path, format!("forall: premise {i} has a different context")),
                    Some(_) => {}
                    None => ctx = Some(g),
                }
            }
            let mut g = ctx.unwrap_or_default();
            g.push(Formula::Forall { var: var.clone(), domain: domain.clone(), body: Box::new(body.clone()) });
            Ok(g)
        }
        Proof::ExistsR { var, domain, body, value, premise: q } => {
            if !domain.contains(value) {
                return fail(path, format!("exists: witness {value} outside the domain"));
            }
            let (mut g, a) = split_last(premise(q, 0, path)?, path, "exists")?;
            let want = body.subst(var, *value);
            if a != want {
                return fail(path, format!("exists: premise proves {}, expected {}", print_formula(&a), print_formula(&want)));
            }
            g.push(Formula::Exists { var: var.clone(), domain: domain.clone(), body: Box::new(body.clone()) });
            Ok(g)
        }
    }
}

/// A cut-free proof of `⊢ A⊥, A` whose axioms are all atomic.
pub fn eta_expand(a: &Formula) -> Proof {
    let swap = || alloc::vec![1, 0];
    match a {
        Formula::Atom { .. } => Proof::Axiom(a.clone()),
        Formula::Tensor(x, y) => {
            // ⊢ x⊥, y⊥, x⊗y  →  ⊢ x⊗y, x⊥⅋y⊥  →  ⊢ x⊥⅋y⊥, x⊗y
            let t = Proof::TensorR(Box::new(eta_expand(x)), Box::new(eta_expand(y)));
            Proof::ParR(Box::new(t.exchange(alloc::vec![2, 0, 1]))).exchange(swap())
        }
        Formula::With(x, y) => {
            let l = Proof::PlusR1 { other: y.negate(), premise: Box::new(eta_expand(x).exchange(swap())) };
            let r = Proof::PlusR2 { other: x.negate(), premise: Box::new(eta_expand(y).exchange(swap())) };
            Proof::WithR(Box::new(l.exchange(swap())), Box::new(r.exchange(swap())))
        }
        Formula::Bang(x) => {
            let d = Proof::Dereliction(Box::new(eta_expand(x).exchange(swap())));
            Proof::Promotion(Box::new(d.exchange(swap())))
        }
        Formula::Forall { var, domain, body } => {
            let premises = domain
                .iter()
                .map(|v| {
                    let e = Proof::ExistsR {
                        var: var.clone(),
                        domain: domain.clone(),
                        body: body.negate(),
                        value: *v,
                        premise: Box::new(eta_expand(&body.subst(var, *v)).exchange(swap())),
                    };
                    e.exchange(swap())
                })
                .collect();
            Proof::ForallR { var: var.clone(), domain: domain.clone(), body: (**body).clone(), premises }
        }
        // The remaining connectives are duals of the ones above.
        Formula::Par(..) | Formula::Plus(..) | Formula::Quest(_) | Formula::Exists { .. } => {
            eta_expand(&a.negate()).exchange(swap())
        }
    }
}
