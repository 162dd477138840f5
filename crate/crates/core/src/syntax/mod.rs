//! Guarded process terms, well-formedness, sorts, and value-passing expansion.

mod parse;
mod print;

pub use parse::{parse_program, parse_term, ParseError, ParseErrorKind, Program};
pub use print::{print_renaming, print_restriction, print_term};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::names::{Action, Label, Name, NameError, Registry, Renaming, Restriction};

/// A value carried by an output prefix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Lit(u32),
    Var(String),
}

/// Process terms. `0` is the empty sum.
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Debug, Hash)]
pub enum Term {
    Prefix(Action, Arc<Term>),
    /// Finite guarded sum; every guard is a non-τ action.
    Sum(Vec<(Action, Arc<Term>)>),
    Par(Arc<Term>, Arc<Term>),
    Restrict(Arc<Term>, Restriction),
    Rename(Arc<Term>, Renaming),
    Var(String),
    Rec(String, Arc<Term>),
    /// `in s(x). P`
    Input(Name, String, Arc<Term>),
    /// `out s(v). P`
    Output(Name, Value, Arc<Term>),
}

// Structural order, but shared subterms compare in O(1). Terms reached by
// stepping share most of their structure, so this matters for state caches.
fn arc_cmp(a: &Arc<Term>, b: &Arc<Term>) -> core::cmp::Ordering {
    if Arc::ptr_eq(a, b) {
        core::cmp::Ordering::Equal
    } else {
        a.as_ref().cmp(b.as_ref())
    }
}

fn sum_cmp(a: &[(Action, Arc<Term>)], b: &[(Action, Arc<Term>)]) -> core::cmp::Ordering {
    for ((x, p), (y, q)) in a.iter().zip(b) {
        let o = x.cmp(y).then_with(|| arc_cmp(p, q));
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

impl Term {
    fn rank(&self) -> u8 {
        match self {
            Term::Prefix(..) => 0,
            Term::Sum(_) => 1,
            Term::Par(..) => 2,
            Term::Restrict(..) => 3,
            Term::Rename(..) => 4,
            Term::Var(_) => 5,
            Term::Rec(..) => 6,
            Term::Input(..) => 7,
            Term::Output(..) => 8,
        }
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        use Term::*;
        match (self, other) {
            (Prefix(a, p), Prefix(b, q)) => a.cmp(b).then_with(|| arc_cmp(p, q)),
            (Sum(a), Sum(b)) => sum_cmp(a, b),
            (Par(p1, p2), Par(q1, q2)) => arc_cmp(p1, q1).then_with(|| arc_cmp(p2, q2)),
            (Restrict(p, r), Restrict(q, s)) => arc_cmp(p, q).then_with(|| r.cmp(s)),
            (Rename(p, r), Rename(q, s)) => arc_cmp(p, q).then_with(|| r.cmp(s)),
            (Var(x), Var(y)) => x.cmp(y),
            (Rec(x, p), Rec(y, q)) => x.cmp(y).then_with(|| arc_cmp(p, q)),
            (Input(a, x, p), Input(b, y, q)) => a.cmp(b).then_with(|| x.cmp(y)).then_with(|| arc_cmp(p, q)),
            (Output(a, v, p), Output(b, w, q)) => a.cmp(b).then_with(|| v.cmp(w)).then_with(|| arc_cmp(p, q)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Term {}

impl Term {
    pub fn nil() -> Term {
        Term::Sum(Vec::new())
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Term::Sum(bs) if bs.is_empty())
    }

    pub fn prefix(a: Action, p: Term) -> Term {
        Term::Prefix(a, Arc::new(p))
    }

    pub fn sum<I: IntoIterator<Item = (Action, Term)>>(branches: I) -> Term {
        Term::Sum(branches.into_iter().map(|(a, p)| (a, Arc::new(p))).collect())
    }

    pub fn par(p: Term, q: Term) -> Term {
        Term::Par(Arc::new(p), Arc::new(q))
    }

    /// Right-nested parallel composition of a list; `0` when empty.
    pub fn par_all(mut ps: Vec<Term>) -> Term {
        match ps.len() {
            0 => Term::nil(),
            1 => ps.pop().unwrap(),
            _ => {
                let last = ps.pop().unwrap();
                ps.into_iter().rev().fold(last, |acc, p| Term::par(p, acc))
            }
        }
    }

    pub fn restrict(p: Term, set: Restriction) -> Term {
        Term::Restrict(Arc::new(p), set)
    }

    pub fn rename(p: Term, f: Renaming) -> Term {
        Term::Rename(Arc::new(p), f)
    }

    pub fn var(x: &str) -> Term {
        Term::Var(x.into())
    }

    pub fn rec(x: &str, body: Term) -> Term {
        Term::Rec(x.into(), Arc::new(body))
    }

    /// `P[rec X. P / X]`-style substitution of a closed term for a process variable.
    pub fn subst(self: &Arc<Term>, x: &str, r: &Arc<Term>) -> Arc<Term> {
        match &**self {
            Term::Var(y) if y == x => r.clone(),
            Term::Var(_) => self.clone(),
            Term::Rec(y, _) if y == x => self.clone(),
            Term::Rec(y, b) => rebuild1(self, b, x, r, |b| Term::Rec(y.clone(), b)),
            Term::Prefix(a, p) => rebuild1(self, p, x, r, |p| Term::Prefix(a.clone(), p)),
            Term::Restrict(p, l) => rebuild1(self, p, x, r, |p| Term::Restrict(p, l.clone())),
            Term::Rename(p, f) => rebuild1(self, p, x, r, |p| Term::Rename(p, f.clone())),
            Term::Input(s, v, p) => rebuild1(self, p, x, r, |p| Term::Input(*s, v.clone(), p)),
            Term::Output(s, v, p) => rebuild1(self, p, x, r, |p| Term::Output(*s, v.clone(), p)),
            Term::Par(p, q) => {
                let p2 = p.subst(x, r);
                let q2 = q.subst(x, r);
                if Arc::ptr_eq(p, &p2) && Arc::ptr_eq(q, &q2) {
                    self.clone()
                } else {
                    Arc::new(Term::Par(p2, q2))
                }
            }
            Term::Sum(bs) => {
                let mut changed = false;
                let nbs: Vec<_> = bs
                    .iter()
                    .map(|(a, p)| {
                        let p2 = p.subst(x, r);
                        changed |= !Arc::ptr_eq(p, &p2);
                        (a.clone(), p2)
                    })
                    .collect();
                if changed {
                    Arc::new(Term::Sum(nbs))
                } else {
                    self.clone()
                }
            }
        }
    }

    /// Substitutes a literal for a free value variable.
    pub fn subst_value(self: &Arc<Term>, x: &str, v: u32) -> Arc<Term> {
        match &**self {
            Term::Output(s, Value::Var(y), p) if y == x => {
                Arc::new(Term::Output(*s, Value::Lit(v), p.subst_value(x, v)))
            }
            Term::Output(s, val, p) => {
                Arc::new(Term::Output(*s, val.clone(), p.subst_value(x, v)))
            }
            Term::Input(s, y, _) if y == x => {
                let _ = s;
                self.clone()
            }
            Term::Input(s, y, p) => Arc::new(Term::Input(*s, y.clone(), p.subst_value(x, v))),
            Term::Var(_) => self.clone(),
            Term::Rec(y, b) => Arc::new(Term::Rec(y.clone(), b.subst_value(x, v))),
            Term::Prefix(a, p) => Arc::new(Term::Prefix(a.clone(), p.subst_value(x, v))),
            Term::Restrict(p, l) => Arc::new(Term::Restrict(p.subst_value(x, v), l.clone())),
            Term::Rename(p, f) => Arc::new(Term::Rename(p.subst_value(x, v), f.clone())),
            Term::Par(p, q) => Arc::new(Term::Par(p.subst_value(x, v), q.subst_value(x, v))),
            Term::Sum(bs) => Arc::new(Term::Sum(
                bs.iter().map(|(a, p)| (a.clone(), p.subst_value(x, v))).collect(),
            )),
        }
    }

    /// Number of constructors, counting `0` and variables as 1.
    pub fn size(&self) -> usize {
        match self {
            Term::Sum(bs) if bs.is_empty() => 1,
            Term::Sum(bs) => 1 + bs.iter().map(|(_, p)| p.size()).sum::<usize>(),
            Term::Var(_) => 1,
            Term::Prefix(_, p)
            | Term::Restrict(p, _)
            | Term::Rename(p, _)
            | Term::Rec(_, p)
            | Term::Input(_, _, p)
            | Term::Output(_, _, p) => 1 + p.size(),
            Term::Par(p, q) => 1 + p.size() + q.size(),
        }
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Rec(x, b) => {
                bound.push(x.clone());
                b.free_vars_into(bound, out);
                bound.pop();
            }
            Term::Prefix(_, p)
            | Term::Restrict(p, _)
            | Term::Rename(p, _)
            | Term::Input(_, _, p)
            | Term::Output(_, _, p) => p.free_vars_into(bound, out),
            Term::Par(p, q) => {
                p.free_vars_into(bound, out);
                q.free_vars_into(bound, out);
            }
            Term::Sum(bs) => bs.iter().for_each(|(_, p)| p.free_vars_into(bound, out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Whether the term still contains value-passing prefixes.
    pub fn has_value_passing(&self) -> bool {
        match self {
            Term::Input(..) | Term::Output(..) => true,
            Term::Var(_) => false,
            Term::Prefix(_, p) | Term::Restrict(p, _) | Term::Rename(p, _) | Term::Rec(_, p) => {
                p.has_value_passing()
            }
            Term::Par(p, q) => p.has_value_passing() || q.has_value_passing(),
            Term::Sum(bs) => bs.iter().any(|(_, p)| p.has_value_passing()),
        }
    }
}

fn rebuild1(
    whole: &Arc<Term>,
    child: &Arc<Term>,
    x: &str,
    r: &Arc<Term>,
    mk: impl FnOnce(Arc<Term>) -> Term,
) -> Arc<Term> {
    let c2 = child.subst(x, r);
    if Arc::ptr_eq(child, &c2) {
        whole.clone()
    } else {
        Arc::new(mk(c2))
    }
}

/// A sound over-approximation of the labels a term can perform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SortInfo {
    Finite(BTreeSet<Label>),
    /// The sort could not be bounded by a finite set (e.g. recursion under a
    /// coding renaming, or unexpanded value passing).
    Unbounded,
}

impl SortInfo {
    pub fn finite(&self) -> Option<&BTreeSet<Label>> {
        match self {
            SortInfo::Finite(s) => Some(s),
            SortInfo::Unbounded => None,
        }
    }

    fn union(self, other: SortInfo) -> SortInfo {
        match (self, other) {
            (SortInfo::Finite(mut a), SortInfo::Finite(b)) => {
                a.extend(b);
                SortInfo::Finite(a)
            }
            _ => SortInfo::Unbounded,
        }
    }
}

const SORT_FIXPOINT_ROUNDS: usize = 12;

/// Computes the sort of a term.
pub fn sort_of(t: &Term) -> SortInfo {
    sort_in(t, &mut BTreeMap::new())
}

fn sort_in(t: &Term, env: &mut BTreeMap<String, SortInfo>) -> SortInfo {
    match t {
        Term::Var(x) => env.get(x).cloned().unwrap_or(SortInfo::Finite(BTreeSet::new())),
        Term::Prefix(a, p) => SortInfo::Finite(a.labels().iter().copied().collect()).union(sort_in(p, env)),
        Term::Sum(bs) => bs.iter().fold(SortInfo::Finite(BTreeSet::new()), |acc, (a, p)| {
            acc.union(SortInfo::Finite(a.labels().iter().copied().collect()))
                .union(sort_in(p, env))
        }),
        Term::Par(p, q) => sort_in(p, env).union(sort_in(q, env)),
        Term::Restrict(p, l) => match sort_in(p, env) {
            SortInfo::Finite(s) => SortInfo::Finite(s.into_iter().filter(|x| !l.contains(x.name)).collect()),
            SortInfo::Unbounded => SortInfo::Unbounded,
        },
        Term::Rename(p, f) => match sort_in(p, env) {
            SortInfo::Finite(s) => SortInfo::Finite(s.into_iter().filter_map(|x| f.apply_label(x)).collect()),
            SortInfo::Unbounded => SortInfo::Unbounded,
        },
        Term::Rec(x, body) => {
            let saved = env.remove(x);
            let mut cur = SortInfo::Finite(BTreeSet::new());
            let mut result = SortInfo::Unbounded;
            for _ in 0..SORT_FIXPOINT_ROUNDS {
                env.insert(x.clone(), cur.clone());
                let next = sort_in(body, env);
                if next == cur {
                    result = next;
                    break;
                }
                if next == SortInfo::Unbounded {
                    break;
                }
                cur = next;
            }
            env.remove(x);
            if let Some(s) = saved {
                env.insert(x.clone(), s);
            }
            result
        }
        Term::Input(..) | Term::Output(..) => SortInfo::Unbounded,
    }
}

/// Problems reported by [`well_formed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    UnguardedRecursion(String),
    FreeProcessVariable(String),
    FreeValueVariable(String),
    TauGuardInSum,
    /// A label of the renamed subterm's sort lies outside the renaming's domain.
    RenamingDomain(Label),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UnguardedRecursion(x) => write!(f, "unguarded recursion on {x}"),
            Diagnostic::FreeProcessVariable(x) => write!(f, "free process variable {x}"),
            Diagnostic::FreeValueVariable(x) => write!(f, "free value variable {x}"),
            Diagnostic::TauGuardInSum => write!(f, "tau guard inside a sum"),
            Diagnostic::RenamingDomain(l) => write!(f, "label {l} outside renaming domain"),
        }
    }
}

/// Checks guardedness, closedness, sum guards, and renaming domains.
/// An empty result means the term is well formed.
pub fn well_formed(t: &Term) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check(t, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn check(t: &Term, pvars: &mut Vec<String>, vvars: &mut Vec<String>, out: &mut Vec<Diagnostic>) {
    match t {
        Term::Var(x) => {
            if !pvars.contains(x) {
                out.push(Diagnostic::FreeProcessVariable(x.clone()));
            }
        }
        Term::Rec(x, body) => {
            if !guarded(x, body) {
                out.push(Diagnostic::UnguardedRecursion(x.clone()));
            }
            pvars.push(x.clone());
            check(body, pvars, vvars, out);
            pvars.pop();
        }
        Term::Prefix(_, p) => check(p, pvars, vvars, out),
        Term::Sum(bs) => {
            for (a, p) in bs {
                if a.is_tau() {
                    out.push(Diagnostic::TauGuardInSum);
                }
                check(p, pvars, vvars, out);
            }
        }
        Term::Par(p, q) => {
            check(p, pvars, vvars, out);
            check(q, pvars, vvars, out);
        }
        Term::Restrict(p, _) => check(p, pvars, vvars, out),
        Term::Rename(p, f) => {
            if let SortInfo::Finite(s) = sort_of(p) {
                for l in s {
                    if !f.in_domain(l) {
                        out.push(Diagnostic::RenamingDomain(l));
                    }
                }
            }
            check(p, pvars, vvars, out);
        }
        Term::Input(_, x, p) => {
            vvars.push(x.clone());
            check(p, pvars, vvars, out);
            vvars.pop();
        }
        Term::Output(_, v, p) => {
            if let Value::Var(x) = v {
                if !vvars.contains(x) {
                    out.push(Diagnostic::FreeValueVariable(x.clone()));
                }
            }
            check(p, pvars, vvars, out);
        }
    }
}

/// Every free occurrence of `x` in `t` sits beneath a prefix, sum guard, or input.
fn guarded(x: &str, t: &Term) -> bool {
    match t {
        Term::Var(y) => y != x,
        Term::Rec(y, b) => y == x || guarded(x, b),
        Term::Prefix(..) | Term::Sum(_) | Term::Input(..) | Term::Output(..) => true,
        Term::Par(p, q) => guarded(x, p) && guarded(x, q),
        Term::Restrict(p, _) | Term::Rename(p, _) => guarded(x, p),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpandError {
    EmptyDomain,
    ValueOutsideDomain(u32),
    FreeValueVariable(String),
    Name(NameError),
}

impl fmt::Display for ExpandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpandError::EmptyDomain => write!(f, "value domain is empty"),
            ExpandError::ValueOutsideDomain(v) => write!(f, "value {v} is outside the declared domain"),
            ExpandError::FreeValueVariable(x) => write!(f, "free value variable {x}"),
            ExpandError::Name(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ExpandError {}

impl From<NameError> for ExpandError {
    fn from(e: NameError) -> Self {
        ExpandError::Name(e)
    }
}

/// Compiles value-passing prefixes away over a finite value domain: an input
/// becomes a sum over `σ_v`, an output becomes a prefix on `~σ_v`.
pub fn expand_values(t: &Term, domain: &[u32], reg: &mut Registry) -> Result<Term, ExpandError> {
    if domain.is_empty() {
        return Err(ExpandError::EmptyDomain);
    }
    expand(&Arc::new(t.clone()), domain, reg).map(|a| (*a).clone())
}

fn expand(t: &Arc<Term>, dom: &[u32], reg: &mut Registry) -> Result<Arc<Term>, ExpandError> {
    Ok(match &**t {
        Term::Input(s, x, p) => {
            let mut branches = Vec::new();
            for &v in dom {
                let name = reg.value_name(*s, v)?;
                let body = expand(&p.subst_value(x, v), dom, reg)?;
                branches.push((Action::single(name.positive()), body));
            }
            Arc::new(Term::Sum(branches))
        }
        Term::Output(s, val, p) => {
            let v = match val {
                Value::Lit(v) => *v,
                Value::Var(x) => return Err(ExpandError::FreeValueVariable(x.clone())),
            };
            if !dom.contains(&v) {
                return Err(ExpandError::ValueOutsideDomain(v));
            }
            let name = reg.value_name(*s, v)?;
            Arc::new(Term::Prefix(Action::single(name.negative()), expand(p, dom, reg)?))
        }
        Term::Var(_) => t.clone(),
        Term::Prefix(a, p) => Arc::new(Term::Prefix(a.clone(), expand(p, dom, reg)?)),
        Term::Sum(bs) => {
            let mut out = Vec::with_capacity(bs.len());
            for (a, p) in bs {
                out.push((a.clone(), expand(p, dom, reg)?));
            }
            Arc::new(Term::Sum(out))
        }
        Term::Par(p, q) => Arc::new(Term::Par(expand(p, dom, reg)?, expand(q, dom, reg)?)),
        Term::Restrict(p, l) => Arc::new(Term::Restrict(expand(p, dom, reg)?, l.clone())),
        Term::Rename(p, f) => Arc::new(Term::Rename(expand(p, dom, reg)?, f.clone())),
        Term::Rec(x, b) => Arc::new(Term::Rec(x.clone(), expand(b, dom, reg)?)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms() -> (Registry, Name, Name) {
        let mut reg = Registry::new();
        let a = reg.intern("a").unwrap();
        let b = reg.intern("b").unwrap();
        (reg, a, b)
    }

    #[test]
    fn guardedness() {
        let t = Term::rec("X", Term::prefix(Action::tau(), Term::var("X")));
        assert!(well_formed(&t).is_empty());
        let bad = Term::rec("X", Term::par(Term::var("X"), Term::var("X")));
        assert_eq!(well_formed(&bad), [Diagnostic::UnguardedRecursion("X".into())]);
        assert_eq!(well_formed(&Term::var("Y")), [Diagnostic::FreeProcessVariable("Y".into())]);
    }

    #[test]
    fn tau_guard_in_sum() {
        let (_, a, _) = atoms();
        let t = Term::sum([(Action::tau(), Term::nil()), (Action::single(a.positive()), Term::nil())]);
        assert_eq!(well_formed(&t), [Diagnostic::TauGuardInSum]);
    }

    #[test]
    fn renaming_domain_diagnostic() {
        let (_, a, _) = atoms();
        let p = Term::prefix(Action::single(a.positive()), Term::nil());
        let t = Term::rename(p, Renaming::rcode().inverse());
        assert_eq!(well_formed(&t), [Diagnostic::RenamingDomain(a.positive())]);
    }

    #[test]
    fn sorts() {
        let (_, a, _) = atoms();
        assert_eq!(sort_of(&Term::nil()), SortInfo::Finite(BTreeSet::new()));
        let pa = Term::prefix(Action::single(a.positive()), Term::nil());
        let pna = Term::prefix(Action::single(a.negative()), Term::nil());
        let s = sort_of(&Term::par(pa.clone(), pna));
        assert_eq!(s, SortInfo::Finite([a.positive(), a.negative()].into_iter().collect()));
        let r = Term::restrict(pa, Restriction::names([a]));
        assert_eq!(sort_of(&r), SortInfo::Finite(BTreeSet::new()));
    }

    #[test]
    fn sort_of_growing_recursion_is_unbounded() {
        let (_, a, _) = atoms();
        let t = Term::rec(
            "X",
            Term::prefix(Action::single(a.positive()), Term::rename(Term::var("X"), Renaming::lcode())),
        );
        assert_eq!(sort_of(&t), SortInfo::Unbounded);
        let w = Term::rec("X", Term::prefix(Action::single(a.positive()), Term::var("X")));
        assert_eq!(sort_of(&w), SortInfo::Finite([a.positive()].into_iter().collect()));
    }

    #[test]
    fn value_expansion() {
        let (mut reg, a, _) = atoms();
        let s = reg.intern("s").unwrap();
        let body = Term::Output(a, Value::Var("x".into()), Arc::new(Term::nil()));
        let t = Term::Input(s, "x".into(), Arc::new(body));
        let e = expand_values(&t, &[0, 1], &mut reg).unwrap();
        let s0 = reg.lookup("s_0").unwrap();
        let s1 = reg.lookup("s_1").unwrap();
        let a0 = reg.lookup("a_0").unwrap();
        let a1 = reg.lookup("a_1").unwrap();
        let expected = Term::sum([
            (Action::single(s0.positive()), Term::prefix(Action::single(a0.negative()), Term::nil())),
            (Action::single(s1.positive()), Term::prefix(Action::single(a1.negative()), Term::nil())),
        ]);
        assert_eq!(e, expected);
        assert!(well_formed(&e).is_empty());

        let out = Term::Output(s, Value::Lit(1), Arc::new(Term::nil()));
        let e = expand_values(&out, &[0, 1], &mut reg).unwrap();
        assert_eq!(e, Term::prefix(Action::single(s1.negative()), Term::nil()));
        assert_eq!(expand_values(&out, &[], &mut reg), Err(ExpandError::EmptyDomain));
        assert_eq!(expand_values(&out, &[0], &mut reg), Err(ExpandError::ValueOutsideDomain(1)));
    }
}
