//! Semantic types: pairs of partial equivalence relations on processes,
//! represented by finite lists of classes, with the linear connectives,
//! realizability checks and totality.
//!
//! Every quantifier over "all realizers" ranges over the representatives a
//! type carries, which is what makes the checks decidable.

mod lists;
mod morphism;

pub use lists::{list_consumer, list_realizer, list_type_example, stream_realizer, stream_type_example, ListType};
pub use morphism::{
    check_category_laws, compose, dual_morphism, identity, is_morphism, pair, projection, Direction, Law, LawCheck,
    LawReport, MapFailure, Morphism, MorphismCheck, MorphismWitness,
};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::combinators::{choice, lapp, rapp, tensor};
use crate::equivalence::{bounded_equiv, compare_normal_forms, normal_form, perp, EquivResult, NormalForm};
use crate::logic::{Arg, Formula};
use crate::names::{Action, Name, NameError, Registry, Renaming};
use crate::semantics::{ExplorationBudget, StepError, Tri};
use crate::syntax::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemError {
    Step(StepError),
    Name(NameError),
    /// An equivalence needed to validate a construction was not decided.
    Budget { what: String },
    /// Two classes share a process, or one class contains inequivalent ones.
    NotAPer { what: String },
    UnknownAtom(String),
}

impl fmt::Display for SemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemError::Step(e) => write!(f, "{e}"),
            SemError::Name(e) => write!(f, "{e}"),
            SemError::Budget { what } => write!(f, "budget exhausted while checking {what}"),
            SemError::NotAPer { what } => write!(f, "not a partial equivalence: {what}"),
            SemError::UnknownAtom(a) => write!(f, "no semantic type for atom `{a}`"),
        }
    }
}

impl core::error::Error for SemError {}

impl From<StepError> for SemError {
    fn from(e: StepError) -> Self {
        SemError::Step(e)
    }
}

impl From<NameError> for SemError {
    fn from(e: NameError) -> Self {
        SemError::Name(e)
    }
}

/// A process together with its normal form when it is finite-state.
#[derive(Clone, Debug)]
struct Rep {
    term: Term,
    nf: Option<NormalForm>,
}

impl Rep {
    fn new(term: Term, budget: ExplorationBudget) -> Result<Rep, StepError> {
        let nf = normal_form(&term, budget)?;
        Ok(Rep { term, nf })
    }

    fn equiv(&self, other: &Rep, budget: ExplorationBudget) -> Result<EquivResult, StepError> {
        match (&self.nf, &other.nf) {
            (Some(a), Some(b)) => Ok(compare_normal_forms(a, b)),
            _ => bounded_equiv(&self.term, &other.term, budget),
        }
    }
}

/// Where a process falls in a [`RepPER`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Class(usize),
    No,
    Unknown,
}

/// A partial equivalence relation on processes given by finitely many
/// classes, each a nonempty list of pairwise `≈_f` processes. The first
/// member of a class is its representative.
#[derive(Clone, Debug)]
pub struct RepPER {
    classes: Vec<Vec<Rep>>,
}

impl PartialEq for RepPER {
    fn eq(&self, other: &Self) -> bool {
        self.classes.len() == other.classes.len()
            && self
                .classes
                .iter()
                .zip(&other.classes)
                .all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.term == y.term))
    }
}

impl Eq for RepPER {}

impl RepPER {
    pub fn empty() -> RepPER {
        RepPER { classes: Vec::new() }
    }

    /// Checks that members of a class are equivalent and that classes are
    /// pairwise distinguished.
    pub fn new(classes: Vec<Vec<Term>>, budget: ExplorationBudget) -> Result<RepPER, SemError> {
        let mut out: Vec<Vec<Rep>> = Vec::with_capacity(classes.len());
        for (i, class) in classes.into_iter().enumerate() {
            if class.is_empty() {
                return Err(SemError::NotAPer { what: alloc::format!("class {i} is empty") });
            }
            let mut reps = Vec::with_capacity(class.len());
            for t in class {
                let r = Rep::new(t, budget)?;
                if let Some(first) = reps.first() {
                    match r.equiv(first, budget)? {
                        EquivResult::Equal => {}
                        EquivResult::Distinguished(_) => {
                            return Err(SemError::NotAPer {
                                what: alloc::format!("member {} of class {i} differs from its representative", reps.len()),
                            })
                        }
                        EquivResult::Unknown { .. } => {
                            return Err(SemError::Budget { what: alloc::format!("members of class {i}") })
                        }
                    }
                }
                reps.push(r);
            }
            for (j, other) in out.iter().enumerate() {
                match reps[0].equiv(&other[0], budget)? {
                    EquivResult::Distinguished(_) => {}
                    EquivResult::Equal => {
                        return Err(SemError::NotAPer { what: alloc::format!("classes {j} and {i} coincide") })
                    }
                    EquivResult::Unknown { .. } => {
                        return Err(SemError::Budget { what: alloc::format!("classes {j} and {i}") })
                    }
                }
            }
            out.push(reps);
        }
        Ok(RepPER { classes: out })
    }

    /// Like [`RepPER::new`], but members of a class are taken as equivalent
    /// without comparison. Used for classes built from valid classes by a
    /// congruence (`⊗`, guarded choice), where members may be infinite-state
    /// and a direct comparison could only be bounded.
    fn congruent(classes: Vec<Vec<Term>>, budget: ExplorationBudget) -> Result<RepPER, SemError> {
        let mut out: Vec<Vec<Rep>> = Vec::with_capacity(classes.len());
        for (i, class) in classes.into_iter().enumerate() {
            if class.is_empty() {
                return Err(SemError::NotAPer { what: alloc::format!("class {i} is empty") });
            }
            let reps = class.into_iter().map(|t| Rep::new(t, budget)).collect::<Result<Vec<_>, _>>()?;
            for (j, other) in out.iter().enumerate() {
                match reps[0].equiv(&other[0], budget)? {
                    EquivResult::Distinguished(_) => {}
                    EquivResult::Equal => {
                        return Err(SemError::NotAPer { what: alloc::format!("classes {j} and {i} coincide") })
                    }
                    EquivResult::Unknown { .. } => {
                        return Err(SemError::Budget { what: alloc::format!("classes {j} and {i}") })
                    }
                }
            }
            out.push(reps);
        }
        Ok(RepPER { classes: out })
    }

    /// Groups `terms` into `≈_f` classes, keeping first occurrences as
    /// representatives.
    pub fn partition(terms: Vec<Term>, budget: ExplorationBudget) -> Result<RepPER, SemError> {
        let mut out = RepPER::empty();
        for t in terms {
            out.insert(t, budget)?;
        }
        Ok(out)
    }

    /// Adds `t` to its class, or as a new class. Returns the class index.
    pub fn insert(&mut self, t: Term, budget: ExplorationBudget) -> Result<usize, SemError> {
        let r = Rep::new(t, budget)?;
        for (i, class) in self.classes.iter_mut().enumerate() {
            match r.equiv(&class[0], budget)? {
                EquivResult::Equal => {
                    if class.iter().all(|m| m.term != r.term) {
                        class.push(r);
                    }
                    return Ok(i);
                }
                EquivResult::Distinguished(_) => {}
                EquivResult::Unknown { .. } => {
                    return Err(SemError::Budget { what: alloc::format!("a new process against class {i}") })
                }
            }
        }
        self.classes.push(vec![r]);
        Ok(self.classes.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn rep(&self, i: usize) -> &Term {
        &self.classes[i][0].term
    }

    pub fn reps(&self) -> impl Iterator<Item = &Term> + '_ {
        self.classes.iter().map(|c| &c[0].term)
    }

    pub fn class(&self, i: usize) -> impl Iterator<Item = &Term> + '_ {
        self.classes[i].iter().map(|r| &r.term)
    }

    /// The class of `p`: a class listing `p` itself, else the one whose
    /// representative is `≈_f` to it.
    pub fn classify(&self, p: &Term, budget: ExplorationBudget) -> Result<Membership, StepError> {
        if let Some(i) = self.classes.iter().position(|c| c.iter().any(|m| m.term == *p)) {
            return Ok(Membership::Class(i));
        }
        let r = Rep::new(p.clone(), budget)?;
        let mut unknown = false;
        for (i, class) in self.classes.iter().enumerate() {
            match r.equiv(&class[0], budget)? {
                EquivResult::Equal => return Ok(Membership::Class(i)),
                EquivResult::Distinguished(_) => {}
                EquivResult::Unknown { .. } => unknown = true,
            }
        }
        Ok(if unknown { Membership::Unknown } else { Membership::No })
    }

    fn map(&self, f: impl Fn(&Term) -> Term, budget: ExplorationBudget) -> Result<RepPER, StepError> {
        let mut classes = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let mut c = Vec::with_capacity(class.len());
            for r in class {
                c.push(Rep::new(f(&r.term), budget)?);
            }
            classes.push(c);
        }
        Ok(RepPER { classes })
    }
}

/// A semantic type `(E, E*)`. `interface` is the set of names its
/// processes may use, or `None` when unbounded (types built with `!`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemType {
    pub pos: RepPER,
    pub neg: RepPER,
    pub interface: Option<BTreeSet<Name>>,
}

impl SemType {
    pub fn new(
        pos: Vec<Vec<Term>>,
        neg: Vec<Vec<Term>>,
        interface: Option<BTreeSet<Name>>,
        budget: ExplorationBudget,
    ) -> Result<SemType, SemError> {
        Ok(SemType { pos: RepPER::new(pos, budget)?, neg: RepPER::new(neg, budget)?, interface })
    }

    pub fn dual(&self) -> SemType {
        dual(self)
    }
}

pub fn dual(t: &SemType) -> SemType {
    SemType { pos: t.neg.clone(), neg: t.pos.clone(), interface: t.interface.clone() }
}

pub fn unit_type() -> SemType {
    let rep = Rep::new(Term::nil(), ExplorationBudget::states(1)).expect("0 has no transitions");
    let zero = || RepPER { classes: vec![vec![rep.clone()]] };
    SemType { pos: zero(), neg: zero(), interface: Some(BTreeSet::new()) }
}

fn coded(set: &Option<BTreeSet<Name>>, f: fn(Name) -> Name) -> Option<BTreeSet<Name>> {
    set.as_ref().map(|s| s.iter().map(|n| f(*n)).collect())
}

fn union(a: Option<BTreeSet<Name>>, b: Option<BTreeSet<Name>>) -> Option<BTreeSet<Name>> {
    let (mut a, b) = (a?, b?);
    a.extend(b);
    Some(a)
}

fn budget_err(what: &str, m: Membership) -> Result<(), SemError> {
    match m {
        Membership::Unknown => Err(SemError::Budget { what: String::from(what) }),
        _ => Ok(()),
    }
}

/// Whether `apply` sends every member of every class of `src` into one
/// class of `dst`, and if so the induced class map.
fn class_map(
    src: &RepPER,
    dst: &RepPER,
    apply: impl Fn(&Term) -> Term,
    budget: ExplorationBudget,
) -> Result<Result<Vec<usize>, MapFailure>, StepError> {
    let mut out = Vec::with_capacity(src.len());
    for (class, members) in src.classes.iter().enumerate() {
        let mut target = None;
        for (member, r) in members.iter().enumerate() {
            match dst.classify(&apply(&r.term), budget)? {
                Membership::Class(k) => match target {
                    None => target = Some(k),
                    Some(expected) if expected != k => {
                        return Ok(Err(MapFailure::Inconsistent { class, member, expected, found: k }))
                    }
                    Some(_) => {}
                },
                Membership::No => return Ok(Err(MapFailure::Outside { class, member })),
                Membership::Unknown => return Ok(Err(MapFailure::Unknown { class, member })),
            }
        }
        out.push(target.expect("classes are nonempty"));
    }
    Ok(Ok(out))
}

/// A tensor-negative candidate; canonical ones remember their halves.
struct Candidate {
    term: Term,
    halves: Option<(Term, Term)>,
}

/// Keeps the candidates `c` with `⟨Q|c⟩ ∈ right` for all `Q ∈ left_in` and
/// `⟨c|R⟩ ∈ left_out` for all `R ∈ right_in`, grouped into classes.
///
/// When the engine cannot decide the clause for a canonical `N ⊗ M` (some
/// side is infinite-state), it is settled by orthogonality instead:
/// `⟨Q|N ⊗ M⟩` is `M` next to the closed system `(Q|N)∖𝒩`, which is `≈_f M`
/// whenever that system converges, and symmetrically for `⟨N ⊗ M|R⟩`.
fn filter_bilinear(
    candidates: Vec<Candidate>,
    left_in: &RepPER,
    right: &RepPER,
    right_in: &RepPER,
    left_out: &RepPER,
    budget: ExplorationBudget,
) -> Result<RepPER, SemError> {
    let mut out = RepPER::empty();
    for Candidate { term: c, halves } in candidates {
        let fwd = class_map(left_in, right, |q| lapp(q.clone(), c.clone()), budget)?;
        let bwd = class_map(right_in, left_out, |r| rapp(c.clone(), r.clone()), budget)?;
        match (fwd, bwd) {
            (Ok(_), Ok(_)) => {
                out.insert(c, budget)?;
            }
            (Err(MapFailure::Unknown { .. }), _) | (_, Err(MapFailure::Unknown { .. })) => {
                let settled = match &halves {
                    Some((n, m)) => all_orthogonal(left_in, n, budget)? && all_orthogonal(right_in, m, budget)?,
                    None => false,
                };
                if !settled {
                    return Err(SemError::Budget { what: String::from("a candidate against the tensor clause") });
                }
                out.insert(c, budget)?;
            }
            _ => {}
        }
    }
    Ok(out)
}

fn all_orthogonal(per: &RepPER, n: &Term, budget: ExplorationBudget) -> Result<bool, StepError> {
    for class in &per.classes {
        for r in class {
            if perp(&r.term, n, budget)? != Tri::Yes {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn product_classes(a: &RepPER, b: &RepPER, mk: impl Fn(&Term, &Term) -> Term) -> Vec<Vec<Term>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ca in &a.classes {
        for cb in &b.classes {
            out.push(ca.iter().flat_map(|x| cb.iter().map(|y| mk(&x.term, &y.term))).collect());
        }
    }
    out
}

pub fn tensor_type(t: &SemType, u: &SemType, budget: ExplorationBudget) -> Result<SemType, SemError> {
    tensor_type_with(t, u, Vec::new(), budget)
}

/// `T ⊗ U`. Positives are the tensors of positives, class by class.
/// Negatives are the canonical `n ⊗ m` plus `candidates`, keeping those that
/// carry `T` positives to `U` negatives and `U` positives to `T` negatives.
pub fn tensor_type_with(
    t: &SemType,
    u: &SemType,
    candidates: Vec<Term>,
    budget: ExplorationBudget,
) -> Result<SemType, SemError> {
    let pos = RepPER::congruent(product_classes(&t.pos, &u.pos, |p, q| tensor(p.clone(), q.clone())), budget)?;
    let mut cands: Vec<Candidate> = t
        .neg
        .reps()
        .flat_map(|n| {
            u.neg.reps().map(|m| Candidate { term: tensor(n.clone(), m.clone()), halves: Some((n.clone(), m.clone())) })
        })
        .collect();
    cands.extend(candidates.into_iter().map(|term| Candidate { term, halves: None }));
    let neg = filter_bilinear(cands, &t.pos, &u.neg, &u.pos, &t.neg, budget)?;
    let interface = union(coded(&t.interface, Name::l_code), coded(&u.interface, Name::r_code));
    Ok(SemType { pos, neg, interface })
}

pub fn par_type(t: &SemType, u: &SemType, budget: ExplorationBudget) -> Result<SemType, SemError> {
    par_type_with(t, u, Vec::new(), budget)
}

pub fn par_type_with(
    t: &SemType,
    u: &SemType,
    candidates: Vec<Term>,
    budget: ExplorationBudget,
) -> Result<SemType, SemError> {
    Ok(dual(&tensor_type_with(&dual(t), &dual(u), candidates, budget)?))
}

/// `T ⊸ U = T⊥ ⅋ U`; `candidates` are tried as positive realizers.
pub fn lolli_type(t: &SemType, u: &SemType, candidates: Vec<Term>, budget: ExplorationBudget) -> Result<SemType, SemError> {
    par_type_with(&dual(t), u, candidates, budget)
}

fn guarded(name: Name, co: bool, p: &Term) -> Term {
    let l = if co { name.negative() } else { name.positive() };
    Term::prefix(Action::single(l), p.clone())
}

fn choice_names() -> BTreeSet<Name> {
    BTreeSet::from([Name::ALPHA, Name::BETA])
}

/// `T & U`: positives `α.P + β.Q`, negatives `ᾱ.N` and `β̄.M`.
pub fn with_type(t: &SemType, u: &SemType, budget: ExplorationBudget) -> Result<SemType, SemError> {
    let pos = RepPER::congruent(product_classes(&t.pos, &u.pos, |p, q| choice(p.clone(), q.clone())), budget)?;
    let mut neg = t.neg.map(|n| guarded(Name::ALPHA, true, n), budget)?;
    neg.classes.extend(u.neg.map(|m| guarded(Name::BETA, true, m), budget)?.classes);
    let interface = union(union(t.interface.clone(), u.interface.clone()), Some(choice_names()));
    Ok(SemType { pos, neg, interface })
}

pub fn plus_type(t: &SemType, u: &SemType, budget: ExplorationBudget) -> Result<SemType, SemError> {
    Ok(dual(&with_type(&dual(t), &dual(u), budget)?))
}

/// `!T`. Positives are `!P`, one per class of `T` (only the representative
/// is replicated: `!P` is infinite-state, so further members could only be
/// compared up to a bound). Negatives are generated in `fuel` rounds:
/// round 0 holds `ω.0` and `δ̄.N`; each round adds `γ̄.(N₁ ⊗ N₂)` for
/// earlier negatives that pass the contraction clause.
pub fn bang_type(t: &SemType, fuel: usize, budget: ExplorationBudget) -> Result<SemType, SemError> {
    let bangs: Vec<Vec<Term>> = t.pos.reps().map(|p| vec![crate::combinators::bang(p.clone())]).collect();
    let pos = RepPER::new(bangs, budget)?;
    let mut neg = RepPER::new(vec![vec![guarded(Name::OMEGA, false, &Term::nil())]], budget)?;
    for n in t.neg.reps() {
        neg.insert(guarded(Name::DELTA, true, n), budget)?;
    }
    for _ in 0..fuel {
        let stage: Vec<Term> = neg.reps().cloned().collect();
        let mut next = neg.clone();
        for a in &stage {
            for b in &stage {
                let cand = guarded(Name::GAMMA, true, &tensor(a.clone(), b.clone()));
                if contraction_clause(&cand, &pos, &neg, budget)? {
                    next.insert(cand, budget)?;
                }
            }
        }
        neg = next;
    }
    Ok(SemType { pos, neg, interface: None })
}

/// For `γ̄.Q`: `⟨!R|Q⟩` and `⟨Q|!R⟩` are negatives for every positive `!R`.
fn contraction_clause(cand: &Term, bangs: &RepPER, neg: &RepPER, budget: ExplorationBudget) -> Result<bool, SemError> {
    let Term::Prefix(_, q) = cand else { unreachable!("candidates are prefixed") };
    for r in bangs.reps() {
        for applied in [lapp(r.clone(), (**q).clone()), rapp((**q).clone(), r.clone())] {
            let m = neg.classify(&applied, budget)?;
            budget_err("the contraction clause", m)?;
            if m == Membership::No {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `∀x. A` over a finite value domain, given the instance `A[v/x]` for each
/// value. Positives are `Σ_v σ_v.P_v`, one class per choice of classes;
/// negatives are `σ̄_v.N` with `N` a negative of `A[v/x]`.
pub fn forall_v_type(family: &[(u32, SemType)], reg: &mut Registry, budget: ExplorationBudget) -> Result<SemType, SemError> {
    let mut sigmas = Vec::with_capacity(family.len());
    for (v, _) in family {
        sigmas.push(reg.value_name(Name::SIGMA, *v)?);
    }
    let mut combos: Vec<Vec<(Action, Term)>> = vec![Vec::new()];
    for ((_, ty), s) in family.iter().zip(&sigmas) {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                ty.pos.reps().map(move |p| {
                    let mut c = c.clone();
                    c.push((Action::single(s.positive()), p.clone()));
                    c
                })
            })
            .collect();
    }
    let pos = RepPER::new(combos.into_iter().map(|c| vec![Term::sum(c)]).collect(), budget)?;
    let mut neg = RepPER::empty();
    for ((_, ty), s) in family.iter().zip(&sigmas) {
        neg.classes.extend(ty.neg.map(|n| guarded(*s, true, n), budget)?.classes);
    }
    let mut interface = Some(sigmas.iter().copied().collect::<BTreeSet<Name>>());
    for (_, ty) in family {
        interface = union(interface, ty.interface.clone());
    }
    Ok(SemType { pos, neg, interface })
}

pub fn realizes_pos(p: &Term, t: &SemType, budget: ExplorationBudget) -> Result<Membership, StepError> {
    t.pos.classify(p, budget)
}

pub fn realizes_neg(p: &Term, t: &SemType, budget: ExplorationBudget) -> Result<Membership, StepError> {
    t.neg.classify(p, budget)
}

/// Outcome of a totality check; the indices name a positive and a negative
/// representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Totality {
    Total,
    NotTotal { pos: usize, neg: usize },
    Unknown { pos: usize, neg: usize },
}

/// Every positive representative is orthogonal to every negative one.
pub fn total(t: &SemType, budget: ExplorationBudget) -> Result<Totality, StepError> {
    let mut unknown = None;
    for (i, p) in t.pos.reps().enumerate() {
        for (j, n) in t.neg.reps().enumerate() {
            match perp(p, n, budget)? {
                Tri::Yes => {}
                Tri::No => return Ok(Totality::NotTotal { pos: i, neg: j }),
                Tri::Unknown => unknown = unknown.or(Some((i, j))),
            }
        }
    }
    Ok(match unknown {
        Some((pos, neg)) => Totality::Unknown { pos, neg },
        None => Totality::Total,
    })
}

pub fn inhabited(t: &SemType) -> bool {
    !t.pos.is_empty() && !t.neg.is_empty()
}

/// Atom types keyed like extraction's atom environment: `p` or `p_3`.
pub type TypeEnv = BTreeMap<String, SemType>;

/// The semantic type of a closed formula. `fuel` bounds `!` negatives.
pub fn interpret(
    f: &Formula,
    atoms: &TypeEnv,
    fuel: usize,
    reg: &mut Registry,
    budget: ExplorationBudget,
) -> Result<SemType, SemError> {
    let go = |g: &Formula, reg: &mut Registry| interpret(g, atoms, fuel, reg, budget);
    Ok(match f {
        Formula::Atom { name, arg, neg } => {
            let key = match arg {
                None => name.clone(),
                Some(Arg::Val(v)) => alloc::format!("{name}_{v}"),
                Some(Arg::Var(x)) => return Err(SemError::UnknownAtom(alloc::format!("{name}({x})"))),
            };
            let t = atoms.get(&key).ok_or(SemError::UnknownAtom(key))?;
            if *neg {
                dual(t)
            } else {
                t.clone()
            }
        }
        Formula::Tensor(a, b) => tensor_type(&go(a, reg)?, &go(b, reg)?, budget)?,
        Formula::Par(a, b) => par_type(&go(a, reg)?, &go(b, reg)?, budget)?,
        Formula::With(a, b) => with_type(&go(a, reg)?, &go(b, reg)?, budget)?,
        Formula::Plus(a, b) => plus_type(&go(a, reg)?, &go(b, reg)?, budget)?,
        Formula::Bang(a) => bang_type(&go(a, reg)?, fuel, budget)?,
        Formula::Quest(a) => dual(&bang_type(&dual(&go(a, reg)?), fuel, budget)?),
        Formula::Forall { var, domain, body } => {
            let mut family = Vec::with_capacity(domain.len());
            for v in domain {
                family.push((*v, go(&body.subst(var, *v), reg)?));
            }
            forall_v_type(&family, reg, budget)?
        }
        Formula::Exists { var, domain, body } => {
            let mut family = Vec::with_capacity(domain.len());
            for v in domain {
                family.push((*v, dual(&go(&body.subst(var, *v), reg)?)));
            }
            dual(&forall_v_type(&family, reg, budget)?)
        }
    })
}

/// `r ∘ r ∘ … ∘ r`, `j` times.
pub(crate) fn rpow(j: usize) -> Renaming {
    (0..j).fold(Renaming::Identity, |acc, _| Renaming::compose(Renaming::rcode(), acc))
}

#[cfg(test)]
mod tests;
