//! The labelled transition relation and LTS exploration.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::names::{Action, NameError, Restriction};
use crate::syntax::Term;

/// How many nested `rec` unfoldings a single step may perform before the
/// recursion is declared unguarded.
const UNFOLD_LIMIT: usize = 256;

/// Largest number of joint moves a single parallel composition may enumerate.
/// Simultaneous actions make the count multiplicative in the number of
/// components, so wide replicated terms hit this quickly.
pub const MAX_BRANCHING: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepError {
    Unguarded(String),
    FreeVariable(String),
    /// Value-passing prefixes must be expanded first.
    ValuePassing,
    Renaming(NameError),
    /// A parallel composition has more joint moves than [`MAX_BRANCHING`].
    Branching,
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepError::Unguarded(x) => write!(f, "unguarded recursion on {x}"),
            StepError::FreeVariable(x) => write!(f, "free process variable {x}"),
            StepError::ValuePassing => write!(f, "value-passing prefix must be expanded before execution"),
            StepError::Renaming(e) => write!(f, "{e}"),
            StepError::Branching => write!(f, "more than {MAX_BRANCHING} joint moves in one step"),
        }
    }
}

impl core::error::Error for StepError {}

pub type Transitions = Vec<(Action, Arc<Term>)>;

/// All one-step transitions of a closed term, sorted and without duplicates.
pub fn step(t: &Term) -> Result<Vec<(Action, Term)>, StepError> {
    Ok(step_arc(&Arc::new(t.clone()))?
        .into_iter()
        .map(|(a, p)| (a, (*p).clone()))
        .collect())
}

/// [`step`] on shared terms; successors share structure with `t`.
pub fn step_arc(t: &Arc<Term>) -> Result<Transitions, StepError> {
    let mut out = step_in(t, 0)?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn step_in(t: &Arc<Term>, unfold: usize) -> Result<Transitions, StepError> {
    match &**t {
        Term::Prefix(a, p) => Ok(vec![(a.clone(), p.clone())]),
        Term::Sum(bs) => Ok(bs.clone()),
        Term::Par(p, q) => {
            let ps = moves(p, unfold)?;
            let qs = moves(q, unfold)?;
            if ps.len().saturating_mul(qs.len()) > MAX_BRANCHING {
                return Err(StepError::Branching);
            }
            let mut out = Vec::new();
            for (d, p2) in &ps {
                out.push((d.clone(), Arc::new(Term::Par(p2.clone(), q.clone()))));
            }
            for (e, q2) in &qs {
                out.push((e.clone(), Arc::new(Term::Par(p.clone(), q2.clone()))));
            }
            for (d, p2) in &ps {
                for (e, q2) in &qs {
                    for a in sync_actions(d, e) {
                        out.push((a, Arc::new(Term::Par(p2.clone(), q2.clone()))));
                    }
                }
            }
            Ok(out)
        }
        Term::Restrict(p, l) => {
            let inner = match &**p {
                Term::Par(a, b) => step_restricted_par(a, b, l, unfold)?,
                _ => step_in(p, unfold)?.into_iter().filter(|(a, _)| !l.blocks(a)).collect(),
            };
            Ok(inner.into_iter().map(|(a, p2)| (a, Arc::new(Term::Restrict(p2, l.clone())))).collect())
        }
        Term::Rename(p, f) => step_in(p, unfold)?
            .into_iter()
            .map(|(a, p2)| {
                let fa = f.apply_action(&a).map_err(StepError::Renaming)?;
                Ok((fa, Arc::new(Term::Rename(p2, f.clone()))))
            })
            .collect(),
        Term::Rec(x, body) => {
            if unfold >= UNFOLD_LIMIT {
                return Err(StepError::Unguarded(x.clone()));
            }
            step_in(&body.subst(x, t), unfold + 1)
        }
        Term::Var(x) => Err(StepError::FreeVariable(x.clone())),
        Term::Input(..) | Term::Output(..) => Err(StepError::ValuePassing),
    }
}

fn moves(t: &Arc<Term>, unfold: usize) -> Result<Transitions, StepError> {
    let mut out = step_in(t, unfold)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// The moves of `(P|Q) \ L` without enumerating every joint move of `P|Q`.
/// A joint move survives only if each side's restricted labels are cancelled
/// by the other, so the two restricted parts must be complements; joint moves
/// are only formed between sides whose restricted parts match.
fn step_restricted_par(p: &Arc<Term>, q: &Arc<Term>, l: &Restriction, unfold: usize) -> Result<Transitions, StepError> {
    let ps = moves(p, unfold)?;
    let qs = moves(q, unfold)?;
    let restricted = |a: &Action| Action::new(a.labels().iter().copied().filter(|x| l.contains(x.name)));
    let mut by_key: BTreeMap<Action, Vec<usize>> = BTreeMap::new();
    for (i, (e, _)) in qs.iter().enumerate() {
        by_key.entry(restricted(e).bar()).or_default().push(i);
    }
    let mut out = Vec::new();
    for (d, p2) in &ps {
        if !l.blocks(d) {
            out.push((d.clone(), Arc::new(Term::Par(p2.clone(), q.clone()))));
        }
    }
    for (e, q2) in &qs {
        if !l.blocks(e) {
            out.push((e.clone(), Arc::new(Term::Par(p.clone(), q2.clone()))));
        }
    }
    let mut pairs = 0usize;
    for (d, p2) in &ps {
        let Some(partners) = by_key.get(&restricted(d)) else { continue };
        pairs += partners.len();
        if pairs > MAX_BRANCHING {
            return Err(StepError::Branching);
        }
        for &j in partners {
            let (e, q2) = &qs[j];
            for a in sync_actions(d, e) {
                if !l.blocks(&a) {
                    out.push((a, Arc::new(Term::Par(p2.clone(), q2.clone()))));
                }
            }
        }
    }
    Ok(out)
}

/// Actions of joint moves `P -d-> P2`, `Q -e-> Q2`: for each `b ⊆ {λ ∈ d | λ̄ ∈ e}`,
/// the action `(d∖b) ∪ (e∖b̄)` when the two remainders are disjoint.
pub fn sync_actions(d: &Action, e: &Action) -> Vec<Action> {
    let candidates: Vec<_> = d.labels().iter().copied().filter(|l| e.contains(l.bar())).collect();
    assert!(candidates.len() < 32, "action too large for subset enumeration");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << candidates.len()) {
        let b = Action::new(
            candidates.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| *l),
        );
        let left = d.difference(&b);
        let right = e.difference(&b.bar());
        if left.is_disjoint(&right) {
            out.push(left.union(&right));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplorationBudget {
    pub max_states: usize,
    /// Stop expanding states at this BFS depth.
    pub max_depth: Option<usize>,
}

impl ExplorationBudget {
    pub fn states(max_states: usize) -> ExplorationBudget {
        assert!(max_states >= 1);
        ExplorationBudget { max_states, max_depth: None }
    }
}

impl Default for ExplorationBudget {
    fn default() -> Self {
        ExplorationBudget::states(5000)
    }
}

/// An explored transition system. State 0 is the initial state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lts {
    pub states: Vec<Arc<Term>>,
    /// Outgoing transitions per state, sorted.
    pub succ: Vec<Vec<(Action, usize)>>,
    /// Whether each state's transitions were computed.
    pub expanded: Vec<bool>,
}

impl Lts {
    pub fn initial(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.expanded.iter().all(|e| *e)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Action, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |(a, d)| (s, a, *d)))
    }

    pub fn transition_count(&self) -> usize {
        self.succ.iter().map(|v| v.len()).sum()
    }
}

/// How an exploration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Complete,
    /// The depth bound left some reachable states unexpanded.
    DepthBounded,
    /// More states were reachable than the budget allows.
    StatesExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration {
    pub lts: Lts,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LtsError {
    Step(StepError),
    NotFiniteState { explored: usize },
}

impl fmt::Display for LtsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LtsError::Step(e) => write!(f, "{e}"),
            LtsError::NotFiniteState { explored } => {
                write!(f, "state budget exhausted after {explored} states")
            }
        }
    }
}

impl core::error::Error for LtsError {}

impl From<StepError> for LtsError {
    fn from(e: StepError) -> Self {
        LtsError::Step(e)
    }
}

/// Breadth-first exploration that keeps whatever it found when a bound is hit.
/// `keep` filters which transitions are followed.
pub fn explore_with(
    t: &Term,
    budget: ExplorationBudget,
    keep: impl Fn(&Action) -> bool,
) -> Result<Exploration, StepError> {
    let root = Arc::new(t.clone());
    let mut index: BTreeMap<Arc<Term>, usize> = BTreeMap::new();
    index.insert(root.clone(), 0);
    let mut lts = Lts { states: vec![root], succ: vec![Vec::new()], expanded: vec![false] };
    let mut depth = vec![0usize];
    let mut queue = VecDeque::from([0usize]);
    let mut outcome = Outcome::Complete;
    while let Some(s) = queue.pop_front() {
        if budget.max_depth.is_some_and(|d| depth[s] >= d) {
            outcome = Outcome::DepthBounded;
            continue;
        }
        let mut out = Vec::new();
        let moves = match step_arc(&lts.states[s]) {
            Err(StepError::Branching) => return Ok(Exploration { lts, outcome: Outcome::StatesExceeded }),
            r => r?,
        };
        for (a, p) in moves {
            if !keep(&a) {
                continue;
            }
            let d = match index.get(&p) {
                Some(d) => *d,
                None => {
                    if lts.states.len() >= budget.max_states {
                        return Ok(Exploration { lts, outcome: Outcome::StatesExceeded });
                    }
                    let d = lts.states.len();
                    index.insert(p.clone(), d);
                    lts.states.push(p);
                    lts.succ.push(Vec::new());
                    lts.expanded.push(false);
                    depth.push(depth[s] + 1);
                    queue.push_back(d);
                    d
                }
            };
            out.push((a, d));
        }
        lts.succ[s] = out;
        lts.expanded[s] = true;
    }
    Ok(Exploration { lts, outcome })
}

pub fn explore(t: &Term, budget: ExplorationBudget) -> Result<Exploration, StepError> {
    explore_with(t, budget, |_| true)
}

/// The full reachable LTS, or `NotFiniteState` when the state budget runs out.
pub fn build_lts(t: &Term, budget: ExplorationBudget) -> Result<Lts, LtsError> {
    let ex = explore(t, budget)?;
    match ex.outcome {
        Outcome::StatesExceeded => Err(LtsError::NotFiniteState { explored: ex.lts.len() }),
        _ => Ok(ex.lts),
    }
}

/// Three-valued answers for questions that may exhaust the budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn negate(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

/// Whether `t` can perform an infinite sequence of τ steps.
pub fn diverges(t: &Term, budget: ExplorationBudget) -> Result<Tri, StepError> {
    let ex = explore_with(t, ExplorationBudget { max_depth: None, ..budget }, Action::is_tau)?;
    if has_cycle(&ex.lts) {
        return Ok(Tri::Yes);
    }
    Ok(match ex.outcome {
        Outcome::Complete => Tri::No,
        _ => Tri::Unknown,
    })
}

/// Cycle detection over the explored part, by iterative DFS colouring.
fn has_cycle(lts: &Lts) -> bool {
    let n = lts.len();
    let mut colour = vec![0u8; n];
    for root in 0..n {
        if colour[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        colour[root] = 1;
        while let Some(&mut (s, ref mut i)) = stack.last_mut() {
            if let Some((_, d)) = lts.succ[s].get(*i) {
                *i += 1;
                match colour[*d] {
                    0 => {
                        colour[*d] = 1;
                        stack.push((*d, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                colour[s] = 2;
                stack.pop();
            }
        }
    }
    false
}
