//! Failures semantics, failures equivalence, weak bisimulation, and orthogonality.
//!
//! A failure `(s, X)` holds when some state reached by the weak trace `s`
//! cannot weakly perform any action of `X`. For each trace we keep the
//! minimal sets of weakly enabled actions; `X` is refusable after `s` iff it
//! misses one of them.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::names::{Action, Restriction};
use crate::semantics::{diverges, explore, step_arc, ExplorationBudget, Lts, Outcome, StepError, Transitions, Tri};
use crate::syntax::Term;

/// Set of weakly enabled actions.
pub type Acceptance = BTreeSet<Action>;

/// Trace depth used by the bounded fallback when the budget has no depth.
pub const DEFAULT_BOUNDED_DEPTH: usize = 6;

/// Failures up to some trace depth: every trace maps to its antichain of
/// minimal acceptance sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FailureSet {
    pub traces: BTreeMap<Vec<Action>, Vec<Acceptance>>,
}

impl FailureSet {
    /// Whether `(trace, refusal)` is a failure.
    pub fn refuses(&self, trace: &[Action], refusal: &BTreeSet<Action>) -> bool {
        self.traces
            .get(trace)
            .is_some_and(|fam| fam.iter().any(|a| a.is_disjoint(refusal)))
    }

    /// A failure of `self` that `other` lacks.
    pub fn difference_witness(&self, other: &FailureSet) -> Option<(Vec<Action>, BTreeSet<Action>)> {
        for (trace, fam) in &self.traces {
            match other.traces.get(trace) {
                None => return Some((trace.clone(), BTreeSet::new())),
                Some(ofam) => {
                    if let Some(x) = refusal_only_in(fam, ofam) {
                        return Some((trace.clone(), x));
                    }
                }
            }
        }
        None
    }
}

/// Keeps the `⊆`-minimal sets, sorted.
pub fn minimize(mut sets: Vec<Acceptance>) -> Vec<Acceptance> {
    sets.sort();
    sets.dedup();
    let keep: Vec<bool> = sets
        .iter()
        .map(|a| !sets.iter().any(|b| b != a && b.is_subset(a)))
        .collect();
    sets.into_iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| s).collect()
}

/// A refusal allowed by family `fam` but not by `other`: for an `A ∈ fam`
/// with no `B ⊆ A` in `other`, every `B` has a label outside `A`, so the
/// actions of `other` outside `A` are refused by `fam` and not by `other`.
fn refusal_only_in(fam: &[Acceptance], other: &[Acceptance]) -> Option<BTreeSet<Action>> {
    let a = fam.iter().find(|a| !other.iter().any(|b| b.is_subset(a)))?;
    Some(other.iter().flatten().filter(|x| !a.contains(*x)).cloned().collect())
}

/// Trace nodes [`failures_bounded`] may enumerate per unit of state budget.
const TRACES_PER_STATE: usize = 16;

/// Independent brute-force computation of the failures up to depth `k`,
/// working directly on terms. Gives `None` when more than `max_states`
/// distinct terms, or `16 · max_states` traces, are touched.
pub fn failures_bounded(t: &Term, k: usize, max_states: usize) -> Result<Option<FailureSet>, StepError> {
    let mut ctx = Brute::new(max_states);
    let root = Arc::new(t.clone());
    let Some(start) = ctx.closure(&[root])? else { return Ok(None) };
    let mut out = FailureSet::default();
    let mut layer: Vec<(Vec<Action>, Vec<Arc<Term>>)> = vec![(Vec::new(), start)];
    let mut traces = 0usize;
    for depth in 0..=k {
        let mut next = Vec::new();
        for (trace, states) in layer {
            traces += 1;
            if traces > max_states.saturating_mul(TRACES_PER_STATE) {
                return Ok(None);
            }
            let mut fam = Vec::new();
            for s in &states {
                let Some(w) = ctx.weak_initials(s)? else { return Ok(None) };
                fam.push(w);
            }
            if depth < k {
                let mut by_action: BTreeMap<Action, Vec<Arc<Term>>> = BTreeMap::new();
                for s in &states {
                    for (a, p) in ctx.succ(s)?.unwrap_or_default() {
                        if !a.is_tau() {
                            by_action.entry(a).or_default().push(p);
                        }
                    }
                }
                for (a, targets) in by_action {
                    let Some(closed) = ctx.closure(&targets)? else { return Ok(None) };
                    let mut tr = trace.clone();
                    tr.push(a);
                    next.push((tr, closed));
                }
            }
            out.traces.insert(trace, minimize(fam));
        }
        layer = next;
    }
    Ok(Some(out))
}

struct Brute {
    cache: BTreeMap<Arc<Term>, Vec<(Action, Arc<Term>)>>,
    max_states: usize,
    transitions: usize,
}

/// Cached transitions allowed per cached state, on average. Bounds memory
/// when individual states have thousands of joint moves.
const TRANSITIONS_PER_STATE: usize = 64;

impl Brute {
    fn new(max_states: usize) -> Brute {
        Brute { cache: BTreeMap::new(), max_states, transitions: 0 }
    }

    fn succ(&mut self, t: &Arc<Term>) -> Result<Option<Transitions>, StepError> {
        if let Some(v) = self.cache.get(t) {
            return Ok(Some(v.clone()));
        }
        if self.cache.len() >= self.max_states {
            return Ok(None);
        }
        let v = match step_arc(t) {
            Err(StepError::Branching) => return Ok(None),
            r => r?,
        };
        self.transitions += v.len();
        if self.transitions > self.max_states.saturating_mul(TRANSITIONS_PER_STATE) {
            return Ok(None);
        }
        self.cache.insert(t.clone(), v.clone());
        Ok(Some(v))
    }

    /// All terms reachable from `from` by τ steps, sorted.
    fn closure(&mut self, from: &[Arc<Term>]) -> Result<Option<Vec<Arc<Term>>>, StepError> {
        let mut seen: BTreeSet<Arc<Term>> = from.iter().cloned().collect();
        let mut stack: Vec<Arc<Term>> = from.to_vec();
        while let Some(t) = stack.pop() {
            let Some(succ) = self.succ(&t)? else { return Ok(None) };
            for (a, p) in succ {
                if a.is_tau() && seen.insert(p.clone()) {
                    stack.push(p);
                }
            }
        }
        Ok(Some(seen.into_iter().collect()))
    }

    /// The minimal acceptances of a τ-closed set.
    fn acceptances(&mut self, states: &[Arc<Term>]) -> Result<Option<Vec<Acceptance>>, StepError> {
        let mut fam = Vec::new();
        for s in states {
            let Some(w) = self.weak_initials(s)? else { return Ok(None) };
            fam.push(w);
        }
        Ok(Some(minimize(fam)))
    }

    /// The τ-closed successor set of `states` under each visible action.
    #[allow(clippy::type_complexity)]
    fn after(&mut self, states: &[Arc<Term>]) -> Result<Option<BTreeMap<Action, Vec<Arc<Term>>>>, StepError> {
        let mut by_action: BTreeMap<Action, Vec<Arc<Term>>> = BTreeMap::new();
        for s in states {
            let Some(succ) = self.succ(s)? else { return Ok(None) };
            for (a, p) in succ {
                if !a.is_tau() {
                    by_action.entry(a).or_default().push(p);
                }
            }
        }
        let mut out = BTreeMap::new();
        for (a, targets) in by_action {
            let Some(closed) = self.closure(&targets)? else { return Ok(None) };
            out.insert(a, closed);
        }
        Ok(Some(out))
    }

    fn weak_initials(&mut self, t: &Arc<Term>) -> Result<Option<Acceptance>, StepError> {
        let Some(states) = self.closure(core::slice::from_ref(t))? else { return Ok(None) };
        let mut acc = BTreeSet::new();
        for s in states {
            let Some(succ) = self.succ(&s)? else { return Ok(None) };
            acc.extend(succ.into_iter().map(|(a, _)| a).filter(|a| !a.is_tau()));
        }
        Ok(Some(acc))
    }
}

/// τ-closure of every state of a complete LTS.
fn tau_closures(succ: &[Vec<(Action, usize)>]) -> Vec<Vec<usize>> {
    (0..succ.len())
        .map(|s| {
            let mut seen = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for (a, d) in &succ[x] {
                    if a.is_tau() && seen.insert(*d) {
                        stack.push(*d);
                    }
                }
            }
            seen.into_iter().collect()
        })
        .collect()
}

/// The deterministic failures normal form of a finite LTS.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// The τ-closed LTS states each node stands for.
    pub nodes: Vec<Vec<usize>>,
    pub acceptances: Vec<Vec<Acceptance>>,
    /// At most one successor per action.
    pub succ: Vec<BTreeMap<Action, usize>>,
}

impl NormalForm {
    /// Subset construction; `None` if more than `max_nodes` nodes arise.
    pub fn build(lts: &Lts, max_nodes: usize) -> Option<NormalForm> {
        assert!(lts.is_complete(), "normal form needs a complete LTS");
        let closures = tau_closures(&lts.succ);
        let weak: Vec<Acceptance> = closures
            .iter()
            .map(|c| {
                c.iter()
                    .flat_map(|q| lts.succ[*q].iter().map(|(a, _)| a))
                    .filter(|a| !a.is_tau())
                    .cloned()
                    .collect()
            })
            .collect();
        let mut nf = NormalForm { nodes: Vec::new(), acceptances: Vec::new(), succ: Vec::new() };
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let start = closures[lts.initial()].clone();
        index.insert(start.clone(), 0);
        nf.push(start, &weak);
        let mut queue = VecDeque::from([0usize]);
        while let Some(n) = queue.pop_front() {
            let mut by_action: BTreeMap<&Action, BTreeSet<usize>> = BTreeMap::new();
            for q in &nf.nodes[n] {
                for (a, d) in &lts.succ[*q] {
                    if !a.is_tau() {
                        by_action.entry(a).or_default().extend(closures[*d].iter().copied());
                    }
                }
            }
            for (a, target) in by_action {
                let target: Vec<usize> = target.into_iter().collect();
                let id = match index.get(&target) {
                    Some(id) => *id,
                    None => {
                        if nf.nodes.len() >= max_nodes {
                            return None;
                        }
                        let id = nf.nodes.len();
                        index.insert(target.clone(), id);
                        nf.push(target, &weak);
                        queue.push_back(id);
                        id
                    }
                };
                nf.succ[n].insert(a.clone(), id);
            }
        }
        Some(nf)
    }

    fn push(&mut self, states: Vec<usize>, weak: &[Acceptance]) {
        self.acceptances.push(minimize(states.iter().map(|q| weak[*q].clone()).collect()));
        self.nodes.push(states);
        self.succ.push(BTreeMap::new());
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The failures up to trace length `k`.
    pub fn failures(&self, k: usize) -> FailureSet {
        let mut out = FailureSet::default();
        let mut layer = vec![(Vec::new(), 0usize)];
        for depth in 0..=k {
            let mut next = Vec::new();
            for (trace, n) in layer {
                if depth < k {
                    for (a, d) in &self.succ[n] {
                        let mut tr: Vec<Action> = trace.clone();
                        tr.push(a.clone());
                        next.push((tr, *d));
                    }
                }
                out.traces.insert(trace, self.acceptances[n].clone());
            }
            layer = next;
        }
        out
    }
}

/// Which side of a comparison has the distinguishing failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A failure `(trace, refusal)` of one process that the other lacks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub trace: Vec<Action>,
    pub refusal: BTreeSet<Action>,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivResult {
    Equal,
    Distinguished(Witness),
    /// Budget exhausted before a verdict. `agreed` is the longest trace
    /// length up to which the failures were compared in full and agree, if
    /// any.
    Unknown { agreed: Option<usize> },
}

impl EquivResult {
    pub fn is_equal(&self) -> bool {
        matches!(self, EquivResult::Equal)
    }

    pub fn is_distinguished(&self) -> bool {
        matches!(self, EquivResult::Distinguished(_))
    }
}

/// Complete LTS within budget, or `None`.
fn complete_lts(t: &Term, budget: ExplorationBudget) -> Result<Option<Lts>, StepError> {
    let ex = explore(t, ExplorationBudget { max_depth: None, ..budget })?;
    Ok((ex.outcome == Outcome::Complete).then_some(ex.lts))
}

/// The failures normal form of `t`, if it is finite-state within budget.
pub fn normal_form(t: &Term, budget: ExplorationBudget) -> Result<Option<NormalForm>, StepError> {
    Ok(complete_lts(t, budget)?.and_then(|lts| NormalForm::build(&lts, budget.max_states)))
}

/// Decides `P ≈_f Q` exactly when both sides are finite-state within budget,
/// and otherwise compares failures up to the budget's depth.
pub fn failures_equiv(p: &Term, q: &Term, budget: ExplorationBudget) -> Result<EquivResult, StepError> {
    if let (Some(lp), Some(lq)) = (complete_lts(p, budget)?, complete_lts(q, budget)?) {
        if let (Some(np), Some(nq)) =
            (NormalForm::build(&lp, budget.max_states), NormalForm::build(&lq, budget.max_states))
        {
            return Ok(compare_normal_forms(&np, &nq));
        }
    }
    bounded_equiv(p, q, budget)
}

/// Bounded comparison only: a difference is definitive, agreement is `Unknown`.
///
/// Walks the product of the two lazily determinized processes up to the
/// budget's depth. Nodes are τ-closed sets of terms, so equal subsets are
/// visited once; at most `max_states` pairs are visited.
pub fn bounded_equiv(p: &Term, q: &Term, budget: ExplorationBudget) -> Result<EquivResult, StepError> {
    let k = budget.max_depth.unwrap_or(DEFAULT_BOUNDED_DEPTH);
    let mut ctx = Brute::new(budget.max_states);
    let unknown = EquivResult::Unknown { agreed: None };
    let Some(sp) = ctx.closure(&[Arc::new(p.clone())])? else { return Ok(unknown) };
    let Some(sq) = ctx.closure(&[Arc::new(q.clone())])? else { return Ok(unknown) };
    // Exclusive bound on trace lengths whose failures were fully compared.
    let mut complete = k + 1;
    let mut seen = BTreeSet::from([(sp.clone(), sq.clone())]);
    let mut queue = VecDeque::from([(sp, sq, Vec::<Action>::new())]);
    while let Some((a, b, trace)) = queue.pop_front() {
        // A pair that cannot be expanded within budget is skipped; a
        // difference elsewhere is still definitive.
        let (Some(fa), Some(fb)) = (ctx.acceptances(&a)?, ctx.acceptances(&b)?) else {
            complete = complete.min(trace.len());
            continue;
        };
        if let Some(refusal) = refusal_only_in(&fa, &fb) {
            return Ok(EquivResult::Distinguished(Witness { trace, refusal, side: Side::Left }));
        }
        if let Some(refusal) = refusal_only_in(&fb, &fa) {
            return Ok(EquivResult::Distinguished(Witness { trace, refusal, side: Side::Right }));
        }
        if trace.len() >= k {
            continue;
        }
        let (Some(na), Some(nb)) = (ctx.after(&a)?, ctx.after(&b)?) else {
            complete = complete.min(trace.len() + 1);
            continue;
        };
        for (act, da) in &na {
            let mut tr = trace.clone();
            tr.push(act.clone());
            match nb.get(act) {
                Some(db) => {
                    let pair = (da.clone(), db.clone());
                    if seen.contains(&pair) {
                        continue;
                    }
                    // Breadth-first, so every pair already queued is still
                    // compared; only traces through the dropped pair are lost.
                    if seen.len() >= budget.max_states {
                        complete = complete.min(tr.len());
                        continue;
                    }
                    seen.insert(pair);
                    queue.push_back((da.clone(), db.clone(), tr));
                }
                None => {
                    return Ok(EquivResult::Distinguished(Witness { trace: tr, refusal: BTreeSet::new(), side: Side::Left }))
                }
            }
        }
        if let Some(act) = nb.keys().find(|act| !na.contains_key(*act)) {
            let mut tr = trace;
            tr.push(act.clone());
            return Ok(EquivResult::Distinguished(Witness { trace: tr, refusal: BTreeSet::new(), side: Side::Right }));
        }
    }
    Ok(EquivResult::Unknown { agreed: complete.checked_sub(1) })
}

/// Exact comparison of two normal forms by a synchronous product walk.
pub fn compare_normal_forms(np: &NormalForm, nq: &NormalForm) -> EquivResult {
    let mut seen = BTreeSet::from([(0usize, 0usize)]);
    let mut queue = VecDeque::from([((0usize, 0usize), Vec::<Action>::new())]);
    while let Some(((a, b), trace)) = queue.pop_front() {
        let (fa, fb) = (&np.acceptances[a], &nq.acceptances[b]);
        if let Some(refusal) = refusal_only_in(fa, fb) {
            return EquivResult::Distinguished(Witness { trace, refusal, side: Side::Left });
        }
        if let Some(refusal) = refusal_only_in(fb, fa) {
            return EquivResult::Distinguished(Witness { trace, refusal, side: Side::Right });
        }
        for (act, da) in &np.succ[a] {
            let mut tr = trace.clone();
            tr.push(act.clone());
            match nq.succ[b].get(act) {
                Some(db) => {
                    if seen.insert((*da, *db)) {
                        queue.push_back(((*da, *db), tr));
                    }
                }
                None => {
                    return EquivResult::Distinguished(Witness { trace: tr, refusal: BTreeSet::new(), side: Side::Left })
                }
            }
        }
        for act in nq.succ[b].keys() {
            if !np.succ[a].contains_key(act) {
                let mut tr = trace.clone();
                tr.push(act.clone());
                return EquivResult::Distinguished(Witness { trace: tr, refusal: BTreeSet::new(), side: Side::Right });
            }
        }
    }
    EquivResult::Equal
}

/// Weak bisimilarity, decided by partition refinement over the saturated
/// disjoint union of both LTSs. `Unknown` when either side is not finite
/// within budget.
pub fn weak_bisim(p: &Term, q: &Term, budget: ExplorationBudget) -> Result<Tri, StepError> {
    let (Some(lp), Some(lq)) = (complete_lts(p, budget)?, complete_lts(q, budget)?) else {
        return Ok(Tri::Unknown);
    };
    let offset = lp.len();
    let n = offset + lq.len();
    let mut succ: Vec<Vec<(Action, usize)>> = Vec::with_capacity(n);
    succ.extend(lp.succ.iter().cloned());
    succ.extend(lq.succ.iter().map(|ts| ts.iter().map(|(a, d)| (a.clone(), d + offset)).collect()));
    let union = Lts { states: Vec::new(), succ, expanded: vec![true; n] };
    let closures = tau_closures(&union.succ);
    // Saturated moves: s ⇒τ t for t ∈ τ*(s), and s ⇒a t via τ* a τ*.
    let weak: Vec<Vec<(Action, usize)>> = (0..n)
        .map(|s| {
            let mut moves = BTreeSet::new();
            for t in &closures[s] {
                moves.insert((Action::tau(), *t));
                for (a, d) in &union.succ[*t] {
                    if !a.is_tau() {
                        for e in &closures[*d] {
                            moves.insert((a.clone(), *e));
                        }
                    }
                }
            }
            moves.into_iter().collect()
        })
        .collect();
    let mut block = vec![0usize; n];
    let mut count = 1;
    loop {
        // A state's signature: its block and the blocks its weak moves reach.
        type Signature = (usize, BTreeSet<(Action, usize)>);
        let sigs: Vec<Signature> = (0..n)
            .map(|s| (block[s], weak[s].iter().map(|(a, t)| (a.clone(), block[*t])).collect()))
            .collect();
        let mut ids: BTreeMap<&Signature, usize> = BTreeMap::new();
        let mut next = vec![0usize; n];
        for s in 0..n {
            let fresh = ids.len();
            next[s] = *ids.entry(&sigs[s]).or_insert(fresh);
        }
        let new_count = ids.len();
        block = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    Ok(if block[0] == block[offset] { Tri::Yes } else { Tri::No })
}

/// `P ⊥ Q`: the closed system `(P|Q) \ all` does not diverge.
pub fn perp(p: &Term, q: &Term, budget: ExplorationBudget) -> Result<Tri, StepError> {
    let closed = Term::restrict(Term::par(p.clone(), q.clone()), Restriction::All);
    Ok(diverges(&closed, budget)?.negate())
}
