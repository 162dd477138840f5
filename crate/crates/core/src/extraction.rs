//! Process realizers for sequent proofs.
//!
//! A sequent of `k` formulas is realized by a process whose names are split
//! into `k` ports by residue: port `i` owns the names `k·x + i`. Cut focuses
//! the cut formula of each premise onto one half of the binary split, composes
//! with [`seq`], and spreads the survivors back over a fresh layout.
//!
//! Rules that emit a fixed signal before handing a formula over (`⊕`, `∃`,
//! dereliction, contraction) are realized by cutting against a small gate
//! process, so the rest of the sequent is never held up by the signal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::combinators::{bang, fresh_var, seq, try_identity_wire, CombinatorError, DEFAULT_WIRE_CAP};
use crate::equivalence::{failures_equiv, perp, EquivResult};
use crate::logic::{check_proof, eta_expand, Arg, Formula, Proof, ProofError};
use crate::names::{Action, Label, Name, NameError, Registry, Renaming};
use crate::semantics::{ExplorationBudget, StepError, Tri};
use crate::semtypes::{interpret, SemError, SemType, TypeEnv};
use crate::syntax::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractError {
    Invalid(ProofError),
    /// An axiom on an atom whose argument is still a variable.
    OpenAtom(String),
    Wire(CombinatorError),
    Name(NameError),
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::Invalid(e) => write!(f, "invalid proof: {e}"),
            ExtractError::OpenAtom(a) => write!(f, "axiom on atom {a} with a free value variable"),
            ExtractError::Wire(e) => write!(f, "{e}"),
            ExtractError::Name(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ExtractError {}

impl From<ProofError> for ExtractError {
    fn from(e: ProofError) -> Self {
        ExtractError::Invalid(e)
    }
}

impl From<NameError> for ExtractError {
    fn from(e: NameError) -> Self {
        ExtractError::Name(e)
    }
}

impl From<CombinatorError> for ExtractError {
    fn from(e: CombinatorError) -> Self {
        ExtractError::Wire(e)
    }
}

/// Interface alphabets of atoms. Undeclared atoms get one name of their own.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomEnv {
    pub alphabets: BTreeMap<String, BTreeSet<Name>>,
    pub wire_cap: Option<usize>,
}

impl AtomEnv {
    pub fn new() -> AtomEnv {
        AtomEnv::default()
    }

    pub fn declare(&mut self, atom: &str, names: BTreeSet<Name>) {
        self.alphabets.insert(atom.into(), names);
    }

    /// Key of an atom occurrence: `p` or `p_3` for `p(3)`.
    pub fn key(name: &str, arg: &Option<Arg>) -> Result<String, ExtractError> {
        match arg {
            None => Ok(name.into()),
            Some(Arg::Val(v)) => Ok(format!("{name}_{v}")),
            Some(Arg::Var(x)) => Err(ExtractError::OpenAtom(format!("{name}({x})"))),
        }
    }

    pub fn alphabet(&self, key: &str, reg: &mut Registry) -> Result<BTreeSet<Name>, ExtractError> {
        match self.alphabets.get(key) {
            Some(s) => Ok(s.clone()),
            None => Ok(BTreeSet::from([reg.intern(key)?])),
        }
    }
}

/// Port layout of a sequent with `arity` formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PortLayout {
    pub arity: usize,
}

impl PortLayout {
    pub fn new(arity: usize) -> PortLayout {
        PortLayout { arity }
    }

    /// Embeds a formula's own names into port `i`.
    pub fn port(&self, i: usize) -> Renaming {
        Renaming::kway(self.arity as u64, i as u64)
    }

    /// Which port a name belongs to.
    pub fn region(&self, n: Name) -> usize {
        (n.0 % self.arity as u64) as usize
    }

    /// Sends port `i` to `parts[i]`.
    fn dispatch(parts: Vec<Renaming>) -> Renaming {
        Renaming::Split(parts)
    }

    fn others(&self, focus: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..self.arity).filter(move |j| *j != focus).enumerate().map(|(idx, j)| (j, idx))
    }

    fn pack(&self, focus: usize, focus_side: Renaming, rest_side: Renaming) -> Renaming {
        let rest = PortLayout::new(self.arity - 1);
        let mut parts = alloc::vec![Renaming::Identity; self.arity];
        parts[focus] = focus_side;
        for (j, idx) in self.others(focus) {
            parts[j] = Renaming::compose(rest_side.clone(), rest.port(idx));
        }
        PortLayout::dispatch(parts)
    }

    /// Port `focus` onto the right half, the other ports in order onto the left
    /// half as a layout of `arity - 1`.
    pub fn focus_right(&self, focus: usize) -> Renaming {
        self.pack(focus, Renaming::rcode(), Renaming::lcode())
    }

    /// Port `focus` onto the left half, the rest onto the right half.
    pub fn focus_left(&self, focus: usize) -> Renaming {
        self.pack(focus, Renaming::lcode(), Renaming::rcode())
    }

    /// From `l(layout of left)` and `r(layout of right)` to one layout of
    /// `left + right` ports, left ports first.
    pub fn unpack(left: usize, right: usize) -> Renaming {
        let t = PortLayout::new(left + right);
        let l = (0..left).map(|s| t.port(s)).collect();
        let r = (0..right).map(|u| t.port(left + u)).collect();
        PortLayout::dispatch(alloc::vec![PortLayout::dispatch(l), PortLayout::dispatch(r)])
    }

    /// Relabels ports so that new port `t` is old port `perm[t]`.
    pub fn permute(&self, perm: &[usize]) -> Renaming {
        let mut parts = alloc::vec![Renaming::Identity; self.arity];
        for (t, s) in perm.iter().enumerate() {
            parts[*s] = self.port(t);
        }
        PortLayout::dispatch(parts)
    }

    /// Keeps each port's index in a layout of `arity` ports.
    pub fn widen(&self, arity: usize) -> Renaming {
        let wide = PortLayout::new(arity);
        PortLayout::dispatch((0..self.arity).map(|i| wide.port(i)).collect())
    }

    /// The binary layout of `A₁ ⅋ (A₂ ⅋ (… ⅋ Aₖ))`: port `i` goes to `rⁱ(l(·))`,
    /// the last port to `rᵏ⁻¹(·)`.
    pub fn nest(&self) -> Renaming {
        let parts = (0..self.arity)
            .map(|i| {
                let mut f = if i + 1 == self.arity { Renaming::Identity } else { Renaming::lcode() };
                for _ in 0..i {
                    f = Renaming::compose(Renaming::rcode(), f);
                }
                f
            })
            .collect();
        PortLayout::dispatch(parts)
    }

    /// Each port's names moved into the left (or right) half of that port.
    pub fn split_copies(&self, right: bool) -> Renaming {
        let half = if right { Renaming::rcode() } else { Renaming::lcode() };
        PortLayout::dispatch((0..self.arity).map(|i| Renaming::compose(self.port(i), half.clone())).collect())
    }
}

/// `P ⊢ Γ` (cut formula at `lp`) composed with `Q ⊢ Δ` (dual at `rp`).
pub fn compose_ports(p: Term, n: usize, lp: usize, q: Term, m: usize, rp: usize) -> Term {
    let p = Term::rename(p, PortLayout::new(n).focus_right(lp));
    let q = Term::rename(q, PortLayout::new(m).focus_left(rp));
    Term::rename(seq(p, q), PortLayout::unpack(n - 1, m - 1))
}

fn signal(layout: PortLayout, port: usize, name: Name, co: bool) -> Label {
    let n = layout.port(port).apply_name(name).expect("codings are total");
    Label::new(n, co)
}

struct Extractor<'a> {
    env: &'a AtomEnv,
    reg: &'a mut Registry,
}

impl Extractor<'_> {
    fn arity(p: &Proof) -> usize {
        check_proof(p).expect("checked at the root").len()
    }

    /// `{r(co name)}.⟦η(A)⟧`, a proof of `⊢ A⊥, A ∘ name` that signals first.
    fn gate(&mut self, a: &Formula, name: Name) -> Result<Term, ExtractError> {
        let wire = self.ext(&eta_expand(a))?;
        Ok(Term::prefix(Action::single(signal(PortLayout::new(2), 1, name, true)), wire))
    }

    /// Cuts the last formula of `premise` against a gate.
    fn gated(&mut self, premise: &Proof, name: Name) -> Result<Term, ExtractError> {
        let concl = check_proof(premise)?;
        let n = concl.len();
        let e = self.ext(premise)?;
        let g = self.gate(&concl[n - 1], name)?;
        Ok(compose_ports(e, n, n - 1, g, 2, 0))
    }

    fn ext(&mut self, p: &Proof) -> Result<Term, ExtractError> {
        Ok(match p {
            Proof::Axiom(a) => match a {
                Formula::Atom { name, arg, .. } => {
                    let key = AtomEnv::key(name, arg)?;
                    let sigma = self.env.alphabet(&key, self.reg)?;
                    try_identity_wire(&sigma, self.env.wire_cap.unwrap_or(DEFAULT_WIRE_CAP))?
                }
                _ => self.ext(&eta_expand(a))?,
            },
            Proof::Cut { left_pos, right_pos, left, right } => {
                let (n, m) = (Self::arity(left), Self::arity(right));
                let (l, r) = (self.ext(left)?, self.ext(right)?);
                compose_ports(l, n, *left_pos, r, m, *right_pos)
            }
            Proof::TensorR(a, b) => {
                let (n1, n2) = (Self::arity(a), Self::arity(b));
                let t = PortLayout::new(n1 + n2 - 1);
                let last = t.port(t.arity - 1);
                let mut pa: Vec<Renaming> = (0..n1 - 1).map(|j| t.port(j)).collect();
                pa.push(Renaming::compose(last.clone(), Renaming::lcode()));
                let mut pb: Vec<Renaming> = (0..n2 - 1).map(|j| t.port(n1 - 1 + j)).collect();
                pb.push(Renaming::compose(last, Renaming::rcode()));
                Term::par(
                    Term::rename(self.ext(a)?, PortLayout::dispatch(pa)),
                    Term::rename(self.ext(b)?, PortLayout::dispatch(pb)),
                )
            }
            Proof::ParR(q) => Term::rename(self.ext(q)?, par_merge(Self::arity(q))),
            Proof::WithR(a, b) => {
                let layout = PortLayout::new(Self::arity(a));
                let last = layout.arity - 1;
                Term::sum([
                    (Action::single(signal(layout, last, Name::ALPHA, false)), self.ext(a)?),
                    (Action::single(signal(layout, last, Name::BETA, false)), self.ext(b)?),
                ])
            }
            Proof::PlusR1 { premise, .. } => self.gated(premise, Name::ALPHA)?,
            Proof::PlusR2 { premise, .. } => self.gated(premise, Name::BETA)?,
            Proof::Exchange { perm, premise } => {
                Term::rename(self.ext(premise)?, PortLayout::new(perm.len()).permute(perm))
            }
            Proof::Weakening { premise, .. } => {
                let n = Self::arity(premise);
                let wide = PortLayout::new(n + 1);
                let discard = Term::prefix(Action::single(signal(wide, n, Name::OMEGA, true)), Term::nil());
                Term::par(Term::rename(self.ext(premise)?, PortLayout::new(n).widen(n + 1)), discard)
            }
            Proof::Dereliction(q) => self.gated(q, Name::DELTA)?,
            Proof::Contraction(q) => {
                let concl = check_proof(q)?;
                let n = concl.len();
                let merged = Term::rename(self.ext(q)?, par_merge(n));
                let wire = self.ext(&eta_expand(&concl[n - 1]))?;
                let two = PortLayout::new(2);
                let copies = Term::par(
                    Term::rename(wire.clone(), two.split_copies(false)),
                    Term::rename(wire, two.split_copies(true)),
                );
                let gate = Term::prefix(Action::single(signal(two, 1, Name::GAMMA, true)), copies);
                compose_ports(merged, n - 1, n - 2, gate, 2, 0)
            }
            Proof::Promotion(q) => {
                let e = self.ext(q)?;
                let k = Self::arity(q);
                if k == 1 {
                    bang(e)
                } else {
                    promotion(e, PortLayout::new(k))
                }
            }
            Proof::ForallR { var: _, domain, premises, .. } => {
                let layout = PortLayout::new(Self::arity(&premises[0]));
                let mut branches = Vec::new();
                for (v, q) in domain.iter().zip(premises) {
                    let sigma = self.reg.value_name(Name::SIGMA, *v)?;
                    branches.push((Action::single(signal(layout, layout.arity - 1, sigma, false)), self.ext(q)?));
                }
                Term::sum(branches)
            }
            Proof::ExistsR { value, premise, .. } => {
                let sigma = self.reg.value_name(Name::SIGMA, *value)?;
                self.gated(premise, sigma)?
            }
        })
    }
}

/// `⊢ Γ, A, B` to `⊢ Γ, A ⅋ B`: the last two ports become the halves of one.
fn par_merge(n: usize) -> Renaming {
    let t = PortLayout::new(n - 1);
    let mut parts: Vec<Renaming> = (0..n - 2).map(|j| t.port(j)).collect();
    parts.push(Renaming::compose(t.port(n - 2), Renaming::lcode()));
    parts.push(Renaming::compose(t.port(n - 2), Renaming::rcode()));
    PortLayout::dispatch(parts)
}

/// Replication of `e ⊢ ?Γ, A` on the last port. Discarding the box discards
/// every context port; copying it copies every context port in the same step.
fn promotion(e: Term, layout: PortLayout) -> Term {
    let k = layout.arity;
    let x = fresh_var(&e, "P");
    let main = |n: Name| signal(layout, k - 1, n, false);
    let ctx = |n: Name| (0..k - 1).map(move |i| signal(layout, i, n, true));
    let discard = Term::par_all(ctx(Name::OMEGA).map(|l| Term::prefix(Action::single(l), Term::nil())).collect());
    let copy = Action::new(core::iter::once(main(Name::GAMMA)).chain(ctx(Name::GAMMA)));
    let copies = Term::par(
        Term::rename(Term::var(&x), layout.split_copies(false)),
        Term::rename(Term::var(&x), layout.split_copies(true)),
    );
    Term::rec(
        &x,
        Term::sum([
            (Action::single(main(Name::OMEGA)), discard),
            (Action::single(main(Name::DELTA)), e),
            (copy, copies),
        ]),
    )
}

/// The realizer `⟦Π⟧` of a proof, over the port layout of its conclusion.
pub fn extract(proof: &Proof, env: &AtomEnv, reg: &mut Registry) -> Result<Term, ExtractError> {
    check_proof(proof)?;
    Extractor { env, reg }.ext(proof)
}

/// Compares `⟦Π⟧` and `⟦Π′⟧` under failures equivalence.
pub fn verify_cut_soundness(
    before: &Proof,
    after: &Proof,
    env: &AtomEnv,
    reg: &mut Registry,
    budget: ExplorationBudget,
) -> Result<EquivResult, SoundnessError> {
    if before == after {
        return Ok(EquivResult::Equal);
    }
    let p = extract(before, env, reg)?;
    let q = extract(after, env, reg)?;
    Ok(failures_equiv(&p, &q, budget)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SoundnessError {
    Extract(ExtractError),
    Step(StepError),
}

impl fmt::Display for SoundnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SoundnessError::Extract(e) => write!(f, "{e}"),
            SoundnessError::Step(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SoundnessError {}

impl From<ExtractError> for SoundnessError {
    fn from(e: ExtractError) -> Self {
        SoundnessError::Extract(e)
    }
}

impl From<StepError> for SoundnessError {
    fn from(e: StepError) -> Self {
        SoundnessError::Step(e)
    }
}

/// Whether a proof's realizer converges against every counter-realizer of
/// its conclusion. `neg` indexes the negative representative involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    Convergent,
    Diverging { neg: usize },
    Unknown { neg: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TotalityError {
    Extract(ExtractError),
    Type(SemError),
    Step(StepError),
}

impl fmt::Display for TotalityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TotalityError::Extract(e) => write!(f, "{e}"),
            TotalityError::Type(e) => write!(f, "{e}"),
            TotalityError::Step(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TotalityError {}

impl From<ExtractError> for TotalityError {
    fn from(e: ExtractError) -> Self {
        TotalityError::Extract(e)
    }
}

impl From<SemError> for TotalityError {
    fn from(e: SemError) -> Self {
        TotalityError::Type(e)
    }
}

impl From<StepError> for TotalityError {
    fn from(e: StepError) -> Self {
        TotalityError::Step(e)
    }
}

/// The type of `A₁ ⅋ (A₂ ⅋ (… ⅋ Aₖ))` for the proof's conclusion.
pub fn conclusion_type(
    proof: &Proof,
    types: &TypeEnv,
    fuel: usize,
    reg: &mut Registry,
    budget: ExplorationBudget,
) -> Result<SemType, TotalityError> {
    let gamma = check_proof(proof).map_err(ExtractError::Invalid)?;
    let f = gamma.into_iter().rev().reduce(|acc, a| Formula::par(a, acc)).expect("sequents are nonempty");
    Ok(interpret(&f, types, fuel, reg, budget)?)
}

/// Extracts `Π`, moves its ports into the nested binary layout of the
/// conclusion's ⅋, and checks orthogonality against each negative
/// representative of that type.
pub fn verify_totality_pipeline(
    proof: &Proof,
    env: &AtomEnv,
    types: &TypeEnv,
    fuel: usize,
    reg: &mut Registry,
    budget: ExplorationBudget,
) -> Result<Convergence, TotalityError> {
    let ty = conclusion_type(proof, types, fuel, reg, budget)?;
    let arity = check_proof(proof).map_err(ExtractError::Invalid)?.len();
    let term = Term::rename(extract(proof, env, reg)?, PortLayout::new(arity).nest());
    check_convergence(&term, &ty, budget)
}

/// `term ⊥ N` for every negative representative `N` of `ty`.
pub fn check_convergence(term: &Term, ty: &SemType, budget: ExplorationBudget) -> Result<Convergence, TotalityError> {
    let mut unknown = None;
    for (neg, n) in ty.neg.reps().enumerate() {
        match perp(term, n, budget)? {
            Tri::Yes => {}
            Tri::No => return Ok(Convergence::Diverging { neg }),
            Tri::Unknown => unknown = unknown.or(Some(neg)),
        }
    }
    Ok(unknown.map_or(Convergence::Convergent, |neg| Convergence::Unknown { neg }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinators::identity_wire;
    use crate::logic::{cut_step, find_innermost_cut, parse_formula};
    use crate::syntax::well_formed;
    use alloc::boxed::Box;
    use alloc::vec;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn budget() -> ExplorationBudget {
        ExplorationBudget::states(3000)
    }

    #[test]
    fn layout_roundtrip() {
        for n in 1..5usize {
            for m in 1..4usize {
                for lp in 0..n {
                    for rp in 0..m {
                        let (ln, lm) = (PortLayout::new(n), PortLayout::new(m));
                        let un = PortLayout::unpack(n - 1, m - 1);
                        let t = PortLayout::new(n + m - 2);
                        for x in [0u64, 1, 7, 1000] {
                            for (j, idx) in ln.others(lp) {
                                let packed = ln.focus_right(lp).apply_name(ln.port(j).apply_name(Name(x)).unwrap());
                                let back = packed.and_then(|c| un.apply_name(c)).unwrap();
                                assert_eq!(back, t.port(idx).apply_name(Name(x)).unwrap());
                                assert_eq!(t.region(back), idx);
                            }
                            for (j, idx) in lm.others(rp) {
                                let packed = lm.focus_left(rp).apply_name(lm.port(j).apply_name(Name(x)).unwrap());
                                let back = packed.and_then(|c| un.apply_name(c)).unwrap();
                                assert_eq!(back, t.port(n - 1 + idx).apply_name(Name(x)).unwrap());
                            }
                            let focus = ln.focus_right(lp).apply_name(ln.port(lp).apply_name(Name(x)).unwrap());
                            assert_eq!(focus, Some(Name(2 * x + 1)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nest_layout() {
        let l = PortLayout::new(3);
        let nest = l.nest();
        let x = Name(5);
        assert_eq!(nest.apply_name(l.port(0).apply_name(x).unwrap()), Some(x.l_code()));
        assert_eq!(nest.apply_name(l.port(1).apply_name(x).unwrap()), Some(x.l_code().r_code()));
        assert_eq!(nest.apply_name(l.port(2).apply_name(x).unwrap()), Some(x.r_code().r_code()));
    }

    #[test]
    fn axiom_is_the_wire() {
        let mut reg = Registry::new();
        let t = extract(&Proof::Axiom(f("a")), &AtomEnv::new(), &mut reg).unwrap();
        let a = reg.lookup("a").unwrap();
        assert_eq!(t, identity_wire(&BTreeSet::from([a])));
    }

    #[test]
    fn extraction_is_closed_and_well_formed() {
        let mut reg = Registry::new();
        for s in ["a * b", "a & b", "a (+) ~b", "!a", "?a @ b", "forall x. p(x)", "exists x:{2}. p(x) & q"] {
            let t = extract(&eta_expand(&f(s)), &AtomEnv::new(), &mut reg).unwrap();
            assert!(well_formed(&t).is_empty(), "{s}: {:?}", well_formed(&t));
        }
    }

    #[test]
    fn cut_with_axiom_is_neutral() {
        let mut reg = Registry::new();
        let env = AtomEnv::new();
        for s in ["a", "a * b", "a & b"] {
            let a = f(s);
            let p = Proof::Cut {
                left_pos: 1,
                right_pos: 0,
                left: Box::new(Proof::Axiom(a.clone())),
                right: Box::new(Proof::Axiom(a.clone())),
            };
            let lhs = extract(&p, &env, &mut reg).unwrap();
            let rhs = extract(&Proof::Axiom(a), &env, &mut reg).unwrap();
            assert_eq!(failures_equiv(&lhs, &rhs, budget()).unwrap(), EquivResult::Equal, "{s}");
        }
    }

    fn every_step_sound(p: &Proof) {
        let mut reg = Registry::new();
        let env = AtomEnv::new();
        let mut cur = p.clone();
        while let Some(path) = find_innermost_cut(&cur) {
            let (next, kind) = cut_step(&cur, &path).unwrap();
            let r = verify_cut_soundness(&cur, &next, &env, &mut reg, budget()).unwrap();
            assert!(!r.is_distinguished(), "{kind}: {r:?}");
            cur = next;
        }
    }

    #[test]
    fn multiplicative_and_additive_steps() {
        for s in ["a * b", "a & b", "a (+) b", "(a * b) @ c"] {
            let a = f(s);
            every_step_sound(&Proof::Cut {
                left_pos: 1,
                right_pos: 0,
                left: Box::new(eta_expand(&a)),
                right: Box::new(eta_expand(&a)),
            });
        }
    }

    #[test]
    fn with_commutation_can_be_observed() {
        // The cut partner carries an independent `?c` that can be discarded
        // before the choice is made; after the step it sits under the choice.
        let ab = f("a * b");
        let mut reg = Registry::new();
        let env = AtomEnv::new();
        let t0 = eta_expand(&ab).exchange(vec![1, 0]);
        let w = Proof::WithR(Box::new(t0.clone()), Box::new(t0));
        let partner = Proof::Weakening { formula: f("c"), premise: Box::new(eta_expand(&ab)) };
        let p = Proof::Cut { left_pos: 0, right_pos: 0, left: Box::new(w), right: Box::new(partner) };
        let (q, kind) = cut_step(&p, &[]).unwrap();
        assert_eq!(kind, crate::logic::StepKind::Commute(crate::logic::RuleKind::WithR));
        let r = verify_cut_soundness(&p, &q, &env, &mut reg, budget()).unwrap();
        assert!(r.is_distinguished(), "{r:?}");
    }

    fn atom_types(reg: &mut Registry, atoms: &[&str]) -> TypeEnv {
        use crate::syntax::parse_term;
        let b = budget();
        atoms
            .iter()
            .map(|a| {
                let n = reg.intern(a).unwrap();
                let pos = vec![vec![parse_term(&format!("{{{a}}}.0"), reg).unwrap()]];
                let neg = vec![vec![parse_term(&format!("{{~{a}}}.0"), reg).unwrap()]];
                (String::from(*a), SemType::new(pos, neg, Some(BTreeSet::from([n])), b).unwrap())
            })
            .collect()
    }

    #[test]
    fn axioms_and_their_cuts_converge() {
        let mut reg = Registry::new();
        let types = atom_types(&mut reg, &["a", "b"]);
        let env = AtomEnv::new();
        let a = f("a");
        let ax = Proof::Axiom(a.clone());
        assert_eq!(verify_totality_pipeline(&ax, &env, &types, 0, &mut reg, budget()), Ok(Convergence::Convergent));
        let cut = Proof::Cut { left_pos: 1, right_pos: 0, left: Box::new(ax.clone()), right: Box::new(ax) };
        assert_eq!(verify_totality_pipeline(&cut, &env, &types, 0, &mut reg, budget()), Ok(Convergence::Convergent));
        for src in ["a * b", "a & b", "a (+) b", "!a"] {
            let p = eta_expand(&f(src));
            let r = verify_totality_pipeline(&p, &env, &types, 1, &mut reg, budget());
            assert_eq!(r, Ok(Convergence::Convergent), "{src}");
        }
    }

    #[test]
    fn a_spinning_realizer_diverges() {
        let mut reg = Registry::new();
        let types = atom_types(&mut reg, &["a"]);
        let ty = conclusion_type(&Proof::Axiom(f("a")), &types, 0, &mut reg, budget()).unwrap();
        let spin = crate::syntax::parse_term("rec X. {}.X", &mut reg).unwrap();
        assert_eq!(check_convergence(&spin, &ty, budget()), Ok(Convergence::Diverging { neg: 0 }));
    }
}
