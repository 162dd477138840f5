//! One-step cut reduction and innermost-first cut elimination.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use super::{check_proof, Formula, Proof, ProofError, Sequent};

/// The rule a cut was pushed through by a commutative step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Exchange,
    ParR,
    PlusR,
    Weakening,
    Dereliction,
    Contraction,
    ExistsR,
    TensorR,
    WithR,
    ForallR,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepKind {
    AxiomLeft,
    AxiomRight,
    TensorPar,
    WithPlus,
    ForallExists,
    BangWeakening,
    BangDereliction,
    BangContraction,
    BoxBox,
    Commute(RuleKind),
}

impl StepKind {
    pub const ALL: [StepKind; 19] = [
        StepKind::AxiomLeft,
        StepKind::AxiomRight,
        StepKind::TensorPar,
        StepKind::WithPlus,
        StepKind::ForallExists,
        StepKind::BangWeakening,
        StepKind::BangDereliction,
        StepKind::BangContraction,
        StepKind::BoxBox,
        StepKind::Commute(RuleKind::Exchange),
        StepKind::Commute(RuleKind::ParR),
        StepKind::Commute(RuleKind::PlusR),
        StepKind::Commute(RuleKind::Weakening),
        StepKind::Commute(RuleKind::Dereliction),
        StepKind::Commute(RuleKind::Contraction),
        StepKind::Commute(RuleKind::ExistsR),
        StepKind::Commute(RuleKind::TensorR),
        StepKind::Commute(RuleKind::WithR),
        StepKind::Commute(RuleKind::ForallR),
    ];

    pub fn name(self) -> &'static str {
        match self {
            StepKind::AxiomLeft => "axiom-left",
            StepKind::AxiomRight => "axiom-right",
            StepKind::TensorPar => "tensor-par",
            StepKind::WithPlus => "with-plus",
            StepKind::ForallExists => "forall-exists",
            StepKind::BangWeakening => "bang-weakening",
            StepKind::BangDereliction => "bang-dereliction",
            StepKind::BangContraction => "bang-contraction",
            StepKind::BoxBox => "box-box",
            StepKind::Commute(r) => match r {
                RuleKind::Exchange => "commute-exchange",
                RuleKind::ParR => "commute-par",
                RuleKind::PlusR => "commute-plus",
                RuleKind::Weakening => "commute-weakening",
                RuleKind::Dereliction => "commute-dereliction",
                RuleKind::Contraction => "commute-contraction",
                RuleKind::ExistsR => "commute-exists",
                RuleKind::TensorR => "commute-tensor",
                RuleKind::WithR => "commute-with",
                RuleKind::ForallR => "commute-forall",
            },
        }
    }

    /// Commutations past `&` and `∀` duplicate the other premise.
    pub fn duplicates(self) -> bool {
        matches!(self, StepKind::Commute(RuleKind::WithR | RuleKind::ForallR) | StepKind::BangContraction)
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutError {
    Invalid(ProofError),
    NotACut(Vec<usize>),
    /// No reduction applies; only happens when a premise itself ends in a cut.
    Stuck(Vec<usize>),
    BoundExceeded { bound: usize },
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutError::Invalid(e) => write!(f, "invalid proof: {e}"),
            CutError::NotACut(p) => write!(f, "no cut at {p:?}"),
            CutError::Stuck(p) => write!(f, "cut at {p:?} has no applicable reduction"),
            CutError::BoundExceeded { bound } => write!(f, "cut elimination did not finish within {bound} steps"),
        }
    }
}

impl core::error::Error for CutError {}

impl From<ProofError> for CutError {
    fn from(e: ProofError) -> Self {
        CutError::Invalid(e)
    }
}

#[derive(Clone, Debug)]
pub struct Eliminated {
    pub proof: Proof,
    pub steps: Vec<(Vec<usize>, StepKind)>,
}

pub fn contains_cut(p: &Proof) -> bool {
    matches!(p, Proof::Cut { .. }) || p.premises().iter().any(|q| contains_cut(q))
}

/// Path to the first cut in post-order, left to right. Its premises are cut-free.
pub fn find_innermost_cut(p: &Proof) -> Option<Vec<usize>> {
    fn go(p: &Proof, path: &mut Vec<usize>) -> bool {
        for (i, q) in p.premises().into_iter().enumerate() {
            path.push(i);
            if go(q, path) {
                return true;
            }
            path.pop();
        }
        matches!(p, Proof::Cut { .. })
    }
    let mut path = Vec::new();
    go(p, &mut path).then_some(path)
}

/// Rewrites the cut at `path` once. The result proves the same sequent.
pub fn cut_step(proof: &Proof, path: &[usize]) -> Result<(Proof, StepKind), CutError> {
    let Some(site @ Proof::Cut { left_pos, right_pos, left, right }) = proof.subproof(path) else {
        return Err(CutError::NotACut(path.to_vec()));
    };
    check_proof(site)?;
    let gamma = check_proof(left)?;
    let delta = check_proof(right)?;
    let c = CutSite { lp: *left_pos, rp: *right_pos, l: left, r: right, gamma: &gamma, delta: &delta };
    let (replacement, kind) = c.reduce().ok_or_else(|| CutError::Stuck(path.to_vec()))?;
    let mut out = proof.clone();
    *out.subproof_mut(path).expect("path checked above") = replacement;
    Ok((out, kind))
}

/// Reduces innermost cuts until none remain or `bound` steps were taken.
pub fn cut_eliminate(proof: &Proof, bound: usize) -> Result<Eliminated, CutError> {
    check_proof(proof)?;
    let mut cur = proof.clone();
    let mut steps = Vec::new();
    while let Some(path) = find_innermost_cut(&cur) {
        if steps.len() >= bound {
            return Err(CutError::BoundExceeded { bound });
        }
        let (next, kind) = cut_step(&cur, &path)?;
        steps.push((path, kind));
        cur = next;
    }
    Ok(Eliminated { proof: cur, steps })
}

type Tag = (u8, usize);

const G: u8 = 0;
const D: u8 = 1;
const A: u8 = 2;
const B: u8 = 3;

fn tags(group: u8, range: core::ops::Range<usize>) -> Vec<Tag> {
    range.map(|i| (group, i)).collect()
}

fn without(v: &[Tag], t: Tag) -> Vec<Tag> {
    v.iter().copied().filter(|x| *x != t).collect()
}

fn cat(parts: &[&[Tag]]) -> Vec<Tag> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Exchange turning a sequent tagged `have` into one tagged `want`.
fn reorder(p: Proof, have: &[Tag], want: &[Tag]) -> Proof {
    debug_assert_eq!(have.len(), want.len());
    let perm = want.iter().map(|w| have.iter().position(|h| h == w).expect("tag present")).collect();
    p.exchange(perm)
}

fn cut(lp: usize, rp: usize, l: Proof, r: Proof) -> Proof {
    Proof::Cut { left_pos: lp, right_pos: rp, left: Box::new(l), right: Box::new(r) }
}

fn replace_premise(p: &Proof, i: usize, q: Proof) -> Proof {
    let mut out = p.clone();
    *out.premises_mut().into_iter().nth(i).expect("premise index") = q;
    out
}

/// Number of premise formulas a unary rule consumes from the end.
fn unary_active(p: &Proof) -> Option<(usize, RuleKind)> {
    Some(match p {
        Proof::ParR(_) => (2, RuleKind::ParR),
        Proof::PlusR1 { .. } | Proof::PlusR2 { .. } => (1, RuleKind::PlusR),
        Proof::Weakening { .. } => (0, RuleKind::Weakening),
        Proof::Dereliction(_) => (1, RuleKind::Dereliction),
        Proof::Contraction(_) => (2, RuleKind::Contraction),
        Proof::ExistsR { .. } => (1, RuleKind::ExistsR),
        _ => return None,
    })
}

fn is_logical(p: &Proof) -> bool {
    !matches!(p, Proof::Axiom(_) | Proof::Cut { .. } | Proof::Exchange { .. })
}

struct CutSite<'a> {
    lp: usize,
    rp: usize,
    l: &'a Proof,
    r: &'a Proof,
    gamma: &'a Sequent,
    delta: &'a Sequent,
}

impl<'a> CutSite<'a> {
    fn swapped(&self) -> CutSite<'a> {
        CutSite { lp: self.rp, rp: self.lp, l: self.r, r: self.l, gamma: self.delta, delta: self.gamma }
    }

    /// Runs `f` on the mirrored cut and restores the original conclusion order.
    fn via_swap(&self, f: impl FnOnce(&CutSite<'a>) -> Option<(Proof, StepKind)>) -> Option<(Proof, StepKind)> {
        let (p, k) = f(&self.swapped())?;
        let n = self.gamma.len() - 1;
        let m = self.delta.len() - 1;
        let perm = (0..n).map(|t| m + t).chain(0..m).collect();
        Some((p.exchange(perm), k))
    }

    fn target(&self) -> Vec<Tag> {
        cat(&[&self.gamma_rest(), &self.delta_rest()])
    }

    fn gamma_rest(&self) -> Vec<Tag> {
        without(&tags(G, 0..self.gamma.len()), (G, self.lp))
    }

    fn delta_rest(&self) -> Vec<Tag> {
        without(&tags(D, 0..self.delta.len()), (D, self.rp))
    }

    fn left_principal(&self) -> bool {
        is_logical(self.l) && self.lp + 1 == self.gamma.len()
    }

    fn reduce(&self) -> Option<(Proof, StepKind)> {
        if let Proof::Axiom(_) = self.l {
            // ⊢ A⊥, A against ⊢ Δ: the surviving axiom formula is Δ[rp] itself.
            let m = self.delta.len();
            let perm = core::iter::once(self.rp).chain((0..m).filter(|j| *j != self.rp)).collect();
            return Some((self.r.clone().exchange(perm), StepKind::AxiomLeft));
        }
        if let Proof::Axiom(_) = self.r {
            let n = self.gamma.len();
            let perm = (0..n).filter(|i| *i != self.lp).chain(core::iter::once(self.lp)).collect();
            return Some((self.l.clone().exchange(perm), StepKind::AxiomRight));
        }
        let sw = self.swapped();
        if self.left_principal() && sw.left_principal() {
            return self.principal().or_else(|| self.via_swap(|s| s.principal()));
        }
        if let Some(r) = self.box_box() {
            return Some(r);
        }
        if let Some(r) = self.via_swap(|s| s.box_box()) {
            return Some(r);
        }
        if let Some(r) = self.commute_left() {
            return Some(r);
        }
        self.via_swap(|s| s.commute_left())
    }

    /// Both premises introduce the cut formula; `self.l` must carry the
    /// ⊗, &, ∀ or ! side.
    fn principal(&self) -> Option<(Proof, StepKind)> {
        let c = self.gamma.len() - 1;
        let d = self.delta.len() - 1;
        match (self.l, self.r) {
            (Proof::TensorR(l1, l2), Proof::ParR(r1)) => {
                let c1 = check_proof(l1).ok()?.len() - 1;
                let c2 = c - c1;
                let inner = cut(c1, d, (**l1).clone(), (**r1).clone());
                let outer = cut(c2, c1 + d, (**l2).clone(), inner);
                let have = cat(&[&tags(G, c1..c), &tags(G, 0..c1), &tags(D, 0..d)]);
                Some((reorder(outer, &have, &self.target()), StepKind::TensorPar))
            }
            (Proof::WithR(l1, _), Proof::PlusR1 { premise, .. }) => {
                Some((cut(c, d, (**l1).clone(), (**premise).clone()), StepKind::WithPlus))
            }
            (Proof::WithR(_, l2), Proof::PlusR2 { premise, .. }) => {
                Some((cut(c, d, (**l2).clone(), (**premise).clone()), StepKind::WithPlus))
            }
            (Proof::ForallR { domain, premises, .. }, Proof::ExistsR { value, premise, .. }) => {
                let i = domain.iter().position(|v| v == value)?;
                Some((cut(c, d, premises[i].clone(), (**premise).clone()), StepKind::ForallExists))
            }
            (Proof::Promotion(_), Proof::Weakening { premise, .. }) => {
                let mut p = (**premise).clone();
                for g in &self.gamma[..c] {
                    let Formula::Quest(inner) = g else { return None };
                    p = Proof::Weakening { formula: (**inner).clone(), premise: Box::new(p) };
                }
                let have = cat(&[&tags(D, 0..d), &tags(G, 0..c)]);
                Some((reorder(p, &have, &self.target()), StepKind::BangWeakening))
            }
            (Proof::Promotion(l1), Proof::Dereliction(r1)) => {
                Some((cut(c, d, (**l1).clone(), (**r1).clone()), StepKind::BangDereliction))
            }
            (Proof::Promotion(_), Proof::Contraction(r1)) => {
                let x1 = cut(c, d + 1, self.l.clone(), (**r1).clone());
                let x2 = cut(c, c + d, self.l.clone(), x1);
                let mut have = cat(&[&tags(A, 0..c), &tags(B, 0..c), &tags(D, 0..d)]);
                let mut p = x2;
                for i in 0..c {
                    let rest = without(&without(&have, (A, i)), (B, i));
                    let want = cat(&[&rest, &[(A, i), (B, i)]]);
                    p = Proof::Contraction(Box::new(reorder(p, &have, &want)));
                    have = cat(&[&rest, &[(G, i)]]);
                }
                Some((reorder(p, &have, &self.target()), StepKind::BangContraction))
            }
            _ => None,
        }
    }

    /// `self.l` promotes the cut formula, `self.r` is a promotion with the cut
    /// formula in its `?`-context.
    fn box_box(&self) -> Option<(Proof, StepKind)> {
        let (Proof::Promotion(_), Proof::Promotion(r1)) = (self.l, self.r) else { return None };
        if !self.left_principal() || self.rp + 1 == self.delta.len() {
            return None;
        }
        let inner = cut(self.lp, self.rp, self.l.clone(), (**r1).clone());
        Some((Proof::Promotion(Box::new(inner)), StepKind::BoxBox))
    }

    fn commute_left(&self) -> Option<(Proof, StepKind)> {
        let n = self.gamma.len();
        let (lp, rp) = (self.lp, self.rp);
        let dr = self.delta_rest();
        let target = self.target();
        if let Proof::Exchange { perm, premise } = self.l {
            let mut g1 = alloc::vec![(G, 0); n];
            for (t, s) in perm.iter().enumerate() {
                g1[*s] = (G, t);
            }
            let x = cut(perm[lp], rp, (**premise).clone(), self.r.clone());
            let have = cat(&[&without(&g1, (G, lp)), &dr]);
            return Some((reorder(x, &have, &target), StepKind::Commute(RuleKind::Exchange)));
        }
        if lp + 1 >= n {
            return None;
        }
        let c_rest = without(&tags(G, 0..n - 1), (G, lp));
        let after = cat(&[&c_rest, &dr, &[(G, n - 1)]]);
        if let Some((k, kind)) = unary_active(self.l) {
            let l1 = self.l.premises()[0];
            let x = cut(lp, rp, l1.clone(), self.r.clone());
            let act = tags(A, 0..k);
            let x = reorder(x, &cat(&[&c_rest, &act, &dr]), &cat(&[&c_rest, &dr, &act]));
            let u = replace_premise(self.l, 0, x);
            return Some((reorder(u, &after, &target), StepKind::Commute(kind)));
        }
        match self.l {
            Proof::TensorR(l1, _) => {
                let c1 = check_proof(l1).ok()?.len() - 1;
                let (i, at, g) = if lp < c1 { (0, lp, 0..c1) } else { (1, lp - c1, c1..n - 1) };
                let sub = if i == 0 { l1 } else { match self.l { Proof::TensorR(_, l2) => l2, _ => unreachable!() } };
                let part = without(&tags(G, g), (G, lp));
                let x = cut(at, rp, (**sub).clone(), self.r.clone());
                let x = reorder(x, &cat(&[&part, &[(A, 0)], &dr]), &cat(&[&part, &dr, &[(A, 0)]]));
                let u = replace_premise(self.l, i, x);
                let have = if i == 0 {
                    cat(&[&part, &dr, &tags(G, c1..n - 1), &[(G, n - 1)]])
                } else {
                    cat(&[&tags(G, 0..c1), &part, &dr, &[(G, n - 1)]])
                };
                Some((reorder(u, &have, &target), StepKind::Commute(RuleKind::TensorR)))
            }
            Proof::WithR(..) | Proof::ForallR { .. } => {
                let kind = if matches!(self.l, Proof::WithR(..)) { RuleKind::WithR } else { RuleKind::ForallR };
                let mut u = self.l.clone();
                for q in u.premises_mut() {
                    let x = cut(lp, rp, q.clone(), self.r.clone());
                    *q = reorder(x, &cat(&[&c_rest, &[(A, 0)], &dr]), &cat(&[&c_rest, &dr, &[(A, 0)]]));
                }
                Some((reorder(u, &after, &target), StepKind::Commute(kind)))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{eta_expand, parse_formula};
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    /// Runs innermost elimination, checking the conclusion after every step.
    fn eliminate_checked(p: &Proof, kinds: &mut BTreeSet<StepKind>) -> Proof {
        let concl = check_proof(p).unwrap();
        let mut cur = p.clone();
        let mut n = 0;
        while let Some(path) = find_innermost_cut(&cur) {
            let (next, k) = cut_step(&cur, &path).unwrap();
            assert_eq!(check_proof(&next).unwrap(), concl, "after {k}");
            kinds.insert(k);
            cur = next;
            n += 1;
            assert!(n < 10_000);
        }
        cur
    }

    fn self_cut(a: &Formula) -> Proof {
        // ⊢ A⊥, A  cut against  ⊢ A⊥, A  on A / A⊥
        cut(1, 0, eta_expand(a), eta_expand(a))
    }

    fn context_cases() -> Vec<Proof> {
        let ab = f("a * b");
        let t0 = eta_expand(&ab).exchange(vec![1, 0]); // ⊢ a⊗b, a⊥⅋b⊥
        let c = f("c");
        let rest = f("~a @ ~b");
        let wrap = |p: Proof| cut(0, 0, p, eta_expand(&ab));
        vec![
            cut(0, 0, t0.clone(), Proof::Axiom(ab.clone())),
            wrap(t0.clone()),
            wrap(Proof::ParR(Box::new(Proof::Weakening { formula: c.clone(), premise: Box::new(t0.clone()) }))),
            wrap(Proof::PlusR1 { other: c.clone(), premise: Box::new(t0.clone()) }),
            wrap(Proof::PlusR2 { other: c.clone(), premise: Box::new(t0.clone()) }),
            wrap(Proof::Dereliction(Box::new(t0.clone()))),
            wrap(Proof::Contraction(Box::new(Proof::Weakening {
                formula: c.clone(),
                premise: Box::new(Proof::Weakening { formula: c.clone(), premise: Box::new(t0.clone()) }),
            }))),
            wrap(Proof::ExistsR {
                var: "x".into(),
                domain: vec![0],
                body: rest.clone(),
                value: 0,
                premise: Box::new(t0.clone()),
            }),
            wrap(Proof::TensorR(Box::new(t0.clone()), Box::new(Proof::Axiom(c.clone())))),
            cut(1, 0, Proof::TensorR(Box::new(Proof::Axiom(c.clone())), Box::new(t0.clone())), eta_expand(&ab)),
            wrap(Proof::WithR(Box::new(t0.clone()), Box::new(t0.clone()))),
            wrap(Proof::ForallR {
                var: "x".into(),
                domain: vec![0, 1],
                body: rest,
                premises: vec![t0.clone(), t0],
            }),
        ]
    }

    fn bang_cases() -> Vec<Proof> {
        let a = f("a");
        let bang = eta_expand(&f("!a")); // ⊢ ?a⊥, !a
        let weak = Proof::Weakening { formula: a.negate(), premise: Box::new(Proof::Axiom(f("b"))) };
        // !a ⊢ a ⊗ a
        let two = Proof::TensorR(Box::new(Proof::Axiom(a.clone())), Box::new(Proof::Axiom(a.clone())));
        let two = Proof::Dereliction(Box::new(two.exchange(vec![2, 0, 1])));
        let two = Proof::Dereliction(Box::new(two.exchange(vec![0, 2, 1])));
        let two = Proof::Contraction(Box::new(two));
        vec![cut(1, 2, bang.clone(), weak), cut(1, 1, bang, two)]
    }

    #[test]
    fn eta_conclusions() {
        for s in ["a", "a * b", "a @ ~b", "a & b", "a (+) b", "!a", "?a", "forall x. p(x)", "exists x:{0,2}. p(x) * q"] {
            let a = f(s);
            assert_eq!(check_proof(&eta_expand(&a)).unwrap(), vec![a.negate(), a.clone()], "{s}");
            assert!(!contains_cut(&eta_expand(&a)));
        }
    }

    #[test]
    fn corpus_covers_every_step() {
        let mut kinds = BTreeSet::new();
        let mut corpus: Vec<Proof> = ["a", "a * b", "a & b", "a (+) b", "!a", "?a", "forall x. p(x)", "!(a * b) @ c"]
            .iter()
            .map(|s| self_cut(&f(s)))
            .collect();
        corpus.extend(context_cases());
        corpus.extend(bang_cases());
        for p in &corpus {
            let out = eliminate_checked(p, &mut kinds);
            assert!(!contains_cut(&out));
        }
        let missing: Vec<_> = StepKind::ALL.iter().filter(|k| !kinds.contains(k)).collect();
        assert!(missing.is_empty(), "uncovered: {missing:?}");
    }

    #[test]
    fn eliminate_matches_manual_loop() {
        let p = self_cut(&f("(a * b) & c"));
        let e = cut_eliminate(&p, 1000).unwrap();
        assert_eq!(check_proof(&e.proof).unwrap(), check_proof(&p).unwrap());
        assert!(!contains_cut(&e.proof));
        assert!(!e.steps.is_empty());
        assert_eq!(cut_eliminate(&p, 1).unwrap_err(), CutError::BoundExceeded { bound: 1 });
    }

    #[test]
    fn errors() {
        let p = Proof::Axiom(f("a"));
        assert_eq!(cut_step(&p, &[]).unwrap_err(), CutError::NotACut(vec![]));
        let bad = cut(0, 0, Proof::Axiom(f("a")), Proof::Axiom(f("a")));
        assert!(matches!(cut_step(&bad, &[]), Err(CutError::Invalid(_))));
        assert_eq!(find_innermost_cut(&self_cut(&f("a"))), Some(vec![]));
    }
}
