//! Process combinators: tensor, applications, composition, identity wires,
//! pairing and injections, and the replicator.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::names::{Action, Label, Name, Renaming, Restriction};
use crate::syntax::Term;

/// Largest alphabet accepted by [`identity_wire`]; the wire has `2^(2n) - 1` summands.
pub const DEFAULT_WIRE_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CombinatorError {
    AlphabetTooLarge { size: usize, cap: usize },
}

impl fmt::Display for CombinatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinatorError::AlphabetTooLarge { size, cap } => {
                write!(f, "alphabet of {size} names exceeds the wire cap of {cap}")
            }
        }
    }
}

impl core::error::Error for CombinatorError {}

/// `P ⊗ Q = P[l] | Q[r]`.
pub fn tensor(p: Term, q: Term) -> Term {
    Term::par(Term::rename(p, Renaming::lcode()), Term::rename(q, Renaming::rcode()))
}

/// Left application `⟨Q|P⟩ = ((Q[l] | P) \ Ll)[r⁻¹]`.
pub fn lapp(q: Term, p: Term) -> Term {
    let inner = Term::restrict(Term::par(Term::rename(q, Renaming::lcode()), p), Restriction::left());
    Term::rename(inner, Renaming::rcode().inverse())
}

/// Right application `⟨P|R⟩ = ((P | R[r]) \ Lr)[l⁻¹]`.
pub fn rapp(p: Term, r: Term) -> Term {
    let inner = Term::restrict(Term::par(p, Term::rename(r, Renaming::rcode())), Restriction::right());
    Term::rename(inner, Renaming::lcode().inverse())
}

/// Composition `P;Q = ((P[φ12] | Q[φ23]) \ N2)[φ13⁻¹]`.
pub fn seq(p: Term, q: Term) -> Term {
    let inner = Term::par(Term::rename(p, Renaming::phi(1, 2)), Term::rename(q, Renaming::phi(2, 3)));
    Term::rename(Term::restrict(inner, Restriction::third(2)), Renaming::phi(1, 3).inverse())
}

/// All nonempty label sets over `Σ ∪ Σ̄`, in a fixed order.
pub fn nonempty_actions(sigma: &BTreeSet<Name>) -> Vec<Action> {
    let labels: Vec<Label> = sigma.iter().flat_map(|n| [n.positive(), n.negative()]).collect();
    (1u64..(1u64 << labels.len()))
        .map(|mask| {
            Action::new(labels.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| *l))
        })
        .collect()
}

/// The identity wire over `Σ`: `rec X. Σ_{a ∈ Act₊(Σ)} (l(a) ∪ r(ā)).X`.
pub fn try_identity_wire(sigma: &BTreeSet<Name>, cap: usize) -> Result<Term, CombinatorError> {
    if sigma.len() > cap {
        return Err(CombinatorError::AlphabetTooLarge { size: sigma.len(), cap });
    }
    let x = "I";
    let l = Renaming::lcode();
    let r = Renaming::rcode();
    let branches = nonempty_actions(sigma).into_iter().map(|a| {
        let left = l.apply_action(&a).expect("codings are total");
        let right = r.apply_action(&a.bar()).expect("codings are total");
        (left.union(&right), Term::var(x))
    });
    Ok(Term::rec(x, Term::sum(branches)))
}

/// [`try_identity_wire`] with [`DEFAULT_WIRE_CAP`]; panics above the cap.
pub fn identity_wire(sigma: &BTreeSet<Name>) -> Term {
    try_identity_wire(sigma, DEFAULT_WIRE_CAP).unwrap_or_else(|e| panic!("{e}"))
}

/// `⟨P,Q⟩ = r(α).P + r(β).Q`: waits for a choice on its right port.
pub fn pairing(p: Term, q: Term) -> Term {
    Term::sum([
        (Action::single(Name::ALPHA.r_code().positive()), p),
        (Action::single(Name::BETA.r_code().positive()), q),
    ])
}

/// Left injection: emits `~l(α)` so it meets a pairing's right port under composition.
pub fn inj_l(p: Term) -> Term {
    Term::prefix(Action::single(Name::ALPHA.l_code().negative()), p)
}

/// Right injection: emits `~l(β)`.
pub fn inj_r(q: Term) -> Term {
    Term::prefix(Action::single(Name::BETA.l_code().negative()), q)
}

/// Uncoded external choice `α.P + β.Q`.
pub fn choice(p: Term, q: Term) -> Term {
    Term::sum([
        (Action::single(Name::ALPHA.positive()), p),
        (Action::single(Name::BETA.positive()), q),
    ])
}

/// `!P = rec X. ω.0 + δ.P + γ.(X[l] | X[r])`.
pub fn bang(p: Term) -> Term {
    let x = fresh_var(&p, "B");
    let copies = Term::par(
        Term::rename(Term::var(&x), Renaming::lcode()),
        Term::rename(Term::var(&x), Renaming::rcode()),
    );
    Term::rec(
        &x,
        Term::sum([
            (Action::single(Name::OMEGA.positive()), Term::nil()),
            (Action::single(Name::DELTA.positive()), p),
            (Action::single(Name::GAMMA.positive()), copies),
        ]),
    )
}

/// A process variable name not free in `p`.
pub fn fresh_var(p: &Term, base: &str) -> String {
    let free = p.free_vars();
    let mut x = String::from(base);
    let mut i = 0;
    while free.contains(&x) {
        i += 1;
        x = format!("{base}{i}");
    }
    x
}

/// Swaps the two halves: `l(x) ↦ r(x)`, `r(x) ↦ l(x)`.
pub fn swap_renaming() -> Renaming {
    Renaming::Split(alloc::vec![Renaming::rcode(), Renaming::lcode()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{failures_equiv, weak_bisim};
    use crate::names::Registry;
    use crate::semantics::{step, ExplorationBudget, Tri};
    use crate::syntax::parse_term;
    use alloc::vec;

    #[test]
    fn wire_summands() {
        let sigma: BTreeSet<Name> = [Name::ALPHA].into_iter().collect();
        let w = identity_wire(&sigma);
        let Term::Rec(_, body) = &w else { panic!() };
        let Term::Sum(bs) = &**body else { panic!() };
        assert_eq!(bs.len(), 3);
        let a = Name::ALPHA;
        assert!(bs
            .iter()
            .any(|(act, _)| *act == Action::new([a.l_code().positive(), a.r_code().negative()])));
        let two: BTreeSet<Name> = [Name::ALPHA, Name::BETA].into_iter().collect();
        assert_eq!(nonempty_actions(&two).len(), 15);
    }

    #[test]
    fn wire_cap() {
        let mut reg = Registry::new();
        let big: BTreeSet<Name> = (0..7).map(|i| reg.intern(&format!("x{i}")).unwrap()).collect();
        assert_eq!(
            try_identity_wire(&big, DEFAULT_WIRE_CAP),
            Err(CombinatorError::AlphabetTooLarge { size: 7, cap: DEFAULT_WIRE_CAP })
        );
    }

    #[test]
    fn bang_avoids_capture() {
        let p = Term::rec("B", Term::prefix(Action::tau(), Term::var("B")));
        assert!(bang(p).is_closed());
        assert_eq!(fresh_var(&Term::var("B"), "B"), "B1");
    }

    #[test]
    fn swap_is_an_involution_on_names() {
        let s = swap_renaming();
        for c in 0..200u64 {
            let n = Name(c);
            assert_eq!(s.apply_name(s.apply_name(n).unwrap()), Some(n));
        }
        assert_eq!(s.apply_name(Name(10)), Some(Name(11)));
    }


    const B: ExplorationBudget = ExplorationBudget { max_states: 2000, max_depth: Some(4) };

    fn feq(p: &Term, q: &Term) -> bool {
        failures_equiv(p, q, B).unwrap().is_equal()
    }

    #[test]
    fn tensor_steps() {
        let mut reg = Registry::new();
        let t = tensor(parse_term("{alpha}.0", &mut reg).unwrap(), parse_term("{beta}.0", &mut reg).unwrap());
        let acts: Vec<Action> = step(&t).unwrap().into_iter().map(|(a, _)| a).collect();
        let la = Name::ALPHA.l_code().positive();
        let rb = Name::BETA.r_code().positive();
        let mut expect = vec![Action::single(la), Action::single(rb), Action::new([la, rb])];
        expect.sort();
        assert_eq!(acts, expect);
        assert!(feq(&tensor(Term::nil(), Term::nil()), &Term::nil()));
    }

    #[test]
    fn identity_laws_on_small_instances() {
        let mut reg = Registry::new();
        let a: BTreeSet<Name> = [Name::ALPHA].into_iter().collect();
        let p = parse_term("{alpha}.0", &mut reg).unwrap();
        assert!(feq(&lapp(p.clone(), identity_wire(&a)), &p));
        assert!(feq(&rapp(identity_wire(&a), p.clone()), &p));
        // Composition identities need the term to live on the coded ports of the alphabet.
        let c = parse_term("{l(alpha)}.{~r(alpha)}.0 + {r(alpha), ~l(alpha)}.0", &mut reg).unwrap();
        assert!(feq(&seq(identity_wire(&a), c.clone()), &c));
        assert!(feq(&seq(c.clone(), identity_wire(&a)), &c));
        assert!(!feq(&seq(identity_wire(&a), p.clone()), &p));
        let q = parse_term("{~alpha}.{alpha}.0 + {alpha, ~alpha}.0", &mut reg).unwrap();
        assert!(feq(&lapp(q.clone(), identity_wire(&a)), &q));
    }

    #[test]
    fn applications_consume_one_half() {
        let mut reg = Registry::new();
        let b = parse_term("{beta}.0", &mut reg).unwrap();
        assert!(feq(&lapp(Term::nil(), tensor(Term::nil(), b.clone())), &b));
        assert!(feq(&rapp(tensor(b.clone(), Term::nil()), Term::nil()), &b));
        let qa = parse_term("{~alpha}.0", &mut reg).unwrap();
        let pa = parse_term("{alpha}.0", &mut reg).unwrap();
        assert!(feq(&lapp(qa.clone(), tensor(pa.clone(), b.clone())), &b));
        assert!(feq(&rapp(tensor(b.clone(), pa), qa), &b));
    }

    #[test]
    fn pairing_and_injections() {
        let mut reg = Registry::new();
        let p = parse_term("{l(a)}.{r(b)}.0", &mut reg).unwrap();
        let q = parse_term("{l(a)}.{r(c)}.0", &mut reg).unwrap();
        let r = parse_term("{l(b)}.{r(d)}.0", &mut reg).unwrap();
        let lhs = seq(pairing(p.clone(), q.clone()), inj_l(r.clone()));
        assert!(feq(&lhs, &seq(p.clone(), r.clone())));
        assert_eq!(weak_bisim(&lhs, &seq(p.clone(), r.clone()), B), Ok(Tri::Yes));
        let rhs = seq(pairing(p.clone(), q.clone()), inj_r(r.clone()));
        assert!(feq(&rhs, &seq(q.clone(), r.clone())));
    }

    #[test]
    fn bang_unfolds() {
        let mut reg = Registry::new();
        let p = parse_term("{alpha}.0", &mut reg).unwrap();
        let b = bang(p.clone());
        let ts = step(&b).unwrap();
        let acts: Vec<Action> = ts.iter().map(|(a, _)| a.clone()).collect();
        assert_eq!(
            acts,
            [
                Action::single(Name::OMEGA.positive()),
                Action::single(Name::DELTA.positive()),
                Action::single(Name::GAMMA.positive()),
            ]
        );
        assert_eq!(ts[0].1, Term::nil());
        assert_eq!(ts[1].1, p);
        assert_eq!(ts[2].1, Term::par(Term::rename(b.clone(), Renaming::lcode()), Term::rename(b, Renaming::rcode())));
    }
}
