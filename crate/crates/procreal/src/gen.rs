//! Seeded generators: random finite-state terms, one-hole contexts, small
//! atom types, and an exhaustive enumeration of small terms.

use std::collections::BTreeSet;

use procreal_core::combinators::{identity_wire, lapp, rapp, swap_renaming};
use procreal_core::semantics::ExplorationBudget;
use procreal_core::semtypes::{RepPER, SemError, SemType};
use procreal_core::{Action, Label, Name, Registry, Renaming, Restriction, Term};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labels(names: &[Name]) -> Vec<Label> {
    names.iter().flat_map(|n| [n.positive(), n.negative()]).collect()
}

/// A visible action of one or two labels.
fn action(rng: &mut ChaCha8Rng, names: &[Name]) -> Action {
    let ls = labels(names);
    let first = *ls.choose(rng).unwrap();
    if rng.random_bool(0.25) {
        Action::new([first, *ls.choose(rng).unwrap()])
    } else {
        Action::single(first)
    }
}

/// Closed, guarded, finite-state terms over `names`. Recursion never goes
/// through `|`, restriction or renaming, so every term has finitely many
/// states.
#[derive(Clone, Debug)]
pub struct TermGen {
    pub names: Vec<Name>,
    pub depth: usize,
}

impl TermGen {
    pub fn new(names: Vec<Name>, depth: usize) -> TermGen {
        assert!(!names.is_empty());
        TermGen { names, depth }
    }

    pub fn term(&self, rng: &mut ChaCha8Rng) -> Term {
        self.go(rng, self.depth, false)
    }

    fn go(&self, rng: &mut ChaCha8Rng, depth: usize, in_rec: bool) -> Term {
        if depth == 0 {
            return match rng.random_range(0..3) {
                0 if in_rec => Term::var("X"),
                0 => Term::nil(),
                _ => Term::prefix(action(rng, &self.names), Term::nil()),
            };
        }
        let d = depth - 1;
        match rng.random_range(0..10) {
            0..=2 => Term::prefix(action(rng, &self.names), self.go(rng, d, in_rec)),
            3 | 4 => {
                let k = rng.random_range(2..=3);
                Term::sum((0..k).map(|_| (action(rng, &self.names), self.go(rng, d, in_rec))).collect::<Vec<_>>())
            }
            5 if in_rec => Term::var("X"),
            5 | 6 => Term::par(self.go(rng, d, false), self.go(rng, d, false)),
            7 => {
                let n = *self.names.choose(rng).unwrap();
                Term::restrict(self.go(rng, d, false), Restriction::names([n]))
            }
            8 if !in_rec => {
                let body = Term::sum([
                    (action(rng, &self.names), Term::var("X")),
                    (action(rng, &self.names), self.go(rng, d, true)),
                ]);
                Term::rec("X", body)
            }
            _ => Term::rename(self.go(rng, d, false), swap_pair(&self.names)),
        }
    }
}

/// Exchanges the first two names (the identity on a single name).
fn swap_pair(names: &[Name]) -> Renaming {
    match names {
        [a, b, ..] => Renaming::Map([(*a, *b), (*b, *a)].into_iter().chain(names[2..].iter().map(|n| (*n, *n))).collect()),
        [a] => Renaming::Map([(*a, *a)].into()),
        [] => Renaming::Identity,
    }
}

/// A one-hole context, applied from the inside out.
#[derive(Clone, Debug)]
pub enum Frame {
    Prefix(Action),
    /// `a.[] + b.Q`
    Sum(Action, Action, Term),
    ParLeft(Term),
    ParRight(Term),
    Restrict(Restriction),
    Rename(Renaming),
    /// `⟨Q|[]⟩`
    Lapp(Term),
    /// `⟨[]|R⟩`
    Rapp(Term),
}

#[derive(Clone, Debug)]
pub struct Context(pub Vec<Frame>);

impl Context {
    pub fn fill(&self, p: &Term) -> Term {
        self.0.iter().fold(p.clone(), |hole, f| match f {
            Frame::Prefix(a) => Term::prefix(a.clone(), hole),
            Frame::Sum(a, b, q) => Term::sum([(a.clone(), hole), (b.clone(), q.clone())]),
            Frame::ParLeft(q) => Term::par(hole, q.clone()),
            Frame::ParRight(q) => Term::par(q.clone(), hole),
            Frame::Restrict(l) => Term::restrict(hole, l.clone()),
            Frame::Rename(f) => Term::rename(hole, f.clone()),
            Frame::Lapp(q) => lapp(q.clone(), hole),
            Frame::Rapp(r) => rapp(hole, r.clone()),
        })
    }
}

impl TermGen {
    /// A context of one to `frames` frames whose side terms come from `self`.
    /// Renaming frames use total codings, so they apply after application
    /// frames have recoded the hole's names.
    pub fn context(&self, rng: &mut ChaCha8Rng, frames: usize) -> Context {
        let small = TermGen { names: self.names.clone(), depth: self.depth.min(1) };
        let k = rng.random_range(1..=frames.max(1));
        Context(
            (0..k)
                .map(|_| match rng.random_range(0..8) {
                    0 => Frame::Prefix(action(rng, &self.names)),
                    1 => Frame::Sum(action(rng, &self.names), action(rng, &self.names), small.term(rng)),
                    2 => Frame::ParLeft(small.term(rng)),
                    3 => Frame::ParRight(small.term(rng)),
                    4 => Frame::Restrict(Restriction::names([*self.names.choose(rng).unwrap()])),
                    5 => Frame::Rename(
                        [Renaming::lcode(), Renaming::rcode(), swap_renaming()][rng.random_range(0..3)].clone(),
                    ),
                    6 => Frame::Lapp(small.term(rng)),
                    _ => Frame::Rapp(small.term(rng)),
                })
                .collect(),
        )
    }

    /// A term syntactically different from `p` but failures-equivalent to
    /// it by a standard law.
    pub fn equivalent_variant(&self, rng: &mut ChaCha8Rng, p: &Term) -> Term {
        let sigma: BTreeSet<Name> = self.names.iter().copied().collect();
        match rng.random_range(0..6) {
            0 => Term::par(p.clone(), Term::nil()),
            1 => Term::prefix(Action::tau(), p.clone()),
            2 => lapp(p.clone(), identity_wire(&sigma)),
            3 => rapp(identity_wire(&sigma), p.clone()),
            4 => {
                let f = swap_pair(&self.names);
                Term::rename(Term::rename(p.clone(), f.clone()), f)
            }
            _ => match p {
                Term::Sum(bs) if !bs.is_empty() => Term::Sum(bs.iter().chain(bs).cloned().collect()),
                Term::Prefix(a, q) => Term::Sum(vec![(a.clone(), q.clone()), (a.clone(), q.clone())]),
                _ => Term::par(Term::nil(), p.clone()),
            },
        }
    }
}

/// Every closed guarded term of size at most `max_size` whose actions come
/// from `actions`, with sum branches in sorted order, restrictions to one
/// name, the exchange of the first two names, and at most one recursion
/// variable. Recursion does not pass through `|`, restriction or renaming.
pub fn enumerate_terms(max_size: usize, names: &[Name], actions: &[Action]) -> Vec<Term> {
    let mut out = Vec::new();
    let e = Enum { names, actions };
    for size in 1..=max_size {
        out.extend(e.terms(size, Scope::Closed));
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    Closed,
    /// Inside `rec X`, before any guard.
    Unguarded,
    Guarded,
}

struct Enum<'a> {
    names: &'a [Name],
    actions: &'a [Action],
}

impl Enum<'_> {
    fn terms(&self, size: usize, scope: Scope) -> Vec<Term> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        if size == 1 {
            out.push(Term::nil());
            if scope == Scope::Guarded {
                out.push(Term::var("X"));
            }
            return out;
        }
        let inner = if scope == Scope::Closed { Scope::Closed } else { Scope::Guarded };
        // Prefixes, including τ.
        for p in self.terms(size - 1, inner) {
            out.push(Term::prefix(Action::tau(), p.clone()));
            for a in self.actions {
                out.push(Term::prefix(a.clone(), p.clone()));
            }
        }
        // Sums of at least two branches, branches sorted.
        for branches in self.branch_lists(size - 1, inner, 2) {
            out.push(Term::Sum(branches));
        }
        for p in self.terms(size - 1, Scope::Closed) {
            for n in self.names {
                out.push(Term::restrict(p.clone(), Restriction::names([*n])));
            }
            out.push(Term::rename(p.clone(), swap_pair(self.names)));
        }
        for left in 1..size - 1 {
            for p in self.terms(left, Scope::Closed) {
                for q in self.terms(size - 1 - left, Scope::Closed) {
                    out.push(Term::par(p.clone(), q));
                }
            }
        }
        if scope == Scope::Closed {
            for body in self.terms(size - 1, Scope::Unguarded) {
                if body.free_vars().contains("X") {
                    out.push(Term::rec("X", body));
                }
            }
        }
        out
    }

    /// Sorted lists of at least `min` branches with total size `size`.
    fn branch_lists(&self, size: usize, scope: Scope, min: usize) -> Vec<Vec<(Action, std::sync::Arc<Term>)>> {
        let mut singles: Vec<(Action, std::sync::Arc<Term>, usize)> = Vec::new();
        for s in 1..=size {
            for p in self.terms(s, scope) {
                let p = std::sync::Arc::new(p);
                for a in self.actions {
                    singles.push((a.clone(), p.clone(), s));
                }
            }
        }
        singles.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(
            singles: &[(Action, std::sync::Arc<Term>, usize)],
            from: usize,
            left: usize,
            min: usize,
            cur: &mut Vec<(Action, std::sync::Arc<Term>)>,
            out: &mut Vec<Vec<(Action, std::sync::Arc<Term>)>>,
        ) {
            if left == 0 {
                if cur.len() >= min {
                    out.push(cur.clone());
                }
                return;
            }
            for i in from..singles.len() {
                let (a, p, s) = &singles[i];
                if *s <= left {
                    cur.push((a.clone(), p.clone()));
                    go(singles, i, left - s, min, cur, out);
                    cur.pop();
                }
            }
        }
        go(&singles, 0, size, min, &mut cur, &mut out);
        out
    }
}

/// A small atom type over the single name `name`: up to `classes`
/// positive classes of finite terms over `name`, and as many negative
/// classes over its co-name. Finite terms never diverge, so the result is
/// total, and it is inhabited by construction.
pub fn small_atom_type(
    rng: &mut ChaCha8Rng,
    reg: &mut Registry,
    name: &str,
    classes: usize,
    budget: ExplorationBudget,
) -> Result<SemType, SemError> {
    let n = reg.intern(name)?;
    let side = |rng: &mut ChaCha8Rng, l: Label| -> Vec<Term> {
        let mut out = vec![Term::prefix(Action::single(l), Term::nil())];
        for _ in 0..4 * classes {
            let len = rng.random_range(0..=3);
            let mut t = Term::nil();
            for _ in 0..len {
                t = if rng.random_bool(0.3) {
                    Term::sum([(Action::single(l), t), (Action::single(l), Term::nil())])
                } else {
                    Term::prefix(Action::single(l), t)
                };
            }
            out.push(t);
        }
        out
    };
    let pos = truncate(RepPER::partition(side(rng, n.positive()), budget)?, classes);
    let neg = truncate(RepPER::partition(side(rng, n.negative()), budget)?, classes);
    SemType::new(pos, neg, Some(BTreeSet::from([n])), budget)
}

fn truncate(p: RepPER, k: usize) -> Vec<Vec<Term>> {
    (0..p.len().min(k)).map(|i| p.class(i).cloned().collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use procreal_core::syntax::well_formed;

    fn ab() -> (Registry, Vec<Name>) {
        let mut reg = Registry::new();
        let names = vec![reg.intern("a").unwrap(), reg.intern("b").unwrap()];
        (reg, names)
    }

    #[test]
    fn seeded_terms_repeat() {
        let (_, names) = ab();
        let g = TermGen::new(names, 4);
        let xs: Vec<Term> = (0..20).map({
            let mut r = rng(7);
            move |_| g.term(&mut r)
        }).collect();
        let g = TermGen::new(ab().1, 4);
        let mut r = rng(7);
        let ys: Vec<Term> = (0..20).map(|_| g.term(&mut r)).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().all(|t| well_formed(t).is_empty()));
    }

    #[test]
    fn enumeration_counts() {
        let (_, names) = ab();
        let acts = vec![Action::single(names[0].positive()), Action::single(names[1].negative())];
        // 0; a.0 b̄.0 τ.0, 0\a 0\b 0[f]
        let one = enumerate_terms(1, &names, &acts);
        assert_eq!(one.len(), 1);
        let two = enumerate_terms(2, &names, &acts);
        assert_eq!(two.len(), 1 + 6);
        // rec X. a.X, rec X. b̄.X and rec X. τ.X appear at size 3.
        let three = enumerate_terms(3, &names, &acts);
        assert_eq!(three.iter().filter(|t| matches!(t, Term::Rec(..))).count(), 3);
        assert!(three.iter().all(|t| well_formed(t).is_empty()));
        let set: BTreeSet<&Term> = three.iter().collect();
        assert_eq!(set.len(), three.len());
    }

    #[test]
    fn atom_types_are_total() {
        let mut reg = Registry::new();
        let mut r = rng(3);
        let b = ExplorationBudget::states(500);
        let t = small_atom_type(&mut r, &mut reg, "t0", 2, b).unwrap();
        assert!(!t.pos.is_empty() && !t.neg.is_empty());
        assert_eq!(procreal_core::semtypes::total(&t, b), Ok(procreal_core::semtypes::Totality::Total));
    }
}
