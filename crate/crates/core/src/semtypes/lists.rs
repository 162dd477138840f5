//! Lists `μX. I ⊕ (A ⊗ X)` and streams `νX. I & (A ⊗ X)`, truncated to a
//! finite length.
//!
//! A list of length `n` keeps its `j`-th value on port `r^j ∘ l` and its
//! `j`-th constructor choice on `r^j`. Consumers follow the same spine.

use alloc::vec;
use alloc::vec::Vec;

use super::{rpow, RepPER, SemError, SemType};
use crate::combinators::{choice, tensor};
use crate::names::{Action, Name, Renaming};
use crate::semantics::ExplorationBudget;
use crate::syntax::Term;

/// `ᾱ.0` for the empty list, `β̄.(P ⊗ Q)` for `P :: Q`.
pub fn list_realizer(values: &[Term]) -> Term {
    values.iter().rev().fold(co(Name::ALPHA, Term::nil()), |tail, p| co(Name::BETA, tensor(p.clone(), tail)))
}

fn co(n: Name, p: Term) -> Term {
    Term::prefix(Action::single(n.negative()), p)
}

fn at(n: Name, j: usize) -> Action {
    let coded = rpow(j).apply_name(n).expect("codings are total");
    Action::single(coded.positive())
}

/// `P_i = α_i.Q_i + β_i.P_{i+1}` where `α_i, β_i` sit on port `r^i`, with
/// the last stage keeping only its `α` branch. `family[n]` consumes the
/// values of a length-`n` list, on ports `r^j ∘ l` for `j < n`.
pub fn list_consumer(family: &[Term]) -> Term {
    let Some((last, rest)) = family.split_last() else { return Term::nil() };
    let n = rest.len();
    let tail = Term::prefix(at(Name::ALPHA, n), last.clone());
    rest.iter()
        .enumerate()
        .rev()
        .fold(tail, |next, (i, q)| Term::sum([(at(Name::ALPHA, i), q.clone()), (at(Name::BETA, i), next)]))
}

/// `N` placed on the value port of every element of a length-`n` list.
fn uniform_consumer(n_rep: &Term, len: usize) -> Term {
    (0..len).fold(Term::nil(), |acc, j| {
        let port = Renaming::compose(rpow(j), Renaming::lcode());
        Term::par(acc, Term::rename(n_rep.clone(), port))
    })
}

/// A finite list type and the element classes behind each positive class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListType {
    pub ty: SemType,
    /// `elements[c]` lists the classes of `A` making up positive class `c`.
    pub elements: Vec<Vec<usize>>,
}

fn sequences(classes: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                (0..classes).map(move |c| {
                    let mut s = s.clone();
                    s.push(c);
                    s
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Lists over `a` of length at most `max_len`. Negatives are the consumer
/// chains that apply one negative class of `a` to every element.
pub fn list_type_example(a: &SemType, max_len: usize, budget: ExplorationBudget) -> Result<ListType, SemError> {
    let elements = sequences(a.pos.len(), max_len);
    let pos = elements
        .iter()
        .map(|s| {
            let values: Vec<Term> = s.iter().map(|c| a.pos.rep(*c).clone()).collect();
            vec![list_realizer(&values)]
        })
        .collect();
    let pos = RepPER::new(pos, budget)?;
    let consumers = a
        .neg
        .reps()
        .map(|n| list_consumer(&(0..=max_len).map(|len| uniform_consumer(n, len)).collect::<Vec<_>>()))
        .collect();
    let neg = RepPER::partition(consumers, budget)?;
    Ok(ListType { ty: SemType { pos, neg, interface: None }, elements })
}

/// A stream truncated after its values: `α.0 + β.(P ⊗ S)`, ending in `α.0`.
pub fn stream_realizer(values: &[Term]) -> Term {
    let stop = Term::prefix(Action::single(Name::ALPHA.positive()), Term::nil());
    values.iter().rev().fold(stop, |tail, p| choice(Term::nil(), tensor(p.clone(), tail)))
}

/// Streams over `a` truncated at `depth`. Negatives stop (`ᾱ.0`) or take a
/// head and continue (`β̄.(N ⊗ C)`), at most `depth` times.
pub fn stream_type_example(a: &SemType, depth: usize, budget: ExplorationBudget) -> Result<ListType, SemError> {
    let elements: Vec<Vec<usize>> = sequences(a.pos.len(), depth).into_iter().filter(|s| s.len() == depth).collect();
    let pos = elements
        .iter()
        .map(|s| {
            let values: Vec<Term> = s.iter().map(|c| a.pos.rep(*c).clone()).collect();
            vec![stream_realizer(&values)]
        })
        .collect();
    let pos = RepPER::new(pos, budget)?;
    let mut stage = vec![co(Name::ALPHA, Term::nil())];
    let mut all = stage.clone();
    for _ in 0..depth {
        stage = stage.iter().flat_map(|c| a.neg.reps().map(move |n| co(Name::BETA, tensor(n.clone(), c.clone())))).collect();
        all.extend(stage.iter().cloned());
    }
    let neg = RepPER::partition(all, budget)?;
    Ok(ListType { ty: SemType { pos, neg, interface: None }, elements })
}
