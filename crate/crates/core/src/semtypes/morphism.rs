//! Morphisms of the realizability category and instance-level checks of its
//! laws.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{class_map, dual, with_type, SemError, SemType};
use crate::combinators::{identity_wire, inj_l, inj_r, lapp, pairing, rapp, seq, swap_renaming, try_identity_wire};
use crate::semantics::{ExplorationBudget, StepError, Tri};
use crate::syntax::Term;

/// A realizer together with the class maps it tracks: `forward[i]` is the
/// target positive class of source positive class `i`, `backward[j]` the
/// source negative class of target negative class `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: SemType,
    pub target: SemType,
    pub realizer: Term,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

impl Morphism {
    pub fn same_maps(&self, other: &Morphism) -> bool {
        self.forward == other.forward && self.backward == other.backward
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Why a class could not be mapped. `member` indexes within the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapFailure {
    Outside { class: usize, member: usize },
    /// Equivalent inputs landed in different classes.
    Inconsistent { class: usize, member: usize, expected: usize, found: usize },
    Unknown { class: usize, member: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismWitness {
    pub direction: Direction,
    pub failure: MapFailure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum MorphismCheck {
    Yes(Morphism),
    No(MorphismWitness),
    Unknown(MorphismWitness),
}

impl MorphismCheck {
    pub fn morphism(self) -> Option<Morphism> {
        match self {
            MorphismCheck::Yes(m) => Some(m),
            _ => None,
        }
    }
}

/// Checks that `p` carries `a` positives to `b` positives by `⟨Q|p⟩` and
/// `b` negatives to `a` negatives by `⟨p|R⟩`, respecting classes.
pub fn is_morphism(p: &Term, a: &SemType, b: &SemType, budget: ExplorationBudget) -> Result<MorphismCheck, StepError> {
    let verdict = |direction, failure| match failure {
        MapFailure::Unknown { .. } => MorphismCheck::Unknown(MorphismWitness { direction, failure }),
        _ => MorphismCheck::No(MorphismWitness { direction, failure }),
    };
    let forward = match class_map(&a.pos, &b.pos, |q| lapp(q.clone(), p.clone()), budget)? {
        Ok(m) => m,
        Err(f) => return Ok(verdict(Direction::Forward, f)),
    };
    let backward = match class_map(&b.neg, &a.neg, |r| rapp(p.clone(), r.clone()), budget)? {
        Ok(m) => m,
        Err(f) => return Ok(verdict(Direction::Backward, f)),
    };
    Ok(MorphismCheck::Yes(Morphism { source: a.clone(), target: b.clone(), realizer: p.clone(), forward, backward }))
}

fn expect_morphism(check: MorphismCheck, what: &str) -> Result<Morphism, SemError> {
    match check {
        MorphismCheck::Yes(m) => Ok(m),
        MorphismCheck::No(w) => Err(SemError::NotAPer { what: format!("{what} is not a morphism: {w:?}") }),
        MorphismCheck::Unknown(_) => Err(SemError::Budget { what: String::from(what) }),
    }
}

/// The identity wire on `a`, verified. Needs a finite interface.
pub fn identity(a: &SemType, budget: ExplorationBudget) -> Result<Morphism, SemError> {
    let sigma = a.interface.as_ref().ok_or(SemError::NotAPer { what: String::from("identity on an unbounded interface") })?;
    let wire = try_identity_wire(sigma, crate::combinators::DEFAULT_WIRE_CAP)
        .map_err(|e| SemError::Budget { what: format!("identity wire: {e}") })?;
    expect_morphism(is_morphism(&wire, a, a, budget)?, "identity")
}

/// `f ; g`, verified.
pub fn compose(f: &Morphism, g: &Morphism, budget: ExplorationBudget) -> Result<MorphismCheck, StepError> {
    is_morphism(&seq(f.realizer.clone(), g.realizer.clone()), &f.source, &g.target, budget)
}

/// `f⊥ : B⊥ → A⊥`, realized by swapping the two halves.
pub fn dual_morphism(f: &Morphism, budget: ExplorationBudget) -> Result<MorphismCheck, StepError> {
    let p = Term::rename(f.realizer.clone(), swap_renaming());
    is_morphism(&p, &dual(&f.target), &dual(&f.source), budget)
}

/// `⟨f, g⟩ : C → A & B`.
pub fn pair(f: &Morphism, g: &Morphism, budget: ExplorationBudget) -> Result<MorphismCheck, SemError> {
    let target = with_type(&f.target, &g.target, budget)?;
    Ok(is_morphism(&pairing(f.realizer.clone(), g.realizer.clone()), &f.source, &target, budget)?)
}

/// The projection `A & B → A` (`right = false`) or `→ B`, verified.
pub fn projection(a: &SemType, b: &SemType, right: bool, budget: ExplorationBudget) -> Result<Morphism, SemError> {
    let prod = with_type(a, b, budget)?;
    let (part, realizer) = if right {
        (b, inj_r(identity_wire_of(b)?))
    } else {
        (a, inj_l(identity_wire_of(a)?))
    };
    expect_morphism(is_morphism(&realizer, &prod, part, budget)?, "projection")
}

fn identity_wire_of(a: &SemType) -> Result<Term, SemError> {
    let sigma = a.interface.as_ref().ok_or(SemError::NotAPer { what: String::from("wire on an unbounded interface") })?;
    if sigma.len() > crate::combinators::DEFAULT_WIRE_CAP {
        return Err(SemError::Budget { what: format!("wire over {} names", sigma.len()) });
    }
    Ok(identity_wire(sigma))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    LeftIdentity,
    RightIdentity,
    Associativity,
    /// Composites track the composite class maps.
    Functoriality,
    DualityInvolution,
    /// `f⊥` tracks `(f⁻, f⁺)`.
    DualitySwap,
    ProductExistence,
    ProductUniqueness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: Law,
    pub subject: String,
    /// `Unknown` when a composite could not be classified within budget.
    pub outcome: Tri,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == Tri::Yes)
    }

    fn record(&mut self, law: Law, subject: String, outcome: Result<bool, Tri>) {
        let outcome = match outcome {
            Ok(true) => Tri::Yes,
            Ok(false) => Tri::No,
            Err(t) => t,
        };
        self.checks.push(LawCheck { law, subject, outcome });
    }
}

/// `Err(No)` for a realizer that is not a morphism, `Err(Unknown)` when
/// undecided.
fn decide(c: MorphismCheck) -> Result<Morphism, Tri> {
    match c {
        MorphismCheck::Yes(m) => Ok(m),
        MorphismCheck::No(_) => Err(Tri::No),
        MorphismCheck::Unknown(_) => Err(Tri::Unknown),
    }
}

fn both(a: Result<bool, Tri>, b: Result<bool, Tri>) -> Result<bool, Tri> {
    match (a, b) {
        (Ok(x), Ok(y)) => Ok(x && y),
        (Ok(false), _) | (_, Ok(false)) | (Err(Tri::No), _) | (_, Err(Tri::No)) => Ok(false),
        _ => Err(Tri::Unknown),
    }
}

fn after(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|i| g[*i]).collect()
}

/// Checks, on the given instance, the identity and associativity laws, the
/// duality involution, and the universal property of `&` for every pair of
/// morphisms with a common source. A construction that is not a morphism
/// fails its check; one left undecided by the budget is recorded as unknown.
pub fn check_category_laws(
    types: &[SemType],
    morphisms: &[Morphism],
    budget: ExplorationBudget,
) -> Result<LawReport, SemError> {
    let mut report = LawReport::default();
    for (ti, t) in types.iter().enumerate() {
        let id = identity(t, budget)?;
        let ok = id.forward.iter().enumerate().all(|(i, j)| i == *j) && id.backward.iter().enumerate().all(|(i, j)| i == *j);
        report.record(Law::LeftIdentity, format!("id on type {ti} tracks identity maps"), Ok(ok));
    }
    for (fi, f) in morphisms.iter().enumerate() {
        let left = decide(compose(&identity(&f.source, budget)?, f, budget)?).map(|m| m.same_maps(f));
        report.record(Law::LeftIdentity, format!("id;f{fi}"), left);
        let right = decide(compose(f, &identity(&f.target, budget)?, budget)?).map(|m| m.same_maps(f));
        report.record(Law::RightIdentity, format!("f{fi};id"), right);

        let fd = decide(dual_morphism(f, budget)?);
        let swap = fd.as_ref().map_err(|t| *t).map(|d| d.forward == f.backward && d.backward == f.forward);
        report.record(Law::DualitySwap, format!("f{fi}⊥"), swap);
        let back = match &fd {
            Ok(d) => decide(dual_morphism(d, budget)?).map(|m| m.same_maps(f)),
            Err(t) => Err(*t),
        };
        report.record(Law::DualityInvolution, format!("(f{fi}⊥)⊥"), back);
    }
    for (fi, f) in morphisms.iter().enumerate() {
        for (gi, g) in morphisms.iter().enumerate() {
            if f.target != g.source {
                continue;
            }
            let fg = decide(compose(f, g, budget)?);
            let expect_fwd = after(&f.forward, &g.forward);
            let expect_bwd = after(&g.backward, &f.backward);
            let functorial = fg.as_ref().map_err(|t| *t).map(|m| m.forward == expect_fwd && m.backward == expect_bwd);
            report.record(Law::Functoriality, format!("f{fi};f{gi}"), functorial);
            for (hi, h) in morphisms.iter().enumerate() {
                if g.target != h.source {
                    continue;
                }
                let l = match &fg {
                    Ok(fg) => decide(compose(fg, h, budget)?),
                    Err(t) => Err(*t),
                };
                let r = match decide(compose(g, h, budget)?) {
                    Ok(gh) => decide(compose(f, &gh, budget)?),
                    Err(t) => Err(t),
                };
                let ok = match (&l, &r) {
                    (Ok(l), Ok(r)) => Ok(l.same_maps(r)),
                    _ => both(l.map(|_| true), r.map(|_| true)),
                };
                report.record(Law::Associativity, format!("(f{fi};f{gi});f{hi}"), ok);
            }
        }
    }
    for (fi, f) in morphisms.iter().enumerate() {
        for (gi, g) in morphisms.iter().enumerate() {
            if f.source != g.source || f.target.interface.is_none() || g.target.interface.is_none() {
                continue;
            }
            let fg = match decide(pair(f, g, budget)?) {
                Ok(m) => m,
                Err(t) => {
                    report.record(Law::ProductExistence, format!("<f{fi},f{gi}>"), Err(t));
                    continue;
                }
            };
            let p1 = projection(&f.target, &g.target, false, budget)?;
            let p2 = projection(&f.target, &g.target, true, budget)?;
            let first = decide(compose(&fg, &p1, budget)?).map(|m| m.same_maps(f));
            let second = decide(compose(&fg, &p2, budget)?).map(|m| m.same_maps(g));
            report.record(Law::ProductExistence, format!("<f{fi},f{gi}>;π"), both(first, second));
            // Any listed h into the product that projects to f and g has
            // the pairing's class maps.
            for (hi, h) in morphisms.iter().enumerate() {
                if h.source != fg.source || h.target != fg.target {
                    continue;
                }
                let h1 = decide(compose(h, &p1, budget)?);
                let h2 = decide(compose(h, &p2, budget)?);
                if h1.is_ok_and(|m| m.same_maps(f)) && h2.is_ok_and(|m| m.same_maps(g)) {
                    report.record(Law::ProductUniqueness, format!("f{hi} = <f{fi},f{gi}>"), Ok(h.same_maps(&fg)));
                }
            }
        }
    }
    Ok(report)
}
