//! Names, labels, actions, and the renaming/restriction algebra.
//!
//! A [`Name`] is a single natural number. User atoms are registered in an
//! [`Registry`] and receive codes in `[ATOM_BASE, 2 * ATOM_BASE)`, so every
//! structural code produced by the left/right coding (`2n`, `2n + 1`) of an
//! atom lies above the atom range and can be printed back unambiguously.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// First code handed out to registered atoms.
pub const ATOM_BASE: u64 = 1000;

/// A channel name, identified by its code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(pub u64);

impl Name {
    /// Choice signal for the left branch of additive connectives.
    pub const ALPHA: Name = Name(ATOM_BASE);
    /// Choice signal for the right branch of additive connectives.
    pub const BETA: Name = Name(ATOM_BASE + 1);
    /// Weakening request.
    pub const OMEGA: Name = Name(ATOM_BASE + 2);
    /// Dereliction request.
    pub const DELTA: Name = Name(ATOM_BASE + 3);
    /// Contraction request.
    pub const GAMMA: Name = Name(ATOM_BASE + 4);
    /// Value-passing channel used by first-order quantifiers.
    pub const SIGMA: Name = Name(ATOM_BASE + 5);

    pub const fn code(self) -> u64 {
        self.0
    }

    /// The left injection `n ↦ 2n`.
    pub fn l_code(self) -> Name {
        Name(self.0.checked_mul(2).expect("name code overflow"))
    }

    /// The right injection `n ↦ 2n + 1`.
    pub fn r_code(self) -> Name {
        Name(
            self.0
                .checked_mul(2)
                .and_then(|c| c.checked_add(1))
                .expect("name code overflow"),
        )
    }

    pub fn positive(self) -> Label {
        Label { name: self, co: false }
    }

    pub fn negative(self) -> Label {
        Label { name: self, co: true }
    }
}

/// A name or co-name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub name: Name,
    /// `true` for the co-name `~n`.
    pub co: bool,
}

impl Label {
    pub fn new(name: Name, co: bool) -> Label {
        Label { name, co }
    }

    /// The involution `λ ↦ λ̄`.
    pub fn bar(self) -> Label {
        Label { name: self.name, co: !self.co }
    }
}

/// The raw form `#code` or `~#code`; [`Registry::action_string`] gives
/// readable names.
impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", if self.co { "~" } else { "" }, self.name.0)
    }
}

/// A finite set of labels performed simultaneously. The empty action is τ.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action(Vec<Label>);

impl Action {
    pub fn tau() -> Action {
        Action(Vec::new())
    }

    pub fn new<I: IntoIterator<Item = Label>>(labels: I) -> Action {
        let mut v: Vec<Label> = labels.into_iter().collect();
        v.sort();
        v.dedup();
        Action(v)
    }

    pub fn single(label: Label) -> Action {
        Action(alloc::vec![label])
    }

    pub fn is_tau(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    /// Pointwise involution.
    pub fn bar(&self) -> Action {
        Action::new(self.0.iter().map(|l| l.bar()))
    }

    pub fn union(&self, other: &Action) -> Action {
        Action::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn difference(&self, other: &Action) -> Action {
        Action(self.0.iter().copied().filter(|l| !other.contains(*l)).collect())
    }

    pub fn is_disjoint(&self, other: &Action) -> bool {
        self.0.iter().all(|l| !other.contains(*l))
    }

    pub fn is_subset(&self, other: &Action) -> bool {
        self.0.iter().all(|l| other.contains(*l))
    }
}

/// Maps atom identifiers to name codes and back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Registry {
    by_name: BTreeMap<String, Name>,
    by_code: BTreeMap<Name, String>,
    next: u64,
}

impl Default for Registry {
    fn default() -> Self {
        Registry::new()
    }
}

impl Registry {
    /// A registry pre-seeded with the fixed protocol atoms
    /// `alpha`, `beta`, `omega`, `delta`, `gamma`, `sigma`.
    pub fn new() -> Registry {
        let mut reg = Registry {
            by_name: BTreeMap::new(),
            by_code: BTreeMap::new(),
            next: ATOM_BASE,
        };
        for fixed in ["alpha", "beta", "omega", "delta", "gamma", "sigma"] {
            reg.intern(fixed).expect("fixed atoms fit");
        }
        reg
    }

    /// Returns the name of `atom`, registering it on first use.
    pub fn intern(&mut self, atom: &str) -> Result<Name, NameError> {
        if let Some(n) = self.by_name.get(atom) {
            return Ok(*n);
        }
        if self.next >= 2 * ATOM_BASE {
            return Err(NameError::RegistryFull);
        }
        let n = Name(self.next);
        self.next += 1;
        self.by_name.insert(atom.to_string(), n);
        self.by_code.insert(n, atom.to_string());
        Ok(n)
    }

    pub fn lookup(&self, atom: &str) -> Option<Name> {
        self.by_name.get(atom).copied()
    }

    pub fn atom_of(&self, name: Name) -> Option<&str> {
        self.by_code.get(&name).map(|s| s.as_str())
    }

    /// The name carrying value `v` on channel `chan`, e.g. `sigma_1`.
    pub fn value_name(&mut self, chan: Name, v: u32) -> Result<Name, NameError> {
        let base = self.name_string(chan);
        self.intern(&format!("{base}_{v}"))
    }

    /// Prints a name: atoms by identifier, coded names as `l(..)` / `r(..)`,
    /// anything else as `#code`.
    pub fn name_string(&self, name: Name) -> String {
        if let Some(atom) = self.atom_of(name) {
            return atom.to_string();
        }
        if name.0 >= 2 * ATOM_BASE {
            let inner = Name(name.0 / 2);
            let tag = if name.0.is_multiple_of(2) { "l" } else { "r" };
            return format!("{tag}({})", self.name_string(inner));
        }
        format!("#{}", name.0)
    }

    pub fn label_string(&self, label: Label) -> String {
        if label.co {
            format!("~{}", self.name_string(label.name))
        } else {
            self.name_string(label.name)
        }
    }

    pub fn action_string(&self, action: &Action) -> String {
        let mut s = String::from("{");
        for (i, l) in action.labels().iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&self.label_string(*l));
        }
        s.push('}');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NameError {
    RegistryFull,
    /// A label fell outside the domain of a partial renaming.
    OutsideDomain(Label),
}

impl fmt::Display for NameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NameError::RegistryFull => write!(f, "atom registry is full"),
            NameError::OutsideDomain(l) => {
                write!(f, "label {l} is outside the renaming domain")
            }
        }
    }
}

impl core::error::Error for NameError {}

/// A partial injective function on names, extended to labels by keeping the
/// polarity (so it always commutes with the involution).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Renaming {
    Identity,
    /// `n ↦ k·n + offset`, with `offset < k`.
    KWay { k: u64, offset: u64 },
    /// Dispatch on the residue: `n = k·x + i ↦ parts[i](x)` where `k = parts.len()`.
    /// Parts must have pairwise disjoint images. No parts means nowhere defined.
    Split(Vec<Renaming>),
    /// Finite partial map.
    Map(BTreeMap<Name, Name>),
    Inverse(Arc<Renaming>),
    /// `Compose(f, g)` is `f ∘ g`: apply `g` first.
    Compose(Arc<Renaming>, Arc<Renaming>),
}

impl Renaming {
    pub fn lcode() -> Renaming {
        Renaming::KWay { k: 2, offset: 0 }
    }

    pub fn rcode() -> Renaming {
        Renaming::KWay { k: 2, offset: 1 }
    }

    /// The `k`-way coding onto region `i`: `n ↦ k·n + i`.
    pub fn kway(k: u64, offset: u64) -> Renaming {
        assert!(k >= 1 && offset < k, "kway({k},{offset}) is not a coding");
        Renaming::KWay { k, offset }
    }

    /// `φ_{i,j}` with `i, j ∈ {1,2,3}` distinct: left half onto class `i`,
    /// right half onto class `j` of the mod-3 split.
    pub fn phi(i: u64, j: u64) -> Renaming {
        assert!((1..=3).contains(&i) && (1..=3).contains(&j) && i != j);
        Renaming::Split(alloc::vec![Renaming::kway(3, i - 1), Renaming::kway(3, j - 1)])
    }

    pub fn inverse(self) -> Renaming {
        match self {
            Renaming::Inverse(f) => (*f).clone(),
            Renaming::Identity => Renaming::Identity,
            f => Renaming::Inverse(Arc::new(f)),
        }
    }

    /// `f ∘ g`.
    pub fn compose(f: Renaming, g: Renaming) -> Renaming {
        match (f, g) {
            (Renaming::Identity, g) => g,
            (f, Renaming::Identity) => f,
            (f, g) => Renaming::Compose(Arc::new(f), Arc::new(g)),
        }
    }

    pub fn apply_name(&self, n: Name) -> Option<Name> {
        match self {
            Renaming::Identity => Some(n),
            Renaming::KWay { k, offset } => n
                .0
                .checked_mul(*k)
                .and_then(|c| c.checked_add(*offset))
                .map(Name),
            Renaming::Split(parts) => {
                let k = parts.len() as u64;
                if k == 0 {
                    return None;
                }
                parts[(n.0 % k) as usize].apply_name(Name(n.0 / k))
            }
            Renaming::Map(m) => m.get(&n).copied(),
            Renaming::Inverse(f) => f.invert_name(n),
            Renaming::Compose(f, g) => g.apply_name(n).and_then(|m| f.apply_name(m)),
        }
    }

    /// The inverse partial function.
    pub fn invert_name(&self, n: Name) -> Option<Name> {
        match self {
            Renaming::Identity => Some(n),
            Renaming::KWay { k, offset } => {
                if n.0 >= *offset && (n.0 - offset).is_multiple_of(*k) {
                    Some(Name((n.0 - offset) / k))
                } else {
                    None
                }
            }
            Renaming::Split(parts) => {
                let k = parts.len() as u64;
                parts.iter().enumerate().find_map(|(i, p)| {
                    p.invert_name(n)
                        .and_then(|x| x.0.checked_mul(k))
                        .and_then(|c| c.checked_add(i as u64))
                        .map(Name)
                })
            }
            Renaming::Map(m) => m.iter().find(|(_, v)| **v == n).map(|(k, _)| *k),
            Renaming::Inverse(f) => f.apply_name(n),
            Renaming::Compose(f, g) => f.invert_name(n).and_then(|m| g.invert_name(m)),
        }
    }

    pub fn apply_label(&self, l: Label) -> Option<Label> {
        self.apply_name(l.name).map(|name| Label { name, co: l.co })
    }

    pub fn in_domain(&self, l: Label) -> bool {
        self.apply_name(l.name).is_some()
    }

    /// Pointwise image of an action.
    pub fn apply_action(&self, a: &Action) -> Result<Action, NameError> {
        let mut out = Vec::with_capacity(a.len());
        for l in a.labels() {
            out.push(self.apply_label(*l).ok_or(NameError::OutsideDomain(*l))?);
        }
        Ok(Action::new(out))
    }
}

/// Sets of names closed under finite sets, residue classes, everything, and union.
/// Restricting by `L` forbids both `L` and `L̄`, so the predicate is on names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Restriction {
    Names(BTreeSet<Name>),
    /// Names with `code ≡ residue (mod modulus)`.
    Class { modulus: u64, residue: u64 },
    All,
    Union(Vec<Restriction>),
}

impl Restriction {
    /// `ℒ_l`: even codes.
    pub fn left() -> Restriction {
        Restriction::Class { modulus: 2, residue: 0 }
    }

    /// `ℒ_r`: odd codes.
    pub fn right() -> Restriction {
        Restriction::Class { modulus: 2, residue: 1 }
    }

    /// Class `i ∈ {1,2,3}` of the three-way split.
    pub fn third(i: u64) -> Restriction {
        assert!((1..=3).contains(&i));
        Restriction::Class { modulus: 3, residue: i - 1 }
    }

    pub fn names<I: IntoIterator<Item = Name>>(names: I) -> Restriction {
        Restriction::Names(names.into_iter().collect())
    }

    pub fn contains(&self, n: Name) -> bool {
        match self {
            Restriction::Names(s) => s.contains(&n),
            Restriction::Class { modulus, residue } => n.0 % modulus == *residue,
            Restriction::All => true,
            Restriction::Union(rs) => rs.iter().any(|r| r.contains(n)),
        }
    }

    /// Whether `a ∩ (L ∪ L̄) ≠ ∅`.
    pub fn blocks(&self, a: &Action) -> bool {
        a.labels().iter().any(|l| self.contains(l.name))
    }
}

/// Membership of a label (either polarity) in a restriction set.
pub fn in_restriction(set: &Restriction, label: Label) -> bool {
    set.contains(label.name)
}

pub fn apply_renaming(f: &Renaming, a: &Action) -> Result<Action, NameError> {
    f.apply_action(a)
}

pub fn compose_renamings(f: Renaming, g: Renaming) -> Renaming {
    Renaming::compose(f, g)
}

pub fn invert_renaming(f: Renaming) -> Renaming {
    f.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(c: u64) -> Label {
        Name(c).positive()
    }

    #[test]
    fn left_right_codes() {
        assert_eq!(Name(0).l_code(), Name(0));
        assert_eq!(Name(0).r_code(), Name(1));
        assert_eq!(Name(5).l_code(), Name(10));
        assert_eq!(Name(5).r_code(), Name(11));
        for m in 0..10_000u64 {
            let l = Renaming::lcode().invert_name(Name(m)).is_some();
            let r = Renaming::rcode().invert_name(Name(m)).is_some();
            assert!(l ^ r, "code {m}");
        }
    }

    #[test]
    fn phi_codes() {
        let phi13 = Renaming::phi(1, 3);
        assert_eq!(phi13.apply_name(Name(4)), Some(Name(6)));
        assert_eq!(phi13.apply_name(Name(5)), Some(Name(8)));
        for c in (1..300).step_by(3) {
            assert_eq!(phi13.invert_name(Name(c)), None);
        }
        let back = Renaming::compose(phi13.clone().inverse(), phi13);
        for c in 0..500 {
            assert_eq!(back.apply_name(Name(c)), Some(Name(c)));
        }
    }

    #[test]
    fn renaming_actions() {
        let a = Action::new([lab(3), Name(4).negative()]);
        assert_eq!(apply_renaming(&Renaming::Identity, &a).unwrap(), a);
        assert_eq!(apply_renaming(&Renaming::lcode(), &Action::tau()).unwrap(), Action::tau());
        let img = apply_renaming(&Renaming::lcode(), &a).unwrap();
        assert_eq!(img, Action::new([lab(6), Name(8).negative()]));
        assert_eq!(apply_renaming(&Renaming::lcode(), &a.bar()).unwrap(), img.bar());
    }

    #[test]
    fn inverse_and_compose() {
        let inv = invert_renaming(Renaming::lcode());
        assert_eq!(inv.apply_name(Name(7)), None);
        let id = compose_renamings(inv, Renaming::lcode());
        for c in 0..1000 {
            assert_eq!(id.apply_name(Name(c)), Some(Name(c)));
        }
        let r = Renaming::Inverse(Arc::new(Renaming::rcode()));
        assert_eq!(
            apply_renaming(&r, &Action::single(lab(4))),
            Err(NameError::OutsideDomain(lab(4)))
        );
    }

    #[test]
    fn restriction_membership() {
        assert!(in_restriction(&Restriction::left(), lab(8)));
        assert!(in_restriction(&Restriction::left(), Name(8).negative()));
        assert!(!in_restriction(&Restriction::left(), lab(9)));
        assert!(in_restriction(&Restriction::third(2), lab(4)));
        let u = Restriction::Union(alloc::vec![Restriction::names([Name(9)]), Restriction::left()]);
        assert!(u.contains(Name(9)) && u.contains(Name(2)) && !u.contains(Name(11)));
        assert!(Restriction::All.blocks(&Action::single(lab(1))));
        assert!(!Restriction::All.blocks(&Action::tau()));
    }

    #[test]
    fn printing_coded_names() {
        let mut reg = Registry::new();
        let a = reg.intern("a").unwrap();
        assert_eq!(reg.name_string(a.l_code()), "l(a)");
        assert_eq!(reg.name_string(a.r_code().l_code()), "l(r(a))");
        assert_eq!(reg.label_string(Name::ALPHA.negative()), "~alpha");
        assert_eq!(reg.name_string(Name(7)), "#7");
        assert_eq!(reg.value_name(Name::SIGMA, 1).unwrap(), reg.lookup("sigma_1").unwrap());
    }
}
