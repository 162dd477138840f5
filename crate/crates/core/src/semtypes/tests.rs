use super::*;
use crate::combinators::{bang, identity_wire, pairing};
use crate::equivalence::perp;
use crate::syntax::parse_term;
use alloc::vec;

const B: ExplorationBudget = ExplorationBudget { max_states: 2000, max_depth: Some(6) };

fn t(src: &str, reg: &mut Registry) -> Term {
    parse_term(src, reg).unwrap()
}

/// Two positive and two negative classes over one name.
fn atom(reg: &mut Registry, name: &str) -> SemType {
    let n = reg.intern(name).unwrap();
    let pos = vec![vec![t(&alloc::format!("{{{name}}}.0"), reg)], vec![t(&alloc::format!("{{{name}}}.{{{name}}}.0"), reg)]];
    let neg = vec![vec![t(&alloc::format!("{{~{name}}}.0"), reg)], vec![t(&alloc::format!("{{~{name}}}.{{~{name}}}.0"), reg)]];
    SemType::new(pos, neg, Some(BTreeSet::from([n])), B).unwrap()
}

#[test]
fn unit_is_self_dual() {
    let mut reg = Registry::new();
    let u = unit_type();
    assert_eq!(dual(&u), u);
    assert_eq!(realizes_pos(&Term::nil(), &u, B), Ok(Membership::Class(0)));
    assert_eq!(realizes_pos(&t("{a}.0", &mut reg), &u, B), Ok(Membership::No));
    assert_eq!(total(&u, B), Ok(Totality::Total));
    assert!(inhabited(&u));
}

#[test]
fn per_validation() {
    let mut reg = Registry::new();
    let a = t("{a}.0", &mut reg);
    let a2 = t("{a}.0 | 0", &mut reg);
    let b = t("{b}.0", &mut reg);
    assert!(RepPER::new(vec![vec![a.clone(), a2.clone()], vec![b.clone()]], B).is_ok());
    assert!(matches!(RepPER::new(vec![vec![a.clone()], vec![a2.clone()]], B), Err(SemError::NotAPer { .. })));
    assert!(matches!(RepPER::new(vec![vec![a.clone(), b.clone()]], B), Err(SemError::NotAPer { .. })));
    let p = RepPER::partition(vec![a, b.clone(), a2], B).unwrap();
    assert_eq!(p.len(), 2);
    assert_eq!(p.class(0).count(), 2);
    assert_eq!(p.classify(&b, B), Ok(Membership::Class(1)));
}

#[test]
fn with_classes_are_pairs() {
    let mut reg = Registry::new();
    let a = atom(&mut reg, "a");
    let b = atom(&mut reg, "b");
    let w = with_type(&a, &b, B).unwrap();
    assert_eq!((w.pos.len(), w.neg.len()), (4, 4));
    for i in 0..2 {
        for j in 0..2 {
            let p = choice(a.pos.rep(i).clone(), b.pos.rep(j).clone());
            assert_eq!(realizes_pos(&p, &w, B), Ok(Membership::Class(2 * i + j)));
        }
    }
    assert_eq!(total(&w, B), Ok(Totality::Total));
    let plus = plus_type(&a, &b, B).unwrap();
    assert_eq!(plus, dual(&with_type(&dual(&a), &dual(&b), B).unwrap()));
    let right = Term::prefix(Action::single(Name::BETA.negative()), b.pos.rep(1).clone());
    assert_eq!(realizes_pos(&right, &plus, B), Ok(Membership::Class(3)));
}

#[test]
fn tensor_de_morgan_and_candidates() {
    let mut reg = Registry::new();
    let a = atom(&mut reg, "a");
    let b = atom(&mut reg, "b");
    let ten = tensor_type(&a, &b, B).unwrap();
    assert_eq!((ten.pos.len(), ten.neg.len()), (4, 4));
    assert_eq!(dual(&ten), par_type(&dual(&a), &dual(&b), B).unwrap());
    // `0` sends nothing anywhere; a reordered canonical negative is accepted.
    let reordered = Term::par(
        Term::rename(b.neg.rep(1).clone(), Renaming::rcode()),
        Term::rename(a.neg.rep(0).clone(), Renaming::lcode()),
    );
    let with = tensor_type_with(&a, &b, vec![Term::nil(), reordered.clone()], B).unwrap();
    assert_eq!(with.neg.len(), 4);
    assert_eq!(realizes_neg(&Term::nil(), &with, B), Ok(Membership::No));
    assert_eq!(realizes_neg(&reordered, &with, B), Ok(Membership::Class(1)));
    assert_eq!(with.neg.class(1).count(), 2);
    assert_eq!(total(&ten, B), Ok(Totality::Total));
}

#[test]
fn bang_negatives() {
    let mut reg = Registry::new();
    let a = atom(&mut reg, "a");
    let zero = bang_type(&a, 0, B).unwrap();
    let omega = t("{omega}.0", &mut reg);
    assert_eq!(zero.neg.len(), 3);
    assert_eq!(realizes_neg(&omega, &zero, B), Ok(Membership::Class(0)));
    assert_eq!(realizes_pos(&bang(a.pos.rep(1).clone()), &zero, B), Ok(Membership::Class(1)));
    let one = bang_type(&a, 1, B).unwrap();
    assert_eq!(one.neg.len(), 3 + 9);
    let copy = Term::prefix(
        Action::single(Name::GAMMA.negative()),
        tensor(zero.neg.rep(1).clone(), zero.neg.rep(0).clone()),
    );
    assert!(matches!(realizes_neg(&copy, &one, B), Ok(Membership::Class(_))));
    assert_eq!(total(&one, B), Ok(Totality::Total));
}

#[test]
fn quantifier_types() {
    let mut reg = Registry::new();
    let p0 = atom(&mut reg, "p_0");
    let p1 = atom(&mut reg, "p_1");
    let all = forall_v_type(&[(0, p0.clone()), (1, p1)], &mut reg, B).unwrap();
    assert_eq!((all.pos.len(), all.neg.len()), (4, 4));
    let s0 = reg.value_name(Name::SIGMA, 0).unwrap();
    let probe = Term::prefix(Action::single(s0.negative()), p0.neg.rep(1).clone());
    assert_eq!(realizes_neg(&probe, &all, B), Ok(Membership::Class(1)));
    assert_eq!(total(&all, B), Ok(Totality::Total));
}

#[test]
fn diverging_positive_is_not_total() {
    let mut reg = Registry::new();
    let spin = t("rec X. {}.X", &mut reg);
    let ty = SemType::new(vec![vec![spin]], vec![vec![Term::nil()]], Some(BTreeSet::new()), B).unwrap();
    assert_eq!(total(&ty, B), Ok(Totality::NotTotal { pos: 0, neg: 0 }));
}

#[test]
fn interpret_formulas() {
    let mut reg = Registry::new();
    let atoms: TypeEnv = [(String::from("a"), atom(&mut reg, "a")), (String::from("b"), atom(&mut reg, "b"))].into();
    let f = crate::logic::parse_formula("(a * ~b) & a").unwrap();
    let ty = interpret(&f, &atoms, 0, &mut reg, B).unwrap();
    let direct = with_type(
        &tensor_type(&atoms["a"], &dual(&atoms["b"]), B).unwrap(),
        &atoms["a"],
        B,
    )
    .unwrap();
    assert_eq!(ty, direct);
    let g = crate::logic::parse_formula("c").unwrap();
    assert_eq!(interpret(&g, &atoms, 0, &mut reg, B), Err(SemError::UnknownAtom(String::from("c"))));
}

#[test]
fn identity_and_failing_morphisms() {
    let mut reg = Registry::new();
    let a = atom(&mut reg, "a");
    let id = identity(&a, B).unwrap();
    assert_eq!((id.forward.clone(), id.backward.clone()), (vec![0, 1], vec![0, 1]));
    let dead = is_morphism(&Term::nil(), &a, &a, B).unwrap();
    assert!(matches!(
        dead,
        MorphismCheck::No(MorphismWitness { direction: Direction::Forward, failure: MapFailure::Outside { class: 0, .. } })
    ));
    // Relays one action on its first step, then behaves as the wire.
    let na = reg.lookup("a").unwrap();
    let forward_only = Term::sum([(Action::new([na.l_code().positive(), na.r_code().negative()]), identity_wire(&BTreeSet::from([na])))]);
    let check = is_morphism(&forward_only, &a, &a, B).unwrap();
    assert!(!matches!(check, MorphismCheck::Yes(_)), "{check:?}");
}

#[test]
fn extensional_inputs_share_an_image() {
    let mut reg = Registry::new();
    let pos = vec![vec![t("{a}.0", &mut reg), t("{a}.0 | 0", &mut reg)]];
    let neg = vec![vec![t("{~a}.0", &mut reg)]];
    let na = reg.lookup("a").unwrap();
    let a = SemType::new(pos, neg, Some(BTreeSet::from([na])), B).unwrap();
    let id = identity(&a, B).unwrap();
    assert_eq!(id.forward, vec![0]);
}

#[test]
fn category_laws_on_a_small_instance() {
    let mut reg = Registry::new();
    let a = atom(&mut reg, "a");
    let w = with_type(&a, &a, B).unwrap();
    let id = identity(&a, B).unwrap();
    let diag = pair(&id, &id, B).unwrap().morphism().unwrap();
    assert_eq!(diag.forward, vec![0, 3]);
    let p1 = projection(&a, &a, false, B).unwrap();
    let p2 = projection(&a, &a, true, B).unwrap();
    assert_eq!(p1.forward, vec![0, 0, 1, 1]);
    assert_eq!(p2.forward, vec![0, 1, 0, 1]);
    let report = check_category_laws(&[a.clone(), w], &[id, diag, p1, p2], B).unwrap();
    assert!(report.all_passed(), "{report:?}");
    for law in [Law::LeftIdentity, Law::Associativity, Law::DualityInvolution, Law::ProductExistence, Law::ProductUniqueness] {
        assert!(report.checks.iter().any(|c| c.law == law), "{law:?} not exercised");
    }
}

#[test]
fn pairing_is_the_with_realizer_on_the_right_port() {
    let mut reg = Registry::new();
    let a = atom(&mut reg, "a");
    let id = identity(&a, B).unwrap();
    let w = with_type(&a, &a, B).unwrap();
    let m = is_morphism(&pairing(id.realizer.clone(), id.realizer.clone()), &a, &w, B).unwrap();
    assert!(matches!(m, MorphismCheck::Yes(_)));
}

#[test]
fn lists_against_consumers() {
    let mut reg = Registry::new();
    let na = reg.intern("a").unwrap();
    let a = SemType::new(vec![vec![t("{a}.0", &mut reg)]], vec![vec![t("{~a}.0", &mut reg)]], Some(BTreeSet::from([na])), B)
        .unwrap();
    let lists = list_type_example(&a, 3, B).unwrap();
    assert_eq!(lists.elements.len(), 4);
    assert_eq!(list_realizer(&[]), t("{~alpha}.0", &mut reg));
    let unit = list_realizer(&[a.pos.rep(0).clone()]);
    assert_eq!(unit, Term::prefix(Action::single(Name::BETA.negative()), tensor(a.pos.rep(0).clone(), t("{~alpha}.0", &mut reg))));
    for (c, elems) in lists.elements.iter().enumerate() {
        let values: Vec<Term> = elems.iter().map(|i| a.pos.rep(*i).clone()).collect();
        let l = list_realizer(&values);
        assert_eq!(realizes_pos(&l, &lists.ty, B), Ok(Membership::Class(c)));
        for consumer in lists.ty.neg.reps() {
            assert_eq!(perp(&l, consumer, B), Ok(Tri::Yes));
        }
    }
}

#[test]
fn streams() {
    let mut reg = Registry::new();
    let a = atom(&mut reg, "a");
    let s = stream_type_example(&a, 2, B).unwrap();
    assert_eq!(s.ty.pos.len(), 4);
    assert_eq!(s.ty.neg.len(), 1 + 2 + 4);
    assert_eq!(total(&s.ty, B), Ok(Totality::Total));
}
