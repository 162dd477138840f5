//! Acceptance suite: one pass/fail line per criterion.
//!
//! Pinned parameters: seed 2024, state budget 2000, bounded-fallback depth 6,
//! 200 random instances for the law suites, 500 congruence trials, terms of
//! size at most 5 for the exhaustive engine comparison (failures to depth 4),
//! bang fuel up to 2. Criterion 10 reruns criteria 1 to 9 and compares the
//! rendered reports byte for byte.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use procreal::corpus::corpus_report;
use procreal::exercises::{
    alphabet, category_instance, composition_suite, identity_suite, law_section, pairing_suite, ExerciseConfig,
};
use procreal::gen::{enumerate_terms, rng, small_atom_type, TermGen};
use procreal::report::{Check, Report, Section, Tally, Verdict};
use procreal_core::combinators::nonempty_actions;
use procreal_core::equivalence::{failures_bounded, failures_equiv, normal_form, perp, EquivResult};
use procreal_core::extraction::{verify_totality_pipeline, AtomEnv, Convergence};
use procreal_core::logic::{check_proof, StepKind};
use procreal_core::semantics::{ExplorationBudget, Tri};
use procreal_core::semtypes::{
    bang_type, check_category_laws, dual, inhabited, list_consumer, list_realizer, list_type_example, realizes_pos,
    tensor_type, total, with_type, Law, Membership, SemType, Totality, TypeEnv,
};
use procreal_core::syntax::well_formed;
use procreal_core::{Registry, Term};

const SEED: u64 = 2024;
const BUDGET: ExplorationBudget = ExplorationBudget { max_states: 2000, max_depth: Some(6) };
const TRIALS: usize = 200;
const CONGRUENCE_TRIALS: usize = 500;

fn cfg() -> ExerciseConfig {
    ExerciseConfig { seed: SEED, trials: TRIALS, term_depth: 3, budget: BUDGET }
}

/// A criterion's verdict and a deterministic description of what was checked.
struct Outcome {
    pass: bool,
    detail: String,
}

fn from_section(s: &Section) -> Outcome {
    let detail = s.checks.iter().map(|c| format!("{} [{}]", c.name, c.detail)).collect::<Vec<_>>().join("; ");
    Outcome { pass: s.verdict() == Verdict::Pass, detail }
}

fn identity_laws() -> Outcome {
    from_section(&identity_suite(&cfg()).expect("engine"))
}

fn composition_laws() -> Outcome {
    from_section(&composition_suite(&cfg()).expect("engine"))
}

fn pairing_laws() -> Outcome {
    let (s, w) = pairing_suite(&cfg()).expect("engine");
    let mut o = from_section(&s);
    o.pass &= w.fixed_instance;
    o
}

fn congruence() -> Outcome {
    let (_, names) = alphabet();
    let g = TermGen::new(names, 3);
    let mut r = rng(SEED.wrapping_add(3));
    let mut pairs = Tally::default();
    let mut filled = Tally::default();
    // Trials whose filled terms exceed the budget are reported, and the run
    // continues until CONGRUENCE_TRIALS trials are decided.
    let mut attempts = 0;
    while filled.pass + filled.fail < CONGRUENCE_TRIALS && attempts < 2 * CONGRUENCE_TRIALS {
        attempts += 1;
        let p = g.term(&mut r);
        let q = g.equivalent_variant(&mut r, &p);
        let c = g.context(&mut r, 2);
        pairs.add(verdict(&failures_equiv(&p, &q, BUDGET).expect("engine")));
        filled.add(verdict(&failures_equiv(&c.fill(&p), &c.fill(&q), BUDGET).expect("engine")));
    }
    Outcome {
        pass: pairs.verdict() == Verdict::Pass && filled.fail == 0 && filled.pass >= CONGRUENCE_TRIALS,
        detail: format!(
            "{} contexts: {} equal, {} counterexamples, {} undecided (pairs: {} equal)",
            filled.total(),
            filled.pass,
            filled.fail,
            filled.unknown,
            pairs.pass
        ),
    }
}

fn verdict(r: &EquivResult) -> Verdict {
    match r {
        EquivResult::Equal => Verdict::Pass,
        EquivResult::Distinguished(_) => Verdict::Fail,
        EquivResult::Unknown { .. } => Verdict::Unknown,
    }
}

fn engine_oracle() -> Outcome {
    let (_, names) = alphabet();
    let actions = nonempty_actions(&names.iter().copied().collect());
    let terms = enumerate_terms(5, &names, &actions);
    let mut agree = 0;
    let mut disagree = 0;
    let mut skipped = 0;
    for t in &terms {
        assert!(well_formed(t).is_empty());
        let nf = normal_form(t, BUDGET).expect("engine");
        let brute = failures_bounded(t, 4, BUDGET.max_states).expect("engine");
        match (nf, brute) {
            (Some(nf), Some(b)) if nf.failures(4) == b => agree += 1,
            (Some(_), Some(_)) => disagree += 1,
            _ => skipped += 1,
        }
    }
    Outcome {
        pass: disagree == 0 && skipped == 0,
        detail: format!("{} terms of size <= 5: {agree} agree, {disagree} disagree, {skipped} over budget", terms.len()),
    }
}

fn cut_soundness() -> Outcome {
    let (report, kinds) = corpus_report(ExplorationBudget::states(5000)).expect("corpus");
    let mut exact = 0;
    let mut bounded = 0;
    let mut failed = 0;
    for c in report.sections.iter().flat_map(|s| &s.checks) {
        match c.verdict {
            Verdict::Pass => exact += 1,
            Verdict::Unknown => bounded += 1,
            Verdict::Fail => failed += 1,
        }
    }
    let missing: Vec<&str> = StepKind::ALL.iter().filter(|k| !kinds.contains(k)).map(|k| k.name()).collect();
    Outcome {
        pass: failed == 0 && missing.is_empty() && report.sections.len() >= 10,
        detail: format!(
            "{} proofs, {} step kinds: {exact} steps equal, {bounded} agree up to the bounded depth, {failed} fail; missing kinds {missing:?}",
            report.sections.len(),
            kinds.len()
        ),
    }
}

fn small_types(reg: &mut Registry) -> Vec<SemType> {
    let mut r = rng(SEED.wrapping_add(7));
    (0..20)
        .map(|i| small_atom_type(&mut r, reg, &format!("t{i}"), 1 + i % 2, BUDGET).expect("atom type"))
        .collect()
}

fn totality_closure() -> Outcome {
    let mut reg = Registry::new();
    let atoms = small_types(&mut reg);
    let mut ok = Tally::default();
    let mut record = |ty: &SemType| {
        let v = match total(ty, BUDGET).expect("engine") {
            Totality::Total if inhabited(ty) => Verdict::Pass,
            Totality::Unknown { .. } => Verdict::Unknown,
            _ => Verdict::Fail,
        };
        ok.add(v);
    };
    for (i, a) in atoms.iter().enumerate() {
        let b = &atoms[(i + 1) % atoms.len()];
        record(a);
        record(&dual(a));
        record(&tensor_type(a, b, BUDGET).expect("tensor"));
        record(&with_type(a, b, BUDGET).expect("with"));
        let fuel = if i < 4 { 2 } else { i % 2 };
        record(&bang_type(a, fuel, BUDGET).expect("bang"));
    }
    // Corpus proofs, with their atoms interpreted by generated types.
    let env: TypeEnv = ["a", "b", "c", "p_0", "p_1"]
        .iter()
        .zip(&atoms)
        .map(|(k, t)| (k.to_string(), t.clone()))
        .collect();
    let mut atom_env = AtomEnv::new();
    for (k, t) in &env {
        atom_env.declare(k, t.interface.clone().expect("atoms have interfaces"));
    }
    let mut conv = Tally::default();
    for (_, proof) in procreal::corpus::load_corpus().expect("corpus") {
        let _ = check_proof(&proof).expect("valid");
        let v = match verify_totality_pipeline(&proof, &atom_env, &env, 1, &mut reg, BUDGET).expect("pipeline") {
            Convergence::Convergent => Verdict::Pass,
            Convergence::Unknown { .. } => Verdict::Unknown,
            Convergence::Diverging { .. } => Verdict::Fail,
        };
        conv.add(v);
    }
    Outcome {
        pass: ok.verdict() == Verdict::Pass && conv.verdict() == Verdict::Pass && atoms.len() >= 20,
        detail: format!(
            "{} atoms, {} constructed types total and inhabited ({} fail, {} undecided); corpus realizers {} convergent, {} diverging, {} undecided",
            atoms.len(),
            ok.pass,
            ok.fail,
            ok.unknown,
            conv.pass,
            conv.fail,
            conv.unknown
        ),
    }
}

fn category_laws() -> Outcome {
    let (types, morphisms) = category_instance(BUDGET).expect("instance");
    let report = check_category_laws(&types, &morphisms, BUDGET).expect("laws");
    let laws: BTreeSet<Law> = report.checks.iter().map(|c| c.law).collect();
    let needed = [Law::LeftIdentity, Law::RightIdentity, Law::Associativity, Law::DualityInvolution, Law::ProductExistence, Law::ProductUniqueness];
    let s = law_section(&report);
    let failed = s.checks.iter().filter(|c| c.verdict == Verdict::Fail).count();
    let undecided = s.checks.iter().filter(|c| c.verdict == Verdict::Unknown).count();
    Outcome {
        pass: report.all_passed() && needed.iter().all(|l| laws.contains(l)) && types.len() >= 5 && morphisms.len() >= 10,
        detail: format!(
            "{} types, {} morphisms, {} law instances over {} laws, {failed} failed, {undecided} undecided",
            types.len(),
            morphisms.len(),
            report.checks.len(),
            laws.len(),
        ),
    }
}

fn list_example() -> Outcome {
    let mut reg = Registry::new();
    let na = reg.intern("a").expect("fresh");
    let t = |s: &str, reg: &mut Registry| procreal_core::syntax::parse_term(s, reg).expect("literal");
    let a = SemType::new(vec![vec![t("{a}.0", &mut reg)]], vec![vec![t("{~a}.0", &mut reg)]], Some(BTreeSet::from([na])), BUDGET)
        .expect("atom");
    let lists = list_type_example(&a, 3, BUDGET).expect("lists");
    // P₀ with the single consumer of `a` on every value port.
    let n = a.neg.rep(0).clone();
    let family: Vec<Term> = (0..=3)
        .map(|len| {
            (0..len).fold(Term::nil(), |acc, j| {
                let port = procreal_core::Renaming::compose(rpow(j), procreal_core::Renaming::lcode());
                Term::par(acc, Term::rename(n.clone(), port))
            })
        })
        .collect();
    let p0 = list_consumer(&family);
    let mut perp_yes = 0;
    let mut classified = 0;
    for (c, elems) in lists.elements.iter().enumerate() {
        let values: Vec<Term> = elems.iter().map(|i| a.pos.rep(*i).clone()).collect();
        let l = list_realizer(&values);
        if perp(&l, &p0, BUDGET).expect("engine") == Tri::Yes {
            perp_yes += 1;
        }
        if realizes_pos(&l, &lists.ty, BUDGET).expect("engine") == Membership::Class(c) {
            classified += 1;
        }
    }
    let k = lists.elements.len();
    Outcome {
        pass: k == 4 && perp_yes == k && classified == k,
        detail: format!("{k} lists of length <= 3: {perp_yes} orthogonal to the consumer chain, {classified} in their expected class"),
    }
}

fn rpow(j: usize) -> procreal_core::Renaming {
    (0..j).fold(procreal_core::Renaming::Identity, |f, _| procreal_core::Renaming::compose(procreal_core::Renaming::rcode(), f))
}

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    ("identity laws", identity_laws),
    ("composition laws", composition_laws),
    ("pairing laws", pairing_laws),
    ("congruence", congruence),
    ("failures engine against brute force", engine_oracle),
    ("cut elimination soundness", cut_soundness),
    ("totality closure", totality_closure),
    ("category laws", category_laws),
    ("list example", list_example),
];

fn render(outcomes: &[Outcome]) -> String {
    let mut r = Report::new(format!("acceptance (seed {SEED})"));
    let mut s = Section::new("criteria");
    for ((name, _), o) in CRITERIA.iter().zip(outcomes) {
        s.push(Check::new(*name, if o.pass { Verdict::Pass } else { Verdict::Fail }, o.detail.clone()));
    }
    r.sections.push(s);
    r.to_json()
}

fn line(n: usize, name: &str, pass: bool, detail: &str, secs: f64) {
    println!("criterion {n:>2} {} {name}: {detail} ({secs:.1}s)", if pass { "PASS" } else { "FAIL" });
}

fn main() -> ExitCode {
    let mut outcomes = Vec::new();
    let mut all = true;
    for (i, (name, f)) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        line(i + 1, name, o.pass, &o.detail, t.elapsed().as_secs_f64());
        all &= o.pass;
        outcomes.push(o);
    }
    let t = Instant::now();
    let first = render(&outcomes);
    let again: Vec<Outcome> = CRITERIA.iter().map(|(_, f)| f()).collect();
    let same = first == render(&again);
    line(10, "determinism", same, &format!("second run report {} ({} bytes)", if same { "identical" } else { "differs" }, first.len()), t.elapsed().as_secs_f64());
    all &= same;
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
