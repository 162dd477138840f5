//! The shipped cut-elimination corpus and the step-by-step soundness check
//! behind `verify-cut`.

use std::collections::BTreeSet;

use procreal_core::equivalence::{failures_equiv, EquivResult};
use procreal_core::extraction::{extract, AtomEnv, SoundnessError};
use procreal_core::logic::{check_proof, cut_step, find_innermost_cut, print_formula, CutError, Proof, StepKind};
use procreal_core::semantics::ExplorationBudget;
use procreal_core::Registry;

use crate::formats::{parse_proof_json, FormatError};
use crate::report::{Check, Report, Section, Verdict};

/// `(name, proof JSON)` for every proof under `corpus/`.
pub const CUT_CORPUS: &[(&str, &str)] = &[
    ("self-a", include_str!("../corpus/self-a.json")),
    ("self-tensor", include_str!("../corpus/self-tensor.json")),
    ("self-with", include_str!("../corpus/self-with.json")),
    ("self-plus", include_str!("../corpus/self-plus.json")),
    ("self-forall", include_str!("../corpus/self-forall.json")),
    ("self-bang", include_str!("../corpus/self-bang.json")),
    ("self-quest", include_str!("../corpus/self-quest.json")),
    ("axiom-right", include_str!("../corpus/axiom-right.json")),
    ("commute-exchange", include_str!("../corpus/commute-exchange.json")),
    ("commute-par", include_str!("../corpus/commute-par.json")),
    ("commute-plus", include_str!("../corpus/commute-plus.json")),
    ("commute-dereliction", include_str!("../corpus/commute-dereliction.json")),
    ("commute-contraction", include_str!("../corpus/commute-contraction.json")),
    ("commute-exists", include_str!("../corpus/commute-exists.json")),
    ("commute-tensor", include_str!("../corpus/commute-tensor.json")),
    ("commute-with", include_str!("../corpus/commute-with.json")),
    ("commute-forall", include_str!("../corpus/commute-forall.json")),
    ("bang-weakening", include_str!("../corpus/bang-weakening.json")),
    ("bang-contraction", include_str!("../corpus/bang-contraction.json")),
];

pub fn load_corpus() -> Result<Vec<(&'static str, Proof)>, FormatError> {
    CUT_CORPUS
        .iter()
        .map(|(name, src)| parse_proof_json(src).map(|p| (*name, p)).map_err(|e| FormatError(format!("{name}: {e}"))))
        .collect()
}

/// One reduction of a `verify-cut` run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub path: Vec<usize>,
    pub kind: StepKind,
    pub result: EquivResult,
}

impl StepRecord {
    pub fn verdict(&self) -> Verdict {
        match self.result {
            EquivResult::Equal => Verdict::Pass,
            EquivResult::Distinguished(_) => Verdict::Fail,
            EquivResult::Unknown { .. } => Verdict::Unknown,
        }
    }

    fn detail(&self) -> String {
        match &self.result {
            EquivResult::Equal => String::from("equal"),
            EquivResult::Distinguished(w) => format!("distinguished: {w:?}"),
            EquivResult::Unknown { agreed: Some(k) } => format!("agree on traces up to length {k}"),
            EquivResult::Unknown { agreed: None } => String::from("undecided"),
        }
    }
}

#[derive(Debug)]
pub enum VerifyError {
    Cut(CutError),
    Soundness(SoundnessError),
}

impl std::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyError::Cut(e) => write!(f, "{e}"),
            VerifyError::Soundness(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

/// Eliminates cuts innermost-first, comparing the realizers before and
/// after every step.
pub fn verify_cuts(
    proof: &Proof,
    env: &AtomEnv,
    reg: &mut Registry,
    budget: ExplorationBudget,
    max_steps: usize,
) -> Result<Vec<StepRecord>, VerifyError> {
    check_proof(proof).map_err(|e| VerifyError::Cut(CutError::Invalid(e)))?;
    let mut cur = proof.clone();
    let mut before = extract(&cur, env, reg).map_err(|e| VerifyError::Soundness(e.into()))?;
    let mut out = Vec::new();
    while let Some(path) = find_innermost_cut(&cur) {
        if out.len() >= max_steps {
            return Err(VerifyError::Cut(CutError::BoundExceeded { bound: max_steps }));
        }
        let (next, kind) = cut_step(&cur, &path).map_err(VerifyError::Cut)?;
        let after = extract(&next, env, reg).map_err(|e| VerifyError::Soundness(e.into()))?;
        let result = failures_equiv(&before, &after, budget).map_err(|e| VerifyError::Soundness(e.into()))?;
        out.push(StepRecord { path, kind, result });
        cur = next;
        before = after;
    }
    Ok(out)
}

pub fn steps_section(name: &str, proof: &Proof, steps: &[StepRecord]) -> Section {
    let conclusion = check_proof(proof).map(|g| g.iter().map(print_formula).collect::<Vec<_>>().join(", ")).unwrap_or_default();
    let mut s = Section::new(format!("{name}: ⊢ {conclusion}"));
    if steps.is_empty() {
        s.push(Check::new("cut-free", Verdict::Pass, ""));
    }
    for (i, st) in steps.iter().enumerate() {
        s.push(Check::new(format!("step {} {} at {:?}", i + 1, st.kind, st.path), st.verdict(), st.detail()));
    }
    s
}

/// Runs [`verify_cuts`] on every corpus proof. Also returns the step kinds
/// exercised.
pub fn corpus_report(budget: ExplorationBudget) -> Result<(Report, BTreeSet<StepKind>), Box<dyn std::error::Error>> {
    let mut report = Report::new("cut elimination corpus");
    let mut kinds = BTreeSet::new();
    for (name, proof) in load_corpus()? {
        let mut reg = Registry::new();
        let steps = verify_cuts(&proof, &AtomEnv::new(), &mut reg, budget, 10_000)?;
        kinds.extend(steps.iter().map(|s| s.kind));
        report.sections.push(steps_section(name, &proof, &steps));
    }
    Ok((report, kinds))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses_and_checks() {
        let corpus = load_corpus().unwrap();
        assert!(corpus.len() >= 10);
        for (name, p) in &corpus {
            assert!(check_proof(p).is_ok(), "{name}");
            assert!(procreal_core::logic::contains_cut(p), "{name}");
        }
    }

    #[test]
    fn tensor_self_cut_steps_are_exact() {
        let p = load_corpus().unwrap().into_iter().find(|(n, _)| *n == "self-tensor").unwrap().1;
        let mut reg = Registry::new();
        let steps = verify_cuts(&p, &AtomEnv::new(), &mut reg, ExplorationBudget::states(5000), 100).unwrap();
        assert!(steps.iter().any(|s| s.kind == StepKind::TensorPar));
        assert!(steps.iter().all(|s| s.result == EquivResult::Equal), "{steps:?}");
    }
}
