use serde::Serialize;

use super::{frame_valid, FrameVerdict};
use crate::algebra::{classify, FiniteResiduatedLattice};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset_product::Frame;
use crate::posets::{poset_predicate, PosetPredicate};
use crate::syntax::{parse_equation, Equation};

/// The frames on which an axiom is expected to be valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisClass {
    /// Every node carries a finite MV-chain.
    MvChainValued,
    /// As above, over a root system.
    RootSystemMvChainValued,
    /// Every node carries the two-element chain.
    BooleanValued,
    /// As above, over a root system.
    RootSystemBooleanValued,
    /// Every node carries an MV-chain with at most `k + 1` elements.
    PotencyAtMost(usize),
}

fn is_mv_chain(a: &FiniteResiduatedLattice) -> bool {
    let c = classify(a);
    c.is_mv && c.is_chain
}

impl HypothesisClass {
    /// `None` if the frame belongs to the class, otherwise the reason it does not.
    pub fn mismatch(&self, frame: &Frame) -> Result<Option<String>> {
        let nodes = || frame.poset().nodes();
        let first_bad = |ok: &dyn Fn(&FiniteResiduatedLattice) -> bool, what: &str| {
            nodes()
                .find(|&x| !ok(frame.algebra(x)))
                .map(|x| format!("node {} is not {what}", frame.poset().name(x)))
        };
        let root_system = || -> Result<Option<String>> {
            let r = poset_predicate(frame.poset(), &PosetPredicate::RootSystem)?;
            Ok((!r.holds).then(|| format!("not a root system: {}", r.witness.join(", "))))
        };
        Ok(match *self {
            HypothesisClass::MvChainValued => first_bad(&is_mv_chain, "an MV-chain"),
            HypothesisClass::RootSystemMvChainValued => match first_bad(&is_mv_chain, "an MV-chain") {
                Some(r) => Some(r),
                None => root_system()?,
            },
            HypothesisClass::BooleanValued => first_bad(&|a| a.size() == 2, "two-element"),
            HypothesisClass::RootSystemBooleanValued => match first_bad(&|a| a.size() == 2, "two-element") {
                Some(r) => Some(r),
                None => root_system()?,
            },
            HypothesisClass::PotencyAtMost(k) => first_bad(
                &|a| is_mv_chain(a) && a.size() <= k + 1,
                &format!("an MV-chain with at most {} elements", k + 1),
            ),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteAxiom {
    pub name: String,
    pub equation: Equation,
    pub class: HypothesisClass,
}

impl SuiteAxiom {
    pub fn new(name: &str, equation: &str, class: HypothesisClass) -> Result<Self> {
        Ok(SuiteAxiom {
            name: name.to_string(),
            equation: parse_equation(equation)?,
            class,
        })
    }
}

/// Divisibility, prelinearity, idempotence, prelinearity again for Gödel
/// frames, and `k`-potency, each with the frames it should hold on.
pub fn standard_axioms(k: usize) -> Vec<SuiteAxiom> {
    let power = |n: usize| vec!["x"; n].join(" * ");
    [
        ("divisibility", "x * (x -> y) = x & y".to_string(), HypothesisClass::MvChainValued),
        ("prelinearity", "(x -> y) | (y -> x) = 1".to_string(), HypothesisClass::RootSystemMvChainValued),
        ("idempotence", "x * x = x".to_string(), HypothesisClass::BooleanValued),
        ("goedel prelinearity", "(x -> y) | (y -> x) = 1".to_string(), HypothesisClass::RootSystemBooleanValued),
        (
            "potency",
            format!("{} = {}", power(k.max(1)), power(k.max(1) + 1)),
            HypothesisClass::PotencyAtMost(k.max(1)),
        ),
    ]
    .into_iter()
    .map(|(n, e, c)| SuiteAxiom::new(n, &e, c).expect("builtin axioms parse"))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SuiteStatus {
    Valid { valuations: u128 },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteEntry {
    pub frame: usize,
    pub axiom: String,
    #[serde(flatten)]
    pub status: SuiteStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
    pub checked: usize,
    pub skipped: usize,
}

/// Checks every axiom on every frame in its hypothesis class. A refutation
/// there is an internal error; frames outside the class are skipped.
pub fn soundness_instance_suite(frames: &[Frame], axioms: &[SuiteAxiom], limits: &Limits) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    for (i, frame) in frames.iter().enumerate() {
        for ax in axioms {
            let status = match ax.class.mismatch(frame)? {
                Some(reason) => {
                    report.skipped += 1;
                    SuiteStatus::Skipped { reason }
                }
                None => match frame_valid(frame, &ax.equation.as_formula(), limits)? {
                    FrameVerdict::Valid { valuations } => {
                        report.checked += 1;
                        SuiteStatus::Valid { valuations }
                    }
                    FrameVerdict::Countermodel { valuation, node } => {
                        return Err(Error::internal(format!(
                            "{} fails on frame {i} ({}) at {node} under {valuation:?}",
                            ax.name,
                            frame.labels().join(", ")
                        )))
                    }
                },
            };
            report.entries.push(SuiteEntry {
                frame: i,
                axiom: ax.name.clone(),
                status,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lukasiewicz_chain;
    use crate::semantics::{enumerate_frames, FrameFamily};

    fn family(names: &[&str], n: usize) -> Vec<Frame> {
        let values = names
            .iter()
            .map(|s| (s.to_string(), FiniteResiduatedLattice::builtin(s).unwrap().unwrap()))
            .collect();
        enumerate_frames(&FrameFamily { max_nodes: n, values }).unwrap()
    }

    #[test]
    fn standard_suite_on_small_frames() {
        let frames = family(&["L2", "L3"], 3);
        let report = soundness_instance_suite(&frames, &standard_axioms(2), &Limits::default()).unwrap();
        assert_eq!(report.checked + report.skipped, frames.len() * 5);
        let div = report.entries.iter().filter(|e| e.axiom == "divisibility");
        assert!(div.clone().all(|e| matches!(e.status, SuiteStatus::Valid { .. })));
        assert_eq!(div.count(), frames.len());
    }

    #[test]
    fn idempotence_is_skipped_on_l3() {
        let p = crate::posets::FinitePoset::chain(&["t"]).unwrap();
        let f = Frame::new(p, vec![lukasiewicz_chain(3).unwrap()], vec!["L3".into()]).unwrap();
        let ax = standard_axioms(2).into_iter().filter(|a| a.name == "idempotence").collect::<Vec<_>>();
        let r = soundness_instance_suite(&[f], &ax, &Limits::default()).unwrap();
        assert!(matches!(r.entries[0].status, SuiteStatus::Skipped { .. }));
    }

    #[test]
    fn potency_class_bounds_chain_length() {
        let frames = family(&["L3", "L4"], 1);
        let c = HypothesisClass::PotencyAtMost(2);
        assert_eq!(c.mismatch(&frames[0]).unwrap(), None);
        assert!(c.mismatch(&frames[1]).unwrap().is_some());
    }

    #[test]
    fn prelinearity_on_the_fork_is_skipped() {
        let frames = family(&["L2"], 3);
        let ax = vec![SuiteAxiom::new("p", "(x -> y) | (y -> x) = 1", HypothesisClass::RootSystemBooleanValued).unwrap()];
        let r = soundness_instance_suite(&frames, &ax, &Limits::default()).unwrap();
        // Among the five posets on three points, only the fork fails to be a root system.
        assert_eq!(r.skipped, 1);
    }
}
