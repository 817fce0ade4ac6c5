//! Relational models over frames: forcing, validity, countermodels, and the
//! bridges to Kripke frames and temporal flows.

mod countermodel;
mod kripke;
mod soundness;
mod temporal;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{check_equation, Elem, EquationCheck};
use crate::error::{Error, Result};
use crate::limits::{checked_power, Limits};
use crate::poset_product::{box_map, build_poset_product, is_ac_labeling, AcLabeling, Frame};
use crate::syntax::{CompiledTerm, Connective, Equation, Odometer, Term};

pub use countermodel::{countermodel_search, enumerate_frames, CountermodelOutcome, FrameFamily, SearchOptions};
pub use kripke::{kripke_bridge, kripke_forces, kripke_inverse, check_kripke_agreement, UpsetValuation};
pub use soundness::{
    soundness_instance_suite, standard_axioms, HypothesisClass, SuiteAxiom, SuiteEntry, SuiteReport, SuiteStatus,
};
pub use temporal::{
    temporal_crosscheck, temporal_crosscheck_exhaustive, temporal_eval, validate_temporal_assignment,
    TemporalAssignment, TemporalCrosscheck, TemporalFlow,
};

/// Variable name to ac-labeling.
pub type Valuation = BTreeMap<String, AcLabeling>;

fn check_valuation(frame: &Frame, h: &Valuation) -> Result<()> {
    for (p, f) in h {
        if !is_ac_labeling(frame, f)? {
            return Err(Error::precondition(format!(
                "value of `{p}` is not an ac-labeling: {:?}",
                f.0
            )));
        }
    }
    Ok(())
}

/// Applies one connective to two choice functions the way the forcing
/// clauses do: pointwise, with implication boxed afterwards.
fn combine(frame: &Frame, c: Connective, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    let pointwise: Vec<Elem> = frame
        .poset()
        .nodes()
        .map(|x| frame.algebra(x).op(c, f[x], g[x]))
        .collect();
    match c {
        Connective::Impl => box_map(frame, &pointwise),
        _ => pointwise,
    }
}

/// `ĥ(φ)` as a labeling, computed nodewise from the forcing clauses.
pub fn denotation(frame: &Frame, h: &Valuation, t: &Term) -> Result<AcLabeling> {
    check_valuation(frame, h)?;
    let vars: Vec<String> = t.variables().into_iter().collect();
    let slots = vars
        .iter()
        .map(|v| {
            h.get(v)
                .map(|f| f.0.clone())
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let program = CompiledTerm::new(t, &vars)?;
    Ok(AcLabeling(eval_labelings(frame, &program, &slots)))
}

fn eval_labelings(frame: &Frame, program: &CompiledTerm, slots: &[Vec<Elem>]) -> Vec<Elem> {
    program.eval_with(
        slots,
        &frame.constant_bottom().0,
        &frame.constant_top().0,
        |c, f, g| combine(frame, c, f, g),
    )
}

/// `(F, h), x ⊩ φ`.
pub fn forces(frame: &Frame, h: &Valuation, x: usize, t: &Term) -> Result<bool> {
    if x >= frame.len() {
        return Err(Error::format(format!("node index {x} out of range")));
    }
    let d = denotation(frame, h, t)?;
    Ok(d[x] == frame.algebra(x).top())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FrameVerdict {
    Valid {
        valuations: u128,
    },
    /// The first refuting valuation (variables sorted by name, first most
    /// significant, labelings in enumeration order) and its first failing node.
    Countermodel {
        valuation: Valuation,
        node: String,
    },
}

impl FrameVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, FrameVerdict::Valid { .. })
    }
}

/// Decides `F ⊩ φ` by forcing under every valuation, and cross-checks the
/// answer against `φ = 1` in `P(F)`.
pub fn frame_valid(frame: &Frame, t: &Term, limits: &Limits) -> Result<FrameVerdict> {
    let pp = build_poset_product(frame, limits)?;
    let vars: Vec<String> = t.variables().into_iter().collect();
    let count = checked_power(pp.labelings.len(), vars.len());
    limits.check_evaluations("frame validity valuations", count)?;
    let program = CompiledTerm::new(t, &vars)?;
    let top = frame.constant_top();
    let mut odo = Odometer::new(vars.len(), pp.labelings.len());
    let mut verdict = FrameVerdict::Valid { valuations: count };
    let mut counter_slots = None;
    while let Some(digits) = odo.next() {
        let slots: Vec<Vec<Elem>> = digits.iter().map(|&i| pp.labelings[i].0.clone()).collect();
        let d = eval_labelings(frame, &program, &slots);
        if let Some(x) = frame.poset().nodes().find(|&x| d[x] != top[x]) {
            verdict = FrameVerdict::Countermodel {
                valuation: vars
                    .iter()
                    .cloned()
                    .zip(digits.iter().map(|&i| pp.labelings[i].clone()))
                    .collect(),
                node: frame.poset().name(x).to_string(),
            };
            counter_slots = Some(digits.to_vec());
            break;
        }
    }
    let algebraic = check_equation(&pp.algebra, &Equation::is_top(t.clone()), limits)?;
    let agree = match (&verdict, &algebraic) {
        (FrameVerdict::Valid { .. }, EquationCheck::Valid { .. }) => true,
        (FrameVerdict::Countermodel { .. }, EquationCheck::Counter { assignment, .. }) => {
            let algebraic_slots: Vec<Elem> = assignment.iter().map(|(_, e)| *e).collect();
            counter_slots.as_deref() == Some(&algebraic_slots[..])
        }
        _ => false,
    };
    if !agree {
        return Err(Error::internal(format!(
            "forcing and the poset product disagree on `{t}`"
        )));
    }
    Ok(verdict)
}
