use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use super::{denotation, Valuation};
use crate::algebra::{lukasiewicz_chain, morphism_search, Elem, MorphismMode};
use crate::error::{Error, Result};
use crate::limits::{checked_power, Limits};
use crate::poset_product::{enumerate_ac_labelings, Frame};
use crate::posets::FinitePoset;
use crate::syntax::{Connective, Odometer, Term};

type Q = Ratio<i64>;

/// A poset with a Łukasiewicz chain length `L(t) >= 2` at each node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalFlow {
    poset: FinitePoset,
    lengths: Vec<usize>,
}

/// Variable name to its value at each node, as rationals in `[0, 1]`.
pub type TemporalAssignment = BTreeMap<String, Vec<Q>>;

impl TemporalFlow {
    pub fn new(poset: FinitePoset, lengths: Vec<usize>) -> Result<Self> {
        if lengths.len() != poset.len() {
            return Err(Error::format("temporal flow needs one label per node"));
        }
        if let Some(x) = lengths.iter().position(|&k| k < 2) {
            return Err(Error::Unsupported(format!(
                "label {} at node {}; only chains with at least two elements are computed",
                lengths[x],
                poset.name(x)
            )));
        }
        Ok(TemporalFlow { poset, lengths })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }
}

/// Checks the three conditions on temporal assignments: values lie in the
/// node's chain, are monotone, and are strictly between 0 and 1 only on an
/// antichain.
pub fn validate_temporal_assignment(flow: &TemporalFlow, v: &TemporalAssignment) -> Result<()> {
    let p = flow.poset();
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    for (var, vals) in v {
        if vals.len() != p.len() {
            return Err(Error::format(format!("`{var}` needs one value per node")));
        }
        for x in p.nodes() {
            let scaled = vals[x] * Q::from_integer(flow.lengths[x] as i64 - 1);
            if vals[x] < zero || vals[x] > one || !scaled.is_integer() {
                return Err(Error::precondition(format!(
                    "value {} of `{var}` at {} is not in Ł{}",
                    vals[x],
                    p.name(x),
                    flow.lengths[x]
                )));
            }
        }
        for x in p.nodes() {
            for y in p.nodes() {
                if p.leq(x, y) && vals[x] > vals[y] {
                    return Err(Error::precondition(format!("`{var}` decreases from {} to {}", p.name(x), p.name(y))));
                }
                let inner = |q: Q| q > zero && q < one;
                if x != y && p.comparable(x, y) && inner(vals[x]) && inner(vals[y]) {
                    return Err(Error::precondition(format!(
                        "`{var}` is strictly between 0 and 1 at comparable nodes {} and {}",
                        p.name(x),
                        p.name(y)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn eval_all(flow: &TemporalFlow, v: &TemporalAssignment, t: &Term) -> Result<Vec<Q>> {
    let p = flow.poset();
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    Ok(match t {
        Term::Var(name) => v
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnassignedVariable(name.clone()))?,
        Term::Zero => vec![zero; p.len()],
        Term::Bin(Connective::Prod, a, b) => {
            let (a, b) = (eval_all(flow, v, a)?, eval_all(flow, v, b)?);
            a.iter().zip(&b).map(|(&x, &y)| (x + y - one).max(zero)).collect()
        }
        Term::Bin(Connective::Impl, a, b) => {
            let (a, b) = (eval_all(flow, v, a)?, eval_all(flow, v, b)?);
            p.nodes()
                .map(|t| {
                    if p.nodes().all(|s| !p.leq(t, s) || a[s] <= b[s]) {
                        one
                    } else if b[t] < a[t] && a[t] < one && p.nodes().all(|s| !p.lt(t, s) || b[s] == one) {
                        (one - a[t] + b[t]).min(one)
                    } else {
                        b[t]
                    }
                })
                .collect()
        }
        Term::One | Term::Bin(Connective::Meet | Connective::Join, ..) => {
            return Err(Error::Unsupported(format!(
                "temporal semantics covers only *, -> and 0; got `{t}`"
            )))
        }
    })
}

/// `v(φ, t)` by the piecewise clauses for `*`, `->` and `0`.
pub fn temporal_eval(flow: &TemporalFlow, v: &TemporalAssignment, t: usize, phi: &Term) -> Result<Q> {
    if t >= flow.poset().len() {
        return Err(Error::format(format!("node index {t} out of range")));
    }
    if !phi.uses_only(&[Connective::Prod, Connective::Impl], false) {
        return Err(Error::Unsupported(format!(
            "temporal semantics covers only *, -> and 0; got `{phi}`"
        )));
    }
    validate_temporal_assignment(flow, v)?;
    Ok(eval_all(flow, v, phi)?[t])
}

/// For each node, the map from its algebra onto `0..k` as `Ł_k`.
fn chain_coordinates(frame: &Frame, limits: &Limits) -> Result<(TemporalFlow, Vec<Vec<Elem>>)> {
    let mut lengths = Vec::with_capacity(frame.len());
    let mut isos = Vec::with_capacity(frame.len());
    for x in frame.poset().nodes() {
        let a = frame.algebra(x);
        let chain = lukasiewicz_chain(a.size())?;
        let iso = morphism_search(a, &chain, MorphismMode::Isomorphism, limits)?.ok_or_else(|| {
            Error::precondition(format!("node {} is not valued in a Łukasiewicz chain", frame.poset().name(x)))
        })?;
        lengths.push(a.size());
        isos.push(iso);
    }
    Ok((TemporalFlow::new(frame.poset().clone(), lengths)?, isos))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemporalCrosscheck {
    /// Node name and the common value, e.g. `"1/2"`.
    pub values: Vec<(String, String)>,
}

fn crosscheck_with(
    frame: &Frame,
    flow: &TemporalFlow,
    isos: &[Vec<Elem>],
    h: &Valuation,
    phi: &Term,
) -> Result<TemporalCrosscheck> {
    let as_q = |x: usize, e: Elem| Q::new(isos[x][e] as i64, flow.lengths[x] as i64 - 1);
    let v: TemporalAssignment = h
        .iter()
        .map(|(p, f)| (p.clone(), frame.poset().nodes().map(|x| as_q(x, f[x])).collect()))
        .collect();
    validate_temporal_assignment(flow, &v)
        .map_err(|e| Error::internal(format!("valuation does not induce a temporal assignment: {e}")))?;
    let temporal = eval_all(flow, &v, phi)?;
    let relational = denotation(frame, h, phi)?;
    let mut values = Vec::with_capacity(frame.len());
    for x in frame.poset().nodes() {
        let r = as_q(x, relational[x]);
        if r != temporal[x] {
            return Err(Error::internal(format!(
                "`{phi}` at {}: temporal value {} but forcing gives {}",
                frame.poset().name(x),
                temporal[x],
                r
            )));
        }
        values.push((frame.poset().name(x).to_string(), r.to_string()));
    }
    Ok(TemporalCrosscheck { values })
}

/// Evaluates `φ` under `h` both as a temporal assignment and by forcing, at
/// every node, and insists they agree.
pub fn temporal_crosscheck(frame: &Frame, h: &Valuation, phi: &Term, limits: &Limits) -> Result<TemporalCrosscheck> {
    if !phi.uses_only(&[Connective::Prod, Connective::Impl], false) {
        return Err(Error::Unsupported(format!(
            "temporal semantics covers only *, -> and 0; got `{phi}`"
        )));
    }
    let (flow, isos) = chain_coordinates(frame, limits)?;
    crosscheck_with(frame, &flow, &isos, h, phi)
}

/// [`temporal_crosscheck`] under every valuation of `φ`'s variables.
/// Returns the number of valuations checked.
pub fn temporal_crosscheck_exhaustive(frame: &Frame, phi: &Term, limits: &Limits) -> Result<u128> {
    if !phi.uses_only(&[Connective::Prod, Connective::Impl], false) {
        return Err(Error::Unsupported(format!(
            "temporal semantics covers only *, -> and 0; got `{phi}`"
        )));
    }
    let (flow, isos) = chain_coordinates(frame, limits)?;
    let labelings = enumerate_ac_labelings(frame, limits)?;
    let vars: Vec<String> = phi.variables().into_iter().collect();
    let count = checked_power(labelings.len(), vars.len());
    limits.check_evaluations("temporal cross-check valuations", count)?;
    let mut odo = Odometer::new(vars.len(), labelings.len());
    while let Some(digits) = odo.next() {
        let h: Valuation = vars
            .iter()
            .cloned()
            .zip(digits.iter().map(|&i| labelings[i].clone()))
            .collect();
        crosscheck_with(frame, &flow, &isos, &h, phi)?;
    }
    Ok(count)
}
