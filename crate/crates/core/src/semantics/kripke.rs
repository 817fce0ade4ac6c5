use std::collections::BTreeMap;

use super::{forces, Valuation};
use crate::error::{Error, Result};
use crate::poset_product::{AcLabeling, Frame};
use crate::posets::FinitePoset;
use crate::syntax::{Connective, Term};

/// Intuitionistic valuation: variable name to an up-set of nodes.
pub type UpsetValuation = BTreeMap<String, Vec<usize>>;

fn require_two_valued(frame: &Frame) -> Result<()> {
    match frame.algebras().iter().position(|a| a.size() != 2) {
        Some(x) => Err(Error::precondition(format!(
            "node {} is not valued in the two-element algebra",
            frame.poset().name(x)
        ))),
        None => Ok(()),
    }
}

/// Indicator labelings of the given up-sets.
pub fn kripke_bridge(frame: &Frame, upsets: &UpsetValuation) -> Result<Valuation> {
    require_two_valued(frame)?;
    let p = frame.poset();
    let mut h = Valuation::new();
    for (var, set) in upsets {
        if let Some(x) = set.iter().find(|&&x| x >= p.len()) {
            return Err(Error::format(format!("node index {x} out of range")));
        }
        if !p.is_upset(set) {
            return Err(Error::precondition(format!("the set given for `{var}` is not an up-set")));
        }
        let f = p
            .nodes()
            .map(|x| {
                let a = frame.algebra(x);
                if set.contains(&x) {
                    a.top()
                } else {
                    a.bottom()
                }
            })
            .collect();
        h.insert(var.clone(), AcLabeling(f));
    }
    Ok(h)
}

/// `p ↦ U_{h(p)}`.
pub fn kripke_inverse(frame: &Frame, h: &Valuation) -> Result<UpsetValuation> {
    require_two_valued(frame)?;
    Ok(h.iter()
        .map(|(var, f)| {
            let set = frame
                .poset()
                .nodes()
                .filter(|&x| f[x] == frame.algebra(x).top())
                .collect();
            (var.clone(), set)
        })
        .collect())
}

/// Intuitionistic forcing over up-set valuations. Product is read as
/// conjunction.
pub fn kripke_forces(p: &FinitePoset, upsets: &UpsetValuation, x: usize, t: &Term) -> Result<bool> {
    Ok(match t {
        Term::Var(v) => upsets
            .get(v)
            .ok_or_else(|| Error::UnassignedVariable(v.clone()))?
            .contains(&x),
        Term::Zero => false,
        Term::One => true,
        Term::Bin(Connective::Meet | Connective::Prod, a, b) => {
            kripke_forces(p, upsets, x, a)? && kripke_forces(p, upsets, x, b)?
        }
        Term::Bin(Connective::Join, a, b) => {
            kripke_forces(p, upsets, x, a)? || kripke_forces(p, upsets, x, b)?
        }
        Term::Bin(Connective::Impl, a, b) => {
            for y in p.nodes().filter(|&y| p.leq(x, y)) {
                if kripke_forces(p, upsets, y, a)? && !kripke_forces(p, upsets, y, b)? {
                    return Ok(false);
                }
            }
            true
        }
    })
}

/// Checks that labeling forcing and Kripke forcing agree at every node, and
/// that the bridge round-trips.
pub fn check_kripke_agreement(frame: &Frame, upsets: &UpsetValuation, t: &Term) -> Result<()> {
    let h = kripke_bridge(frame, upsets)?;
    let back = kripke_inverse(frame, &h)?;
    let normalized: UpsetValuation = upsets
        .iter()
        .map(|(k, v)| {
            let mut v = v.clone();
            v.sort_unstable();
            v.dedup();
            (k.clone(), v)
        })
        .collect();
    if back != normalized {
        return Err(Error::internal("Kripke bridge does not round-trip"));
    }
    for x in frame.poset().nodes() {
        if forces(frame, &h, x, t)? != kripke_forces(frame.poset(), upsets, x, t)? {
            return Err(Error::internal(format!(
                "forcing of `{t}` at {} differs from Kripke forcing",
                frame.poset().name(x)
            )));
        }
    }
    Ok(())
}
