use serde::Serialize;

use crate::algebra::{check_equation, FiniteResiduatedLattice};
use crate::error::{Error, Result};
use crate::limits::{checked_power, Limits};
use crate::syntax::eval::{CompiledTerm, Odometer};
use crate::syntax::term::{Equation, Sequent, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConsequenceReport {
    /// Every assignment sending all premises to top sends the conclusion to top.
    pub direct: bool,
    /// Least `k <= k_max` with `ψ1^k * ... * ψn^k -> φ = 1` valid, if any.
    pub local_deduction_k: Option<u32>,
}

/// Checks a sequent in one finite algebra, directly and through the bounded
/// local deduction theorem.
pub fn sequent_consequence(
    a: &FiniteResiduatedLattice,
    s: &Sequent,
    k_max: u32,
    limits: &Limits,
) -> Result<ConsequenceReport> {
    let mut vars = s.conclusion.variables();
    for p in &s.premises {
        vars.extend(p.variables());
    }
    let vars: Vec<String> = vars.into_iter().collect();
    limits.check_evaluations("sequent assignments", checked_power(a.size(), vars.len()))?;

    let premises = s
        .premises
        .iter()
        .map(|p| CompiledTerm::new(p, &vars))
        .collect::<Result<Vec<_>>>()?;
    let conclusion = CompiledTerm::new(&s.conclusion, &vars)?;
    let mut stack = Vec::new();
    let mut odo = Odometer::new(vars.len(), a.size());
    let mut direct = true;
    while let Some(slots) = odo.next() {
        if premises.iter().all(|p| p.eval(a, slots, &mut stack) == a.top())
            && conclusion.eval(a, slots, &mut stack) != a.top()
        {
            direct = false;
            break;
        }
    }

    let mut local_deduction_k = None;
    for k in 0..=k_max {
        let antecedent = s
            .premises
            .iter()
            .map(|p| Term::power(p.clone(), k))
            .reduce(Term::prod)
            .unwrap_or(Term::One);
        let eq = Equation::is_top(Term::implies(antecedent, s.conclusion.clone()));
        if check_equation(a, &eq, limits)?.is_valid() {
            local_deduction_k = Some(k);
            break;
        }
    }
    if local_deduction_k.is_some() && !direct {
        return Err(Error::internal(format!(
            "local deduction succeeds for `{s}` but direct consequence fails"
        )));
    }
    Ok(ConsequenceReport {
        direct,
        local_deduction_k,
    })
}
