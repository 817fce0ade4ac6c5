use serde::Serialize;

use crate::algebra::{Elem, FiniteResiduatedLattice};
use crate::error::Result;
use crate::limits::{checked_power, Limits};
use crate::syntax::{parse_equation, CompiledTerm, Equation, Odometer, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EquationCheck {
    Valid {
        assignments: u128,
    },
    /// The first refuting assignment in odometer order (variables sorted by
    /// name, the first one most significant).
    Counter {
        assignment: Vec<(String, Elem)>,
        lhs: Elem,
        rhs: Elem,
    },
}

impl EquationCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, EquationCheck::Valid { .. })
    }
}

/// Decides an equation or inequality by evaluating it under every
/// assignment of its variables.
pub fn check_equation(
    a: &FiniteResiduatedLattice,
    eq: &Equation,
    limits: &Limits,
) -> Result<EquationCheck> {
    let vars: Vec<String> = eq.variables().into_iter().collect();
    let count = checked_power(a.size(), vars.len());
    limits.check_evaluations("equation check assignments", count)?;
    let lhs = CompiledTerm::new(&eq.lhs, &vars)?;
    let rhs = CompiledTerm::new(&eq.rhs, &vars)?;
    let mut stack = Vec::new();
    let mut odo = Odometer::new(vars.len(), a.size());
    while let Some(slots) = odo.next() {
        let l = lhs.eval(a, slots, &mut stack);
        let r = rhs.eval(a, slots, &mut stack);
        let holds = match eq.relation {
            Relation::Equal => l == r,
            Relation::LessEq => a.leq(l, r),
        };
        if !holds {
            return Ok(EquationCheck::Counter {
                assignment: vars.iter().cloned().zip(slots.iter().copied()).collect(),
                lhs: l,
                rhs: r,
            });
        }
    }
    Ok(EquationCheck::Valid { assignments: count })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_gbl: bool,
    pub is_bl: bool,
    pub is_mv: bool,
    pub is_heyting: bool,
    pub is_godel: bool,
    pub is_boolean: bool,
    pub is_chain: bool,
    /// Least `k >= 1` with `x^(k+1) = x^k` for every `x`.
    pub potency: Option<usize>,
}

/// Least `k >= 1` with `x^(k+1) = x^k` for all `x`, searched up to the carrier
/// size (a finite algebra always has one by then).
pub fn potency(a: &FiniteResiduatedLattice) -> Option<usize> {
    (1..=a.size().max(1)).find(|&k| a.elements().all(|x| a.power(x, k + 1) == a.power(x, k)))
}

pub fn classify(a: &FiniteResiduatedLattice) -> Classification {
    let unbounded = Limits::default().with_max_evaluations(u64::MAX);
    let holds = |text: &str| {
        let eq = parse_equation(text).expect("builtin identity parses");
        check_equation(a, &eq, &unbounded)
            .expect("builtin identities have at most two variables")
            .is_valid()
    };
    let divisible = holds("x * (x -> y) = x & y");
    let prelinear = holds("(x -> y) | (y -> x) = 1");
    let involutive = holds("x = (x -> 0) -> 0");
    let idempotent = holds("x * x = x");
    let is_chain = a
        .elements()
        .all(|x| a.elements().all(|y| a.leq(x, y) || a.leq(y, x)));

    let is_gbl = divisible;
    let is_heyting = is_gbl && idempotent;
    Classification {
        is_gbl,
        is_bl: is_gbl && prelinear,
        is_mv: is_gbl && prelinear && involutive,
        is_heyting,
        is_godel: is_heyting && prelinear,
        is_boolean: is_heyting && involutive,
        is_chain,
        potency: potency(a),
    }
}

/// Whether the lattice reduct is distributive.
pub fn is_distributive(a: &FiniteResiduatedLattice) -> bool {
    a.elements().all(|x| {
        a.elements().all(|y| {
            a.elements()
                .all(|z| a.meet(x, a.join(y, z)) == a.join(a.meet(x, y), a.meet(x, z)))
        })
    })
}
