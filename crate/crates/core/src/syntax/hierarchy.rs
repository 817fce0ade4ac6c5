//! Substructural hierarchy classes `P_n`, `N_n`, `P_2*`, `N_2*`.
//!
//! The generating rules:
//!
//! * `P_0 = N_0 = Var`
//! * `P_{n+1}` contains `1` and `N_n`, and is closed under `|` and `*`.
//! * `N_{n+1}` contains `0` and `P_n`, is closed under `&`, and contains
//!   `t -> u` whenever `t ∈ P_{n+1}` and `u ∈ N_{n+1}`.
//! * `P_2*` contains `P_2`, is closed under `&`, `|`, `*`, and contains
//!   `t -> u` whenever `t ∈ P_1` and `u ∈ P_2*`.
//! * `N_2*` is generated like `N_2`, except that `t -> u` is admitted
//!   whenever `t ∈ P_2*` and `u ∈ N_2*`.

use serde::Serialize;

use crate::syntax::term::{Connective, Equation, Relation, Term};

/// Levels above this are reported as `None`.
pub const LEVEL_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyClass {
    /// Least `n` with the term in `P_n`, or `None` when above [`LEVEL_CAP`].
    pub p_level: Option<u32>,
    /// Least `n` with the term in `N_n`, or `None` when above [`LEVEL_CAP`].
    pub n_level: Option<u32>,
    pub in_p2_star: bool,
    pub in_n2_star: bool,
}

impl HierarchyClass {
    pub fn in_p(&self, n: u32) -> bool {
        self.p_level.is_some_and(|p| p <= n)
    }

    pub fn in_n(&self, n: u32) -> bool {
        self.n_level.is_some_and(|m| m <= n)
    }
}

#[derive(Clone, Copy, Debug)]
struct Levels {
    p: u32,
    n: u32,
    p2s: bool,
    n2s: bool,
}

fn levels(t: &Term) -> Levels {
    match t {
        Term::Var(_) => Levels {
            p: 0,
            n: 0,
            p2s: true,
            n2s: true,
        },
        Term::One => {
            // 1 ∈ P_1, and enters N only through P: N_2.
            Levels {
                p: 1,
                n: 2,
                p2s: true,
                n2s: true,
            }
        }
        Term::Zero => Levels {
            p: 2,
            n: 1,
            p2s: true,
            n2s: true,
        },
        Term::Bin(op, l, r) => {
            let a = levels(l);
            let b = levels(r);
            match op {
                Connective::Join | Connective::Prod => {
                    let p = a.p.max(b.p).max(1);
                    let n = p + 1;
                    Levels {
                        p,
                        n,
                        p2s: p <= 2 || (a.p2s && b.p2s),
                        n2s: p <= 1 || n <= 2,
                    }
                }
                Connective::Meet => {
                    let n = a.n.max(b.n).max(1);
                    let p = n + 1;
                    Levels {
                        p,
                        n,
                        p2s: p <= 2 || (a.p2s && b.p2s),
                        n2s: n <= 2 || (a.n2s && b.n2s),
                    }
                }
                Connective::Impl => {
                    let n = a.p.max(b.n).max(1);
                    let p = n + 1;
                    Levels {
                        p,
                        n,
                        p2s: p <= 2 || (a.p <= 1 && b.p2s),
                        n2s: n <= 2 || (a.p2s && b.n2s),
                    }
                }
            }
        }
    }
}

/// Bottom-up classification of a term.
pub fn classify_hierarchy(t: &Term) -> HierarchyClass {
    let l = levels(t);
    let cap = |x: u32| (x <= LEVEL_CAP).then_some(x);
    HierarchyClass {
        p_level: cap(l.p),
        n_level: cap(l.n),
        in_p2_star: l.p2s,
        in_n2_star: l.n2s,
    }
}

/// Why an equation is or is not conuclear.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConuclearTrace {
    pub conuclear: bool,
    /// Antecedent and consequent when the equation has the shape `t -> u = 1`.
    pub antecedent: Option<String>,
    pub consequent: Option<String>,
    pub antecedent_class: Option<HierarchyClass>,
    pub consequent_class: Option<HierarchyClass>,
    pub reason: String,
}

/// An equation is conuclear when it reads `t -> u = 1` with `t ∈ P_2*` and
/// `u ∈ N_2*`. The mirrored form `1 = t -> u` is accepted too.
pub fn is_conuclear_equation(eq: &Equation) -> ConuclearTrace {
    let imp = match (eq.relation, &eq.lhs, &eq.rhs) {
        (Relation::Equal, Term::Bin(Connective::Impl, t, u), Term::One)
        | (Relation::Equal, Term::One, Term::Bin(Connective::Impl, t, u)) => Some((t, u)),
        _ => None,
    };
    let Some((t, u)) = imp else {
        return ConuclearTrace {
            conuclear: false,
            antecedent: None,
            consequent: None,
            antecedent_class: None,
            consequent_class: None,
            reason: "not of the form t -> u = 1".into(),
        };
    };
    let tc = classify_hierarchy(t);
    let uc = classify_hierarchy(u);
    let conuclear = tc.in_p2_star && uc.in_n2_star;
    let reason = match (tc.in_p2_star, uc.in_n2_star) {
        (true, true) => "antecedent in P2*, consequent in N2*".to_string(),
        (false, _) => "antecedent not in P2*".to_string(),
        (true, false) => "consequent not in N2*".to_string(),
    };
    ConuclearTrace {
        conuclear,
        antecedent: Some(t.render()),
        consequent: Some(u.render()),
        antecedent_class: Some(tc),
        consequent_class: Some(uc),
        reason,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::{parse, parse_equation};

    fn class(s: &str) -> HierarchyClass {
        classify_hierarchy(&parse(s).unwrap())
    }

    #[test]
    fn variables_sit_at_level_zero() {
        let c = class("p");
        assert_eq!(c.p_level, Some(0));
        assert_eq!(c.n_level, Some(0));
    }

    #[test]
    fn prelinearity_is_in_p2() {
        let c = class("(x -> y) | (y -> x)");
        assert_eq!(c.p_level, Some(2));
        assert!(c.in_p2_star);
        assert!(!c.in_n2_star);
        assert_eq!(class("x -> y").n_level, Some(1));
    }

    #[test]
    fn divisibility_implication_is_conuclear() {
        let eq = parse_equation("(x * (x -> y)) -> (x & y) = 1").unwrap();
        let trace = is_conuclear_equation(&eq);
        assert!(trace.conuclear, "{trace:?}");
        assert!(class("x * (x -> y)").in_p2_star);
        assert!(class("x & y").in_n2_star);
    }

    #[test]
    fn conuclear_requires_shape() {
        let eq = parse_equation("x & y = x * (x -> y)").unwrap();
        let trace = is_conuclear_equation(&eq);
        assert!(!trace.conuclear);
        assert!(trace.antecedent.is_none());
    }

    #[test]
    fn negated_implication_is_conuclear() {
        let eq = parse_equation("(x -> y) -> 0 = 1").unwrap();
        assert!(is_conuclear_equation(&eq).conuclear);
    }

    #[test]
    fn double_negation_elimination_is_not_conuclear() {
        let eq = parse_equation("((x -> 0) -> 0) -> x = 1").unwrap();
        let trace = is_conuclear_equation(&eq);
        assert!(!trace.conuclear);
        assert_eq!(trace.reason, "antecedent not in P2*");
    }

    #[test]
    fn levels_above_cap_are_reported_absent() {
        // Each `(_ -> y) -> y` wrapper climbs two levels.
        let mut t = parse("x").unwrap();
        for _ in 0..6 {
            t = Term::implies(Term::implies(t, Term::var("y")), Term::var("y"));
        }
        let c = classify_hierarchy(&t);
        assert_eq!(c.p_level, None);
        assert!(oracle::in_p(&t, 20));
    }

    #[test]
    fn constants() {
        assert_eq!(class("1").p_level, Some(1));
        assert_eq!(class("0").n_level, Some(1));
        assert_eq!(class("0").p_level, Some(2));
    }

    mod props {
        use super::*;
        use crate::testing::arb_term;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn levels_match_oracle(t in arb_term(6, &["x", "y", "z"])) {
                let c = classify_hierarchy(&t);
                for n in 0..=LEVEL_CAP {
                    prop_assert_eq!(c.in_p(n), oracle::in_p(&t, n));
                    prop_assert_eq!(c.in_n(n), oracle::in_n(&t, n));
                }
                prop_assert_eq!(c.in_p2_star, oracle::in_p2_star(&t));
                prop_assert_eq!(c.in_n2_star, oracle::in_n2_star(&t));
            }

            #[test]
            fn membership_is_monotone(t in arb_term(8, &["x", "y"])) {
                let c = classify_hierarchy(&t);
                for n in 0..LEVEL_CAP {
                    prop_assert!(!c.in_p(n) || c.in_p(n + 1));
                    prop_assert!(!c.in_n(n) || c.in_n(n + 1));
                    prop_assert!(!c.in_p(n) || c.in_n(n + 1));
                    prop_assert!(!c.in_n(n) || c.in_p(n + 1));
                }
                prop_assert!(!c.in_p(2) || c.in_p2_star);
                prop_assert!(!c.in_n(2) || c.in_n2_star);
            }
        }
    }
}
