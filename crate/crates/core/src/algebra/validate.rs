use crate::algebra::{FiniteResiduatedLattice, RawAlgebra};
use crate::error::{Error, Result, Violation};

fn check_format(raw: &RawAlgebra) -> Result<()> {
    let n = raw.size;
    if n == 0 {
        return Err(Error::format("algebra must have at least one element"));
    }
    for (name, table) in [
        ("meet", &raw.meet),
        ("join", &raw.join),
        ("prod", &raw.prod),
        ("impl", &raw.imp),
    ] {
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::format(format!("{name} table is not {n}x{n}")));
        }
        for (x, row) in table.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::format(format!(
                        "{name}[{x}][{y}] = {v} is out of range 0..{n}"
                    )));
                }
            }
        }
    }
    for (name, v) in [("bottom", raw.bottom), ("top", raw.top)] {
        if v >= n {
            return Err(Error::format(format!("{name} = {v} is out of range 0..{n}")));
        }
    }
    Ok(())
}

fn violated(axiom: &str, witness: &[(&str, usize)]) -> Error {
    Error::Violation(Violation::new(axiom, witness))
}

fn check_lattice(a: &FiniteResiduatedLattice) -> Result<()> {
    let els = a.elements();
    for x in els.clone() {
        if a.meet(x, x) != x {
            return Err(violated("meet idempotent", &[("x", x)]));
        }
        if a.join(x, x) != x {
            return Err(violated("join idempotent", &[("x", x)]));
        }
        if a.meet(a.bottom(), x) != a.bottom() {
            return Err(violated("bottom is least", &[("x", x)]));
        }
        if a.meet(x, a.top()) != x {
            return Err(violated("top is greatest", &[("x", x)]));
        }
    }
    for x in els.clone() {
        for y in els.clone() {
            if a.meet(x, y) != a.meet(y, x) {
                return Err(violated("meet commutative", &[("x", x), ("y", y)]));
            }
            if a.join(x, y) != a.join(y, x) {
                return Err(violated("join commutative", &[("x", x), ("y", y)]));
            }
            if a.meet(x, a.join(x, y)) != x {
                return Err(violated("absorption x&(x|y)=x", &[("x", x), ("y", y)]));
            }
            if a.join(x, a.meet(x, y)) != x {
                return Err(violated("absorption x|(x&y)=x", &[("x", x), ("y", y)]));
            }
        }
    }
    for x in els.clone() {
        for y in els.clone() {
            for z in els.clone() {
                if a.meet(a.meet(x, y), z) != a.meet(x, a.meet(y, z)) {
                    return Err(violated("meet associative", &[("x", x), ("y", y), ("z", z)]));
                }
                if a.join(a.join(x, y), z) != a.join(x, a.join(y, z)) {
                    return Err(violated("join associative", &[("x", x), ("y", y), ("z", z)]));
                }
            }
        }
    }
    Ok(())
}

fn check_monoid(a: &FiniteResiduatedLattice) -> Result<()> {
    let els = a.elements();
    for x in els.clone() {
        if a.prod(x, a.top()) != x {
            return Err(violated("top is the product unit", &[("x", x)]));
        }
        for y in els.clone() {
            if a.prod(x, y) != a.prod(y, x) {
                return Err(violated("prod commutative", &[("x", x), ("y", y)]));
            }
        }
    }
    for x in els.clone() {
        for y in els.clone() {
            for z in els.clone() {
                if a.prod(a.prod(x, y), z) != a.prod(x, a.prod(y, z)) {
                    return Err(violated("prod associative", &[("x", x), ("y", y), ("z", z)]));
                }
            }
        }
    }
    Ok(())
}

fn quantifier(a: &FiniteResiduatedLattice) -> Result<()> {
    for x in a.elements() {
        for y in a.elements() {
            let xy = a.prod(x, y);
            for z in a.elements() {
                if a.leq(xy, z) != a.leq(x, a.imp(y, z)) {
                    return Err(violated(
                        "residuation x*y<=z iff x<=y->z",
                        &[("x", x), ("y", y), ("z", z)],
                    ));
                }
            }
        }
    }
    Ok(())
}

fn equations(a: &FiniteResiduatedLattice) -> Result<()> {
    for x in a.elements() {
        for y in a.elements() {
            if a.join(a.prod(x, a.imp(x, y)), y) != y {
                return Err(violated("(x*(x->y))|y = y", &[("x", x), ("y", y)]));
            }
            if a.meet(a.imp(x, a.prod(x, y)), y) != y {
                return Err(violated("(x->(x*y))&y = y", &[("x", x), ("y", y)]));
            }
            for z in a.elements() {
                if a.prod(x, a.join(y, z)) != a.join(a.prod(x, y), a.prod(x, z)) {
                    return Err(violated(
                        "x*(y|z) = x*y | x*z",
                        &[("x", x), ("y", y), ("z", z)],
                    ));
                }
                if a.imp(x, a.meet(y, z)) != a.meet(a.imp(x, y), a.imp(x, z)) {
                    return Err(violated(
                        "x->(y&z) = (x->y)&(x->z)",
                        &[("x", x), ("y", y), ("z", z)],
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Residuation checked directly: `x*y <= z` iff `x <= y->z` for all triples.
///
/// Only the table format is checked first; the result is meaningful when the
/// lattice and monoid axioms hold.
pub fn residuation_by_quantifier(raw: &RawAlgebra) -> Result<()> {
    check_format(raw)?;
    quantifier(&FiniteResiduatedLattice::from_raw_unchecked(raw))
}

/// Residuation checked through the four equations
/// `x(y|z) = xy|xz`, `x->(y&z) = (x->y)&(x->z)`, `(x(x->y))|y = y`,
/// `(x->xy)&y = y`.
///
/// Only the table format is checked first; the result is meaningful when the
/// lattice and monoid axioms hold.
pub fn residuation_by_equations(raw: &RawAlgebra) -> Result<()> {
    check_format(raw)?;
    equations(&FiniteResiduatedLattice::from_raw_unchecked(raw))
}

/// Accepts exactly the bounded commutative integral residuated lattices.
///
/// Axioms are checked in a fixed order (lattice, monoid, residuation) and the
/// first failure is returned with its witnesses. Residuation is decided both
/// by the pointwise biconditional and by the four-equation axiomatization; a
/// disagreement between the two is an internal error.
pub fn validate_algebra(raw: &RawAlgebra) -> Result<()> {
    check_format(raw)?;
    let a = FiniteResiduatedLattice::from_raw_unchecked(raw);
    validate_tables(&a)
}

pub(crate) fn validate_tables(a: &FiniteResiduatedLattice) -> Result<()> {
    check_lattice(a)?;
    check_monoid(a)?;
    let by_quantifier = quantifier(a);
    let by_equations = equations(a);
    match (by_quantifier, by_equations) {
        (Ok(()), Ok(())) => Ok(()),
        (Err(e), Err(_)) => Err(e),
        (q, e) => Err(Error::internal(format!(
            "residuation checks disagree: quantifier {}, equations {}",
            q.map_or_else(|e| e.to_string(), |_| "ok".into()),
            e.map_or_else(|e| e.to_string(), |_| "ok".into()),
        ))),
    }
}

/// Validates an algebra built by the toolkit itself; any failure is a bug.
pub(crate) fn self_check(a: &FiniteResiduatedLattice, what: &str) -> Result<()> {
    if a.size() > crate::limits::SELF_CHECK_MAX_SIZE {
        return Ok(());
    }
    validate_tables(a).map_err(|e| Error::internal(format!("{what} is not a residuated lattice: {e}")))
}
