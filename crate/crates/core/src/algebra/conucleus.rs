use crate::algebra::validate::self_check;
use crate::algebra::{Elem, FiniteResiduatedLattice};
use crate::error::{Error, Result, Violation};

/// An interior operator on `base`: deflationary, idempotent, monotone,
/// submultiplicative, and with `σ(1)σ(x) = σ(x)`.
#[derive(Clone, Debug)]
pub struct Conucleus<'a> {
    base: &'a FiniteResiduatedLattice,
    map: Vec<Elem>,
}

impl<'a> Conucleus<'a> {
    pub fn new(base: &'a FiniteResiduatedLattice, map: Vec<Elem>) -> Result<Self> {
        is_conucleus(base, &map).map_err(Error::Violation)?;
        Ok(Conucleus { base, map })
    }

    pub fn identity(base: &'a FiniteResiduatedLattice) -> Self {
        Conucleus {
            base,
            map: base.elements().collect(),
        }
    }

    pub fn base(&self) -> &'a FiniteResiduatedLattice {
        self.base
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }
}

/// Checks the five conucleus conditions exhaustively and reports the first
/// one that fails.
pub fn is_conucleus(a: &FiniteResiduatedLattice, map: &[Elem]) -> std::result::Result<(), Violation> {
    if map.len() != a.size() {
        return Err(Violation::new("map is total on the carrier", &[("len", map.len())]));
    }
    if let Some(x) = map.iter().position(|&e| e >= a.size()) {
        return Err(Violation::new("map stays in the carrier", &[("x", x)]));
    }
    let s = |x: Elem| map[x];
    for x in a.elements() {
        if !a.leq(s(x), x) {
            return Err(Violation::new("s(x) <= x", &[("x", x)]));
        }
    }
    for x in a.elements() {
        if s(s(x)) != s(x) {
            return Err(Violation::new("s(s(x)) = s(x)", &[("x", x)]));
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if a.leq(x, y) && !a.leq(s(x), s(y)) {
                return Err(Violation::new("x <= y implies s(x) <= s(y)", &[("x", x), ("y", y)]));
            }
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if !a.leq(a.prod(s(x), s(y)), s(a.prod(x, y))) {
                return Err(Violation::new("s(x)s(y) <= s(xy)", &[("x", x), ("y", y)]));
            }
        }
    }
    let s1 = s(a.top());
    for x in a.elements() {
        if a.prod(s1, s(x)) != s(x) {
            return Err(Violation::new("s(1)s(x) = s(x)", &[("x", x)]));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConuclearImage {
    /// Fixpoints of the conucleus in the base algebra, ascending. Element `i`
    /// of `algebra` is `elements[i]`.
    pub elements: Vec<Elem>,
    pub algebra: FiniteResiduatedLattice,
}

/// The algebra on the fixpoints of `sigma`, with meet and implication
/// followed by `sigma`, join and product inherited, and top `sigma(1)`.
pub fn conuclear_image(sigma: &Conucleus<'_>) -> Result<ConuclearImage> {
    let a = sigma.base();
    let elements: Vec<Elem> = a.elements().filter(|&x| sigma.apply(x) == x).collect();
    let mut index = vec![usize::MAX; a.size()];
    for (i, &e) in elements.iter().enumerate() {
        index[e] = i;
    }
    let idx = |e: Elem, what: &str| -> Result<Elem> {
        match index[e] {
            usize::MAX => Err(Error::internal(format!("{what} left the fixpoint set at {e}"))),
            i => Ok(i),
        }
    };
    let n = elements.len();
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    let mut prod = Vec::with_capacity(n * n);
    let mut imp = Vec::with_capacity(n * n);
    for &x in &elements {
        for &y in &elements {
            meet.push(idx(sigma.apply(a.meet(x, y)), "meet")?);
            join.push(idx(a.join(x, y), "join")?);
            prod.push(idx(a.prod(x, y), "product")?);
            imp.push(idx(sigma.apply(a.imp(x, y)), "implication")?);
        }
    }
    let bottom = idx(a.bottom(), "bottom")?;
    let top = idx(sigma.apply(a.top()), "top")?;
    let algebra = FiniteResiduatedLattice::from_tables(n, meet, join, prod, imp, bottom, top);
    self_check(&algebra, "conuclear image")?;
    Ok(ConuclearImage { elements, algebra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lukasiewicz_chain;

    #[test]
    fn identity_is_a_conucleus_with_image_the_algebra() {
        let l3 = lukasiewicz_chain(3).unwrap();
        assert!(is_conucleus(&l3, &[0, 1, 2]).is_ok());
        let img = conuclear_image(&Conucleus::identity(&l3)).unwrap();
        assert_eq!(img.algebra, l3);
    }

    #[test]
    fn constant_bottom_on_l2_satisfies_all_five() {
        // σ(1)σ(x) = 0·0 = 0 = σ(x) for both x, so nothing fails.
        let l2 = lukasiewicz_chain(2).unwrap();
        assert!(is_conucleus(&l2, &[0, 0]).is_ok());
        let img = conuclear_image(&Conucleus::new(&l2, vec![0, 0]).unwrap()).unwrap();
        assert_eq!(img.algebra.size(), 1);
    }

    #[test]
    fn unit_condition_failure() {
        let l3 = lukasiewicz_chain(3).unwrap();
        let err = is_conucleus(&l3, &[0, 1, 1]).unwrap_err();
        assert_eq!(err.axiom, "s(1)s(x) = s(x)");
        assert_eq!(err.witness, vec![("x".to_string(), 1)]);
    }

    #[test]
    fn inflationary_map_rejected() {
        let l3 = lukasiewicz_chain(3).unwrap();
        assert_eq!(is_conucleus(&l3, &[1, 1, 2]).unwrap_err().axiom, "s(x) <= x");
        assert_eq!(
            is_conucleus(&l3, &[0, 1]).unwrap_err().axiom,
            "map is total on the carrier"
        );
        assert!(Conucleus::new(&l3, vec![1, 1, 2]).is_err());
    }
}
