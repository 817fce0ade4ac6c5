use std::collections::BTreeSet;

use crate::algebra::{Elem, FiniteResiduatedLattice};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::syntax::Connective;

/// Index of a tuple in mixed radix, leftmost coordinate most significant.
pub fn mixed_radix_encode(digits: &[usize], radices: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0, |acc, (&d, &r)| acc * r + d)
}

/// Inverse of [`mixed_radix_encode`].
pub fn mixed_radix_decode(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (d, &r) in digits.iter_mut().zip(radices).rev() {
        *d = index % r;
        index /= r;
    }
    digits
}

/// Componentwise product. Element `i` of the result is the tuple
/// `mixed_radix_decode(i, sizes)`, leftmost factor most significant.
pub fn direct_product(
    factors: &[FiniteResiduatedLattice],
    limits: &Limits,
) -> Result<FiniteResiduatedLattice> {
    if factors.is_empty() {
        return Err(Error::precondition("direct product of an empty family"));
    }
    let radices: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let size = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .unwrap_or(usize::MAX);
    limits.check_carrier("direct product carrier", size as u128)?;

    let tuples: Vec<Vec<usize>> = (0..size).map(|i| mixed_radix_decode(i, &radices)).collect();
    let bottom = mixed_radix_encode(
        &factors.iter().map(|f| f.bottom()).collect::<Vec<_>>(),
        &radices,
    );
    let top = mixed_radix_encode(&factors.iter().map(|f| f.top()).collect::<Vec<_>>(), &radices);
    let mut scratch = vec![0; factors.len()];
    Ok(FiniteResiduatedLattice::tabulate(size, bottom, top, |c, x, y| {
        for (k, f) in factors.iter().enumerate() {
            scratch[k] = f.op(c, tuples[x][k], tuples[y][k]);
        }
        mixed_radix_encode(&scratch, &radices)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    /// Elements of the parent algebra, ascending. Element `i` of `algebra`
    /// is `elements[i]`.
    pub elements: Vec<Elem>,
    pub algebra: FiniteResiduatedLattice,
}

/// Least subset containing `seed`, bottom and top, closed under all four
/// operations.
pub fn generated_subalgebra(a: &FiniteResiduatedLattice, seed: &[Elem]) -> Result<Subalgebra> {
    if let Some(&bad) = seed.iter().find(|&&e| e >= a.size()) {
        return Err(Error::format(format!("seed element {bad} out of range")));
    }
    let mut set: BTreeSet<Elem> = seed.iter().copied().collect();
    set.insert(a.bottom());
    set.insert(a.top());
    let mut frontier: Vec<Elem> = set.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        let current: Vec<Elem> = set.iter().copied().collect();
        for y in current {
            for c in Connective::ALL {
                for z in [a.op(c, x, y), a.op(c, y, x)] {
                    if set.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
    }
    let elements: Vec<Elem> = set.into_iter().collect();
    let algebra = restrict(a, &elements, a.bottom())?;
    Ok(Subalgebra { elements, algebra })
}

/// The algebra induced on `elements` (ascending) with `bottom` as least
/// element and the parent's top. Fails if `elements` is not closed.
pub(crate) fn restrict(
    a: &FiniteResiduatedLattice,
    elements: &[Elem],
    bottom: Elem,
) -> Result<FiniteResiduatedLattice> {
    let mut index = vec![usize::MAX; a.size()];
    for (i, &e) in elements.iter().enumerate() {
        index[e] = i;
    }
    let n = elements.len();
    let mut tables: [Vec<Elem>; 4] = Default::default();
    for (slot, c) in tables.iter_mut().zip(Connective::ALL) {
        slot.reserve(n * n);
        for &x in elements {
            for &y in elements {
                let z = a.op(c, x, y);
                if index[z] == usize::MAX {
                    return Err(Error::internal(format!(
                        "subset not closed: {x} {} {y} = {z}",
                        c.symbol()
                    )));
                }
                slot.push(index[z]);
            }
        }
    }
    let lookup = |e: Elem, what: &str| {
        if e < a.size() && index[e] != usize::MAX {
            Ok(index[e])
        } else {
            Err(Error::internal(format!("{what} {e} not in the subset")))
        }
    };
    let bottom = lookup(bottom, "bottom")?;
    let top = lookup(a.top(), "top")?;
    let [meet, join, prod, imp] = tables;
    Ok(FiniteResiduatedLattice::from_tables(
        n, meet, join, prod, imp, bottom, top,
    ))
}
