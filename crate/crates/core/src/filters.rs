//! Deductive filters, quotients by their congruences, values and subdirect
//! irreducibility.

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::algebra::{Elem, FiniteResiduatedLattice};
use crate::error::{Error, Result, Violation};
use crate::limits::Limits;
use crate::posets::{validate_poset, FinitePoset};
use crate::syntax::Connective;

/// A nonempty up-set closed under products. Serialized as its sorted
/// member indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeductiveFilter {
    members: FixedBitSet,
}

impl DeductiveFilter {
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> Vec<Elem> {
        self.members.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &DeductiveFilter) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Least member; a filter of a finite integral algebra is `↑least`.
    pub fn least(&self, a: &FiniteResiduatedLattice) -> Elem {
        self.members
            .ones()
            .find(|&e| self.members.ones().all(|y| a.leq(e, y)))
            .expect("a finite filter has a least element")
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.members.ones().map(|e| e.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl Serialize for DeductiveFilter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.ones())
    }
}

/// Checks nonemptiness, upward closure and product closure, in that order.
pub fn is_deductive_filter(a: &FiniteResiduatedLattice, s: &[Elem]) -> std::result::Result<(), Violation> {
    if let Some(&x) = s.iter().find(|&&x| x >= a.size()) {
        return Err(Violation::new("subset of the carrier", &[("x", x)]));
    }
    if s.is_empty() {
        return Err(Violation::new("nonempty", &[]));
    }
    let mut set = FixedBitSet::with_capacity(a.size());
    s.iter().for_each(|&x| set.insert(x));
    for x in set.ones() {
        for y in a.elements() {
            if a.leq(x, y) && !set.contains(y) {
                return Err(Violation::new("up-set", &[("x", x), ("y", y)]));
            }
        }
    }
    for x in set.ones() {
        for y in set.ones() {
            if !set.contains(a.prod(x, y)) {
                return Err(Violation::new("closed under products", &[("x", x), ("y", y)]));
            }
        }
    }
    Ok(())
}

/// Least deductive filter containing `s`.
pub fn generated_filter(a: &FiniteResiduatedLattice, s: &[Elem]) -> Result<DeductiveFilter> {
    if let Some(&x) = s.iter().find(|&&x| x >= a.size()) {
        return Err(Error::format(format!("element {x} out of range")));
    }
    let mut set = FixedBitSet::with_capacity(a.size());
    set.insert(a.top());
    s.iter().for_each(|&x| set.insert(x));
    loop {
        let before = set.count_ones(..);
        let current: Vec<Elem> = set.ones().collect();
        for &x in &current {
            for &y in &current {
                set.insert(a.prod(x, y));
            }
        }
        let current: Vec<Elem> = set.ones().collect();
        for x in current {
            for y in a.elements() {
                if a.leq(x, y) {
                    set.insert(y);
                }
            }
        }
        if set.count_ones(..) == before {
            return Ok(DeductiveFilter { members: set });
        }
    }
}

/// All deductive filters, smallest first, ties broken by member list.
///
/// Every filter of a finite integral algebra is generated by its least
/// element, so the principal closures cover them all.
pub fn enumerate_filters(a: &FiniteResiduatedLattice, limits: &Limits) -> Result<Vec<DeductiveFilter>> {
    limits.check_carrier("filter enumeration carrier", a.size() as u128)?;
    let mut out: Vec<DeductiveFilter> = Vec::new();
    for x in a.elements() {
        let f = generated_filter(a, &[x])?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out.sort_by_key(|f| (f.len(), f.members()));
    Ok(out)
}

fn filter_from(a: &FiniteResiduatedLattice, s: &[Elem]) -> Result<DeductiveFilter> {
    is_deductive_filter(a, s).map_err(|v| Error::precondition(format!("not a deductive filter: {v}")))?;
    let mut members = FixedBitSet::with_capacity(a.size());
    s.iter().for_each(|&x| members.insert(x));
    Ok(DeductiveFilter { members })
}

impl DeductiveFilter {
    /// Checks `s` and wraps it; a non-filter is a precondition error.
    pub fn new(a: &FiniteResiduatedLattice, s: &[Elem]) -> Result<Self> {
        filter_from(a, s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Congruence classes, ordered by least representative.
    pub classes: Vec<Vec<Elem>>,
    /// Class index of each element.
    pub projection: Vec<Elem>,
    pub algebra: FiniteResiduatedLattice,
}

/// `A/F`: classes of `x ~ y iff (x -> y) & (y -> x) ∈ F`, with operations
/// on representatives. Well-definedness is verified.
pub fn quotient(a: &FiniteResiduatedLattice, f: &DeductiveFilter) -> Result<Quotient> {
    if f.members.len() != a.size() {
        return Err(Error::precondition("filter belongs to a different algebra"));
    }
    let related = |x: Elem, y: Elem| f.contains(a.meet(a.imp(x, y), a.imp(y, x)));
    let mut projection = vec![usize::MAX; a.size()];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for x in a.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let class: Vec<Elem> = a.elements().filter(|&y| related(x, y)).collect();
        for &y in &class {
            if projection[y] != usize::MAX {
                return Err(Error::internal(format!("filter relation is not transitive at {x}, {y}")));
            }
            projection[y] = classes.len();
        }
        classes.push(class);
    }
    let n = classes.len();
    let mut tables: [Vec<Elem>; 4] = Default::default();
    for (slot, c) in tables.iter_mut().zip(Connective::ALL) {
        for cx in &classes {
            for cy in &classes {
                let value = projection[a.op(c, cx[0], cy[0])];
                for &x in cx {
                    for &y in cy {
                        if projection[a.op(c, x, y)] != value {
                            return Err(Error::internal(format!(
                                "{} is not well defined on classes of {x} and {y}",
                                c.symbol()
                            )));
                        }
                    }
                }
                slot.push(value);
            }
        }
    }
    let [meet, join, prod, imp] = tables;
    let algebra = FiniteResiduatedLattice::from_tables(
        n,
        meet,
        join,
        prod,
        imp,
        projection[a.bottom()],
        projection[a.top()],
    );
    crate::algebra::self_check(&algebra, "quotient")?;
    Ok(Quotient {
        classes,
        projection,
        algebra,
    })
}

#[derive(Clone, Debug)]
pub struct Values {
    /// The values, in [`enumerate_filters`] order.
    pub filters: Vec<DeductiveFilter>,
    /// `(Δ, ⊆)`, node `i` standing for `filters[i]` and named by its members.
    pub poset: FinitePoset,
}

/// Filters maximal among those omitting some element.
pub fn values(a: &FiniteResiduatedLattice, limits: &Limits) -> Result<Values> {
    let all = enumerate_filters(a, limits)?;
    let filters: Vec<DeductiveFilter> = all
        .iter()
        .filter(|f| {
            a.elements().any(|x| {
                !f.contains(x)
                    && !all
                        .iter()
                        .any(|g| g != *f && f.is_subset(g) && !g.contains(x))
            })
        })
        .cloned()
        .collect();
    let names: Vec<String> = filters.iter().map(DeductiveFilter::label).collect();
    let mut edges = Vec::new();
    for (i, f) in filters.iter().enumerate() {
        for (j, g) in filters.iter().enumerate() {
            if i != j && f.is_subset(g) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let poset = validate_poset(&names, &edges)?;
    Ok(Values { filters, poset })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiReport {
    pub is_si: bool,
    pub min_nontrivial_filter: Option<DeductiveFilter>,
    pub coatom: Option<Elem>,
}

/// Subdirect irreducibility, decided twice: by a least nontrivial filter and
/// by a greatest element strictly below top. The two must agree.
pub fn si_analysis(a: &FiniteResiduatedLattice, limits: &Limits) -> Result<SiReport> {
    let filters = enumerate_filters(a, limits)?;
    let nontrivial: Vec<&DeductiveFilter> = filters.iter().filter(|f| f.len() > 1).collect();
    let min_nontrivial_filter = nontrivial
        .iter()
        .find(|f| nontrivial.iter().all(|g| f.is_subset(g)))
        .map(|f| (*f).clone());
    let below_top: Vec<Elem> = a.elements().filter(|&x| x != a.top()).collect();
    let coatom = below_top
        .iter()
        .copied()
        .find(|&c| below_top.iter().all(|&x| a.leq(x, c)));
    if min_nontrivial_filter.is_some() != coatom.is_some() {
        return Err(Error::internal(format!(
            "subdirect irreducibility criteria disagree: least nontrivial filter {:?}, coatom {:?}",
            min_nontrivial_filter.as_ref().map(DeductiveFilter::members),
            coatom
        )));
    }
    Ok(SiReport {
        is_si: coatom.is_some(),
        min_nontrivial_filter,
        coatom,
    })
}
