//! Value frames of finite GBL-algebras, the ε embedding into the poset
//! product over values, and preservation of inequalities by conuclei.

use serde::Serialize;

use crate::algebra::{
    check_equation, classify, conuclear_image, is_homomorphism, lukasiewicz_chain, morphism_search,
    restrict, self_check, Conucleus, Elem, FiniteResiduatedLattice, MorphismMode,
};
use crate::error::{Error, Result};
use crate::filters::{quotient, si_analysis, values, DeductiveFilter, Quotient};
use crate::limits::Limits;
use crate::poset_product::{build_poset_product, is_ac_labeling, AcLabeling, Frame, PosetProduct};
use crate::syntax::{classify_hierarchy, Equation, Relation};

/// The factor attached to one value `x`: the least nontrivial filter of
/// `A/x`, made an algebra with its least element as bottom.
#[derive(Clone, Debug)]
pub struct ValueFactor {
    pub value: DeductiveFilter,
    pub quotient: Quotient,
    /// Elements of `quotient.algebra` in the least nontrivial filter,
    /// ascending; element `i` of `algebra` is `filter_elements[i]`.
    pub filter_elements: Vec<Elem>,
    pub algebra: FiniteResiduatedLattice,
    /// `m` with `algebra ≅ Ł_m`.
    pub chain_length: usize,
}

#[derive(Clone, Debug)]
pub struct ValueFrame {
    pub factors: Vec<ValueFactor>,
    /// `(Δ(A), ⊆)` with each node carrying its factor.
    pub frame: Frame,
    pub potency: usize,
}

/// Builds `F(A)` for a finite GBL-algebra and checks each factor is a
/// Łukasiewicz chain with at most `potency + 1` elements.
pub fn value_frame(a: &FiniteResiduatedLattice, limits: &Limits) -> Result<ValueFrame> {
    limits.check_carrier("value frame base", a.size() as u128)?;
    let class = classify(a);
    if !class.is_gbl {
        return Err(Error::precondition("value frames are defined for GBL-algebras"));
    }
    let potency = class
        .potency
        .ok_or_else(|| Error::internal("finite algebra without potency"))?;
    let vals = values(a, limits)?;
    let mut factors = Vec::with_capacity(vals.filters.len());
    for value in &vals.filters {
        let q = quotient(a, value)?;
        let si = si_analysis(&q.algebra, limits)?;
        let least = si.min_nontrivial_filter.ok_or_else(|| {
            Error::internal(format!("quotient by value {} is not subdirectly irreducible", value.label()))
        })?;
        let filter_elements = least.members();
        let algebra = restrict(&q.algebra, &filter_elements, least.least(&q.algebra))?;
        self_check(&algebra, "value factor")?;
        let m = algebra.size();
        let chain = lukasiewicz_chain(m)?;
        if m > potency + 1 || morphism_search(&algebra, &chain, MorphismMode::Isomorphism, limits)?.is_none() {
            return Err(Error::internal(format!(
                "factor at value {} is not a Łukasiewicz chain with at most {} elements",
                value.label(),
                potency + 1
            )));
        }
        factors.push(ValueFactor {
            value: value.clone(),
            quotient: q,
            filter_elements,
            algebra,
            chain_length: m,
        });
    }
    let frame = Frame::new(
        vals.poset,
        factors.iter().map(|f| f.algebra.clone()).collect(),
        factors.iter().map(|f| format!("L{}", f.chain_length)).collect(),
    )?;
    Ok(ValueFrame {
        factors,
        frame,
        potency,
    })
}

impl ValueFrame {
    /// `ε_a(x) = a/x` when that class lies in the factor, else its bottom.
    pub fn epsilon(&self, a: Elem) -> AcLabeling {
        AcLabeling(
            self.factors
                .iter()
                .map(|f| {
                    let class = f.quotient.projection[a];
                    f.filter_elements
                        .binary_search(&class)
                        .unwrap_or(f.algebra.bottom())
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug)]
pub struct Embedding {
    pub product: PosetProduct,
    pub labelings: Vec<AcLabeling>,
    /// Index in `product.algebra` of `ε_a`, for each `a`.
    pub map: Vec<Elem>,
}

/// Computes `a ↦ ε_a` and verifies every `ε_a` is an ac-labeling and the
/// map is an injective homomorphism.
pub fn epsilon_embedding(
    a: &FiniteResiduatedLattice,
    vf: &ValueFrame,
    limits: &Limits,
) -> Result<Embedding> {
    let product = build_poset_product(&vf.frame, limits)?;
    let labelings: Vec<AcLabeling> = a.elements().map(|x| vf.epsilon(x)).collect();
    let mut map = Vec::with_capacity(a.size());
    for (x, f) in labelings.iter().enumerate() {
        if !is_ac_labeling(&vf.frame, f)? {
            return Err(Error::internal(format!("ε of {x} is not an ac-labeling: {:?}", f.0)));
        }
        map.push(
            product
                .index_of(f)
                .ok_or_else(|| Error::internal(format!("ε of {x} missing from the poset product")))?,
        );
    }
    let mut seen = vec![false; product.algebra.size()];
    for (x, &i) in map.iter().enumerate() {
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::internal(format!("ε is not injective at {x}")));
        }
    }
    if !is_homomorphism(a, &product.algebra, &map) {
        return Err(Error::internal("ε is not a homomorphism"));
    }
    Ok(Embedding {
        product,
        labelings,
        map,
    })
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub value_frame: ValueFrame,
    pub embedding: Embedding,
    /// Isomorphism `A -> P(F(A))`.
    pub iso: Vec<Elem>,
    /// Whether ε itself is the isomorphism.
    pub via_epsilon: bool,
}

/// Finds `A ≅ P(F(A))`, trying ε before a general search.
pub fn represent_finite_gbl(a: &FiniteResiduatedLattice, limits: &Limits) -> Result<Representation> {
    let value_frame = value_frame(a, limits)?;
    let embedding = epsilon_embedding(a, &value_frame, limits)?;
    let target = &embedding.product.algebra;
    if target.size() == a.size() {
        let iso = embedding.map.clone();
        return Ok(Representation {
            value_frame,
            embedding,
            iso,
            via_epsilon: true,
        });
    }
    match morphism_search(a, target, MorphismMode::Isomorphism, limits)? {
        Some(iso) => Ok(Representation {
            value_frame,
            embedding,
            iso,
            via_epsilon: false,
        }),
        None => Err(Error::internal(format!(
            "no isomorphism between the algebra ({} elements) and its value-frame product ({} elements)",
            a.size(),
            target.size()
        ))),
    }
}

/// JSON summary of a representation run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub algebra: String,
    pub delta_size: usize,
    pub factors: Vec<String>,
    pub embedding_ok: bool,
    pub iso_ok: bool,
}

impl StructureReport {
    pub fn new(name: &str, r: &Representation) -> Self {
        StructureReport {
            algebra: name.to_string(),
            delta_size: r.value_frame.factors.len(),
            factors: r.value_frame.frame.labels().to_vec(),
            embedding_ok: true,
            iso_ok: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub holds_in_base: bool,
    pub holds_in_image: bool,
}

/// For `t <= u` with `t ∈ P2*` and `u ∈ N2*`: if the base satisfies it, so
/// must the conuclear image.
pub fn conuclear_preservation_check(
    sigma: &Conucleus<'_>,
    ineq: &Equation,
    limits: &Limits,
) -> Result<PreservationReport> {
    if ineq.relation != Relation::LessEq {
        return Err(Error::precondition("expected an inequality t <= u"));
    }
    if !classify_hierarchy(&ineq.lhs).in_p2_star {
        return Err(Error::precondition(format!("left side `{}` is not in P2*", ineq.lhs)));
    }
    if !classify_hierarchy(&ineq.rhs).in_n2_star {
        return Err(Error::precondition(format!("right side `{}` is not in N2*", ineq.rhs)));
    }
    let holds_in_base = check_equation(sigma.base(), ineq, limits)?.is_valid();
    let image = conuclear_image(sigma)?;
    let holds_in_image = check_equation(&image.algebra, ineq, limits)?.is_valid();
    if holds_in_base && !holds_in_image {
        return Err(Error::internal(format!("`{ineq}` holds in the algebra but not in its conuclear image")));
    }
    Ok(PreservationReport {
        holds_in_base,
        holds_in_image,
    })
}
