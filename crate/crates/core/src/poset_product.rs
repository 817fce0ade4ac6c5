//! Frames, the `□` conucleus, ac-labelings and poset products.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    conuclear_image, direct_product, mixed_radix_encode, self_check, Conucleus, Elem,
    FiniteResiduatedLattice, RawAlgebra,
};
use crate::error::{Error, Result};
use crate::limits::{Limits, SELF_CHECK_MAX_SIZE};
use crate::posets::{FinitePoset, PosetSpec};
use crate::syntax::Connective;

/// A poset with a nontrivial finite algebra at each node. Each node's
/// algebra keeps its own bottom and top indices; these play the roles of
/// the shared `0` and `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    poset: FinitePoset,
    algebras: Vec<FiniteResiduatedLattice>,
    labels: Vec<String>,
}

/// An algebra reference inside a frame file: a builtin name, a path to an
/// algebra file, or inline tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(RawAlgebra),
}

/// Frame file: `{"poset": {...}, "algebras": {"a": "L2", "b": {...}}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSpec {
    pub poset: PosetSpec,
    pub algebras: BTreeMap<String, AlgebraRef>,
}

impl Frame {
    /// `labels` name each node's algebra in reports, e.g. `"L3"`.
    pub fn new(
        poset: FinitePoset,
        algebras: Vec<FiniteResiduatedLattice>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if algebras.len() != poset.len() || labels.len() != poset.len() {
            return Err(Error::format(format!(
                "frame has {} nodes but {} algebras and {} labels",
                poset.len(),
                algebras.len(),
                labels.len()
            )));
        }
        if poset.is_empty() {
            return Err(Error::format("frame over an empty poset"));
        }
        if let Some(x) = algebras.iter().position(|a| a.size() < 2) {
            return Err(Error::precondition(format!(
                "node {} carries a trivial algebra; factors must have 0 != 1",
                poset.name(x)
            )));
        }
        Ok(Frame {
            poset,
            algebras,
            labels,
        })
    }

    /// Every node carries a copy of `algebra`.
    pub fn uniform(poset: FinitePoset, algebra: &FiniteResiduatedLattice, label: &str) -> Result<Self> {
        let n = poset.len();
        Frame::new(poset, vec![algebra.clone(); n], vec![label.to_string(); n])
    }

    /// Each node gets the builtin algebra of the same position in `names`.
    pub fn with_builtins(poset: FinitePoset, names: &[&str]) -> Result<Self> {
        let algebras = names
            .iter()
            .map(|n| {
                FiniteResiduatedLattice::builtin(n)
                    .unwrap_or_else(|| Err(Error::format(format!("unknown builtin algebra `{n}`"))))
            })
            .collect::<Result<Vec<_>>>()?;
        Frame::new(poset, algebras, names.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_spec(spec: &FrameSpec, base_dir: Option<&Path>) -> Result<Self> {
        let poset = FinitePoset::from_spec(&spec.poset)?;
        if let Some(extra) = spec.algebras.keys().find(|k| poset.index_of(k).is_none()) {
            return Err(Error::format(format!("algebra given for unknown node `{extra}`")));
        }
        let mut algebras = Vec::with_capacity(poset.len());
        let mut labels = Vec::with_capacity(poset.len());
        for name in poset.names() {
            match spec.algebras.get(name) {
                None => return Err(Error::format(format!("node `{name}` has no algebra"))),
                Some(AlgebraRef::Named(n)) => {
                    algebras.push(FiniteResiduatedLattice::load(n, base_dir)?);
                    labels.push(n.clone());
                }
                Some(AlgebraRef::Inline(raw)) => {
                    algebras.push(FiniteResiduatedLattice::from_raw(raw)?);
                    labels.push("inline".to_string());
                }
            }
        }
        Frame::new(poset, algebras, labels)
    }

    /// Reads a frame file; relative algebra paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::format(format!("cannot read frame `{}`: {e}", path.display())))?;
        let spec: FrameSpec = serde_json::from_str(&text)
            .map_err(|e| Error::format(format!("frame file `{}`: {e}", path.display())))?;
        Frame::from_spec(&spec, path.parent())
    }

    pub fn to_spec(&self) -> FrameSpec {
        let algebras = self
            .poset
            .names()
            .iter()
            .zip(&self.algebras)
            .zip(&self.labels)
            .map(|((name, a), label)| {
                let r = match FiniteResiduatedLattice::builtin(label) {
                    Some(Ok(_)) => AlgebraRef::Named(label.clone()),
                    _ => AlgebraRef::Inline(a.to_raw()),
                };
                (name.clone(), r)
            })
            .collect();
        FrameSpec {
            poset: self.poset.to_spec(),
            algebras,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn algebras(&self) -> &[FiniteResiduatedLattice] {
        &self.algebras
    }

    pub fn algebra(&self, x: usize) -> &FiniteResiduatedLattice {
        &self.algebras[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.algebras.iter().map(FiniteResiduatedLattice::size).collect()
    }

    /// `∏ |A_x|`, saturating.
    pub fn choice_count(&self) -> u128 {
        self.algebras
            .iter()
            .fold(1u128, |acc, a| acc.saturating_mul(a.size() as u128))
    }

    /// Same algebras over the dual poset.
    pub fn dual(&self) -> Frame {
        Frame {
            poset: self.poset.dual(),
            algebras: self.algebras.clone(),
            labels: self.labels.clone(),
        }
    }

    /// The direct product of the node algebras, node 0 most significant.
    pub fn direct_product(&self, limits: &Limits) -> Result<FiniteResiduatedLattice> {
        direct_product(&self.algebras, limits)
    }

    /// Index in [`direct_product`](Self::direct_product) of a choice function.
    pub fn product_index(&self, f: &[Elem]) -> usize {
        mixed_radix_encode(f, &self.sizes())
    }

    pub fn constant_bottom(&self) -> AcLabeling {
        AcLabeling(self.algebras.iter().map(FiniteResiduatedLattice::bottom).collect())
    }

    pub fn constant_top(&self) -> AcLabeling {
        AcLabeling(self.algebras.iter().map(FiniteResiduatedLattice::top).collect())
    }

    fn check_choice(&self, f: &[Elem]) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::format(format!(
                "choice function has {} entries for {} nodes",
                f.len(),
                self.len()
            )));
        }
        for (x, &v) in f.iter().enumerate() {
            if v >= self.algebras[x].size() {
                return Err(Error::format(format!(
                    "value {v} at node {} is outside its algebra",
                    self.poset.name(x)
                )));
            }
        }
        Ok(())
    }

    /// Parses a choice function given as one element index per node.
    pub fn choice(&self, f: &[Elem]) -> Result<Vec<Elem>> {
        self.check_choice(f)?;
        Ok(f.to_vec())
    }

    fn is_bottom(&self, x: usize, v: Elem) -> bool {
        v == self.algebras[x].bottom()
    }

    fn is_top(&self, x: usize, v: Elem) -> bool {
        v == self.algebras[x].top()
    }
}

/// A choice function fixed by `□`: one element index per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AcLabeling(pub Vec<Elem>);

impl std::ops::Deref for AcLabeling {
    type Target = [Elem];
    fn deref(&self) -> &[Elem] {
        &self.0
    }
}

/// `□f(x) = f(x)` when `f` is top strictly above `x`, else bottom.
pub fn box_map(frame: &Frame, f: &[Elem]) -> Vec<Elem> {
    let p = frame.poset();
    p.nodes()
        .map(|x| {
            if p.nodes().all(|y| !p.lt(x, y) || frame.is_top(y, f[y])) {
                f[x]
            } else {
                frame.algebra(x).bottom()
            }
        })
        .collect()
}

/// `x < y` implies `f(x) = 0` or `f(y) = 1`.
pub fn condition_bottom_or_top(frame: &Frame, f: &[Elem]) -> bool {
    let p = frame.poset();
    p.nodes().all(|x| {
        p.nodes()
            .all(|y| !p.lt(x, y) || frame.is_bottom(x, f[x]) || frame.is_top(y, f[y]))
    })
}

/// `S_f` is an antichain, `L_f` a down-set and `U_f` an up-set.
pub fn condition_antichain_support(frame: &Frame, f: &[Elem]) -> bool {
    let p = frame.poset();
    let lower: Vec<usize> = p.nodes().filter(|&x| frame.is_bottom(x, f[x])).collect();
    let upper: Vec<usize> = p.nodes().filter(|&x| frame.is_top(x, f[x])).collect();
    let support: Vec<usize> = p
        .nodes()
        .filter(|&x| !frame.is_bottom(x, f[x]) && !frame.is_top(x, f[x]))
        .collect();
    let antichain = support
        .iter()
        .all(|&x| support.iter().all(|&y| x == y || !p.comparable(x, y)));
    antichain && p.is_downset(&lower) && p.is_upset(&upper)
}

/// Decides membership in the poset product three ways and insists they agree.
pub fn is_ac_labeling(frame: &Frame, f: &[Elem]) -> Result<bool> {
    frame.check_choice(f)?;
    let fixed = box_map(frame, f) == f;
    let cond3 = condition_bottom_or_top(frame, f);
    let cond4 = condition_antichain_support(frame, f);
    if fixed != cond3 || fixed != cond4 {
        return Err(Error::internal(format!(
            "ac-labeling criteria disagree on {f:?}: box fixpoint {fixed}, \
             bottom-or-top {cond3}, antichain support {cond4}"
        )));
    }
    Ok(fixed)
}

/// All ac-labelings in mixed-radix order over the nodes taken in
/// [`FinitePoset::linear_extension`] order, first node most significant and
/// element indices ascending.
pub fn enumerate_ac_labelings(frame: &Frame, limits: &Limits) -> Result<Vec<AcLabeling>> {
    limits.check_carrier("poset product choice functions", frame.choice_count())?;
    let p = frame.poset();
    let order = p.linear_extension();
    let mut f = frame.constant_bottom().0;
    let mut out = Vec::new();
    fn go(frame: &Frame, order: &[usize], depth: usize, f: &mut Vec<Elem>, out: &mut Vec<AcLabeling>) {
        let Some(&y) = order.get(depth) else {
            out.push(AcLabeling(f.clone()));
            return;
        };
        let p = frame.poset();
        for v in frame.algebra(y).elements() {
            let ok = v == frame.algebra(y).top()
                || order[..depth]
                    .iter()
                    .all(|&x| !p.lt(x, y) || f[x] == frame.algebra(x).bottom());
            if ok {
                f[y] = v;
                go(frame, order, depth + 1, f, out);
            }
        }
        f[y] = frame.algebra(y).bottom();
    }
    go(frame, &order, 0, &mut f, &mut out);
    Ok(out)
}

/// Pointwise order of two choice functions.
pub fn pointwise_leq(frame: &Frame, f: &[Elem], g: &[Elem]) -> bool {
    frame.poset().nodes().all(|x| frame.algebra(x).leq(f[x], g[x]))
}

/// `L_g ⊆ L_f`, `U_f ⊆ U_g`, and `f ≤ g` on `S_f ∩ S_g`.
pub fn labeling_leq(frame: &Frame, f: &[Elem], g: &[Elem]) -> bool {
    frame.poset().nodes().all(|x| {
        let a = frame.algebra(x);
        let in_s = |v: Elem| v != a.bottom() && v != a.top();
        (g[x] != a.bottom() || f[x] == a.bottom())
            && (f[x] != a.top() || g[x] == a.top())
            && (!(in_s(f[x]) && in_s(g[x])) || a.leq(f[x], g[x]))
    })
}

#[derive(Clone, Debug)]
pub struct PosetProduct {
    pub algebra: FiniteResiduatedLattice,
    /// Element `i` of `algebra` is `labelings[i]`.
    pub labelings: Vec<AcLabeling>,
    index: HashMap<AcLabeling, usize>,
}

impl PosetProduct {
    pub fn index_of(&self, f: &[Elem]) -> Option<usize> {
        self.index.get(&AcLabeling(f.to_vec())).copied()
    }
}

/// The poset product: ac-labelings with pointwise `∧ ∨ ·` and `→` taken
/// pointwise and then boxed.
pub fn build_poset_product(frame: &Frame, limits: &Limits) -> Result<PosetProduct> {
    let labelings = enumerate_ac_labelings(frame, limits)?;
    let index: HashMap<AcLabeling, usize> = labelings
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    let n = labelings.len();
    let lookup = |g: Vec<Elem>, c: Connective| -> Result<usize> {
        index.get(&AcLabeling(g.clone())).copied().ok_or_else(|| {
            Error::internal(format!("{} of two labelings is not a labeling: {g:?}", c.symbol()))
        })
    };
    let mut tables: [Vec<Elem>; 4] = Default::default();
    for (slot, c) in tables.iter_mut().zip(Connective::ALL) {
        slot.reserve(n * n);
        for f in &labelings {
            for g in &labelings {
                let pointwise: Vec<Elem> = frame
                    .poset()
                    .nodes()
                    .map(|x| frame.algebra(x).op(c, f[x], g[x]))
                    .collect();
                let h = match c {
                    Connective::Impl => box_map(frame, &pointwise),
                    _ => pointwise,
                };
                slot.push(lookup(h, c)?);
            }
        }
    }
    let [meet, join, prod, imp] = tables;
    let bottom = lookup(frame.constant_bottom().0, Connective::Meet)?;
    let top = lookup(frame.constant_top().0, Connective::Join)?;
    let algebra = FiniteResiduatedLattice::from_tables(n, meet, join, prod, imp, bottom, top);
    let pp = PosetProduct {
        algebra,
        labelings,
        index,
    };
    self_check(&pp.algebra, "poset product")?;
    if frame.choice_count() <= SELF_CHECK_MAX_SIZE as u128 {
        check_against_conuclear_image(frame, &pp, limits)?;
    }
    Ok(pp)
}

/// `□` as a map on the carrier of [`Frame::direct_product`].
pub fn box_on_direct_product(frame: &Frame, product: &FiniteResiduatedLattice) -> Vec<Elem> {
    let sizes = frame.sizes();
    product
        .elements()
        .map(|i| {
            let f = crate::algebra::mixed_radix_decode(i, &sizes);
            mixed_radix_encode(&box_map(frame, &f), &sizes)
        })
        .collect()
}

/// Verifies that `pp` is, labeling for labeling, the conuclear image of the
/// direct product under `□`.
pub fn check_against_conuclear_image(frame: &Frame, pp: &PosetProduct, limits: &Limits) -> Result<()> {
    let b = frame.direct_product(limits)?;
    let sigma = Conucleus::new(&b, box_on_direct_product(frame, &b))
        .map_err(|e| Error::internal(format!("box is not a conucleus on the direct product: {e}")))?;
    let image = conuclear_image(&sigma)?;
    if image.elements.len() != pp.labelings.len() {
        return Err(Error::internal(format!(
            "conuclear image has {} elements, poset product {}",
            image.elements.len(),
            pp.labelings.len()
        )));
    }
    let mut to_image = vec![usize::MAX; pp.labelings.len()];
    for (i, f) in pp.labelings.iter().enumerate() {
        let e = frame.product_index(f);
        to_image[i] = image.elements.binary_search(&e).map_err(|_| {
            Error::internal(format!("labeling {f:?} is not a fixpoint of box"))
        })?;
    }
    let (a, c) = (&pp.algebra, &image.algebra);
    let same_constants = to_image[a.bottom()] == c.bottom() && to_image[a.top()] == c.top();
    let same_tables = a.elements().all(|x| {
        a.elements().all(|y| {
            Connective::ALL
                .iter()
                .all(|&op| to_image[a.op(op, x, y)] == c.op(op, to_image[x], to_image[y]))
        })
    });
    if !(same_constants && same_tables) {
        return Err(Error::internal("poset product differs from the conuclear image of box"));
    }
    Ok(())
}

/// The poset product over the order dual.
pub fn dual_poset_product(frame: &Frame, limits: &Limits) -> Result<PosetProduct> {
    build_poset_product(&frame.dual(), limits)
}
