//! Finite bounded commutative integral residuated lattices given by their
//! operation tables.
//!
//! Elements are dense indices `0..size`. The order is never stored: `x <= y`
//! is read off the meet table as `meet(x, y) == x`.

mod classify;
mod construct;
mod conucleus;
mod morphism;
mod validate;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::Connective;

pub use classify::{check_equation, classify, is_distributive, potency, Classification, EquationCheck};
pub use construct::{direct_product, generated_subalgebra, mixed_radix_decode, mixed_radix_encode, Subalgebra};
pub use conucleus::{conuclear_image, is_conucleus, Conucleus, ConuclearImage};
pub use morphism::{is_homomorphism, morphism_search, MorphismMode};
pub use validate::{residuation_by_equations, residuation_by_quantifier, validate_algebra};
pub(crate) use construct::restrict;
pub(crate) use validate::self_check;

/// Element of a finite algebra: an index into its carrier.
pub type Elem = usize;

/// Operation tables as they appear in algebra files. Nothing is checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAlgebra {
    pub size: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub prod: Vec<Vec<usize>>,
    #[serde(rename = "impl")]
    pub imp: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteResiduatedLattice {
    size: usize,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    prod: Vec<Elem>,
    imp: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteResiduatedLattice {
    /// Validates `raw` and builds the algebra.
    pub fn from_raw(raw: &RawAlgebra) -> Result<Self> {
        validate_algebra(raw)?;
        Ok(Self::from_raw_unchecked(raw))
    }

    pub(crate) fn from_raw_unchecked(raw: &RawAlgebra) -> Self {
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().copied().collect::<Vec<_>>();
        FiniteResiduatedLattice {
            size: raw.size,
            meet: flat(&raw.meet),
            join: flat(&raw.join),
            prod: flat(&raw.prod),
            imp: flat(&raw.imp),
            bottom: raw.bottom,
            top: raw.top,
        }
    }

    /// Builds an algebra from flat row-major tables without checking the
    /// axioms. Callers are expected to have a structural reason the result is
    /// a residuated lattice.
    pub(crate) fn from_tables(
        size: usize,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        prod: Vec<Elem>,
        imp: Vec<Elem>,
        bottom: Elem,
        top: Elem,
    ) -> Self {
        debug_assert!(meet.len() == size * size && join.len() == size * size);
        debug_assert!(prod.len() == size * size && imp.len() == size * size);
        FiniteResiduatedLattice {
            size,
            meet,
            join,
            prod,
            imp,
            bottom,
            top,
        }
    }

    /// Builds an algebra from binary operations given as closures.
    pub(crate) fn tabulate(
        size: usize,
        bottom: Elem,
        top: Elem,
        mut op: impl FnMut(Connective, Elem, Elem) -> Elem,
    ) -> Self {
        let mut table = |c: Connective| {
            let mut t = Vec::with_capacity(size * size);
            for x in 0..size {
                for y in 0..size {
                    t.push(op(c, x, y));
                }
            }
            t
        };
        let meet = table(Connective::Meet);
        let join = table(Connective::Join);
        let prod = table(Connective::Prod);
        let imp = table(Connective::Impl);
        Self::from_tables(size, meet, join, prod, imp, bottom, top)
    }

    pub fn to_raw(&self) -> RawAlgebra {
        let rows = |t: &Vec<Elem>| t.chunks(self.size).map(<[Elem]>::to_vec).collect();
        RawAlgebra {
            size: self.size,
            meet: rows(&self.meet),
            join: rows(&self.join),
            prod: rows(&self.prod),
            imp: rows(&self.imp),
            bottom: self.bottom,
            top: self.top,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn prod(&self, x: Elem, y: Elem) -> Elem {
        self.prod[x * self.size + y]
    }

    #[inline]
    pub fn imp(&self, x: Elem, y: Elem) -> Elem {
        self.imp[x * self.size + y]
    }

    #[inline]
    pub fn op(&self, c: Connective, x: Elem, y: Elem) -> Elem {
        match c {
            Connective::Meet => self.meet(x, y),
            Connective::Join => self.join(x, y),
            Connective::Prod => self.prod(x, y),
            Connective::Impl => self.imp(x, y),
        }
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.meet(x, y) == x
    }

    /// Checked form of [`leq`](Self::leq).
    pub fn try_leq(&self, x: Elem, y: Elem) -> Result<bool> {
        for e in [x, y] {
            if e >= self.size {
                return Err(Error::format(format!(
                    "element {e} out of range for an algebra of size {}",
                    self.size
                )));
            }
        }
        Ok(self.leq(x, y))
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.imp(x, self.bottom)
    }

    /// `x^k`, with `x^0 = top`.
    pub fn power(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(self.top, |acc, _| self.prod(acc, x))
    }

    /// Length of the longest chain from the bottom to `x`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut order: Vec<Elem> = self.elements().collect();
        // Sort by the size of the principal down-set so every element comes
        // after everything strictly below it.
        let below = |x: Elem| self.elements().filter(|&y| self.leq(y, x)).count();
        order.sort_by_key(|&x| below(x));
        let mut rank = vec![0usize; self.size];
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[..i] {
                if y != x && self.leq(y, x) {
                    rank[x] = rank[x].max(rank[y] + 1);
                }
            }
        }
        rank
    }

    /// Resolves builtin names: `L2`..`L64` (Łukasiewicz chains) and
    /// `G2`..`G64` (Gödel chains).
    pub fn builtin(name: &str) -> Option<Result<Self>> {
        let (kind, digits) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let k: usize = digits.parse().ok()?;
        let build = match kind {
            "L" | "Ł" => lukasiewicz_chain,
            "G" => godel_chain,
            _ => return None,
        };
        if k > 64 {
            return Some(Err(Error::Unsupported(format!(
                "builtin chains stop at 64 elements, got {name}"
            ))));
        }
        Some(build(k))
    }

    /// A builtin name, or else a JSON algebra file. Relative paths are
    /// resolved against `base_dir` when given.
    pub fn load(name: &str, base_dir: Option<&Path>) -> Result<Self> {
        if let Some(b) = Self::builtin(name) {
            return b;
        }
        let path = match base_dir {
            Some(dir) if Path::new(name).is_relative() => dir.join(name),
            _ => Path::new(name).to_path_buf(),
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::format(format!("cannot read algebra `{}`: {e}", path.display())))?;
        let raw: RawAlgebra = serde_json::from_str(&text)
            .map_err(|e| Error::format(format!("algebra file `{}`: {e}", path.display())))?;
        Self::from_raw(&raw)
    }
}

/// The `k`-element Łukasiewicz chain on `{0, 1/(k-1), ..., 1}`, element `i`
/// standing for `i/(k-1)`.
pub fn lukasiewicz_chain(k: usize) -> Result<FiniteResiduatedLattice> {
    if k < 2 {
        return Err(Error::Unsupported(format!(
            "Łukasiewicz chain with {k} elements; only k >= 2 is computed"
        )));
    }
    let top = k - 1;
    Ok(FiniteResiduatedLattice::tabulate(k, 0, top, |c, i, j| match c {
        Connective::Meet => i.min(j),
        Connective::Join => i.max(j),
        Connective::Prod => (i + j).saturating_sub(top),
        Connective::Impl => top.min(top - i + j),
    }))
}

/// The `k`-element Gödel (Heyting) chain: product is meet and `x -> y` is
/// top when `x <= y`, else `y`.
pub fn godel_chain(k: usize) -> Result<FiniteResiduatedLattice> {
    if k < 2 {
        return Err(Error::Unsupported(format!(
            "Gödel chain with {k} elements; only k >= 2 is computed"
        )));
    }
    let top = k - 1;
    Ok(FiniteResiduatedLattice::tabulate(k, 0, top, |c, i, j| match c {
        Connective::Meet | Connective::Prod => i.min(j),
        Connective::Join => i.max(j),
        Connective::Impl => {
            if i <= j {
                top
            } else {
                j
            }
        }
    }))
}
