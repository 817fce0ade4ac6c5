use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, FiniteResiduatedLattice};
use crate::error::Result;
use crate::limits::Limits;
use crate::syntax::Connective;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismMode {
    Hom,
    Embedding,
    Isomorphism,
}

/// Whether `map` preserves all four operations and both constants.
pub fn is_homomorphism(a: &FiniteResiduatedLattice, b: &FiniteResiduatedLattice, map: &[Elem]) -> bool {
    if map.len() != a.size() || map.iter().any(|&e| e >= b.size()) {
        return false;
    }
    if map[a.bottom()] != b.bottom() || map[a.top()] != b.top() {
        return false;
    }
    a.elements().all(|x| {
        a.elements().all(|y| {
            Connective::ALL
                .iter()
                .all(|&c| map[a.op(c, x, y)] == b.op(c, map[x], map[y]))
        })
    })
}

struct Search<'a> {
    a: &'a FiniteResiduatedLattice,
    b: &'a FiniteResiduatedLattice,
    mode: MorphismMode,
    rank_a: Vec<usize>,
    rank_b: Vec<usize>,
    map: Vec<Option<Elem>>,
    used: Vec<bool>,
    trail: Vec<Elem>,
}

impl Search<'_> {
    fn allowed(&self, x: Elem, w: Elem) -> bool {
        match self.mode {
            MorphismMode::Hom => true,
            MorphismMode::Embedding => !self.used[w] && self.rank_b[w] >= self.rank_a[x],
            MorphismMode::Isomorphism => !self.used[w] && self.rank_b[w] == self.rank_a[x],
        }
    }

    fn set(&mut self, x: Elem, w: Elem) {
        self.map[x] = Some(w);
        self.used[w] = true;
        self.trail.push(x);
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().expect("trail longer than len");
            let w = self.map[x].take().expect("trail entries are mapped");
            // `used` only matters for injective modes, where images are unique.
            self.used[w] = false;
        }
    }

    /// Maps `x` to `w` and closes the partial map under the operations.
    /// Returns false on a conflict; the caller undoes the trail.
    fn assign(&mut self, x: Elem, w: Elem) -> bool {
        match self.map[x] {
            Some(v) => return v == w,
            None if !self.allowed(x, w) => return false,
            None => self.set(x, w),
        }
        let mut cursor = self.trail.len() - 1;
        while cursor < self.trail.len() {
            let p = self.trail[cursor];
            cursor += 1;
            let mut i = 0;
            while i < self.trail.len() {
                let q = self.trail[i];
                i += 1;
                for c in Connective::ALL {
                    let pairs: &[(Elem, Elem)] = if c == Connective::Impl {
                        &[(p, q), (q, p)]
                    } else {
                        &[(p, q)]
                    };
                    for &(s, t) in pairs {
                        let z = self.a.op(c, s, t);
                        let img = self.b.op(
                            c,
                            self.map[s].expect("trail entries are mapped"),
                            self.map[t].expect("trail entries are mapped"),
                        );
                        match self.map[z] {
                            Some(v) if v != img => return false,
                            Some(_) => {}
                            None => {
                                if !self.allowed(z, img) {
                                    return false;
                                }
                                self.set(z, img);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self) -> bool {
        let Some(x) = self.a.elements().find(|&x| self.map[x].is_none()) else {
            return true;
        };
        for w in self.b.elements() {
            let mark = self.trail.len();
            if self.assign(x, w) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// Backtracking search for a structure-preserving map `a -> b`. Bottom and
/// top are fixed first, every choice is closed under the operations, and
/// injective modes prune candidates by their height in the order.
pub fn morphism_search(
    a: &FiniteResiduatedLattice,
    b: &FiniteResiduatedLattice,
    mode: MorphismMode,
    limits: &Limits,
) -> Result<Option<Vec<Elem>>> {
    limits.check_carrier("morphism search domain", a.size() as u128)?;
    match mode {
        MorphismMode::Embedding if a.size() > b.size() => return Ok(None),
        MorphismMode::Isomorphism if a.size() != b.size() => return Ok(None),
        _ => {}
    }
    let (rank_a, rank_b) = match mode {
        MorphismMode::Hom => (Vec::new(), Vec::new()),
        _ => (a.ranks(), b.ranks()),
    };
    let mut s = Search {
        a,
        b,
        mode,
        rank_a,
        rank_b,
        map: vec![None; a.size()],
        used: vec![false; b.size()],
        trail: Vec::new(),
    };
    if !(s.assign(a.bottom(), b.bottom()) && s.assign(a.top(), b.top())) {
        return Ok(None);
    }
    if !s.solve() {
        return Ok(None);
    }
    let map: Vec<Elem> = s.map.into_iter().map(|m| m.expect("solved map is total")).collect();
    debug_assert!(is_homomorphism(a, b, &map));
    Ok(Some(map))
}
