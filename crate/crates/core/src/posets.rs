//! Finite posets given by cover edges, with the order materialized as a full
//! relation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Poset file fragment: `{"elements": ["a", "b"], "order": [["a", "b"]]}`,
/// each pair read as a strict relation `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<bool>,
}

/// Builds a poset from node names and strict edges `lo < hi`. Edges need not
/// be covers; the reflexive-transitive closure is taken.
pub fn validate_poset<S: AsRef<str>>(nodes: &[S], edges: &[(S, S)]) -> Result<FinitePoset> {
    let names: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() {
            return Err(Error::format("poset node names must be nonempty"));
        }
        if index.insert(n.as_str(), i).is_some() {
            return Err(Error::format(format!("duplicate poset node `{n}`")));
        }
    }
    let lookup = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| Error::format(format!("edge endpoint `{s}` is not a node")))
    };
    let n = names.len();
    let mut succ = vec![Vec::new(); n];
    for (lo, hi) in edges {
        let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
        if lo == hi {
            return Err(Error::Cycle(vec![names[lo].clone()]));
        }
        succ[lo].push(hi);
    }
    let mut leq = vec![false; n * n];
    for start in 0..n {
        let mut queue = VecDeque::from([start]);
        leq[start * n + start] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &succ[x] {
                if !leq[start * n + y] {
                    leq[start * n + y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    for x in 0..n {
        for &y in &succ[x] {
            if leq[y * n + x] {
                let mut cycle = vec![names[x].clone()];
                cycle.extend(path(&succ, y, x).into_iter().map(|i| names[i].clone()));
                cycle.pop();
                return Err(Error::Cycle(cycle));
            }
        }
    }
    Ok(FinitePoset { names, leq })
}

/// Shortest path from `from` to `to` along `succ`, both ends included.
fn path(succ: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; succ.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &succ[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut out = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        out.push(cur);
    }
    out.reverse();
    out
}

impl FinitePoset {
    pub fn from_spec(spec: &PosetSpec) -> Result<Self> {
        let edges: Vec<(&str, &str)> = spec
            .order
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let nodes: Vec<&str> = spec.elements.iter().map(String::as_str).collect();
        validate_poset(&nodes, &edges)
    }

    pub fn to_spec(&self) -> PosetSpec {
        PosetSpec {
            elements: self.names.clone(),
            order: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
        }
    }

    /// The antichain on the given names.
    pub fn antichain<S: AsRef<str>>(nodes: &[S]) -> Result<Self> {
        validate_poset(nodes, &[])
    }

    /// The chain `nodes[0] < nodes[1] < ...`.
    pub fn chain<S: AsRef<str>>(nodes: &[S]) -> Result<Self> {
        let edges: Vec<(&str, &str)> = nodes
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let nodes: Vec<&str> = nodes.iter().map(AsRef::as_ref).collect();
        validate_poset(&nodes, &edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Nodes strictly above `x`, ascending by index.
    pub fn strictly_above(&self, x: usize) -> Vec<usize> {
        self.nodes().filter(|&y| self.lt(x, y)).collect()
    }

    /// Pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.nodes() {
            for y in self.nodes() {
                if self.lt(x, y) && !self.nodes().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Self {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[y * n + x] = self.leq(x, y);
            }
        }
        FinitePoset {
            names: self.names.clone(),
            leq,
        }
    }

    /// A linear extension: repeatedly the lowest-indexed node whose strict
    /// predecessors are all placed.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut placed = vec![false; self.len()];
        let mut out = Vec::with_capacity(self.len());
        while out.len() < self.len() {
            let next = self
                .nodes()
                .find(|&x| !placed[x] && self.nodes().all(|y| !self.lt(y, x) || placed[y]))
                .expect("a finite poset has a minimal unplaced node");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    pub fn is_upset(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        set.iter().all(|&x| self.nodes().all(|y| !self.leq(x, y) || set.contains(&y)))
    }

    pub fn is_downset(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        set.iter().all(|&x| self.nodes().all(|y| !self.leq(y, x) || set.contains(&y)))
    }

    /// Relation bitmask under a relabelling; used to canonicalize.
    fn code_under(&self, perm: &[usize]) -> u64 {
        let n = self.len();
        let mut code = 0u64;
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) {
                    code |= 1 << (perm[x] * n + perm[y]);
                }
            }
        }
        code
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetPredicate {
    Chain,
    RootSystem,
    Antichain(Vec<usize>),
    Upset(Vec<usize>),
    Downset(Vec<usize>),
}

/// Outcome of [`poset_predicate`]. On failure the witness names the nodes
/// involved: an incomparable pair, or for root systems the base node
/// followed by the incomparable pair above it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    pub holds: bool,
    pub witness: Vec<String>,
}

pub fn poset_predicate(p: &FinitePoset, which: &PosetPredicate) -> Result<PredicateResult> {
    let check_subset = |s: &[usize]| -> Result<()> {
        match s.iter().find(|&&x| x >= p.len()) {
            Some(x) => Err(Error::format(format!("node index {x} out of range"))),
            None => Ok(()),
        }
    };
    let names = |xs: &[usize]| xs.iter().map(|&x| p.name(x).to_string()).collect();
    let incomparable = |s: &[usize]| -> Option<(usize, usize)> {
        s.iter().enumerate().find_map(|(i, &x)| {
            s[i + 1..]
                .iter()
                .find(|&&y| !p.comparable(x, y))
                .map(|&y| (x, y))
        })
    };
    let fail = |w: Vec<String>| PredicateResult {
        holds: false,
        witness: w,
    };
    let ok = PredicateResult {
        holds: true,
        witness: Vec::new(),
    };
    Ok(match which {
        PosetPredicate::Chain => {
            let all: Vec<usize> = p.nodes().collect();
            match incomparable(&all) {
                Some((x, y)) => fail(names(&[x, y])),
                None => ok,
            }
        }
        PosetPredicate::RootSystem => {
            for x in p.nodes() {
                let up: Vec<usize> = p.nodes().filter(|&y| p.leq(x, y)).collect();
                if let Some((y, z)) = incomparable(&up) {
                    return Ok(fail(names(&[x, y, z])));
                }
            }
            ok
        }
        PosetPredicate::Antichain(s) => {
            check_subset(s)?;
            let comparable = s.iter().enumerate().find_map(|(i, &x)| {
                s[i + 1..]
                    .iter()
                    .find(|&&y| x != y && p.comparable(x, y))
                    .map(|&y| (x, y))
            });
            match comparable {
                Some((x, y)) => fail(names(&[x, y])),
                None => ok,
            }
        }
        PosetPredicate::Upset(s) => {
            check_subset(s)?;
            let set: BTreeSet<usize> = s.iter().copied().collect();
            let bad = set
                .iter()
                .find_map(|&x| p.nodes().find(|&y| p.leq(x, y) && !set.contains(&y)).map(|y| (x, y)));
            match bad {
                Some((x, y)) => fail(names(&[x, y])),
                None => ok,
            }
        }
        PosetPredicate::Downset(s) => {
            check_subset(s)?;
            let set: BTreeSet<usize> = s.iter().copied().collect();
            let bad = set
                .iter()
                .find_map(|&x| p.nodes().find(|&y| p.leq(y, x) && !set.contains(&y)).map(|y| (x, y)));
            match bad {
                Some((x, y)) => fail(names(&[x, y])),
                None => ok,
            }
        }
    })
}

/// Largest node count [`all_posets`] will enumerate.
pub const MAX_GENERATED_POSET: usize = 5;

/// One representative of every isomorphism class of posets with
/// `1..=max_nodes` nodes, named `n0, n1, ...` so that the index order is a
/// linear extension.
///
/// Order: by node count, then by the bitmask of strict pairs `i < j`
/// (pair `(i, j)` in row-major order, lowest bit first), keeping the first
/// mask of each class.
pub fn all_posets(max_nodes: usize) -> Result<Vec<FinitePoset>> {
    if max_nodes > MAX_GENERATED_POSET {
        return Err(Error::SizeCap {
            what: "generated poset size",
            needed: max_nodes as u128,
            cap: MAX_GENERATED_POSET as u128,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let rel = |i: usize, j: usize| {
                pairs
                    .iter()
                    .position(|&q| q == (i, j))
                    .is_some_and(|b| mask >> b & 1 == 1)
            };
            let transitive = pairs.iter().all(|&(i, j)| {
                !rel(i, j) || (j + 1..n).all(|k| !rel(j, k) || rel(i, k))
            });
            if !transitive {
                continue;
            }
            let edges: Vec<(String, String)> = pairs
                .iter()
                .filter(|&&(i, j)| rel(i, j))
                .map(|&(i, j)| (names[i].clone(), names[j].clone()))
                .collect();
            let p = validate_poset(&names, &edges)?;
            let canon = perms.iter().map(|pm| p.code_under(pm)).min().unwrap_or(0);
            if seen.insert(canon) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
