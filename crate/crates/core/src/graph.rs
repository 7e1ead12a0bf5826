//! Immutable simple undirected graphs and vertex-pair sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Which modification problem is being solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Only edges may be removed.
    Deletion,
    /// Any vertex pair may be toggled.
    Editing,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Deletion => "deletion",
            Mode::Editing => "editing",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "deletion" | "delete" | "d" => Ok(Mode::Deletion),
            "editing" | "edit" | "e" => Ok(Mode::Editing),
            other => Err(format!("unknown mode `{other}` (expected deletion or editing)")),
        }
    }
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pair(usize, usize);

impl Pair {
    /// Panics on a self-loop.
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "self-loop pair");
        if u < v {
            Pair(u, v)
        } else {
            Pair(v, u)
        }
    }

    pub fn try_new(u: usize, v: usize) -> Result<Self> {
        if u == v {
            Err(Error::SelfLoop(u))
        } else {
            Ok(Pair::new(u, v))
        }
    }

    #[inline]
    pub fn u(self) -> usize {
        self.0
    }

    #[inline]
    pub fn v(self) -> usize {
        self.1
    }

    pub fn map(self, f: impl Fn(usize) -> usize) -> Pair {
        Pair::new(f(self.0), f(self.1))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

impl From<(usize, usize)> for Pair {
    fn from((u, v): (usize, usize)) -> Self {
        Pair::new(u, v)
    }
}

/// A duplicate-free set of unordered pairs, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairSet(Vec<Pair>);

impl PairSet {
    pub fn new() -> Self {
        PairSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Pair> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Pair] {
        &self.0
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn insert(&mut self, p: Pair) -> bool {
        match self.0.binary_search(&p) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, p);
                true
            }
        }
    }

    /// Pairs in exactly one of the two sets.
    pub fn symmetric_difference(&self, other: &PairSet) -> PairSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.len() + other.len());
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        PairSet(out)
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        self.0.iter().chain(other.0.iter()).copied().collect()
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.0.iter().all(|p| other.contains(*p))
    }

    /// Relabels every endpoint through `f`.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> PairSet {
        self.0.iter().map(|p| p.map(&f)).collect()
    }

    /// Ascending size, then lexicographic.
    pub fn size_lex_cmp(&self, other: &PairSet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl FromIterator<Pair> for PairSet {
    fn from_iter<I: IntoIterator<Item = Pair>>(it: I) -> Self {
        let mut v: Vec<Pair> = it.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PairSet(v)
    }
}

impl FromIterator<(usize, usize)> for PairSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(it: I) -> Self {
        it.into_iter().map(Pair::from).collect()
    }
}

impl<'a> IntoIterator for &'a PairSet {
    type Item = &'a Pair;
    type IntoIter = std::slice::Iter<'a, Pair>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}", p.u(), p.v())?;
        }
        f.write_str("}")
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={})", self.n, self.edges())
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    /// Duplicate pairs are accepted and collapse into one edge.
    pub fn new<I, P>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<(usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for e in edges {
            let (u, v) = e.into();
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Panicking constructor for literals in tests and examples.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Graph::new(n, edges.iter().copied()).expect("valid edge list")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges in ascending pair order.
    pub fn edges(&self) -> PairSet {
        PairSet(
            (0..self.n)
                .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| Pair(u, v)))
                .collect(),
        )
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n);
        let adj = (0..self.n)
            .map(|v| {
                let mut s = full.difference(&self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `vertices`; the `i`-th returned label is the
    /// original id of new vertex `i` (ascending).
    pub fn induced_subgraph<I>(&self, vertices: I) -> Result<(Graph, Vec<usize>)>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut labels: Vec<usize> = vertices.into_iter().collect();
        labels.sort_unstable();
        labels.dedup();
        if let Some(&bad) = labels.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        Ok((self.induced_sorted(&labels), labels))
    }

    /// `labels` must be sorted, deduplicated and in range.
    pub(crate) fn induced_sorted(&self, labels: &[usize]) -> Graph {
        let k = labels.len();
        let mut g = Graph::empty(k);
        for (i, &u) in labels.iter().enumerate() {
            for (j, &v) in labels.iter().enumerate().skip(i + 1) {
                if self.adj[u].contains(v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        g
    }

    pub fn induced_by_set(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let labels: Vec<usize> = set.iter().collect();
        (self.induced_sorted(&labels), labels)
    }

    fn check_pairs(&self, f: &PairSet) -> Result<()> {
        for p in f {
            if p.v() >= self.n {
                return Err(Error::VertexOutOfRange { vertex: p.v(), n: self.n });
            }
        }
        Ok(())
    }

    /// `G - F` in deletion mode, `G △ F` in editing mode.
    pub fn apply_modification(&self, f: &PairSet, mode: Mode) -> Result<Graph> {
        self.check_pairs(f)?;
        if mode == Mode::Deletion {
            if let Some(p) = f.iter().find(|p| !self.has_edge(p.u(), p.v())) {
                return Err(Error::NotAnEdge(p.u(), p.v()));
            }
        }
        Ok(self.toggled(f))
    }

    /// Toggles every pair; caller guarantees range validity.
    pub(crate) fn toggled(&self, f: &PairSet) -> Graph {
        let mut g = self.clone();
        for p in f {
            g.adj[p.u()].toggle(p.v());
            g.adj[p.v()].toggle(p.u());
        }
        g
    }

    /// Components of the subgraph induced by `within`, ordered by smallest member.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut left = within.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::new(self.n);
            comp.insert(start);
            let mut frontier = comp.clone();
            left.remove(start);
            while !frontier.is_empty() {
                let mut next = VertexSet::new(self.n);
                for v in &frontier {
                    next.union_with(&self.adj[v]);
                }
                next.intersect_with(&left);
                left.difference_with(&next);
                comp.union_with(&next);
                frontier = next;
            }
            out.push(comp);
        }
        out
    }

    /// Connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Components of the complement restricted to `within`, without building it.
    pub fn co_components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut left = within.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::new(self.n);
            comp.insert(start);
            left.remove(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let reach = left.difference(&self.adj[v]);
                for w in &reach {
                    stack.push(w);
                }
                left.difference_with(&reach);
                comp.union_with(&reach);
            }
            out.push(comp);
        }
        out
    }

    pub fn co_components(&self) -> Vec<VertexSet> {
        self.co_components_within(&self.vertices())
    }
}
