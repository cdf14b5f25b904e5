use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, raw.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n, edges: g.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, repeated edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidInstance(format!("repeated edge ({u},{v})")));
            }
            list.push((u, v));
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInstance("cycle needs at least 3 vertices".into()));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }
}

/// Hypergraph on vertices `0..n`; every hyperedge is a non-empty vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;
    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.n, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph { n: h.n, edges: h.edges }
    }
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidInstance(format!("hyperedge {i} is empty")));
            }
            let set: BTreeSet<_> = e.iter().copied().collect();
            if set.len() != e.len() {
                return Err(Error::InvalidInstance(format!("hyperedge {i} repeats a vertex")));
            }
            for &v in e {
                if v >= n {
                    return Err(Error::InvalidInstance(format!("vertex {v} out of range in hyperedge {i}")));
                }
                incidence[v].push(i);
            }
        }
        Ok(Hypergraph { n, edges, incidence })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Indices of the hyperedges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True when the vertex/hyperedge incidence graph is a forest.
    pub fn is_hyperforest(&self) -> bool {
        // union-find over n vertex nodes followed by one node per hyperedge
        let total = self.n + self.edges.len();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                let a = find(&mut parent, v);
                let b = find(&mut parent, self.n + i);
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
        }
        true
    }
}

/// Boundary condition: a partial assignment of spins in {0, 1}.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pins {
    map: BTreeMap<usize, u8>,
}

impl Pins {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u8)>) -> Result<Self> {
        let mut p = Pins::new();
        for (v, s) in pairs {
            p.pin(v, s)?;
        }
        Ok(p)
    }

    pub fn pin(&mut self, v: usize, spin: u8) -> Result<()> {
        if spin > 1 {
            return Err(Error::InvalidInstance(format!("spin {spin} is not 0 or 1")));
        }
        self.map.insert(v, spin);
        Ok(())
    }

    pub fn with(mut self, v: usize, spin: u8) -> Self {
        self.map.insert(v, spin.min(1));
        self
    }

    pub fn get(&self, v: usize) -> Option<u8> {
        self.map.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.map.iter().map(|(&v, &s)| (v, s))
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.map.keys().find(|&&v| v >= n) {
            Some(v) => Err(Error::InvalidInstance(format!("pinned vertex {v} out of range"))),
            None => Ok(()),
        }
    }

    /// Free vertices of `0..n` in increasing order.
    pub fn free_vertices(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|v| !self.map.contains_key(v)).collect()
    }

    /// Bitmask of vertices pinned to 1.
    pub(crate) fn ones_mask(&self) -> u64 {
        self.iter().filter(|&(_, s)| s == 1).fold(0, |m, (v, _)| m | (1u64 << v))
    }
}
