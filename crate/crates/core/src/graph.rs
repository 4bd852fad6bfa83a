//! Immutable simple graphs backed by adjacency bitsets.
//!
//! Vertices are `0..n`. Every graph keeps both a bit matrix (for O(1)
//! adjacency tests) and sorted neighbor lists (for iteration). Graphs are
//! never mutated after construction; the combinators below return new
//! graphs.

use std::fmt::Write as _;

use crate::error::{EdgeListError, Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Mutable edge accumulator used while a graph is being built.
pub(crate) struct Builder {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Builder {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Builder {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    fn bit(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub(crate) fn contains(&self, u: usize, v: usize) -> bool {
        self.bit(u, v)
    }

    pub(crate) fn add(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    pub(crate) fn remove(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD] &= !(1 << (v % WORD));
        self.bits[v * self.words + u / WORD] &= !(1 << (u % WORD));
    }

    pub(crate) fn build(self) -> Graph {
        let adj = (0..self.n)
            .map(|u| (0..self.n).filter(|&v| self.bit(u, v)).collect())
            .collect();
        Graph {
            n: self.n,
            words: self.words,
            bits: self.bits,
            adj,
        }
    }
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Builder::new(n).build()
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = Builder::new(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, order: n });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            if b.contains(u, v) {
                return Err(Error::Precondition(format!("duplicate edge {u} {v}")));
            }
            b.add(u, v);
        }
        Ok(b.build())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Adjacency test. Panics if either index is out of range.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Sorted open neighborhood. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.adj[v].len())
    }

    /// `N[v]` in ascending order.
    pub fn closed_neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        let mut out = self.adj[v].clone();
        let at = out.partition_point(|&u| u < v);
        out.insert(at, v);
        Ok(out)
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Checks symmetry, irreflexivity and index ranges over all pairs.
    pub fn is_well_formed(&self) -> bool {
        (0..self.n).all(|u| {
            !self.has_edge(u, u)
                && self.adj[u].iter().all(|&v| v < self.n)
                && (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(v, u))
        })
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
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    pub(crate) fn require_tree(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::NotATree("graph has no vertices".into()));
        }
        if self.edge_count() != self.n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                self.edge_count(),
                self.n
            )));
        }
        if !self.is_connected() {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        Ok(())
    }

    pub fn complement(&self) -> Graph {
        let mut b = Builder::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    b.add(u, v);
                }
            }
        }
        b.build()
    }

    /// `self ∨ other`: disjoint union plus every cross edge. `self`'s
    /// vertices keep their indices, `other`'s are shifted by `self.order()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut b = Builder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.add(u, v);
        }
        for (u, v) in other.edges() {
            b.add(off + u, off + v);
        }
        for u in 0..self.n {
            for v in 0..other.n {
                b.add(u, off + v);
            }
        }
        b.build()
    }

    /// `self ∘ other`: vertices `0..|G|` are `self`; copy `i` of `other`
    /// occupies `|G| + i·|H| .. |G| + (i+1)·|H|` and is joined to vertex `i`.
    pub fn corona(&self, other: &Graph) -> Graph {
        let (g, h) = (self.n, other.n);
        let mut b = Builder::new(g + g * h);
        for (u, v) in self.edges() {
            b.add(u, v);
        }
        for i in 0..g {
            let base = g + i * h;
            for (u, v) in other.edges() {
                b.add(base + u, base + v);
            }
            for u in 0..h {
                b.add(i, base + u);
            }
        }
        b.build()
    }

    /// Copy of the graph with edge `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut b = Builder::new(self.n);
        for (x, y) in self.edges() {
            b.add(x, y);
        }
        b.remove(u, v);
        b.build()
    }

    /// Parses the `n m` header + `u v` lines format.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let err = |line, kind| Error::EdgeList { line, kind };

        let (hline, header) = lines
            .next()
            .ok_or_else(|| err(1, EdgeListError::MalformedHeader(String::new())))?;
        let nums = parse_pair(header).ok_or_else(|| err(hline, EdgeListError::MalformedHeader(header.into())))?;
        let (n, m) = nums;

        let mut b = Builder::new(n);
        let mut found = 0;
        let mut last_line = hline;
        for (line, text) in lines {
            last_line = line;
            let (u, v) = parse_pair(text).ok_or_else(|| err(line, EdgeListError::MalformedEdge(text.into())))?;
            for x in [u, v] {
                if x >= n {
                    return Err(err(line, EdgeListError::OutOfRange { vertex: x, order: n }));
                }
            }
            if u == v {
                return Err(err(line, EdgeListError::Loop(u)));
            }
            if b.contains(u, v) {
                return Err(err(line, EdgeListError::DuplicateEdge(u, v)));
            }
            b.add(u, v);
            found += 1;
        }
        if found != m {
            return Err(err(last_line, EdgeListError::EdgeCount { declared: m, found }));
        }
        Ok(b.build())
    }

    /// Canonical edge-list text: header, then edges sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut b = Builder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add(u, v);
            }
        }
        b.build()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let g = complete(4).complement();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn complement_of_long_path_endpoint_degree() {
        let g = path(12).complement();
        assert_eq!(g.degree(0).unwrap(), 10);
        assert_eq!(g.degree(5).unwrap(), 9);
    }

    #[test]
    fn join_of_completes_is_complete() {
        for m in 1..5 {
            for n in 1..5 {
                assert_eq!(complete(m).join(&complete(n)), complete(m + n));
            }
        }
    }

    #[test]
    fn join_p2_k1_is_triangle() {
        assert_eq!(path(2).join(&complete(1)), complete(3));
    }

    #[test]
    fn corona_k1_k3_is_k4() {
        assert_eq!(complete(1).corona(&complete(3)), complete(4));
    }

    #[test]
    fn corona_block_layout() {
        let g = path(3).corona(&path(2));
        assert_eq!(g.order(), 9);
        // copy of vertex 1 sits at 3 + 1*2 = 5..7
        assert!(g.has_edge(1, 5) && g.has_edge(1, 6) && g.has_edge(5, 6));
        assert!(!g.has_edge(0, 5));
    }

    #[test]
    fn closed_neighborhood_contains_self() {
        let g = path(5);
        assert_eq!(g.closed_neighborhood(2).unwrap(), vec![1, 2, 3]);
        assert_eq!(g.closed_neighborhood(0).unwrap(), vec![0, 1]);
        assert!(matches!(
            g.closed_neighborhood(5),
            Err(Error::VertexOutOfRange { vertex: 5, order: 5 })
        ));
        assert!(g.degree(9).is_err());
    }

    #[test]
    fn parse_complete_triangle() {
        let g = Graph::parse_edge_list("3 3\n0 1\n0 2\n1 2").unwrap();
        assert_eq!(g, complete(3));
        assert_eq!(Graph::parse_edge_list("2 1\n0 1").unwrap(), path(2));
    }

    #[test]
    fn parse_errors_are_named() {
        let cases = [
            ("3 1\n0 3", "out of range"),
            ("3 1\n1 1", "loop"),
            ("3 2\n0 1\n1 0", "duplicate"),
            ("3 1\n0 x", "malformed edge"),
            ("three", "malformed header"),
            ("3 2\n0 1", "declares 2 edges"),
        ];
        for (text, needle) in cases {
            let msg = Graph::parse_edge_list(text).unwrap_err().to_string();
            assert!(msg.contains(needle), "{text:?} -> {msg}");
        }
    }

    #[test]
    fn serialize_is_canonical() {
        let g = Graph::parse_edge_list("4 3\n2 3\n1 0\n0 2\n").unwrap();
        assert_eq!(g.to_edge_list(), "4 3\n0 1\n0 2\n2 3\n");
    }

    #[test]
    fn tree_checks() {
        assert!(path(6).is_tree());
        assert!(!complete(3).is_tree());
        assert!(!Graph::empty(2).is_tree());
        assert!(Graph::empty(1).is_tree());
        assert!(complete(3).require_tree().is_err());
    }
}
