//! Core data model: 3-uniform triple systems on dense vertex sets,
//! pair graphs, and codegree bookkeeping.

use std::fmt;

use thiserror::Error;

/// An unordered triple stored in strictly ascending order.
pub type Triple = [u32; 3];

/// An unordered vertex pair stored as `(lo, hi)` with `lo < hi`.
pub type Pair = (u32, u32);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("triple {0:?} has non-distinct vertices")]
    NonDistinct(Triple),
    #[error("triple {0:?} has a vertex out of range (n = {1})")]
    OutOfRange(Triple, u32),
    #[error("duplicate triple {0:?}")]
    Duplicate(Triple),
}

/// Normalizes an arbitrary vertex triple into ascending order.
pub fn sorted_triple(mut t: Triple) -> Triple {
    t.sort_unstable();
    t
}

/// The three vertex pairs inside a triple, each ascending.
pub fn triple_pairs(t: &Triple) -> [Pair; 3] {
    [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
}

/// `C(n, 2)` as a u64.
pub fn pair_count(n: u32) -> u64 {
    let n = n as u64;
    n * (n - 1) / 2
}

/// A 3-uniform hypergraph on vertices `0..n`.
///
/// Edges are kept deduplicated and in lexicographic order; equality and
/// serialization are canonical as a consequence. Immutable after
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    n: u32,
    edges: Vec<Triple>,
}

impl TripleSystem {
    /// Builds a system from arbitrary (unordered, unsorted) triples.
    ///
    /// Rejects triples with repeated or out-of-range vertices and
    /// duplicate triples.
    pub fn new(n: u32, triples: impl IntoIterator<Item = Triple>) -> Result<Self, SystemError> {
        let mut edges: Vec<Triple> = Vec::new();
        for raw in triples {
            let t = sorted_triple(raw);
            if t[0] == t[1] || t[1] == t[2] {
                return Err(SystemError::NonDistinct(raw));
            }
            if t[2] >= n {
                return Err(SystemError::OutOfRange(raw, n));
            }
            edges.push(t);
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(SystemError::Duplicate(w[0]));
        }
        Ok(TripleSystem { n, edges })
    }

    /// The empty system on `n` vertices.
    pub fn empty(n: u32) -> Self {
        TripleSystem { n, edges: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Edges in lexicographic order, each triple ascending.
    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.edges.binary_search(&sorted_triple(*t)).is_ok()
    }

    /// Number of vertex pairs `C(n, 2)`.
    pub fn pair_count(&self) -> u64 {
        pair_count(self.n)
    }
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TripleSystem(n={}, m={})", self.n, self.edges.len())
    }
}

/// A 2-graph on vertices `0..n`: a set of unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairGraph {
    n: u32,
    pairs: Vec<Pair>,
}

impl PairGraph {
    pub fn new(n: u32, pairs: impl IntoIterator<Item = Pair>) -> Result<Self, SystemError> {
        let mut v: Vec<Pair> = Vec::new();
        for (a, b) in pairs {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if lo == hi {
                return Err(SystemError::NonDistinct([a, b, b]));
            }
            if hi >= n {
                return Err(SystemError::OutOfRange([a, b, b], n));
            }
            v.push((lo, hi));
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(SystemError::Duplicate([w[0].0, w[0].1, w[0].1]));
        }
        Ok(PairGraph { n, pairs: v })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        let p = if a < b { (a, b) } else { (b, a) };
        self.pairs.binary_search(&p).is_ok()
    }
}

/// The partition of vertex pairs by codegree.
///
/// Classes 0 through 3 are tracked individually; everything with
/// codegree 4 or more lands in the overflow class. Pairs of codegree 0
/// are implicit (everything not incident to an edge).
#[derive(Debug, Clone)]
pub struct CodegreeClasses {
    n: u32,
    /// Pairs with codegree >= 1, lexicographic, with their codegree.
    covered: Vec<(Pair, u32)>,
    /// Pair counts for codegree 0, 1, 2, 3 and the >=4 overflow.
    counts: [u64; 5],
    max_codegree: u32,
    edge_count: usize,
}

impl CodegreeClasses {
    pub fn of(g: &TripleSystem) -> Self {
        let mut all: Vec<Pair> = Vec::with_capacity(3 * g.edge_count());
        for t in g.edges() {
            all.extend_from_slice(&triple_pairs(t));
        }
        all.sort_unstable();
        let mut covered: Vec<(Pair, u32)> = Vec::new();
        let mut i = 0;
        while i < all.len() {
            let mut j = i + 1;
            while j < all.len() && all[j] == all[i] {
                j += 1;
            }
            covered.push((all[i], (j - i) as u32));
            i = j;
        }
        let mut counts = [0u64; 5];
        let mut max_codegree = 0;
        for &(_, d) in &covered {
            counts[(d as usize).min(4)] += 1;
            max_codegree = max_codegree.max(d);
        }
        counts[0] = pair_count(g.n()) - covered.len() as u64;
        CodegreeClasses {
            n: g.n(),
            covered,
            counts,
            max_codegree,
            edge_count: g.edge_count(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Codegree `d(xy)` of an unordered pair.
    pub fn codegree(&self, a: u32, b: u32) -> u32 {
        let p = if a < b { (a, b) } else { (b, a) };
        match self.covered.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.covered[i].1,
            Err(_) => 0,
        }
    }

    pub fn max_codegree(&self) -> u32 {
        self.max_codegree
    }

    /// Number of pairs with codegree exactly `i` for `i <= 3`; for
    /// `i == 4` the count of pairs with codegree >= 4.
    pub fn class_count(&self, i: usize) -> u64 {
        self.counts[i.min(4)]
    }

    /// e(G_i): alias of `class_count` in edge-of-2-graph terms.
    pub fn e(&self, i: usize) -> u64 {
        self.class_count(i)
    }

    /// Pairs with codegree exactly `d >= 1`, lexicographic.
    pub fn pairs_with_codegree(&self, d: u32) -> Vec<Pair> {
        assert!(d >= 1, "class 0 is implicit; enumerate complement instead");
        self.covered
            .iter()
            .filter(|&&(_, c)| c == d)
            .map(|&(p, _)| p)
            .collect()
    }

    /// All pairs of codegree >= 1 with their codegrees, lexicographic.
    pub fn covered_pairs(&self) -> &[(Pair, u32)] {
        &self.covered
    }

    /// Pairs with codegree 0, lexicographic. Materializes the complement;
    /// costs O(n^2).
    pub fn pairs_with_codegree_zero(&self) -> Vec<Pair> {
        let mut out = Vec::new();
        let mut it = self.covered.iter().peekable();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if it.peek().map(|&&(p, _)| p) == Some((a, b)) {
                    it.next();
                } else {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Sum of codegrees over all pairs; equals 3 e(G).
    pub fn codegree_sum(&self) -> u64 {
        self.covered.iter().map(|&(_, d)| d as u64).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }
}

/// Computes the codegree partition of a system.
pub fn codegree_classes(g: &TripleSystem) -> CodegreeClasses {
    CodegreeClasses::of(g)
}

/// A concrete forbidden configuration: `s` edges spanning few vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigWitness {
    /// Distinct edges of the host system, lexicographic.
    pub edges: Vec<Triple>,
    /// Union of the edges' vertices, ascending.
    pub span: Vec<u32>,
}

impl ConfigWitness {
    pub fn new(mut edges: Vec<Triple>) -> Self {
        edges.sort_unstable();
        let mut span: Vec<u32> = edges.iter().flatten().copied().collect();
        span.sort_unstable();
        span.dedup();
        ConfigWitness { edges, span }
    }

    /// |span|: the number of vertices the edges touch.
    pub fn k_spanned(&self) -> usize {
        self.span.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::fano;

    #[test]
    fn constructor_normalizes_and_validates() {
        let g = TripleSystem::new(4, vec![[2, 0, 3], [3, 2, 1]]).unwrap();
        assert_eq!(g.edges(), &[[0, 2, 3], [1, 2, 3]]);
        assert!(g.contains(&[3, 2, 0]));
        assert!(!g.contains(&[0, 1, 2]));

        assert_eq!(
            TripleSystem::new(4, vec![[0, 0, 1]]),
            Err(SystemError::NonDistinct([0, 0, 1]))
        );
        assert_eq!(
            TripleSystem::new(3, vec![[0, 1, 3]]),
            Err(SystemError::OutOfRange([0, 1, 3], 3))
        );
        assert_eq!(
            TripleSystem::new(4, vec![[0, 1, 2], [2, 1, 0]]),
            Err(SystemError::Duplicate([0, 1, 2]))
        );
    }

    #[test]
    fn codegree_classes_fano() {
        // Steiner system: every pair has codegree exactly 1.
        let c = codegree_classes(&fano());
        assert_eq!(c.class_count(1), 21);
        assert_eq!(c.class_count(0), 0);
        assert_eq!(c.class_count(2), 0);
        assert_eq!(c.class_count(3), 0);
        assert_eq!(c.class_count(4), 0);
        assert_eq!(c.max_codegree(), 1);
        assert_eq!(c.codegree_sum(), 21);
    }

    #[test]
    fn codegree_classes_empty() {
        let c = codegree_classes(&TripleSystem::empty(5));
        assert_eq!(c.class_count(0), 10);
        assert_eq!(c.codegree_sum(), 0);
    }

    #[test]
    fn codegree_classes_two_overlapping_triples() {
        // a = 0, b = 1, x1 = 2, x2 = 3
        let g = TripleSystem::new(4, vec![[0, 2, 3], [1, 2, 3]]).unwrap();
        let c = codegree_classes(&g);
        assert_eq!(c.codegree(0, 1), 0);
        assert_eq!(c.codegree(2, 3), 2);
        for &(a, b) in &[(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(c.codegree(a, b), 1);
        }
        assert_eq!(c.class_count(0), 1);
        assert_eq!(c.class_count(1), 4);
        assert_eq!(c.class_count(2), 1);
        assert_eq!(c.pairs_with_codegree(2), vec![(2, 3)]);
        assert_eq!(c.pairs_with_codegree_zero(), vec![(0, 1)]);
    }

    #[test]
    fn overflow_class_keeps_high_codegrees() {
        // four triples through the pair {0,1}
        let g = TripleSystem::new(6, vec![[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 1, 5]]).unwrap();
        let c = codegree_classes(&g);
        assert_eq!(c.codegree(0, 1), 4);
        assert_eq!(c.class_count(4), 1);
        assert_eq!(c.max_codegree(), 4);
    }

    #[test]
    fn witness_span() {
        let w = ConfigWitness::new(vec![[0, 1, 3], [0, 1, 2]]);
        assert_eq!(w.edges, vec![[0, 1, 2], [0, 1, 3]]);
        assert_eq!(w.span, vec![0, 1, 2, 3]);
        assert_eq!(w.k_spanned(), 4);
    }

    #[test]
    fn pair_graph_basics() {
        let g = PairGraph::new(4, vec![(3, 1), (0, 2)]).unwrap();
        assert_eq!(g.pairs(), &[(0, 2), (1, 3)]);
        assert!(g.contains(3, 1));
        assert!(PairGraph::new(3, vec![(1, 1)]).is_err());
    }
}
