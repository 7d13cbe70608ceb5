//! Forbidden-configuration search: decide whether a system contains `s`
//! edges spanning at most `k` vertices, and produce a witness when it does.

use itertools::Itertools;
use thiserror::Error;

use crate::system::{codegree_classes, ConfigWitness, Pair, Triple, TripleSystem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckerError {
    #[error("invalid parameters k = {k}, s = {s} (need k >= 4, s >= 2)")]
    InvalidParams { k: u32, s: u32 },
    #[error("invalid family member (k, s) = ({k}, {s}) (need k >= 4, s >= 2, k <= 3s)")]
    InvalidFamilyMember { k: u32, s: u32 },
    #[error("naive enumeration guard exceeded: C({m}, {s}) = {subsets} > {limit}")]
    GuardExceeded { m: usize, s: u32, subsets: u128, limit: u128 },
}

/// Subset cap for the exhaustive checker.
pub const NAIVE_GUARD: u128 = 10_000_000;

/// A list of (k, s) patterns, each meaning "no s edges on <= k vertices".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenFamily {
    members: Vec<(u32, u32)>,
}

impl ForbiddenFamily {
    /// Members must satisfy k >= 4, s >= 2 and k <= 3s (otherwise the
    /// pattern is vacuous for 3-graphs).
    pub fn new(members: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, CheckerError> {
        let members: Vec<(u32, u32)> = members.into_iter().collect();
        for &(k, s) in &members {
            if k < 4 || s < 2 || k > 3 * s {
                return Err(CheckerError::InvalidFamilyMember { k, s });
            }
        }
        Ok(ForbiddenFamily { members })
    }

    pub fn members(&self) -> &[(u32, u32)] {
        &self.members
    }
}

/// Maximum size of a partial Steiner triple system (pairwise intersections
/// of size <= 1) on `n` points. Classical packing number; exact for all n.
fn linear_packing_max(n: u32) -> u64 {
    if n < 3 {
        return 0;
    }
    let n64 = n as u64;
    let base = n64 * ((n64 - 1) / 2) / 3;
    if n % 6 == 5 {
        base - 1
    } else {
        base
    }
}

/// True when every s-edge configuration on <= k vertices must contain two
/// edges sharing a pair, i.e. no linear configuration fits. In that case
/// the search can be rooted at codegree >= 2 pairs.
fn pair_rooted_complete(k: u32, s: u32) -> bool {
    linear_packing_max(k) < s as u64
}

struct Search<'a> {
    g: &'a TripleSystem,
    k: usize,
    s: usize,
    /// (pair, edge index), sorted; three entries per edge.
    pair_entries: Vec<(Pair, u32)>,
    /// vertex -> incident edge indices, ascending. Built only for the
    /// search modes that need it.
    vertex_edges: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a TripleSystem, k: u32, s: u32, with_vertex_index: bool) -> Self {
        let mut pair_entries = Vec::with_capacity(3 * g.edge_count());
        for (i, t) in g.edges().iter().enumerate() {
            pair_entries.push(((t[0], t[1]), i as u32));
            pair_entries.push(((t[0], t[2]), i as u32));
            pair_entries.push(((t[1], t[2]), i as u32));
        }
        pair_entries.sort_unstable();
        let vertex_edges = if with_vertex_index {
            let mut v = vec![Vec::new(); g.n() as usize];
            for (i, t) in g.edges().iter().enumerate() {
                for &x in t {
                    v[x as usize].push(i as u32);
                }
            }
            v
        } else {
            Vec::new()
        };
        Search { g, k: k as usize, s: s as usize, pair_entries, vertex_edges }
    }

    fn edges_with_pair(&self, p: Pair) -> impl Iterator<Item = u32> + '_ {
        let lo = self.pair_entries.partition_point(|&(q, _)| q < p);
        self.pair_entries[lo..]
            .iter()
            .take_while(move |&&(q, _)| q == p)
            .map(|&(_, i)| i)
    }

    fn edge(&self, i: u32) -> &Triple {
        &self.g.edges()[i as usize]
    }

    fn new_vertices(&self, i: u32, span: &[u32]) -> usize {
        self.edge(i).iter().filter(|v| !span.contains(v)).count()
    }

    fn merge_span(&self, span: &[u32], i: u32) -> Vec<u32> {
        let mut out = span.to_vec();
        for &v in self.edge(i) {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out.sort_unstable();
        out
    }

    fn witness(&self, chosen: &[u32]) -> ConfigWitness {
        ConfigWitness::new(chosen.iter().map(|&i| *self.edge(i)).collect())
    }

    /// Candidate edges that keep the total span within k, ascending and
    /// starting at `min_idx`, excluding already chosen edges.
    fn span_candidates(&self, span: &[u32], budget: usize, min_idx: u32, chosen: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = match budget {
            0 | 1 => {
                // every candidate shares >= 2 vertices with the span
                let mut v = Vec::new();
                for (a, b) in span.iter().copied().tuple_combinations() {
                    v.extend(self.edges_with_pair((a, b)));
                }
                v
            }
            2 => {
                // every candidate meets the span
                let mut v = Vec::new();
                for &x in span {
                    v.extend_from_slice(&self.vertex_edges[x as usize]);
                }
                v
            }
            _ => (min_idx..self.g.edge_count() as u32).collect(),
        };
        out.sort_unstable();
        out.dedup();
        out.retain(|&i| {
            i >= min_idx && !chosen.contains(&i) && self.new_vertices(i, span) <= budget
        });
        out
    }

    /// Search rooted at codegree >= 2 pairs; complete whenever
    /// `pair_rooted_complete(k, s)` holds. High-codegree roots first,
    /// lexicographic tie-break, so witnesses are reproducible.
    fn pair_rooted(&self) -> Option<ConfigWitness> {
        let classes = codegree_classes(self.g);
        let mut roots: Vec<(u32, Pair)> = classes
            .covered_pairs()
            .iter()
            .filter(|&&(_, d)| d >= 2)
            .map(|&(p, d)| (d, p))
            .collect();
        roots.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        for (_, p) in roots {
            let edges: Vec<u32> = self.edges_with_pair(p).collect();
            for (pos_i, &ei) in edges.iter().enumerate() {
                for &ej in &edges[pos_i + 1..] {
                    let mut chosen = vec![ei, ej];
                    let span = self.merge_span(self.edge(ei), ej);
                    if let Some(w) = self.extend(&mut chosen, &span, 0) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    /// Adds `s - chosen` further edges without letting the span exceed k.
    /// Extensions carry ascending indices; any edge set admits such an
    /// order because the span constraint is order-independent.
    fn extend(&self, chosen: &mut Vec<u32>, span: &[u32], min_idx: u32) -> Option<ConfigWitness> {
        if chosen.len() == self.s {
            return Some(self.witness(chosen));
        }
        let budget = self.k - span.len();
        for c in self.span_candidates(span, budget, min_idx, chosen) {
            chosen.push(c);
            let merged = self.merge_span(span, c);
            if let Some(w) = self.extend(chosen, &merged, c + 1) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }

    /// Complete search for arbitrary (k, s): enumerates configurations by
    /// their decomposition into connected components (edge-intersection
    /// sense), components ordered by minimum edge index.
    fn general(&self) -> Option<ConfigWitness> {
        for root in 0..self.g.edge_count() as u32 {
            let comp_span: Vec<u32> = self.edge(root).to_vec();
            let mut chosen = vec![root];
            if let Some(w) = self.general_rec(root, &comp_span, &[], &mut chosen) {
                return Some(w);
            }
        }
        None
    }

    fn general_rec(
        &self,
        comp_root: u32,
        comp_span: &[u32],
        other_span: &[u32],
        chosen: &mut Vec<u32>,
    ) -> Option<ConfigWitness> {
        if chosen.len() == self.s {
            return Some(self.witness(chosen));
        }
        let total = comp_span.len() + other_span.len();
        debug_assert!(total <= self.k);

        // grow the current component
        let mut cands: Vec<u32> = comp_span
            .iter()
            .flat_map(|&x| self.vertex_edges[x as usize].iter().copied())
            .collect();
        cands.sort_unstable();
        cands.dedup();
        for c in cands {
            if c <= comp_root || chosen.contains(&c) {
                continue;
            }
            let t = self.edge(c);
            if t.iter().any(|v| other_span.contains(v)) {
                continue;
            }
            if t.iter().filter(|v| !comp_span.contains(v)).count() > self.k - total {
                continue;
            }
            chosen.push(c);
            let merged = self.merge_span(comp_span, c);
            if let Some(w) = self.general_rec(comp_root, &merged, other_span, chosen) {
                return Some(w);
            }
            chosen.pop();
        }

        // close the component and start a new, vertex-disjoint one
        if total + 3 <= self.k {
            let mut closed: Vec<u32> = comp_span.iter().chain(other_span).copied().collect();
            closed.sort_unstable();
            for r in comp_root + 1..self.g.edge_count() as u32 {
                if chosen.contains(&r) {
                    continue;
                }
                let t = self.edge(r);
                if t.iter().any(|v| closed.contains(v)) {
                    continue;
                }
                chosen.push(r);
                if let Some(w) = self.general_rec(r, &t.to_vec(), &closed, chosen) {
                    return Some(w);
                }
                chosen.pop();
            }
        }
        None
    }
}

fn validate(k: u32, s: u32) -> Result<(), CheckerError> {
    if k < 4 || s < 2 {
        return Err(CheckerError::InvalidParams { k, s });
    }
    Ok(())
}

/// Finds `s` distinct edges spanning at most `k` vertices, or reports the
/// system free of such a configuration.
///
/// Fewer than `s` edges in total makes the system vacuously free. The
/// witness returned is the first one under a fixed deterministic search
/// order (high-codegree pair roots first, then lexicographic everywhere).
pub fn find_config(
    g: &TripleSystem,
    k: u32,
    s: u32,
) -> Result<Option<ConfigWitness>, CheckerError> {
    validate(k, s)?;
    if (s as usize) > g.edge_count() {
        return Ok(None);
    }
    if k >= 3 * s {
        // any s edges span at most 3s vertices
        return Ok(Some(ConfigWitness::new(
            g.edges()[..s as usize].to_vec(),
        )));
    }
    if pair_rooted_complete(k, s) {
        let needs_vertex_index = k as usize >= 6; // span budget can reach 2
        let search = Search::new(g, k, s, needs_vertex_index);
        Ok(search.pair_rooted())
    } else {
        let search = Search::new(g, k, s, true);
        Ok(search.general())
    }
}

/// Exhaustive reference checker: tests every s-subset of edges. Same
/// free/not-free contract as `find_config`; guarded by `NAIVE_GUARD`.
pub fn find_config_naive(
    g: &TripleSystem,
    k: u32,
    s: u32,
) -> Result<Option<ConfigWitness>, CheckerError> {
    validate(k, s)?;
    let m = g.edge_count();
    if (s as usize) > m {
        return Ok(None);
    }
    let subsets = binomial(m as u128, s as u128);
    if subsets > NAIVE_GUARD {
        return Err(CheckerError::GuardExceeded { m, s, subsets, limit: NAIVE_GUARD });
    }
    for combo in (0..m).combinations(s as usize) {
        let mut span: Vec<u32> = combo.iter().flat_map(|&i| g.edges()[i]).collect();
        span.sort_unstable();
        span.dedup();
        if span.len() <= k as usize {
            return Ok(Some(ConfigWitness::new(
                combo.into_iter().map(|i| g.edges()[i]).collect(),
            )));
        }
    }
    Ok(None)
}

/// Tests the system against every member of the family; returns the first
/// witness found, or `None` when the system is free. Members asking for
/// more edges than the system has are vacuously satisfied.
pub fn is_free(
    g: &TripleSystem,
    fam: &ForbiddenFamily,
) -> Result<Option<ConfigWitness>, CheckerError> {
    for &(k, s) in fam.members() {
        if (s as usize) > g.edge_count() {
            continue;
        }
        if let Some(w) = find_config(g, k, s)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
