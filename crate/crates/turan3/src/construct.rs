//! The gadget graphs, the randomized greedy edge-disjoint packer, the lift
//! to a triple system, and Steiner-type baselines.
//!
//! The gadget with parameter t is a "book" of t quadrilateral pages: two
//! spine vertices a, b joined to every page vertex, plus the page edge
//! x_{2i-1} x_{2i} and the spine edge ab itself, 5t+1 pair-edges in total.
//! Its 3-uniform companion keeps only the 2t triples {a, x_{2i-1}, x_{2i}}
//! and {b, x_{2i-1}, x_{2i}}. Replacing every copy of an edge-disjoint
//! packing by its companion produces a triple system in which no three
//! edges span five or fewer vertices.

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::system::{pair_count, Pair, Triple, TripleSystem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("gadget parameter t must be >= 1")]
    BadT,
    #[error("epsilon must satisfy 0 < eps < 1/5")]
    BadEps,
    #[error("Bose construction needs n == 3 (mod 6), got {0}")]
    BadSteinerOrder(u32),
}

/// The pair graph and triple companion for one parameter t.
///
/// Local vertex indices: 0 = a, 1 = b, 2 + j = x_{j+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    t: u32,
    h_edges: Vec<Pair>,
    hat_edges: Vec<Triple>,
}

impl Gadget {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn vertex_count(&self) -> u32 {
        2 * self.t + 2
    }

    /// The 5t+1 pair-edges.
    pub fn h_edges(&self) -> &[Pair] {
        &self.h_edges
    }

    /// The 2t triples.
    pub fn hat_edges(&self) -> &[Triple] {
        &self.hat_edges
    }
}

/// Builds the gadget for a given t >= 1.
pub fn build_gadget(t: u32) -> Result<Gadget, ConstructError> {
    if t < 1 {
        return Err(ConstructError::BadT);
    }
    let mut h_edges = Vec::with_capacity(5 * t as usize + 1);
    h_edges.push((0, 1));
    for x in 2..2 * t + 2 {
        h_edges.push((0, x));
        h_edges.push((1, x));
    }
    let mut hat_edges = Vec::with_capacity(2 * t as usize);
    for i in 0..t {
        let (u, v) = (2 + 2 * i, 3 + 2 * i);
        h_edges.push((u, v));
        hat_edges.push([0, u, v]);
        hat_edges.push([1, u, v]);
    }
    Ok(Gadget { t, h_edges, hat_edges })
}

/// An injective placement of one gadget copy into the host vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    t: u32,
    /// Image of local vertex j; length 2t+2.
    map: Vec<u32>,
}

impl Embedding {
    pub fn new(t: u32, map: Vec<u32>) -> Self {
        assert_eq!(map.len(), 2 * t as usize + 2);
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), map.len(), "embedding must be injective");
        Embedding { t, map }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn spine(&self) -> (u32, u32) {
        (self.map[0], self.map[1])
    }

    /// Host pairs covered by this copy, 5t+1 of them.
    pub fn pair_images(&self) -> Vec<Pair> {
        let gadget = build_gadget(self.t).expect("t >= 1 by construction");
        gadget
            .h_edges()
            .iter()
            .map(|&(u, v)| ordered(self.map[u as usize], self.map[v as usize]))
            .collect()
    }

    /// Host triples of the companion, 2t of them.
    pub fn triple_images(&self) -> Vec<Triple> {
        let gadget = build_gadget(self.t).expect("t >= 1 by construction");
        gadget
            .hat_edges()
            .iter()
            .map(|t3| {
                let mut im = [
                    self.map[t3[0] as usize],
                    self.map[t3[1] as usize],
                    self.map[t3[2] as usize],
                ];
                im.sort_unstable();
                im
            })
            .collect()
    }
}

fn ordered(a: u32, b: u32) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// An edge-disjoint collection of gadget copies in the complete graph.
#[derive(Debug, Clone)]
pub struct PackingResult {
    pub n: u32,
    pub t: u32,
    pub seed: u64,
    pub budget: u64,
    pub embeddings: Vec<Embedding>,
    pub covered_pairs: u64,
    pub leftover_pairs: u64,
    /// Set when n < 2t+2 made packing impossible from the start.
    pub too_small: bool,
}

impl PackingResult {
    pub fn copies(&self) -> usize {
        self.embeddings.len()
    }

    /// Fraction of the C(n,2) host pairs covered.
    pub fn coverage(&self) -> f64 {
        if self.covered_pairs == 0 {
            return 0.0;
        }
        self.covered_pairs as f64 / pair_count(self.n) as f64
    }
}

/// Leftover pair graph with O(1) membership, O(words) neighborhood
/// intersection and O(1) uniform sampling.
struct Leftover {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    /// Triangular pair ids still present.
    pairs: Vec<u32>,
    /// pair id -> position in `pairs`; u32::MAX when removed.
    pos: Vec<u32>,
    /// Row offsets for triangular ids.
    offsets: Vec<u32>,
}

impl Leftover {
    fn complete(n: usize) -> Self {
        let words = n.div_ceil(64);
        let mut adj = vec![0u64; n * words];
        for v in 0..n {
            let row = &mut adj[v * words..(v + 1) * words];
            for (w, slot) in row.iter_mut().enumerate() {
                let base = w * 64;
                let mut bits = if base + 64 <= n { !0u64 } else { (1u64 << (n - base)) - 1 };
                if v >= base && v < base + 64 {
                    bits &= !(1u64 << (v - base));
                }
                *slot = bits;
            }
        }
        let total = n * (n - 1) / 2;
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc: u32 = 0;
        for a in 0..n {
            offsets.push(acc);
            acc += (n - a - 1) as u32;
        }
        offsets.push(acc);
        Leftover {
            n,
            words,
            adj,
            pairs: (0..total as u32).collect(),
            pos: (0..total as u32).collect(),
            offsets,
        }
    }

    fn id(&self, a: usize, b: usize) -> u32 {
        debug_assert!(a < b);
        self.offsets[a] + (b - a - 1) as u32
    }

    fn decode(&self, id: u32) -> (usize, usize) {
        let a = self.offsets.partition_point(|&o| o <= id) - 1;
        let b = a + 1 + (id - self.offsets[a]) as usize;
        (a, b)
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn remove(&mut self, a: usize, b: usize) {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.adj[a * self.words + b / 64] &= !(1u64 << (b % 64));
        self.adj[b * self.words + a / 64] &= !(1u64 << (a % 64));
        let id = self.id(a, b);
        let p = self.pos[id as usize];
        debug_assert!(p != u32::MAX);
        let last = *self.pairs.last().expect("pair present");
        self.pairs.swap_remove(p as usize);
        self.pos[id as usize] = u32::MAX;
        if last != id {
            self.pos[last as usize] = p;
        }
    }

    fn len(&self) -> usize {
        self.pairs.len()
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> (usize, usize) {
        let id = self.pairs[rng.gen_range(0..self.pairs.len())];
        self.decode(id)
    }
}

fn and_rows(dst: &mut [u64], a: &[u64], b: &[u64]) {
    for ((d, &x), &y) in dst.iter_mut().zip(a).zip(b) {
        *d = x & y;
    }
}

fn test_bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn clear_bit(words: &mut [u64], i: usize) {
    words[i / 64] &= !(1u64 << (i % 64));
}

/// First set bit scanning cyclically from `start` over a domain of `n` bits.
fn first_set_bit_cyclic(words: &[u64], n: usize, start: usize) -> Option<usize> {
    let next_in = |from: usize, to: usize| -> Option<usize> {
        let mut w = from / 64;
        while w * 64 < to {
            let mut bits = words[w];
            if w == from / 64 {
                bits &= !0u64 << (from % 64);
            }
            let hi = ((w + 1) * 64).min(to);
            if hi < (w + 1) * 64 {
                bits &= (1u64 << (hi % 64)) - 1;
            }
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
            w += 1;
        }
        None
    };
    next_in(start, n).or_else(|| next_in(0, start))
}

fn push_range_bits(words: &[u64], lo: usize, hi: usize, out: &mut Vec<u32>) {
    let mut w = lo / 64;
    while w * 64 < hi {
        let mut bits = words[w];
        if w == lo / 64 {
            bits &= !0u64 << (lo % 64);
        }
        let end = ((w + 1) * 64).min(hi);
        if end < (w + 1) * 64 {
            bits &= (1u64 << (end % 64)) - 1;
        }
        while bits != 0 {
            out.push((w * 64 + bits.trailing_zeros() as usize) as u32);
            bits &= bits - 1;
        }
        w += 1;
    }
}

/// Collects set bits rotated so the listing starts at `start`.
fn set_bits_cyclic(words: &[u64], n: usize, start: usize, out: &mut Vec<u32>) {
    out.clear();
    push_range_bits(words, start.min(n), n, out);
    push_range_bits(words, 0, start.min(n), out);
}

/// Greedy randomized packing of gadget copies into K_n.
///
/// Each attempt draws a uniformly random leftover pair as the spine (a, b)
/// and then matches pages greedily among the common leftover neighbors,
/// scanning from a random starting offset. Attempts failing to complete a
/// copy leave the leftover graph untouched; the run stops after `budget`
/// consecutive failures or when fewer than 5t+1 pairs remain.
///
/// Deterministic for fixed (n, t, seed, budget).
pub fn greedy_pack(n: u32, t: u32, seed: u64, budget: u64) -> Result<PackingResult, ConstructError> {
    greedy_pack_opts(n, t, seed, budget, false)
}

/// `greedy_pack` with an optional cascade pass: once the main run stalls,
/// rerun with t = 1 on the remaining pairs to harvest extra copies.
pub fn greedy_pack_opts(
    n: u32,
    t: u32,
    seed: u64,
    budget: u64,
    cascade: bool,
) -> Result<PackingResult, ConstructError> {
    if t < 1 {
        return Err(ConstructError::BadT);
    }
    let total_pairs = pair_count(n);
    if n < 2 * t + 2 {
        return Ok(PackingResult {
            n,
            t,
            seed,
            budget,
            embeddings: Vec::new(),
            covered_pairs: 0,
            leftover_pairs: total_pairs,
            too_small: true,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leftover = Leftover::complete(n as usize);
    let mut embeddings = Vec::new();
    let mut covered: u64 = 0;

    covered += pack_phase(&mut leftover, t, budget, &mut rng, &mut embeddings);
    if cascade && t > 1 {
        covered += pack_phase(&mut leftover, 1, budget, &mut rng, &mut embeddings);
    }

    Ok(PackingResult {
        n,
        t,
        seed,
        budget,
        covered_pairs: covered,
        leftover_pairs: total_pairs - covered,
        embeddings,
        too_small: false,
    })
}

fn pack_phase(
    leftover: &mut Leftover,
    t: u32,
    budget: u64,
    rng: &mut ChaCha8Rng,
    embeddings: &mut Vec<Embedding>,
) -> u64 {
    let n = leftover.n;
    if n < 2 * t as usize + 2 {
        return 0;
    }
    let per_copy = 5 * t as u64 + 1;
    let words = leftover.words;
    let mut common = vec![0u64; words];
    let mut partner = vec![0u64; words];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut covered = 0u64;
    let mut fails: u64 = 0;

    while fails < budget && leftover.len() as u64 >= per_copy {
        let (a, b) = leftover.sample(rng);
        and_rows(&mut common, leftover.row(a), leftover.row(b));
        let offset = rng.gen_range(0..n);
        set_bits_cyclic(&common, n, offset, &mut order);

        let mut pages: Vec<(u32, u32)> = Vec::with_capacity(t as usize);
        for &u in &order {
            if pages.len() == t as usize {
                break;
            }
            let u = u as usize;
            if !test_bit(&common, u) {
                continue; // consumed as a partner already
            }
            and_rows(&mut partner, &common, leftover.row(u));
            clear_bit(&mut partner, u);
            if let Some(v) = first_set_bit_cyclic(&partner, n, offset) {
                clear_bit(&mut common, u);
                clear_bit(&mut common, v);
                pages.push((u as u32, v as u32));
            }
        }

        if pages.len() == t as usize {
            let mut map = Vec::with_capacity(2 * t as usize + 2);
            map.push(a as u32);
            map.push(b as u32);
            for &(u, v) in &pages {
                map.push(u);
                map.push(v);
            }
            let emb = Embedding::new(t, map);
            for &(u, v) in emb.pair_images().iter() {
                leftover.remove(u as usize, v as usize);
            }
            embeddings.push(emb);
            covered += per_copy;
            fails = 0;
        } else {
            fails += 1;
        }
    }
    covered
}

/// Replaces every packed copy by its triple companion.
///
/// Edge-disjointness of the packing makes the resulting triples pairwise
/// distinct (each triple determines the page pair it sits on).
pub fn lift(packing: &PackingResult) -> TripleSystem {
    let mut triples = Vec::with_capacity(packing.embeddings.iter().map(|e| 2 * e.t() as usize).sum());
    for emb in &packing.embeddings {
        triples.extend(emb.triple_images());
    }
    TripleSystem::new(packing.n, triples)
        .expect("edge-disjoint copies lift to distinct valid triples")
}

/// Least t making the gadget construction lose at most a 5*eps fraction of
/// the ideal density: the smallest integer t with
/// 5t/(5t+1) >= (1 - 5 eps)/(1 - 4 eps), decided in exact rationals.
pub fn recommended_t(eps: &BigRational) -> Result<u64, ConstructError> {
    let fifth = BigRational::new(BigInt::one(), BigInt::from(5));
    if !eps.is_positive() || *eps >= fifth {
        return Err(ConstructError::BadEps);
    }
    let five_eps = BigRational::from(BigInt::from(5)) * eps;
    // 5t/(5t+1) >= (1-5e)/(1-4e) simplifies to t >= (1-5e)/(5e)
    let threshold = (BigRational::one() - &five_eps) / five_eps;
    let t = threshold.ceil().to_integer().max(BigInt::one());
    let t_u64 = u64::try_from(t).map_err(|_| ConstructError::BadEps)?;
    debug_assert!(gadget_ratio_ok(t_u64, eps));
    debug_assert!(t_u64 == 1 || !gadget_ratio_ok(t_u64 - 1, eps));
    Ok(t_u64)
}

fn gadget_ratio_ok(t: u64, eps: &BigRational) -> bool {
    let five_t = BigRational::from(BigInt::from(5 * t as i64));
    let lhs = &five_t / (&five_t + BigRational::one());
    let one = BigRational::one();
    let rhs = (&one - BigRational::from(BigInt::from(5)) * eps)
        / (&one - BigRational::from(BigInt::from(4)) * eps);
    lhs >= rhs
}

/// The Bose construction: a Steiner triple system of order n == 3 (mod 6).
///
/// Points are (a, i) with a in Z_m (m = n/3, odd) and i in {0,1,2}, encoded
/// as 3a + i. Columns {(a,0),(a,1),(a,2)} are triples, and every same-class
/// pair {(a,i),(b,i)} joins the half-sum point ((a+b)/2 mod m, i+1).
pub fn bose_steiner(n: u32) -> Result<TripleSystem, ConstructError> {
    if n % 6 != 3 {
        return Err(ConstructError::BadSteinerOrder(n));
    }
    let m = n / 3;
    let half = (m + 1) / 2; // inverse of 2 in Z_m
    let mut triples = Vec::new();
    for a in 0..m {
        triples.push([3 * a, 3 * a + 1, 3 * a + 2]);
    }
    for a in 0..m {
        for b in a + 1..m {
            let q = ((a + b) as u64 * half as u64 % m as u64) as u32;
            for i in 0..3 {
                triples.push([3 * a + i, 3 * b + i, 3 * q + (i + 1) % 3]);
            }
        }
    }
    Ok(TripleSystem::new(n, triples).expect("Bose construction yields distinct valid triples"))
}

/// The unique Steiner triple system on 7 points, lexicographically least
/// labeling.
pub fn fano() -> TripleSystem {
    TripleSystem::new(
        7,
        [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ],
    )
    .expect("Fano plane is valid")
}
