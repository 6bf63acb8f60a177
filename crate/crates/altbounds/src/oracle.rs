//! Brute-force ground truth at desk scale.
//!
//! Everything in the other modules is closed-form or symbolic.  This module
//! builds the rank-distance graph on Alt_n(F_q) explicitly for small
//! parameters and rechecks the claims against it: vertex degrees, geodesic
//! distances, intersection numbers, the spectrum, walk counts, and exact
//! k-independence numbers via branch and bound.  Agreement between the two
//! routes is what the test suite ultimately leans on.

use crate::altforms::{matrix_rank, space_dim, space_size, space_size_u128, AltMatrix};
use crate::gf::FieldSpec;
use crate::spectra::{self, SpectrumTable};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

/// Vertex-count ceiling for building a graph at all.
pub const BUILD_LIMIT: u64 = 1 << 20;
/// Vertex-count ceiling for the quadratic spectrum checks.
pub const SPECTRUM_LIMIT: usize = 4096;
/// Vertex-count ceiling for the independence search.
pub const ALPHA_LIMIT: usize = 1 << 14;
/// Default branch-and-bound node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
/// Entry ceiling for materializing the vertex-by-degree neighbor table.
const NEIGHBOR_TABLE_LIMIT: usize = 16_000_000;

const UNREACHED: u8 = u8::MAX;

/// The rank-distance graph, stored implicitly: adjacency is translation
/// invariant, so one rank profile plus the difference arithmetic of vertex
/// encodings reproduces every edge.  Encodings add digit by digit with no
/// carries, which the hot paths exploit through precomputed digit and
/// neighbor tables.
pub struct DenseGraph {
    n: usize,
    q: u64,
    nverts: usize,
    places: Vec<u64>,
    /// rank(decode(v)) / 2 for every vertex.
    rank_half: Vec<u8>,
    /// Encodings of the rank-2 matrices, ascending: the neighbors of zero.
    r2_list: Vec<u32>,
    /// Base-q digits of every vertex, row-major N x dim; empty for q = 2,
    /// where bitwise arithmetic is cheaper than any table.
    digits: Vec<u16>,
    /// Raw field addition and subtraction tables, q x q.
    add_table: Vec<u16>,
    sub_table: Vec<u16>,
    /// Flattened neighbor lists, v * degree + j, when small enough to keep.
    neighbor_map: Option<Vec<u32>>,
}

impl DenseGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn num_vertices(&self) -> usize {
        self.nverts
    }

    pub fn degree(&self) -> usize {
        self.r2_list.len()
    }

    pub fn rank_half(&self, v: u32) -> u8 {
        self.rank_half[v as usize]
    }

    fn dim(&self) -> usize {
        self.places.len()
    }

    /// Encoding of decode(u) + decode(v), entrywise over the field.
    pub fn add_enc(&self, u: u32, v: u32) -> u32 {
        if self.q == 2 {
            return u ^ v;
        }
        let dim = self.dim();
        let q = self.q as usize;
        let du = &self.digits[u as usize * dim..u as usize * dim + dim];
        let dv = &self.digits[v as usize * dim..v as usize * dim + dim];
        let mut out = 0u64;
        for i in 0..dim {
            out += self.add_table[du[i] as usize * q + dv[i] as usize] as u64 * self.places[i];
        }
        out as u32
    }

    /// Encoding of decode(u) - decode(v).
    pub fn diff_enc(&self, u: u32, v: u32) -> u32 {
        if self.q == 2 {
            return u ^ v;
        }
        let dim = self.dim();
        let q = self.q as usize;
        let du = &self.digits[u as usize * dim..u as usize * dim + dim];
        let dv = &self.digits[v as usize * dim..v as usize * dim + dim];
        let mut out = 0u64;
        for i in 0..dim {
            out += self.sub_table[du[i] as usize * q + dv[i] as usize] as u64 * self.places[i];
        }
        out as u32
    }

    pub fn is_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.rank_half[self.diff_enc(u, v) as usize] == 1
    }

    /// Calls `f` with every neighbor of v, in ascending rank-2 offset
    /// order.  Each storage layout gets its own tight loop.
    #[inline]
    fn for_neighbors(&self, v: u32, mut f: impl FnMut(u32)) {
        if let Some(map) = &self.neighbor_map {
            let deg = self.r2_list.len();
            let row = &map[v as usize * deg..v as usize * deg + deg];
            for &w in row {
                f(w);
            }
        } else if self.q == 2 {
            for &r in &self.r2_list {
                f(v ^ r);
            }
        } else {
            for &r in &self.r2_list {
                f(self.add_enc(v, r));
            }
        }
    }

    /// Breadth-first distances from one vertex; unreached vertices keep the
    /// sentinel 255, which no genuine distance can hit at these sizes.
    pub fn bfs_from(&self, start: u32) -> Vec<u8> {
        let mut dist = vec![UNREACHED; self.nverts];
        dist[start as usize] = 0;
        let mut frontier = vec![start];
        let mut level = 0u8;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                self.for_neighbors(v, |w| {
                    if dist[w as usize] == UNREACHED {
                        dist[w as usize] = level;
                        next.push(w);
                    }
                });
            }
            frontier = next;
        }
        dist
    }
}

/// Builds the graph for (n, q), guarded to a million-ish vertices.  The
/// rank of every matrix in the space is computed once, in parallel; rank 2
/// marks the neighbors of the zero matrix and translation does the rest.
pub fn build_graph(n: usize, q: u64) -> Result<DenseGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let size = space_size(n, q);
    if space_size_u128(n, q).is_none_or(|s| s > BUILD_LIMIT as u128) {
        return Err(Error::SizeGuard {
            what: "graph build",
            actual: size,
            limit: BigUint::from(BUILD_LIMIT),
        });
    }
    let spec = FieldSpec::from_order(q)?;
    let nverts = u32::try_from(size.clone()).expect("guarded") as usize;
    let dim = space_dim(n) as usize;
    let mut places = Vec::with_capacity(dim);
    let mut acc = 1u64;
    for _ in 0..dim {
        places.push(acc);
        acc *= q;
    }

    let rank_half: Vec<u8> = (0..nverts as u32)
        .into_par_iter()
        .map(|idx| {
            let m = AltMatrix::decode(n, &spec, idx as u128).expect("in range");
            let rank = matrix_rank(&spec, m.to_dense(), n, n);
            debug_assert_eq!(rank % 2, 0);
            (rank / 2) as u8
        })
        .collect();
    let r2_list: Vec<u32> = (0..nverts as u32)
        .filter(|&v| rank_half[v as usize] == 1)
        .collect();

    let (digits, add_table, sub_table) = if q == 2 {
        (Vec::new(), Vec::new(), Vec::new())
    } else {
        let mut digits = vec![0u16; nverts * dim];
        for v in 0..nverts {
            let mut rest = v as u64;
            for slot in digits[v * dim..v * dim + dim].iter_mut() {
                *slot = (rest % q) as u16;
                rest /= q;
            }
        }
        let mut add_table = vec![0u16; (q * q) as usize];
        let mut sub_table = vec![0u16; (q * q) as usize];
        for a in 0..q as u16 {
            for b in 0..q as u16 {
                add_table[a as usize * q as usize + b as usize] = spec.add(a, b);
                sub_table[a as usize * q as usize + b as usize] = spec.sub(a, b);
            }
        }
        (digits, add_table, sub_table)
    };

    let mut g = DenseGraph {
        n,
        q,
        nverts,
        places,
        rank_half,
        r2_list,
        digits,
        add_table,
        sub_table,
        neighbor_map: None,
    };
    if q != 2 && nverts.saturating_mul(g.degree()) <= NEIGHBOR_TABLE_LIMIT {
        let deg = g.degree();
        let mut map = vec![0u32; nverts * deg];
        for v in 0..nverts as u32 {
            for (j, &r) in g.r2_list.iter().enumerate() {
                map[v as usize * deg + j] = g.add_enc(v, r);
            }
        }
        g.neighbor_map = Some(map);
    }
    assert_eq!(
        BigUint::from(g.degree()),
        crate::altforms::count_rank(n, q, 2),
        "graph degree vs rank-2 count"
    );
    Ok(g)
}

/// Result of the geodesic-versus-rank check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicCheck {
    pub passed: bool,
    /// First offending vertex as (vertex, graph distance, rank/2).
    pub counterexample: Option<(u32, u8, u8)>,
    /// Vertices per graph distance from zero.
    pub histogram: Vec<u64>,
}

/// BFS from the zero matrix must reproduce rank/2 at every vertex.
pub fn verify_geodesic_rank(g: &DenseGraph) -> GeodesicCheck {
    let dist = g.bfs_from(0);
    let mut histogram = Vec::new();
    let mut counterexample = None;
    for (v, &d) in dist.iter().enumerate() {
        if d != g.rank_half[v] {
            counterexample = Some((v as u32, d, g.rank_half[v]));
            break;
        }
        if histogram.len() <= d as usize {
            histogram.resize(d as usize + 1, 0);
        }
        histogram[d as usize] += 1;
    }
    GeodesicCheck {
        passed: counterexample.is_none(),
        counterexample,
        histogram,
    }
}

/// Result of the distance-regularity sweep, with the recovered arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrCheck {
    pub passed: bool,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub a: Vec<u64>,
    pub detail: Option<String>,
}

/// Sweeps every base vertex with a fresh BFS and counts, for every other
/// vertex, its neighbors one step closer, level, and one step farther.
/// The counts must be constants of the distance alone, and those constants
/// must match the closed-form intersection array.
pub fn verify_distance_regularity(g: &DenseGraph) -> Result<DrCheck> {
    let nv = g.num_vertices();
    let diam = g.bfs_from(0).iter().copied().max().unwrap() as usize;
    let width = diam + 1;

    // Per-base tallies of (distance, kind) -> observed counter values; kinds
    // are closer/level/farther.  A distance-regular graph allows exactly one
    // observed value per slot.
    let merged: std::result::Result<Vec<Option<u64>>, String> = (0..nv as u32)
        .into_par_iter()
        .map(|base| {
            let dist = g.bfs_from(base);
            let mut slots: Vec<Option<u64>> = vec![None; width * 3];
            for v in 0..nv as u32 {
                let dv = dist[v as usize];
                if dv == UNREACHED {
                    return Err(format!("vertex {v} unreachable from {base}"));
                }
                let mut closer = 0u64;
                let mut level = 0u64;
                let mut farther = 0u64;
                let mut jump = false;
                g.for_neighbors(v, |w| match dist[w as usize] as i16 - dv as i16 {
                    -1 => closer += 1,
                    0 => level += 1,
                    1 => farther += 1,
                    _ => jump = true,
                });
                if jump {
                    return Err(format!("BFS levels jump by more than one at base {base}"));
                }
                for (kind, count) in [(0, closer), (1, level), (2, farther)] {
                    let slot = &mut slots[dv as usize * 3 + kind];
                    match slot {
                        None => *slot = Some(count),
                        Some(seen) if *seen == count => {}
                        Some(seen) => {
                            return Err(format!(
                                "distance {dv} sees both {seen} and {count} neighbors of kind {kind} from base {base}"
                            ))
                        }
                    }
                }
            }
            Ok(slots)
        })
        .try_reduce(
            || vec![None; width * 3],
            |mut acc, slots| {
                for (a, s) in acc.iter_mut().zip(slots) {
                    match (&a, s) {
                        (_, None) => {}
                        (None, some) => *a = some,
                        (Some(x), Some(y)) if *x == y => {}
                        (Some(x), Some(y)) => {
                            return Err(format!("bases disagree: {x} vs {y}"))
                        }
                    }
                }
                Ok(acc)
            },
        );

    let slots = match merged {
        Ok(s) => s,
        Err(detail) => {
            return Ok(DrCheck {
                passed: false,
                b: Vec::new(),
                c: Vec::new(),
                a: Vec::new(),
                detail: Some(detail),
            })
        }
    };
    let take = |i: usize, kind: usize| slots[i * 3 + kind].expect("every level observed");
    let c: Vec<u64> = (0..width).map(|i| take(i, 0)).collect();
    let a: Vec<u64> = (0..width).map(|i| take(i, 1)).collect();
    let b: Vec<u64> = (0..width).map(|i| take(i, 2)).collect();

    let expected = spectra::intersection_array(g.n, g.q)?;
    let matches = |got: &[u64], want: &[BigUint]| {
        got.len() == want.len()
            && got
                .iter()
                .zip(want)
                .all(|(g, w)| BigUint::from(*g) == *w)
    };
    let ok = matches(&b, &expected.b) && matches(&c, &expected.c) && matches(&a, &expected.a);
    Ok(DrCheck {
        passed: ok,
        b,
        c,
        a,
        detail: if ok {
            None
        } else {
            Some("recovered array differs from the closed form".to_string())
        },
    })
}

/// Verdict of one spectrum sub-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Verified,
    Failed,
    Skipped(&'static str),
}

/// Result of the spectrum verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumCheck {
    pub passed: bool,
    pub annihilation: CheckStatus,
    pub traces: CheckStatus,
}

fn sparse_apply(g: &DenseGraph, v: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; v.len()];
    for (w, slot) in out.iter_mut().enumerate() {
        let mut acc = 0i128;
        g.for_neighbors(w as u32, |u| acc += v[u as usize]);
        *slot = acc;
    }
    out
}

/// Checks the claimed spectrum against the explicit graph: the product of
/// (A - theta I) over all claimed eigenvalues must annihilate the adjacency
/// matrix exactly, and tr(A^s) must equal sum mult theta^s for s up to
/// twice the diameter.  Both checks are quadratic in the vertex count and
/// skip with a note past [`SPECTRUM_LIMIT`].
pub fn verify_spectrum(g: &DenseGraph, st: &SpectrumTable) -> Result<SpectrumCheck> {
    if st.n != g.n || st.q != g.q {
        return Err(Error::InvalidParameter(
            "spectrum table describes a different graph".to_string(),
        ));
    }
    if !st.is_complete() {
        return Err(Error::InvalidParameter(
            "spectrum table lacks multiplicities".to_string(),
        ));
    }
    let nv = g.num_vertices();
    if nv > SPECTRUM_LIMIT {
        let skipped = CheckStatus::Skipped("vertex count above the quadratic-check limit");
        return Ok(SpectrumCheck {
            passed: true,
            annihilation: skipped.clone(),
            traces: skipped,
        });
    }
    let theta: Vec<i128> = st
        .theta
        .iter()
        .map(|t| i128::try_from(t.clone()).expect("small graph eigenvalues fit"))
        .collect();

    let annihilated = (0..nv as u32)
        .into_par_iter()
        .all(|col| {
            let mut v = vec![0i128; nv];
            v[col as usize] = 1;
            for &t in &theta {
                let av = sparse_apply(g, &v);
                for (slot, av_w) in v.iter_mut().zip(av) {
                    *slot = av_w - t * *slot;
                }
            }
            v.iter().all(|&x| x == 0)
        });
    let annihilation = if annihilated {
        CheckStatus::Verified
    } else {
        CheckStatus::Failed
    };

    let smax = 2 * spectra::diameter(g.n);
    let traces_actual: Vec<BigInt> = (0..nv as u32)
        .into_par_iter()
        .fold(
            || vec![BigInt::zero(); smax + 1],
            |mut acc, start| {
                let mut v = vec![0i128; nv];
                v[start as usize] = 1;
                acc[0] += 1;
                for slot in acc.iter_mut().skip(1) {
                    v = sparse_apply(g, &v);
                    *slot += v[start as usize];
                }
                acc
            },
        )
        .reduce(
            || vec![BigInt::zero(); smax + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let mut traces_ok = true;
    for (s, actual) in traces_actual.iter().enumerate() {
        let expect: BigInt = st
            .theta
            .iter()
            .zip(&st.mult)
            .map(|(t, m)| t.pow(s as u32) * BigInt::from(m.clone()))
            .sum();
        if *actual != expect {
            traces_ok = false;
            break;
        }
    }
    let traces = if traces_ok {
        CheckStatus::Verified
    } else {
        CheckStatus::Failed
    };

    Ok(SpectrumCheck {
        passed: annihilation != CheckStatus::Failed && traces != CheckStatus::Failed,
        annihilation,
        traces,
    })
}

/// Fixed-width bitset for the clique search.
#[derive(Clone)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn new(len: usize) -> Bitset {
        Bitset {
            words: vec![0u64; len.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn first_set(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn and_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn and_not(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

/// Result of the exact independence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaResult {
    pub size: usize,
    pub witness: Vec<u32>,
    /// True when the search space was exhausted, so `size` is the exact
    /// k-independence number; false when the node budget ran out first and
    /// `size` is only a lower bound.
    pub proven: bool,
    pub nodes_used: u64,
}

struct CliqueSearch<'a> {
    adj: &'a [Bitset],
    best: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    /// Greedy coloring in bitset form; returns (vertex, color) with colors
    /// ascending, so a reverse scan visits high colors first.
    fn color_sort(&self, p: &Bitset) -> Vec<(u32, usize)> {
        let mut order = Vec::new();
        let mut rest = p.clone();
        let mut color = 0;
        while !rest.is_empty() {
            color += 1;
            let mut cand = rest.clone();
            while let Some(v) = cand.first_set() {
                cand.remove(v);
                rest.remove(v);
                cand.and_not(&self.adj[v]);
                order.push((v as u32, color));
            }
        }
        order
    }

    /// Returns false when the node budget is exhausted.
    fn expand(&mut self, r: &mut Vec<u32>, p: &mut Bitset) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let order = self.color_sort(p);
        for &(v, color) in order.iter().rev() {
            if r.len() + color <= self.best.len() {
                return true;
            }
            r.push(v);
            let mut p2 = p.clone();
            p2.and_with(&self.adj[v as usize]);
            if p2.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else if !self.expand(r, &mut p2) {
                r.pop();
                return false;
            }
            r.pop();
            p.remove(v as usize);
        }
        true
    }
}

/// Exact k-independence number by branch and bound: a maximum clique search
/// on the graph whose edges join vertices at distance greater than k, with
/// distances read off BFS arrays.  Returns the best set found, whether it
/// is proven maximum, and the node count; the witness is re-validated
/// against exact ranks before returning.
pub fn exact_alpha_k(g: &DenseGraph, k: usize, budget: u64) -> Result<AlphaResult> {
    let nv = g.num_vertices();
    if nv > ALPHA_LIMIT {
        return Err(Error::SizeGuard {
            what: "independence search",
            actual: BigUint::from(nv),
            limit: BigUint::from(ALPHA_LIMIT),
        });
    }
    if k == 0 {
        return Ok(AlphaResult {
            size: nv,
            witness: (0..nv as u32).collect(),
            proven: true,
            nodes_used: 0,
        });
    }
    let dist0 = g.bfs_from(0);
    assert!(
        dist0.iter().all(|&d| d != UNREACHED),
        "the graph is connected"
    );
    let diam = dist0.iter().copied().max().unwrap() as usize;
    if k >= diam {
        return Ok(AlphaResult {
            size: 1,
            witness: vec![0],
            proven: true,
            nodes_used: 0,
        });
    }

    let adj: Vec<Bitset> = (0..nv as u32)
        .into_par_iter()
        .map(|u| {
            let mut row = Bitset::new(nv);
            for v in 0..nv as u32 {
                if v != u && dist0[g.diff_enc(u, v) as usize] as usize > k {
                    row.insert(v as usize);
                }
            }
            row
        })
        .collect();

    let mut greedy: Vec<u32> = Vec::new();
    for v in 0..nv as u32 {
        if greedy.iter().all(|&u| adj[u as usize].contains(v as usize)) {
            greedy.push(v);
        }
    }

    let mut search = CliqueSearch {
        adj: &adj,
        best: greedy,
        nodes: 0,
        budget,
    };
    let mut r = Vec::new();
    let mut p = Bitset::new(nv);
    for v in 0..nv {
        p.insert(v);
    }
    let proven = search.expand(&mut r, &mut p);
    let witness = search.best;

    for (i, &u) in witness.iter().enumerate() {
        for &v in &witness[i + 1..] {
            let rank = 2 * g.rank_half[g.diff_enc(u, v) as usize] as usize;
            assert!(rank >= 2 * (k + 1), "witness pair at rank {rank} below 2(k+1)");
        }
    }
    Ok(AlphaResult {
        size: witness.len(),
        witness,
        proven,
        nodes_used: search.nodes,
    })
}

/// Closed walks of length s at a vertex, via s sparse multiplies from an
/// indicator vector.  Walk counts are the same at every vertex here; this
/// is spot-checked at ten extra vertices chosen by a seeded stride.
pub fn closed_walks(g: &DenseGraph, s: usize, seed: u64) -> Result<BigUint> {
    if s > 6 {
        return Err(Error::InvalidParameter(format!(
            "walk length capped at 6, got {s}"
        )));
    }
    let nv = g.num_vertices();
    let count_at = |start: u32| -> u128 {
        let mut v = vec![0u128; nv];
        v[start as usize] = 1;
        for _ in 0..s {
            let mut next = vec![0u128; nv];
            for (w, slot) in next.iter_mut().enumerate() {
                let mut acc = 0u128;
                g.for_neighbors(w as u32, |u| acc += v[u as usize]);
                *slot = acc;
            }
            v = next;
        }
        v[start as usize]
    };
    let at_zero = count_at(0);
    let stride = (nv / 10).max(1) as u64;
    for i in 0..10u64 {
        let probe = ((seed + i * stride) % nv as u64) as u32;
        assert_eq!(
            count_at(probe),
            at_zero,
            "closed walk counts must not depend on the vertex"
        );
    }
    Ok(BigUint::from(at_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;
    use crate::spectra::spectrum;
    use num_traits::One;

    #[test]
    fn builds_and_degrees() {
        let g = build_graph(2, 2).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.degree(), 1);
        let g = build_graph(4, 2).unwrap();
        assert_eq!(g.num_vertices(), 64);
        assert_eq!(g.degree(), 35);
        let g = build_graph(3, 3).unwrap();
        assert_eq!(g.num_vertices(), 27);
        assert_eq!(g.degree(), 26);
        assert!(matches!(
            build_graph(8, 2),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn edges_are_symmetric_and_loopless() {
        let g = build_graph(3, 3).unwrap();
        for u in 0..27u32 {
            assert!(!g.is_edge(u, u));
            for v in 0..27u32 {
                assert_eq!(g.is_edge(u, v), g.is_edge(v, u));
            }
        }
    }

    #[test]
    fn encoding_arithmetic_round_trips() {
        let g = build_graph(4, 3).unwrap();
        for (u, v) in [(0u32, 1u32), (5, 77), (700, 13), (728, 728), (250, 511)] {
            let sum = g.add_enc(u, v);
            assert_eq!(g.diff_enc(sum, v), u);
            assert_eq!(g.diff_enc(sum, u), v);
        }
        assert_eq!(g.add_enc(0, 42), 42);
        assert_eq!(g.diff_enc(42, 42), 0);
    }

    #[test]
    fn geodesic_matches_rank() {
        let check = verify_geodesic_rank(&build_graph(4, 2).unwrap());
        assert!(check.passed);
        assert_eq!(check.histogram, vec![1, 35, 28]);
        assert!(verify_geodesic_rank(&build_graph(5, 2).unwrap()).passed);
        assert!(verify_geodesic_rank(&build_graph(3, 3).unwrap()).passed);
    }

    #[test]
    fn distance_regularity_recovers_the_arrays() {
        let check = verify_distance_regularity(&build_graph(4, 2).unwrap()).unwrap();
        assert!(check.passed, "{:?}", check.detail);
        assert_eq!(check.b, vec![35, 16, 0]);
        assert_eq!(check.c, vec![0, 1, 20]);
        assert_eq!(check.a, vec![0, 18, 15]);
        let check = verify_distance_regularity(&build_graph(2, 2).unwrap()).unwrap();
        assert!(check.passed);
        assert_eq!(check.b, vec![1, 0]);
    }

    #[test]
    fn spectrum_checks_pass_on_true_tables() {
        for (n, q) in [(2usize, 2u64), (4, 2), (3, 3)] {
            let g = build_graph(n, q).unwrap();
            let (st, _) = spectrum(n, q).unwrap();
            let check = verify_spectrum(&g, &st).unwrap();
            assert!(check.passed, "n={n} q={q}");
            assert_eq!(check.annihilation, CheckStatus::Verified);
            assert_eq!(check.traces, CheckStatus::Verified);
        }
    }

    #[test]
    fn spectrum_checks_catch_doctored_tables() {
        let g = build_graph(4, 2).unwrap();
        let (st, _) = spectrum(4, 2).unwrap();

        let mut wrong_theta = st.clone();
        wrong_theta.theta[1] = BigInt::from(4);
        let check = verify_spectrum(&g, &wrong_theta).unwrap();
        assert_eq!(check.annihilation, CheckStatus::Failed);
        assert!(!check.passed);

        let mut wrong_mult = st.clone();
        wrong_mult.mult.swap(1, 2);
        let check = verify_spectrum(&g, &wrong_mult).unwrap();
        assert_eq!(check.traces, CheckStatus::Failed);
        assert!(!check.passed);
    }

    #[test]
    fn alpha_on_the_smallest_interesting_graph() {
        let g = build_graph(4, 2).unwrap();
        let r = exact_alpha_k(&g, 0, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.size, 64);
        assert!(r.proven);
        let r = exact_alpha_k(&g, 1, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.size, 8);
        assert!(r.proven);
        assert_eq!(r.witness.len(), 8);
        let r = exact_alpha_k(&g, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.size, 1);
        let r = exact_alpha_k(&g, 9, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.size, 1);
    }

    #[test]
    fn alpha_on_complete_graphs_is_one() {
        let g = build_graph(3, 2).unwrap();
        let r = exact_alpha_k(&g, 1, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.size, 1);
        assert!(r.proven);
    }

    #[test]
    fn alpha_budget_degrades_honestly() {
        let g = build_graph(4, 2).unwrap();
        let r = exact_alpha_k(&g, 1, 1).unwrap();
        assert!(!r.proven);
        assert!(r.size >= 1);
        // The witness is still a genuine independent set.
        for (i, &u) in r.witness.iter().enumerate() {
            for &v in &r.witness[i + 1..] {
                assert!(!g.is_edge(u, v));
            }
        }
    }

    #[test]
    fn alpha_stays_below_every_bound() {
        let g = build_graph(4, 2).unwrap();
        let alpha = exact_alpha_k(&g, 1, DEFAULT_NODE_BUDGET).unwrap();
        let report = bounds::full_report(2, 4, 2).unwrap();
        let alpha_big = BigUint::from(alpha.size);
        assert!(alpha_big <= report.best());
        for e in &report.entries {
            let value = match &e.value {
                bounds::BoundValue::Count(v) => v.clone(),
                bounds::BoundValue::Lp { floored, .. } => floored.clone(),
                bounds::BoundValue::Dimension { cardinality, .. } => cardinality.clone(),
                bounds::BoundValue::NotApplicable(_) => continue,
            };
            assert!(alpha_big <= value, "alpha exceeds {}", e.name);
        }
    }

    #[test]
    fn walk_counts_match_the_spectral_side() {
        let g = build_graph(4, 2).unwrap();
        assert_eq!(closed_walks(&g, 0, 0).unwrap(), BigUint::one());
        assert_eq!(closed_walks(&g, 1, 0).unwrap(), BigUint::zero());
        assert_eq!(closed_walks(&g, 2, 0).unwrap(), BigUint::from(35u32));
        assert_eq!(
            closed_walks(&g, 3, 0).unwrap(),
            spectra::delta_walks(4, 2).unwrap()
        );
        assert_eq!(
            closed_walks(&g, 3, 17).unwrap(),
            closed_walks(&g, 3, 0).unwrap()
        );
        let g = build_graph(4, 3).unwrap();
        assert_eq!(
            closed_walks(&g, 3, 0).unwrap(),
            spectra::delta_walks(4, 3).unwrap()
        );
        assert!(closed_walks(&g, 7, 0).is_err());
    }
}
