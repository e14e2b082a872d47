//! k-uniform hypergraphs on `v` labelled vertices stored as bitsets over the
//! `C(v, k)` edge slots.
//!
//! Edge slot `r` holds the k-subset of colex rank `r`:
//! `rank(a_0 < ... < a_{k-1}) = sum_j C(a_j, j + 1)`. Vertices are 0-based in
//! memory and 1-based in the JSON formats.

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Index of an edge slot (colex rank of its vertex set).
pub type EdgeId = usize;

const TABLE_N: usize = 256;
const TABLE_R: usize = 9;

fn pascal() -> &'static [[u64; TABLE_R]; TABLE_N] {
    static TABLE: OnceLock<Box<[[u64; TABLE_R]; TABLE_N]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; TABLE_R]; TABLE_N]);
        for n in 0..TABLE_N {
            t[n][0] = 1;
            for r in 1..TABLE_R {
                t[n][r] = if n == 0 {
                    0
                } else {
                    t[n - 1][r - 1].saturating_add(t[n - 1][r])
                };
            }
        }
        t
    })
}

/// Binomial coefficient `C(n, r)`; saturates at `u64::MAX`.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    if (n as usize) < TABLE_N && (r as usize) < TABLE_R {
        return pascal()[n as usize][r as usize];
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for j in 0..r {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Strictly increasing list of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::UnsortedVertices);
        }
        Ok(VertexSet(vertices))
    }

    /// Rejects unsorted input instead of sorting it.
    pub fn from_sorted(vertices: Vec<usize>) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedVertices);
        }
        Ok(VertexSet(vertices))
    }

    pub fn range(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn intersection_size(&self, other: &[usize]) -> usize {
        other.iter().filter(|x| self.contains(**x)).count()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    fn check_range(&self, v: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last >= v => Err(Error::VertexOutOfRange { vertex: last, v }),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl std::ops::Deref for VertexSet {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// Colex rank of a sorted k-subset; no range checks.
#[inline]
pub(crate) fn colex_rank(sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(j, &a)| binomial(a as u64, j as u64 + 1) as usize)
        .sum()
}

/// Colex rank of `set`, which must have exactly `k` elements.
pub fn rank_subset(set: &VertexSet, k: usize) -> Result<EdgeId> {
    if set.len() != k {
        return Err(Error::WrongArity {
            expected: k,
            got: set.len(),
        });
    }
    Ok(colex_rank(set))
}

/// Inverse of [`rank_subset`] for subsets of `{0, ..., v-1}`.
pub fn unrank_subset(id: EdgeId, v: usize, k: usize) -> Result<VertexSet> {
    let n = binomial(v as u64, k as u64) as usize;
    if id >= n {
        return Err(Error::EdgeOutOfRange { edge: id, n });
    }
    let mut out = vec![0; k];
    colex_unrank_into(id, v, &mut out);
    Ok(VertexSet(out))
}

/// Writes the colex-`id` subset of size `out.len()` into `out` (ascending).
pub(crate) fn colex_unrank_into(mut id: usize, v: usize, out: &mut [usize]) {
    let k = out.len();
    let mut hi = v;
    for j in (0..k).rev() {
        // largest a < hi with C(a, j+1) <= id
        let mut a = hi - 1;
        while binomial(a as u64, j as u64 + 1) as usize > id {
            a -= 1;
        }
        out[j] = a;
        id -= binomial(a as u64, j as u64 + 1) as usize;
        hi = a;
    }
}

/// Calls `f` on every `r`-subset of `items` in lexicographic order.
pub(crate) fn for_each_subset(items: &[usize], r: usize, mut f: impl FnMut(&[usize])) {
    let n = items.len();
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let mut j = r;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if idx[j] < n - r + j {
                break;
            }
            if j == 0 {
                return;
            }
        }
        idx[j] += 1;
        for t in j + 1..r {
            idx[t] = idx[t - 1] + 1;
        }
        for t in j..r {
            buf[t] = items[idx[t]];
        }
    }
}

/// A k-uniform hypergraph on vertices `0..v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    v: usize,
    k: usize,
    bits: BitString,
}

impl Hypergraph {
    pub fn empty(v: usize, k: usize) -> Result<Self> {
        Self::check_params(v, k)?;
        Ok(Hypergraph {
            v,
            k,
            bits: BitString::zeros(binomial(v as u64, k as u64) as usize),
        })
    }

    pub fn complete(v: usize, k: usize) -> Result<Self> {
        Self::check_params(v, k)?;
        Ok(Hypergraph {
            v,
            k,
            bits: BitString::ones(binomial(v as u64, k as u64) as usize),
        })
    }

    pub fn from_bits(v: usize, k: usize, bits: BitString) -> Result<Self> {
        Self::check_params(v, k)?;
        let n = binomial(v as u64, k as u64) as usize;
        if bits.len() != n {
            return Err(Error::BadLength {
                expected: n,
                got: bits.len(),
            });
        }
        Ok(Hypergraph { v, k, bits })
    }

    pub fn from_edges<I, E>(v: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<usize>>,
    {
        let mut g = Self::empty(v, k)?;
        for e in edges {
            let set = VertexSet::new(e.into())?;
            set.check_range(v)?;
            let id = rank_subset(&set, k)?;
            g.bits.set(id, true);
        }
        Ok(g)
    }

    /// Every edge inside `set` (which must have at least `k` vertices).
    pub fn clique_on(v: usize, k: usize, set: &VertexSet) -> Result<Self> {
        let mut g = Self::empty(v, k)?;
        g.add_clique(set)?;
        Ok(g)
    }

    /// Sets every k-subset of `set` as an edge.
    pub fn add_clique(&mut self, set: &VertexSet) -> Result<()> {
        set.check_range(self.v)?;
        let bits = &mut self.bits;
        for_each_subset(set, self.k, |e| bits.set(colex_rank(e), true));
        Ok(())
    }

    /// Each edge slot present independently with probability `density`.
    pub fn random<R: Rng + ?Sized>(v: usize, k: usize, density: f64, rng: &mut R) -> Result<Self> {
        let mut g = Self::empty(v, k)?;
        for i in 0..g.num_slots() {
            if rng.gen_bool(density) {
                g.bits.set(i, true);
            }
        }
        Ok(g)
    }

    fn check_params(v: usize, k: usize) -> Result<()> {
        if k == 0 || k > v {
            return Err(Error::ArityTooLarge { k, v });
        }
        Ok(())
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn into_bits(self) -> BitString {
        self.bits
    }

    /// `C(v, k)`, the number of input variables.
    pub fn num_slots(&self) -> usize {
        self.bits.len()
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn has_edge_id(&self, e: EdgeId) -> bool {
        self.bits.get(e)
    }

    /// Membership test for a sorted k-subset.
    pub fn has_edge(&self, sorted: &[usize]) -> bool {
        debug_assert_eq!(sorted.len(), self.k);
        self.bits.get(colex_rank(sorted))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.bits.ones_iter()
    }

    /// Present edges as sorted vertex lists, ascending by colex rank.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        let mut buf = vec![0; self.k];
        self.edge_ids()
            .map(|id| {
                colex_unrank_into(id, self.v, &mut buf);
                buf.clone()
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v];
        let mut buf = vec![0; self.k];
        for id in self.edge_ids() {
            colex_unrank_into(id, self.v, &mut buf);
            for &x in &buf {
                deg[x] += 1;
            }
        }
        deg
    }

    fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e >= self.num_slots() {
            return Err(Error::EdgeOutOfRange {
                edge: e,
                n: self.num_slots(),
            });
        }
        Ok(())
    }

    /// Copy with slot `e` toggled.
    pub fn flip_edge(&self, e: EdgeId) -> Result<Self> {
        self.check_edge(e)?;
        let mut g = self.clone();
        g.bits.flip(e);
        Ok(g)
    }

    /// Copy with every slot in `block` toggled once.
    pub fn flip_block(&self, block: &[EdgeId]) -> Result<Self> {
        let mut g = self.clone();
        for &e in block {
            self.check_edge(e)?;
        }
        let mut seen = block.to_vec();
        seen.sort_unstable();
        seen.dedup();
        for e in seen {
            g.bits.flip(e);
        }
        Ok(g)
    }

    /// True iff every k-subset of `set` is an edge.
    pub fn is_clique(&self, set: &VertexSet) -> Result<bool> {
        if set.len() < self.k {
            return Err(Error::TooFewVertices {
                k: self.k,
                got: set.len(),
            });
        }
        set.check_range(self.v)?;
        let mut all = true;
        for_each_subset(set, self.k, |e| all &= self.has_edge(e));
        Ok(all)
    }

    /// True iff every edge not contained in `set` meets it in fewer than `i`
    /// vertices.
    pub fn is_isolated(&self, set: &VertexSet, i: usize) -> Result<bool> {
        if i == 0 || i > self.k {
            return Err(Error::IOutOfRange { i, k: self.k });
        }
        set.check_range(self.v)?;
        Ok(self.isolation_violations(set, i).next().is_none())
    }

    /// Edges `E` with `i <= |E ∩ set| < k`, i.e. edges breaking isolation.
    pub(crate) fn isolation_violations<'a>(
        &'a self,
        set: &'a VertexSet,
        i: usize,
    ) -> impl Iterator<Item = EdgeId> + 'a {
        let mut buf = vec![0; self.k];
        self.edge_ids().filter(move |&id| {
            colex_unrank_into(id, self.v, &mut buf);
            let meet = set.intersection_size(&buf);
            meet >= i && meet < self.k
        })
    }

    /// Applies `perm` (vertex `x` goes to `perm[x]`) to every edge.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.v {
            return Err(Error::BadLength {
                expected: self.v,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.v];
        for &x in perm {
            if x >= self.v || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidSpec("not a permutation".into()));
            }
        }
        let mut g = Self::empty(self.v, self.k)?;
        let mut buf = vec![0; self.k];
        for id in self.edge_ids() {
            colex_unrank_into(id, self.v, &mut buf);
            for x in buf.iter_mut() {
                *x = perm[*x];
            }
            buf.sort_unstable();
            g.bits.set(colex_rank(&buf), true);
        }
        Ok(g)
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            v: self.v,
            k: self.k,
            edges: Some(
                self.edges()
                    .into_iter()
                    .map(|e| e.into_iter().map(|x| x + 1).collect())
                    .collect(),
            ),
            hex: None,
        }
    }

    pub fn to_compact_json(&self) -> HypergraphJson {
        HypergraphJson {
            v: self.v,
            k: self.k,
            edges: None,
            hex: Some(self.bits.to_hex()),
        }
    }
}

/// Number of k-subsets `E` of `{0..v}` with `i <= |E ∩ S| <= k - 1`, where
/// `|S| = s`.
pub fn boundary_count(v: usize, s: usize, i: usize, k: usize) -> u64 {
    if s > v {
        return 0;
    }
    (i..k)
        .map(|j| {
            binomial(s as u64, j as u64).saturating_mul(binomial((v - s) as u64, (k - j) as u64))
        })
        .fold(0u64, u64::saturating_add)
}

/// Uniform random permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Serialized hypergraph: either an explicit 1-based edge list or the
/// big-endian hex of the slot bitstring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub v: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hex: Option<String>,
}

impl TryFrom<&HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(j: &HypergraphJson) -> Result<Self> {
        match (&j.edges, &j.hex) {
            (Some(edges), None) => {
                let mut zero_based = Vec::with_capacity(edges.len());
                for e in edges {
                    let mut z = Vec::with_capacity(e.len());
                    for &x in e {
                        if x == 0 || x > j.v {
                            return Err(Error::VertexOutOfRange { vertex: x, v: j.v });
                        }
                        z.push(x - 1);
                    }
                    zero_based.push(z);
                }
                Hypergraph::from_edges(j.v, j.k, zero_based)
            }
            (None, Some(hex)) => {
                Hypergraph::check_params(j.v, j.k)?;
                let n = binomial(j.v as u64, j.k as u64) as usize;
                Hypergraph::from_bits(j.v, j.k, BitString::from_hex(n, hex)?)
            }
            _ => Err(Error::Parse(
                "hypergraph JSON needs exactly one of \"edges\" or \"hex\"".into(),
            )),
        }
    }
}

/// Smallest input of every orbit of `S_v` acting on the `C(v, k)` edge bits,
/// in increasing order. Inputs are read as integers (slot `r` = bit `r`).
///
/// Orbits come from union-find over the generators `(0 1)` and
/// `(0 1 ... v-1)`, which generate the whole symmetric group.
pub fn orbit_representatives(v: usize, k: usize) -> Result<Vec<u32>> {
    Hypergraph::check_params(v, k)?;
    let n = binomial(v as u64, k as u64) as usize;
    if n > crate::boolfn::MAX_TABLE_VARS {
        return Err(Error::TooLarge {
            n,
            budget: crate::boolfn::MAX_TABLE_VARS,
        });
    }
    let swap: Vec<usize> = (0..v).map(|x| if x < 2 { 1 - x } else { x }).collect();
    let cycle: Vec<usize> = (0..v).map(|x| (x + 1) % v).collect();
    let slot_maps: Vec<Vec<u32>> = [swap, cycle]
        .iter()
        .map(|perm| {
            let mut buf = vec![0; k];
            (0..n)
                .map(|r| {
                    colex_unrank_into(r, v, &mut buf);
                    for x in buf.iter_mut() {
                        *x = perm[*x];
                    }
                    buf.sort_unstable();
                    colex_rank(&buf) as u32
                })
                .collect()
        })
        .collect();
    let size = 1usize << n;
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    for x in 0..size as u32 {
        for map in &slot_maps {
            let mut y = 0u32;
            let mut rest = x;
            while rest != 0 {
                y |= 1 << map[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a < b {
                parent[b as usize] = a;
            } else if b < a {
                parent[a as usize] = b;
            }
        }
    }
    Ok((0..size as u32)
        .filter(|&x| find(&mut parent, x) == x)
        .collect())
}
