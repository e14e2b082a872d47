//! Explicit inputs realizing the lower bounds: edge-disjoint triangle and
//! `K_{k+1}^{(k)}` packings, near-clique placements driven by low-intersection
//! set families, and single isolated cliques.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::family::{generate_family, trim_sets, SetFamily};
use crate::field::{make_field, prime_power_decompose, prime_power_in_range};
use crate::hypergraph::{
    binomial, colex_rank, for_each_subset, Hypergraph, HypergraphJson, VertexSet,
};
use crate::property::CliqueSpec;

/// Vertex sets of size `k + 1` whose complete k-uniform hypergraphs are
/// pairwise edge-disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub v: usize,
    pub k: usize,
    pub members: Vec<VertexSet>,
}

impl Packing {
    /// First pair of members sharing a k-subset, if any.
    pub fn first_conflict(&self) -> Option<(usize, usize)> {
        for (a, x) in self.members.iter().enumerate() {
            for (b, y) in self.members.iter().enumerate().skip(a + 1) {
                if x.intersection_size(y) >= self.k {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Edge slots of every member, each list in increasing order.
    pub fn edge_blocks(&self) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|m| {
                let mut ids = Vec::new();
                for_each_subset(m, self.k, |e| ids.push(colex_rank(e)));
                ids.sort_unstable();
                ids
            })
            .collect()
    }

    /// Greedily keeps members sharing no vertex with an earlier kept one.
    pub fn vertex_disjoint(&self) -> Vec<VertexSet> {
        let mut used = vec![false; self.v];
        self.members
            .iter()
            .filter(|m| {
                if m.iter().any(|&x| used[x]) {
                    return false;
                }
                for &x in m.iter() {
                    used[x] = true;
                }
                true
            })
            .cloned()
            .collect()
    }
}

/// Bose Steiner triple system on the largest `v' <= v` with `v' ≡ 3 (mod 6)`;
/// vertices `v'..v` stay unused.
pub fn triangle_packing(v: usize) -> Result<Packing> {
    if v < 3 {
        return Err(Error::TooSmall { min: 3, got: v });
    }
    let vp = v - (v - 3) % 6;
    let m = vp / 3; // 2n + 1
    let half = m.div_ceil(2); // n + 1, the inverse of 2 mod m
    let label = |x: usize, j: usize| x + j * m;
    let mut members = Vec::with_capacity(vp * (vp - 1) / 6);
    for x in 0..m {
        members.push(VertexSet::new(vec![label(x, 0), label(x, 1), label(x, 2)])?);
    }
    for x in 0..m {
        for y in x + 1..m {
            let z = (x + y) * half % m;
            for j in 0..3 {
                members.push(VertexSet::new(vec![
                    label(x, j),
                    label(y, j),
                    label(z, (j + 1) % 3),
                ])?);
            }
        }
    }
    members.sort();
    Ok(Packing { v, k: 2, members })
}

/// Greedy maximal packing: `(k+1)`-subsets in lexicographic order, keeping each
/// one that shares no k-subset with a kept one.
pub fn clique_packing(v: usize, k: usize) -> Result<Packing> {
    if k == 0 || v < k + 1 {
        return Err(Error::TooSmall { min: k + 1, got: v });
    }
    let mut used = BitString::zeros(binomial(v as u64, k as u64) as usize);
    let mut members = Vec::new();
    let all: Vec<usize> = (0..v).collect();
    let mut ids = Vec::with_capacity(k + 1);
    for_each_subset(&all, k + 1, |c| {
        ids.clear();
        for_each_subset(c, k, |e| ids.push(colex_rank(e)));
        if ids.iter().all(|&e| !used.get(e)) {
            for &e in &ids {
                used.set(e, true);
            }
            members.push(VertexSet::from_sorted(c.to_vec()).unwrap());
        }
    });
    Ok(Packing { v, k, members })
}

/// Lower bound `C(v, k+1) / ((k+1)(v-k-1) + 1)` met by any maximal packing.
pub fn clique_packing_bound(v: usize, k: usize) -> f64 {
    binomial(v as u64, k as u64 + 1) as f64 / ((k + 1) as f64 * (v - k - 1) as f64 + 1.0)
}

/// A near-clique placement: f(G) = 0 and every placed set is one edge short of
/// an isolated clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S0Witness {
    pub graph: Hypergraph,
    /// The removed edge of each placed set.
    pub removed: Vec<usize>,
    pub expected_tuples: usize,
}

/// Places a clique on every set, minus its lexicographically largest edge.
/// Points are mapped to vertices `0, 1, ...` in increasing order.
pub fn build_s0_witness(sets: &[Vec<u64>], spec: &CliqueSpec) -> Result<S0Witness> {
    let CliqueSpec { v, k, i, h } = *spec;
    for (index, s) in sets.iter().enumerate() {
        let mut d = s.clone();
        d.sort_unstable();
        d.dedup();
        if d.len() != h || s.len() != h {
            return Err(Error::WrongSetSize {
                index,
                expected: h,
                got: d.len(),
            });
        }
    }
    for (a, x) in sets.iter().enumerate() {
        for (b, y) in sets.iter().enumerate().skip(a + 1) {
            let shared = x.iter().filter(|e| y.contains(e)).count();
            if shared >= i {
                return Err(Error::IntersectionTooLarge {
                    first: a,
                    second: b,
                    shared,
                    bound: i,
                });
            }
        }
    }
    let mut points: Vec<u64> = sets.iter().flatten().copied().collect();
    points.sort_unstable();
    points.dedup();
    if points.len() > v {
        return Err(Error::SetOutOfRange {
            needed: points.len(),
            v,
        });
    }
    let mut graph = Hypergraph::empty(v, k)?;
    let mut removed = Vec::with_capacity(sets.len());
    for s in sets {
        let vs = VertexSet::new(s.iter().map(|e| points.binary_search(e).unwrap()).collect())?;
        graph.add_clique(&vs)?;
        let mut last = Vec::new();
        for_each_subset(&vs, k, |e| last = e.to_vec());
        removed.push(colex_rank(&last));
    }
    let bits_to_clear = removed.clone();
    let mut bits = graph.into_bits();
    for e in bits_to_clear {
        bits.set(e, false);
    }
    Ok(S0Witness {
        graph: Hypergraph::from_bits(v, k, bits)?,
        expected_tuples: removed.len(),
        removed,
    })
}

/// A single clique on `{0, ..., h-1}` and nothing else.
pub fn build_s1_witness(v: usize, k: usize, h: usize) -> Result<Hypergraph> {
    if h > v {
        return Err(Error::HTooLarge { h, v });
    }
    Hypergraph::clique_on(v, k, &VertexSet::range(h))
}

/// Complete graph on `{0, ..., v-2}` with vertex `v-1` isolated.
pub fn build_isolated_vertex_witness(v: usize) -> Result<Hypergraph> {
    if v < 4 {
        return Err(Error::TooSmall { min: 4, got: v });
    }
    Hypergraph::clique_on(v, 2, &VertexSet::range(v - 1))
}

/// Near-clique construction whose `s0` grows like `v^(k/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NearCliqueConstruction {
    pub spec: CliqueSpec,
    /// Trimmed to `k + 1` points per set.
    pub family: SetFamily,
    pub witness: S0Witness,
}

/// Largest prime power strictly between `lo` and `hi`.
fn largest_prime_power_below(lo: f64, hi: f64) -> Option<u64> {
    let top = hi.ceil() as u64;
    (1..top)
        .rev()
        .take_while(|&q| q as f64 > lo)
        .find(|&q| (q as f64) < hi && prime_power_decompose(q).is_some())
}

/// Builds the near-clique witness for `k`-uniform hypergraphs on `v` vertices.
///
/// Even `k`: `i = k/2`, `q` the smallest prime power in `(k+1, 2(k+1))`,
/// `d = k/2`, `ℓ = floor(log_q v - 1)`. Odd `k`: `i = (k+1)/2`,
/// `q` the largest prime power in `(v^t / 2, v^t)` with `t = 1/(k+1)`,
/// `d = (k+1)/2`, `ℓ = k`. Sets are trimmed to `h = k + 1` points.
pub fn near_clique_construction(v: usize, k: usize) -> Result<NearCliqueConstruction> {
    if k < 2 {
        return Err(Error::ConstructionUnavailable(format!(
            "k = {k} is below 2"
        )));
    }
    let (i, q, d, ell) = if k.is_multiple_of(2) {
        let (p, m) =
            prime_power_in_range(k as u64 + 1, 2 * (k as u64 + 1)).expect("Bertrand's postulate");
        let q = p.pow(m);
        let mut ell = 0u32;
        while (q as u128).pow(ell + 2) <= v as u128 {
            ell += 1;
        }
        (k / 2, q, k as u32 / 2, ell)
    } else {
        let vt = (v as f64).powf(1.0 / (k + 1) as f64);
        let q = largest_prime_power_below(vt / 2.0, vt).ok_or_else(|| {
            Error::ConstructionUnavailable(format!(
                "no prime power in ({:.3}, {:.3}) for v = {v}",
                vt / 2.0,
                vt
            ))
        })?;
        (k.div_ceil(2), q, (k as u32).div_ceil(2), k as u32)
    };
    if ell == 0 {
        return Err(Error::ConstructionUnavailable(format!(
            "v = {v} is below q^2 = {} so no coordinate fits",
            q * q
        )));
    }
    if (d as u64) > q || q < k as u64 + 1 {
        return Err(Error::ConstructionUnavailable(format!(
            "q = {q} is too small for d = {d} and sets of size k + 1 = {}",
            k + 1
        )));
    }
    let (p, m) = prime_power_decompose(q).unwrap();
    let field = make_field(p, m)?;
    let family = trim_sets(&generate_family(&field, d, ell, None)?, k + 1)?;
    let spec = CliqueSpec::new(v, k, i, k + 1)?;
    let witness = build_s0_witness(&family.sets, &spec)?;
    Ok(NearCliqueConstruction {
        spec,
        family,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessMetadata {
    pub construction: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_tuples: Option<usize>,
}

/// Hypergraph JSON plus a `metadata` block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(flatten)]
    pub graph: HypergraphJson,
    pub metadata: WitnessMetadata,
}

impl WitnessJson {
    pub fn new(
        graph: &Hypergraph,
        construction: &str,
        parameters: impl IntoIterator<Item = (&'static str, serde_json::Value)>,
        expected_tuples: Option<usize>,
    ) -> Self {
        WitnessJson {
            graph: graph.to_json(),
            metadata: WitnessMetadata {
                construction: construction.to_string(),
                parameters: parameters
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect(),
                expected_tuples,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_triangle_packings() {
        assert_eq!(
            triangle_packing(3).unwrap().members,
            vec![VertexSet::range(3)]
        );
        assert_eq!(triangle_packing(8).unwrap().members.len(), 1);
        let p = triangle_packing(9).unwrap();
        assert_eq!(p.members.len(), 12);
        assert_eq!(p.first_conflict(), None);
        assert_eq!(triangle_packing(2), Err(Error::TooSmall { min: 3, got: 2 }));
    }

    #[test]
    fn sts_covers_every_pair_once() {
        for v in [9, 15, 21, 27] {
            let p = triangle_packing(v).unwrap();
            let blocks = p.edge_blocks();
            let mut all: Vec<usize> = blocks.concat();
            all.sort_unstable();
            assert_eq!(all, (0..v * (v - 1) / 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn greedy_clique_packing() {
        assert_eq!(clique_packing(4, 3).unwrap().members.len(), 1);
        let k6 = clique_packing(6, 2).unwrap();
        assert_eq!(k6.members.len(), 4);
        let p = clique_packing(8, 3).unwrap();
        assert!(p.members.len() >= 5);
        assert_eq!(p.first_conflict(), None);
        assert_eq!(
            clique_packing(3, 3),
            Err(Error::TooSmall { min: 4, got: 3 })
        );
    }

    #[test]
    fn s0_single_path() {
        let spec = CliqueSpec::new(3, 2, 1, 3).unwrap();
        let w = build_s0_witness(&[vec![10, 20, 30]], &spec).unwrap();
        // triangle minus its lex-largest edge {1, 2}
        assert_eq!(w.graph.edges(), vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(w.expected_tuples, 1);
    }

    #[test]
    fn s0_errors() {
        let spec = CliqueSpec::new(5, 2, 1, 3).unwrap();
        assert!(matches!(
            build_s0_witness(&[vec![1, 2]], &spec),
            Err(Error::WrongSetSize { index: 0, .. })
        ));
        assert!(matches!(
            build_s0_witness(&[vec![1, 2, 3], vec![3, 4, 5]], &spec),
            Err(Error::IntersectionTooLarge {
                first: 0,
                second: 1,
                ..
            })
        ));
        assert_eq!(
            build_s0_witness(&[vec![1, 2, 3], vec![4, 5, 6]], &spec),
            Err(Error::SetOutOfRange { needed: 6, v: 5 })
        );
    }

    #[test]
    fn simple_witnesses() {
        assert_eq!(build_s1_witness(5, 2, 3).unwrap().edge_count(), 3);
        assert_eq!(
            build_s1_witness(3, 2, 4),
            Err(Error::HTooLarge { h: 4, v: 3 })
        );
        assert_eq!(build_isolated_vertex_witness(5).unwrap().edge_count(), 6);
        assert_eq!(
            build_isolated_vertex_witness(3),
            Err(Error::TooSmall { min: 4, got: 3 })
        );
    }

    #[test]
    fn near_clique_parameters() {
        let c = near_clique_construction(16, 2).unwrap();
        assert_eq!((c.family.q, c.family.d, c.family.ell), (4, 1, 1));
        assert_eq!(c.witness.expected_tuples, 4);
        assert!(matches!(
            near_clique_construction(15, 2),
            Err(Error::ConstructionUnavailable(_))
        ));
        assert!(matches!(
            near_clique_construction(20, 3),
            Err(Error::ConstructionUnavailable(_))
        ));
    }
}
