//! Sensitivity and block sensitivity.
//!
//! Everything here is exact. Single-input sensitivity works at any input
//! length; exhaustive sweeps, minimal-block enumeration and exact block
//! sensitivity materialize a truth table and are limited to 24 input bits.
//!
//! Exact `bs(f, x)` packs inclusion-minimal sensitive blocks: every sensitive
//! block contains a minimal one and shrinking blocks keeps them disjoint, so
//! the maximum packing of minimal blocks equals `bs(f, x)`.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits::BitString;
use crate::boolfn::{check_len, BooleanFunction, TruthTable, MAX_TABLE_VARS};
use crate::error::{Error, Result};
use crate::hypergraph::{
    binomial, boundary_count, colex_rank, colex_unrank_into, for_each_subset,
    orbit_representatives, EdgeId, Hypergraph, HypergraphJson, VertexSet,
};
use crate::packing::max_disjoint_packing;
use crate::property::{CliqueSpec, PropertySpec};

/// Default bound on the number of input bits for exhaustive computations.
pub const DEFAULT_EXHAUSTIVE_BUDGET: usize = 24;

/// Hex SHA-256 of the textual form of `x`.
pub fn input_digest(x: &BitString) -> String {
    let digest = Sha256::digest(x.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Which of `s0` / `s1` an input contributes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    S0,
    S1,
}

impl Polarity {
    fn of(value: bool) -> Self {
        if value {
            Polarity::S1
        } else {
            Polarity::S0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub digest: String,
    pub f_value: bool,
    pub sensitive_bits: Vec<usize>,
    pub s_at_x: usize,
    pub polarity: Polarity,
}

/// Evaluates `f` at `x` and at every single-bit flip of `x`.
pub fn sensitivity_at(f: &impl BooleanFunction, x: &BitString) -> Result<SensitivityReport> {
    check_len(f, x)?;
    let fx = f.value(x);
    let mut y = x.clone();
    let mut sensitive_bits = Vec::new();
    for p in 0..x.len() {
        y.flip(p);
        if f.value(&y) != fx {
            sensitive_bits.push(p);
        }
        y.flip(p);
    }
    Ok(SensitivityReport {
        digest: input_digest(x),
        f_value: fx,
        s_at_x: sensitive_bits.len(),
        sensitive_bits,
        polarity: Polarity::of(fx),
    })
}

/// Result of an exhaustive sensitivity sweep. Ties go to the smallest input
/// read as an integer (position `i` = bit `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalSensitivity {
    pub s: usize,
    pub argmax: BitString,
    /// Max over inputs with `f(x) = 0`; `None` when `f` is constant 1.
    pub s0: Option<(usize, BitString)>,
    /// Max over inputs with `f(x) = 1`; `None` when `f` is constant 0.
    pub s1: Option<(usize, BitString)>,
}

fn check_budget(n: usize, budget: usize) -> Result<()> {
    let budget = budget.min(MAX_TABLE_VARS);
    if n > budget {
        return Err(Error::TooLarge { n, budget });
    }
    Ok(())
}

fn check_deadline(deadline: Option<Instant>, counter: usize) -> Result<()> {
    if counter.is_multiple_of(4096) {
        if let Some(d) = deadline {
            if Instant::now() > d {
                return Err(Error::BudgetExceeded);
            }
        }
    }
    Ok(())
}

/// `s(f)` by sweeping all `2^n` inputs; requires `n <= budget`.
pub fn sensitivity_global(f: &impl BooleanFunction, budget: usize) -> Result<GlobalSensitivity> {
    sensitivity_global_until(f, budget, None)
}

/// [`sensitivity_global`] that gives up with `BudgetExceeded` after `deadline`.
pub fn sensitivity_global_until(
    f: &impl BooleanFunction,
    budget: usize,
    deadline: Option<Instant>,
) -> Result<GlobalSensitivity> {
    let n = f.num_vars();
    check_budget(n, budget)?;
    let table = TruthTable::tabulate(f)?;
    let mut best: [Option<(usize, u32)>; 2] = [None, None];
    for x in 0..table.num_inputs() as u32 {
        check_deadline(deadline, x as usize)?;
        let fx = table.get(x);
        let s = (0..n).filter(|&i| table.get(x ^ 1 << i) != fx).count();
        let slot = &mut best[fx as usize];
        if slot.is_none_or(|(b, _)| s > b) {
            *slot = Some((s, x));
        }
    }
    let to_bits = |o: Option<(usize, u32)>| o.map(|(s, x)| (s, BitString::from_u64(n, x as u64)));
    let (s0, s1) = (to_bits(best[0]), to_bits(best[1]));
    let (s, argmax) = match (&s0, &s1) {
        (Some(a), Some(b)) if b.0 > a.0 || (b.0 == a.0 && b.1.to_u64() < a.1.to_u64()) => b.clone(),
        (Some(a), _) => a.clone(),
        (None, Some(b)) => b.clone(),
        (None, None) => unreachable!("a function has at least one input"),
    };
    Ok(GlobalSensitivity { s, argmax, s0, s1 })
}

/// Inclusion-minimal sensitive blocks at input `x` of a tabulated function,
/// as masks in increasing numeric order.
///
/// `reach[B]` records whether some subset of `B` is sensitive; `B` is minimal
/// iff it is sensitive and no `B \ {i}` reaches one.
fn minimal_block_masks(table: &TruthTable, x: u32) -> Vec<u32> {
    let n = table.num_vars();
    let fx = table.get(x);
    let size = 1usize << n;
    let mut reach = vec![0u64; size.div_ceil(64)];
    let get = |r: &[u64], b: usize| r[b / 64] >> (b % 64) & 1 == 1;
    let mut out = Vec::new();
    for b in 1..size {
        let mut sub = false;
        let mut rest = b;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            if get(&reach, b ^ low) {
                sub = true;
                break;
            }
            rest ^= low;
        }
        let sensitive = table.get(x ^ b as u32) != fx;
        if sub || sensitive {
            reach[b / 64] |= 1 << (b % 64);
        }
        if sensitive && !sub {
            out.push(b as u32);
        }
    }
    out
}

fn mask_positions(m: u32) -> Vec<usize> {
    (0..32).filter(|i| m >> i & 1 == 1).collect()
}

fn sort_lex(blocks: &mut [Vec<usize>]) {
    blocks.sort();
}

fn input_index(f: &impl BooleanFunction, x: &BitString) -> Result<u32> {
    check_len(f, x)?;
    check_budget(f.num_vars(), DEFAULT_EXHAUSTIVE_BUDGET)?;
    Ok(x.to_u64().unwrap_or(0) as u32)
}

/// All inclusion-minimal sensitive blocks of size at most `max_block_size`
/// at `x`, lexicographically ordered.
pub fn minimal_sensitive_blocks(
    f: &impl BooleanFunction,
    x: &BitString,
    max_block_size: usize,
) -> Result<Vec<Vec<usize>>> {
    let xi = input_index(f, x)?;
    let table = TruthTable::tabulate(f)?;
    let mut blocks: Vec<Vec<usize>> = minimal_block_masks(&table, xi)
        .into_iter()
        .filter(|m| m.count_ones() as usize <= max_block_size)
        .map(mask_positions)
        .collect();
    sort_lex(&mut blocks);
    Ok(blocks)
}

/// Disjoint sensitive blocks at one input, each re-verified against `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCertificate {
    pub digest: String,
    pub blocks: Vec<Vec<usize>>,
    pub count: usize,
}

/// Function input as serialized next to a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputJson {
    Graph(HypergraphJson),
    Bits(String),
}

/// Serialized certificate; blocks hold edge ids (input positions).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub input: InputJson,
    pub blocks: Vec<Vec<usize>>,
    pub count: usize,
    pub verified: bool,
}

impl CertificateJson {
    /// Graph inputs are written as hypergraph JSON when `shape` is given.
    pub fn new(
        cert: &BlockCertificate,
        x: &BitString,
        shape: Option<(usize, usize)>,
    ) -> Result<Self> {
        let input = match shape {
            Some((v, k)) => InputJson::Graph(Hypergraph::from_bits(v, k, x.clone())?.to_json()),
            None => InputJson::Bits(x.to_string()),
        };
        Ok(CertificateJson {
            input,
            blocks: cert.blocks.clone(),
            count: cert.count,
            verified: true,
        })
    }
}

/// Exact block sensitivity at one input with its optimal certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSensitivity {
    pub value: usize,
    pub certificate: BlockCertificate,
    /// False when minimal blocks above the size cap were dropped, in which
    /// case `value` is only a lower bound.
    pub exact: bool,
}

fn packing_over(table: &TruthTable, xi: u32, max_block_size: usize) -> (Vec<Vec<usize>>, bool) {
    let minimal = minimal_block_masks(table, xi);
    let exact = minimal
        .iter()
        .all(|m| m.count_ones() as usize <= max_block_size);
    let kept: Vec<u64> = minimal
        .into_iter()
        .filter(|m| m.count_ones() as usize <= max_block_size)
        .map(u64::from)
        .collect();
    let packing = max_disjoint_packing(&kept);
    let blocks = packing
        .chosen
        .iter()
        .map(|&c| mask_positions(kept[c] as u32))
        .collect();
    (blocks, exact)
}

/// `bs(f, x)` over minimal blocks no larger than `max_block_size`, reporting
/// whether the cap could have hidden a better packing.
pub fn block_sensitivity_capped(
    f: &impl BooleanFunction,
    x: &BitString,
    max_block_size: usize,
) -> Result<BlockSensitivity> {
    let xi = input_index(f, x)?;
    let table = TruthTable::tabulate(f)?;
    let (blocks, exact) = packing_over(&table, xi, max_block_size);
    let certificate = certify_blocks(f, x, &blocks)?;
    Ok(BlockSensitivity {
        value: certificate.count,
        certificate,
        exact,
    })
}

/// Exact `bs(f, x)`; fails with `BlockSizeBoundHit` when minimal sensitive
/// blocks larger than `max_block_size` exist.
pub fn block_sensitivity_exact(
    f: &impl BooleanFunction,
    x: &BitString,
    max_block_size: usize,
) -> Result<BlockSensitivity> {
    let r = block_sensitivity_capped(f, x, max_block_size)?;
    if !r.exact {
        return Err(Error::BlockSizeBoundHit {
            lower_bound: r.value,
            max_block_size,
        });
    }
    Ok(r)
}

/// Natural block-size cap: `C(h, k)` for clique properties, 2 for Rubinstein
/// variants and `v - 1` for the isolated-vertex property.
pub fn default_max_block_size(p: &PropertySpec) -> usize {
    match *p {
        PropertySpec::Rubinstein { .. } | PropertySpec::CyclicRubinstein { .. } => 2,
        PropertySpec::IsolatedVertex { v } => v - 1,
        _ => {
            let c = p.as_clique().unwrap();
            binomial(c.h as u64, c.k as u64) as usize
        }
    }
}

/// `bs(f)` by exhaustion. For hypergraph properties only one input per
/// relabelling orbit is examined. Ties go to the smallest input.
pub fn block_sensitivity_global(
    f: &impl BooleanFunction,
    budget: usize,
    deadline: Option<Instant>,
) -> Result<(usize, BitString)> {
    let n = f.num_vars();
    check_budget(n, budget)?;
    let table = TruthTable::tabulate(f)?;
    let inputs: Vec<u32> = match f.hypergraph_symmetry() {
        Some((v, k)) => orbit_representatives(v, k)?,
        None => (0..table.num_inputs() as u32).collect(),
    };
    let mut best: Option<(usize, u32)> = None;
    for (count, &x) in inputs.iter().enumerate() {
        check_deadline(deadline, count)?;
        let (blocks, _) = packing_over(&table, x, n);
        if best.is_none_or(|(b, _)| blocks.len() > b) {
            best = Some((blocks.len(), x));
        }
    }
    let (bs, x) = best.unwrap();
    Ok((bs, BitString::from_u64(n, x as u64)))
}

/// Verifies that `blocks` are pairwise disjoint and each flips `f` at `x`.
pub fn certify_blocks(
    f: &impl BooleanFunction,
    x: &BitString,
    blocks: &[Vec<usize>],
) -> Result<BlockCertificate> {
    check_len(f, x)?;
    let n = x.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (idx, block) in blocks.iter().enumerate() {
        for &p in block {
            if p >= n {
                return Err(Error::EdgeOutOfRange { edge: p, n });
            }
            match owner[p] {
                Some(first) => {
                    return Err(Error::OverlappingBlocks { first, second: idx });
                }
                None => owner[p] = Some(idx),
            }
        }
    }
    let fx = f.value(x);
    let mut y = x.clone();
    for (idx, block) in blocks.iter().enumerate() {
        for &p in block {
            y.flip(p);
        }
        let flipped = f.value(&y) != fx;
        for &p in block {
            y.flip(p);
        }
        if !flipped {
            return Err(Error::NonSensitiveBlock(idx));
        }
    }
    Ok(BlockCertificate {
        digest: input_digest(x),
        blocks: blocks.to_vec(),
        count: blocks.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipDirection {
    Add,
    Remove,
}

/// A vertex set one edge flip away from being an isolated clique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitiveTuple {
    pub vertices: VertexSet,
    pub edge: EdgeId,
    pub direction: FlipDirection,
}

/// Every `h`-set that becomes an isolated clique after flipping exactly one
/// edge, in lexicographic order. Requires `f(G) = 0`.
pub fn enumerate_sensitive_tuples(
    spec: &CliqueSpec,
    g: &Hypergraph,
) -> Result<Vec<SensitiveTuple>> {
    let prop = PropertySpec::IsolatedClique(*spec);
    if prop.evaluate_graph(g)?.value {
        return Err(Error::ValueIsOne);
    }
    let CliqueSpec { k, i, h, .. } = *spec;
    let inside = binomial(h as u64 - 1, k as u64 - 1) as usize;
    let deg = g.degrees();
    let candidates: Vec<usize> = (0..g.v())
        .filter(|&x| deg[x] + 1 >= inside && (i > 1 || deg[x] <= inside + 1))
        .collect();
    let edges: Vec<(EdgeId, Vec<usize>)> = g.edge_ids().zip(g.edges()).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(h);
    near_cliques(
        g,
        &candidates,
        0,
        &mut current,
        None,
        h,
        &mut |s, missing| {
            let mut violations = edges.iter().filter(|(_, e)| {
                let meet = e.iter().filter(|x| s.binary_search(x).is_ok()).count();
                meet >= i && meet < k
            });
            let first = violations.next();
            let more = violations.next().is_some();
            let tuple = match (missing, first, more) {
                (Some(edge), None, _) => Some((edge, FlipDirection::Add)),
                (None, Some(&(edge, _)), false) => Some((edge, FlipDirection::Remove)),
                _ => None,
            };
            if let Some((edge, direction)) = tuple {
                out.push(SensitiveTuple {
                    vertices: VertexSet::from_sorted(s.to_vec()).unwrap(),
                    edge,
                    direction,
                });
            }
        },
    );
    Ok(out)
}

/// Enumerates `h`-sets (increasing, from `candidates`) missing at most one
/// inside edge, reporting the missing edge if any.
fn near_cliques(
    g: &Hypergraph,
    candidates: &[usize],
    start: usize,
    current: &mut Vec<usize>,
    missing: Option<EdgeId>,
    h: usize,
    visit: &mut dyn FnMut(&[usize], Option<EdgeId>),
) {
    if current.len() == h {
        visit(current, missing);
        return;
    }
    let k = g.k();
    let mut buf = vec![0; k];
    for idx in start..candidates.len() {
        if candidates.len() - idx < h - current.len() {
            break;
        }
        let w = candidates[idx];
        let mut miss = missing;
        let mut too_many = false;
        if current.len() + 1 >= k {
            for_each_subset(current, k - 1, |sub| {
                if too_many {
                    return;
                }
                buf[..k - 1].copy_from_slice(sub);
                buf[k - 1] = w;
                let id = colex_rank(&buf);
                if !g.has_edge_id(id) {
                    if miss.is_some() {
                        too_many = true;
                    } else {
                        miss = Some(id);
                    }
                }
            });
        }
        if too_many {
            continue;
        }
        current.push(w);
        near_cliques(g, candidates, idx + 1, current, miss, h, visit);
        current.pop();
    }
}

/// The two-term `s1` estimate `C(h, k) + C(h, i) * C(v - i, k - i)`, which
/// keeps only edges meeting the clique in exactly `i` vertices (and counts
/// some of them more than once).
pub fn two_term_s1_estimate(v: usize, k: usize, i: usize, h: usize) -> u64 {
    binomial(h as u64, k as u64)
        + binomial(h as u64, i as u64) * binomial((v - i) as u64, (k - i) as u64)
}

/// Exact sensitivity at a lone isolated `h`-clique: every inside edge plus
/// every edge meeting the clique in `i..k` vertices.
pub fn lone_clique_sensitivity(v: usize, k: usize, i: usize, h: usize) -> u64 {
    binomial(h as u64, k as u64) + boundary_count(v, h, i, k)
}

/// Vertices of edge slot `id` in a `k`-uniform hypergraph on `v` vertices.
pub fn edge_vertices(id: EdgeId, v: usize, k: usize) -> Vec<usize> {
    let mut buf = vec![0; k];
    colex_unrank_into(id, v, &mut buf);
    buf
}
