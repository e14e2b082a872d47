//! The Boolean functions under study, behind one evaluator interface.
//!
//! * Rubinstein's function on `k^2` bits and its cyclic-shift closure.
//! * Graph properties on `C(v, 2)` edge bits: isolated vertex and isolated
//!   triangle.
//! * The isolated-clique property on `C(v, k)` bits: some `h`-vertex set `S`
//!   spans a k-uniform clique and every edge not inside `S` meets `S` in fewer
//!   than `i` vertices.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, colex_rank, for_each_subset, Hypergraph, VertexSet};

/// Parameters of the isolated-clique property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliqueSpec {
    pub v: usize,
    pub k: usize,
    pub i: usize,
    pub h: usize,
}

impl CliqueSpec {
    /// Requires `1 <= i < k` and `k + 1 <= h <= v`.
    pub fn new(v: usize, k: usize, i: usize, h: usize) -> Result<Self> {
        if i >= k {
            return Err(Error::InvalidSpec(format!(
                "isolation threshold i = {i} must be below k = {k}"
            )));
        }
        Self::with_i_override(v, k, i, h)
    }

    /// Like [`CliqueSpec::new`] but also accepts `i = k`.
    pub fn with_i_override(v: usize, k: usize, i: usize, h: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidSpec(format!(
                "edge arity k = {k} must be at least 2"
            )));
        }
        if i == 0 || i > k {
            return Err(Error::IOutOfRange { i, k });
        }
        if h < k + 1 {
            return Err(Error::InvalidSpec(format!(
                "clique size h = {h} must be at least k + 1 = {}",
                k + 1
            )));
        }
        if h > v {
            return Err(Error::HTooLarge { h, v });
        }
        Ok(CliqueSpec { v, k, i, h })
    }

    /// Number of input bits, `C(v, k)`.
    pub fn num_vars(&self) -> usize {
        binomial(self.v as u64, self.k as u64) as usize
    }
}

/// Clique size for a growth exponent `t`: `max(k + 1, floor(v^t))`, capped at `v`.
pub fn clique_size_for(v: usize, k: usize, t: f64) -> usize {
    let x = (v as f64).powf(t);
    let mut h = x.floor();
    // guard against powf landing just below an exact integer power
    if h + 1.0 <= x + 1e-9 {
        h += 1.0;
    }
    (h as usize).max(k + 1).min(v)
}

/// Isolation threshold and growth exponent giving sensitivity `O(v^(k/2))`
/// for `k >= 3`: for any `i >= k/2`, `t = 1 - k / (2i)`.
pub fn balanced_parameters(k: usize, i: usize) -> Result<(usize, f64)> {
    if k < 3 || 2 * i < k || i >= k {
        return Err(Error::InvalidSpec(format!(
            "need k >= 3 and k/2 <= i < k, got k = {k}, i = {i}"
        )));
    }
    Ok((i, 1.0 - k as f64 / (2.0 * i as f64)))
}

/// One of the Boolean functions under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertySpec {
    Rubinstein { k: usize },
    CyclicRubinstein { k: usize },
    IsolatedVertex { v: usize },
    IsolatedTriangle { v: usize },
    IsolatedClique(CliqueSpec),
}

/// What made a function evaluate to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// 0-based block index after rotating the input left by `shift`.
    RubinsteinBlock { block: usize, shift: usize },
    /// The isolated vertex, triangle or clique (0-based).
    Vertices(VertexSet),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: bool,
    pub witness: Option<Witness>,
}

impl EvalResult {
    fn zero() -> Self {
        EvalResult {
            value: false,
            witness: None,
        }
    }

    fn one(w: Witness) -> Self {
        EvalResult {
            value: true,
            witness: Some(w),
        }
    }
}

impl PropertySpec {
    pub fn rubinstein(k: usize) -> Result<Self> {
        check_rubinstein_k(k)?;
        Ok(PropertySpec::Rubinstein { k })
    }

    pub fn cyclic_rubinstein(k: usize) -> Result<Self> {
        check_rubinstein_k(k)?;
        Ok(PropertySpec::CyclicRubinstein { k })
    }

    pub fn isolated_vertex(v: usize) -> Result<Self> {
        if v < 2 {
            return Err(Error::TooSmall { min: 2, got: v });
        }
        Ok(PropertySpec::IsolatedVertex { v })
    }

    pub fn isolated_triangle(v: usize) -> Result<Self> {
        if v < 3 {
            return Err(Error::TooSmall { min: 3, got: v });
        }
        Ok(PropertySpec::IsolatedTriangle { v })
    }

    pub fn isolated_clique(v: usize, k: usize, i: usize, h: usize) -> Result<Self> {
        Ok(PropertySpec::IsolatedClique(CliqueSpec::new(v, k, i, h)?))
    }

    /// `(v, k)` for graph and hypergraph variants.
    pub fn graph_shape(&self) -> Option<(usize, usize)> {
        match *self {
            PropertySpec::Rubinstein { .. } | PropertySpec::CyclicRubinstein { .. } => None,
            PropertySpec::IsolatedVertex { v } | PropertySpec::IsolatedTriangle { v } => {
                Some((v, 2))
            }
            PropertySpec::IsolatedClique(c) => Some((c.v, c.k)),
        }
    }

    /// The isolated-clique parameters this property is equivalent to, if any.
    pub fn as_clique(&self) -> Option<CliqueSpec> {
        match *self {
            PropertySpec::IsolatedTriangle { v } => Some(CliqueSpec {
                v,
                k: 2,
                i: 1,
                h: 3,
            }),
            PropertySpec::IsolatedClique(c) => Some(c),
            _ => None,
        }
    }

    pub fn input_len(&self) -> usize {
        match *self {
            PropertySpec::Rubinstein { k } | PropertySpec::CyclicRubinstein { k } => k * k,
            _ => {
                let (v, k) = self.graph_shape().unwrap();
                binomial(v as u64, k as u64) as usize
            }
        }
    }

    /// Evaluates at `x`, interpreting it as a hypergraph for graph variants.
    pub fn evaluate(&self, x: &BitString) -> Result<EvalResult> {
        match *self {
            PropertySpec::Rubinstein { k } => eval_rubinstein(k, x),
            PropertySpec::CyclicRubinstein { k } => eval_cyclic_rubinstein(k, x),
            _ => {
                let (v, k) = self.graph_shape().unwrap();
                let g = Hypergraph::from_bits(v, k, x.clone())?;
                self.evaluate_graph(&g)
            }
        }
    }

    pub fn evaluate_graph(&self, g: &Hypergraph) -> Result<EvalResult> {
        if self.graph_shape() != Some((g.v(), g.k())) {
            return Err(Error::SpecMismatch);
        }
        match *self {
            PropertySpec::IsolatedVertex { .. } => eval_isolated_vertex(g),
            PropertySpec::IsolatedTriangle { .. } => eval_isolated_triangle(g),
            PropertySpec::IsolatedClique(c) => eval_isolated_clique(&c, g),
            _ => unreachable!(),
        }
    }
}

impl BooleanFunction for PropertySpec {
    fn num_vars(&self) -> usize {
        self.input_len()
    }

    fn value(&self, x: &BitString) -> bool {
        self.evaluate(x)
            .expect("input length must match the property")
            .value
    }

    fn hypergraph_symmetry(&self) -> Option<(usize, usize)> {
        self.graph_shape()
    }
}

fn check_rubinstein_k(k: usize) -> Result<()> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    Ok(())
}

fn check_rubinstein_input(k: usize, x: &BitString) -> Result<()> {
    check_rubinstein_k(k)?;
    if x.len() != k * k {
        return Err(Error::BadLength {
            expected: k * k,
            got: x.len(),
        });
    }
    Ok(())
}

/// First block of `x` rotated left by `shift` holding exactly two adjacent ones.
fn rubinstein_block(k: usize, x: &BitString, shift: usize) -> Option<usize> {
    let n = k * k;
    (0..k).find(|&b| {
        let mut ones = 0;
        let mut first = 0;
        for j in 0..k {
            if x.get((b * k + j + shift) % n) {
                if ones == 0 {
                    first = j;
                }
                ones += 1;
                if ones > 2 {
                    return false;
                }
            }
        }
        ones == 2 && x.get((b * k + first + 1 + shift) % n)
    })
}

/// 1 iff some block of `k` consecutive positions has exactly two ones and they
/// are adjacent within the block.
pub fn eval_rubinstein(k: usize, x: &BitString) -> Result<EvalResult> {
    check_rubinstein_input(k, x)?;
    Ok(match rubinstein_block(k, x, 0) {
        Some(block) => EvalResult::one(Witness::RubinsteinBlock { block, shift: 0 }),
        None => EvalResult::zero(),
    })
}

/// Rotation `x_{l+1} ... x_n x_1 ... x_l`.
pub fn cyclic_shift(x: &BitString, l: usize) -> BitString {
    let n = x.len();
    let mut out = BitString::zeros(n);
    if n == 0 {
        return out;
    }
    for p in 0..n {
        if x.get((p + l) % n) {
            out.set(p, true);
        }
    }
    out
}

/// 1 iff some cyclic shift of `x` satisfies Rubinstein's function; the
/// witness carries the smallest such shift.
pub fn eval_cyclic_rubinstein(k: usize, x: &BitString) -> Result<EvalResult> {
    check_rubinstein_input(k, x)?;
    for shift in 0..k * k {
        if let Some(block) = rubinstein_block(k, x, shift) {
            return Ok(EvalResult::one(Witness::RubinsteinBlock { block, shift }));
        }
    }
    Ok(EvalResult::zero())
}

fn require_graph(g: &Hypergraph) -> Result<()> {
    if g.k() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: g.k(),
        });
    }
    Ok(())
}

pub fn eval_isolated_vertex(g: &Hypergraph) -> Result<EvalResult> {
    require_graph(g)?;
    Ok(match g.degrees().iter().position(|&d| d == 0) {
        Some(u) => EvalResult::one(Witness::Vertices(VertexSet::from_sorted(vec![u]).unwrap())),
        None => EvalResult::zero(),
    })
}

/// Degree scan specialised to `k = 2, i = 1, h = 3`.
pub fn eval_isolated_triangle(g: &Hypergraph) -> Result<EvalResult> {
    require_graph(g)?;
    let v = g.v();
    let deg = g.degrees();
    for a in 0..v {
        if deg[a] != 2 {
            continue;
        }
        let mut nb = (0..v).filter(|&w| w != a && g.has_edge(&sorted2(a, w)));
        let (b, c) = (nb.next().unwrap(), nb.next().unwrap());
        if a < b && deg[b] == 2 && deg[c] == 2 && g.has_edge(&[b, c]) {
            let s = VertexSet::from_sorted(vec![a, b, c]).unwrap();
            return Ok(EvalResult::one(Witness::Vertices(s)));
        }
    }
    Ok(EvalResult::zero())
}

#[inline]
fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Searches `h`-sets in lexicographic order for an isolated clique.
pub fn eval_isolated_clique(spec: &CliqueSpec, g: &Hypergraph) -> Result<EvalResult> {
    if (spec.v, spec.k) != (g.v(), g.k()) {
        return Err(Error::SpecMismatch);
    }
    Ok(match find_isolated_clique(spec, g) {
        Some(s) => EvalResult::one(Witness::Vertices(s)),
        None => EvalResult::zero(),
    })
}

fn find_isolated_clique(spec: &CliqueSpec, g: &Hypergraph) -> Option<VertexSet> {
    let CliqueSpec { k, i, h, .. } = *spec;
    let deg = g.degrees();
    let inside = binomial(h as u64 - 1, k as u64 - 1) as usize;
    // with i = 1 no edge may leave the clique, so degrees are exact
    let candidates: Vec<usize> = (0..g.v())
        .filter(|&x| {
            if i == 1 {
                deg[x] == inside
            } else {
                deg[x] >= inside
            }
        })
        .collect();
    if candidates.len() < h {
        return None;
    }
    let edges = g.edges();
    let mut current = Vec::with_capacity(h);
    let mut found = None;
    extend_clique(g, &candidates, 0, &mut current, h, &mut |s| {
        let isolated = edges.iter().all(|e| {
            let meet = e.iter().filter(|x| s.binary_search(x).is_ok()).count();
            meet == k || meet < i
        });
        if isolated {
            found = Some(VertexSet::from_sorted(s.to_vec()).unwrap());
        }
        isolated
    });
    found
}

/// Depth-first extension of `current` by candidates in increasing order,
/// keeping it a clique. `visit` returns true to stop the search.
fn extend_clique(
    g: &Hypergraph,
    candidates: &[usize],
    start: usize,
    current: &mut Vec<usize>,
    h: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if current.len() == h {
        return visit(current);
    }
    let k = g.k();
    let mut buf = vec![0; k];
    for idx in start..candidates.len() {
        if candidates.len() - idx < h - current.len() {
            break;
        }
        let w = candidates[idx];
        let mut ok = true;
        if current.len() + 1 >= k {
            for_each_subset(current, k - 1, |sub| {
                if ok {
                    buf[..k - 1].copy_from_slice(sub);
                    buf[k - 1] = w;
                    ok = g.has_edge_id(colex_rank(&buf));
                }
            });
        }
        if !ok {
            continue;
        }
        current.push(w);
        let stop = extend_clique(g, candidates, idx + 1, current, h, visit);
        current.pop();
        if stop {
            return true;
        }
    }
    false
}

/// JSON form of a [`PropertySpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct PropertySpecJson {
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rubinstein_k: Option<usize>,
    /// Accept `i = k` for the isolated-clique variant.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_i_eq_k: bool,
}

impl TryFrom<&PropertySpecJson> for PropertySpec {
    type Error = Error;

    fn try_from(j: &PropertySpecJson) -> Result<Self> {
        let need = |field: Option<usize>, name: &str| {
            field.ok_or_else(|| {
                Error::InvalidSpec(format!("variant {:?} needs field {name:?}", j.variant))
            })
        };
        match j.variant.as_str() {
            "rubinstein" => PropertySpec::rubinstein(need(j.rubinstein_k.or(j.k), "rubinstein_k")?),
            "cyclic-rubinstein" => {
                PropertySpec::cyclic_rubinstein(need(j.rubinstein_k.or(j.k), "rubinstein_k")?)
            }
            "isolated-vertex" => PropertySpec::isolated_vertex(need(j.v, "v")?),
            "isolated-triangle" => PropertySpec::isolated_triangle(need(j.v, "v")?),
            "isolated-clique" => {
                let v = need(j.v, "v")?;
                let k = need(j.k, "k")?;
                let i = need(j.i, "i")?;
                let h = match (j.h, j.t) {
                    (Some(h), _) => h,
                    (None, Some(t)) => clique_size_for(v, k, t),
                    (None, None) => {
                        return Err(Error::InvalidSpec("isolated-clique needs h or t".into()))
                    }
                };
                let c = if j.allow_i_eq_k {
                    CliqueSpec::with_i_override(v, k, i, h)?
                } else {
                    CliqueSpec::new(v, k, i, h)?
                };
                Ok(PropertySpec::IsolatedClique(c))
            }
            other => Err(Error::InvalidSpec(format!("unknown variant {other:?}"))),
        }
    }
}

impl From<&PropertySpec> for PropertySpecJson {
    fn from(p: &PropertySpec) -> Self {
        let mut j = PropertySpecJson::default();
        match *p {
            PropertySpec::Rubinstein { k } => {
                j.variant = "rubinstein".into();
                j.rubinstein_k = Some(k);
            }
            PropertySpec::CyclicRubinstein { k } => {
                j.variant = "cyclic-rubinstein".into();
                j.rubinstein_k = Some(k);
            }
            PropertySpec::IsolatedVertex { v } => {
                j.variant = "isolated-vertex".into();
                j.v = Some(v);
            }
            PropertySpec::IsolatedTriangle { v } => {
                j.variant = "isolated-triangle".into();
                j.v = Some(v);
            }
            PropertySpec::IsolatedClique(c) => {
                j.variant = "isolated-clique".into();
                j.v = Some(c.v);
                j.k = Some(c.k);
                j.i = Some(c.i);
                j.h = Some(c.h);
                j.allow_i_eq_k = c.i == c.k;
            }
        }
        j
    }
}
