//! The Boolean-function abstraction the sensitivity engine works against,
//! plus a few reference functions used as test fixtures.

use rand::Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};

/// A Boolean function on `num_vars()` input bits.
pub trait BooleanFunction {
    fn num_vars(&self) -> usize;

    /// Value at `x`; `x.len()` must equal `num_vars()`.
    fn value(&self, x: &BitString) -> bool;

    /// `(v, k)` when the function is a k-uniform hypergraph property on `v`
    /// vertices, i.e. invariant under every vertex relabelling.
    fn hypergraph_symmetry(&self) -> Option<(usize, usize)> {
        None
    }
}

impl<F: BooleanFunction + ?Sized> BooleanFunction for &F {
    fn num_vars(&self) -> usize {
        (**self).num_vars()
    }

    fn value(&self, x: &BitString) -> bool {
        (**self).value(x)
    }

    fn hypergraph_symmetry(&self) -> Option<(usize, usize)> {
        (**self).hypergraph_symmetry()
    }
}

pub(crate) fn check_len(f: &impl BooleanFunction, x: &BitString) -> Result<()> {
    if x.len() != f.num_vars() {
        return Err(Error::BadLength {
            expected: f.num_vars(),
            got: x.len(),
        });
    }
    Ok(())
}

/// OR of all inputs.
#[derive(Debug, Clone, Copy)]
pub struct OrFunction(pub usize);

impl BooleanFunction for OrFunction {
    fn num_vars(&self) -> usize {
        self.0
    }

    fn value(&self, x: &BitString) -> bool {
        x.count_ones() > 0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantFunction {
    pub n: usize,
    pub value: bool,
}

impl BooleanFunction for ConstantFunction {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn value(&self, _: &BitString) -> bool {
        self.value
    }
}

/// Largest arity for which a truth table is materialized.
pub const MAX_TABLE_VARS: usize = 24;

/// Explicit truth table; entry `x` is the value at the input whose position
/// `i` is bit `i` of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    table: Vec<u64>,
}

impl TruthTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        if n > MAX_TABLE_VARS {
            return Err(Error::TooLarge {
                n,
                budget: MAX_TABLE_VARS,
            });
        }
        let size = 1usize << n;
        let mut table = vec![0u64; size.div_ceil(64)];
        for x in 0..size {
            if f(x as u32) {
                table[x / 64] |= 1 << (x % 64);
            }
        }
        Ok(TruthTable { n, table })
    }

    /// Tabulates `f` over all `2^n` inputs.
    pub fn tabulate(f: &impl BooleanFunction) -> Result<Self> {
        let n = f.num_vars();
        Self::from_fn(n, |x| f.value(&BitString::from_u64(n, x as u64)))
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        Self::from_fn(n, |_| rng.gen())
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        self.table[x as usize / 64] >> (x % 64) & 1 == 1
    }

    pub fn num_inputs(&self) -> usize {
        1 << self.n
    }
}

impl BooleanFunction for TruthTable {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn value(&self, x: &BitString) -> bool {
        self.get(x.to_u64().expect("truth tables have at most 24 inputs") as u32)
    }
}
