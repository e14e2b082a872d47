//! Arithmetic in GF(p^m) with an explicit irreducible modulus.
//!
//! Elements are coefficient vectors over F_p (lowest degree first). Every
//! element has a canonical rank `sum_j c_j * p^j` in `[0, q)`, which fixes a
//! total order on the field and is how set families label their points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order handled.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A finite field GF(p^m).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    /// Monic modulus, lowest degree first, `m + 1` entries. Empty for prime fields.
    modulus: Vec<u64>,
}

/// An element of some [`FieldSpec`]; only the owning field can build one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

/// Polynomial over a field, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPoly {
    pub coeffs: Vec<FieldElement>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl FieldPoly {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        FieldPoly { coeffs }
    }

    /// Number of stored coefficients; the degree is strictly below this.
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q = p^m` with `p` prime, or `None` if `q` is not a prime power.
pub fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Smallest prime power strictly between `lo` and `hi`.
pub fn prime_power_in_range(lo: u64, hi: u64) -> Option<(u64, u32)> {
    (lo.saturating_add(1)..hi).find_map(prime_power_decompose)
}

/// Builds GF(p^m) using the lexicographically smallest monic irreducible
/// modulus (coefficients compared lowest degree first).
pub fn make_field(p: u64, m: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let order = (m >= 1)
        .then(|| p.checked_pow(m))
        .flatten()
        .filter(|&q| q <= MAX_FIELD_ORDER);
    if order.is_none() {
        return Err(Error::DegreeOutOfRange { p, m });
    }
    if m == 1 {
        return Ok(FieldSpec {
            p,
            m,
            modulus: Vec::new(),
        });
    }
    let m_us = m as usize;
    let mut lower = vec![0u64; m_us];
    loop {
        let mut candidate = lower.clone();
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return Ok(FieldSpec {
                p,
                m,
                modulus: candidate,
            });
        }
        // odometer over (c_0, ..., c_{m-1}) with c_0 most significant
        let mut j = m_us;
        loop {
            if j == 0 {
                unreachable!("an irreducible polynomial of every degree exists over F_p");
            }
            j -= 1;
            lower[j] += 1;
            if lower[j] < p {
                break;
            }
            lower[j] = 0;
        }
    }
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.m as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of the integer `n` under Z -> F_p -> F_q.
    pub fn from_int(&self, n: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n % self.p;
        e
    }

    /// Element with the given coefficients, lowest degree first.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn rank(&self, e: &FieldElement) -> u64 {
        e.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn unrank(&self, mut r: u64) -> FieldElement {
        assert!(r < self.order(), "rank {r} out of range");
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = r % self.p;
            r /= self.p;
        }
        e
    }

    /// All elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |r| self.unrank(r))
    }

    pub fn is_zero(&self, e: &FieldElement) -> bool {
        e.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, e: &FieldElement) {
        assert_eq!(
            e.coeffs.len(),
            self.m as usize,
            "element belongs to a different field"
        );
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let p = self.p;
        let m = self.m as usize;
        if m == 1 {
            return FieldElement {
                coeffs: vec![a.coeffs[0] * b.coeffs[0] % p],
            };
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        reduce_monic(&mut prod, &self.modulus, p);
        prod.truncate(m);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Horner evaluation.
    pub fn eval_poly(&self, f: &FieldPoly, x: &FieldElement) -> FieldElement {
        f.coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }
}

/// Reduces `poly` in place modulo the monic `modulus`; the result occupies the
/// low `deg(modulus)` coefficients.
fn reduce_monic(poly: &mut [u64], modulus: &[u64], p: u64) {
    let m = modulus.len() - 1;
    for top in (m..poly.len()).rev() {
        let c = poly[top];
        if c == 0 {
            continue;
        }
        for (j, &mj) in modulus.iter().enumerate() {
            let idx = top - m + j;
            poly[idx] = (poly[idx] + (p - c) * mj % p) % p;
        }
    }
}

/// Exhaustive factor check: no monic factor of degree `1..=deg/2`.
fn is_irreducible(monic: &[u64], p: u64) -> bool {
    let deg = monic.len() - 1;
    for fdeg in 1..=deg / 2 {
        let count = p.pow(fdeg as u32);
        for r in 0..count {
            let mut factor = Vec::with_capacity(fdeg + 1);
            let mut rest = r;
            for _ in 0..fdeg {
                factor.push(rest % p);
                rest /= p;
            }
            factor.push(1);
            let mut rem = monic.to_vec();
            reduce_monic(&mut rem, &factor, p);
            if rem[..fdeg].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
