//! Fixed-length bit strings used as Boolean function inputs.
//!
//! Position `0` is the first variable. The textual form lists positions left
//! to right, so `"1100"` has positions 0 and 1 set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Self::zeros(len);
        for w in b.words.iter_mut() {
            *w = u64::MAX;
        }
        b.clear_tail();
        b
    }

    /// Bit `i` of `value` becomes position `i`. Requires `len <= 64`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 positions");
        let mut b = Self::zeros(len);
        if len > 0 {
            b.words[0] = value;
            b.clear_tail();
        }
        b
    }

    /// Inverse of [`BitString::from_u64`]; `None` when longer than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Each position set independently with probability `density`.
    pub fn random<R: rand::Rng + ?Sized>(len: usize, density: f64, rng: &mut R) -> Self {
        let mut b = Self::zeros(len);
        for i in 0..len {
            if rng.gen_bool(density) {
                b.set(i, true);
            }
        }
        b
    }

    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut b = Self::zeros(len);
        for p in positions {
            if p >= len {
                return Err(Error::EdgeOutOfRange { edge: p, n: len });
            }
            b.set(p, true);
        }
        Ok(b)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions holding a 1, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Packed 64-bit words, position `i` at bit `i % 64` of word `i / 64`.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Big-endian hex: position 0 is the most significant bit of the first
    /// nibble; the final nibble is zero-padded on the right.
    pub fn to_hex(&self) -> String {
        let nibbles = self.len.div_ceil(4);
        let mut out = String::with_capacity(nibbles);
        for n in 0..nibbles {
            let mut v = 0u8;
            for j in 0..4 {
                let p = 4 * n + j;
                v <<= 1;
                if p < self.len && self.get(p) {
                    v |= 1;
                }
            }
            out.push(char::from_digit(v as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(len: usize, hex: &str) -> Result<Self> {
        if hex.len() != len.div_ceil(4) {
            return Err(Error::Parse(format!(
                "hex string of {} digits cannot encode {len} bits",
                hex.len()
            )));
        }
        let mut b = Self::zeros(len);
        for (n, c) in hex.chars().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            for j in 0..4 {
                let p = 4 * n + j;
                let bit = v >> (3 - j) & 1 == 1;
                if p < len {
                    b.set(p, bit);
                } else if bit {
                    return Err(Error::Parse("non-zero padding in hex string".into()));
                }
            }
        }
        Ok(b)
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut b = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => b.set(i, true),
                _ => return Err(Error::Parse(format!("invalid bit {c:?} at position {i}"))),
            }
        }
        Ok(b)
    }
}
