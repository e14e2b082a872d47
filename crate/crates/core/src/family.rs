//! Low-intersection set families from polynomial graphs over GF(q).
//!
//! For every ℓ-tuple `(f_1, ..., f_ℓ)` of polynomials of degree `< d` the set
//! `{(x, f_1(x), ..., f_ℓ(x)) : x in GF(q)}` has `q` points, and two distinct
//! tuples agree on fewer than `d` values of `x`. Points `(t_0, ..., t_ℓ)` are
//! labelled `1 + sum_j rank(t_j) * q^j`, giving subsets of `[1, q^(ℓ+1)]`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldPoly, FieldSpec};

/// Largest universe `q^(ℓ+1)` generated.
pub const MAX_UNIVERSE: u128 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    pub q: u64,
    pub d: u32,
    pub ell: u32,
    pub universe: u64,
    /// Set when the members were cut down by [`trim_sets`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trimmed_to: Option<usize>,
    pub sets: Vec<Vec<u64>>,
}

impl SetFamily {
    /// Required size of every member.
    pub fn set_size(&self) -> usize {
        self.trimmed_to.unwrap_or(self.q as usize)
    }

    /// `q^(dℓ)`, the size of the untruncated family.
    pub fn full_size(&self) -> u128 {
        (self.q as u128).pow(self.d * self.ell)
    }
}

/// First broken invariant found by [`verify_family`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyViolation {
    SetSize {
        index: usize,
        size: usize,
        expected: usize,
    },
    OutOfUniverse {
        index: usize,
        element: u64,
    },
    Intersection {
        first: usize,
        second: usize,
        size: usize,
        bound: u32,
    },
    TooManySets {
        count: usize,
        max: u128,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub ok: bool,
    pub violation: Option<FamilyViolation>,
}

/// Emits the family for `(field, d, ell)`, optionally only the first `limit`
/// tuples (a limit above `q^(dℓ)` yields the whole family). Tuples are ordered lexicographically by their concatenated
/// coefficient ranks `(f_1[0], ..., f_1[d-1], f_2[0], ...)`.
pub fn generate_family(
    field: &FieldSpec,
    d: u32,
    ell: u32,
    limit: Option<u64>,
) -> Result<SetFamily> {
    let q = field.order();
    if d == 0 || d as u64 > q {
        return Err(Error::DOutOfRange { d, q });
    }
    if ell == 0 {
        return Err(Error::EllOutOfRange);
    }
    let universe = (q as u128).checked_pow(ell + 1).unwrap_or(u128::MAX);
    if universe > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(universe));
    }
    let full = (q as u128).checked_pow(d * ell).unwrap_or(u128::MAX);
    let count = match limit {
        Some(l) => l.min(u64::try_from(full).unwrap_or(u64::MAX)),
        None => u64::try_from(full).map_err(|_| Error::LimitTooLarge {
            limit: u64::MAX,
            max: full,
        })?,
    };

    let points: Vec<_> = field.elements().collect();
    let coeff_count = (d * ell) as usize;
    let mut digits = vec![0u64; coeff_count];
    let mut sets = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let polys: Vec<FieldPoly> = digits
            .chunks(d as usize)
            .map(|c| FieldPoly::new(c.iter().map(|&r| field.unrank(r)).collect()))
            .collect();
        let mut set: Vec<u64> = points
            .iter()
            .enumerate()
            .map(|(x_rank, x)| {
                let mut label = x_rank as u64;
                let mut scale = q;
                for f in &polys {
                    label += field.rank(&field.eval_poly(f, x)) * scale;
                    scale *= q;
                }
                label + 1
            })
            .collect();
        set.sort_unstable();
        sets.push(set);
        // odometer, last coefficient least significant
        for digit in digits.iter_mut().rev() {
            *digit += 1;
            if *digit < q {
                break;
            }
            *digit = 0;
        }
    }
    Ok(SetFamily {
        q,
        d,
        ell,
        universe: universe as u64,
        trimmed_to: None,
        sets,
    })
}

/// Checks member sizes, the universe range, pairwise intersections `< d` and
/// the family size bound. Reports the first violation in that order; among
/// intersection violations, the lexicographically smallest pair.
pub fn verify_family(fam: &SetFamily) -> FamilyReport {
    let fail = |v| FamilyReport {
        ok: false,
        violation: Some(v),
    };
    let expected = fam.set_size();
    for (index, s) in fam.sets.iter().enumerate() {
        let mut distinct = s.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != expected || s.len() != expected {
            return fail(FamilyViolation::SetSize {
                index,
                size: distinct.len(),
                expected,
            });
        }
        if let Some(&element) = s.iter().find(|&&e| e == 0 || e > fam.universe) {
            return fail(FamilyViolation::OutOfUniverse { index, element });
        }
    }

    // co-occurrence counts via an inverted index
    let mut by_point: HashMap<u64, Vec<usize>> = HashMap::new();
    for (index, s) in fam.sets.iter().enumerate() {
        for &e in s {
            by_point.entry(e).or_default().push(index);
        }
    }
    let mut shared: HashMap<(usize, usize), usize> = HashMap::new();
    for owners in by_point.values() {
        for (a, &i) in owners.iter().enumerate() {
            for &j in &owners[a + 1..] {
                *shared.entry((i, j)).or_default() += 1;
            }
        }
    }
    if let Some((&(first, second), &size)) = shared
        .iter()
        .filter(|(_, &c)| c >= fam.d as usize)
        .min_by_key(|(pair, _)| **pair)
    {
        return fail(FamilyViolation::Intersection {
            first,
            second,
            size,
            bound: fam.d,
        });
    }

    if fam.sets.len() as u128 > fam.full_size() {
        return fail(FamilyViolation::TooManySets {
            count: fam.sets.len(),
            max: fam.full_size(),
        });
    }
    FamilyReport {
        ok: true,
        violation: None,
    }
}

/// Keeps the `target` smallest elements of every member.
pub fn trim_sets(fam: &SetFamily, target: usize) -> Result<SetFamily> {
    if target > fam.q as usize {
        return Err(Error::TargetTooLarge { target, q: fam.q });
    }
    let sets = fam
        .sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.truncate(target);
            s
        })
        .collect();
    Ok(SetFamily {
        trimmed_to: (target != fam.q as usize).then_some(target),
        sets,
        ..fam.clone()
    })
}
