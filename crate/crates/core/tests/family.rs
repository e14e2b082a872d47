use std::collections::HashSet;

use hypersens::family::{generate_family, trim_sets, verify_family, FamilyViolation};
use hypersens::field::{make_field, prime_power_decompose};

/// Pairwise intersection check by direct set comparison.
fn max_pairwise_intersection(sets: &[Vec<u64>]) -> usize {
    let hs: Vec<HashSet<u64>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    let mut worst = 0;
    for a in 0..hs.len() {
        for b in a + 1..hs.len() {
            worst = worst.max(hs[a].intersection(&hs[b]).count());
        }
    }
    worst
}

#[test]
fn all_small_families_are_valid() {
    let mut checked = 0;
    for q in 2u64..=16 {
        let Some((p, m)) = prime_power_decompose(q) else {
            continue;
        };
        let field = make_field(p, m).unwrap();
        for d in 1..=q as u32 {
            for ell in 1..=3u32 {
                let size = (q as u128).checked_pow(d * ell).unwrap_or(u128::MAX);
                if size > 10_000 || (q as u128).pow(ell + 1) > 1 << 20 {
                    continue;
                }
                let fam = generate_family(&field, d, ell, None).unwrap();
                assert_eq!(fam.sets.len() as u128, size);
                assert!(verify_family(&fam).ok, "q={q} d={d} ell={ell}");
                if size <= 600 {
                    assert!(max_pairwise_intersection(&fam.sets) < d as usize);
                }
                assert!(fam
                    .sets
                    .iter()
                    .flatten()
                    .all(|&e| 1 <= e && e <= fam.universe));
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn limited_generation_is_a_prefix() {
    let f = make_field(3, 1).unwrap();
    let full = generate_family(&f, 2, 2, None).unwrap();
    let part = generate_family(&f, 2, 2, Some(50)).unwrap();
    assert_eq!(part.sets[..], full.sets[..50]);
    assert!(verify_family(&part).ok);
    // a limit past the family size yields the whole family
    assert_eq!(generate_family(&f, 2, 2, Some(200)).unwrap(), full);
}

#[test]
fn trimming_keeps_intersections_small() {
    let f = make_field(7, 1).unwrap();
    let fam = generate_family(&f, 2, 1, None).unwrap();
    let t = trim_sets(&fam, 4).unwrap();
    assert!(verify_family(&t).ok);
    assert!(max_pairwise_intersection(&t.sets) < 2);
}

#[test]
fn out_of_universe_is_reported() {
    let f = make_field(2, 1).unwrap();
    let mut fam = generate_family(&f, 1, 1, None).unwrap();
    fam.sets[1] = vec![3, 9];
    assert_eq!(
        verify_family(&fam).violation,
        Some(FamilyViolation::OutOfUniverse {
            index: 1,
            element: 9
        })
    );
}

#[test]
fn json_shape() {
    let f = make_field(2, 1).unwrap();
    let fam = generate_family(&f, 1, 1, None).unwrap();
    let v: serde_json::Value = serde_json::to_value(&fam).unwrap();
    assert_eq!(v["q"], 2);
    assert_eq!(v["universe"], 4);
    assert_eq!(v["sets"], serde_json::json!([[1, 2], [3, 4]]));
}
