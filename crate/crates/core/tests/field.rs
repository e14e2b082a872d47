use hypersens::field::{is_prime, make_field, prime_power_decompose, prime_power_in_range};
use hypersens::Error;
use proptest::prelude::*;

fn prime_powers_up_to(n: u64) -> Vec<(u64, u32)> {
    (2..=n).filter_map(prime_power_decompose).collect()
}

#[test]
fn axioms_hold_exhaustively_up_to_64() {
    for (p, m) in prime_powers_up_to(64) {
        let f = make_field(p, m).unwrap();
        let q = f.order();
        assert_eq!(q, p.pow(m));
        let els: Vec<_> = f.elements().collect();
        let zero = f.zero();
        let one = f.one();
        for a in &els {
            assert_eq!(f.add(a, &zero), *a);
            assert_eq!(f.mul(a, &one), *a);
            assert_eq!(f.add(a, &f.neg(a)), zero);
            if *a != zero {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), one, "GF({q})");
            }
            for b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if *a != zero && *b != zero {
                    assert_ne!(f.mul(a, b), zero, "zero divisor in GF({q})");
                }
            }
        }
        // associativity and distributivity on a sample of triples
        for (ia, a) in els.iter().enumerate().step_by(3) {
            for b in els.iter().skip(ia % 5).step_by(5) {
                for c in els.iter().step_by(7) {
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                }
            }
        }
        // Frobenius: a^q = a
        for a in &els {
            assert_eq!(f.pow(a, q), *a);
        }
    }
}

#[test]
fn smallest_moduli() {
    assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
    assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
    assert!(make_field(5, 1).unwrap().modulus().is_empty());
}

#[test]
fn construction_errors() {
    assert_eq!(make_field(6, 1), Err(Error::NonPrime(6)));
    assert!(matches!(
        make_field(2, 21),
        Err(Error::DegreeOutOfRange { .. })
    ));
    assert!(matches!(
        make_field(2, 0),
        Err(Error::DegreeOutOfRange { .. })
    ));
    let f = make_field(7, 1).unwrap();
    assert_eq!(f.inv(&f.zero()), Err(Error::ZeroInverse));
}

#[test]
fn prime_power_helpers() {
    assert_eq!(prime_power_decompose(64), Some((2, 6)));
    assert_eq!(prime_power_decompose(12), None);
    assert_eq!(prime_power_decompose(1), None);
    assert_eq!(prime_power_in_range(3, 6), Some((2, 2)));
    assert_eq!(prime_power_in_range(23, 25), None);
    assert!(is_prime(97) && !is_prime(91));
}

proptest! {
    #[test]
    fn rank_round_trip(q_idx in 0usize..20, r in any::<u64>()) {
        let (p, m) = prime_powers_up_to(128)[q_idx];
        let f = make_field(p, m).unwrap();
        let r = r % f.order();
        prop_assert_eq!(f.rank(&f.unrank(r)), r);
    }

    #[test]
    fn inverse_in_larger_fields(m in 1u32..=8, r in 1u64..256) {
        let f = make_field(2, m).unwrap();
        let a = f.unrank(r % f.order());
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }
}
