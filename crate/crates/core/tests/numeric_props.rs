use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcpow::numeric::{isqrt, isqrt_unsigned, quad_compare, BigRational, QuadraticNumber};

const D: u64 = 13;

fn rat() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn quad() -> impl Strategy<Value = QuadraticNumber> {
    (rat(), rat()).prop_map(|(p, q)| QuadraticNumber::new(p, q, D).unwrap())
}

proptest! {
    #[test]
    fn addition_associates(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    }

    #[test]
    fn multiplication_distributes(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn isqrt_brackets(n in any::<u128>()) {
        let n = BigUint::from(n);
        let r = isqrt_unsigned(&n);
        prop_assert!(&r * &r <= n);
        prop_assert!((&r + 1u32) * (&r + 1u32) > n);
        prop_assert_eq!(r, n.sqrt());
    }
}

/// Sign of p + q√D from a 100-digit bracket s_lo ≤ √D < s_hi, without squaring.
fn sign_by_bracket(x: &QuadraticNumber) -> Option<Ordering> {
    let scale = BigInt::from(10).pow(100);
    let root = isqrt(&(BigInt::from(x.radicand()) * &scale * &scale)).unwrap();
    let lo = BigRational::new(root.clone(), scale.clone());
    let hi = BigRational::new(root + 1, scale);
    let (p, q) = (x.rational_part(), x.radical_part());
    let a = p + q * &lo;
    let b = p + q * &hi;
    let (min, max) = if a <= b { (a, b) } else { (b, a) };
    if min.is_positive() {
        Some(Ordering::Greater)
    } else if max.is_negative() {
        Some(Ordering::Less)
    } else if q.is_zero() && p.is_zero() {
        Some(Ordering::Equal)
    } else {
        None
    }
}

#[test]
fn compare_matches_high_precision_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let draw = |rng: &mut ChaCha8Rng| {
        let p = BigRational::new(rng.gen_range(-10_000i64..10_000).into(), rng.gen_range(1i64..100).into());
        let q = BigRational::new(rng.gen_range(-3_000i64..3_000).into(), rng.gen_range(1i64..100).into());
        QuadraticNumber::new(p, q, D).unwrap()
    };
    for _ in 0..1000 {
        let x = draw(&mut rng);
        let y = if rng.gen_bool(0.05) { x.clone() } else { draw(&mut rng) };
        let expected = sign_by_bracket(&x.try_sub(&y).unwrap()).expect("100 digits separate these");
        assert_eq!(quad_compare(&x, &y).unwrap(), expected, "{x} vs {y}");
    }
}

#[test]
fn compare_near_misses() {
    // Convergents of √13 sit extremely close to it.
    for (num, den) in [(18i64, 5i64), (119, 33), (137, 38), (256, 71), (649, 180), (842401, 233640)] {
        let approx = QuadraticNumber::from_rational(BigRational::new(num.into(), den.into()), D).unwrap();
        let sqrt = QuadraticNumber::sqrt(D).unwrap();
        let expected = sign_by_bracket(&approx.try_sub(&sqrt).unwrap()).unwrap();
        assert_eq!(quad_compare(&approx, &sqrt).unwrap(), expected);
    }
}

#[test]
fn isqrt_on_scaled_radicand() {
    for l in (1u64..=1_000_000).step_by(997) {
        let n = BigUint::from(D) * l * l;
        let r = isqrt_unsigned(&n);
        assert!(&r * &r <= n && (&r + 1u32) * (&r + 1u32) > n, "l = {l}");
    }
}
