use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use lcpow::k3::{closed_form_limit, h0_blowup, BlowupCache, BlowupClass, K3Params};
use lcpow::numeric::{quad_compare, BigRational, QuadraticNumber};

fn quad_int(v: &BigInt, d: u64) -> QuadraticNumber {
    QuadraticNumber::from_rational(BigRational::from_integer(v.clone()), d).unwrap()
}

#[test]
fn exactly_one_side_of_lambda2() {
    let p = K3Params::default();
    let lambda2 = p.lambda2();
    for n in 1..=30u32 {
        let line = lambda2.scale(&BigRational::from_integer(n.into()));
        for m in -10..=260i64 {
            let cmp = quad_compare(&quad_int(&m.into(), 13), &line).unwrap();
            assert_ne!(cmp, Ordering::Equal);
            assert_eq!(p.is_strictly_above(m, n), cmp == Ordering::Greater, "m = {m}, n = {n}");
        }
    }
}

#[test]
fn h0_blowup_is_monotone_in_m() {
    let p = K3Params::default();
    let mut cache = BlowupCache::new(&p);
    for n in 0..=20u32 {
        let mut prev = cache.h0(BlowupClass { m: 0, n });
        for m in 1..=200 {
            let next = cache.h0(BlowupClass { m, n });
            assert!(prev <= next, "h0({m}, {n}) dropped");
            prev = next;
        }
    }
}

#[test]
fn shared_cache_matches_fresh_evaluation() {
    let p = K3Params::default();
    let mut cache = BlowupCache::new(&p);
    for (m, n) in [(40, 5), (3, 1), (100, 12), (16, 2), (90, 12)] {
        assert_eq!(cache.h0(BlowupClass { m, n }), h0_blowup(m, n, &p));
    }
}

#[test]
fn floors_bracket_lambda_multiples() {
    let p = K3Params::default();
    let lambda = p.lambda();
    for l in 1..=300u64 {
        let floor = p.floor_lambda_times(l);
        let x = lambda.scale(&BigRational::from_integer(l.into()));
        assert_eq!(quad_compare(&quad_int(&floor, 13), &x).unwrap(), Ordering::Less);
        assert_eq!(quad_compare(&quad_int(&(floor + 1), 13), &x).unwrap(), Ordering::Greater);
    }
}

#[test]
fn floor_r_over_lambda_matches_floor_lambda_times() {
    let p = K3Params::default();
    for r in 1..=400u64 {
        let t = p.floor_r_over_lambda(r);
        // [r/λ] = max{t : [λt] ≤ r − 1}
        let mut best = 0u64;
        for cand in 0..=r {
            if p.floor_lambda_times(cand) <= BigInt::from(r - 1) {
                best = cand;
            }
        }
        assert_eq!(t, BigInt::from(best), "r = {r}");
    }
}

#[test]
fn radical_part_is_e_independent() {
    let expected = BigRational::new(13.into(), 3.into());
    for e in 8..=12 {
        let limit = closed_form_limit(&K3Params::new(4, 3, 2, e).unwrap()).unwrap();
        assert_eq!(limit.radical_part(), &expected);
    }
}

proptest! {
    #[test]
    fn p_telescopes_to_q(s in 0i64..40, r in 0i64..200) {
        let p = K3Params::default();
        let sum: BigInt = (1..=s).map(|l| p.p(l, r)).sum();
        prop_assert_eq!(sum, p.q(s, r));
    }

    #[test]
    fn p_telescopes_for_other_curves(s in 0i64..30, r in 0i64..100) {
        let p = K3Params::new(9, 2, 3, 30).unwrap();
        let sum: BigInt = (1..=s).map(|l| p.p(l, r)).sum();
        prop_assert_eq!(sum, p.q(s, r));
    }
}

#[test]
fn pipelines_agree_for_other_parameters() {
    for (a, b, c, e) in [(4, 3, 2, 9), (4, 3, 2, 12), (5, 3, 2, 10), (9, 2, 3, 14), (6, 1, 3, 11)] {
        let p = K3Params::new(a, b, c, e).unwrap();
        assert!(lcpow::k3::cross_check(&p, 24).is_empty(), "({a},{b},{c},{e})");
    }
}
