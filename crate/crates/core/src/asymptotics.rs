//! Limits of integer sequences `f(n)/n^d`, all in exact rational arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cohomology::power_data;
use crate::error::{Error, Result};
use crate::io::rational_string;
use crate::monomial::{CountStrategy, GradedCounter, MonomialIdeal};
use crate::numeric::{rational_decimal, BigRational};

/// Estimate of `lim f(n)/n^d`.
///
/// `extrapolated` is the first-order Richardson value `2·r(2n) − r(n)` at the
/// largest pair `2n <= N`. `refined` carries the Richardson tableau through
/// order `d`, which is exact whenever `f` agrees with a polynomial of degree
/// `<= d` on the points it uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticEstimate {
    pub degree: u32,
    #[serde(serialize_with = "raw_pairs")]
    pub raw: Vec<(u32, BigRational)>,
    #[serde(serialize_with = "rational_string")]
    pub extrapolated: BigRational,
    #[serde(serialize_with = "rational_string")]
    pub error_indicator: BigRational,
    #[serde(serialize_with = "rational_string")]
    pub refined: BigRational,
}

fn raw_pairs<S: serde::Serializer>(raw: &[(u32, BigRational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(raw.len()))?;
    for (n, r) in raw {
        seq.serialize_element(&serde_json::json!({ "n": n, "ratio": crate::numeric::fraction_string(r) }))?;
    }
    seq.end()
}

impl AsymptoticEstimate {
    pub fn extrapolated_decimal(&self, digits: usize) -> String {
        rational_decimal(&self.extrapolated, digits)
    }

    /// The last two first-order extrapolants coincide.
    pub fn is_exact_pair(&self) -> bool {
        self.error_indicator.is_zero()
    }
}

fn ratio(value: &BigInt, n: u32, degree: u32) -> BigRational {
    BigRational::new(value.clone(), BigInt::from(n).pow(degree))
}

/// `r(n) = f(n)/n^d` for `n = 1..=f.len()`.
pub fn normalized_ratios(f: &[BigInt], degree: u32) -> Vec<(u32, BigRational)> {
    f.iter().enumerate().map(|(i, v)| (i as u32 + 1, ratio(v, i as u32 + 1, degree))).collect()
}

/// First-order extrapolants `2·r(2n) − r(n)`, indexed by `n` with `2n <= N`.
pub fn richardson_extrapolants(ratios: &[BigRational]) -> Vec<BigRational> {
    let two = BigRational::from_integer(2.into());
    (1..=ratios.len() / 2).map(|n| &two * &ratios[2 * n - 1] - &ratios[n - 1]).collect()
}

/// Richardson on the geometric chain `n0, 2n0, …, 2^order·n0` eliminating the
/// `n^{-1}, …, n^{-order}` terms. `n0` is chosen as large as the data allows.
fn richardson_tableau(ratios: &[BigRational], order: u32) -> BigRational {
    let n_max = ratios.len();
    let mut order = order;
    while order > 0 && (1usize << order) > n_max {
        order -= 1;
    }
    let n0 = n_max >> order;
    let mut column: Vec<BigRational> = (0..=order).map(|k| ratios[(n0 << k) - 1].clone()).collect();
    for level in 1..=order {
        let factor = BigRational::from_integer(BigInt::one() << level);
        let denom = &factor - BigRational::one();
        column = column.windows(2).map(|w| (&factor * &w[1] - &w[0]) / &denom).collect();
    }
    column.swap_remove(0)
}

/// Extrapolate `lim f(n)/n^d` from `f(1), …, f(N)`, `N >= 4`.
pub fn richardson_limit(f: &[BigInt], degree: u32) -> Result<AsymptoticEstimate> {
    if f.len() < 4 {
        return Err(Error::TooShort { what: "Richardson extrapolation", needed: 4, got: f.len() });
    }
    let raw = normalized_ratios(f, degree);
    let ratios: Vec<BigRational> = raw.iter().map(|(_, r)| r.clone()).collect();
    let extrapolants = richardson_extrapolants(&ratios);
    let last = extrapolants.len() - 1;
    let extrapolated = extrapolants[last].clone();
    let error_indicator = (&extrapolants[last] - &extrapolants[last - 1]).abs();
    let refined = richardson_tableau(&ratios, degree);
    Ok(AsymptoticEstimate { degree, raw, extrapolated, error_indicator, refined })
}

/// Size of the tail window on which the `d`-th difference must be constant.
pub fn stabilization_window(len: usize) -> usize {
    (len / 4).max(3)
}

/// Leading coefficient of an eventual polynomial of degree `d`: the `d`-th finite
/// difference divided by `d!`, provided the difference is constant over the last
/// `max(3, N/4)` points. `None` means "not stabilized".
pub fn finite_difference_leading(f: &[BigInt], degree: u32) -> Option<BigRational> {
    let mut diffs: Vec<BigInt> = f.to_vec();
    for _ in 0..degree {
        if diffs.len() < 2 {
            return None;
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let window = stabilization_window(f.len());
    if diffs.len() < window {
        return None;
    }
    let tail = &diffs[diffs.len() - window..];
    if tail.iter().any(|v| v != &tail[0]) {
        return None;
    }
    let factorial: BigInt = (1..=degree).map(BigInt::from).product();
    Some(BigRational::new(tail[0].clone(), factorial))
}

/// Hilbert–Samuel colengths `λ(R/I^n)` for `n = 1..=n_max` of an m-primary ideal.
pub fn colengths(ideal: &MonomialIdeal, n_max: u32) -> Result<Vec<BigUint>> {
    if !ideal.saturate_irrelevant().is_unit() {
        return Err(Error::NotMPrimary);
    }
    let data = power_data(ideal, n_max, CountStrategy::default())?;
    Ok(data
        .iter()
        .map(|d| {
            let mut counter = GradedCounter::default();
            (0..=d.top_disagreement.max(-1)).map(|m| counter.count_standard(&d.power, m as u64)).sum()
        })
        .collect())
}

/// `e(I) = d!·(leading coefficient of λ(R/I^n))` for an m-primary monomial ideal.
pub fn multiplicity_mprimary(ideal: &MonomialIdeal, n_max: u32) -> Result<BigRational> {
    let d = ideal.dim() as u32;
    let f: Vec<BigInt> = colengths(ideal, n_max)?.into_iter().map(BigInt::from).collect();
    let leading = finite_difference_leading(&f, d)
        .ok_or(Error::NotStabilized { degree: d as usize, n_max: n_max as usize })?;
    let factorial: BigInt = (1..=d).map(BigInt::from).product();
    Ok(leading * BigRational::from_integer(factorial))
}

/// `dim_k (I^{bn})_{an}`, the Hilbert function of the diagonal subalgebra
/// `k[(I^b)_a]` in degree `n`.
pub fn diagonal_hilbert(ideal: &MonomialIdeal, a: u32, b: u32, n: u32) -> Result<BigUint> {
    if (a as u64) < b as u64 * ideal.max_generator_degree() {
        log::warn!(
            "diagonal ({a},{b}) is below b·(max generator degree) = {}; counting anyway",
            b as u64 * ideal.max_generator_degree()
        );
    }
    let power = if b == 0 || n == 0 { MonomialIdeal::unit(ideal.dim()) } else { ideal.power(b * n)? };
    Ok(GradedCounter::default().count(&power, a as u64 * n as u64))
}

/// [`diagonal_hilbert`] for `n = 1..=n_max`, reusing powers.
pub fn diagonal_hilbert_series(ideal: &MonomialIdeal, a: u32, b: u32, n_max: u32) -> Result<Vec<BigUint>> {
    if b == 0 {
        return (1..=n_max).map(|n| diagonal_hilbert(ideal, a, b, n)).collect();
    }
    if (a as u64) < b as u64 * ideal.max_generator_degree() {
        log::warn!("diagonal ({a},{b}) is below b·(max generator degree); counting anyway");
    }
    let step = ideal.power(b)?;
    let mut power = step.clone();
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        if n > 1 {
            power = power.multiply(&step)?;
        }
        out.push(GradedCounter::default().count(&power, a as u64 * n as u64));
    }
    Ok(out)
}

pub fn to_bigints(values: &[BigUint]) -> Vec<BigInt> {
    values.iter().cloned().map(BigInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(f: impl Fn(i64) -> i64, n: i64) -> Vec<BigInt> {
        (1..=n).map(|k| BigInt::from(f(k))).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn richardson_examples() {
        let est = richardson_limit(&seq(|n| n * n + n, 10), 2).unwrap();
        assert_eq!(est.extrapolated, rat(1, 1));
        assert!(est.is_exact_pair());
        let est = richardson_limit(&seq(|n| n * (n + 1) / 2, 10), 2).unwrap();
        assert_eq!(est.extrapolated, rat(1, 2));
        assert_eq!(est.refined, rat(1, 2));
        assert!(matches!(richardson_limit(&seq(|n| n, 3), 1), Err(Error::TooShort { .. })));
    }

    #[test]
    fn first_order_leaves_second_order_error() {
        // binomial(n+2, 3)/n³ = 1/6 + 1/(2n) + 1/(3n²)
        let f = seq(|n| (n + 2) * (n + 1) * n / 6, 30);
        let est = richardson_limit(&f, 3).unwrap();
        assert_eq!(est.extrapolated, rat(1, 6) - rat(1, 6 * 15 * 15));
        assert_eq!(est.refined, rat(1, 6));
    }

    #[test]
    fn tableau_is_exact_on_polynomials() {
        let f = seq(|n| 3 * n.pow(4) - 7 * n.pow(3) + n + 11, 40);
        assert_eq!(richardson_limit(&f, 4).unwrap().refined, rat(3, 1));
    }

    #[test]
    fn finite_difference_examples() {
        assert_eq!(finite_difference_leading(&seq(|n| 6 * n.pow(3), 12), 3), Some(rat(6, 1)));
        assert_eq!(finite_difference_leading(&seq(|n| n * (2 * n + 1), 12), 2), Some(rat(2, 1)));
        assert_eq!(finite_difference_leading(&seq(|n| (2 * n + 1) * 2 * n / 2, 12), 2), Some(rat(2, 1)));
        // Eventually polynomial: only the tail has to agree.
        assert_eq!(finite_difference_leading(&seq(|n| if n < 4 { 0 } else { n * n }, 20), 2), Some(rat(1, 1)));
        assert_eq!(finite_difference_leading(&seq(|n| 1 << n, 20), 2), None);
        assert_eq!(finite_difference_leading(&seq(|n| n, 3), 2), None);
    }

    #[test]
    fn multiplicities() {
        let m = MonomialIdeal::maximal(2);
        assert_eq!(multiplicity_mprimary(&m, 12).unwrap(), rat(1, 1));
        assert_eq!(multiplicity_mprimary(&m.power(2).unwrap(), 12).unwrap(), rat(4, 1));
        let i = MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(multiplicity_mprimary(&i, 8).unwrap(), rat(4, 1));
        let not_primary = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(multiplicity_mprimary(&not_primary, 8), Err(Error::NotMPrimary));
    }

    #[test]
    fn colengths_of_squares_of_coordinates() {
        // brute force: λ(R/(x²,y²)^n) for n ≤ 8 via count_standard over all degrees.
        let i = MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 2]]).unwrap();
        let got = colengths(&i, 8).unwrap();
        for (k, v) in got.iter().enumerate() {
            let n = k as u32 + 1;
            let p = i.power(n).unwrap();
            let brute: BigUint = (0..=4 * n as u64)
                .map(|m| crate::monomial::count_standard(&p, m, CountStrategy::Enumerate))
                .sum();
            assert_eq!(v, &brute);
        }
        let f = to_bigints(&got);
        assert_eq!(finite_difference_leading(&f, 2), Some(rat(2, 1)));
    }

    #[test]
    fn diagonal_examples() {
        let m2 = MonomialIdeal::maximal(2).power(2).unwrap();
        for n in 1..=6u32 {
            assert_eq!(diagonal_hilbert(&m2, 5, 1, n).unwrap(), BigUint::from(5 * n + 1));
        }
        let x = MonomialIdeal::from_exponents(2, &[&[1, 0]]).unwrap();
        for n in 1..=6u32 {
            assert_eq!(diagonal_hilbert(&x, 2, 1, n).unwrap(), BigUint::from(n + 1));
        }
        assert_eq!(diagonal_hilbert(&x, 2, 1, 0).unwrap(), BigUint::one());
        let series = diagonal_hilbert_series(&m2, 5, 1, 6).unwrap();
        assert_eq!(series, (1..=6u32).map(|n| BigUint::from(5 * n + 1)).collect::<Vec<_>>());
        // Eventually polynomial of degree d - 1 = 1.
        let big = diagonal_hilbert_series(&x, 3, 1, 16).unwrap();
        assert!(finite_difference_leading(&to_bigints(&big), 1).is_some());
    }
}
