//! Length of `H^0_m(R/I^n)` for monomial ideals and its split into a geometric
//! part σ(n) (graded pieces of the saturation) and an algebraic part τ(n)
//! (graded pieces of `I^n` itself), both summed up to degree `e·n`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{top_disagreement_degree, CountStrategy, GradedCounter, MonomialIdeal};

/// One row of a length table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthRecord {
    pub n: u32,
    #[serde(with = "crate::io::biguint_string")]
    pub lambda: BigUint,
    #[serde(with = "crate::io::biguint_string")]
    pub sigma: BigUint,
    #[serde(with = "crate::io::biguint_string")]
    pub tau: BigUint,
    #[serde(rename = "e")]
    pub cutoff_e: u32,
}

/// `I^n`, its saturation, and the top degree where they differ.
#[derive(Clone, Debug)]
pub struct PowerData {
    pub n: u32,
    pub power: MonomialIdeal,
    pub saturation: MonomialIdeal,
    pub top_disagreement: i64,
}

fn check_depth(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.dim() < 2 {
        Err(Error::DepthHypothesis(ideal.dim()))
    } else {
        Ok(())
    }
}

/// Powers `I^1, …, I^{n_max}` with their saturations, built incrementally.
pub fn power_data(ideal: &MonomialIdeal, n_max: u32, strategy: CountStrategy) -> Result<Vec<PowerData>> {
    let mut out = Vec::with_capacity(n_max as usize);
    let mut power = ideal.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.multiply(ideal)?;
        }
        let saturation = power.saturate_irrelevant();
        let mut counter = GradedCounter::new(strategy);
        let top = top_disagreement_degree(&power, &saturation, &mut counter)?;
        out.push(PowerData { n, power: power.clone(), saturation, top_disagreement: top });
    }
    Ok(out)
}

/// `λ(sat(J)/J)` given the top disagreement degree of `J ⊆ sat(J)`.
fn saturation_gap(data: &PowerData, counter: &mut GradedCounter) -> BigUint {
    let mut total = BigUint::zero();
    for m in 0..=data.top_disagreement.max(-1) {
        let m = m as u64;
        total += counter.count(&data.saturation, m) - counter.count(&data.power, m);
    }
    total
}

/// `λ(H^0_m(R/I^n)) = λ(sat(I^n)/I^n)`.
pub fn h0_length(ideal: &MonomialIdeal, n: u32) -> Result<BigUint> {
    h0_length_with(ideal, n, CountStrategy::default())
}

pub fn h0_length_with(ideal: &MonomialIdeal, n: u32, strategy: CountStrategy) -> Result<BigUint> {
    check_depth(ideal)?;
    let power = ideal.power(n)?;
    let saturation = power.saturate_irrelevant();
    let mut counter = GradedCounter::new(strategy);
    let top = top_disagreement_degree(&power, &saturation, &mut counter)?;
    let data = PowerData { n, power, saturation, top_disagreement: top };
    Ok(saturation_gap(&data, &mut counter))
}

fn graded_sum(ideal: &MonomialIdeal, up_to: u64, counter: &mut GradedCounter) -> BigUint {
    (0..=up_to).map(|m| counter.count(ideal, m)).sum()
}

/// σ(n) = Σ_{m=0}^{e·n} dim sat(I^n)_m.
pub fn sigma(ideal: &MonomialIdeal, n: u32, e: u32) -> Result<BigUint> {
    let sat = ideal.power(n)?.saturate_irrelevant();
    Ok(graded_sum(&sat, e as u64 * n as u64, &mut GradedCounter::default()))
}

/// τ(n) = Σ_{m=0}^{e·n} dim (I^n)_m.
pub fn tau(ideal: &MonomialIdeal, n: u32, e: u32) -> Result<BigUint> {
    let power = ideal.power(n)?;
    Ok(graded_sum(&power, e as u64 * n as u64, &mut GradedCounter::default()))
}

fn swanson_from(ideal: &MonomialIdeal, data: &[PowerData]) -> u32 {
    let floor = ideal.max_generator_degree().max(1);
    data.iter()
        .map(|d| {
            let need = (d.top_disagreement + 1) as u64;
            need.div_ceil(d.n as u64)
        })
        .fold(floor, u64::max) as u32
}

/// Smallest slope `e` (at least the largest generator degree) such that
/// `(I^n)_m = sat(I^n)_m` for all `m >= e·n`, observed over `n <= n_max`.
pub fn empirical_swanson_e(ideal: &MonomialIdeal, n_max: u32) -> Result<u32> {
    if n_max == 0 {
        return Err(Error::TooShort { what: "Swanson cutoff search", needed: 1, got: 0 });
    }
    let data = power_data(ideal, n_max, CountStrategy::default())?;
    Ok(swanson_from(ideal, &data))
}

/// Rows `n = 1..=n_max`; `e` defaults to [`empirical_swanson_e`].
pub fn length_table(ideal: &MonomialIdeal, n_max: u32, e: Option<u32>) -> Result<Vec<LengthRecord>> {
    length_table_with(ideal, n_max, e, CountStrategy::default())
}

pub fn length_table_with(
    ideal: &MonomialIdeal,
    n_max: u32,
    e: Option<u32>,
    strategy: CountStrategy,
) -> Result<Vec<LengthRecord>> {
    check_depth(ideal)?;
    if n_max == 0 {
        return Err(Error::TooShort { what: "length table", needed: 1, got: 0 });
    }
    let data = power_data(ideal, n_max, strategy)?;
    let e = e.unwrap_or_else(|| swanson_from(ideal, &data));
    let records = data
        .iter()
        .map(|d| {
            let mut counter = GradedCounter::new(strategy);
            let lambda = saturation_gap(d, &mut counter);
            let up_to = e as u64 * d.n as u64;
            let sigma = graded_sum(&d.saturation, up_to, &mut counter);
            let tau = graded_sum(&d.power, up_to, &mut counter);
            LengthRecord { n: d.n, lambda, sigma, tau, cutoff_e: e }
        })
        .collect();
    Ok(records)
}
