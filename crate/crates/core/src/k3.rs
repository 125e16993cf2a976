//! The K3 surface with Picard lattice `(ℤ³, 4x² − 4y² − 4z²)`, a curve `C ~ (a,b,c)`
//! on it embedded in ℙ³, and σ(n) = Σ_{m ≤ e·n} h⁰(X, mH̃ − nE) on the blow-up `X` of
//! ℙ³ along `C`.
//!
//! σ(n) is computed twice: by unrolling the restriction sequence
//! `0 → O_X((m−4)H̃ − (n−1)E) → O_X(mH̃ − nE) → O_S(mH − nC) → 0` down to ℙ³
//! ([`sigma_recursion`]), and by the regrouped sum of quadratic-form values
//! ([`sigma_decomposition`]). The limit σ(n)/n⁴ lives in ℚ(√(b²+c²)).
//!
//! Every comparison against λ₂ = a + √(b²+c²) is an integer comparison.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::asymptotics::richardson_extrapolants;
use crate::error::{Error, Result};
use crate::numeric::{binomial, isqrt, is_perfect_square, BigRational, QuadraticNumber};

/// A divisor class `(x, y, z)` in `Pic(S) ≅ ℤ³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl DivisorClass {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        DivisorClass { x, y, z }
    }

    /// Hyperplane class `H = (1, 0, 0)`.
    pub const HYPERPLANE: DivisorClass = DivisorClass::new(1, 0, 0);

    pub fn pairing(&self, other: &DivisorClass) -> BigInt {
        let (a, b) = (self, other);
        BigInt::from(4) * (BigInt::from(a.x) * b.x - BigInt::from(a.y) * b.y - BigInt::from(a.z) * b.z)
    }

    pub fn self_int(&self) -> BigInt {
        self.pairing(self)
    }

    /// `m·self − n·other`
    pub fn combination(&self, m: i64, other: &DivisorClass, n: i64) -> DivisorClass {
        DivisorClass::new(m * self.x - n * other.x, m * self.y - n * other.y, m * self.z - n * other.z)
    }
}

/// The line bundle `mH̃ − nE` on the blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlowupClass {
    pub m: i64,
    pub n: u32,
}

/// Curve class `(a, b, c)` and summation slope `e`, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Params {
    a: i64,
    b: i64,
    c: i64,
    e: i64,
    radicand: u64,
}

impl Default for K3Params {
    fn default() -> Self {
        K3Params::new(4, 3, 2, 8).expect("default parameters are valid")
    }
}

impl K3Params {
    pub fn new(a: i64, b: i64, c: i64, e: i64) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidK3Params { a, b, c, e, reason: reason.to_string() };
        if a <= 0 {
            return Err(invalid("need a > 0"));
        }
        let d = BigInt::from(b) * b + BigInt::from(c) * c;
        if BigInt::from(a) * a <= d {
            return Err(invalid("need a² − b² − c² > 0 (A ample)"));
        }
        let radicand = u64::try_from(&d).map_err(|_| invalid("b² + c² out of range"))?;
        if is_perfect_square(&BigUint::from(radicand)) {
            return Err(invalid("need √(b² + c²) irrational"));
        }
        // λ₂ > 7  ⟺  a > 7, or D > (7 − a)².
        if a <= 7 && d <= BigInt::from(7 - a).pow(2) {
            return Err(invalid("need λ₂ = a + √(b² + c²) > 7"));
        }
        // e > λ₂  ⟺  e > a and (e − a)² > D.
        if e <= a || BigInt::from(e - a).pow(2) <= d {
            return Err(invalid("need e > λ₂ = a + √(b² + c²)"));
        }
        Ok(K3Params { a, b, c, e, radicand })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn e(&self) -> i64 {
        self.e
    }

    /// `D = b² + c²`.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn curve_class(&self) -> DivisorClass {
        DivisorClass::new(self.a, self.b, self.c)
    }

    fn quad(&self, p: i64, q: i64) -> QuadraticNumber {
        QuadraticNumber::new(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()), self.radicand)
            .expect("radicand validated")
    }

    /// λ₁ = a − √D.
    pub fn lambda1(&self) -> QuadraticNumber {
        self.quad(self.a, -1)
    }

    /// λ₂ = a + √D.
    pub fn lambda2(&self) -> QuadraticNumber {
        self.quad(self.a, 1)
    }

    /// λ = λ₂ − 4.
    pub fn lambda(&self) -> QuadraticNumber {
        self.quad(self.a - 4, 1)
    }

    fn d(&self) -> BigInt {
        BigInt::from(self.radicand)
    }

    /// `m > λ₂·n`, decided in integers. For `n >= 1` equality is impossible.
    pub fn is_strictly_above(&self, m: i64, n: u32) -> bool {
        if n == 0 {
            return m > 0;
        }
        let n = BigInt::from(n);
        let s = BigInt::from(m) - BigInt::from(self.a) * &n;
        s.is_positive() && &s * &s > self.d() * &n * &n
    }

    /// `[λ·l] = (a − 4)·l + ⌊√(D·l²)⌋`.
    pub fn floor_lambda_times(&self, l: u64) -> BigInt {
        let l = BigInt::from(l);
        let root = isqrt(&(self.d() * &l * &l)).expect("non-negative");
        BigInt::from(self.a - 4) * l + root
    }

    /// `λ·t < r` for `t >= 0`.
    fn lambda_times_below(&self, t: &BigInt, r: &BigInt) -> bool {
        if t.is_zero() {
            return r.is_positive();
        }
        let slack = r - BigInt::from(self.a - 4) * t;
        slack.is_positive() && &slack * &slack > self.d() * t * t
    }

    /// `[r/λ]`: the largest `t >= 0` with `λ·t < r`, and 0 for `r = 0`.
    pub fn floor_r_over_lambda(&self, r: u64) -> BigInt {
        let r = BigInt::from(r);
        if r.is_zero() {
            return BigInt::zero();
        }
        // λ > 3, so the answer lies in [0, r].
        let (mut lo, mut hi) = (BigInt::zero(), r.clone());
        while lo < hi {
            let mid: BigInt = (&lo + &hi + 1u32) >> 1u32;
            if self.lambda_times_below(&mid, &r) {
                lo = mid;
            } else {
                hi = mid - 1u32;
            }
        }
        lo
    }

    /// `h⁰(S, mH − nC)` for `n >= 1`: zero below λ₂·n, else `½(mH − nC)² + 2`.
    pub fn h0_surface(&self, m: i64, n: u32) -> BigInt {
        if !self.is_strictly_above(m, n) {
            return BigInt::zero();
        }
        let class = DivisorClass::HYPERPLANE.combination(m, &self.curve_class(), n as i64);
        class.self_int() / 2 + 2
    }

    /// `P(s, r) = ½((r + 4s)H − sC)² = 2((r + (4 − a)s)² − D·s²)`.
    pub fn p(&self, s: i64, r: i64) -> BigInt {
        let s = BigInt::from(s);
        let shifted = BigInt::from(r) + BigInt::from(4 - self.a) * &s;
        BigInt::from(2) * (&shifted * &shifted - self.d() * &s * &s)
    }

    /// `Q(s, r) = Σ_{k=1}^{s} P(k, r)` in closed form; zero for `s < 1`.
    pub fn q(&self, s: i64, r: i64) -> BigInt {
        if s < 1 {
            return BigInt::zero();
        }
        // Σ (r + βk)² − D k² = s r² + β r s(s+1) + (β² − D) s(s+1)(2s+1)/6
        let s = BigInt::from(s);
        let r = BigInt::from(r);
        let beta = BigInt::from(4 - self.a);
        let s1 = &s * (&s + 1u32);
        let s2: BigInt = (&s1 * (BigInt::from(2) * &s + 1u32)) / 6;
        let inner = &s * &r * &r + &beta * &r * &s1 + (&beta * &beta - self.d()) * s2;
        BigInt::from(2) * inner
    }

    /// `U(n) = Σ_{r=0}^{(e−4)n} h⁰(O_ℙ³(r)) = binomial((e−4)n + 4, 4)`.
    pub fn u(&self, n: u32) -> BigInt {
        BigInt::from(binomial((self.e - 4) * n as i64 + 4, 4))
    }

    /// `V(n) = 2(Σ_{r=0}^{[λn]} [r/λ] + n((e−4)n − [λn]))`.
    pub fn v(&self, n: u32) -> BigInt {
        let top = self.floor_lambda_times(n as u64);
        let top_u = u64::try_from(&top).expect("[λn] >= 0");
        let floors: BigInt = (0..=top_u).map(|r| self.floor_r_over_lambda(r)).sum();
        let n_big = BigInt::from(n);
        let above = BigInt::from(self.e - 4) * &n_big - top;
        BigInt::from(2) * (floors + n_big * above)
    }
}

/// Memo table of `h⁰(X, mH̃ − nE)`, one row per `n`, each row covering
/// `m ∈ [0, len)`. Negative `m` always gives 0.
#[derive(Debug)]
pub struct BlowupCache<'p> {
    params: &'p K3Params,
    rows: Vec<Vec<BigInt>>,
}

impl<'p> BlowupCache<'p> {
    pub fn new(params: &'p K3Params) -> Self {
        BlowupCache { params, rows: Vec::new() }
    }

    fn ensure(&mut self, m: i64, n: u32) {
        if m < 0 {
            return;
        }
        // Level k of the chain ending at (m, n) needs m − 4(n − k).
        for k in 0..=n {
            let need = m - 4 * (n - k) as i64;
            if need < 0 {
                continue;
            }
            let k = k as usize;
            if self.rows.len() <= k {
                self.rows.resize_with(k + 1, Vec::new);
            }
            let start = self.rows[k].len() as i64;
            for mm in start..=need {
                let value = if k == 0 {
                    BigInt::from(binomial(mm + 3, 3))
                } else {
                    let below = self.lookup(mm - 4, k as u32 - 1);
                    below + self.params.h0_surface(mm, k as u32)
                };
                self.rows[k].push(value);
            }
        }
    }

    fn lookup(&self, m: i64, n: u32) -> BigInt {
        if m < 0 {
            BigInt::zero()
        } else {
            self.rows[n as usize][m as usize].clone()
        }
    }

    /// `h⁰(X, mH̃ − nE)`; for `n = 0` this is `h⁰(O_ℙ³(m))`.
    pub fn h0(&mut self, class: BlowupClass) -> BigInt {
        self.ensure(class.m, class.n);
        self.lookup(class.m, class.n)
    }
}

/// `h⁰(X, mH̃ − nE)` with a throwaway cache.
pub fn h0_blowup(m: i64, n: u32, params: &K3Params) -> BigInt {
    BlowupCache::new(params).h0(BlowupClass { m, n })
}

/// σ(n) = Σ_{m=0}^{e·n} h⁰(X, mH̃ − nE).
pub fn sigma_recursion(n: u32, cache: &mut BlowupCache<'_>) -> BigInt {
    let top = cache.params.e * n as i64;
    cache.ensure(top, n);
    (0..=top).map(|m| cache.lookup(m, n)).sum()
}

/// σ(n) from the regrouped sum
/// `Σ_{l<n} Σ_{r=[λl]+1}^{[λn]} P(l,r) + Σ_{r=[λn]+1}^{(e−4)n} Q(n,r) + U(n) + V(n)`.
pub fn sigma_decomposition(n: u32, params: &K3Params) -> BigInt {
    SigmaParts::of(n, params).total()
}

/// The four pieces of [`sigma_decomposition`], for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaParts {
    pub p_sum: BigInt,
    pub q_sum: BigInt,
    pub u: BigInt,
    pub v: BigInt,
}

/// `lim σ(n)/n⁴ = A + B − (λ³/6 + ½(4−a)·λ² + ½((4−a)² − D)·λ)` with
/// `A = ⅔(e−4)³ + (4−a)(e−4)² + ⅔((4−a)² − D)(e−4)` and `B = (e−4)⁴/24`.
///
/// Only `a = 4` is accepted: the λ² coefficient has two printed readings,
/// `½(4−a)` and `½(4−a)²`, and they agree only there.
pub fn closed_form_limit(params: &K3Params) -> Result<QuadraticNumber> {
    let with_linear = limit_with_lambda_sq_coefficient(params, BigRational::new((4 - params.a).into(), 2.into()));
    if params.a == 4 {
        return Ok(with_linear);
    }
    let with_square = limit_with_lambda_sq_coefficient(
        params,
        BigRational::new(BigInt::from(4 - params.a).pow(2), 2.into()),
    );
    Err(Error::UnsupportedCurveDegree {
        a: params.a,
        variant_linear: crate::io::quadratic_text(&with_linear),
        variant_square: crate::io::quadratic_text(&with_square),
    })
}

fn limit_with_lambda_sq_coefficient(params: &K3Params, lambda_sq_coeff: BigRational) -> QuadraticNumber {
    let int = |v: i64| BigRational::from_integer(v.into());
    let d = BigRational::from_integer(params.d());
    let beta = int(4 - params.a);
    let span = int(params.e - 4);
    let two_thirds = BigRational::new(2.into(), 3.into());
    let a_coeff = &two_thirds * span.pow(3) + &beta * span.pow(2) + &two_thirds * (&beta * &beta - &d) * &span;
    let b_coeff = span.pow(4) / int(24);
    let lambda = params.lambda();
    let correction = &(&lambda.pow(3).scale(&BigRational::new(1.into(), 6.into()))
        + &lambda.pow(2).scale(&lambda_sq_coeff))
        + &lambda.scale(&((&beta * &beta - &d) / int(2)));
    let rational = QuadraticNumber::from_rational(a_coeff + b_coeff, params.radicand).expect("valid radicand");
    &rational - &correction
}

/// One row of [`convergence_table`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    #[serde(serialize_with = "crate::io::bigint_string")]
    pub sigma: BigInt,
    #[serde(skip)]
    pub ratio: BigRational,
    /// `2·ratio(n) − ratio(n/2)` for even `n`.
    #[serde(skip)]
    pub extrapolant: Option<BigRational>,
}

#[derive(Clone, Debug)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub limit: QuadraticNumber,
}

impl ConvergenceTable {
    pub fn final_extrapolant(&self) -> Option<&BigRational> {
        self.rows.iter().rev().find_map(|r| r.extrapolant.as_ref())
    }

    /// `|x − L|` for a rational `x`, exact in ℚ(√D).
    pub fn distance_to_limit(&self, x: &BigRational) -> QuadraticNumber {
        let x = QuadraticNumber::from_rational(x.clone(), self.limit.radicand()).expect("valid radicand");
        let diff = &x - &self.limit;
        if diff.signum() == Ordering::Less {
            -diff
        } else {
            diff
        }
    }

    pub fn limit_decimal(&self) -> String {
        self.limit.to_decimal(30)
    }
}

/// σ(n) and σ(n)/n⁴ for `n = 1..=n_max` from one shared cache, plus first-order
/// Richardson extrapolants at each even `n` (pair `(n/2, n)`).
pub fn convergence_table(params: &K3Params, n_max: u32) -> Result<ConvergenceTable> {
    if n_max < 8 {
        return Err(Error::TooShort { what: "K3 convergence table", needed: 8, got: n_max as usize });
    }
    let limit = closed_form_limit(params)?;
    let mut cache = BlowupCache::new(params);
    let sigmas: Vec<BigInt> = (1..=n_max).map(|n| sigma_recursion(n, &mut cache)).collect();
    let rows = convergence_rows(sigmas);
    Ok(ConvergenceTable { rows, limit })
}

/// Rows for `σ(1), σ(2), …` with ratios and even-`n` extrapolants.
pub fn convergence_rows(sigmas: Vec<BigInt>) -> Vec<ConvergenceRow> {
    let ratios: Vec<BigRational> = sigmas
        .iter()
        .enumerate()
        .map(|(i, s)| BigRational::new(s.clone(), BigInt::from(i as u64 + 1).pow(4)))
        .collect();
    let extrapolants = richardson_extrapolants(&ratios);
    sigmas
        .into_iter()
        .zip(ratios)
        .enumerate()
        .map(|(i, (sigma, ratio))| {
            let n = i as u32 + 1;
            let extrapolant = n.is_even().then(|| extrapolants[n as usize / 2 - 1].clone());
            ConvergenceRow { n, sigma, ratio, extrapolant }
        })
        .collect()
}

/// Indices `n <= n_max` where the two σ pipelines disagree (empty on success).
pub fn cross_check(params: &K3Params, n_max: u32) -> Vec<(u32, BigInt, BigInt)> {
    let mut cache = BlowupCache::new(params);
    (1..=n_max)
        .filter_map(|n| {
            let rec = sigma_recursion(n, &mut cache);
            let dec = sigma_decomposition(n, params);
            (rec != dec).then_some((n, rec, dec))
        })
        .collect()
}

impl SigmaParts {
    pub fn of(n: u32, params: &K3Params) -> Self {
        let top_n = i64::try_from(&params.floor_lambda_times(n as u64)).expect("fits");
        let mut p_sum = BigInt::zero();
        for l in 1..n as i64 {
            let start = i64::try_from(&params.floor_lambda_times(l as u64)).expect("fits") + 1;
            p_sum += (start..=top_n).map(|r| params.p(l, r)).sum::<BigInt>();
        }
        let q_sum = (top_n + 1..=(params.e - 4) * n as i64).map(|r| params.q(n as i64, r)).sum();
        SigmaParts { p_sum, q_sum, u: params.u(n), v: params.v(n) }
    }

    pub fn total(&self) -> BigInt {
        &self.p_sum + &self.q_sum + &self.u + &self.v
    }
}
