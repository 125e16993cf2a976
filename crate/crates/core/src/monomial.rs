//! Monomial ideals in `k[x_1, …, x_d]` and exact counting of their graded pieces.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::binomial;

/// Exponents of a monomial `x_1^{e_1} ⋯ x_d^{e_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    /// The variable `x_index`.
    pub fn variable(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        ExponentVector(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// `self | other`
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn product(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// A monomial ideal stored by its minimal generators.
///
/// Generators are kept sorted (by degree, then lexicographically), so two values
/// compare equal exactly when they are the same ideal. The zero ideal has no
/// generators; the unit ideal is generated by the zero exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

/// Reduce a generating set to its divisibility antichain.
pub fn minimalize(dim: usize, gens: impl IntoIterator<Item = ExponentVector>) -> Result<MonomialIdeal> {
    let mut gens: Vec<ExponentVector> = gens.into_iter().collect();
    if let Some(bad) = gens.iter().find(|g| g.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
    }
    Ok(MonomialIdeal { dim, generators: minimal_antichain(&mut gens) })
}

fn minimal_antichain(gens: &mut Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<ExponentVector> = Vec::with_capacity(gens.len());
    for g in gens.drain(..) {
        // Any divisor of g has degree <= deg g, so it is already in `kept`.
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        minimalize(dim, gens)
    }

    /// Convenience constructor from raw exponent rows.
    pub fn from_exponents(dim: usize, rows: &[&[u32]]) -> Result<Self> {
        minimalize(dim, rows.iter().map(|r| ExponentVector::new(r.to_vec())))
    }

    pub fn zero(dim: usize) -> Self {
        MonomialIdeal { dim, generators: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal { dim, generators: vec![ExponentVector::zero(dim)] }
    }

    /// The homogeneous maximal ideal `(x_1, …, x_d)`.
    pub fn maximal(dim: usize) -> Self {
        MonomialIdeal { dim, generators: (0..dim).rev().map(|i| ExponentVector::variable(dim, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.first().is_some_and(|g| g.degree() == 0)
    }

    /// Largest generator degree, 0 for the zero ideal.
    pub fn max_generator_degree(&self) -> u64 {
        self.generators.iter().map(ExponentVector::degree).max().unwrap_or(0)
    }

    pub fn min_generator_degree(&self) -> Option<u64> {
        self.generators.first().map(ExponentVector::degree)
    }

    pub fn contains(&self, u: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(u))
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    fn same_dim(&self, other: &MonomialIdeal) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, found: other.dim })
        }
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_dim(other)?;
        let mut prods = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                prods.push(a.product(b));
            }
        }
        Ok(MonomialIdeal { dim: self.dim, generators: minimal_antichain(&mut prods) })
    }

    /// `I^n` for `n >= 1`, minimalizing after every multiplication.
    pub fn power(&self, n: u32) -> Result<MonomialIdeal> {
        if n == 0 {
            return Err(Error::ZeroPower(n));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dim {
            Ok(())
        } else {
            Err(Error::VariableOutOfRange { index, dim: self.dim })
        }
    }

    /// `I : x_i` (0-based variable index).
    pub fn colon_var(&self, index: usize) -> Result<MonomialIdeal> {
        self.check_index(index)?;
        let mut gens: Vec<_> = self
            .generators
            .iter()
            .map(|g| {
                let mut e = g.0.clone();
                e[index] = e[index].saturating_sub(1);
                ExponentVector(e)
            })
            .collect();
        Ok(MonomialIdeal { dim: self.dim, generators: minimal_antichain(&mut gens) })
    }

    /// `I : x_i^∞` (0-based variable index): drop the i-th exponent of every generator.
    pub fn colon_var_infinity(&self, index: usize) -> Result<MonomialIdeal> {
        self.check_index(index)?;
        let mut gens: Vec<_> = self
            .generators
            .iter()
            .map(|g| {
                let mut e = g.0.clone();
                e[index] = 0;
                ExponentVector(e)
            })
            .collect();
        Ok(MonomialIdeal { dim: self.dim, generators: minimal_antichain(&mut gens) })
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_dim(other)?;
        let mut lcms = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                lcms.push(a.lcm(b));
            }
        }
        Ok(MonomialIdeal { dim: self.dim, generators: minimal_antichain(&mut lcms) })
    }

    /// `I : m^∞` for `m = (x_1, …, x_d)`, as `⋂_i (I : x_i^∞)`.
    ///
    /// Note `I : (x_1⋯x_d)^∞` is a different ideal (it is the unit ideal for `I = (x_1)`).
    pub fn saturate_irrelevant(&self) -> MonomialIdeal {
        if self.is_zero() || self.dim == 0 {
            return self.clone();
        }
        let mut acc = self.colon_var_infinity(0).expect("index in range");
        for i in 1..self.dim {
            let next = self.colon_var_infinity(i).expect("index in range");
            acc = acc.intersect(&next).expect("same dimension");
        }
        acc
    }

    /// `I + J`
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_dim(other)?;
        minimalize(self.dim, self.generators.iter().chain(&other.generators).cloned())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", g.0)?;
        }
        write!(f, ")")
    }
}

/// Number of monomials of degree `m` in `vars` variables.
pub fn monomials_of_degree(m: u64, vars: usize) -> BigUint {
    if vars == 0 {
        return if m == 0 { BigUint::from(1u32) } else { BigUint::zero() };
    }
    binomial(m as i64 + vars as i64 - 1, vars as u32 - 1)
}

/// How [`count_graded_piece`] walks degree `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CountStrategy {
    /// Visit every degree-m monomial and test membership. Slow, obviously right.
    Enumerate,
    /// Split on a pivot variable: `count(I, m) = count(I|_{x_i=0}, m) + count(I : x_i, m-1)`.
    #[default]
    Pivot,
}

/// Counts `dim_k I_m`, reusing a pivot memo table across degrees of one ideal
/// family. The memo lives as long as the counter.
#[derive(Debug, Default)]
pub struct GradedCounter {
    strategy: CountStrategy,
    memo: HashMap<(Vec<Vec<u32>>, u64), BigUint>,
}

impl GradedCounter {
    pub fn new(strategy: CountStrategy) -> Self {
        GradedCounter { strategy, memo: HashMap::new() }
    }

    pub fn strategy(&self) -> CountStrategy {
        self.strategy
    }

    /// Number of degree-`m` monomials lying in `ideal`.
    pub fn count(&mut self, ideal: &MonomialIdeal, m: u64) -> BigUint {
        match self.strategy {
            CountStrategy::Enumerate => BigUint::from(enumerate_count(ideal, m)),
            CountStrategy::Pivot => {
                let gens: Vec<Vec<u32>> = ideal.generators.iter().map(|g| g.0.clone()).collect();
                self.pivot(gens, ideal.dim, m)
            }
        }
    }

    /// Number of degree-`m` monomials outside `ideal`.
    pub fn count_standard(&mut self, ideal: &MonomialIdeal, m: u64) -> BigUint {
        monomials_of_degree(m, ideal.dim) - self.count(ideal, m)
    }

    // `gens` is a minimal generating set in `dim` variables, sorted by degree.
    fn pivot(&mut self, gens: Vec<Vec<u32>>, dim: usize, m: u64) -> BigUint {
        let Some(first) = gens.first() else {
            return BigUint::zero();
        };
        let min_deg: u64 = first.iter().map(|&e| e as u64).sum();
        if min_deg == 0 {
            return monomials_of_degree(m, dim);
        }
        if m < min_deg {
            return BigUint::zero();
        }
        if dim == 1 {
            return BigUint::from(1u32);
        }
        let key = (gens, m);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let gens = &key.0;

        let mut pivot = 0;
        let mut best = 0;
        for g in gens {
            for (i, &e) in g.iter().enumerate() {
                if e > best {
                    best = e;
                    pivot = i;
                }
            }
        }

        // Monomials free of x_pivot: generators free of x_pivot, one variable fewer.
        let restricted: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| g[pivot] == 0)
            .map(|g| g.iter().enumerate().filter(|&(i, _)| i != pivot).map(|(_, &e)| e).collect())
            .collect();
        // Monomials x_pivot·v with v ∈ I : x_pivot of degree m - 1.
        let mut colon: Vec<ExponentVector> = gens
            .iter()
            .map(|g| {
                let mut e = g.clone();
                e[pivot] -= (e[pivot] > 0) as u32;
                ExponentVector(e)
            })
            .collect();
        let colon: Vec<Vec<u32>> = minimal_antichain(&mut colon).into_iter().map(|g| g.0).collect();

        let total = self.pivot(restricted, dim - 1, m) + self.pivot(colon, dim, m - 1);
        self.memo.insert(key, total.clone());
        total
    }
}

fn enumerate_count(ideal: &MonomialIdeal, m: u64) -> u64 {
    let mut count = 0;
    for_each_monomial(ideal.dim, m, |u| {
        if ideal.contains(u) {
            count += 1;
        }
    });
    count
}

/// Calls `f` on every exponent vector of total degree `m` in `dim` variables.
pub fn for_each_monomial(dim: usize, m: u64, mut f: impl FnMut(&ExponentVector)) {
    if dim == 0 {
        if m == 0 {
            f(&ExponentVector(Vec::new()));
        }
        return;
    }
    let mut e = ExponentVector(vec![0; dim]);
    fn rec(e: &mut ExponentVector, pos: usize, left: u64, f: &mut impl FnMut(&ExponentVector)) {
        if pos + 1 == e.0.len() {
            e.0[pos] = left as u32;
            f(e);
            return;
        }
        for k in 0..=left {
            e.0[pos] = k as u32;
            rec(e, pos + 1, left - k, f);
        }
        e.0[pos] = 0;
    }
    rec(&mut e, 0, m, &mut f);
}

/// Number of degree-`m` monomials in `ideal`.
pub fn count_graded_piece(ideal: &MonomialIdeal, m: u64, strategy: CountStrategy) -> BigUint {
    GradedCounter::new(strategy).count(ideal, m)
}

/// Number of degree-`m` monomials not in `ideal`.
pub fn count_standard(ideal: &MonomialIdeal, m: u64, strategy: CountStrategy) -> BigUint {
    GradedCounter::new(strategy).count_standard(ideal, m)
}

/// Largest degree in which `lower ⊊ upper` differ, or -1 if they are equal.
///
/// Scans upward and stops at the first degree `m* >= max generator degree of upper`
/// where the counts agree: every monomial of `upper` of degree `m*+1` is `x_i` times
/// one of degree `m*`, hence lies in `lower` too.
pub fn top_disagreement_degree(lower: &MonomialIdeal, upper: &MonomialIdeal, counter: &mut GradedCounter) -> Result<i64> {
    if lower.dim != upper.dim {
        return Err(Error::DimensionMismatch { expected: upper.dim, found: lower.dim });
    }
    if let Some(g) = lower.generators.iter().find(|g| !upper.contains(g)) {
        return Err(Error::NotContained(format!("{:?}", g.exponents())));
    }
    let floor = upper.max_generator_degree();
    let mut top = -1;
    let mut m = 0u64;
    loop {
        let differs = counter.count(upper, m) != counter.count(lower, m);
        if differs {
            top = m as i64;
        } else if m >= floor {
            return Ok(top);
        }
        m += 1;
    }
}
