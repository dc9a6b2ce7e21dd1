//! Exact counting formulas over arbitrary-precision integers and rationals.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::model::FeatureSpace;
use crate::{Error, Result};

/// Largest node count accepted by [`count_tournaments`] and
/// [`prob_irreducible`].
pub const MAX_NODES: usize = 128;

/// Exact nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactCount(pub BigUint);

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ExactCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

/// Exact rational in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactProbability(pub BigRational);

impl ExactProbability {
    fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() || value > BigRational::one() {
            return Err(Error::Invariant(format!("probability {value} outside [0, 1]")));
        }
        Ok(ExactProbability(value))
    }

    /// `p / q` in lowest terms.
    pub fn fraction(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    /// Decimal rendering with `digits` places, rounded half to even.
    pub fn decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self.0.numer() * &scale;
        let denom = self.0.denom();
        let (mut q, r) = scaled.div_rem(denom);
        let twice = r * 2u32;
        if twice > *denom || (twice == *denom && q.is_odd()) {
            q += 1u32;
        }
        let text = q.to_string();
        if digits == 0 {
            return text;
        }
        let padded = format!("{text:0>width$}", width = digits + 1);
        let (int, frac) = padded.split_at(padded.len() - digits);
        format!("{int}.{frac}")
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fraction())
    }
}

fn pow2(exp: usize) -> BigUint {
    BigUint::one() << exp
}

fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn check_nodes(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("node count must be at least 1".into()));
    }
    if m > MAX_NODES {
        return Err(Error::LimitExceeded { what: "node count", value: m, limit: MAX_NODES });
    }
    Ok(())
}

/// Partitions of `m` into odd parts as multiplicity vectors `d[i]`.
fn odd_partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, largest: usize, d: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(d.clone());
            return;
        }
        let mut part = largest.min(rest);
        if part.is_multiple_of(2) {
            part -= 1;
        }
        while part >= 1 {
            d[part] += 1;
            go(rest - part, part, d, out);
            d[part] -= 1;
            if part < 2 {
                break;
            }
            part -= 2;
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut vec![0; m + 1], &mut out);
    out
}

/// Number of tournaments on `m` unlabeled nodes, `T(M)`.
pub fn count_tournaments(m: usize) -> Result<ExactCount> {
    check_nodes(m)?;
    let mut total = BigRational::zero();
    for d in odd_partitions(m) {
        let parts: Vec<usize> = (1..=m).filter(|&i| d[i] > 0).collect();
        let mut twice_d = 0usize;
        for &i in &parts {
            for &j in &parts {
                twice_d += d[i] * d[j] * i.gcd(&j);
            }
        }
        twice_d -= parts.iter().map(|&i| d[i]).sum::<usize>();
        let n: BigUint = parts.iter().map(|&i| BigUint::from(i).pow(d[i] as u32) * factorial(d[i])).product();
        total += Ratio::new(BigInt::from(pow2(twice_d / 2)), BigInt::from(n));
    }
    if !total.is_integer() {
        return Err(Error::Invariant(format!("T({m}) is not an integer: {total}")));
    }
    Ok(ExactCount(total.to_integer().to_biguint().expect("nonnegative")))
}

/// Probability that a uniformly random labeled tournament on `m` nodes is
/// irreducible, `P(M) = 1 - sum_{i<M} C(M, i) P(i) / 2^{i (M - i)}`.
pub fn prob_irreducible(m: usize) -> Result<ExactProbability> {
    check_nodes(m)?;
    let mut p: Vec<BigRational> = vec![BigRational::zero(); m + 1];
    for size in 1..=m {
        let mut value = BigRational::one();
        for (i, pi) in p.iter().enumerate().take(size).skip(1) {
            let weight = Ratio::new(BigInt::from(binom(size, i)), BigInt::from(pow2(i * (size - i))));
            value -= weight * pi;
        }
        p[size] = value;
    }
    ExactProbability::new(p.swap_remove(m))
}

fn two_feature_sizes(m1: usize, m2: usize, k: usize) -> Result<(usize, usize)> {
    let (big, small) = (m1.max(m2), m1.min(m2));
    if small < 2 {
        return Err(Error::TooFewValues { feature: if m1 < 2 { 1 } else { 2 }, count: small });
    }
    if k > small {
        return Err(Error::InvalidArgument(format!(
            "at most {small} free outcomes exist for ({m1}, {m2}), asked for {k}"
        )));
    }
    Ok((big, small))
}

/// `a_k`: rules with `k` chosen free outcomes, other arcs unconstrained.
fn overcount(m1: usize, m2: usize, k: usize) -> BigUint {
    let pairs = m1 * m2 * (m1 * m2 - 1) / 2;
    binom(m1, k) * binom(m2, k) * factorial(k) * pow2(pairs - k * (m1 + m2 - 2))
}

/// Number of rules on two features with exactly `k` free outcomes, by the
/// downward recursion `e_k = a_k - sum_{l>k} C(l, k) e_l`.
pub fn count_rules_with_k_free(m1: usize, m2: usize, k: usize) -> Result<ExactCount> {
    let (m1, m2) = two_feature_sizes(m1, m2, k)?;
    let mut e: Vec<BigInt> = vec![BigInt::zero(); m2 + 1];
    for j in (k..=m2).rev() {
        let mut value = BigInt::from(overcount(m1, m2, j));
        for (l, el) in e.iter().enumerate().skip(j + 1) {
            value -= BigInt::from(binom(l, j)) * el;
        }
        e[j] = value;
    }
    to_count(&e[k])
}

fn to_count(value: &BigInt) -> Result<ExactCount> {
    value.to_biguint().map(ExactCount).ok_or_else(|| Error::Invariant(format!("negative count {value}")))
}

/// The same count by the closed inclusion-exclusion form over chains
/// `S = {k = s_1 < ... < s_r = i}` weighted by `prod C(s_{j+1}, s_j)`.
pub fn count_rules_with_k_free_explicit(m1: usize, m2: usize, k: usize) -> Result<ExactCount> {
    let (m1, m2) = two_feature_sizes(m1, m2, k)?;
    let mut total = BigInt::zero();
    for i in k..=m2 {
        let mut coeff = BigInt::zero();
        let inner: Vec<usize> = (k + 1..i).collect();
        for mask in 0u64..1 << inner.len() {
            let mut chain = vec![k];
            chain.extend(inner.iter().enumerate().filter(|&(b, _)| mask >> b & 1 == 1).map(|(_, &s)| s));
            if i != k {
                chain.push(i);
            }
            let prod: BigUint = chain.windows(2).map(|w| binom(w[1], w[0])).product();
            let sign = if chain.len() % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            coeff += sign * BigInt::from(prod);
        }
        total += coeff * BigInt::from(overcount(m1, m2, i));
    }
    to_count(&total)
}

/// `P_{(m1,m2)}(k) = e_k / 2^{C(m1 m2, 2)}`.
pub fn prob_k_free(m1: usize, m2: usize, k: usize) -> Result<ExactProbability> {
    let e = count_rules_with_k_free(m1, m2, k)?;
    let outcomes = m1 * m2;
    ExactProbability::new(Ratio::new(BigInt::from(e.0), BigInt::from(pow2(outcomes * (outcomes - 1) / 2))))
}

/// Upper bound on the number of local optima: the product of all value
/// counts except one largest.
pub fn max_local_optima(space: &FeatureSpace) -> usize {
    let counts = space.counts();
    let largest = counts.iter().copied().max().unwrap_or(1);
    counts.iter().product::<usize>() / largest
}

/// Lower bound on the score of a local optimum, `sum (m_j - 1)`.
pub fn min_score_local_optimum(space: &FeatureSpace) -> usize {
    space.counts().iter().map(|m| m - 1).sum()
}

/// Ratio between the chance that a fixed outcome is free and the chance
/// that it beats every other outcome, `2^n / 2^σ * 2^{M-1} = 2^{n+M-1-σ}`.
pub fn gain_function(n: usize, m: usize, sigma: usize) -> Result<ExactCount> {
    let exp = (n + m)
        .checked_sub(1 + sigma)
        .ok_or_else(|| Error::InvalidArgument(format!("n + M - 1 - σ is negative for n={n}, M={m}, σ={sigma}")))?;
    Ok(ExactCount(pow2(exp)))
}

/// Probability that a random tournament on `m` nodes has a node beating all
/// others, `M / 2^{M-1}`.
pub fn prob_classical_optimum(m: usize) -> Result<ExactProbability> {
    check_nodes(m)?;
    ExactProbability::new(Ratio::new(BigInt::from(m), BigInt::from(pow2(m - 1))))
}

/// Probability that a fixed outcome is free under a random rule,
/// `2^n / 2^σ`.
pub fn prob_outcome_free(space: &FeatureSpace) -> ExactProbability {
    let exp = space.sigma() - space.num_features();
    ExactProbability(Ratio::new(BigInt::one(), BigInt::from(pow2(exp))))
}
