use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Index of a social outcome in mixed-radix order, feature 1 most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Outcome(pub usize);

impl Outcome {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of features packed as a bit mask; bit `f` is the 0-based feature `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FeatureSet(pub u64);

impl FeatureSet {
    pub const EMPTY: FeatureSet = FeatureSet(0);

    pub fn all(n: usize) -> FeatureSet {
        if n >= 64 {
            FeatureSet(u64::MAX)
        } else {
            FeatureSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(feature: usize) -> FeatureSet {
        FeatureSet(1u64 << feature)
    }

    pub fn from_features<I: IntoIterator<Item = usize>>(features: I) -> FeatureSet {
        FeatureSet(features.into_iter().fold(0u64, |acc, f| acc | (1u64 << f)))
    }

    #[inline]
    pub fn contains(self, feature: usize) -> bool {
        self.0 >> feature & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: FeatureSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: FeatureSet) -> FeatureSet {
        FeatureSet(self.0 | other.0)
    }

    /// 0-based features in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let f = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(f)
            }
        })
    }
}

/// The multi-index `m = (m1, ..., mn)` of feature value counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSpace {
    counts: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
    // digits[o * n + f] = value of feature f in outcome o
    digits: Vec<u32>,
}

impl FeatureSpace {
    /// Largest supported number of features (feature sets are 64-bit masks).
    pub const MAX_FEATURES: usize = 63;
    /// Hard ceiling on the number of outcomes; the dense tables are `O(M)`
    /// and the dominance matrix is `O(M^2)` bits.
    pub const MAX_OUTCOMES: usize = 1 << 24;

    pub fn new(counts: &[usize]) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::NoFeatures);
        }
        if counts.len() > Self::MAX_FEATURES {
            return Err(Error::LimitExceeded { what: "feature count", value: counts.len(), limit: Self::MAX_FEATURES });
        }
        for (f, &c) in counts.iter().enumerate() {
            if c < 2 {
                return Err(Error::TooFewValues { feature: f + 1, count: c });
            }
        }
        let size = counts
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .filter(|&s| s <= Self::MAX_OUTCOMES)
            .ok_or(Error::SpaceTooLarge { limit: Self::MAX_OUTCOMES })?;
        let n = counts.len();
        let mut strides = vec![1usize; n];
        for f in (0..n.saturating_sub(1)).rev() {
            strides[f] = strides[f + 1] * counts[f + 1];
        }
        let mut digits = Vec::with_capacity(size * n);
        for o in 0..size {
            for f in 0..n {
                digits.push(((o / strides[f]) % counts[f]) as u32);
            }
        }
        Ok(FeatureSpace { counts: counts.to_vec(), strides, size, digits })
    }

    /// `n` binary features.
    pub fn binary(n: usize) -> Result<Self> {
        Self::new(&vec![2; n])
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn num_features(&self) -> usize {
        self.counts.len()
    }

    /// `M`, the number of outcomes.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `sigma`, the sum of the value counts.
    pub fn sigma(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn all_features(&self) -> FeatureSet {
        FeatureSet::all(self.num_features())
    }

    pub fn outcomes(&self) -> impl ExactSizeIterator<Item = Outcome> {
        (0..self.size).map(Outcome)
    }

    pub fn encode(&self, values: &[usize]) -> Result<Outcome> {
        if values.len() != self.counts.len() {
            return Err(Error::LengthMismatch { expected: self.counts.len(), got: values.len() });
        }
        let mut index = 0;
        for (f, (&v, &c)) in values.iter().zip(&self.counts).enumerate() {
            if v >= c {
                return Err(Error::ValueOutOfRange { feature: f + 1, value: v, count: c });
            }
            index = index * c + v;
        }
        Ok(Outcome(index))
    }

    pub fn outcome(&self, index: usize) -> Result<Outcome> {
        if index < self.size {
            Ok(Outcome(index))
        } else {
            Err(Error::IndexOutOfRange { index, size: self.size })
        }
    }

    pub fn decode(&self, outcome: Outcome) -> Vec<usize> {
        self.digits_of(outcome).iter().map(|&d| d as usize).collect()
    }

    #[inline]
    fn digits_of(&self, outcome: Outcome) -> &[u32] {
        let n = self.counts.len();
        &self.digits[outcome.0 * n..(outcome.0 + 1) * n]
    }

    #[inline]
    pub fn value(&self, outcome: Outcome, feature: usize) -> usize {
        self.digits[outcome.0 * self.counts.len() + feature] as usize
    }

    /// Features on which `x` and `y` take different values.
    #[inline]
    pub fn separating(&self, x: Outcome, y: Outcome) -> FeatureSet {
        let (dx, dy) = (self.digits_of(x), self.digits_of(y));
        let mut mask = 0u64;
        for f in 0..dx.len() {
            mask |= ((dx[f] != dy[f]) as u64) << f;
        }
        FeatureSet(mask)
    }

    /// Number of parallel walls crossed between `x` and `y`: `sum |vi - wi|`.
    pub fn wall_distance(&self, x: Outcome, y: Outcome) -> usize {
        self.digits_of(x).iter().zip(self.digits_of(y)).map(|(&a, &b)| a.abs_diff(b) as usize).sum()
    }

    /// Outcomes agreeing with `x` outside `features`, `x` itself included,
    /// in increasing index order.
    pub fn fiber(&self, x: Outcome, features: FeatureSet) -> Fiber<'_> {
        let mut base = x.0;
        let mut free = Vec::with_capacity(features.len());
        for f in features.iter().filter(|&f| f < self.counts.len()) {
            base -= self.value(x, f) * self.strides[f];
            free.push(f);
        }
        // odometer over the free features, least significant last
        let digits = vec![0; free.len()];
        Fiber { space: self, base, free, digits, done: false }
    }

    /// Outcomes at prominent distance exactly 1 from `x`.
    pub fn unit_neighbors(&self, x: Outcome) -> impl Iterator<Item = Outcome> + '_ {
        (0..self.counts.len()).flat_map(move |f| {
            let v = self.value(x, f);
            let base = x.0 - v * self.strides[f];
            (0..self.counts[f]).filter(move |&w| w != v).map(move |w| Outcome(base + w * self.strides[f]))
        })
    }

    /// Parse a comma-separated value tuple such as `0,1,1`.
    pub fn parse_tuple(&self, text: &str) -> Result<Outcome> {
        let values = text
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Syntax { what: "outcome tuple", input: text.to_string() })?;
        self.encode(&values)
    }

    pub fn format_tuple(&self, outcome: Outcome) -> String {
        self.digits_of(outcome).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub struct Fiber<'a> {
    space: &'a FeatureSpace,
    base: usize,
    free: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for Fiber<'_> {
    type Item = Outcome;

    fn next(&mut self) -> Option<Outcome> {
        if self.done {
            return None;
        }
        let counts = &self.space.counts;
        let strides = &self.space.strides;
        let index = self.base + self.free.iter().zip(&self.digits).map(|(&f, &d)| d * strides[f]).sum::<usize>();
        // advance; features are increasing so the last one is least significant
        let mut k = self.free.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < counts[self.free[k]] {
                break;
            }
            self.digits[k] = 0;
        }
        Some(Outcome(index))
    }
}
