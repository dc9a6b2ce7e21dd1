use std::fmt;

use crate::model::{FeatureSet, FeatureSpace};
use crate::{Error, Result};

/// A nonempty set of features that is voted on as a bundle.
///
/// An object holding one wall of a feature holds all of them, so the
/// feature set is the whole description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureObject(FeatureSet);

impl FeatureObject {
    pub fn new(features: FeatureSet, n: usize) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::EmptyObject);
        }
        if !features.is_subset_of(FeatureSet::all(n)) {
            let bad = features.iter().find(|&f| f >= n).unwrap_or(n);
            return Err(Error::FeatureOutOfRange { feature: bad + 1, n });
        }
        Ok(FeatureObject(features))
    }

    /// Builds an object from 1-based feature numbers.
    pub fn from_one_based(features: &[usize], n: usize) -> Result<Self> {
        let mut set = FeatureSet::EMPTY;
        for &f in features {
            if f == 0 || f > n {
                return Err(Error::FeatureOutOfRange { feature: f, n });
            }
            set = set.union(FeatureSet::singleton(f - 1));
        }
        Self::new(set, n)
    }

    pub fn features(self) -> FeatureSet {
        self.0
    }

    /// Number of walls in the object, `sum_{i in I} (m_i - 1)`.
    pub fn wall_count(self, space: &FeatureSpace) -> usize {
        self.0.iter().map(|f| space.counts()[f] - 1).sum()
    }
}

impl fmt::Display for FeatureObject {
    /// Dash-joined 1-based features, e.g. `1-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        f.write_str(&parts.join("-"))
    }
}

/// A covering family of objects; objects may overlap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectsScheme {
    objects: Vec<FeatureObject>,
}

impl ObjectsScheme {
    pub fn new(objects: Vec<FeatureObject>, n: usize) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::EmptyScheme);
        }
        for (k, o) in objects.iter().enumerate() {
            if objects[..k].contains(o) {
                return Err(Error::DuplicateObject { object: o.to_string() });
            }
        }
        let covered = objects.iter().fold(FeatureSet::EMPTY, |acc, o| acc.union(o.features()));
        if let Some(f) = (0..n).find(|&f| !covered.contains(f)) {
            return Err(Error::SchemeNotCovering { feature: f + 1 });
        }
        Ok(ObjectsScheme { objects })
    }

    /// One singleton object per feature.
    pub fn singletons(n: usize) -> Self {
        ObjectsScheme { objects: (0..n).map(|f| FeatureObject(FeatureSet::singleton(f))).collect() }
    }

    /// Parses `1-2,3` as `{{1,2},{3}}`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let syntax = || Error::Syntax { what: "objects scheme", input: text.to_string() };
        let mut objects = Vec::new();
        for part in text.split(',') {
            let features =
                part.split('-').map(|f| f.trim().parse::<usize>().map_err(|_| syntax())).collect::<Result<Vec<_>>>()?;
            objects.push(FeatureObject::from_one_based(&features, n)?);
        }
        Self::new(objects, n)
    }

    pub fn objects(&self) -> &[FeatureObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Size of the largest object, counted in walls.
    pub fn wall_size(&self, space: &FeatureSpace) -> usize {
        self.objects.iter().map(|o| o.wall_count(space)).max().unwrap_or(0)
    }

    /// The agenda visiting each object once in listed order.
    pub fn default_agenda(&self) -> Agenda {
        Agenda { order: (0..self.objects.len()).collect() }
    }
}

impl fmt::Display for ObjectsScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.objects.iter().map(|o| o.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// The cyclic order in which the objects of a scheme are voted on, as
/// 0-based object indices. Every object appears at least once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Agenda {
    order: Vec<usize>,
}

impl Agenda {
    pub fn new(order: Vec<usize>, scheme: &ObjectsScheme) -> Result<Self> {
        let k = scheme.len();
        let mut seen = vec![false; k];
        for &h in &order {
            if h >= k {
                return Err(Error::AgendaIndexOutOfRange { index: h + 1, count: k });
            }
            seen[h] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::AgendaNotCovering { index: missing + 1 });
        }
        Ok(Agenda { order })
    }

    /// Parses 1-based object indices, e.g. `1,2,1`.
    pub fn parse(text: &str, scheme: &ObjectsScheme) -> Result<Self> {
        let order = text
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(h) if h >= 1 => Ok(h - 1),
                _ => Err(Error::Syntax { what: "agenda", input: text.to_string() }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, scheme)
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

impl fmt::Display for Agenda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(|h| (h + 1).to_string()).collect();
        f.write_str(&parts.join(","))
    }
}
