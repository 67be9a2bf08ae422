//! Weighted point sets and their moments.
//!
//! A [`WeightedSet`] is a finitely supported function from points to masses.
//! Coincident points are merged by adding their masses, and an entry whose
//! mass becomes zero disappears, so two sets are equal exactly when they are
//! equal as functions.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::affine::{AffineMap, FreeVector, Point, PointKey};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{check_dim, check_field};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSet {
    field: Field,
    dim: usize,
    entries: BTreeMap<PointKey, (Point, FieldElement)>,
}

impl WeightedSet {
    pub fn new(field: Field, dim: usize) -> Self {
        WeightedSet {
            field,
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I>(field: Field, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, FieldElement)>,
    {
        let mut s = WeightedSet::new(field, dim);
        for (p, m) in entries {
            s.insert(p, m)?;
        }
        Ok(s)
    }

    /// Shorthand for integer points with integer masses.
    pub fn from_i64(field: Field, dim: usize, entries: &[(&[i64], i64)]) -> Result<Self> {
        WeightedSet::from_entries(
            field,
            dim,
            entries
                .iter()
                .map(|(p, m)| (Point::from_i64(field, p), field.from_i64(*m))),
        )
    }

    pub fn singleton(point: Point, mass: FieldElement) -> Result<Self> {
        WeightedSet::from_entries(point.field(), point.dim(), [(point, mass)])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_point(&self, p: &Point) -> Result<()> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: p.field(),
            });
        }
        check_dim(self.dim, p.dim())
    }

    fn check_compatible(&self, other: &WeightedSet) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        check_dim(self.dim, other.dim)
    }

    /// Adds `mass` at `point`, merging with any existing entry.
    pub fn insert(&mut self, point: Point, mass: FieldElement) -> Result<()> {
        self.check_point(&point)?;
        check_field(self.field, &mass)?;
        let key = point.key();
        let merged = match self.entries.remove(&key) {
            Some((_, old)) => old.add(&mass)?,
            None => mass,
        };
        if !merged.is_zero() {
            self.entries.insert(key, (point, merged));
        }
        Ok(())
    }

    /// Entries in canonical point order.
    pub fn iter(&self) -> impl Iterator<Item = (&Point, &FieldElement)> + '_ {
        self.entries.values().map(|(p, m)| (p, m))
    }

    pub fn mass_at(&self, p: &Point) -> FieldElement {
        self.entries
            .get(&p.key())
            .map_or_else(|| self.field.zero(), |(_, m)| m.clone())
    }

    pub fn total_mass(&self) -> Result<FieldElement> {
        self.iter()
            .try_fold(self.field.zero(), |acc, (_, m)| acc.add(m))
    }

    /// `α·s + β·t` as functions on points.
    pub fn linear_combine(
        alpha: &FieldElement,
        s: &WeightedSet,
        beta: &FieldElement,
        t: &WeightedSet,
    ) -> Result<WeightedSet> {
        s.check_compatible(t)?;
        let mut out = WeightedSet::new(s.field, s.dim);
        for (p, m) in s.iter() {
            out.insert(p.clone(), alpha.mul(m)?)?;
        }
        for (p, m) in t.iter() {
            out.insert(p.clone(), beta.mul(m)?)?;
        }
        Ok(out)
    }

    pub fn scale(&self, alpha: &FieldElement) -> Result<WeightedSet> {
        WeightedSet::linear_combine(alpha, self, &self.field.zero(), self)
    }

    pub fn union_sum(&self, other: &WeightedSet) -> Result<WeightedSet> {
        let one = self.field.one();
        WeightedSet::linear_combine(&one, self, &one, other)
    }

    pub fn difference(&self, other: &WeightedSet) -> Result<WeightedSet> {
        let one = self.field.one();
        WeightedSet::linear_combine(&one, self, &one.neg(), other)
    }

    /// The entries whose point satisfies `keep`.
    pub fn restrict<F>(&self, mut keep: F) -> WeightedSet
    where
        F: FnMut(&Point, &FieldElement) -> bool,
    {
        WeightedSet {
            field: self.field,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .filter(|(_, (p, m))| keep(p, m))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// `Σ λ_i (A_i - pivot)`.
    pub fn moment_about(&self, pivot: &Point) -> Result<FreeVector> {
        self.check_point(pivot)?;
        self.iter()
            .try_fold(FreeVector::zero(self.field, self.dim), |acc, (p, m)| {
                acc.add(&pivot.vector_to(p)?.scale(m)?)
            })
    }

    /// Zero total mass and zero moment. One pivot suffices: once the mass
    /// vanishes the moment does not depend on the pivot.
    pub fn is_null_set(&self) -> Result<bool> {
        Ok(self.total_mass()?.is_zero()
            && self
                .moment_about(&Point::origin(self.field, self.dim))?
                .is_zero())
    }

    /// Whether `self` and `other` have equal moments about every pivot.
    pub fn equivalent(&self, other: &WeightedSet) -> Result<bool> {
        self.difference(other)?.is_null_set()
    }

    /// Image under an affine map, each weighted point carried to its image.
    /// Points with equal images merge.
    pub fn map_points(&self, f: &AffineMap) -> Result<WeightedSet> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: f.field(),
            });
        }
        check_dim(f.domain_dim(), self.dim)?;
        let mut out = WeightedSet::new(self.field, f.codomain_dim());
        for (p, m) in self.iter() {
            out.insert(f.apply(p)?, m.clone())?;
        }
        Ok(out)
    }
}

impl Serialize for WeightedSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            point: &'a Point,
            mass: &'a FieldElement,
        }
        serializer.collect_seq(self.iter().map(|(point, mass)| Entry { point, mass }))
    }
}
