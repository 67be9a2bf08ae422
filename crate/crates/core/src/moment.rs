//! Moment-like maps: affine maps `k^n → k^n` whose linear part is `-λ·I`.
//!
//! Such a map is fixed by its value at the coordinate origin and by `λ`, its
//! total mass, and satisfies `P(Q₂) - P(Q₁) = -λ (Q₂ - Q₁)`. The moment map of
//! a weighted set is `Q ↦ Σ λ_i (A_i - Q)`; in particular a single weighty
//! point `(O, λ)` has moment map `Q ↦ λ (O - Q)`, which vanishes at `O`.

use serde::Serialize;

use crate::affine::{FreeVector, Point};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::check_field;
use crate::weighted::WeightedSet;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentLikeMap {
    base_value: FreeVector,
    total_mass: FieldElement,
}

impl MomentLikeMap {
    /// The map with value `base_value` at the origin and total mass `total_mass`.
    pub fn new(base_value: FreeVector, total_mass: FieldElement) -> Result<Self> {
        check_field(base_value.field(), &total_mass)?;
        Ok(MomentLikeMap {
            base_value,
            total_mass,
        })
    }

    /// The map taking `value` at `at` with total mass `total_mass`.
    pub fn from_value_at(at: &Point, value: FreeVector, total_mass: FieldElement) -> Result<Self> {
        // P(at) = P(0) - λ·at
        let base = value.add(&at.position().scale(&total_mass)?)?;
        MomentLikeMap::new(base, total_mass)
    }

    pub fn zero(field: Field, n: usize) -> Self {
        MomentLikeMap {
            base_value: FreeVector::zero(field, n),
            total_mass: field.zero(),
        }
    }

    /// The constant map `≡ v`.
    pub fn constant(v: FreeVector) -> Self {
        let total_mass = v.field().zero();
        MomentLikeMap {
            base_value: v,
            total_mass,
        }
    }

    pub fn field(&self) -> Field {
        self.base_value.field()
    }

    pub fn dim(&self) -> usize {
        self.base_value.dim()
    }

    /// Value at the coordinate origin.
    pub fn base_value(&self) -> &FreeVector {
        &self.base_value
    }

    pub fn total_mass(&self) -> &FieldElement {
        &self.total_mass
    }

    pub fn is_constant(&self) -> bool {
        self.total_mass.is_zero()
    }

    pub fn evaluate(&self, q: &Point) -> Result<FreeVector> {
        self.base_value.sub(&q.position().scale(&self.total_mass)?)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &MomentLikeMap) -> Result<MomentLikeMap> {
        Ok(MomentLikeMap {
            base_value: self.base_value.add(&other.base_value)?,
            total_mass: self.total_mass.add(&other.total_mass)?,
        })
    }

    pub fn scale(&self, mu: &FieldElement) -> Result<MomentLikeMap> {
        Ok(MomentLikeMap {
            base_value: self.base_value.scale(mu)?,
            total_mass: mu.mul(&self.total_mass)?,
        })
    }

    /// The unique zero of the map, `λ⁻¹ · P(origin)`.
    pub fn center_of_mass(&self) -> Result<Point> {
        if self.total_mass.is_zero() {
            return Err(Error::NoCenter);
        }
        Ok(self
            .base_value
            .scale(&self.total_mass.inv()?)?
            .from_origin())
    }

    /// `λ⁻¹ · P`, which has total mass 1 and the same zero.
    pub fn normalize(&self) -> Result<MomentLikeMap> {
        if self.total_mass.is_zero() {
            return Err(Error::NoCenter);
        }
        self.scale(&self.total_mass.inv()?)
    }
}

/// The moment map of a weighted set.
pub fn moment_correspondence(s: &WeightedSet) -> Result<MomentLikeMap> {
    let origin = Point::origin(s.field(), s.dim());
    MomentLikeMap::new(s.moment_about(&origin)?, s.total_mass()?)
}
