//! The affine space `k^n`: points, free vectors and affine maps.
//!
//! [`Point`] and [`FreeVector`] are both coordinate tuples but are kept apart
//! at the type level. The only bridges are [`free_vector`] (two points give a
//! vector) and [`shift`] (a point moved by a vector).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{ElementKey, Field, FieldElement};
use crate::linalg::{check_dim, check_field, scale_all, zip_with, Matrix};

#[derive(Debug, Clone, PartialEq)]
struct Coords {
    field: Field,
    elems: Vec<FieldElement>,
}

impl Coords {
    fn new(field: Field, elems: Vec<FieldElement>) -> Result<Self> {
        for x in &elems {
            check_field(field, x)?;
        }
        Ok(Coords { field, elems })
    }

    fn zero(field: Field, n: usize) -> Self {
        Coords {
            field,
            elems: vec![field.zero(); n],
        }
    }

    fn from_i64(field: Field, xs: &[i64]) -> Self {
        Coords {
            field,
            elems: xs.iter().map(|&x| field.from_i64(x)).collect(),
        }
    }

    fn parse(field: Field, xs: &[&str]) -> Result<Self> {
        let elems = xs.iter().map(|s| field.parse(s)).collect::<Result<_>>()?;
        Ok(Coords { field, elems })
    }

    fn compatible(&self, other: &Coords) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        check_dim(self.elems.len(), other.elems.len())
    }

    fn add(&self, other: &Coords) -> Result<Coords> {
        self.compatible(other)?;
        Ok(Coords {
            field: self.field,
            elems: zip_with(&self.elems, &other.elems, |a, b| a.add(b))?,
        })
    }

    fn sub(&self, other: &Coords) -> Result<Coords> {
        self.compatible(other)?;
        Ok(Coords {
            field: self.field,
            elems: zip_with(&self.elems, &other.elems, |a, b| a.sub(b))?,
        })
    }

    fn scale(&self, s: &FieldElement) -> Result<Coords> {
        check_field(self.field, s)?;
        Ok(Coords {
            field: self.field,
            elems: scale_all(s, &self.elems)?,
        })
    }

    fn key(&self) -> PointKey {
        PointKey(self.elems.iter().map(FieldElement::key).collect())
    }
}

/// Exact ordering key of a coordinate tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointKey(Vec<ElementKey>);

fn write_tuple(f: &mut fmt::Formatter<'_>, elems: &[FieldElement]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in elems.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

macro_rules! coordinate_type {
    ($name:ident) => {
        impl $name {
            pub fn new(field: Field, coords: Vec<FieldElement>) -> Result<Self> {
                Coords::new(field, coords).map($name)
            }

            pub fn from_i64(field: Field, coords: &[i64]) -> Self {
                $name(Coords::from_i64(field, coords))
            }

            pub fn parse(field: Field, coords: &[&str]) -> Result<Self> {
                Coords::parse(field, coords).map($name)
            }

            pub fn field(&self) -> Field {
                self.0.field
            }

            pub fn dim(&self) -> usize {
                self.0.elems.len()
            }

            pub fn coords(&self) -> &[FieldElement] {
                &self.0.elems
            }

            pub fn into_coords(self) -> Vec<FieldElement> {
                self.0.elems
            }

            pub fn key(&self) -> PointKey {
                self.0.key()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_tuple(f, &self.0.elems)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                serializer.collect_seq(&self.0.elems)
            }
        }
    };
}

/// A point of `k^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Coords);

/// A translation of `k^n`, i.e. an ordered pair of points up to a shift.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeVector(Coords);

coordinate_type!(Point);
coordinate_type!(FreeVector);

impl Point {
    /// The coordinate origin.
    pub fn origin(field: Field, n: usize) -> Self {
        Point(Coords::zero(field, n))
    }

    /// The vector from `self` to `to`.
    pub fn vector_to(&self, to: &Point) -> Result<FreeVector> {
        to.0.sub(&self.0).map(FreeVector)
    }

    pub fn shift(&self, v: &FreeVector) -> Result<Point> {
        self.0.add(&v.0).map(Point)
    }

    /// The position vector `self - origin`.
    pub fn position(&self) -> FreeVector {
        FreeVector(self.0.clone())
    }
}

impl FreeVector {
    pub fn zero(field: Field, n: usize) -> Self {
        FreeVector(Coords::zero(field, n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.elems.iter().all(FieldElement::is_zero)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &FreeVector) -> Result<FreeVector> {
        self.0.add(&other.0).map(FreeVector)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &FreeVector) -> Result<FreeVector> {
        self.0.sub(&other.0).map(FreeVector)
    }

    pub fn scale(&self, s: &FieldElement) -> Result<FreeVector> {
        self.0.scale(s).map(FreeVector)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> FreeVector {
        FreeVector(Coords {
            field: self.0.field,
            elems: self.0.elems.iter().map(FieldElement::neg).collect(),
        })
    }

    /// The point `origin + self`.
    pub fn from_origin(&self) -> Point {
        Point(self.0.clone())
    }
}

/// `to - from`.
pub fn free_vector(from: &Point, to: &Point) -> Result<FreeVector> {
    from.vector_to(to)
}

/// `p + v`.
pub fn shift(p: &Point, v: &FreeVector) -> Result<Point> {
    p.shift(v)
}

/// Whether `(a1, b1)` and `(a2, b2)` represent the same free vector.
pub fn pairs_equivalent(a1: &Point, b1: &Point, a2: &Point, b2: &Point) -> Result<bool> {
    Ok(free_vector(a1, b1)? == free_vector(a2, b2)?)
}

/// `F(x) = A x + b` from `k^n` to `k^m`; `A` is `m × n` and `b ∈ k^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    linear: Matrix,
    translation: FreeVector,
}

impl AffineMap {
    pub fn new(linear: Matrix, translation: FreeVector) -> Result<Self> {
        check_dim(linear.rows(), translation.dim())?;
        if linear.field() != translation.field() {
            return Err(Error::FieldMismatch {
                left: linear.field(),
                right: translation.field(),
            });
        }
        Ok(AffineMap {
            linear,
            translation,
        })
    }

    pub fn identity(field: Field, n: usize) -> Self {
        AffineMap {
            linear: Matrix::identity(field, n),
            translation: FreeVector::zero(field, n),
        }
    }

    /// Pure shift `x ↦ x + v`.
    pub fn translation_by(v: FreeVector) -> Self {
        AffineMap {
            linear: Matrix::identity(v.field(), v.dim()),
            translation: v,
        }
    }

    pub fn field(&self) -> Field {
        self.linear.field()
    }

    pub fn domain_dim(&self) -> usize {
        self.linear.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn linear_part(&self) -> &Matrix {
        &self.linear
    }

    pub fn translation(&self) -> &FreeVector {
        &self.translation
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        let image = self.linear.apply(p.coords())?;
        Point::new(self.field(), image)?.shift(&self.translation)
    }

    /// The linear part acting on free vectors.
    pub fn apply_linear(&self, v: &FreeVector) -> Result<FreeVector> {
        FreeVector::new(self.field(), self.linear.apply(v.coords())?)
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &AffineMap, inner: &AffineMap) -> Result<AffineMap> {
        let linear = outer.linear.mul(&inner.linear)?;
        let translation = outer
            .apply_linear(&inner.translation)?
            .add(&outer.translation)?;
        AffineMap::new(linear, translation)
    }

    /// An affine map is invertible exactly when its linear part is.
    pub fn is_invertible(&self) -> bool {
        self.linear.is_invertible()
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.linear.inverse()?;
        let t = FreeVector::new(self.field(), inv.apply(self.translation.coords())?)?.neg();
        AffineMap::new(inv, t)
    }
}
