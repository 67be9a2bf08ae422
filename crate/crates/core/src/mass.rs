//! Weighty points and mass dipoles.
//!
//! A [`MassElement`] is either a point carrying a nonzero mass or a mass
//! dipole, which is identified with a free vector. Together they form an
//! `(n+1)`-dimensional vector space whose operations are given by explicit
//! case rules in [`MassElement::add`] and [`MassElement::scale`]. The rules
//! agree with transporting the operations through [`tau`] to moment-like
//! maps, which is what makes a sum independent of the order of addition.

use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::affine::{FreeVector, Point};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::check_dim;
use crate::moment::{moment_correspondence, MomentLikeMap};
use crate::weighted::WeightedSet;

#[derive(Debug, Clone, PartialEq)]
pub struct MassElement(Repr);

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Weighty { point: Point, mass: FieldElement },
    Dipole(FreeVector),
}

/// Borrowed view of a [`MassElement`].
#[derive(Debug, Clone, Copy)]
pub enum MassKind<'a> {
    Weighty {
        point: &'a Point,
        mass: &'a FieldElement,
    },
    Dipole(&'a FreeVector),
}

impl MassElement {
    /// A weighty point. Mass zero yields the zero dipole.
    pub fn weighty(point: Point, mass: FieldElement) -> Result<Self> {
        if mass.field() != point.field() {
            return Err(Error::FieldMismatch {
                left: point.field(),
                right: mass.field(),
            });
        }
        if mass.is_zero() {
            return Ok(MassElement::zero(point.field(), point.dim()));
        }
        Ok(MassElement(Repr::Weighty { point, mass }))
    }

    pub fn dipole(v: FreeVector) -> Self {
        MassElement(Repr::Dipole(v))
    }

    /// The dipole `{-a, b}`, i.e. the free vector `b - a`.
    pub fn dipole_between(a: &Point, b: &Point) -> Result<Self> {
        Ok(MassElement::dipole(a.vector_to(b)?))
    }

    pub fn zero(field: Field, n: usize) -> Self {
        MassElement::dipole(FreeVector::zero(field, n))
    }

    pub fn kind(&self) -> MassKind<'_> {
        match &self.0 {
            Repr::Weighty { point, mass } => MassKind::Weighty { point, mass },
            Repr::Dipole(v) => MassKind::Dipole(v),
        }
    }

    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Weighty { point, .. } => point.field(),
            Repr::Dipole(v) => v.field(),
        }
    }

    pub fn dim(&self) -> usize {
        match &self.0 {
            Repr::Weighty { point, .. } => point.dim(),
            Repr::Dipole(v) => v.dim(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Dipole(v) if v.is_zero())
    }

    pub fn is_weighty(&self) -> bool {
        matches!(self.0, Repr::Weighty { .. })
    }

    /// Total mass; zero for dipoles.
    pub fn mass(&self) -> FieldElement {
        match &self.0 {
            Repr::Weighty { mass, .. } => mass.clone(),
            Repr::Dipole(v) => v.field().zero(),
        }
    }

    pub fn point(&self) -> Option<&Point> {
        match &self.0 {
            Repr::Weighty { point, .. } => Some(point),
            Repr::Dipole(_) => None,
        }
    }

    pub fn vector(&self) -> Option<&FreeVector> {
        match &self.0 {
            Repr::Dipole(v) => Some(v),
            Repr::Weighty { .. } => None,
        }
    }

    fn check_compatible(&self, other: &MassElement) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        check_dim(self.dim(), other.dim())
    }

    /// Sum by the four case rules:
    ///
    /// * `(A, μ) + (B, ρ)` with `λ = μ + ρ ≠ 0` is `((μ/λ)A + (ρ/λ)B, λ)`;
    /// * `(A, μ) + (B, -μ)` is the dipole `μ (A - B)`;
    /// * `(A, λ) + v` is `(A + λ⁻¹ v, λ)`;
    /// * `v + w` is the dipole `v + w`.
    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &MassElement) -> Result<MassElement> {
        self.check_compatible(other)?;
        match (&self.0, &other.0) {
            (
                Repr::Weighty { point: a, mass: mu },
                Repr::Weighty {
                    point: b,
                    mass: rho,
                },
            ) => {
                let lambda = mu.add(rho)?;
                if lambda.is_zero() {
                    return Ok(MassElement::dipole(b.vector_to(a)?.scale(mu)?));
                }
                let o = a
                    .position()
                    .scale(&mu.div(&lambda)?)?
                    .add(&b.position().scale(&rho.div(&lambda)?)?)?
                    .from_origin();
                MassElement::weighty(o, lambda)
            }
            (Repr::Weighty { point, mass }, Repr::Dipole(v))
            | (Repr::Dipole(v), Repr::Weighty { point, mass }) => {
                let o = point.shift(&v.scale(&mass.inv()?)?)?;
                MassElement::weighty(o, mass.clone())
            }
            (Repr::Dipole(v), Repr::Dipole(w)) => Ok(MassElement::dipole(v.add(w)?)),
        }
    }

    pub fn scale(&self, mu: &FieldElement) -> Result<MassElement> {
        match &self.0 {
            Repr::Weighty { point, mass } => MassElement::weighty(point.clone(), mu.mul(mass)?),
            Repr::Dipole(v) => Ok(MassElement::dipole(v.scale(mu)?)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> MassElement {
        match &self.0 {
            Repr::Weighty { point, mass } => MassElement(Repr::Weighty {
                point: point.clone(),
                mass: mass.neg(),
            }),
            Repr::Dipole(v) => MassElement::dipole(v.neg()),
        }
    }

    /// A weighted set representing this element: `{(O, λ)}` for a weighty
    /// point, `{(origin, -1), (origin + v, 1)}` for a dipole.
    pub fn representative(&self) -> Result<WeightedSet> {
        match &self.0 {
            Repr::Weighty { point, mass } => WeightedSet::singleton(point.clone(), mass.clone()),
            Repr::Dipole(v) => {
                let f = v.field();
                let o = Point::origin(f, v.dim());
                let tip = o.shift(v)?;
                WeightedSet::from_entries(f, v.dim(), [(o, f.one().neg()), (tip, f.one())])
            }
        }
    }
}

impl Serialize for MassElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Weighty { point, mass } => {
                let mut st = serializer.serialize_struct("MassElement", 3)?;
                st.serialize_field("type", "weighty")?;
                st.serialize_field("point", point)?;
                st.serialize_field("mass", mass)?;
                st.end()
            }
            Repr::Dipole(v) => {
                let mut st = serializer.serialize_struct("MassElement", 2)?;
                st.serialize_field("type", "dipole")?;
                st.serialize_field("vector", v)?;
                st.end()
            }
        }
    }
}

impl std::fmt::Display for MassElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.0 {
            Repr::Weighty { point, mass } => write!(f, "{{{point}, {mass}}}"),
            Repr::Dipole(v) => write!(f, "dipole {v}"),
        }
    }
}

/// The moment-like map of an element: total mass `λ` vanishing at `O` for a
/// weighty point, the constant map `≡ v` for a dipole.
pub fn tau(e: &MassElement) -> Result<MomentLikeMap> {
    match &e.0 {
        Repr::Weighty { point, mass } => {
            MomentLikeMap::new(point.position().scale(mass)?, mass.clone())
        }
        Repr::Dipole(v) => Ok(MomentLikeMap::constant(v.clone())),
    }
}

pub fn tau_inverse(p: &MomentLikeMap) -> Result<MassElement> {
    if p.is_constant() {
        Ok(MassElement::dipole(p.base_value().clone()))
    } else {
        MassElement::weighty(p.center_of_mass()?, p.total_mass().clone())
    }
}

/// The class of a weighted set modulo null sets.
pub fn reduce(s: &WeightedSet) -> Result<MassElement> {
    tau_inverse(&moment_correspondence(s)?)
}

/// Left fold of [`MassElement::add`], starting from zero.
pub fn sum<'a, I>(field: Field, n: usize, items: I) -> Result<MassElement>
where
    I: IntoIterator<Item = &'a MassElement>,
{
    items
        .into_iter()
        .try_fold(MassElement::zero(field, n), |acc, e| acc.add(e))
}

/// The point `C` on line `AB` with `μ·(C - A) = ρ·(B - C)`, for `μ + ρ ≠ 0`.
fn two_point_center(a: &Point, mu: &FieldElement, b: &Point, rho: &FieldElement) -> Result<Point> {
    let lambda = mu.add(rho)?;
    a.shift(&a.vector_to(b)?.scale(&rho.div(&lambda)?)?)
}

/// Finds a pair of entries with nonzero mass sum. If every pair is
/// weightless, a triple of entries must contain two of equal mass, and that
/// pair is weighty unless the characteristic is two.
fn weighty_pairs(entries: &[(Point, FieldElement)]) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if !entries[i].1.add(&entries[j].1)?.is_zero() {
                pairs.push((i, j));
            }
        }
    }
    if pairs.is_empty() && entries.len() >= 3 {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if entries[i].1 == entries[j].1 && !entries[i].1.add(&entries[j].1)?.is_zero() {
                pairs.push((i, j));
                break;
            }
        }
    }
    Ok(pairs)
}

fn classical<C>(s: &WeightedSet, mut choose: C) -> Result<Point>
where
    C: FnMut(usize) -> usize,
{
    let char = s.field().characteristic();
    if char == 2 {
        return Err(Error::UnsupportedCharacteristic(char));
    }
    if s.total_mass()?.is_zero() {
        return Err(Error::NoCenter);
    }
    let mut current = s.clone();
    loop {
        let entries: Vec<(Point, FieldElement)> = current
            .iter()
            .map(|(p, m)| (p.clone(), m.clone()))
            .collect();
        match entries.len() {
            0 => return Err(Error::NoCenter),
            1 => return Ok(entries[0].0.clone()),
            _ => {}
        }
        let pairs = weighty_pairs(&entries)?;
        if pairs.is_empty() {
            return Err(Error::Degenerate(
                "weighty set without a weighty pair".to_string(),
            ));
        }
        let (i, j) = pairs[choose(pairs.len())];
        let (a, mu) = &entries[i];
        let (b, rho) = &entries[j];
        let center = two_point_center(a, mu, b, rho)?;
        let mut next = WeightedSet::new(s.field(), s.dim());
        for (k, (p, m)) in entries.iter().enumerate() {
            if k != i && k != j {
                next.insert(p.clone(), m.clone())?;
            }
        }
        next.insert(center, mu.add(rho)?)?;
        current = next;
    }
}

/// Center of mass by repeated replacement of a weighty pair with its
/// two-point center. Pairs are taken in canonical point order.
///
/// Fails with [`Error::UnsupportedCharacteristic`] in characteristic two and
/// with [`Error::NoCenter`] on weightless input.
pub fn classical_center_of_mass(s: &WeightedSet) -> Result<Point> {
    classical(s, |_| 0)
}

/// Like [`classical_center_of_mass`], but each step picks a weighty pair
/// uniformly at random.
pub fn classical_center_of_mass_with<R: Rng + ?Sized>(
    s: &WeightedSet,
    rng: &mut R,
) -> Result<Point> {
    classical(s, |n| rng.gen_range(0..n))
}
