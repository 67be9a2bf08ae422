//! Quadratic polynomials `T = λ·Q_B + l + c` and their critical points.
//!
//! With the non-degenerate pairing `F = -2B`, the `F`-gradient of `T` at `x` is
//! `-λx + b`, where `b` is dual to `l`. That gradient is a moment-like map, so
//! the critical point of `T` is a center of mass. For `T(x) = Σ λ_i Q_B(x - A_i)`
//! it is the center of mass of the weighted set `{(A_i, λ_i)}`, whatever `B` is.

use serde::Serialize;

use crate::affine::{FreeVector, Point};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{check_dim, check_field, dot, scale_all, zip_with, Matrix};
use crate::mass::{reduce, MassKind};
use crate::moment::MomentLikeMap;
use crate::weighted::WeightedSet;

/// A symmetric non-degenerate bilinear form over a field of characteristic
/// other than two.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    matrix: Matrix,
    inverse: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let char = matrix.field().characteristic();
        if char == 2 {
            return Err(Error::UnsupportedCharacteristic(char));
        }
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inverse = matrix.inverse()?;
        Ok(BilinearForm { matrix, inverse })
    }

    /// The dot product.
    pub fn standard(field: Field, n: usize) -> Result<Self> {
        BilinearForm::new(Matrix::identity(field, n))
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<FieldElement> {
        dot(self.field(), x, &self.matrix.apply(y)?)
    }

    pub fn vectors(&self, x: &FreeVector, y: &FreeVector) -> Result<FieldElement> {
        self.apply(x.coords(), y.coords())
    }

    /// `Q_B(v) = B(v, v)`.
    pub fn quadratic(&self, v: &[FieldElement]) -> Result<FieldElement> {
        self.apply(v, v)
    }

    /// The covector `y ↦ B(v, y)`.
    pub fn lower(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.matrix.apply_left(v)
    }

    /// The vector `v` with `B(v, y) = l(y)` for all `y`.
    pub fn raise(&self, l: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.inverse.apply_left(l)
    }
}

/// `T(x) = λ·B(x, x) + l(x) + c` for a fixed form `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadPoly {
    form: BilinearForm,
    lambda: FieldElement,
    linear: Vec<FieldElement>,
    constant: FieldElement,
}

impl QuadPoly {
    pub fn new(
        form: BilinearForm,
        lambda: FieldElement,
        linear: Vec<FieldElement>,
        constant: FieldElement,
    ) -> Result<Self> {
        let field = form.field();
        check_field(field, &lambda)?;
        check_field(field, &constant)?;
        check_dim(form.dim(), linear.len())?;
        for c in &linear {
            check_field(field, c)?;
        }
        Ok(QuadPoly {
            form,
            lambda,
            linear,
            constant,
        })
    }

    pub fn zero(form: BilinearForm) -> Self {
        let field = form.field();
        let n = form.dim();
        QuadPoly {
            form,
            lambda: field.zero(),
            linear: vec![field.zero(); n],
            constant: field.zero(),
        }
    }

    /// `x ↦ μ·Q_B(x - a)`.
    pub fn shifted(form: BilinearForm, a: &Point, mu: &FieldElement) -> Result<Self> {
        let linear = scale_all(
            &mu.mul(&form.field().from_i64(-2))?,
            &form.lower(a.coords())?,
        )?;
        let constant = mu.mul(&form.quadratic(a.coords())?)?;
        QuadPoly::new(form, mu.clone(), linear, constant)
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn linear(&self) -> &[FieldElement] {
        &self.linear
    }

    pub fn constant(&self) -> &FieldElement {
        &self.constant
    }

    pub fn evaluate(&self, x: &Point) -> Result<FieldElement> {
        let field = self.form.field();
        self.lambda
            .mul(&self.form.quadratic(x.coords())?)?
            .add(&dot(field, &self.linear, x.coords())?)?
            .add(&self.constant)
    }

    /// `DT_x(y) = 2λ·B(x, y) + l(y)`, as a covector.
    pub fn differential(&self, x: &Point) -> Result<Vec<FieldElement>> {
        let two_lambda = self.lambda.mul(&self.form.field().from_i64(2))?;
        let bx = scale_all(&two_lambda, &self.form.lower(x.coords())?)?;
        zip_with(&bx, &self.linear, |a, b| a.add(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &QuadPoly) -> Result<QuadPoly> {
        if self.form != other.form {
            return Err(Error::Degenerate(
                "quadratic polynomials over different forms".to_string(),
            ));
        }
        QuadPoly::new(
            self.form.clone(),
            self.lambda.add(&other.lambda)?,
            zip_with(&self.linear, &other.linear, |a, b| a.add(b))?,
            self.constant.add(&other.constant)?,
        )
    }

    pub fn scale(&self, mu: &FieldElement) -> Result<QuadPoly> {
        QuadPoly::new(
            self.form.clone(),
            mu.mul(&self.lambda)?,
            scale_all(mu, &self.linear)?,
            mu.mul(&self.constant)?,
        )
    }
}

/// The `F`-gradient of `T` for `F = -2B`: the moment-like map `x ↦ -λx + b`
/// with `F(b, ·) = l`.
pub fn f_gradient_map(t: &QuadPoly) -> Result<MomentLikeMap> {
    let field = t.form.field();
    let minus_half = field.from_ratio(-1, 2)?;
    let b = scale_all(&minus_half, &t.form.raise(&t.linear)?)?;
    MomentLikeMap::new(FreeVector::new(field, b)?, t.lambda.clone())
}

/// The quadratic polynomial with constant term `constant` whose gradient
/// map is `p`.
pub fn from_gradient_map(
    form: &BilinearForm,
    p: &MomentLikeMap,
    constant: FieldElement,
) -> Result<QuadPoly> {
    let field = form.field();
    let linear = scale_all(&field.from_i64(-2), &form.lower(p.base_value().coords())?)?;
    QuadPoly::new(form.clone(), p.total_mass().clone(), linear, constant)
}

/// The point where the differential of `T` vanishes.
pub fn critical_point(t: &QuadPoly) -> Result<Point> {
    if t.lambda.is_zero() {
        return Err(Error::NoCriticalPoint);
    }
    f_gradient_map(t)?.center_of_mass()
}

/// Expands `Σ λ_i Q_B(x - A_i)` into `λ Q_B + l + c`.
pub fn sum_of_shifted_quadratics(s: &WeightedSet, form: &BilinearForm) -> Result<QuadPoly> {
    let field = form.field();
    check_dim(form.dim(), s.dim())?;
    if s.field() != field {
        return Err(Error::FieldMismatch {
            left: field,
            right: s.field(),
        });
    }
    let weighted_sum = s.moment_about(&Point::origin(field, s.dim()))?;
    let linear = scale_all(&field.from_i64(-2), &form.lower(weighted_sum.coords())?)?;
    let constant = s.iter().try_fold(field.zero(), |acc, (p, m)| {
        acc.add(&m.mul(&form.quadratic(p.coords())?)?)
    })?;
    QuadPoly::new(form.clone(), s.total_mass()?, linear, constant)
}

/// `Σ λ_i Q_B(x - A_i)` rewritten around the center of mass or, for a
/// weightless set, as a linear form plus a constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CanonicalForm {
    /// `λ Q_B(x - O) + c₀`.
    Centered {
        center: Point,
        mass: FieldElement,
        constant: FieldElement,
    },
    /// `-2B(d, x) + c₀` where `d` is the dipole vector of the set.
    Linear {
        dipole: FreeVector,
        linear: Vec<FieldElement>,
        constant: FieldElement,
    },
}

impl CanonicalForm {
    pub fn constant(&self) -> &FieldElement {
        match self {
            CanonicalForm::Centered { constant, .. } | CanonicalForm::Linear { constant, .. } => {
                constant
            }
        }
    }

    pub fn evaluate(&self, form: &BilinearForm, x: &Point) -> Result<FieldElement> {
        match self {
            CanonicalForm::Centered {
                center,
                mass,
                constant,
            } => {
                let d = center.vector_to(x)?;
                mass.mul(&form.quadratic(d.coords())?)?.add(constant)
            }
            CanonicalForm::Linear {
                linear, constant, ..
            } => dot(form.field(), linear, x.coords())?.add(constant),
        }
    }
}

pub fn canonical_form(s: &WeightedSet, form: &BilinearForm) -> Result<CanonicalForm> {
    let field = form.field();
    let raw = sum_of_shifted_quadratics(s, form)?;
    match reduce(s)?.kind() {
        MassKind::Weighty { point, mass } => {
            let c0 = raw
                .constant
                .sub(&mass.mul(&form.quadratic(point.coords())?)?)?;
            Ok(CanonicalForm::Centered {
                center: point.clone(),
                mass: mass.clone(),
                constant: c0,
            })
        }
        MassKind::Dipole(d) => Ok(CanonicalForm::Linear {
            dipole: d.clone(),
            linear: scale_all(&field.from_i64(-2), &form.lower(d.coords())?)?,
            constant: raw.constant,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn std2() -> BilinearForm {
        BilinearForm::standard(q(), 2).unwrap()
    }

    fn pt(x: i64, y: i64) -> Point {
        Point::from_i64(q(), &[x, y])
    }

    fn qs(xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn form_validation() {
        let m = Matrix::from_i64(q(), &[&[1, 2], &[3, 1]]).unwrap();
        assert_eq!(BilinearForm::new(m), Err(Error::NotSymmetric));
        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(BilinearForm::new(m), Err(Error::SingularMatrix));
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            BilinearForm::standard(f2, 2),
            Err(Error::UnsupportedCharacteristic(2))
        );
    }

    #[test]
    fn evaluate_examples() {
        let t = QuadPoly::new(std2(), q().one(), qs(&[0, 0]), q().zero()).unwrap();
        assert_eq!(t.evaluate(&pt(3, 4)).unwrap(), q().from_i64(25));
        let t = QuadPoly::new(std2(), q().zero(), qs(&[2, -1]), q().from_i64(7)).unwrap();
        assert_eq!(t.evaluate(&pt(3, 4)).unwrap(), q().from_i64(9));
    }

    #[test]
    fn gradient_examples() {
        let t = QuadPoly::new(std2(), q().one(), qs(&[0, 0]), q().zero()).unwrap();
        let g = f_gradient_map(&t).unwrap();
        assert!(g.base_value().is_zero());
        assert_eq!(g.center_of_mass().unwrap(), pt(0, 0));

        let t = QuadPoly::shifted(std2(), &pt(1, 0), &q().from_i64(2)).unwrap();
        let g = f_gradient_map(&t).unwrap();
        assert_eq!(g.total_mass(), &q().from_i64(2));
        assert!(g.evaluate(&pt(1, 0)).unwrap().is_zero());

        let t = QuadPoly::new(std2(), q().zero(), qs(&[4, 0]), q().zero()).unwrap();
        let g = f_gradient_map(&t).unwrap();
        assert!(g.is_constant());
        assert_eq!(g.base_value(), &FreeVector::from_i64(q(), &[-2, 0]));
    }

    #[test]
    fn critical_point_examples() {
        let t = QuadPoly::shifted(std2(), &pt(1, 0), &q().one()).unwrap();
        assert_eq!(critical_point(&t).unwrap(), pt(1, 0));
        assert!(t
            .differential(&pt(1, 0))
            .unwrap()
            .iter()
            .all(|c| c.is_zero()));
        let t = QuadPoly::new(std2(), q().zero(), qs(&[4, 0]), q().zero()).unwrap();
        assert_eq!(critical_point(&t), Err(Error::NoCriticalPoint));
    }

    #[test]
    fn shifted_sum_expansion() {
        let s = WeightedSet::from_i64(q(), 2, &[(&[0, 0], 1), (&[2, 0], 1)]).unwrap();
        let t = sum_of_shifted_quadratics(&s, &std2()).unwrap();
        assert_eq!(t.lambda(), &q().from_i64(2));
        assert_eq!(t.linear(), qs(&[-4, 0]).as_slice());
        assert_eq!(t.constant(), &q().from_i64(4));
        assert_eq!(critical_point(&t).unwrap(), pt(1, 0));

        let empty = sum_of_shifted_quadratics(&WeightedSet::new(q(), 2), &std2()).unwrap();
        assert_eq!(empty, QuadPoly::zero(std2()));

        let a = pt(3, -1);
        let single = WeightedSet::singleton(a.clone(), q().one()).unwrap();
        assert_eq!(
            sum_of_shifted_quadratics(&single, &std2()).unwrap(),
            QuadPoly::shifted(std2(), &a, &q().one()).unwrap()
        );
    }

    #[test]
    fn canonical_examples() {
        let s = WeightedSet::from_i64(q(), 2, &[(&[0, 0], 1), (&[2, 0], 1)]).unwrap();
        let c = canonical_form(&s, &std2()).unwrap();
        assert_eq!(
            c,
            CanonicalForm::Centered {
                center: pt(1, 0),
                mass: q().from_i64(2),
                constant: q().from_i64(2),
            }
        );
        assert_eq!(c.evaluate(&std2(), &pt(0, 0)).unwrap(), q().from_i64(4));

        let s = WeightedSet::from_i64(q(), 2, &[(&[0, 0], 1), (&[2, 0], -1)]).unwrap();
        let c = canonical_form(&s, &std2()).unwrap();
        assert_eq!(
            c,
            CanonicalForm::Linear {
                dipole: FreeVector::from_i64(q(), &[-2, 0]),
                linear: qs(&[4, 0]),
                constant: q().from_i64(-4),
            }
        );

        let single = WeightedSet::from_i64(q(), 2, &[(&[5, 1], 3)]).unwrap();
        let c = canonical_form(&single, &std2()).unwrap();
        assert!(c.constant().is_zero());
    }

    #[test]
    fn gradient_roundtrip() {
        let t = QuadPoly::new(std2(), q().from_i64(3), qs(&[5, -7]), q().from_i64(11)).unwrap();
        let g = f_gradient_map(&t).unwrap();
        assert_eq!(from_gradient_map(&std2(), &g, q().from_i64(11)).unwrap(), t);
    }
}
