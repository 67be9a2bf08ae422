//! Seeded random instances for demos and property checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::affine::{AffineMap, FreeVector, Point};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::mass::MassElement;
use crate::quadratic::BilinearForm;
use crate::weighted::WeightedSet;

/// A small random element: `a/b` with `|a| ≤ 20`, `1 ≤ b ≤ 6` over the
/// rationals, a uniform residue in `F_p`, a uniform value in `[-10, 10]` for
/// floats.
pub fn element<R: Rng + ?Sized>(field: Field, rng: &mut R) -> FieldElement {
    match field {
        Field::Rational => {
            let num = rng.gen_range(-20i64..=20);
            let den = rng.gen_range(1i64..=6);
            field
                .from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
                .expect("nonzero denominator")
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p.get()) as i64),
        Field::Float(_) => field
            .from_f64(rng.gen_range(-10.0..=10.0))
            .expect("float field"),
    }
}

pub fn nonzero_element<R: Rng + ?Sized>(field: Field, rng: &mut R) -> FieldElement {
    loop {
        let x = element(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A small integer, mapped into the field.
pub fn small_integer<R: Rng + ?Sized>(field: Field, bound: i64, rng: &mut R) -> FieldElement {
    field.from_i64(rng.gen_range(-bound..=bound))
}

pub fn point<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Point {
    Point::new(field, (0..n).map(|_| element(field, rng)).collect()).expect("same field")
}

pub fn vector<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> FreeVector {
    point(field, n, rng).position()
}

/// Up to `max_len` random entries; coincident points merge and zero masses
/// drop out, so the result may be smaller.
pub fn weighted_set<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    max_len: usize,
    rng: &mut R,
) -> WeightedSet {
    let len = rng.gen_range(0..=max_len);
    let mut s = WeightedSet::new(field, n);
    for _ in 0..len {
        // reuse an existing point now and then so merging is exercised
        let p = if !s.is_empty() && rng.gen_bool(0.15) {
            let k = rng.gen_range(0..s.len());
            s.iter().nth(k).map(|(p, _)| p.clone()).expect("in range")
        } else {
            point(field, n, rng)
        };
        s.insert(p, nonzero_element(field, rng))
            .expect("same space");
    }
    s
}

/// A weighted set with nonzero total mass.
pub fn weighty_set<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    max_len: usize,
    rng: &mut R,
) -> WeightedSet {
    loop {
        let s = weighted_set(field, n, max_len.max(1), rng);
        if !s.total_mass().expect("same field").is_zero() {
            return s;
        }
    }
}

/// A weighted set of total mass zero.
pub fn weightless_set<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    max_len: usize,
    rng: &mut R,
) -> WeightedSet {
    let mut s = weighted_set(field, n, max_len, rng);
    let total = s.total_mass().expect("same field");
    s.insert(point(field, n, rng), total.neg())
        .expect("same space");
    s
}

/// Weighty points and dipoles in roughly equal proportion, with the zero
/// dipole showing up occasionally.
pub fn mass_element<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> MassElement {
    match rng.gen_range(0..10) {
        0 => MassElement::zero(field, n),
        1..=5 => MassElement::weighty(point(field, n, rng), nonzero_element(field, rng))
            .expect("same field"),
        _ => MassElement::dipole(vector(field, n, rng)),
    }
}

pub fn matrix<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| small_integer(field, 5, rng))
        .collect();
    Matrix::new(field, rows, cols, data).expect("sizes agree")
}

pub fn affine_map<R: Rng + ?Sized>(
    field: Field,
    domain: usize,
    codomain: usize,
    rng: &mut R,
) -> AffineMap {
    AffineMap::new(
        matrix(field, codomain, domain, rng),
        vector(field, codomain, rng),
    )
    .expect("sizes agree")
}

pub fn invertible_affine_map<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> AffineMap {
    loop {
        let f = affine_map(field, n, n, rng);
        if f.is_invertible() {
            return f;
        }
    }
}

/// A random symmetric non-degenerate form with small integer entries.
pub fn symmetric_form<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> BilinearForm {
    loop {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in i..n {
                let x = small_integer(field, 4, rng);
                m.set(i, j, x.clone());
                m.set(j, i, x);
            }
        }
        if let Ok(form) = BilinearForm::new(m) {
            return form;
        }
    }
}
