//! Shared helpers and hand-written oracles for the integration tests.
#![allow(dead_code)]

use masscalc::affine::{FreeVector, Point};
use masscalc::field::{Field, FieldElement};
use masscalc::weighted::WeightedSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> Field {
    Field::Rational
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// Exact fields used throughout: the rationals and a few small primes,
/// including characteristic two.
pub fn exact_fields() -> Vec<Field> {
    vec![q(), fp(2), fp(3), fp(5), fp(7), fp(97)]
}

pub fn any_exact_field() -> impl Strategy<Value = Field> {
    prop::sample::select(exact_fields())
}

pub fn any_field() -> impl Strategy<Value = Field> {
    let mut fields = exact_fields();
    fields.push(Field::float_default());
    prop::sample::select(fields)
}

/// Exact fields whose characteristic is not two.
pub fn odd_fields() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![q(), fp(3), fp(5), fp(7), fp(97)])
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn elements_to_rationals(v: &[FieldElement]) -> Vec<BigRational> {
    v.iter().map(|x| x.as_rational().unwrap().clone()).collect()
}

pub fn point_q(coords: &[BigRational]) -> Point {
    Point::new(
        q(),
        coords
            .iter()
            .map(|c| q().from_rational(c).unwrap())
            .collect(),
    )
    .unwrap()
}

/// `Σ λ_i A_i / Σ λ_i` computed coordinate by coordinate.
pub fn barycenter_oracle(s: &WeightedSet) -> Option<Point> {
    let f = s.field();
    let mut total = f.zero();
    let mut acc = vec![f.zero(); s.dim()];
    for (p, m) in s.iter() {
        total = total.add(m).unwrap();
        for (a, c) in acc.iter_mut().zip(p.coords()) {
            *a = a.add(&m.mul(c).unwrap()).unwrap();
        }
    }
    if total.is_zero() {
        return None;
    }
    let coords = acc.iter().map(|a| a.div(&total).unwrap()).collect();
    Some(Point::new(f, coords).unwrap())
}

/// `Σ λ_i A_i` for a weightless set.
pub fn dipole_oracle(s: &WeightedSet) -> FreeVector {
    let f = s.field();
    let mut acc = vec![f.zero(); s.dim()];
    for (p, m) in s.iter() {
        for (a, c) in acc.iter_mut().zip(p.coords()) {
            *a = a.add(&m.mul(c).unwrap()).unwrap();
        }
    }
    FreeVector::new(f, acc).unwrap()
}

/// Intersection of the altitudes from `a` and `b` of triangle `abc` for the
/// dot product, by Cramer's rule over the rationals.
pub fn altitude_intersection_oracle(
    a: &[BigRational],
    b: &[BigRational],
    c: &[BigRational],
) -> Vec<BigRational> {
    // (x - a)·(c - b) = 0 and (x - b)·(c - a) = 0
    let (u0, u1) = (&c[0] - &b[0], &c[1] - &b[1]);
    let (v0, v1) = (&c[0] - &a[0], &c[1] - &a[1]);
    let r0 = &u0 * &a[0] + &u1 * &a[1];
    let r1 = &v0 * &b[0] + &v1 * &b[1];
    let det = &u0 * &v1 - &u1 * &v0;
    vec![
        (&r0 * &v1 - &u1 * &r1) / &det,
        (&u0 * &r1 - &r0 * &v0) / &det,
    ]
}

/// Integer triangle with coordinates in `[-100, 100]`, rejecting collinear
/// vertices.
pub fn random_int_triangle<R: rand::Rng>(rng: &mut R) -> [[i64; 2]; 3] {
    loop {
        let mut t = [[0i64; 2]; 3];
        for v in t.iter_mut() {
            for c in v.iter_mut() {
                *c = rng.gen_range(-100..=100);
            }
        }
        let det =
            (t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) - (t[1][1] - t[0][1]) * (t[2][0] - t[0][0]);
        if det != 0 {
            return t;
        }
    }
}

pub fn rationals(t: [i64; 2]) -> Vec<BigRational> {
    t.iter().map(|&x| ratio(x, 1)).collect()
}
