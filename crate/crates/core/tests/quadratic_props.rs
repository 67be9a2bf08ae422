mod common;

use common::*;
use masscalc::affine::Point;
use masscalc::field::{Field, FieldElement};
use masscalc::mass::reduce;
use masscalc::quadratic::{
    canonical_form, critical_point, f_gradient_map, from_gradient_map, sum_of_shifted_quadratics,
    BilinearForm, QuadPoly,
};
use masscalc::weighted::WeightedSet;
use masscalc::{random, Error};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

/// `Σ λ_i Q_B(x - A_i)` evaluated term by term.
fn raw_sum(s: &WeightedSet, form: &BilinearForm, x: &Point) -> FieldElement {
    s.iter().fold(s.field().zero(), |acc, (a, m)| {
        let d = a.vector_to(x).unwrap();
        acc.add(&m.mul(&form.quadratic(d.coords()).unwrap()).unwrap())
            .unwrap()
    })
}

fn random_poly(form: &BilinearForm, rng: &mut ChaCha8Rng) -> QuadPoly {
    let f = form.field();
    let n = form.dim();
    QuadPoly::new(
        form.clone(),
        random::element(f, rng),
        (0..n).map(|_| random::element(f, rng)).collect(),
        random::element(f, rng),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn canonical_form_matches_raw_sum(field in odd_fields(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let form = random::symmetric_form(field, n, &mut rng);
        let s = random::weighted_set(field, n, 6, &mut rng);
        let canon = canonical_form(&s, &form).unwrap();
        let expanded = sum_of_shifted_quadratics(&s, &form).unwrap();
        for _ in 0..10 {
            let x = random::point(field, n, &mut rng);
            let direct = raw_sum(&s, &form, &x);
            prop_assert_eq!(&canon.evaluate(&form, &x).unwrap(), &direct);
            prop_assert_eq!(&expanded.evaluate(&x).unwrap(), &direct);
        }
    }

    #[test]
    fn critical_point_is_the_center(field in odd_fields(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let s = random::weighty_set(field, n, 6, &mut rng);
        let center = reduce(&s).unwrap().point().cloned().unwrap();
        for _ in 0..3 {
            let form = random::symmetric_form(field, n, &mut rng);
            let t = sum_of_shifted_quadratics(&s, &form).unwrap();
            let crit = critical_point(&t).unwrap();
            prop_assert_eq!(&crit, &center);
            prop_assert!(t.differential(&crit).unwrap().iter().all(FieldElement::is_zero));
        }
    }

    #[test]
    fn gradient_map_is_linear_with_constant_kernel(field in odd_fields(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let form = random::symmetric_form(field, n, &mut rng);
        let (t, u) = (random_poly(&form, &mut rng), random_poly(&form, &mut rng));
        let mu = random::element(field, &mut rng);
        prop_assert_eq!(
            f_gradient_map(&t.add(&u).unwrap()).unwrap(),
            f_gradient_map(&t).unwrap().add(&f_gradient_map(&u).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f_gradient_map(&t.scale(&mu).unwrap()).unwrap(),
            f_gradient_map(&t).unwrap().scale(&mu).unwrap()
        );
        let c = random::element(field, &mut rng);
        let constant = QuadPoly::new(form.clone(), field.zero(), vec![field.zero(); n], c.clone()).unwrap();
        prop_assert!(f_gradient_map(&constant).unwrap().is_constant());
        prop_assert!(f_gradient_map(&constant).unwrap().base_value().is_zero());
        let back = from_gradient_map(&form, &f_gradient_map(&t).unwrap(), t.constant().clone()).unwrap();
        prop_assert_eq!(back, t);
    }
}

#[test]
fn float_gradient_matches_finite_differences() {
    let field = Field::float_default();
    let mut rng = rng(9);
    let h = 1e-5;
    for _ in 0..100 {
        let form = random::symmetric_form(field, 3, &mut rng);
        let s = random::weighted_set(field, 3, 6, &mut rng);
        let t = sum_of_shifted_quadratics(&s, &form).unwrap();
        let x = random::point(field, 3, &mut rng);
        let grad = t.differential(&x).unwrap();
        for k in 0..3 {
            let step = |sign: f64| {
                let mut c: Vec<FieldElement> = x.coords().to_vec();
                c[k] = field.from_f64(c[k].to_f64() + sign * h).unwrap();
                t.evaluate(&Point::new(field, c).unwrap()).unwrap().to_f64()
            };
            let fd = (step(1.0) - step(-1.0)) / (2.0 * h);
            let g = grad[k].to_f64();
            assert!((fd - g).abs() <= 1e-6 * g.abs().max(1.0), "{fd} vs {g}");
        }
    }
}

#[test]
fn characteristic_two_is_rejected() {
    let f2 = Field::prime(2).unwrap();
    let m = masscalc::linalg::Matrix::identity(f2, 2);
    assert_eq!(
        BilinearForm::new(m).unwrap_err(),
        Error::UnsupportedCharacteristic(2)
    );
}
