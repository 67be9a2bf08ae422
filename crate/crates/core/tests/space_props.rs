//! Affine space, weighted sets and moment-like maps.

mod common;

use common::*;
use masscalc::affine::{pairs_equivalent, AffineMap, FreeVector, Point};
use masscalc::moment::{moment_correspondence, MomentLikeMap};
use masscalc::random;
use masscalc::weighted::WeightedSet;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shift_action_is_simply_transitive(field in any_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = random::point(field, n, &mut rng);
        let r = random::point(field, n, &mut rng);
        let v = p.vector_to(&r).unwrap();
        prop_assert_eq!(p.shift(&v).unwrap(), r.clone());
        // any other vector misses
        let w = random::vector(field, n, &mut rng);
        prop_assert_eq!(p.shift(&w).unwrap() == r, w == v);
        prop_assert_eq!(p.shift(&FreeVector::zero(field, n)).unwrap(), p);
    }

    #[test]
    fn affine_maps_preserve_pair_equivalence(field in any_exact_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random::affine_map(field, n, rng.gen_range(1..4), &mut rng);
        let (a, b, c) = (
            random::point(field, n, &mut rng),
            random::point(field, n, &mut rng),
            random::point(field, n, &mut rng),
        );
        let d = c.shift(&a.vector_to(&b).unwrap()).unwrap();
        prop_assert!(pairs_equivalent(&a, &b, &c, &d).unwrap());
        let img: Vec<Point> = [&a, &b, &c, &d].iter().map(|p| f.apply(p).unwrap()).collect();
        prop_assert!(pairs_equivalent(&img[0], &img[1], &img[2], &img[3]).unwrap());
    }

    #[test]
    fn composition_composes_linear_parts(field in any_exact_field(), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (l, m, n) = (rng.gen_range(1..4), rng.gen_range(1..4), rng.gen_range(1..4));
        let g = random::affine_map(field, l, m, &mut rng);
        let f = random::affine_map(field, m, n, &mut rng);
        let fg = AffineMap::compose(&f, &g).unwrap();
        prop_assert_eq!(fg.linear_part(), &f.linear_part().mul(g.linear_part()).unwrap());
        let p = random::point(field, l, &mut rng);
        prop_assert_eq!(fg.apply(&p).unwrap(), f.apply(&g.apply(&p).unwrap()).unwrap());
    }

    #[test]
    fn pivot_change(field in any_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let s = random::weighted_set(field, n, 8, &mut rng);
        let (o1, o2) = (random::point(field, n, &mut rng), random::point(field, n, &mut rng));
        let lhs = s.moment_about(&o1).unwrap().sub(&s.moment_about(&o2).unwrap()).unwrap();
        let rhs = o2.vector_to(&o1).unwrap().scale(&s.total_mass().unwrap().neg()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn moments_are_linear(field in any_exact_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let s = random::weighted_set(field, n, 6, &mut rng);
        let t = random::weighted_set(field, n, 6, &mut rng);
        let (alpha, beta) = (random::element(field, &mut rng), random::element(field, &mut rng));
        let o = random::point(field, n, &mut rng);
        let combined = WeightedSet::linear_combine(&alpha, &s, &beta, &t).unwrap();
        let expected = s.moment_about(&o).unwrap().scale(&alpha).unwrap()
            .add(&t.moment_about(&o).unwrap().scale(&beta).unwrap()).unwrap();
        prop_assert_eq!(combined.moment_about(&o).unwrap(), expected);
    }

    #[test]
    fn moments_of_a_partition_add(field in any_exact_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let s = random::weighted_set(field, n, 10, &mut rng);
        let o = random::point(field, n, &mut rng);
        let pick: Vec<bool> = (0..s.len()).map(|_| rng.gen_bool(0.5)).collect();
        let mut picks = pick.iter();
        let left = s.restrict(|_, _| *picks.next().unwrap());
        let right = s.difference(&left).unwrap();
        prop_assert_eq!(left.union_sum(&right).unwrap(), s.clone());
        let sum = left.moment_about(&o).unwrap().add(&right.moment_about(&o).unwrap()).unwrap();
        prop_assert_eq!(sum, s.moment_about(&o).unwrap());
    }

    #[test]
    fn null_sets_form_a_subspace(field in any_exact_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let null = |rng: &mut rand_chacha::ChaCha8Rng| {
            let s = random::weighted_set(field, n, 5, rng);
            let r = masscalc::mass::reduce(&s).unwrap().representative().unwrap();
            s.difference(&r).unwrap()
        };
        let (a, b) = (null(&mut rng), null(&mut rng));
        prop_assert!(a.is_null_set().unwrap());
        prop_assert!(b.is_null_set().unwrap());
        let (alpha, beta) = (random::element(field, &mut rng), random::element(field, &mut rng));
        prop_assert!(WeightedSet::linear_combine(&alpha, &a, &beta, &b).unwrap().is_null_set().unwrap());
    }

    #[test]
    fn characteristic_identity_of_moment_maps(field in any_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = MomentLikeMap::new(random::vector(field, n, &mut rng), random::element(field, &mut rng)).unwrap();
        let (o1, o2) = (random::point(field, n, &mut rng), random::point(field, n, &mut rng));
        let lhs = p.evaluate(&o1).unwrap().sub(&p.evaluate(&o2).unwrap()).unwrap();
        let rhs = o2.vector_to(&o1).unwrap().scale(&p.total_mass().neg()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weighty_maps_vanish_only_at_the_center(field in any_exact_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = MomentLikeMap::new(random::vector(field, n, &mut rng), random::nonzero_element(field, &mut rng)).unwrap();
        let center = p.center_of_mass().unwrap();
        prop_assert!(p.evaluate(&center).unwrap().is_zero());
        // the center is λ⁻¹ P(origin)
        let via_origin = p.evaluate(&Point::origin(field, n)).unwrap()
            .scale(&p.total_mass().inv().unwrap()).unwrap().from_origin();
        prop_assert_eq!(&via_origin, &center);
        for _ in 0..100 {
            let q = random::point(field, n, &mut rng);
            if q != center {
                prop_assert!(!p.evaluate(&q).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn moment_maps_classify_sets(field in any_exact_field(), n in 1usize..3, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let s = random::weighted_set(field, n, 4, &mut rng);
        let t = if rng.gen_bool(0.5) {
            masscalc::mass::reduce(&s).unwrap().representative().unwrap()
        } else {
            random::weighted_set(field, n, 4, &mut rng)
        };
        let same_map = moment_correspondence(&s).unwrap() == moment_correspondence(&t).unwrap();
        prop_assert_eq!(same_map, s.equivalent(&t).unwrap());
    }

    #[test]
    fn maps_agreeing_at_two_points_agree(field in any_exact_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = MomentLikeMap::new(random::vector(field, n, &mut rng), random::element(field, &mut rng)).unwrap();
        let (a, b) = (random::point(field, n, &mut rng), random::point(field, n, &mut rng));
        prop_assume!(a != b);
        // rebuild from the value at `a` and the mass read off from a second point
        let (pa, pb) = (p.evaluate(&a).unwrap(), p.evaluate(&b).unwrap());
        let ab = a.vector_to(&b).unwrap();
        let k = ab.coords().iter().position(|x| !x.is_zero()).unwrap();
        let lambda = pa.sub(&pb).unwrap().coords()[k].div(&ab.coords()[k]).unwrap();
        let rebuilt = MomentLikeMap::from_value_at(&a, pa, lambda).unwrap();
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn representation_is_bijective(field in any_exact_field(), n in 1usize..4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let v = random::vector(field, n, &mut rng);
        let lambda = random::element(field, &mut rng);
        let p = MomentLikeMap::new(v.clone(), lambda.clone()).unwrap();
        prop_assert_eq!(p.base_value(), &v);
        prop_assert_eq!(p.total_mass(), &lambda);
        prop_assert_eq!(p.evaluate(&Point::origin(field, n)).unwrap(), v);
    }
}
