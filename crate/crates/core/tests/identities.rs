mod common;

use std::sync::Arc;

use common::{ambients, polys};
use mzlab_core::maps::{exp_ln_derivation, iterate, orbit_collision, EDeriv, MapSpec, PolyOp};
use mzlab_core::{Ambient, Poly, Ring};
use proptest::prelude::*;

fn endo(amb: Arc<Ambient>) -> impl Strategy<Value = (Arc<Ambient>, MapSpec)> {
    let a = amb.clone();
    (polys(amb.clone(), 0, 2, 3), polys(amb, 0, 2, 3))
        .prop_map(move |(p, q)| (a.clone(), MapSpec::endomorphism(&a, vec![p, q]).unwrap()))
}

/// Images `c0 + c1 x + c2 y`, so iterates keep their degree.
fn affine_endo(amb: Arc<Ambient>) -> impl Strategy<Value = (Arc<Ambient>, MapSpec)> {
    prop::collection::vec(-3i64..=3, 6).prop_map(move |c| {
        let img = |k: usize| common::poly_from(&amb, &[(vec![0, 0], c[k]), (vec![1, 0], c[k + 1]), (vec![0, 1], c[k + 2])]);
        let images = vec![img(0), img(3)];
        (amb.clone(), MapSpec::endomorphism(&amb, images).unwrap())
    })
}

fn deriv(amb: Arc<Ambient>) -> impl Strategy<Value = (Arc<Ambient>, MapSpec)> {
    let a = amb.clone();
    (polys(amb.clone(), 0, 2, 3), polys(amb, 0, 2, 3))
        .prop_map(move |(p, q)| (a.clone(), MapSpec::derivation(&a, vec![p, q]).unwrap()))
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn e_derivation_product_law(((_amb, phi), f, g) in ambients().prop_flat_map(|a| (endo(a.clone()), polys(a.clone(), 0, 3, 4), polys(a, 0, 3, 4)))) {
        let d = EDeriv::new(phi).unwrap();
        let df = d.apply(&f).unwrap();
        let dg = d.apply(&g).unwrap();
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&(&df * &g) + &(&f * &dg)) - &(&df * &dg);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn iterated_e_derivation_product(((_amb, phi), f, g, n) in ambients().prop_flat_map(|a| (affine_endo(a.clone()), polys(a.clone(), 0, 2, 3), polys(a, 0, 2, 3), 1usize..=5))) {
        let d = EDeriv::new(phi.clone()).unwrap();
        let lhs = iterate(&d, &(&f * &g), n).unwrap();
        let ring = f.ring();
        let mut rhs = Poly::zero(f.ambient());
        for i in 0..=n {
            let left = iterate(&d, &f, i).unwrap();
            let right = iterate(&phi, &iterate(&d, &g, n - i).unwrap(), i).unwrap();
            rhs = &rhs + &(&left * &right).scale(&ring.from_i64(binom(n, i)));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_zero_translate_law(
        amb in ambients(),
        shift in -3i64..=3,
        yimg in 0usize..3,
        a in prop::collection::vec(-3i64..=3, 4),
        b in prop::collection::vec(-3i64..=3, 4),
        useed in prop::collection::vec((prop::collection::vec(0i32..=3, 2), -4i64..=4), 0..=4),
        m in 1usize..=6,
    ) {
        // phi(x) = x + shift, phi(y) in {y, 0, 2y}: v = a(y) + b(y) x has delta^2 v = 0.
        let ring = amb.ring;
        let x = Poly::var(&amb, 0);
        let y = Poly::var(&amb, 1);
        let yi = match yimg { 0 => y.clone(), 1 => Poly::zero(&amb), _ => y.scale(&ring.from_i64(2)) };
        let phi = MapSpec::endomorphism(&amb, vec![&x + &Poly::constant(&amb, ring.from_i64(shift)), yi]).unwrap();
        let d = EDeriv::new(phi).unwrap();
        let in_y = |cs: &[i64]| cs.iter().enumerate().fold(Poly::zero(&amb), |acc, (k, c)| &acc + &y.pow(k as u32).scale(&ring.from_i64(*c)));
        let v = &in_y(&a) + &(&in_y(&b) * &x);
        let d1v = d.apply(&v).unwrap();
        prop_assume!(d.apply(&d1v).unwrap().is_zero());
        let u = common::poly_from(&amb, &useed);
        let dm = iterate(&d, &u, m).unwrap();
        let dm1 = iterate(&d, &u, m - 1).unwrap();
        let lhs = iterate(&d, &(&u * &v), m).unwrap();
        let rhs = &(&dm * &v) + &(&(&dm1 - &dm) * &d1v).scale(&ring.from_i64(m as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_law(((_amb, d), f, g) in ambients().prop_flat_map(|a| (deriv(a.clone()), polys(a.clone(), 0, 3, 4), polys(a, 0, 3, 4)))) {
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homomorphism_law(((_amb, phi), f, g) in ambients().prop_flat_map(|a| (endo(a.clone()), polys(a.clone(), 0, 3, 4), polys(a, 0, 3, 4)))) {
        let lhs = phi.apply(&(&f * &g)).unwrap();
        let rhs = &phi.apply(&f).unwrap() * &phi.apply(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(phi.apply(&Poly::one(f.ambient())).unwrap(), Poly::one(f.ambient()));
    }

    #[test]
    fn ring_axioms((f, g, h) in ambients().prop_flat_map(|a| (polys(a.clone(), 0, 3, 4), polys(a.clone(), 0, 3, 4), polys(a, 0, 3, 4)))) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn power_law((f, a, b) in ambients().prop_flat_map(|amb| (polys(amb, 0, 2, 3), 0u32..=6, 0u32..=6))) {
        prop_assert_eq!(f.pow(a + b), &f.pow(a) * &f.pow(b));
    }

    #[test]
    fn exponential_is_multiplicative(
        c in -3i64..=3,
        ys in prop::collection::vec(-3i64..=3, 3),
        fseed in prop::collection::vec((prop::collection::vec(0i32..=3, 2), -4i64..=4), 0..=4),
        gseed in prop::collection::vec((prop::collection::vec(0i32..=3, 2), -4i64..=4), 0..=4),
    ) {
        // D(x) = p(y), D(y) = c is locally nilpotent.
        let amb = Ambient::new(Ring::Q, &["x", "y"], false);
        let y = Poly::var(&amb, 1);
        let p = ys.iter().enumerate().fold(Poly::zero(&amb), |acc, (k, v)| &acc + &y.pow(k as u32).scale(&amb.ring.from_i64(*v)));
        let d = MapSpec::derivation(&amb, vec![p, Poly::constant(&amb, amb.ring.from_i64(c))]).unwrap();
        let f = common::poly_from(&amb, &fseed);
        let g = common::poly_from(&amb, &gseed);
        let ef = exp_ln_derivation(&d, &f, 64).unwrap();
        let eg = exp_ln_derivation(&d, &g, 64).unwrap();
        let efg = exp_ln_derivation(&d, &(&f * &g), 64).unwrap();
        prop_assert_eq!(efg, &ef * &eg);
    }

    #[test]
    fn orbit_collisions_reverify(((_amb, phi), a) in ambients().prop_flat_map(|amb| (affine_endo(amb.clone()), polys(amb, 0, 2, 3)))) {
        if let Some((i, j)) = orbit_collision(&phi, &a, 12).unwrap() {
            prop_assert!(i < j);
            prop_assert_eq!(iterate(&phi, &a, i).unwrap(), iterate(&phi, &a, j).unwrap());
        }
    }
}
