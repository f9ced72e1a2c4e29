//! Algebraic invariants on random inputs.

use proptest::prelude::*;
use tangrass::chains::linear::is_zero_nf;
use tangrass::chains::relations::{five_term, four_term, inversion2, inversion3, three_term3, two_term};
use tangrass::chains::FormalSum;
use tangrass::configs::{Configuration, mat_inverse};
use tangrass::epsring::TruncPoly;
use tangrass::maps::{del_eps3_gen, del_eps_w2, del_eps_w3_mid};
use tangrass::random::{generic_config, trial_rng};
use tangrass::ratios::{cross_ratio, triple_ratio};
use tangrass::scalars::rational::rat;
use tangrass::scalars::{expand_factorization, RatFunc, Rational, Scalar};

fn small() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    small().prop_filter("nonzero", |q| *q != rat(0, 1))
}

fn poly(nu: usize) -> impl Strategy<Value = TruncPoly<Rational>> {
    prop::collection::vec(small(), nu).prop_map(|c| TruncPoly::new(c).unwrap())
}

fn unit(nu: usize) -> impl Strategy<Value = TruncPoly<Rational>> {
    (nonzero(), prop::collection::vec(small(), nu - 1)).prop_map(|(a, rest)| {
        let mut c = vec![a];
        c.extend(rest);
        TruncPoly::new(c).unwrap()
    })
}

/// Outside `{0, 1}`.
fn arg() -> impl Strategy<Value = Rational> {
    nonzero().prop_filter("not one", |q| *q != rat(1, 1))
}

fn config(seed: u64, n: usize, dim: usize, nu: usize) -> Configuration<Rational> {
    generic_config(&mut trial_rng(seed, 0), n, dim, nu, |_| true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn truncated_ring_laws((x, y, z) in (1usize..=5).prop_flat_map(|nu| (poly(nu), poly(nu), poly(nu)))) {
        let m = |a: &TruncPoly<Rational>, b: &TruncPoly<Rational>| a.trunc_mul(b).unwrap();
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &y), m(&y, &x));
        prop_assert_eq!(m(&x, &(&y + &z)), &m(&x, &y) + &m(&x, &z));
        prop_assert_eq!(&(&x - &y) + &y, x);
    }

    #[test]
    fn units_invert(u in unit(4), x in poly(4)) {
        prop_assert_eq!(u.trunc_mul(&u.trunc_inv().unwrap()).unwrap(), TruncPoly::one(4));
        prop_assert_eq!(x.try_div(&u).unwrap().trunc_mul(&u).unwrap(), x);
    }

    #[test]
    fn star_action_is_multiplicative(x in poly(2), y in poly(2), l in nonzero(), k in nonzero()) {
        let s = |p: &TruncPoly<Rational>, l: &Rational| p.star_action(l).unwrap();
        prop_assert_eq!(s(&x.trunc_mul(&y).unwrap(), &l), s(&x, &l).trunc_mul(&s(&y, &l)).unwrap());
        prop_assert_eq!(s(&s(&x, &k), &l), s(&x, &(k.clone() * &l)));
    }

    #[test]
    fn rational_factorization_round_trips(q in nonzero()) {
        prop_assert_eq!(expand_factorization::<Rational>(&q.factor().unwrap()), q);
    }

    #[test]
    fn rational_functions_print_and_parse(c in prop::collection::vec(small(), 6)) {
        let a = RatFunc::named("a").unwrap();
        let b = RatFunc::named("b").unwrap();
        let k = |q: &Rational| RatFunc::from_rational(q.clone());
        let num = k(&c[0]) + &(k(&c[1]) * &a) + &(k(&c[2]) * &a * &b);
        let den = k(&rat(1, 1)) + &(k(&c[3]) * &b) + &(k(&c[4]) * &a * &a) + &k(&c[5]);
        prop_assume!(!den.is_zero());
        let f = num.div(&den).unwrap();
        prop_assert_eq!(RatFunc::parse(&f.to_string()).unwrap(), f.clone());
        let g = Scalar::factor(&f).unwrap();
        prop_assert_eq!(expand_factorization::<RatFunc>(&g), f);
    }

    #[test]
    fn formal_sums_form_a_group(a in prop::collection::vec((0u8..6, small()), 0..8),
                                b in prop::collection::vec((0u8..6, small()), 0..8),
                                c in nonzero()) {
        let x: FormalSum<u8> = a.into_iter().collect();
        let y: FormalSum<u8> = b.into_iter().collect();
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).scale(&c), x.scale(&c).add(&y.scale(&c)));
        prop_assert!(x.sub(&x).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cross_ratio_is_projectively_invariant(seed in any::<u64>(), u in unit(3), i in 0usize..4,
                                              m in prop::collection::vec(unit(3), 4)) {
        let c = config(seed, 4, 2, 3);
        let r = cross_ratio(&c).unwrap();
        prop_assert_eq!(cross_ratio(&c.rescaled(i, &u).unwrap()).unwrap(), r.clone());
        let g = vec![vec![m[0].clone(), m[1].clone()], vec![m[2].clone(), m[3].clone()]];
        prop_assume!(mat_inverse(&g).is_ok());
        prop_assert_eq!(cross_ratio(&c.transformed(&g).unwrap()).unwrap(), r);
    }

    #[test]
    fn triple_ratio_is_projectively_invariant(seed in any::<u64>(), u in unit(2), i in 0usize..6) {
        let c = config(seed, 6, 3, 2);
        let Ok(r) = triple_ratio(&c) else { return Ok(()) };
        prop_assert_eq!(triple_ratio(&c.rescaled(i, &u).unwrap()).unwrap(), r);
    }

    #[test]
    fn dilogarithm_relations_have_zero_image(a in arg(), b in arg(), da in small(), db in small()) {
        prop_assume!(a != b);
        let zero = |x: FormalSum<_>| is_zero_nf(&del_eps_w2(&x).unwrap()).unwrap();
        prop_assert!(zero(two_term(&a, &da).unwrap()));
        prop_assert!(zero(inversion2(&a, &da).unwrap()));
        if let Ok(x) = five_term(&a, &b, &da, &db) {
            prop_assert!(zero(x));
        }
        if let Ok(x) = four_term(&a, &b) {
            prop_assert!(zero(x));
        }
    }

    #[test]
    fn trilogarithm_relations_satisfy_the_complex(a in arg(), da in small()) {
        let zero = |x: FormalSum<_>| is_zero_nf(&del_eps_w3_mid(&del_eps3_gen(&x).unwrap()).unwrap()).unwrap();
        if let Ok(x) = three_term3(&a, &da) {
            prop_assert!(zero(x));
        }
        prop_assert!(zero(inversion3(&a, &da).unwrap()));
    }
}
