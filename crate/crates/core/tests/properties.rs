use abmod::change_of_variable::{module_pushforward, pushforward, ChangeOfVariable};
use abmod::classification::{find_l, gamma_normal_basis, make_e_gamma, presentation_theme_param};
use abmod::module::{modules_isomorphic, FrescoPresentation};
use abmod::{OreOperator, Rat, TruncSeries};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rat::new(p, q))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn unit(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(small_rat(), 0..6).prop_map(move |mut c| {
        c.insert(0, Rat::one());
        TruncSeries::new(c, order)
    })
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(small_rat(), 0..8).prop_map(move |c| TruncSeries::new(c, order))
}

fn theta() -> impl Strategy<Value = ChangeOfVariable> {
    (nonzero_rat(), prop::collection::vec(small_rat(), 0..3)).prop_map(|(t1, rest)| {
        let mut c = vec![t1];
        c.extend(rest);
        ChangeOfVariable::new(c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exp_and_log_are_inverse(s in series(12)) {
        let s = s.shift(1).truncate(12);
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn inverse_of_unit(u in unit(12)) {
        prop_assert_eq!(u.mul(&u.inv().unwrap()), TruncSeries::one(12));
    }

    #[test]
    fn series_product_is_commutative_and_leibniz(s in series(10), t in series(10)) {
        prop_assert_eq!(s.mul(&t), t.mul(&s));
        let lhs = s.mul(&t).b2_derivative();
        let rhs = s.b2_derivative().mul(&t).add(&s.mul(&t.b2_derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_product_is_associative(x in unit(10), y in unit(10), l in small_rat()) {
        let p = OreOperator::a(10).add(&OreOperator::series(x));
        let q = OreOperator::a_minus(&l, 10);
        let r = OreOperator::series(y).mul(&OreOperator::a(10));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
    }

    #[test]
    fn alpha_beta_commutator(t in theta()) {
        let (a, b) = (t.alpha(12), t.beta(12));
        prop_assert_eq!(a.mul(&b).sub(&b.mul(&a)), b.mul(&b));
    }

    #[test]
    fn divmod_round_trip(x in unit(10), y in unit(10), l in small_rat()) {
        let q = OreOperator::a(10).pow(2).add(&OreOperator::series(x).mul(&OreOperator::a(10))).add(&OreOperator::series(y));
        let p = OreOperator::a_minus(&l, 10);
        let (t, r) = q.left_divmod(&p).unwrap();
        prop_assert_eq!(t.mul(&p).add(&r), q);
        prop_assert_eq!(r.a_degree().unwrap_or(0), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gamma_round_trip(g in small_rat(), p1 in 2usize..=3, p2 in 2usize..=3) {
        let n = 2 * (p1 + p2) + 4;
        let e = make_e_gamma(&Rat::new(7, 2), p1, p2, &g, n).unwrap();
        prop_assert_eq!(gamma_normal_basis(&e).unwrap().gamma, g);
    }

    #[test]
    fn rank_two_parameter_scales_by_inverse_power(z in small_rat(), t1 in nonzero_rat(), p in 1usize..=3) {
        let n = 4 * p + 10;
        let s = TruncSeries::one(n).add(&TruncSeries::monomial(z.clone(), p, n));
        let e = FrescoPresentation::new(Rat::new(13, 3), vec![p], vec![s], n).unwrap();
        let f = pushforward(&e, &ChangeOfVariable::scaling(t1.clone()).unwrap()).unwrap();
        prop_assert_eq!(presentation_theme_param(&f).unwrap(), z / t1.pow(p as i32));
    }

    #[test]
    fn pushforward_is_isomorphic_to_standard_model(z in small_rat(), t in theta()) {
        let n = 14;
        let s = TruncSeries::one(n).add(&TruncSeries::monomial(z, 2, n));
        let e = FrescoPresentation::new(Rat::new(7, 2), vec![2], vec![s], n).unwrap();
        let moved = module_pushforward(&e.module(), &t);
        let model = pushforward(&e, &t).unwrap();
        let order = moved.order().min(model.order);
        prop_assert!(modules_isomorphic(&moved.truncate(order), &model.module().truncate(order)).unwrap().is_some());
    }

    #[test]
    fn l_exponent_descends_to_the_theme(l1 in 7i64..=12, p1 in 1usize..=2, p2 in 1usize..=2) {
        let n = 2 * (p1 + p2) + 12;
        let lambda1 = Rat::new(l1, 2);
        let s1 = TruncSeries::one(n).add(&TruncSeries::monomial(Rat::one(), p1, n));
        let s2 = TruncSeries::one(n).add(&TruncSeries::monomial(Rat::new(1, 2), 1, n));
        let e = FrescoPresentation::new(lambda1.clone(), vec![p1, p2], vec![s1.clone(), s2], n).unwrap();
        let f2 = FrescoPresentation::new(lambda1, vec![p1], vec![s1], n).unwrap();
        prop_assert_eq!(find_l(&e.module()).unwrap(), find_l(&f2.module()).unwrap());
    }
}
