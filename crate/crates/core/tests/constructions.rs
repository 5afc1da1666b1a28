use grouplogic::analysis::{derived_subgroup, is_nilpotent, is_perfect, nilpotency_class};
use grouplogic::constructions::{
    build_en, build_hn, central_commutators, comlength_inequality, comlength_min_n,
    expected_split_dims, field_of_order, find_binary_icosahedral, gf, hn_order, sl2, split_wn,
    thm_d_finite_instance, PerfectOptions,
};
use grouplogic::{Error, Limits};

const CHAR3: PerfectOptions = PerfectOptions { allow_char3: true };

#[test]
fn gf9_modulus_is_least_irreducible() {
    let f = gf(3, 2).unwrap();
    // Oracle: monic quadratics over F_3 with no root, in counting order.
    let first = (0..9u32)
        .map(|m| (m % 3, m / 3))
        .find(|&(c0, c1)| (0..3).all(|x| (x * x + c1 * x + c0) % 3 != 0))
        .unwrap();
    assert_eq!(first, (1, 0));
    assert_eq!(f.modulus(), &[1, 0, 1]);
}

#[test]
fn sl2_orders_by_enumeration() {
    let l = Limits::default();
    assert_eq!(sl2(&gf(11, 1).unwrap(), &l).unwrap().group().order(), 1320);
    let s5 = sl2(&gf(5, 1).unwrap(), &l).unwrap();
    let g = s5.group();
    assert!(is_perfect(g));
    let s3 = sl2(&gf(3, 1).unwrap(), &l).unwrap();
    assert_eq!(derived_subgroup(s3.group()).len(), 8);
}

#[test]
fn binary_icosahedral_subgroups() {
    let l = Limits::default();
    for q in [9, 11, 19] {
        let s = sl2(&field_of_order(q).unwrap(), &l).unwrap();
        let b = find_binary_icosahedral(&s).unwrap();
        let g = s.group();
        assert_eq!(b.len(), 120, "q = {q}");
        let (bg, _) = g.subgroup_as_group(&b, "B").unwrap();
        assert!(is_perfect(&bg));
        assert_eq!(bg.center().len(), 2);
        let involutions = bg.elements().filter(|&x| bg.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(
            find_binary_icosahedral(&s).unwrap(),
            b,
            "search is deterministic"
        );
    }
    let s13 = sl2(&gf(13, 1).unwrap(), &l).unwrap();
    assert!(matches!(
        find_binary_icosahedral(&s13),
        Err(Error::ConditionViolated(_))
    ));
}

#[test]
fn e1_laws_and_centre() {
    let l = Limits::default();
    for q in [5, 7, 11] {
        let en = build_en(1, &gf(q, 1).unwrap(), PerfectOptions::default()).unwrap();
        let g = en.to_group(&l).unwrap();
        assert_eq!(g.order() as u64, q * q * q);
        assert_eq!(g.exponent() as u64, q);
        assert_eq!(nilpotency_class(&g), Some(2));
        // The centre is exactly the W coordinate.
        assert_eq!(g.center().len() as u64, q);
        assert_eq!(derived_subgroup(&g).len() as u64, q);
    }
    let e2 = build_en(2, &gf(5, 1).unwrap(), PerfectOptions::default()).unwrap();
    assert_eq!(e2.order(), 5u128.pow(10));
    assert!(matches!(e2.to_group(&l), Err(Error::TooLarge { .. })));
}

#[test]
fn wedge_split_dimensions() {
    let f = gf(11, 1).unwrap();
    for n in 1..=4 {
        let s = split_wn(n, &f, PerfectOptions::default()).unwrap();
        assert_eq!(
            (s.dim_y(), s.dim_z()),
            (3 * n * (n - 1) / 2, n * (n + 1) / 2)
        );
        assert_eq!(expected_split_dims(n), (s.dim_y(), s.dim_z()));
    }
}

#[test]
fn perfect_extension_q11() {
    let l = Limits::default();
    let bundle = build_hn(1, &gf(11, 1).unwrap(), PerfectOptions::default(), &l).unwrap();
    assert_eq!(bundle.hn.order(), 159_720);
    assert_eq!(hn_order(1, 11), 159_720);
    assert!(is_perfect(&bundle.hn));
    assert_eq!(bundle.gn.order(), 1331);
    assert!(is_nilpotent(&bundle.gn));
    assert_eq!(bundle.center_module().len(), 11);
    assert_eq!(bundle.lines().len(), 1);
}

#[test]
fn perfect_extension_q9() {
    let l = Limits::default();
    let f = gf(3, 2).unwrap();
    assert_eq!(
        build_hn(1, &f, PerfectOptions::default(), &l).unwrap_err(),
        Error::BadCharacteristic(3)
    );
    let bundle = build_hn(1, &f, CHAR3, &l).unwrap();
    assert_eq!(bundle.hn.order(), 87_480);
    assert!(is_perfect(&bundle.hn));
}

#[test]
fn perfect_extension_needs_congruence() {
    let l = Limits::default();
    assert!(matches!(
        build_hn(1, &gf(13, 1).unwrap(), PerfectOptions::default(), &l),
        Err(Error::ConditionViolated(_))
    ));
}

#[test]
fn comlength_threshold() {
    for (k, n) in [(1, 9), (2, 17), (10, 81)] {
        let r = comlength_min_n(k);
        assert_eq!(r.n, n);
        assert_eq!(r.threshold_8k_plus_2, 8 * k + 2);
        // Oracle in exact rationals: 2k(2n+3) <= n(n+1)/2 - 1.
        let holds = |n: u64| (2 * k * (2 * n + 3)) as f64 <= (n * (n + 1)) as f64 / 2.0 - 1.0;
        assert!(holds(n) && !holds(n - 1));
        assert!(comlength_inequality(k, n) && !comlength_inequality(k, n - 1));
    }
}

#[test]
fn central_commutators_small() {
    let l = Limits::default();
    let r = central_commutators(1, &gf(5, 1).unwrap(), PerfectOptions::default(), &l).unwrap();
    assert_eq!(r.lines, 1);
    assert!(r.central_values <= 4);
    assert!(matches!(
        central_commutators(2, &gf(5, 1).unwrap(), PerfectOptions::default(), &l),
        Err(Error::TooLarge { .. })
    ));
}

#[test]
fn thm_d_examples() {
    let l = Limits::default();
    let s = thm_d_finite_instance(3, 5, &l)
        .unwrap()
        .summary(&l)
        .unwrap();
    assert_eq!((s.order_f, s.order_l, s.index_l), (160, 40, 4));
    assert_eq!(
        thm_d_finite_instance(2, 3, &l)
            .unwrap()
            .summary(&l)
            .unwrap()
            .index_l,
        4
    );
    let s1 = thm_d_finite_instance(1, 3, &l)
        .unwrap()
        .summary(&l)
        .unwrap();
    assert!(s1.h_isomorphic_to_dih_p);
    assert_eq!((s1.order_h, s1.center_h), (6, 1));
}
