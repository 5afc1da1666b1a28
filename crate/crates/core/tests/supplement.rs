use std::time::Instant;

use grouplogic::analysis::{derived_subgroup, soluble_radical};
use grouplogic::group::spec::parse_group_spec;
use grouplogic::logic::{definable_set, EvalConfig, OracleTable};
use grouplogic::supplement::{
    build_formulas, build_supplement, lemma62_checks, parameters, standard_oracles,
    verify_formula_level, SupplementCertificate,
};
use grouplogic::{Error, FiniteGroup, Limits, Subset};

fn group(spec: &str) -> FiniteGroup {
    parse_group_spec(spec, &Limits::default()).unwrap()
}

fn cert(g: &FiniteGroup, k: &Subset) -> SupplementCertificate {
    build_supplement(g, k, &Limits::default()).unwrap()
}

/// Brute-force normalizer, independent of the library routine.
fn normalizer_oracle(g: &FiniteGroup, d: &Subset) -> usize {
    g.elements()
        .filter(|&x| d.iter().all(|y| d.contains(g.mul(g.mul(g.inv(x), y), x))))
        .count()
}

#[test]
fn s5_over_a5() {
    let g = group("sym 5");
    let k = derived_subgroup(&g);
    let c = cert(&g, &k);
    assert!(c.m.is_trivial());
    assert_eq!(c.l, k);
    assert_eq!(c.p, 3);
    // s is the least-id 3-cycle; which one depends on element numbering.
    assert_eq!(g.element_order(c.s), 3);
    assert_eq!(g.describe(c.s).split_whitespace().count(), 3);
    assert!(c.t.is_full());
    assert_eq!(c.d.len(), 6);
    assert_eq!(c.n.len(), 12);
    assert_eq!(normalizer_oracle(&g, &c.d), 12);
    assert_eq!(c.l.len() * c.n.len() / c.l.intersection(&c.n).len(), 120);
    let r = lemma62_checks(&c);
    assert!(r.passed(), "{:?}", r.clauses);
    let f = verify_formula_level(&c, &standard_oracles(&c), &EvalConfig::default()).unwrap();
    assert_eq!((f.theta_order, f.chi_order), (6, 12));
    assert_eq!(f.psi_prime_holds, Some(true));
}

#[test]
fn a5_times_c2_has_nontrivial_m() {
    let g = group("product (alt 5) (cyclic 2)");
    let k = Subset::full(g.order());
    let c = cert(&g, &k);
    assert_eq!(c.m.len(), 2);
    assert_eq!(c.l.len(), 120);
    assert!(lemma62_checks(&c).passed());
    verify_formula_level(&c, &standard_oracles(&c), &EvalConfig::default()).unwrap();

    // With `rad` emptied, θ defines nothing and χ everything.
    let broken = OracleTable::new()
        .with("rad", Subset::empty(g.order()))
        .with("inK", c.k.clone());
    assert!(matches!(
        verify_formula_level(&c, &broken, &EvalConfig::default()),
        Err(Error::CheckFailed { .. })
    ));
}

#[test]
fn s4_is_inside_radical() {
    let g = group("sym 4");
    assert_eq!(
        build_supplement(&g, &Subset::full(24), &Limits::default()).unwrap_err(),
        Error::InsideRadical
    );
}

#[test]
fn wreath_two_factors() {
    let start = Instant::now();
    // A full table keeps the cubic χ evaluation affordable.
    let l = Limits {
        table_cap: 8000,
        ..Limits::default()
    };
    let g = parse_group_spec("wreath (alt 5) by 2", &l).unwrap();
    assert_eq!(g.order(), 7200);
    let k = derived_subgroup(&g);
    assert_eq!(k.len(), 3600);
    let c = build_supplement(&g, &k, &l).unwrap();
    eprintln!("certificate: {:?}", start.elapsed());
    assert_eq!(c.r(), 2);
    assert_eq!(c.t, k);
    assert_eq!(c.p, 3);
    assert_eq!((c.d.len(), c.n.len()), (9, 72));
    assert_eq!(normalizer_oracle(&g, &c.d), 72);
    let r = lemma62_checks(&c);
    assert!(r.passed(), "{:?}", r.clauses);
    eprintln!("lemma: {:?}", start.elapsed());

    // Deterministic rebuild.
    let again = build_supplement(&g, &k, &l).unwrap();
    assert_eq!(
        (again.s, again.d1, again.d2, &again.n),
        (c.s, c.d1, c.d2, &c.n)
    );

    // Replacing D by <s> breaks clause (c).
    let mut tampered = c.clone();
    tampered.d = g.closure([c.s]);
    let r = lemma62_checks(&tampered);
    let cl = r.clause("c").unwrap();
    assert!(!cl.passed);
    assert!(cl.detail.contains("only"), "{}", cl.detail);
    assert!(matches!(r.into_result(), Err(Error::CheckFailed { .. })));

    let f = build_formulas(&c);
    let chi = definable_set(
        &g,
        &f.chi,
        &parameters(&c),
        "x",
        &standard_oracles(&c),
        &EvalConfig::default(),
    )
    .unwrap();
    assert_eq!(chi, c.n);
    eprintln!("wreath case: {:?}", start.elapsed());
}

#[test]
fn radical_oracle_is_the_soluble_radical() {
    let g = group("product (alt 5) (cyclic 2)");
    let c = cert(&g, &Subset::full(g.order()));
    assert_eq!(standard_oracles(&c).get("rad"), Some(&soluble_radical(&g)));
}

#[test]
fn chi_defines_a_subgroup_for_any_parameters() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
    let specs = [
        "sym 4",
        "alt 4",
        "alt 5",
        "sym 5",
        "sl2:3",
        "sl2:5",
        "dih (cyclic 6)",
        "product (sym 3) (cyclic 2)",
        "product (alt 5) (cyclic 2)",
    ];
    let placeholder = build_formulas(&cert(&group("sym 5"), &derived_subgroup(&group("sym 5"))));
    for spec in specs {
        let g = group(spec);
        assert!(g.order() <= 120);
        let o = OracleTable::standard(&g);
        for _ in 0..10 {
            let mut pick = || grouplogic::Elem(rng.random_range(0..g.order() as u32));
            let params = [("w1", pick()), ("w2", pick()), ("z", pick())]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            let chi = definable_set(
                &g,
                &placeholder.chi,
                &params,
                "x",
                &o,
                &EvalConfig::default(),
            )
            .unwrap();
            assert_eq!(g.closure_of(&chi), chi, "{spec}: χ-set is not closed");
        }
    }
}
