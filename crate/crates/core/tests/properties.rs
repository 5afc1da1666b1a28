mod common;

use std::sync::OnceLock;

use grouplogic::analysis::{
    fitting, is_nilpotent_subgroup, is_soluble, normal_subgroups, soluble_radical,
};
use grouplogic::catalog::sigma_first_failure;
use grouplogic::corpus::Corpus;
use grouplogic::group::quotient;
use grouplogic::group::spec::parse_group_spec;
use grouplogic::logic::{eval, parse, EvalConfig, OracleTable, Valuation};
use grouplogic::supplement::build_supplement;
use grouplogic::{Elem, Error, FiniteGroup, Limits};
use proptest::prelude::*;

use common::FormulaGen;

const SPECS: [&str; 10] = [
    "cyclic 6",
    "sym 3",
    "dih (cyclic 4)",
    "alt 4",
    "sym 4",
    "elab 2 3",
    "product (sym 3) (cyclic 3)",
    "dih (cyclic 6)",
    "alt 5",
    "product (alt 4) (cyclic 2)",
];

fn groups() -> &'static [FiniteGroup] {
    static G: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    G.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| parse_group_spec(s, &Limits::default()).unwrap())
            .collect()
    })
}

fn group_index() -> impl Strategy<Value = usize> {
    0..SPECS.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        g.oracle_pct = 20;
        let f = g.formula(&["x".to_string(), "a".to_string()], 4, 3);
        let printed = f.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), f, "{}", printed);
    }

    #[test]
    fn subgroup_orders_divide_the_group_order(gi in group_index(), picks in prop::collection::vec(any::<u32>(), 1..4)) {
        let g = &groups()[gi];
        let gens: Vec<Elem> = picks.iter().map(|p| Elem(p % g.order() as u32)).collect();
        let h = g.closure(gens.iter().copied());
        prop_assert_eq!(g.order() % h.len(), 0);
        for &x in &gens {
            prop_assert_eq!(h.len() % g.element_order(x), 0);
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn evaluator_configurations_agree(gi in group_index(), seed in any::<u64>()) {
        let g = &groups()[gi];
        let mut gen = FormulaGen::new(seed);
        gen.oracle_pct = 15;
        let f = gen.sentence(4, if g.order() > 24 { 2 } else { 3 });
        let o = OracleTable::standard(g);
        let v = Valuation::new();
        let base = eval(g, &f, &v, &o, &EvalConfig::naive()).unwrap();
        for cfg in [EvalConfig::default(), EvalConfig::reduced()] {
            prop_assert_eq!(eval(g, &f, &v, &o, &cfg).unwrap(), base, "{}", f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_failure_persists_for_larger_k(gi in group_index(), k in 1usize..6, extra in 0usize..4) {
        let g = &groups()[gi];
        let l = Limits::default();
        let small = sigma_first_failure(g, k, &l).unwrap();
        let large = sigma_first_failure(g, k + extra, &l).unwrap();
        if let Some(i) = small {
            prop_assert_eq!(large, Some(i));
        }
        if is_soluble(g) {
            prop_assert_eq!(large, None);
        }
    }
}

#[test]
fn radical_of_the_radical_quotient_is_trivial() {
    let l = Limits::default();
    for g in groups() {
        let r = soluble_radical(g);
        let (q, map) = quotient(g, &r, &l).unwrap();
        assert!(soluble_radical(&q).is_trivial(), "{}", g.label());
        assert_eq!(map.kernel(), r);
    }
}

#[test]
fn fitting_lies_in_the_radical() {
    for g in groups() {
        let f = fitting(g);
        assert!(f.is_subset_of(&soluble_radical(g)), "{}", g.label());
        assert!(g.is_normal(&f) && is_nilpotent_subgroup(g, &f));
    }
}

#[test]
fn analysis_is_deterministic() {
    let l = Limits::default();
    for spec in ["sym 5", "product (alt 5) (cyclic 2)"] {
        let a = parse_group_spec(spec, &l).unwrap();
        let b = parse_group_spec(spec, &l).unwrap();
        assert_eq!(normal_subgroups(&a), normal_subgroups(&b));
        for k in normal_subgroups(&a) {
            match (build_supplement(&a, &k, &l), build_supplement(&b, &k, &l)) {
                (Ok(x), Ok(y)) => assert_eq!((x.s, x.d1, x.d2, x.n), (y.s, y.d1, y.d2, y.n)),
                (Err(x), Err(y)) => assert_eq!(x, y),
                _ => panic!("{spec}: outcomes differ"),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn corpus_files_keep_entry_order(orders in prop::collection::vec(1usize..40, 1..8)) {
        let text: String = orders
            .iter()
            .enumerate()
            .map(|(i, n)| format!("G{i} = cyclic {n}\n"))
            .collect();
        let c = Corpus::parse(&text, &Limits::default()).unwrap();
        prop_assert_eq!(c.entries.len(), orders.len());
        for (e, n) in c.entries.iter().zip(&orders) {
            prop_assert_eq!(e.group.order(), *n);
        }
        let dup = format!("{text}G0 = cyclic 2\n");
        prop_assert!(matches!(Corpus::parse(&dup, &Limits::default()), Err(Error::Spec(_))));
    }
}
