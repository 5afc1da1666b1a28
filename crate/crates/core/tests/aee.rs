use grouplogic::aee::{holds, nilpotence_probe, sweep, Cell, DISCLAIMER};
use grouplogic::catalog::{formula_from_text, lookup};
use grouplogic::constructions::family;
use grouplogic::Limits;

fn truths(cells: impl Iterator<Item = Cell>) -> Vec<Option<bool>> {
    cells.map(|c| c.truth()).collect()
}

#[test]
fn coprime_three_on_cyclic_families() {
    let l = Limits::default();
    let item = lookup("coprime:3").unwrap();
    let (a, b) = (family("cyc2").unwrap(), family("cyc2p").unwrap());
    let r = sweep(&item, &a, &b, 1, 8, &l).unwrap();
    assert_eq!(
        truths(r.rows.iter().map(|x| x.a.clone())),
        vec![Some(true); 8]
    );
    // Oracle: C_m has an element of order 3 iff 3 | m; p_n = 3 only at n = 1.
    let expected: Vec<Option<bool>> = (1..=8)
        .map(|n| Some(b.order(n).unwrap() % 3 != 0))
        .collect();
    assert_eq!(truths(r.rows.iter().map(|x| x.b.clone())), expected);
    assert_eq!(expected[0], Some(false));
    assert_eq!(r.agreement_tail_start, Some(2));
    assert_eq!(r.disclaimer, DISCLAIMER);
}

#[test]
fn f23_on_dihedral_families() {
    let l = Limits::default();
    let item = lookup("Fpq:2,3").unwrap();
    let (a, b) = (family("dih2").unwrap(), family("dih2p").unwrap());
    let r = sweep(&item, &a, &b, 1, 6, &l).unwrap();
    for row in &r.rows {
        assert_eq!(row.a.truth(), Some(true));
        assert_eq!(row.b.truth(), Some(row.index != 1), "index {}", row.index);
        // Consistency with direct evaluation.
        let g = b.instance(row.index, &l).unwrap();
        assert_eq!(Some(holds(&g, &item, &l).unwrap()), row.b.truth());
    }
    assert_eq!(r.agreement_tail_start, Some(2));
}

#[test]
fn tautology_has_tail_one() {
    let l = Limits::default();
    let item = formula_from_text("A x. x = x").unwrap();
    let r = sweep(
        &item,
        &family("cyc2").unwrap(),
        &family("wr_q").unwrap(),
        1,
        3,
        &l,
    )
    .unwrap();
    assert!(r.rows.iter().all(|x| x.agrees() == Some(true)));
    assert_eq!(r.agreement_tail_start, Some(1));
}

#[test]
fn oversized_members_are_skipped() {
    let l = Limits {
        element_cap: 100,
        ..Limits::default()
    };
    let item = formula_from_text("A x. x = x").unwrap();
    let r = sweep(
        &item,
        &family("cyc2").unwrap(),
        &family("cyc2p").unwrap(),
        5,
        6,
        &l,
    )
    .unwrap();
    assert!(matches!(
        r.rows[0].a,
        Cell::Value {
            truth: true,
            order: 32
        }
    ));
    assert!(matches!(r.rows[0].b, Cell::Skipped(_)));
    // No row has both sides computed.
    assert_eq!(r.agreement_tail_start, None);
}

#[test]
fn nilpotence_probe_on_wreath_families() {
    // wr_pq@2[3] has order 6272; a full table keeps the row fast.
    let l = Limits {
        table_cap: 8000,
        ..Limits::default()
    };
    let (a, b) = (family("wr_q@2").unwrap(), family("wr_pq@2").unwrap());
    let items = [
        lookup("nilpotent:2").unwrap(),
        lookup("nilpotent:2,3").unwrap(),
    ];
    let r = nilpotence_probe(&a, &b, 1, 3, &items, &l).unwrap();
    for row in &r.rows {
        assert_eq!(
            (row.nilpotent_a, row.nilpotent_b),
            (Some(true), Some(false))
        );
        // Both wreath families pass `nilpotent:2`, so it never separates.
        assert_eq!(row.sentences[0], (Some(true), Some(true)));
    }
    // `nilpotent:2,3` separates exactly while 3 divides the orders.
    let sep: Vec<bool> = r
        .rows
        .iter()
        .map(|x| x.sentences[1].0 != x.sentences[1].1)
        .collect();
    assert_eq!(sep, vec![true, false, false]);

    let bare = nilpotence_probe(&a, &b, 1, 2, &[], &l).unwrap();
    assert!(bare.rows.iter().all(|x| x.sentences.is_empty()));
}
