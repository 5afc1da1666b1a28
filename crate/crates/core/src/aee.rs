//! Sweeps of one sentence across two indexed families of groups.
//!
//! A sweep only records finitely many truth values, so the reported
//! agreement tail is evidence about the pair, never a proof that it is
//! asymptotically elementarily equivalent.

use rayon::prelude::*;

use crate::analysis::is_nilpotent;
use crate::catalog::{sigma_holds, CatalogItem};
use crate::constructions::GroupFamily;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::limits::Limits;
use crate::logic::{eval, EvalConfig, OracleTable, Valuation};

pub const DISCLAIMER: &str =
    "finite evidence only: agreement on the computed indices does not establish asymptotic elementary equivalence";

/// One family member: computed, or skipped with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Value { truth: bool, order: u128 },
    Skipped(String),
}

impl Cell {
    pub fn truth(&self) -> Option<bool> {
        match self {
            Cell::Value { truth, .. } => Some(*truth),
            Cell::Skipped(_) => None,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Value { truth, order } => format!("{truth} (order {order})"),
            Cell::Skipped(why) => format!("skipped ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub index: usize,
    pub a: Cell,
    pub b: Cell,
}

impl SweepRow {
    /// `None` when either side was skipped.
    pub fn agrees(&self) -> Option<bool> {
        Some(self.a.truth()? == self.b.truth()?)
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub sentence: String,
    pub family_a: String,
    pub family_b: String,
    pub rows: Vec<SweepRow>,
    pub agreement_tail_start: Option<usize>,
    pub disclaimer: &'static str,
}

impl SweepReport {
    pub fn lines(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("sentence".to_string(), self.sentence.clone()),
            ("family_a".to_string(), self.family_a.clone()),
            ("family_b".to_string(), self.family_b.clone()),
        ];
        for r in &self.rows {
            out.push((
                format!("row.{}", r.index),
                format!("{} | {}", r.a.text(), r.b.text()),
            ));
        }
        out.push((
            "agreement_tail_start".to_string(),
            self.agreement_tail_start
                .map_or("none".into(), |m| m.to_string()),
        ));
        out.push(("disclaimer".to_string(), self.disclaimer.to_string()));
        out
    }
}

/// Least `m` such that every fully computed row with index `>= m` agrees.
/// `None` if no row was computed or the last computed row disagrees.
pub fn agreement_tail(rows: &[SweepRow]) -> Option<usize> {
    let computed: Vec<(usize, bool)> = rows
        .iter()
        .filter_map(|r| Some((r.index, r.agrees()?)))
        .collect();
    let (&(last, last_ok), _) = computed.split_last()?;
    if !last_ok {
        return None;
    }
    match computed.iter().rev().find(|(_, ok)| !ok) {
        Some(&(i, _)) => Some(i + 1),
        None => Some(rows.first().map_or(last, |r| r.index)),
    }
}

/// Truth of a catalog item in `g`.
pub fn holds(g: &FiniteGroup, item: &CatalogItem, limits: &Limits) -> Result<bool> {
    match item {
        CatalogItem::Formula(e) => {
            let f = &e.formula;
            if !f.is_sentence() {
                return Err(Error::Invalid(format!("`{}` has free variables", e.name)));
            }
            let o = if f.oracle_names().is_empty() {
                OracleTable::new()
            } else {
                OracleTable::standard(g)
            };
            eval(
                g,
                f,
                &Valuation::new(),
                &o,
                &EvalConfig::default().with_budget(limits.work_budget),
            )
        }
        CatalogItem::Sigma(k) => sigma_holds(g, *k, limits),
    }
}

fn member(fam: &GroupFamily, n: usize, limits: &Limits) -> Result<Option<(FiniteGroup, u128)>> {
    let order = fam.order(n)?;
    match fam.instance(n, limits) {
        Ok(g) => Ok(Some((g, order))),
        Err(Error::TooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn cell(fam: &GroupFamily, n: usize, item: &CatalogItem, limits: &Limits) -> Result<Cell> {
    let Some((g, order)) = member(fam, n, limits)? else {
        return Ok(Cell::Skipped("too large".into()));
    };
    match holds(&g, item, limits) {
        Ok(truth) => Ok(Cell::Value { truth, order }),
        Err(e @ (Error::TooLarge { .. } | Error::DepthBudgetExceeded { .. })) => {
            Ok(Cell::Skipped(e.to_string()))
        }
        Err(e) => Err(e),
    }
}

fn name_of(item: &CatalogItem) -> String {
    match item {
        CatalogItem::Formula(e) => e.name.clone(),
        CatalogItem::Sigma(k) => format!("sigma:{k}"),
    }
}

/// Evaluates `item` on members `n_min..=n_max` of both families.
pub fn sweep(
    item: &CatalogItem,
    fam_a: &GroupFamily,
    fam_b: &GroupFamily,
    n_min: usize,
    n_max: usize,
    limits: &Limits,
) -> Result<SweepReport> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::Invalid(format!("bad index range {n_min}..{n_max}")));
    }
    let rows: Vec<SweepRow> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            Ok(SweepRow {
                index: n,
                a: cell(fam_a, n, item, limits)?,
                b: cell(fam_b, n, item, limits)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        sentence: name_of(item),
        family_a: fam_a.to_string(),
        family_b: fam_b.to_string(),
        agreement_tail_start: agreement_tail(&rows),
        rows,
        disclaimer: DISCLAIMER,
    })
}

/// Nilpotence next to each probe sentence, for one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeRow {
    pub index: usize,
    pub nilpotent_a: Option<bool>,
    pub nilpotent_b: Option<bool>,
    /// Per sentence, the truth in each family.
    pub sentences: Vec<(Option<bool>, Option<bool>)>,
}

#[derive(Clone, Debug)]
pub struct NilpotenceReport {
    pub family_a: String,
    pub family_b: String,
    pub sentence_names: Vec<String>,
    pub rows: Vec<ProbeRow>,
    pub disclaimer: &'static str,
}

impl NilpotenceReport {
    pub fn lines(&self) -> Vec<(String, String)> {
        let show = |b: Option<bool>| b.map_or("skipped".to_string(), |b| b.to_string());
        let mut out = vec![
            ("family_a".to_string(), self.family_a.clone()),
            ("family_b".to_string(), self.family_b.clone()),
        ];
        for r in &self.rows {
            let mut v = format!(
                "nilpotent {} | {}",
                show(r.nilpotent_a),
                show(r.nilpotent_b)
            );
            for (name, (a, b)) in self.sentence_names.iter().zip(&r.sentences) {
                v.push_str(&format!("; {name} {} | {}", show(*a), show(*b)));
            }
            out.push((format!("row.{}", r.index), v));
        }
        out.push(("disclaimer".to_string(), self.disclaimer.to_string()));
        out
    }
}

fn probe_side(
    fam: &GroupFamily,
    n: usize,
    items: &[CatalogItem],
    limits: &Limits,
) -> Result<(Option<bool>, Vec<Option<bool>>)> {
    let Some((g, _)) = member(fam, n, limits)? else {
        return Ok((None, vec![None; items.len()]));
    };
    let truths = items
        .iter()
        .map(|it| match holds(&g, it, limits) {
            Ok(b) => Ok(Some(b)),
            Err(Error::TooLarge { .. } | Error::DepthBudgetExceeded { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    Ok((Some(is_nilpotent(&g)), truths))
}

/// Semantic nilpotence of both families next to each sentence in `items`.
pub fn nilpotence_probe(
    fam_a: &GroupFamily,
    fam_b: &GroupFamily,
    n_min: usize,
    n_max: usize,
    items: &[CatalogItem],
    limits: &Limits,
) -> Result<NilpotenceReport> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::Invalid(format!("bad index range {n_min}..{n_max}")));
    }
    let rows = (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let (na, sa) = probe_side(fam_a, n, items, limits)?;
            let (nb, sb) = probe_side(fam_b, n, items, limits)?;
            Ok(ProbeRow {
                index: n,
                nilpotent_a: na,
                nilpotent_b: nb,
                sentences: sa.into_iter().zip(sb).collect(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(NilpotenceReport {
        family_a: fam_a.to_string(),
        family_b: fam_b.to_string(),
        sentence_names: items.iter().map(name_of).collect(),
        rows,
        disclaimer: DISCLAIMER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(index: usize, a: bool, b: bool) -> SweepRow {
        SweepRow {
            index,
            a: Cell::Value { truth: a, order: 1 },
            b: Cell::Value { truth: b, order: 1 },
        }
    }

    #[test]
    fn tail_rules() {
        assert_eq!(
            agreement_tail(&[row(1, true, false), row(2, true, true)]),
            Some(2)
        );
        assert_eq!(
            agreement_tail(&[row(1, true, true), row(2, true, false)]),
            None
        );
        assert_eq!(
            agreement_tail(&[row(3, true, true), row(4, false, false)]),
            Some(3)
        );
        assert_eq!(agreement_tail(&[]), None);
        let skipped = SweepRow {
            index: 3,
            a: Cell::Skipped("too large".into()),
            b: Cell::Value {
                truth: true,
                order: 1,
            },
        };
        assert_eq!(
            agreement_tail(&[row(1, true, false), row(2, true, true), skipped]),
            Some(2)
        );
    }
}
