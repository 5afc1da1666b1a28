use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{Carrier, Elem, FiniteGroup};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A group given by operations on concrete values (permutations, matrices,
/// tuples). Used to build structural groups by enumeration.
pub trait GroupOps: Send + Sync + 'static {
    type Item: Clone + Eq + Hash + Send + Sync + 'static;

    fn identity(&self) -> Self::Item;
    fn mul(&self, a: &Self::Item, b: &Self::Item) -> Self::Item;
    fn inv(&self, a: &Self::Item) -> Self::Item;

    fn describe(&self, _a: &Self::Item) -> Option<String> {
        None
    }

    fn parse_item(&self, _text: &str) -> Option<Self::Item> {
        None
    }
}

/// The enumerated carrier of a black-box group: id <-> item.
pub struct Enumeration<O: GroupOps> {
    ops: O,
    items: Vec<O::Item>,
    index: FxHashMap<O::Item, u32>,
}

impl<O: GroupOps> Enumeration<O> {
    pub fn ops(&self) -> &O {
        &self.ops
    }

    pub fn item(&self, e: Elem) -> &O::Item {
        &self.items[e.index()]
    }

    pub fn id_of(&self, item: &O::Item) -> Option<Elem> {
        self.index.get(item).map(|&i| Elem(i))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

impl<O: GroupOps> Carrier for Enumeration<O> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self
            .ops
            .mul(&self.items[a as usize], &self.items[b as usize]);
        self.index[&p]
    }

    fn describe(&self, a: u32) -> Option<String> {
        self.ops.describe(&self.items[a as usize])
    }

    fn parse_element(&self, text: &str) -> Option<u32> {
        self.ops
            .parse_item(text)
            .and_then(|it| self.index.get(&it).copied())
    }
}

/// Enumerates the group generated by `gens` breadth-first from the identity,
/// multiplying on the right by each generator in list order. Ids follow
/// discovery order, so identical inputs give identical ids.
pub fn enumerate<O: GroupOps>(
    ops: O,
    gens: &[O::Item],
    label: impl Into<String>,
    limits: &Limits,
) -> Result<(FiniteGroup, Arc<Enumeration<O>>)> {
    let label = label.into();
    let id = ops.identity();
    let mut items = vec![id.clone()];
    let mut index = FxHashMap::default();
    index.insert(id, 0u32);
    let k = gens.len();
    // right[x * k + j] = id of x * gens[j]
    let mut right: Vec<u32> = Vec::new();
    // parent[y] = (x, j) with y = x * gens[j]
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut head = 0;
    while head < items.len() {
        let x = items[head].clone();
        for (j, g) in gens.iter().enumerate() {
            let y = ops.mul(&x, g);
            let next = items.len() as u32;
            let yid = *index.entry(y.clone()).or_insert(next);
            if yid == next {
                if items.len() >= limits.element_cap {
                    return Err(Error::too_large(label, items.len() + 1, limits.element_cap));
                }
                items.push(y);
                parent.push((head as u32, j as u32));
            }
            right.push(yid);
        }
        head += 1;
    }
    let n = items.len();
    let inv: Box<[u32]> = items.iter().map(|x| index[&ops.inv(x)]).collect();
    let mut gen_ids = Vec::new();
    for g in gens {
        let gid = Elem(index[g]);
        if !gid.is_identity() && !gen_ids.contains(&gid) {
            gen_ids.push(gid);
        }
    }
    let table = if n <= limits.table_cap {
        let mut t = vec![0u32; n * n];
        for x in 0..n {
            let row = &mut t[x * n..(x + 1) * n];
            row[0] = x as u32;
            for y in 1..n {
                let (py, j) = parent[y];
                let xp = row[py as usize] as usize;
                row[y] = right[xp * k + j as usize];
            }
        }
        Some(t.into_boxed_slice())
    } else {
        None
    };
    let en = Arc::new(Enumeration { ops, items, index });
    let carrier: Arc<dyn Carrier> = en.clone();
    Ok((
        FiniteGroup::assemble(label, table, Some(carrier), inv, gen_ids),
        en,
    ))
}
