use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::Elem;

/// A set of elements of some parent group. `is_subgroup` is only ever set
/// by code that has established closure.
#[derive(Clone)]
pub struct Subset {
    bits: FixedBitSet,
    subgroup: bool,
}

impl Subset {
    pub fn empty(parent_order: usize) -> Self {
        Subset {
            bits: FixedBitSet::with_capacity(parent_order),
            subgroup: false,
        }
    }

    pub fn trivial(parent_order: usize) -> Self {
        let mut s = Self::empty(parent_order);
        s.bits.insert(0);
        s.subgroup = true;
        s
    }

    pub fn full(parent_order: usize) -> Self {
        let mut s = Self::empty(parent_order);
        s.bits.insert_range(..);
        s.subgroup = true;
        s
    }

    pub fn from_elems(parent_order: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(parent_order);
        for e in elems {
            s.bits.insert(e.index());
        }
        s
    }

    pub fn from_predicate(parent_order: usize, mut keep: impl FnMut(Elem) -> bool) -> Self {
        let mut s = Self::empty(parent_order);
        for i in 0..parent_order {
            if keep(Elem(i as u32)) {
                s.bits.insert(i);
            }
        }
        s
    }

    pub fn parent_order(&self) -> usize {
        self.bits.len()
    }

    pub fn is_subgroup(&self) -> bool {
        self.subgroup
    }

    pub(crate) fn mark_subgroup(mut self) -> Self {
        self.subgroup = true;
        self
    }

    pub(crate) fn set_subgroup(&mut self, flag: bool) {
        self.subgroup = flag;
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.bits.contains(e.index())
    }

    /// Returns true if the element was newly inserted. Clears the subgroup flag.
    pub fn insert(&mut self, e: Elem) -> bool {
        let fresh = !self.bits.put(e.index());
        if fresh {
            self.subgroup = false;
        }
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.parent_order()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1 && self.contains(Elem::IDENTITY)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones().map(|i| Elem(i as u32))
    }

    pub fn members(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// Intersection; stays a subgroup when both operands are.
    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subset {
            bits,
            subgroup: self.subgroup && other.subgroup,
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Subset {
            bits,
            subgroup: false,
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Subset {
            bits,
            subgroup: false,
        }
    }

    pub fn complement(&self) -> Subset {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Subset {
            bits,
            subgroup: false,
        }
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn cmp_members(&self, other: &Subset) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Order first, then lexicographic member list.
    pub fn cmp_size_then_members(&self, other: &Subset) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_members(other))
    }

    pub fn least(&self) -> Option<Elem> {
        self.iter().next()
    }
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Subset {}

impl Hash for Subset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.as_slice().hash(state);
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<u32> = self.iter().map(|e| e.0).collect();
        if m.len() > 24 {
            write!(f, "Subset(|{}| of {})", m.len(), self.parent_order())
        } else {
            write!(f, "Subset({m:?} of {})", self.parent_order())
        }
    }
}
