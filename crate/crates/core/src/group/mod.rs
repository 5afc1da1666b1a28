//! Finite groups with canonical element identifiers.
//!
//! Every group is a carrier `0..order` with id 0 the identity. Small groups
//! keep a full multiplication table; larger ones keep the enumeration of a
//! black-box [`GroupOps`] implementation and multiply on the fly.

mod algo;
mod iso;
mod map;
mod ops;
pub mod perm;
mod products;
pub mod spec;
mod subset;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

pub use iso::{find_isomorphism, is_isomorphic};
pub use map::GroupMap;
pub use ops::{enumerate, Enumeration, GroupOps};
pub use products::{
    alternating, cyclic, dihedral_of_cyclic, direct_product, elementary_abelian, quotient,
    semidirect_product, symmetric, wreath_cyclic, DirectOps, SemidirectOps, WreathOps,
};
pub use subset::Subset;

use crate::error::{Error, Result};

/// Identifier of an element inside its owning group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Backend {
    Table,
    Structural,
}

/// Type-erased access to an enumerated black-box group.
pub(crate) trait Carrier: Send + Sync {
    fn mul(&self, a: u32, b: u32) -> u32;
    fn describe(&self, a: u32) -> Option<String>;
    fn parse_element(&self, text: &str) -> Option<u32>;
}

struct Inner {
    label: String,
    order: usize,
    table: Option<Box<[u32]>>,
    carrier: Option<Arc<dyn Carrier>>,
    inv: Box<[u32]>,
    gens: Vec<Elem>,
    classes: OnceLock<Vec<Vec<Elem>>>,
}

/// A finite group. Cloning is cheap; the group is immutable once built.
#[derive(Clone)]
pub struct FiniteGroup(Arc<Inner>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.0.label)
            .field("order", &self.0.order)
            .field("backend", &self.backend())
            .finish()
    }
}

impl FiniteGroup {
    pub(crate) fn assemble(
        label: String,
        table: Option<Box<[u32]>>,
        carrier: Option<Arc<dyn Carrier>>,
        inv: Box<[u32]>,
        gens: Vec<Elem>,
    ) -> Self {
        let order = inv.len();
        FiniteGroup(Arc::new(Inner {
            label,
            order,
            table,
            carrier,
            inv,
            gens,
            classes: OnceLock::new(),
        }))
    }

    /// Builds a table-backed group from an explicit Cayley table, verifying
    /// every group axiom. Element 0 must be the identity.
    pub fn from_table(table: &[Vec<u32>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v as usize >= n {
                    return Err(Error::NotAGroup(format!(
                        "entry {v} in row {i} is out of range"
                    )));
                }
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat_table(flat.into_boxed_slice(), "table".into())
    }

    pub(crate) fn from_flat_table(flat: Box<[u32]>, label: String) -> Result<Self> {
        let n = (flat.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(n * n, flat.len());
        let at = |a: usize, b: usize| flat[a * n + b] as usize;
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::NotAGroup(format!(
                    "element 0 is not an identity (fails at {x})"
                )));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| at(x, y) == 0 && at(y, x) == 0) {
                Some(y) => inv[x] = y as u32,
                None => return Err(Error::NotAGroup(format!("element {x} has no inverse"))),
            }
        }
        // Generators by greedy right-closure, then Light's associativity test:
        // associativity needs checking only with a generator in the middle.
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut reached = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for cand in 0..n {
            if seen[cand] {
                continue;
            }
            gens.push(cand);
            let old = reached.len();
            for idx in 0..old {
                let y = at(reached[idx], cand);
                if !seen[y] {
                    seen[y] = true;
                    reached.push(y);
                }
            }
            let mut i = old;
            while i < reached.len() {
                let x = reached[i];
                for &s in &gens {
                    let y = at(x, s);
                    if !seen[y] {
                        seen[y] = true;
                        reached.push(y);
                    }
                }
                i += 1;
            }
        }
        for &s in &gens {
            for x in 0..n {
                let xs = at(x, s);
                for y in 0..n {
                    if at(xs, y) != at(x, at(s, y)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails for ({x}, {s}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup::assemble(
            label,
            Some(flat),
            None,
            inv.into_boxed_slice(),
            gens.into_iter().map(|s| Elem(s as u32)).collect(),
        ))
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    /// Same group under a different label.
    pub fn relabel(&self, label: impl Into<String>) -> FiniteGroup {
        FiniteGroup(Arc::new(Inner {
            label: label.into(),
            order: self.0.order,
            table: self.0.table.clone(),
            carrier: self.0.carrier.clone(),
            inv: self.0.inv.clone(),
            gens: self.0.gens.clone(),
            classes: OnceLock::new(),
        }))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn backend(&self) -> Backend {
        if self.0.table.is_some() {
            Backend::Table
        } else {
            Backend::Structural
        }
    }

    /// The generating set used for enumeration (never contains the identity).
    pub fn generators(&self) -> &[Elem] {
        &self.0.gens
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.0.order as u32).map(Elem)
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.index() < self.0.order
    }

    pub(crate) fn check_member(&self, e: Elem) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::NotMember(e))
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.table {
            Some(t) => Elem(t[a.index() * self.0.order + b.index()]),
            None => Elem(
                self.0
                    .carrier
                    .as_ref()
                    .expect("structural carrier")
                    .mul(a.0, b.0),
            ),
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.0.inv[a.index()])
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = Elem::IDENTITY;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(sq, sq);
            }
        }
        acc
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    /// `x^y = y^-1 x y`.
    #[inline]
    pub fn conjugate(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.inv(y), self.mul(x, y))
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut x = g;
        while !x.is_identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Human-readable form of an element (cycle notation for permutation
    /// groups, the id otherwise).
    pub fn describe(&self, e: Elem) -> String {
        self.0
            .carrier
            .as_ref()
            .and_then(|c| c.describe(e.0))
            .unwrap_or_else(|| e.0.to_string())
    }

    /// Parses an element written either as an id or in the native notation
    /// of the group (cycles for permutation groups).
    pub fn parse_element(&self, text: &str) -> Option<Elem> {
        let text = text.trim();
        if let Some(id) = self.0.carrier.as_ref().and_then(|c| c.parse_element(text)) {
            return Some(Elem(id));
        }
        text.parse::<u32>()
            .ok()
            .map(Elem)
            .filter(|&e| self.contains(e))
    }

    /// Conjugacy classes, each sorted by id, listed by least member.
    pub fn conjugacy_classes(&self) -> &[Vec<Elem>] {
        self.0.classes.get_or_init(|| algo::compute_classes(self))
    }

    /// Checks the group axioms on the generators: associativity on all
    /// generator triples and identity/inverse laws on every element.
    pub fn verify_sampled_axioms(&self) -> Result<()> {
        for e in self.elements() {
            if self.mul(e, Elem::IDENTITY) != e || self.mul(Elem::IDENTITY, e) != e {
                return Err(Error::NotAGroup(format!("identity law fails at {e}")));
            }
            if !self.mul(e, self.inv(e)).is_identity() {
                return Err(Error::NotAGroup(format!("inverse law fails at {e}")));
            }
        }
        let gens = self.generators();
        for &x in gens {
            for &y in gens {
                for &z in gens {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails for ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Identity of the internal representation (two handles to the same group).
    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

pub(crate) fn ensure_same_order(g: &FiniteGroup, s: &Subset) -> Result<()> {
    if s.parent_order() != g.order() {
        return Err(Error::Invalid(format!(
            "subset of a group of order {} used with {} (order {})",
            s.parent_order(),
            g.label(),
            g.order()
        )));
    }
    Ok(())
}
