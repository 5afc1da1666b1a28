use super::{ensure_same_order, Elem, FiniteGroup, Subset};
use crate::error::{Error, Result};

/// Incremental subgroup closure: the element list is always closed under
/// right multiplication by every generator added so far.
pub(crate) struct Closure<'g> {
    g: &'g FiniteGroup,
    set: Subset,
    list: Vec<Elem>,
    gens: Vec<Elem>,
}

impl<'g> Closure<'g> {
    pub(crate) fn new(g: &'g FiniteGroup) -> Self {
        Closure {
            g,
            set: Subset::trivial(g.order()),
            list: vec![Elem::IDENTITY],
            gens: Vec::new(),
        }
    }

    /// Adds a generator; returns false if it was already inside.
    pub(crate) fn add(&mut self, s: Elem) -> bool {
        if self.set.contains(s) {
            return false;
        }
        self.gens.push(s);
        let old = self.list.len();
        for i in 0..old {
            let y = self.g.mul(self.list[i], s);
            if self.set.insert(y) {
                self.list.push(y);
            }
        }
        let mut i = old;
        while i < self.list.len() {
            let x = self.list[i];
            for j in 0..self.gens.len() {
                let y = self.g.mul(x, self.gens[j]);
                if self.set.insert(y) {
                    self.list.push(y);
                }
            }
            i += 1;
        }
        true
    }

    pub(crate) fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub(crate) fn finish(self) -> Subset {
        self.set.mark_subgroup()
    }
}

pub(crate) fn compute_classes(g: &FiniteGroup) -> Vec<Vec<Elem>> {
    let n = g.order();
    let mut seen = Subset::empty(n);
    let mut classes = Vec::new();
    let gens = g.generators().to_vec();
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        seen.insert(x);
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &s in &gens {
                let z = g.conjugate(y, s);
                if seen.insert(z) {
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    classes
}

impl FiniteGroup {
    /// The subgroup generated by `elems`.
    pub fn closure(&self, elems: impl IntoIterator<Item = Elem>) -> Subset {
        let mut c = Closure::new(self);
        for e in elems {
            c.add(e);
        }
        c.finish()
    }

    pub fn closure_of(&self, s: &Subset) -> Subset {
        if s.is_subgroup() {
            return s.clone();
        }
        self.closure(s.iter())
    }

    /// Greedy generating set of a subgroup: members in id order that are not
    /// yet generated by the earlier picks.
    pub fn subgroup_generators(&self, h: &Subset) -> Vec<Elem> {
        if h.is_full() && !self.generators().is_empty() {
            return self.generators().to_vec();
        }
        let mut c = Closure::new(self);
        for e in h.iter() {
            c.add(e);
        }
        c.gens().to_vec()
    }

    /// Least subgroup containing the seeds and closed under conjugation by
    /// `by` (which should generate the ambient group of interest).
    pub fn normal_closure_by(&self, seeds: impl IntoIterator<Item = Elem>, by: &[Elem]) -> Subset {
        let mut c = Closure::new(self);
        for s in seeds {
            c.add(s);
        }
        loop {
            let mut grew = false;
            let mut k = 0;
            while k < c.gens().len() {
                let x = c.gens()[k];
                for &t in by {
                    let y = self.conjugate(x, t);
                    if c.add(y) {
                        grew = true;
                    }
                }
                k += 1;
            }
            if !grew {
                break;
            }
        }
        c.finish()
    }

    /// The least normal subgroup of the whole group containing the seeds.
    pub fn normal_closure(&self, seeds: impl IntoIterator<Item = Elem>) -> Subset {
        let by = self.generators().to_vec();
        self.normal_closure_by(seeds, &by)
    }

    pub fn centralizer_of(&self, elems: &[Elem]) -> Subset {
        let c = Subset::from_predicate(self.order(), |x| {
            elems.iter().all(|&s| self.mul(x, s) == self.mul(s, x))
        });
        c.mark_subgroup()
    }

    /// Centralizer of a subset (of the subgroup it generates).
    pub fn centralizer(&self, s: &Subset) -> Subset {
        let gens = if s.is_subgroup() {
            self.subgroup_generators(s)
        } else {
            s.members()
        };
        self.centralizer_of(&gens)
    }

    pub fn center(&self) -> Subset {
        let gens = self.generators().to_vec();
        self.centralizer_of(&gens)
    }

    /// Set normalizer `{x : x^-1 H x = H}`.
    pub fn normalizer(&self, h: &Subset) -> Subset {
        let test: Vec<Elem> = if h.is_subgroup() {
            self.subgroup_generators(h)
        } else {
            h.members()
        };
        let n = Subset::from_predicate(self.order(), |x| {
            test.iter().all(|&t| h.contains(self.conjugate(t, x)))
        });
        n.mark_subgroup()
    }

    pub fn conjugacy_class(&self, g: Elem) -> Subset {
        let classes = self.conjugacy_classes();
        let c = classes
            .iter()
            .find(|c| c.binary_search(&g).is_ok())
            .expect("every element lies in a class");
        Subset::from_elems(self.order(), c.iter().copied())
    }

    /// Least element of each conjugacy class.
    pub fn class_representatives(&self) -> Vec<Elem> {
        self.conjugacy_classes().iter().map(|c| c[0]).collect()
    }

    /// Whether `h` is closed under conjugation by the group generators.
    pub fn is_normal(&self, h: &Subset) -> bool {
        self.normality_witness(h).is_none()
    }

    /// A pair `(h, g)` with `h^g` outside `h`, if any.
    pub fn normality_witness(&self, h: &Subset) -> Option<(Elem, Elem)> {
        let hg: Vec<Elem> = if h.is_subgroup() {
            self.subgroup_generators(h)
        } else {
            h.members()
        };
        for &x in &hg {
            for &t in self.generators() {
                if !h.contains(self.conjugate(x, t)) {
                    return Some((x, t));
                }
            }
        }
        None
    }

    pub fn ensure_normal(&self, h: &Subset) -> Result<()> {
        ensure_same_order(self, h)?;
        if !h.is_subgroup() && self.closure_of(h) != *h {
            return Err(Error::Invalid("subset is not a subgroup".into()));
        }
        match self.normality_witness(h) {
            Some((element, by)) => Err(Error::NotNormal { element, by }),
            None => Ok(()),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_abelian_subgroup(&self, h: &Subset) -> bool {
        let gens = self.subgroup_generators(h);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `|AB|` for subgroups A, B.
    pub fn product_order(&self, a: &Subset, b: &Subset) -> usize {
        a.len() * b.len() / a.intersection(b).len()
    }

    /// The product set `AB` of two arbitrary subsets.
    pub fn product_set(&self, a: &Subset, b: &Subset) -> Subset {
        let mut out = Subset::empty(self.order());
        let bm = b.members();
        for x in a.iter() {
            for &y in &bm {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// Image of a subset under conjugation `x -> x^g`.
    pub fn conjugate_subset(&self, s: &Subset, g: Elem) -> Subset {
        let mut out = Subset::from_elems(self.order(), s.iter().map(|x| self.conjugate(x, g)));
        out.set_subgroup(s.is_subgroup());
        out
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> usize {
        let mut e = 1usize;
        for &c in self.conjugacy_classes().iter().map(|c| &c[0]) {
            let o = self.element_order(c);
            e = e / gcd(e, o) * o;
        }
        e
    }

    /// Subgroup generated by `gens`, or `None` once it exceeds `bound` elements.
    pub fn closure_bounded(&self, gens: &[Elem], bound: usize) -> Option<Subset> {
        let mut set = Subset::trivial(self.order());
        let mut list = vec![Elem::IDENTITY];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    if list.len() == bound {
                        return None;
                    }
                    list.push(y);
                }
            }
            i += 1;
        }
        Some(set.mark_subgroup())
    }

    /// A subgroup as a table-backed group of its own. New id `i` is the
    /// `i`-th member of `h` in id order; the returned list maps back.
    pub fn subgroup_as_group(
        &self,
        h: &Subset,
        label: impl Into<String>,
    ) -> Result<(FiniteGroup, Vec<Elem>)> {
        ensure_same_order(self, h)?;
        let members = h.members();
        if members.first() != Some(&Elem::IDENTITY) {
            return Err(Error::NotAGroup(
                "subset does not contain the identity".into(),
            ));
        }
        let mut local = vec![u32::MAX; self.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m.index()] = i as u32;
        }
        let n = members.len();
        let mut flat = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                let c = local[self.mul(a, b).index()];
                if c == u32::MAX {
                    return Err(Error::NotAGroup("subset is not closed".into()));
                }
                flat.push(c);
            }
        }
        Ok((
            FiniteGroup::from_flat_table(flat.into_boxed_slice(), label.into())?,
            members,
        ))
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};
    use crate::limits::Limits;

    #[test]
    fn closure_of_generators_is_whole_group() {
        let s4 = symmetric(4, &Limits::default()).unwrap();
        let all = s4.closure(s4.generators().iter().copied());
        assert!(all.is_full());
        assert!(all.is_subgroup());
    }

    #[test]
    fn identity_class_is_singleton() {
        let s4 = symmetric(4, &Limits::default()).unwrap();
        let c = s4.conjugacy_class(Elem::IDENTITY);
        assert!(c.is_trivial());
        let c6 = cyclic(6, &Limits::default()).unwrap();
        assert!(c6.conjugacy_class(Elem::IDENTITY).is_trivial());
    }

    #[test]
    fn classes_partition_and_sizes_divide_order() {
        let s5 = symmetric(5, &Limits::default()).unwrap();
        let classes = s5.conjugacy_classes();
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, 120);
        assert_eq!(classes.len(), 7);
        for c in classes {
            assert_eq!(120 % c.len(), 0);
        }
    }

    #[test]
    fn centralizer_of_three_cycle_in_s5() {
        let s5 = symmetric(5, &Limits::default()).unwrap();
        let t = s5.parse_element("(1 2 3)").unwrap();
        let c = s5.centralizer(&Subset::from_elems(120, [t]));
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn normal_closure_of_double_transposition_in_s4() {
        let s4 = symmetric(4, &Limits::default()).unwrap();
        let t = s4.parse_element("(1 2)(3 4)").unwrap();
        let v4 = s4.normal_closure([t]);
        assert_eq!(v4.len(), 4);
        assert!(s4.is_normal(&v4));
    }

    #[test]
    fn commutator_and_conjugate_conventions() {
        let s3 = symmetric(3, &Limits::default()).unwrap();
        for x in s3.elements() {
            for y in s3.elements() {
                let c = s3.commutator(x, y);
                let expect = s3.mul(s3.mul(s3.inv(x), s3.inv(y)), s3.mul(x, y));
                assert_eq!(c, expect);
                assert_eq!(s3.conjugate(x, y), s3.mul(s3.inv(y), s3.mul(x, y)));
            }
        }
    }
}
