use crate::group::{Elem, FiniteGroup, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Derived => "derived",
            SeriesKind::LowerCentral => "lower_central",
        }
    }
}

/// A descending series, listed from the starting subgroup down to the
/// point where it stabilizes (the stable term appears once).
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subset>,
    /// True when the last term is trivial.
    pub terminated: bool,
}

impl SeriesReport {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subset::len).collect()
    }

    /// Number of steps taken to reach the stable term.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }
}

/// `[H, H]` for a subgroup `H` of `G`.
pub fn derived_subgroup_of(g: &FiniteGroup, h: &Subset) -> Subset {
    let gens = g.subgroup_generators(h);
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    g.normal_closure_by(comms, &gens)
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subset {
    derived_subgroup_of(g, &Subset::full(g.order()))
}

/// `[N, H]` where `N` is normalized by `H`; both given as subgroups of `G`.
pub fn commutator_subgroup(g: &FiniteGroup, n: &Subset, h: &Subset) -> Subset {
    let ng = g.subgroup_generators(n);
    let hg = g.subgroup_generators(h);
    let mut comms = Vec::new();
    for &a in &ng {
        for &b in &hg {
            let c = g.commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    g.normal_closure_by(comms, &hg)
}

pub fn derived_series_of(g: &FiniteGroup, h: &Subset) -> SeriesReport {
    let mut terms = vec![g.closure_of(h)];
    loop {
        let next = derived_subgroup_of(g, terms.last().unwrap());
        if next.len() == terms.last().unwrap().len() {
            break;
        }
        terms.push(next);
    }
    let terminated = terms.last().unwrap().is_trivial();
    SeriesReport {
        kind: SeriesKind::Derived,
        terms,
        terminated,
    }
}

pub fn derived_series(g: &FiniteGroup) -> SeriesReport {
    derived_series_of(g, &Subset::full(g.order()))
}

/// Lower central series of a subgroup `H`: `γ_1 = H`, `γ_{i+1} = [γ_i, H]`.
pub fn lower_central_series_of(g: &FiniteGroup, h: &Subset) -> SeriesReport {
    let h = g.closure_of(h);
    let mut terms = vec![h.clone()];
    loop {
        let next = commutator_subgroup(g, terms.last().unwrap(), &h);
        if next.len() == terms.last().unwrap().len() {
            break;
        }
        terms.push(next);
    }
    let terminated = terms.last().unwrap().is_trivial();
    SeriesReport {
        kind: SeriesKind::LowerCentral,
        terms,
        terminated,
    }
}

pub fn lower_central_series(g: &FiniteGroup) -> SeriesReport {
    lower_central_series_of(g, &Subset::full(g.order()))
}

pub fn is_soluble(g: &FiniteGroup) -> bool {
    derived_series(g).terminated
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    lower_central_series(g).terminated
}

pub fn is_perfect(g: &FiniteGroup) -> bool {
    derived_subgroup(g).is_full()
}

pub fn is_soluble_subgroup(g: &FiniteGroup, h: &Subset) -> bool {
    derived_series_of(g, h).terminated
}

pub fn is_nilpotent_subgroup(g: &FiniteGroup, h: &Subset) -> bool {
    lower_central_series_of(g, h).terminated
}

pub fn is_perfect_subgroup(g: &FiniteGroup, h: &Subset) -> bool {
    derived_subgroup_of(g, h) == *h
}

/// Nilpotency class, if nilpotent.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<usize> {
    let s = lower_central_series(g);
    s.terminated.then(|| s.length())
}

/// Join of all normal subgroups of the form `<x>^G` satisfying `good`.
/// Members of one conjugacy class share their normal closure, so only
/// class representatives are examined.
fn join_of_good_closures(g: &FiniteGroup, good: impl Fn(&Subset) -> bool) -> Subset {
    let mut gens: Vec<Elem> = Vec::new();
    let mut acc = Subset::trivial(g.order());
    for class in g.conjugacy_classes() {
        let x = class[0];
        if acc.contains(x) {
            continue;
        }
        let nc = g.normal_closure([x]);
        if good(&nc) {
            gens.push(x);
            acc = g.normal_closure(gens.iter().copied());
        }
    }
    acc
}

/// Largest soluble normal subgroup.
pub fn soluble_radical(g: &FiniteGroup) -> Subset {
    join_of_good_closures(g, |n| is_soluble_subgroup(g, n))
}

/// Largest nilpotent normal subgroup.
pub fn fitting(g: &FiniteGroup) -> Subset {
    join_of_good_closures(g, |n| is_nilpotent_subgroup(g, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, dihedral_of_cyclic, direct_product, symmetric};
    use crate::limits::Limits;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn s4_soluble_not_nilpotent() {
        let s4 = symmetric(4, &l()).unwrap();
        assert!(is_soluble(&s4));
        assert!(!is_nilpotent(&s4));
        assert_eq!(derived_series(&s4).orders(), vec![24, 12, 4, 1]);
    }

    #[test]
    fn d8_class_two() {
        let d8 = dihedral_of_cyclic(&cyclic(4, &l()).unwrap(), &l()).unwrap();
        assert_eq!(nilpotency_class(&d8), Some(2));
    }

    #[test]
    fn a5_perfect() {
        let a5 = alternating(5, &l()).unwrap();
        assert!(is_perfect(&a5));
        assert!(!is_soluble(&a5));
    }

    #[test]
    fn radicals() {
        let s4 = symmetric(4, &l()).unwrap();
        assert!(soluble_radical(&s4).is_full());
        let s5 = symmetric(5, &l()).unwrap();
        assert!(soluble_radical(&s5).is_trivial());
        let a5c2 = direct_product(
            &alternating(5, &l()).unwrap(),
            &cyclic(2, &l()).unwrap(),
            &l(),
        )
        .unwrap();
        let r = soluble_radical(&a5c2);
        assert_eq!(r.len(), 2);
        assert_eq!(r, a5c2.center());
    }

    #[test]
    fn fitting_subgroups() {
        let s4 = symmetric(4, &l()).unwrap();
        assert_eq!(fitting(&s4).len(), 4);
        let d12 = dihedral_of_cyclic(&cyclic(6, &l()).unwrap(), &l()).unwrap();
        let f = fitting(&d12);
        assert_eq!(f.len(), 6);
        assert!(d12.is_abelian_subgroup(&f));
        assert!(fitting(&alternating(5, &l()).unwrap()).is_trivial());
    }
}
