use rustc_hash::FxHashSet;

use super::normal::is_simple_subgroup_mod;
use super::series::is_perfect_subgroup;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subset};
use crate::limits::Limits;

fn check_cap(g: &FiniteGroup, limits: &Limits) -> Result<()> {
    if g.order() > limits.lattice_cap {
        return Err(Error::too_large(
            format!("lattice of {}", g.label()),
            g.order(),
            limits.lattice_cap,
        ));
    }
    Ok(())
}

/// Every subgroup, sorted by order then member list. Grown from the trivial
/// subgroup by closing `H ∪ {g}` for each subgroup `H` and element `g`.
pub fn subgroup_lattice(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Subset>> {
    check_cap(g, limits)?;
    let mut seen: FxHashSet<Subset> = FxHashSet::default();
    let start = Subset::trivial(g.order());
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut i = 0;
    while i < queue.len() {
        let h = queue[i].clone();
        let hgens = g.subgroup_generators(&h);
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let k = g.closure(hgens.iter().copied().chain([x]));
            if seen.insert(k.clone()) {
                queue.push(k);
            }
        }
        i += 1;
    }
    queue.sort_by(|a, b| a.cmp_size_then_members(b));
    Ok(queue)
}

/// Proper subgroups maximal under inclusion, from a precomputed lattice.
pub fn maximal_from_lattice(lattice: &[Subset]) -> Vec<Subset> {
    let Some(top) = lattice.last() else {
        return Vec::new();
    };
    let proper: Vec<&Subset> = lattice.iter().filter(|h| h.len() < top.len()).collect();
    proper
        .iter()
        .filter(|h| {
            !proper
                .iter()
                .any(|k| k.len() > h.len() && h.is_subset_of(k))
        })
        .map(|h| (*h).clone())
        .collect()
}

pub fn maximal_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Subset>> {
    Ok(maximal_from_lattice(&subgroup_lattice(g, limits)?))
}

/// Intersection of the maximal subgroups (the whole group when there are
/// none, i.e. for the trivial group).
pub fn frattini(g: &FiniteGroup, limits: &Limits) -> Result<Subset> {
    let max = maximal_subgroups(g, limits)?;
    let mut acc = Subset::full(g.order());
    for m in &max {
        acc = acc.intersection(m);
    }
    Ok(acc)
}

/// Least proper subgroup `H` (by order, then members) with `HK = G`.
pub fn proper_supplement(g: &FiniteGroup, k: &Subset, limits: &Limits) -> Result<Option<Subset>> {
    g.ensure_normal(k)?;
    let lattice = subgroup_lattice(g, limits)?;
    Ok(lattice
        .into_iter()
        .find(|h| h.len() < g.order() && g.product_order(h, k) == g.order()))
}

pub fn has_proper_supplement(g: &FiniteGroup, k: &Subset, limits: &Limits) -> Result<bool> {
    Ok(proper_supplement(g, k, limits)?.is_some())
}

/// Whether `H` is subnormal: the chain of successive normal closures of `H`
/// starting from `G` comes down to `H`.
pub fn is_subnormal(g: &FiniteGroup, h: &Subset) -> bool {
    let hg = g.subgroup_generators(h);
    let mut current = Subset::full(g.order());
    loop {
        if current.len() == h.len() {
            return true;
        }
        let cg = g.subgroup_generators(&current);
        let next = g.normal_closure_by(hg.iter().copied(), &cg);
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}

/// Perfect, and simple modulo its center.
pub fn is_quasisimple_subgroup(g: &FiniteGroup, h: &Subset) -> bool {
    if h.len() == 1 || !is_perfect_subgroup(g, h) {
        return false;
    }
    let hg = g.subgroup_generators(h);
    let z = g.centralizer_of(&hg).intersection(h);
    is_simple_subgroup_mod(g, h, &z)
}

/// Every quasisimple subnormal subgroup is normal. Returns the first
/// offending subgroup, if any.
pub fn condition_a_witness(g: &FiniteGroup, limits: &Limits) -> Result<Option<Subset>> {
    let lattice = subgroup_lattice(g, limits)?;
    for h in lattice {
        if is_quasisimple_subgroup(g, &h) && is_subnormal(g, &h) && !g.is_normal(&h) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

pub fn check_condition_a(g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    Ok(condition_a_witness(g, limits)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_nilpotent_subgroup;
    use crate::group::{alternating, cyclic, dihedral_of_cyclic, symmetric};

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(
            subgroup_lattice(&symmetric(3, &l()).unwrap(), &l())
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            subgroup_lattice(&symmetric(4, &l()).unwrap(), &l())
                .unwrap()
                .len(),
            30
        );
        assert_eq!(
            subgroup_lattice(&alternating(5, &l()).unwrap(), &l())
                .unwrap()
                .len(),
            59
        );
        assert_eq!(
            subgroup_lattice(&cyclic(12, &l()).unwrap(), &l())
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn frattini_examples() {
        let c4 = cyclic(4, &l()).unwrap();
        assert_eq!(frattini(&c4, &l()).unwrap().len(), 2);
        assert!(frattini(&symmetric(4, &l()).unwrap(), &l())
            .unwrap()
            .is_trivial());
        let d8 = dihedral_of_cyclic(&cyclic(4, &l()).unwrap(), &l()).unwrap();
        let f = frattini(&d8, &l()).unwrap();
        assert_eq!(f, d8.center());
        assert!(is_nilpotent_subgroup(&d8, &f));
    }

    #[test]
    fn supplements() {
        let s4 = symmetric(4, &l()).unwrap();
        let a4 = crate::analysis::derived_subgroup(&s4);
        let h = proper_supplement(&s4, &a4, &l()).unwrap().unwrap();
        assert_eq!(h.len(), 2);
        let c4 = cyclic(4, &l()).unwrap();
        let c2 = c4.closure([crate::Elem(2)]);
        assert!(!has_proper_supplement(&c4, &c2, &l()).unwrap());
        assert!(has_proper_supplement(&c4, &Subset::full(4), &l()).unwrap());
        let c1 = cyclic(1, &l()).unwrap();
        assert!(!has_proper_supplement(&c1, &Subset::full(1), &l()).unwrap());
    }

    #[test]
    fn lattice_cap_enforced() {
        let s5 = symmetric(5, &l()).unwrap();
        let small = Limits {
            lattice_cap: 100,
            ..l()
        };
        assert!(matches!(
            subgroup_lattice(&s5, &small),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn condition_a_examples() {
        assert!(check_condition_a(&alternating(5, &l()).unwrap(), &l()).unwrap());
        assert!(check_condition_a(&symmetric(4, &l()).unwrap(), &l()).unwrap());
    }

    #[test]
    fn subnormality() {
        let s4 = symmetric(4, &l()).unwrap();
        let t = s4.parse_element("(1 2)(3 4)").unwrap();
        let h = s4.closure([t]);
        assert!(is_subnormal(&s4, &h));
        let u = s4.parse_element("(1 2)").unwrap();
        assert!(!is_subnormal(&s4, &s4.closure([u])));
    }
}
