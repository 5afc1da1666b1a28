use crate::arith::{p_part, prime_divisors};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subset};

/// `H/Z` is simple and nontrivial, for `Z` normal in `H`: every element of
/// `H` outside `Z` generates `H` as a normal subgroup of `H` together with `Z`.
pub fn is_simple_subgroup_mod(g: &FiniteGroup, h: &Subset, z: &Subset) -> bool {
    if h.len() == z.len() {
        return false;
    }
    let hg = g.subgroup_generators(h);
    let zg = g.subgroup_generators(z);
    let mut done = z.clone();
    for x in h.iter() {
        if done.contains(x) {
            continue;
        }
        let nc = g.normal_closure_by(zg.iter().copied().chain([x]), &hg);
        if nc.len() != h.len() {
            return false;
        }
        // conjugates of x in H give the same closure
        for &t in &hg {
            done.insert(g.conjugate(x, t));
        }
        done.insert(x);
    }
    true
}

pub fn is_simple_subgroup(g: &FiniteGroup, h: &Subset) -> bool {
    is_simple_subgroup_mod(g, h, &Subset::trivial(g.order()))
}

pub fn is_simple(g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return false;
    }
    g.class_representatives()
        .into_iter()
        .skip(1)
        .all(|x| g.normal_closure([x]).is_full())
}

/// Minimal normal subgroups, sorted by order then members.
pub fn minimal_normal_subgroups(g: &FiniteGroup) -> Vec<Subset> {
    let mut closures: Vec<Subset> = Vec::new();
    for x in g.class_representatives().into_iter().skip(1) {
        let n = g.normal_closure([x]);
        if !closures.contains(&n) {
            closures.push(n);
        }
    }
    let mut minimal: Vec<Subset> = closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.len() < n.len() && m.is_subset_of(n))
        })
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.cmp_size_then_members(b));
    minimal
}

/// Every normal subgroup, sorted by order then members: the joins of
/// normal closures of conjugacy classes.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subset> {
    let reps = g.class_representatives();
    let start = Subset::trivial(g.order());
    let mut seen = vec![start.clone()];
    let mut i = 0;
    while i < seen.len() {
        let n = seen[i].clone();
        let ngens = g.subgroup_generators(&n);
        for &x in &reps[1..] {
            if n.contains(x) {
                continue;
            }
            let m = g.normal_closure(ngens.iter().copied().chain([x]));
            if !seen.contains(&m) {
                seen.push(m);
            }
        }
        i += 1;
    }
    seen.sort_by(|a, b| a.cmp_size_then_members(b));
    seen
}

/// Outcome of trying to write a group as a direct product of non-abelian
/// simple groups.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub is_semisimple: bool,
    pub factors: Vec<Subset>,
    pub witness: Option<String>,
}

impl DecompositionReport {
    fn fail(reason: String) -> Self {
        DecompositionReport {
            is_semisimple: false,
            factors: Vec::new(),
            witness: Some(reason),
        }
    }
}

pub fn decompose_semisimple(g: &FiniteGroup) -> DecompositionReport {
    if g.order() == 1 {
        return DecompositionReport {
            is_semisimple: true,
            factors: Vec::new(),
            witness: None,
        };
    }
    let mins = minimal_normal_subgroups(g);
    for (i, n) in mins.iter().enumerate() {
        if g.is_abelian_subgroup(n) {
            return DecompositionReport::fail(format!(
                "minimal normal subgroup {i} (order {}) is abelian",
                n.len()
            ));
        }
        if !is_simple_subgroup(g, n) {
            return DecompositionReport::fail(format!(
                "minimal normal subgroup {i} (order {}) is not simple",
                n.len()
            ));
        }
    }
    let product: u128 = mins.iter().map(|n| n.len() as u128).product();
    if product != g.order() as u128 {
        return DecompositionReport::fail(format!(
            "minimal normal subgroups have order product {product}, group order {}",
            g.order()
        ));
    }
    let join = g.closure(mins.iter().flat_map(|n| g.subgroup_generators(n)));
    if !join.is_full() {
        return DecompositionReport::fail(format!(
            "minimal normal subgroups generate only {} elements",
            join.len()
        ));
    }
    DecompositionReport {
        is_semisimple: true,
        factors: mins,
        witness: None,
    }
}

/// Smallest prime `p` for which the subgroup `S` has a cyclic Sylow
/// `p`-subgroup, with the least-id element of order `|S|_p`.
pub fn cyclic_sylow_prime(g: &FiniteGroup, s: &Subset) -> Result<(u64, Elem)> {
    let n = s.len() as u64;
    for p in prime_divisors(n) {
        let target = p_part(n, p) as usize;
        if let Some(x) = s.iter().find(|&x| g.element_order(x) == target) {
            return Ok((p, x));
        }
    }
    Err(Error::NoCyclicSylow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, direct_product, symmetric};
    use crate::limits::Limits;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let g = symmetric(4, &l()).unwrap();
        let orders: Vec<usize> = normal_subgroups(&g).iter().map(Subset::len).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn minimal_normals() {
        let s4 = symmetric(4, &l()).unwrap();
        let m = minimal_normal_subgroups(&s4);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].len(), 4);
        let c6 = cyclic(6, &l()).unwrap();
        let sizes: Vec<usize> = minimal_normal_subgroups(&c6)
            .iter()
            .map(Subset::len)
            .collect();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn semisimple_examples() {
        let a5 = alternating(5, &l()).unwrap();
        let r = decompose_semisimple(&a5);
        assert!(r.is_semisimple);
        assert_eq!(r.factors.len(), 1);
        let a5a5 = direct_product(&a5, &a5, &l()).unwrap();
        let r = decompose_semisimple(&a5a5);
        assert!(r.is_semisimple);
        assert_eq!(r.factors.len(), 2);
        assert!(!decompose_semisimple(&symmetric(5, &l()).unwrap()).is_semisimple);
    }

    #[test]
    fn cyclic_sylow_of_a5_and_a6() {
        let a5 = alternating(5, &l()).unwrap();
        let (p, x) = cyclic_sylow_prime(&a5, &Subset::full(60)).unwrap();
        assert_eq!(p, 3);
        assert_eq!(a5.element_order(x), 3);
        let a6 = alternating(6, &l()).unwrap();
        assert_eq!(cyclic_sylow_prime(&a6, &Subset::full(360)).unwrap().0, 5);
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&alternating(5, &l()).unwrap()));
        assert!(!is_simple(&symmetric(5, &l()).unwrap()));
        assert!(is_simple(&cyclic(7, &l()).unwrap()));
    }
}
