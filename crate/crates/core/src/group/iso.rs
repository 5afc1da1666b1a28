use super::{Elem, FiniteGroup, GroupMap};
use crate::error::{Error, Result};
use crate::limits::Limits;

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

/// Brute-force search over generator images, in id order. Intended for
/// small sanity checks only.
pub fn find_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limits: &Limits,
) -> Result<Option<GroupMap>> {
    if g.order() > limits.iso_cap {
        return Err(Error::too_large(g.label(), g.order(), limits.iso_cap));
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.order() == 1 {
        return Ok(GroupMap::from_generator_images(g, h, &[]));
    }
    if order_profile(g) != order_profile(h) {
        return Ok(None);
    }
    let gens = g.generators().to_vec();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&y| h.element_order(y) == o).collect()
        })
        .collect();
    let mut choice = vec![Elem::IDENTITY; gens.len()];
    Ok(search(g, h, &candidates, &mut choice, 0))
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    candidates: &[Vec<Elem>],
    choice: &mut Vec<Elem>,
    depth: usize,
) -> Option<GroupMap> {
    if depth == candidates.len() {
        let map = GroupMap::from_generator_images(g, h, choice)?;
        return map.is_injective().then_some(map);
    }
    for &c in &candidates[depth] {
        choice[depth] = c;
        if let Some(m) = search(g, h, candidates, choice, depth + 1) {
            return Some(m);
        }
    }
    None
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<bool> {
    Ok(find_isomorphism(g, h, limits)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, elementary_abelian, symmetric};

    #[test]
    fn distinguishes_c4_from_klein() {
        let l = Limits::default();
        let c4 = cyclic(4, &l).unwrap();
        let v4 = elementary_abelian(2, 2, &l).unwrap();
        assert!(!is_isomorphic(&c4, &v4, &l).unwrap());
        assert!(is_isomorphic(&v4, &v4, &l).unwrap());
    }

    #[test]
    fn found_map_is_bijective_homomorphism() {
        let l = Limits::default();
        let s3 = symmetric(3, &l).unwrap();
        let d = crate::group::dihedral_of_cyclic(&cyclic(3, &l).unwrap(), &l).unwrap();
        let m = find_isomorphism(&d, &s3, &l).unwrap().unwrap();
        for x in d.elements() {
            for y in d.elements() {
                assert_eq!(m.apply(d.mul(x, y)), s3.mul(m.apply(x), m.apply(y)));
            }
        }
        assert!(m.is_injective());
    }

    #[test]
    fn respects_cap() {
        let l = Limits::default();
        let s5 = symmetric(5, &l).unwrap();
        let small = Limits { iso_cap: 100, ..l };
        assert!(matches!(
            is_isomorphic(&s5, &s5, &small),
            Err(Error::TooLarge { .. })
        ));
    }
}
