use super::{Elem, FiniteGroup, Subset};
use crate::error::{Error, Result};

/// A homomorphism between two groups, stored as a full image list.
#[derive(Clone, Debug)]
pub struct GroupMap {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<Elem>,
}

impl GroupMap {
    pub(crate) fn new_unchecked(
        source: FiniteGroup,
        target: FiniteGroup,
        images: Vec<Elem>,
    ) -> Self {
        GroupMap {
            source,
            target,
            images,
        }
    }

    /// Verifies `f(x s) = f(x) f(s)` for every element `x` and generator
    /// `s` of the source, which forces `f` to be a homomorphism.
    pub fn homomorphism(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: Vec<Elem>,
    ) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::Invalid(format!(
                "{} images given for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(&bad) = images.iter().find(|e| !target.contains(**e)) {
            return Err(Error::NotMember(bad));
        }
        if !images[0].is_identity() {
            return Err(Error::NotHomomorphism {
                a: Elem::IDENTITY,
                b: Elem::IDENTITY,
            });
        }
        for x in source.elements() {
            for &s in source.generators() {
                let lhs = images[source.mul(x, s).index()];
                let rhs = target.mul(images[x.index()], images[s.index()]);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism { a: x, b: s });
                }
            }
        }
        Ok(GroupMap::new_unchecked(
            source.clone(),
            target.clone(),
            images,
        ))
    }

    /// Checks that `images` is a bijective endomorphism of `g`.
    pub fn verify_automorphism(g: &FiniteGroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != g.order() {
            return Err(Error::NotBijective);
        }
        let mut hit = vec![false; g.order()];
        for &e in &images {
            if !g.contains(e) || std::mem::replace(&mut hit[e.index()], true) {
                return Err(Error::NotBijective);
            }
        }
        Self::homomorphism(g, g, images)
    }

    /// Extends generator images along the breadth-first tree of the source
    /// and verifies the result. `None` if the assignment does not extend.
    pub fn from_generator_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        gen_images: &[Elem],
    ) -> Option<Self> {
        let images = extend_images(source, target, gen_images)?;
        Self::homomorphism(source, target, images).ok()
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x.index()]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn image(&self, s: &Subset) -> Subset {
        let mut out = Subset::from_elems(self.target.order(), s.iter().map(|x| self.apply(x)));
        out.set_subgroup(s.is_subgroup());
        out
    }

    pub fn preimage(&self, s: &Subset) -> Subset {
        let mut out = Subset::from_predicate(self.source.order(), |x| s.contains(self.apply(x)));
        out.set_subgroup(s.is_subgroup());
        out
    }

    pub fn kernel(&self) -> Subset {
        self.preimage(&Subset::trivial(self.target.order()))
    }

    /// Least-id preimage of a target element, if any.
    pub fn lift(&self, y: Elem) -> Option<Elem> {
        self.images
            .iter()
            .position(|&e| e == y)
            .map(|i| Elem(i as u32))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn compose(&self, next: &GroupMap) -> GroupMap {
        let images = self.images.iter().map(|&e| next.apply(e)).collect();
        GroupMap::new_unchecked(self.source.clone(), next.target.clone(), images)
    }
}

fn extend_images(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gen_images: &[Elem],
) -> Option<Vec<Elem>> {
    let gens = source.generators();
    if gens.len() != gen_images.len() {
        return None;
    }
    let mut images = vec![Elem(u32::MAX); source.order()];
    images[0] = Elem::IDENTITY;
    let mut queue = vec![Elem::IDENTITY];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (j, &s) in gens.iter().enumerate() {
            let y = source.mul(x, s);
            let fy = target.mul(images[x.index()], gen_images[j]);
            if images[y.index()].0 == u32::MAX {
                images[y.index()] = fy;
                queue.push(y);
            } else if images[y.index()] != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(images)
}

impl FiniteGroup {
    /// The inner automorphism `x -> x^g`.
    pub fn inner_automorphism(&self, g: Elem) -> GroupMap {
        let images = self.elements().map(|x| self.conjugate(x, g)).collect();
        GroupMap::new_unchecked(self.clone(), self.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};
    use crate::limits::Limits;

    #[test]
    fn identity_map_is_automorphism() {
        let s3 = symmetric(3, &Limits::default()).unwrap();
        let id: Vec<Elem> = s3.elements().collect();
        assert!(GroupMap::verify_automorphism(&s3, id).is_ok());
    }

    #[test]
    fn inversion_on_c5_is_automorphism() {
        let c5 = cyclic(5, &Limits::default()).unwrap();
        let inv: Vec<Elem> = c5.elements().map(|x| c5.inv(x)).collect();
        assert!(GroupMap::verify_automorphism(&c5, inv).is_ok());
    }

    #[test]
    fn inversion_on_s3_fails_with_witness() {
        let s3 = symmetric(3, &Limits::default()).unwrap();
        let inv: Vec<Elem> = s3.elements().map(|x| s3.inv(x)).collect();
        match GroupMap::verify_automorphism(&s3, inv.clone()) {
            Err(Error::NotHomomorphism { a, b }) => {
                assert_ne!(
                    inv[s3.mul(a, b).index()],
                    s3.mul(inv[a.index()], inv[b.index()])
                );
            }
            other => panic!("expected NotHomomorphism, got {other:?}"),
        }
    }

    #[test]
    fn non_bijection_rejected() {
        let c4 = cyclic(4, &Limits::default()).unwrap();
        let dbl: Vec<Elem> = c4.elements().map(|x| c4.mul(x, x)).collect();
        assert_eq!(
            GroupMap::verify_automorphism(&c4, dbl).unwrap_err(),
            Error::NotBijective
        );
    }

    #[test]
    fn inner_automorphisms_verify() {
        let s4 = symmetric(4, &Limits::default()).unwrap();
        for g in s4.elements() {
            let m = s4.inner_automorphism(g);
            assert!(GroupMap::verify_automorphism(&s4, m.images().to_vec()).is_ok());
        }
    }
}
