use serde::Serialize;

use crate::analysis::derived_subgroup;
use crate::error::{Error, Result};
use crate::group::{
    cyclic, dihedral_of_cyclic, direct_product, find_isomorphism, Elem, FiniteGroup, Subset,
};
use crate::limits::Limits;

/// `F = Dih(C_{2^n}) × Dih(C_p)` with `L = F' ∪ ab F'` and `H = L ∩ C_F(a)`,
/// where `a` and `b` are the reflections generating the two factors
/// together with the rotations.
#[derive(Clone, Debug)]
pub struct ThmDInstance {
    pub n: u32,
    pub p: u64,
    pub f: FiniteGroup,
    pub a: Elem,
    pub b: Elem,
    pub derived: Subset,
    pub l: Subset,
    pub h: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThmDSummary {
    pub n: u32,
    pub p: u64,
    pub order_f: usize,
    pub order_l: usize,
    pub l_is_subgroup: bool,
    pub index_l: usize,
    pub order_h: usize,
    pub center_h: usize,
    pub h_isomorphic_to_dih_p: bool,
}

pub fn thm_d_group(n: u32, p: u64, limits: &Limits) -> Result<FiniteGroup> {
    if p < 3 || !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let size = 4u128 * (1u128 << n) * p as u128;
    if size > limits.table_cap as u128 {
        return Err(Error::too_large(
            format!("Dih(C{}) x Dih(C{p})", 1u64 << n),
            size,
            limits.table_cap,
        ));
    }
    let d1 = dihedral_of_cyclic(&cyclic(1 << n, limits)?, limits)?;
    let d2 = dihedral_of_cyclic(&cyclic(p as usize, limits)?, limits)?;
    direct_product(&d1, &d2, limits)
}

pub fn thm_d_finite_instance(n: u32, p: u64, limits: &Limits) -> Result<ThmDInstance> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let f = thm_d_group(n, p, limits)?;
    // Generators are the rotation and reflection of each factor, in order.
    let gens = f.generators();
    let (a, b) = (gens[1], gens[3]);
    let derived = derived_subgroup(&f);
    let ab = f.mul(a, b);
    let mut l = derived.clone();
    for x in derived.iter() {
        l.insert(f.mul(ab, x));
    }
    let ca = f.centralizer_of(&[a]);
    let h = l.intersection(&ca);
    Ok(ThmDInstance {
        n,
        p,
        f,
        a,
        b,
        derived,
        l,
        h,
    })
}

impl ThmDInstance {
    pub fn summary(&self, limits: &Limits) -> Result<ThmDSummary> {
        let f = &self.f;
        let l_is_subgroup = f.closure(self.l.iter()).len() == self.l.len();
        let h_members = self.h.members();
        let center_h = h_members
            .iter()
            .filter(|&&x| h_members.iter().all(|&y| f.mul(x, y) == f.mul(y, x)))
            .count();
        let h_is_subgroup = f.closure(self.h.iter()).len() == self.h.len();
        let h_isomorphic_to_dih_p = if h_is_subgroup {
            let (hg, _) = f.subgroup_as_group(&f.closure(self.h.iter()), "H")?;
            let dp = dihedral_of_cyclic(&cyclic(self.p as usize, limits)?, limits)?;
            find_isomorphism(&hg, &dp, limits)?.is_some()
        } else {
            false
        };
        Ok(ThmDSummary {
            n: self.n,
            p: self.p,
            order_f: f.order(),
            order_l: self.l.len(),
            l_is_subgroup,
            index_l: f.order() / self.l.len(),
            order_h: self.h.len(),
            center_h,
            h_isomorphic_to_dih_p,
        })
    }
}
