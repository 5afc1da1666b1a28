use std::sync::Arc;

use super::perm::from_cycles;
use super::{enumerate, Carrier, Elem, FiniteGroup, GroupMap, GroupOps, Subset};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Integers modulo `n` under addition.
#[derive(Clone, Debug)]
pub struct ModOps {
    pub n: u32,
}

impl GroupOps for ModOps {
    type Item = u32;

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.n as u64) as u32
    }

    fn inv(&self, a: &u32) -> u32 {
        (self.n - a) % self.n
    }
}

/// The cyclic group of order `n`; element `k` is the residue `k`.
pub fn cyclic(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group of order 0".into()));
    }
    let n32 =
        u32::try_from(n).map_err(|_| Error::too_large(format!("C{n}"), n, limits.element_cap))?;
    let gens = if n > 1 { vec![1] } else { vec![] };
    let (g, _) = enumerate(ModOps { n: n32 }, &gens, format!("C{n}"), limits)?;
    Ok(g)
}

/// `C_p^k`; element ids are base-`p` digit vectors, least significant
/// coordinate first.
pub fn elementary_abelian(p: usize, k: usize, limits: &Limits) -> Result<FiniteGroup> {
    if p < 2 || !crate::arith::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let n = (p as u128).pow(k as u32);
    if n > limits.table_cap as u128 {
        return Err(Error::too_large(format!("C{p}^{k}"), n, limits.table_cap));
    }
    let n = n as usize;
    let digits = |mut x: usize| {
        let mut d = vec![0usize; k];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let mut flat = vec![0u32; n * n];
    for a in 0..n {
        let da = digits(a);
        for b in 0..n {
            let db = digits(b);
            let mut v = 0usize;
            for i in (0..k).rev() {
                v = v * p + (da[i] + db[i]) % p;
            }
            flat[a * n + b] = v as u32;
        }
    }
    FiniteGroup::from_flat_table(flat.into_boxed_slice(), format!("C{p}^{k}"))
}

pub fn symmetric(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let g = match n {
        0 | 1 => from_cycles(1, &[], limits)?,
        2 => from_cycles(2, &["(1 2)"], limits)?,
        _ => {
            let long = format!(
                "({})",
                (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
            );
            from_cycles(n, &[&long, "(1 2)"], limits)?
        }
    };
    Ok(g.relabel(format!("S{n}")))
}

pub fn alternating(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let cycles: Vec<String> = (1..n.saturating_sub(1))
        .map(|i| format!("({} {} {})", i, i + 1, i + 2))
        .collect();
    let refs: Vec<&str> = cycles.iter().map(String::as_str).collect();
    let g = from_cycles(n.max(1), &refs, limits)?;
    Ok(g.relabel(format!("A{n}")))
}

/// Pairs of element ids of two groups, multiplied componentwise.
#[derive(Clone, Debug)]
pub struct DirectOps {
    pub left: FiniteGroup,
    pub right: FiniteGroup,
}

impl GroupOps for DirectOps {
    type Item = (u32, u32);

    fn identity(&self) -> (u32, u32) {
        (0, 0)
    }

    fn mul(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        (
            self.left.mul(Elem(a.0), Elem(b.0)).0,
            self.right.mul(Elem(a.1), Elem(b.1)).0,
        )
    }

    fn inv(&self, a: &(u32, u32)) -> (u32, u32) {
        (self.left.inv(Elem(a.0)).0, self.right.inv(Elem(a.1)).0)
    }

    fn describe(&self, a: &(u32, u32)) -> Option<String> {
        Some(format!(
            "[{}, {}]",
            self.left.describe(Elem(a.0)),
            self.right.describe(Elem(a.1))
        ))
    }
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let size = g.order() as u128 * h.order() as u128;
    let label = format!("{} x {}", g.label(), h.label());
    if size > limits.element_cap as u128 {
        return Err(Error::too_large(label, size, limits.element_cap));
    }
    let mut gens: Vec<(u32, u32)> = g.generators().iter().map(|e| (e.0, 0)).collect();
    gens.extend(h.generators().iter().map(|e| (0, e.0)));
    let ops = DirectOps {
        left: g.clone(),
        right: h.clone(),
    };
    Ok(enumerate(ops, &gens, label, limits)?.0)
}

/// `N ⋊ H` with elements written `h·n` and `h^-1 n h = α_h(n)`, so that
/// `(h1, n1)(h2, n2) = (h1 h2, α_{h2}(n1) n2)`.
pub struct SemidirectOps {
    pub normal: FiniteGroup,
    pub top: FiniteGroup,
    /// `action[h * |N| + n] = α_h(n)`.
    action: Vec<u32>,
}

impl SemidirectOps {
    pub fn act(&self, h: Elem, n: Elem) -> Elem {
        Elem(self.action[h.index() * self.normal.order() + n.index()])
    }
}

impl GroupOps for SemidirectOps {
    type Item = (u32, u32);

    fn identity(&self) -> (u32, u32) {
        (0, 0)
    }

    fn mul(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        let h = self.top.mul(Elem(a.0), Elem(b.0));
        let n = self.normal.mul(self.act(Elem(b.0), Elem(a.1)), Elem(b.1));
        (h.0, n.0)
    }

    fn inv(&self, a: &(u32, u32)) -> (u32, u32) {
        let hi = self.top.inv(Elem(a.0));
        let ni = self.normal.inv(Elem(a.1));
        (hi.0, self.act(hi, ni).0)
    }

    fn describe(&self, a: &(u32, u32)) -> Option<String> {
        Some(format!(
            "[{}; {}]",
            self.top.describe(Elem(a.0)),
            self.normal.describe(Elem(a.1))
        ))
    }
}

/// Semidirect product `N ⋊ H`. `action[i]` is the automorphism of `N` (as an
/// image list over all of `N`) by which the `i`-th generator of `H` acts on
/// the right. Each image list is verified to be an automorphism and the
/// extension to all of `H` is verified to be a homomorphism.
pub fn semidirect_product(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &[Vec<Elem>],
    limits: &Limits,
) -> Result<FiniteGroup> {
    let label = format!("{} : {}", n.label(), h.label());
    semidirect_labelled(n, h, action, label, limits)
}

pub(crate) fn semidirect_labelled(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &[Vec<Elem>],
    label: String,
    limits: &Limits,
) -> Result<FiniteGroup> {
    let hg = h.generators();
    if action.len() != hg.len() {
        return Err(Error::ActionNotHomomorphic(format!(
            "{} generator images supplied for {} generators",
            action.len(),
            hg.len()
        )));
    }
    for imgs in action {
        GroupMap::verify_automorphism(n, imgs.clone()).map_err(|e| {
            Error::ActionNotHomomorphic(format!("generator image is not an automorphism ({e})"))
        })?;
    }
    let size = n.order() as u128 * h.order() as u128;
    if size > limits.element_cap as u128 {
        return Err(Error::too_large(label, size, limits.element_cap));
    }
    let nn = n.order();
    let mut table = vec![u32::MAX; h.order() * nn];
    for x in 0..nn {
        table[x] = x as u32;
    }
    let mut done = vec![false; h.order()];
    done[0] = true;
    let mut queue = vec![Elem::IDENTITY];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (j, &s) in hg.iter().enumerate() {
            let y = h.mul(x, s);
            if !done[y.index()] {
                done[y.index()] = true;
                for m in 0..nn {
                    let v = table[x.index() * nn + m] as usize;
                    table[y.index() * nn + m] = action[j][v].0;
                }
                queue.push(y);
            }
        }
        i += 1;
    }
    for x in h.elements() {
        for (j, &s) in hg.iter().enumerate() {
            let y = h.mul(x, s);
            for m in 0..nn {
                let v = table[x.index() * nn + m] as usize;
                if table[y.index() * nn + m] != action[j][v].0 {
                    return Err(Error::ActionNotHomomorphic(format!(
                        "action of {} and of {}*{} disagree",
                        y, x, s
                    )));
                }
            }
        }
    }
    let ops = SemidirectOps {
        normal: n.clone(),
        top: h.clone(),
        action: table,
    };
    let mut gens: Vec<(u32, u32)> = n.generators().iter().map(|e| (0, e.0)).collect();
    gens.extend(hg.iter().map(|e| (e.0, 0)));
    Ok(enumerate(ops, &gens, label, limits)?.0)
}

/// `Dih(A) = A ⋊ C2` with the involution acting by inversion.
pub fn dihedral_of_cyclic(a: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian(a.label().to_string()));
    }
    let c2 = cyclic(2, limits)?;
    let inversion: Vec<Elem> = a.elements().map(|x| a.inv(x)).collect();
    semidirect_labelled(a, &c2, &[inversion], format!("Dih({})", a.label()), limits)
}

/// `A ≀ C_q`: elements `(t, (a_0..a_{q-1}))`, the shift `t` moving
/// coordinate `i` to `i + t`.
#[derive(Clone, Debug)]
pub struct WreathOps {
    pub base: FiniteGroup,
    pub q: usize,
}

impl WreathOps {
    fn shift(&self, t: u32, v: &[u32]) -> Vec<u32> {
        let q = self.q;
        (0..q).map(|i| v[(i + q - t as usize) % q]).collect()
    }
}

impl GroupOps for WreathOps {
    type Item = (u32, Vec<u32>);

    fn identity(&self) -> Self::Item {
        (0, vec![0; self.q])
    }

    fn mul(&self, a: &Self::Item, b: &Self::Item) -> Self::Item {
        let moved = self.shift(b.0, &a.1);
        let v = moved
            .iter()
            .zip(&b.1)
            .map(|(&x, &y)| self.base.mul(Elem(x), Elem(y)).0)
            .collect();
        ((a.0 + b.0) % self.q as u32, v)
    }

    fn inv(&self, a: &Self::Item) -> Self::Item {
        let t = (self.q as u32 - a.0) % self.q as u32;
        let ni: Vec<u32> = a.1.iter().map(|&x| self.base.inv(Elem(x)).0).collect();
        (t, self.shift(t, &ni))
    }

    fn describe(&self, a: &Self::Item) -> Option<String> {
        let parts: Vec<String> = a.1.iter().map(|&x| self.base.describe(Elem(x))).collect();
        Some(format!("[shift {}; {}]", a.0, parts.join(", ")))
    }
}

pub fn wreath_cyclic(a: &FiniteGroup, q: usize, limits: &Limits) -> Result<FiniteGroup> {
    let label = format!("{} wr C{q}", a.label());
    if q == 0 {
        return Err(Error::Invalid("wreath product with C0".into()));
    }
    let size = (a.order() as f64).powi(q as i32) * q as f64;
    if size > limits.element_cap as f64 {
        return Err(Error::too_large(label, size as u128, limits.element_cap));
    }
    let mut gens: Vec<(u32, Vec<u32>)> = a
        .generators()
        .iter()
        .map(|e| {
            let mut v = vec![0; q];
            v[0] = e.0;
            (0, v)
        })
        .collect();
    if q > 1 {
        gens.push((1, vec![0; q]));
    }
    let ops = WreathOps { base: a.clone(), q };
    Ok(enumerate(ops, &gens, label, limits)?.0)
}

struct QuotientCarrier {
    parent: FiniteGroup,
    reps: Vec<Elem>,
    coset_of: Vec<u32>,
}

impl Carrier for QuotientCarrier {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self
            .parent
            .mul(self.reps[a as usize], self.reps[b as usize]);
        self.coset_of[p.index()]
    }

    fn describe(&self, a: u32) -> Option<String> {
        Some(format!("{}N", self.parent.describe(self.reps[a as usize])))
    }

    fn parse_element(&self, text: &str) -> Option<u32> {
        let e = self.parent.parse_element(text)?;
        Some(self.coset_of[e.index()])
    }
}

/// `G/N` for a normal subgroup `N`, with cosets numbered by least member,
/// and the projection map.
pub fn quotient(g: &FiniteGroup, n: &Subset, limits: &Limits) -> Result<(FiniteGroup, GroupMap)> {
    g.ensure_normal(n)?;
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    let nm = n.members();
    for x in g.elements() {
        if coset_of[x.index()] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in &nm {
            coset_of[g.mul(x, m).index()] = c;
        }
    }
    let k = reps.len();
    let inv: Box<[u32]> = reps.iter().map(|&r| coset_of[g.inv(r).index()]).collect();
    let mut gens = Vec::new();
    for &s in g.generators() {
        let c = Elem(coset_of[s.index()]);
        if !c.is_identity() && !gens.contains(&c) {
            gens.push(c);
        }
    }
    let label = format!("{}/N{}", g.label(), n.len());
    let carrier = QuotientCarrier {
        parent: g.clone(),
        reps,
        coset_of,
    };
    let table = if k <= limits.table_cap {
        let mut t = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                t[a * k + b] = carrier.mul(a as u32, b as u32);
            }
        }
        Some(t.into_boxed_slice())
    } else {
        None
    };
    let images: Vec<Elem> = carrier.coset_of.iter().map(|&c| Elem(c)).collect();
    let carrier: Arc<dyn Carrier> = Arc::new(carrier);
    let q = FiniteGroup::assemble(label, table, Some(carrier), inv, gens);
    let map = GroupMap::new_unchecked(g.clone(), q.clone(), images);
    Ok((q, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn cyclic_orders() {
        assert_eq!(cyclic(1, &l()).unwrap().order(), 1);
        let c12 = cyclic(12, &l()).unwrap();
        assert_eq!(c12.order(), 12);
        assert_eq!(c12.mul(Elem(7), Elem(8)), Elem(3));
    }

    #[test]
    fn elementary_abelian_ids_are_digit_vectors() {
        let e = elementary_abelian(3, 2, &l()).unwrap();
        assert_eq!(e.order(), 9);
        // (1,2) + (2,2) = (0,1): ids 7 + 8 -> 3
        assert_eq!(e.mul(Elem(7), Elem(8)), Elem(3));
        assert_eq!(e.exponent(), 3);
    }

    #[test]
    fn dihedral_orders_and_shape() {
        let d16 = dihedral_of_cyclic(&cyclic(8, &l()).unwrap(), &l()).unwrap();
        assert_eq!(d16.order(), 16);
        assert!(!d16.is_abelian());
        let d6 = dihedral_of_cyclic(&cyclic(3, &l()).unwrap(), &l()).unwrap();
        assert!(is_isomorphic(&d6, &symmetric(3, &l()).unwrap(), &l()).unwrap());
    }

    #[test]
    fn dihedral_rejects_nonabelian() {
        let s3 = symmetric(3, &l()).unwrap();
        assert!(matches!(
            dihedral_of_cyclic(&s3, &l()),
            Err(Error::NotAbelian(_))
        ));
    }

    #[test]
    fn direct_product_of_coprime_cyclics_is_cyclic() {
        let c6 =
            direct_product(&cyclic(2, &l()).unwrap(), &cyclic(3, &l()).unwrap(), &l()).unwrap();
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());
        assert!(is_isomorphic(&c6, &cyclic(6, &l()).unwrap(), &l()).unwrap());
    }

    #[test]
    fn semidirect_rejects_non_homomorphic_action() {
        // C3 acting on C5 needs an automorphism of order dividing 3; x -> 2x
        // has order 4.
        let c5 = cyclic(5, &l()).unwrap();
        let c3 = cyclic(3, &l()).unwrap();
        let doubling: Vec<Elem> = (0..5).map(|i| Elem((2 * i) % 5)).collect();
        let e = semidirect_product(&c5, &c3, &[doubling], &l()).unwrap_err();
        assert!(matches!(e, Error::ActionNotHomomorphic(_)));
    }

    #[test]
    fn semidirect_frobenius_group_of_order_20() {
        let c5 = cyclic(5, &l()).unwrap();
        let c4 = cyclic(4, &l()).unwrap();
        let doubling: Vec<Elem> = (0..5).map(|i| Elem((2 * i) % 5)).collect();
        let f20 = semidirect_product(&c5, &c4, &[doubling], &l()).unwrap();
        assert_eq!(f20.order(), 20);
        assert!(f20.center().is_trivial());
    }

    #[test]
    fn wreath_orders() {
        let c3 = cyclic(3, &l()).unwrap();
        assert_eq!(wreath_cyclic(&c3, 3, &l()).unwrap().order(), 81);
        let c20 = cyclic(20, &l()).unwrap();
        assert_eq!(wreath_cyclic(&c20, 2, &l()).unwrap().order(), 800);
        let c2 = cyclic(2, &l()).unwrap();
        let w = wreath_cyclic(&c2, 1, &l()).unwrap();
        assert!(is_isomorphic(&w, &c2, &l()).unwrap());
    }

    #[test]
    fn quotient_s4_by_v4() {
        let s4 = symmetric(4, &l()).unwrap();
        let t = s4.parse_element("(1 2)(3 4)").unwrap();
        let v4 = s4.normal_closure([t]);
        let (q, map) = quotient(&s4, &v4, &l()).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert_eq!(map.kernel(), v4);
        assert!(is_isomorphic(&q, &symmetric(3, &l()).unwrap(), &l()).unwrap());
    }

    #[test]
    fn quotient_by_non_normal_fails() {
        let s4 = symmetric(4, &l()).unwrap();
        let t = s4.parse_element("(1 2)").unwrap();
        let h = s4.closure([t]);
        assert!(matches!(
            quotient(&s4, &h, &l()),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn structural_and_table_backends_agree() {
        let small = Limits {
            table_cap: 10,
            ..l()
        };
        let a = symmetric(4, &l()).unwrap();
        let b = symmetric(4, &small).unwrap();
        assert_eq!(a.backend(), crate::group::Backend::Table);
        assert_eq!(b.backend(), crate::group::Backend::Structural);
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }
}
