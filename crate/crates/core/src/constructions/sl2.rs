use std::sync::Arc;

use super::field::{Fe, Fq};
use crate::analysis::{is_perfect_subgroup, is_simple};
use crate::error::{Error, Result};
use crate::group::{enumerate, quotient, Elem, Enumeration, FiniteGroup, GroupOps, Subset};
use crate::limits::Limits;

/// A 2x2 matrix `[a, b, c, d]` in row-major order.
pub type Mat2 = [Fe; 4];

#[derive(Clone, Debug)]
pub struct Sl2Ops {
    pub field: Fq,
}

impl Sl2Ops {
    pub fn apply(&self, m: &Mat2, x: Fe, y: Fe) -> (Fe, Fe) {
        let f = &self.field;
        (
            f.add(f.mul(m[0], x), f.mul(m[1], y)),
            f.add(f.mul(m[2], x), f.mul(m[3], y)),
        )
    }
}

impl GroupOps for Sl2Ops {
    type Item = Mat2;

    fn identity(&self) -> Mat2 {
        [1, 0, 0, 1]
    }

    fn mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let f = &self.field;
        let dot = |x: Fe, y: Fe, z: Fe, w: Fe| f.add(f.mul(x, y), f.mul(z, w));
        [
            dot(a[0], b[0], a[1], b[2]),
            dot(a[0], b[1], a[1], b[3]),
            dot(a[2], b[0], a[3], b[2]),
            dot(a[2], b[1], a[3], b[3]),
        ]
    }

    fn inv(&self, a: &Mat2) -> Mat2 {
        let f = &self.field;
        [a[3], f.neg(a[1]), f.neg(a[2]), a[0]]
    }

    fn describe(&self, a: &Mat2) -> Option<String> {
        let f = &self.field;
        Some(format!(
            "[{} {}; {} {}]",
            f.describe(a[0]),
            f.describe(a[1]),
            f.describe(a[2]),
            f.describe(a[3])
        ))
    }
}

/// `SL_2(q)` with access to the matrix behind each element id.
#[derive(Clone)]
pub struct Sl2 {
    group: FiniteGroup,
    enumeration: Arc<Enumeration<Sl2Ops>>,
}

impl Sl2 {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &Fq {
        &self.enumeration.ops().field
    }

    pub fn matrix(&self, e: Elem) -> Mat2 {
        *self.enumeration.item(e)
    }

    pub fn element(&self, m: &Mat2) -> Option<Elem> {
        self.enumeration.id_of(m)
    }
}

/// Transvections `[1 b; 0 1]` and `[1 0; b 1]` for `b` running over a basis
/// of the field over its prime field; they generate `SL_2(q)`.
pub fn sl2_generators(f: &Fq) -> Vec<Mat2> {
    let basis = f.prime_field_basis();
    let mut gens: Vec<Mat2> = basis.iter().map(|&b| [1, b, 0, 1]).collect();
    gens.extend(basis.iter().map(|&b| [1, 0, b, 1]));
    gens
}

/// `SL_2(q)`, enumerated and checked against `q(q^2 - 1)`.
pub fn sl2(f: &Fq, limits: &Limits) -> Result<Sl2> {
    let q = f.order() as u128;
    let expected = q * (q * q - 1);
    let label = format!("SL(2,{q})");
    if expected > limits.element_cap as u128 {
        return Err(Error::too_large(label, expected, limits.element_cap));
    }
    let (group, enumeration) = enumerate(
        Sl2Ops { field: f.clone() },
        &sl2_generators(f),
        label,
        limits,
    )?;
    if group.order() as u128 != expected {
        return Err(Error::check(
            "order of SL(2,q)",
            format!("enumerated {} elements, expected {expected}", group.order()),
        ));
    }
    Ok(Sl2 { group, enumeration })
}

/// `PSL_2(q) = SL_2(q) / {±1}`.
pub fn psl2(f: &Fq, limits: &Limits) -> Result<FiniteGroup> {
    let s = sl2(f, limits)?;
    let g = s.group();
    let (quo, _) = quotient(g, &g.center(), limits)?;
    Ok(quo.relabel(format!("PSL(2,{})", f.order())))
}

/// Order of the binary icosahedral group; element orders must divide it.
const BINARY_ICOSAHEDRAL_ORDER: usize = 120;

/// First pair `(x, y)`, ordered by element orders and then ids, that
/// generates a perfect subgroup of order 120 of `SL_2(q)`.
pub fn find_binary_icosahedral(s: &Sl2) -> Result<Subset> {
    let q = s.field().order();
    if q % 10 != 1 && q % 10 != 9 {
        return Err(Error::ConditionViolated(format!(
            "q = {q} is not congruent to ±1 mod 10"
        )));
    }
    let g = s.group();
    let mut cands: Vec<(usize, Elem)> = g
        .elements()
        .map(|x| (g.element_order(x), x))
        .filter(|(o, _)| BINARY_ICOSAHEDRAL_ORDER.is_multiple_of(*o))
        .collect();
    cands.sort_unstable();
    for &(_, x) in &cands {
        for &(_, y) in &cands {
            let Some(h) = g.closure_bounded(&[x, y], BINARY_ICOSAHEDRAL_ORDER) else {
                continue;
            };
            if h.len() == BINARY_ICOSAHEDRAL_ORDER && is_perfect_subgroup(g, &h) {
                return Ok(h);
            }
        }
    }
    Err(Error::NotFound(format!(
        "binary icosahedral subgroup of SL(2,{q})"
    )))
}

/// The five smallest non-abelian simple groups: `A5, PSL(2,7), A6, PSL(2,8), A7`.
pub fn small_simple_groups(limits: &Limits) -> Result<Vec<FiniteGroup>> {
    use super::field::gf;
    use crate::group::alternating;
    let list = vec![
        alternating(5, limits)?,
        psl2(&gf(7, 1)?, limits)?,
        alternating(6, limits)?,
        psl2(&gf(2, 3)?, limits)?,
        alternating(7, limits)?,
    ];
    debug_assert!(list.iter().all(is_simple));
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_perfect;
    use crate::constructions::field::gf;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn orders() {
        for (p, e, n) in [(3, 1, 24), (5, 1, 120), (3, 2, 720), (2, 2, 60)] {
            assert_eq!(sl2(&gf(p, e).unwrap(), &l()).unwrap().group().order(), n);
        }
    }

    #[test]
    fn perfectness() {
        assert!(is_perfect(sl2(&gf(5, 1).unwrap(), &l()).unwrap().group()));
        assert!(!is_perfect(sl2(&gf(3, 1).unwrap(), &l()).unwrap().group()));
    }

    #[test]
    fn psl_orders_and_simplicity() {
        let p7 = psl2(&gf(7, 1).unwrap(), &l()).unwrap();
        assert_eq!(p7.order(), 168);
        assert!(is_simple(&p7));
        assert_eq!(psl2(&gf(2, 3).unwrap(), &l()).unwrap().order(), 504);
    }

    #[test]
    fn icosahedral_q11() {
        let s = sl2(&gf(11, 1).unwrap(), &l()).unwrap();
        let b = find_binary_icosahedral(&s).unwrap();
        assert_eq!(b.len(), 120);
        let z: Vec<_> = b
            .iter()
            .filter(|&x| b.iter().all(|y| s.group().mul(x, y) == s.group().mul(y, x)))
            .collect();
        assert_eq!(z.len(), 2);
    }

    #[test]
    fn icosahedral_needs_congruence() {
        let s = sl2(&gf(13, 1).unwrap(), &l()).unwrap();
        assert!(matches!(
            find_binary_icosahedral(&s),
            Err(Error::ConditionViolated(_))
        ));
    }
}
