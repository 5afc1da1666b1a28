use std::fmt;

use super::field::gf;
use super::sl2::psl2;
use super::thmd::thm_d_group;
use crate::arith::nth_odd_prime_except;
use crate::error::{Error, Result};
use crate::group::{
    alternating, cyclic, dihedral_of_cyclic, direct_product, wreath_cyclic, FiniteGroup,
};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `C_{2^n}`
    Cyc2,
    /// `C_{2^n p_n}`
    Cyc2p,
    /// `Dih(C_{2^n})`
    Dih2,
    /// `Dih(C_{2^n p_n})`
    Dih2p,
    /// `C_{q^n} ≀ C_q`
    WrQ,
    /// `C_{p_n q^n} ≀ C_q`, `p_n` the `n`-th odd prime other than `q`
    WrPq,
    /// `Dih(C_{2^n}) × Dih(C_{p_n})`
    ThmD,
    /// `S_n × S_n` over the list of small simple groups
    SimpleSq,
    /// `S_n × S_{n+1}` over the same list
    SimpleAdj,
}

/// An indexed sequence of groups. Indices start at 1; `p_n` is the `n`-th
/// odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupFamily {
    pub kind: FamilyKind,
    /// Only used by the wreath families.
    pub q: u64,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.kind {
            FamilyKind::Cyc2 => "cyc2",
            FamilyKind::Cyc2p => "cyc2p",
            FamilyKind::Dih2 => "dih2",
            FamilyKind::Dih2p => "dih2p",
            FamilyKind::WrQ => "wr_q",
            FamilyKind::WrPq => "wr_pq",
            FamilyKind::ThmD => "thmD",
            FamilyKind::SimpleSq => "simple_sq",
            FamilyKind::SimpleAdj => "simple_adj",
        };
        match self.kind {
            FamilyKind::WrQ | FamilyKind::WrPq => write!(f, "{base}@{}", self.q),
            _ => f.write_str(base),
        }
    }
}

/// Looks up a builtin family. The wreath families take the prime `q` as
/// `wr_q@3`; it defaults to 2.
pub fn family(name: &str) -> Result<GroupFamily> {
    let (base, q) = match name.trim().split_once('@') {
        Some((b, q)) => (
            b,
            q.parse::<u64>()
                .map_err(|_| Error::Invalid(format!("bad family parameter in `{name}`")))?,
        ),
        None => (name.trim(), 2),
    };
    let kind = match base {
        "cyc2" => FamilyKind::Cyc2,
        "cyc2p" => FamilyKind::Cyc2p,
        "dih2" => FamilyKind::Dih2,
        "dih2p" => FamilyKind::Dih2p,
        "wr_q" => FamilyKind::WrQ,
        "wr_pq" => FamilyKind::WrPq,
        "thmD" => FamilyKind::ThmD,
        "simple_sq" => FamilyKind::SimpleSq,
        "simple_adj" => FamilyKind::SimpleAdj,
        _ => return Err(Error::Invalid(format!("unknown family `{name}`"))),
    };
    if matches!(kind, FamilyKind::WrQ | FamilyKind::WrPq) && !crate::arith::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok(GroupFamily { kind, q })
}

pub const SIMPLE_LIST_LEN: usize = 5;

/// The `i`-th (1-based) of `A5, PSL(2,7), A6, PSL(2,8), A7`.
pub fn small_simple_group(i: usize, limits: &Limits) -> Result<FiniteGroup> {
    match i {
        1 => alternating(5, limits),
        2 => psl2(&gf(7, 1)?, limits),
        3 => alternating(6, limits),
        4 => psl2(&gf(2, 3)?, limits),
        5 => alternating(7, limits),
        _ => Err(Error::Invalid(format!(
            "simple group index {i} outside 1..={SIMPLE_LIST_LEN}"
        ))),
    }
}

const SIMPLE_ORDERS: [u128; SIMPLE_LIST_LEN] = [60, 168, 360, 504, 2520];

fn pow2(n: usize) -> Result<u128> {
    1u128
        .checked_shl(n as u32)
        .filter(|_| n < 100)
        .ok_or_else(|| Error::Invalid(format!("index {n} too large")))
}

impl GroupFamily {
    fn p(&self, n: usize) -> u64 {
        match self.kind {
            FamilyKind::WrPq => nth_odd_prime_except(n, self.q),
            _ => nth_odd_prime_except(n, 0),
        }
    }

    /// Order of the `n`-th member, without building it.
    pub fn order(&self, n: usize) -> Result<u128> {
        if n == 0 {
            return Err(Error::Invalid("family indices start at 1".into()));
        }
        let t = pow2(n)?;
        let p = self.p(n) as u128;
        let q = self.q as u128;
        let big = |e: u32| {
            q.checked_pow(e)
                .ok_or_else(|| Error::Invalid("index too large".into()))
        };
        Ok(match self.kind {
            FamilyKind::Cyc2 => t,
            FamilyKind::Cyc2p => t * p,
            FamilyKind::Dih2 => 2 * t,
            FamilyKind::Dih2p => 2 * t * p,
            FamilyKind::WrQ => big(n as u32 * self.q as u32)? * q,
            FamilyKind::WrPq => {
                p.checked_pow(self.q as u32)
                    .unwrap_or(u128::MAX)
                    .saturating_mul(big(n as u32 * self.q as u32)?)
                    * q
            }
            FamilyKind::ThmD => 4 * t * p,
            FamilyKind::SimpleSq => SIMPLE_ORDERS
                .get(n - 1)
                .map(|o| o * o)
                .ok_or_else(|| self.range_error(n))?,
            FamilyKind::SimpleAdj => match (SIMPLE_ORDERS.get(n - 1), SIMPLE_ORDERS.get(n)) {
                (Some(a), Some(b)) => a * b,
                _ => return Err(self.range_error(n)),
            },
        })
    }

    fn range_error(&self, n: usize) -> Error {
        Error::Invalid(format!("index {n} is outside the range of family {self}"))
    }

    pub fn instance(&self, n: usize, limits: &Limits) -> Result<FiniteGroup> {
        let order = self.order(n)?;
        if order > limits.element_cap as u128 {
            return Err(Error::too_large(
                format!("{self}[{n}]"),
                order,
                limits.element_cap,
            ));
        }
        let t = 1usize << n;
        let p = self.p(n) as usize;
        let q = self.q as usize;
        let g = match self.kind {
            FamilyKind::Cyc2 => cyclic(t, limits)?,
            FamilyKind::Cyc2p => cyclic(t * p, limits)?,
            FamilyKind::Dih2 => dihedral_of_cyclic(&cyclic(t, limits)?, limits)?,
            FamilyKind::Dih2p => dihedral_of_cyclic(&cyclic(t * p, limits)?, limits)?,
            FamilyKind::WrQ => wreath_cyclic(&cyclic(q.pow(n as u32), limits)?, q, limits)?,
            FamilyKind::WrPq => wreath_cyclic(&cyclic(p * q.pow(n as u32), limits)?, q, limits)?,
            FamilyKind::ThmD => thm_d_group(
                n as u32,
                p as u64,
                &Limits {
                    table_cap: limits.element_cap,
                    ..limits.clone()
                },
            )?,
            FamilyKind::SimpleSq => {
                let s = small_simple_group(n, limits)?;
                direct_product(&s, &s, limits)?
            }
            FamilyKind::SimpleAdj => direct_product(
                &small_simple_group(n, limits)?,
                &small_simple_group(n + 1, limits)?,
                limits,
            )?,
        };
        Ok(g.relabel(format!("{self}[{n}]")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_nilpotent;

    #[test]
    fn examples() {
        let l = Limits::default();
        let c = family("cyc2").unwrap().instance(4, &l).unwrap();
        assert_eq!(c.order(), 16);
        assert!(c.is_abelian());
        let w = family("wr_q").unwrap().instance(2, &l).unwrap();
        assert_eq!(w.order(), 32);
        assert!(is_nilpotent(&w));
        assert_eq!(family("simple_adj").unwrap().order(1).unwrap(), 60 * 168);
    }

    #[test]
    fn orders_match_instances() {
        let l = Limits::default();
        for name in [
            "cyc2", "cyc2p", "dih2", "dih2p", "wr_q", "wr_pq", "thmD", "wr_q@3",
        ] {
            let fam = family(name).unwrap();
            for n in 1..=2 {
                assert_eq!(
                    fam.instance(n, &l).unwrap().order() as u128,
                    fam.order(n).unwrap(),
                    "{name}[{n}]"
                );
            }
        }
    }

    #[test]
    fn bad_names() {
        assert!(family("nope").is_err());
        assert!(family("wr_q@4").is_err());
        assert!(family("simple_sq").unwrap().order(6).is_err());
    }
}
