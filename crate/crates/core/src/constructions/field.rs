use std::fmt;
use std::sync::Arc;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest field order kept with full addition and multiplication tables.
pub const FIELD_CAP: u64 = 1024;

/// A field element: the integer whose base-`p` digits are its polynomial
/// coefficients, constant term least significant.
pub type Fe = u32;

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

/// The field with `p^e` elements, `F_p[x]` modulo a fixed monic irreducible.
#[derive(Clone)]
pub struct Fq(Arc<Tables>);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` (coefficients low first).
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let t = &mut a[shift + i];
                *t = (*t + p - (lead * c) % p) % p;
            }
        }
    }
    a
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut div = digits(low, p, d as u32);
            div.push(1);
            if poly_rem(m.to_vec(), &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The field of order `p^e`. The modulus is the first monic irreducible
/// of degree `e` when the non-leading coefficients, read as base-`p` digits
/// with the constant term least significant, are counted upward from zero.
pub fn gf(p: u64, e: u32) -> Result<Fq> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::Invalid("field degree must be at least 1".into()));
    }
    let q = (p as u128).pow(e);
    if q > FIELD_CAP as u128 {
        return Err(Error::too_large(
            format!("GF({p}^{e})"),
            q,
            FIELD_CAP as usize,
        ));
    }
    let (p, q) = (p as u32, q as u32);
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        (0..q)
            .map(|low| {
                let mut m = digits(low, p, e);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .ok_or_else(|| Error::NotFound(format!("irreducible of degree {e} over F_{p}")))?
    };
    let n = q as usize;
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for a in 0..q {
        let da = digits(a, p, e);
        for b in 0..q {
            let db = digits(b, p, e);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = undigits(&s, p);
            let mut prod = vec![0u32; 2 * e as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(prod, &modulus, p);
            r.resize(e as usize, 0);
            mul[(a * q + b) as usize] = undigits(&r, p);
        }
    }
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap())
        .collect();
    let mut inv = vec![0; n];
    for a in 1..q {
        inv[a as usize] = (1..q)
            .find(|&b| mul[(a * q + b) as usize] == 1)
            .ok_or_else(|| Error::NotAGroup(format!("GF({q}) element {a} has no inverse")))?;
    }
    Ok(Fq(Arc::new(Tables {
        p,
        e,
        q,
        modulus,
        add,
        mul,
        neg,
        inv,
    })))
}

impl Fq {
    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    /// Coefficients of the modulus, constant term first, leading 1 last.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.0.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.0.add[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.0.mul[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.0.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    /// The residue of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> Fe {
        k.rem_euclid(self.0.p as i64) as Fe
    }

    /// The class of `x`; a basis of the field over the prime field is
    /// `1, x, ..., x^(e-1)`.
    pub fn generator(&self) -> Fe {
        if self.0.e == 1 {
            1
        } else {
            self.0.p
        }
    }

    /// `1, x, ..., x^(e-1)`.
    pub fn prime_field_basis(&self) -> Vec<Fe> {
        (0..self.0.e).map(|i| self.0.p.pow(i)).collect()
    }

    pub fn describe(&self, a: Fe) -> String {
        if self.0.e == 1 {
            return a.to_string();
        }
        let d = digits(a, self.0.p, self.0.e);
        let terms: Vec<String> = d
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = gf(11, 1).unwrap();
        assert_eq!(f.order(), 11);
        assert_eq!(f.mul(3, 4), 1);
        assert_eq!(f.inv(3), Some(4));
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.from_int(-1), 10);
    }

    #[test]
    fn gf9_uses_x2_plus_1() {
        let f = gf(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let x = f.generator();
        assert_eq!(f.mul(x, x), f.from_int(-1));
    }

    #[test]
    fn not_prime() {
        assert_eq!(gf(4, 1).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn field_axioms_small() {
        for (p, e) in [(2, 3), (3, 2), (5, 2), (7, 1)] {
            let f = gf(p, e).unwrap();
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }
}
