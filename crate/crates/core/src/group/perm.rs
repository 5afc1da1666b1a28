//! Permutations on `{1..degree}`, composed left to right: `i^(xy) = (i^x)^y`.

use super::{enumerate, FiniteGroup, GroupOps};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Image list, 0-based internally.
pub type Perm = Vec<u16>;

#[derive(Clone, Debug)]
pub struct PermOps {
    degree: usize,
}

impl PermOps {
    pub fn new(degree: usize) -> Self {
        PermOps { degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl GroupOps for PermOps {
    type Item = Perm;

    fn identity(&self) -> Perm {
        (0..self.degree as u16).collect()
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.iter().map(|&i| b[i as usize]).collect()
    }

    fn inv(&self, a: &Perm) -> Perm {
        let mut r = vec![0u16; a.len()];
        for (i, &j) in a.iter().enumerate() {
            r[j as usize] = i as u16;
        }
        r
    }

    fn describe(&self, a: &Perm) -> Option<String> {
        Some(format_cycles(a))
    }

    fn parse_item(&self, text: &str) -> Option<Perm> {
        parse_cycles(self.degree, text).ok()
    }
}

/// Cycle notation, 1-based; the identity is `()`.
pub fn format_cycles(p: &[u16]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&(i + 1).to_string());
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses a product of cycles such as `(1 2 3)(4 5)`; commas inside a
/// cycle are accepted as separators. Cycles are multiplied left to right.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
    let ops = PermOps::new(degree);
    let mut acc = ops.identity();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::Spec("empty permutation".into()));
    }
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Spec(format!("expected '(' in permutation {text:?}")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| Error::Spec(format!("unclosed cycle in {text:?}")))?;
        let body = &body_start[..close];
        let mut pts = Vec::new();
        for tok in body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Spec(format!("bad point {tok:?} in {text:?}")))?;
            if v == 0 || v > degree {
                return Err(Error::Spec(format!("point {v} outside 1..{degree}")));
            }
            if pts.contains(&(v - 1)) {
                return Err(Error::Spec(format!("point {v} repeated in a cycle")));
            }
            pts.push(v - 1);
        }
        let mut cyc = ops.identity();
        for w in 0..pts.len() {
            cyc[pts[w]] = pts[(w + 1) % pts.len()] as u16;
        }
        acc = ops.mul(&acc, &cyc);
        rest = body_start[close + 1..].trim_start();
    }
    Ok(acc)
}

/// The permutation group of the given degree generated by `gens`.
pub fn from_permutations(degree: usize, gens: &[Perm], limits: &Limits) -> Result<FiniteGroup> {
    for g in gens {
        let mut seen = vec![false; degree];
        if g.len() != degree
            || g.iter()
                .any(|&i| (i as usize) >= degree || std::mem::replace(&mut seen[i as usize], true))
        {
            return Err(Error::Spec(format!(
                "not a permutation of degree {degree}: {g:?}"
            )));
        }
    }
    let label = if gens.is_empty() {
        format!("perm {degree}: ()")
    } else {
        format!(
            "perm {degree}: {}",
            gens.iter()
                .map(|g| format_cycles(g))
                .collect::<Vec<_>>()
                .join(", ")
        )
    };
    let (g, _) = enumerate(PermOps::new(degree), gens, label, limits)?;
    Ok(g)
}

/// Convenience wrapper: generators in cycle notation.
pub fn from_cycles(degree: usize, gens: &[&str], limits: &Limits) -> Result<FiniteGroup> {
    let perms = gens
        .iter()
        .map(|s| parse_cycles(degree, s))
        .collect::<Result<Vec<_>>>()?;
    from_permutations(degree, &perms, limits)
}
