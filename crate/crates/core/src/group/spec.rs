//! Line-oriented text format for describing groups.
//!
//! ```text
//! c = cyclic 12
//! s = perm 5: (1 2 3 4 5), (1 2)
//! d = dih c
//! p = product s (cyclic 2)
//! w = wreath (alt 5) by 2
//! quotient (sym 4) by (1 2)(3 4), (1 3)(2 4)
//! ```
//!
//! Each line is `name = expr` or a bare `expr`; `;` also separates lines
//! and `#` starts a comment. The value of a spec is its last line. Operands
//! are defined names, parenthesized expressions or construction tokens
//! such as `sl2:5` or `family:dih2:3`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::perm::from_cycles;
use super::products::{
    alternating, cyclic, dihedral_of_cyclic, direct_product, elementary_abelian, quotient,
    symmetric, wreath_cyclic,
};
use super::FiniteGroup;
use crate::constructions::{named_group, PerfectOptions};
use crate::error::{Error, Result};
use crate::limits::Limits;

fn spec_err(msg: impl Into<String>) -> Error {
    Error::Spec(msg.into())
}

/// Splits on `sep` outside parentheses and brackets.
fn split_top(s: &str, sep: impl Fn(char) -> bool) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && sep(ch) {
            if !cur.trim().is_empty() {
                out.push(cur.trim().to_string());
            }
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Strips one pair of parentheses enclosing the whole of `s`.
fn strip_outer_parens(s: &str) -> Option<&str> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    (depth == 0).then_some(inner)
}

fn parse_num(tok: &str, what: &str) -> Result<usize> {
    tok.trim()
        .parse::<usize>()
        .map_err(|_| spec_err(format!("expected {what}, found `{tok}`")))
}

/// Reads a whitespace-separated Cayley table.
pub fn read_table(path: &Path) -> Result<FiniteGroup> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let rows: Vec<Vec<u32>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| spec_err(format!("bad table entry `{t}`")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(FiniteGroup::from_table(&rows)?.relabel(path.display().to_string()))
}

/// Evaluates group specs, remembering named results.
#[derive(Clone, Debug)]
pub struct SpecEnv {
    limits: Limits,
    options: PerfectOptions,
    base_dir: Option<PathBuf>,
    names: BTreeMap<String, FiniteGroup>,
}

impl SpecEnv {
    pub fn new(limits: &Limits) -> Self {
        SpecEnv {
            limits: limits.clone(),
            options: PerfectOptions::default(),
            base_dir: None,
            names: BTreeMap::new(),
        }
    }

    pub fn with_options(mut self, options: PerfectOptions) -> Self {
        self.options = options;
        self
    }

    /// Directory against which relative `table` paths are resolved.
    pub fn with_base_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.base_dir = Some(dir.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&FiniteGroup> {
        self.names.get(name)
    }

    pub fn define(&mut self, name: &str, g: FiniteGroup) {
        self.names.insert(name.to_string(), g);
    }

    /// Runs every line of `text` and returns the value of the last one.
    pub fn run(&mut self, text: &str) -> Result<FiniteGroup> {
        let mut last = None;
        for raw in text.split(['\n', ';']) {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            last = Some(self.line(line)?);
        }
        last.ok_or_else(|| spec_err("empty group spec"))
    }

    /// Runs one line; `name = expr` also binds `name`, and relabels the
    /// group with it.
    pub fn line(&mut self, line: &str) -> Result<FiniteGroup> {
        if let Some((lhs, rhs)) = line.split_once('=') {
            let name = lhs.trim();
            if !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                let g = self.expr(rhs)?.relabel(name);
                self.define(name, g.clone());
                return Ok(g);
            }
        }
        self.expr(line)
    }

    pub fn expr(&self, text: &str) -> Result<FiniteGroup> {
        let text = text.trim();
        if let Some(inner) = strip_outer_parens(text) {
            return self.expr(inner);
        }
        let (head, rest) = match text.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (text, ""),
        };
        let l = &self.limits;
        match head {
            "cyclic" => cyclic(parse_num(rest, "an order")?, l),
            "sym" => symmetric(parse_num(rest, "a degree")?, l),
            "alt" => alternating(parse_num(rest, "a degree")?, l),
            "elab" => match rest.split_whitespace().collect::<Vec<_>>()[..] {
                [p, k] => elementary_abelian(parse_num(p, "a prime")?, parse_num(k, "a rank")?, l),
                _ => Err(spec_err("usage: elab <p> <k>")),
            },
            "perm" => {
                let (deg, gens) = rest
                    .split_once(':')
                    .ok_or_else(|| spec_err("usage: perm <degree>: <cycles>, <cycles>, ..."))?;
                let gens = split_top(gens, |c| c == ',');
                let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
                from_cycles(parse_num(deg, "a degree")?, &refs, l)
            }
            "dih" => dihedral_of_cyclic(&self.operand(rest)?, l),
            "product" => match &split_top(rest, char::is_whitespace)[..] {
                [a, b] => direct_product(&self.operand(a)?, &self.operand(b)?, l),
                _ => Err(spec_err("usage: product <group> <group>")),
            },
            "wreath" => {
                let parts = split_top(rest, char::is_whitespace);
                match &parts[..] {
                    [a, by, q] if by == "by" => {
                        wreath_cyclic(&self.operand(a)?, parse_num(q, "a cycle length")?, l)
                    }
                    _ => Err(spec_err("usage: wreath <group> by <q>")),
                }
            }
            "quotient" => {
                let (a, elems) = split_by_keyword(rest).ok_or_else(|| {
                    spec_err("usage: quotient <group> by <element>, <element>, ...")
                })?;
                let g = self.operand(a)?;
                let gens = split_top(elems, |c| c == ',')
                    .iter()
                    .map(|t| {
                        g.parse_element(t).ok_or_else(|| {
                            spec_err(format!("`{t}` is not an element of {}", g.label()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let n = g.closure(gens);
                Ok(quotient(&g, &n, l)?.0)
            }
            "table" => {
                if rest.is_empty() {
                    return Err(spec_err("usage: table <file>"));
                }
                let path = match &self.base_dir {
                    Some(dir) if Path::new(rest).is_relative() => dir.join(rest),
                    _ => PathBuf::from(rest),
                };
                read_table(&path)
            }
            _ if rest.is_empty() => self.operand(head),
            _ => Err(spec_err(format!("unknown group expression `{text}`"))),
        }
    }

    fn operand(&self, tok: &str) -> Result<FiniteGroup> {
        let tok = tok.trim();
        if let Some(inner) = strip_outer_parens(tok) {
            return self.expr(inner);
        }
        if let Some(g) = self.names.get(tok) {
            return Ok(g.clone());
        }
        if tok.contains(':') {
            return named_group(tok, self.options, &self.limits);
        }
        Err(spec_err(format!("unknown group `{tok}`")))
    }
}

/// `<operand> by <rest>` with `by` outside parentheses.
fn split_by_keyword(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let bytes = s.as_bytes();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0
            && s[i..].starts_with(" by ")
            && (i == 0 || !bytes[i - 1].is_ascii_alphanumeric())
        {
            return Some((&s[..i], &s[i + 4..]));
        }
    }
    None
}

/// Parses a spec with a fresh environment.
pub fn parse_group_spec(text: &str, limits: &Limits) -> Result<FiniteGroup> {
    SpecEnv::new(limits).run(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn basic_expressions() {
        assert_eq!(parse_group_spec("cyclic 12", &l()).unwrap().order(), 12);
        assert_eq!(
            parse_group_spec("perm 5: (1 2 3 4 5), (1 2)", &l())
                .unwrap()
                .order(),
            120
        );
        assert_eq!(
            parse_group_spec("c = cyclic 4; dih c", &l())
                .unwrap()
                .order(),
            8
        );
        assert_eq!(
            parse_group_spec("product (cyclic 2) (sym 3)", &l())
                .unwrap()
                .order(),
            12
        );
        assert_eq!(
            parse_group_spec("wreath (cyclic 4) by 2", &l())
                .unwrap()
                .order(),
            32
        );
        assert_eq!(parse_group_spec("elab 2 3", &l()).unwrap().order(), 8);
        assert_eq!(
            parse_group_spec("product sl2:3 (cyclic 1)", &l())
                .unwrap()
                .order(),
            24
        );
    }

    #[test]
    fn quotient_by_klein() {
        let q = parse_group_spec("quotient (sym 4) by (1 2)(3 4), (1 3)(2 4)", &l()).unwrap();
        assert_eq!(q.order(), 6);
        assert!(matches!(
            parse_group_spec("quotient (sym 3) by (1 2)", &l()),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn names_label_groups() {
        let mut env = SpecEnv::new(&l());
        let g = env.run("# comment\nk = cyclic 3\nk").unwrap();
        assert_eq!(g.label(), "k");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_group_spec("", &l()), Err(Error::Spec(_))));
        assert!(matches!(
            parse_group_spec("cyclic x", &l()),
            Err(Error::Spec(_))
        ));
        assert!(matches!(
            parse_group_spec("dih nothing", &l()),
            Err(Error::Spec(_))
        ));
        assert!(matches!(
            parse_group_spec("dih (sym 3)", &l()),
            Err(Error::NotAbelian(_))
        ));
    }
}
