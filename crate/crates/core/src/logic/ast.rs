use std::collections::BTreeSet;
use std::fmt;

/// Terms of the language of groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    One,
    Var(String),
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
    /// Integer power; an exponent of -1 is always represented as [`Term::Inv`].
    Pow(Box<Term>, i64),
    /// `[t, u] = t^-1 u^-1 t u`.
    Comm(Box<Term>, Box<Term>),
    /// `t^u = u^-1 t u`.
    Conj(Box<Term>, Box<Term>),
}

/// First-order formulas over groups with unary oracle atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Oracle(String, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(other))
    }

    pub fn inv(self) -> Term {
        Term::Inv(Box::new(self))
    }

    pub fn pow(self, k: i64) -> Term {
        if k == -1 {
            self.inv()
        } else {
            Term::Pow(Box::new(self), k)
        }
    }

    pub fn comm(self, other: Term) -> Term {
        Term::Comm(Box::new(self), Box::new(other))
    }

    pub fn conj(self, by: Term) -> Term {
        Term::Conj(Box::new(self), Box::new(by))
    }

    pub fn eq(self, other: Term) -> Formula {
        Formula::Eq(self, other)
    }

    pub fn ne(self, other: Term) -> Formula {
        Formula::Eq(self, other).not()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::One => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Inv(a) | Term::Pow(a, _) => a.collect_vars(out),
            Term::Mul(a, b) | Term::Comm(a, b) | Term::Conj(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut s = BTreeSet::new();
        self.collect_vars(&mut s);
        s
    }
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    /// Conjunction; a single item is returned as is and the empty
    /// conjunction is `1 = 1`.
    pub fn and(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut v: Vec<Formula> = items.into_iter().collect();
        match v.len() {
            0 => Formula::truth(),
            1 => v.pop().unwrap(),
            _ => Formula::And(v),
        }
    }

    /// Disjunction; a single item is returned as is and the empty
    /// disjunction is `1 != 1`.
    pub fn or(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut v: Vec<Formula> = items.into_iter().collect();
        match v.len() {
            0 => Formula::truth().not(),
            1 => v.pop().unwrap(),
            _ => Formula::Or(v),
        }
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Nested universal quantifiers, outermost first.
    pub fn forall_all(vars: &[&str], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |f, v| Formula::forall(*v, f))
    }

    pub fn exists_all(vars: &[&str], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |f, v| Formula::exists(*v, f))
    }

    pub fn oracle(name: impl Into<String>, t: Term) -> Formula {
        Formula::Oracle(name.into(), t)
    }

    /// The always-true formula `1 = 1`.
    pub fn truth() -> Formula {
        Formula::Eq(Term::One, Term::One)
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            Formula::Oracle(_, t) => term(t, bound, out),
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(v) | Formula::Or(v) => {
                for f in v {
                    f.collect_free(bound, out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn oracle_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Oracle(n, _) = f {
                out.insert(n.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Eq(..) | Formula::Oracle(..) => {}
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit(f),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|x| x.visit(f)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Maximum nesting of quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Oracle(..) => 0,
            Formula::Not(a) => a.quantifier_depth(),
            Formula::And(v) | Formula::Or(v) => {
                v.iter().map(Formula::quantifier_depth).max().unwrap_or(0)
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.quantifier_depth(),
        }
    }

    /// Replaces every free occurrence of `var` by `t`. Bound variables of
    /// `self` must not clash with variables of `t`.
    pub fn substitute(&self, var: &str, t: &Term) -> Formula {
        fn term(x: &Term, var: &str, t: &Term) -> Term {
            match x {
                Term::One => Term::One,
                Term::Var(v) if v == var => t.clone(),
                Term::Var(v) => Term::Var(v.clone()),
                Term::Mul(a, b) => term(a, var, t).mul(term(b, var, t)),
                Term::Inv(a) => term(a, var, t).inv(),
                Term::Pow(a, k) => Term::Pow(Box::new(term(a, var, t)), *k),
                Term::Comm(a, b) => term(a, var, t).comm(term(b, var, t)),
                Term::Conj(a, b) => term(a, var, t).conj(term(b, var, t)),
            }
        }
        match self {
            Formula::Eq(a, b) => Formula::Eq(term(a, var, t), term(b, var, t)),
            Formula::Oracle(n, a) => Formula::Oracle(n.clone(), term(a, var, t)),
            Formula::Not(a) => a.substitute(var, t).not(),
            Formula::And(v) => Formula::And(v.iter().map(|f| f.substitute(var, t)).collect()),
            Formula::Or(v) => Formula::Or(v.iter().map(|f| f.substitute(var, t)).collect()),
            Formula::Implies(a, b) => a.substitute(var, t).implies(b.substitute(var, t)),
            Formula::Iff(a, b) => a.substitute(var, t).iff(b.substitute(var, t)),
            Formula::Forall(x, _) | Formula::Exists(x, _) if x == var => self.clone(),
            Formula::Forall(x, a) => Formula::forall(x.clone(), a.substitute(var, t)),
            Formula::Exists(x, a) => Formula::exists(x.clone(), a.substitute(var, t)),
        }
    }
}

// Printing. The output is accepted by the parser and parses back to the
// same tree.

fn write_primary(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Var(v) => write!(f, "{v}"),
        Term::Comm(..) => write_term(t, f),
        _ => {
            write!(f, "(")?;
            write_term(t, f)?;
            write!(f, ")")
        }
    }
}

fn write_postfix(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::One => write!(f, "1"),
        Term::Var(_) | Term::Comm(..) => write_primary(t, f),
        Term::Inv(a) => {
            write_postfix(a, f)?;
            write!(f, "^-1")
        }
        Term::Pow(a, k) => {
            write_postfix(a, f)?;
            write!(f, "^{k}")
        }
        Term::Conj(a, b) => {
            write_postfix(a, f)?;
            write!(f, "^")?;
            write_primary(b, f)
        }
        Term::Mul(..) => {
            write!(f, "(")?;
            write_term(t, f)?;
            write!(f, ")")
        }
    }
}

fn write_term(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Mul(a, b) => {
            write_term(a, f)?;
            write!(f, "*")?;
            match **b {
                Term::Mul(..) => {
                    write!(f, "(")?;
                    write_term(b, f)?;
                    write!(f, ")")
                }
                _ => write_postfix(b, f),
            }
        }
        Term::Comm(a, b) => {
            write!(f, "[")?;
            write_term(a, f)?;
            write!(f, ", ")?;
            write_term(b, f)?;
            write!(f, "]")
        }
        _ => write_postfix(t, f),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f)
    }
}

fn write_formula(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match x {
        Formula::Forall(v, body) => {
            write!(f, "A {v}. ")?;
            write_formula(body, f)
        }
        Formula::Exists(v, body) => {
            write!(f, "E {v}. ")?;
            write_formula(body, f)
        }
        Formula::Or(items) if !items.is_empty() => {
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, " | ")?;
                }
                match it {
                    Formula::Or(_) | Formula::Forall(..) | Formula::Exists(..) => {
                        write_paren(it, f)?
                    }
                    Formula::And(v) if !v.is_empty() => write_conj(it, f)?,
                    _ => write_lit(it, f)?,
                }
            }
            Ok(())
        }
        Formula::And(items) if !items.is_empty() => write_conj(x, f),
        _ => write_lit(x, f),
    }
}

fn write_conj(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let Formula::And(items) = x else {
        unreachable!()
    };
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            write!(f, " & ")?;
        }
        write_lit(it, f)?;
    }
    Ok(())
}

fn write_paren(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    write_formula(x, f)?;
    write!(f, ")")
}

fn write_lit(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match x {
        Formula::Eq(a, b) => write!(f, "{a} = {b}"),
        Formula::Oracle(n, t) => write!(f, "{n}({t})"),
        Formula::Not(inner) => match &**inner {
            Formula::Eq(a, b) => write!(f, "{a} != {b}"),
            other => {
                write!(f, "!")?;
                write_lit(other, f)
            }
        },
        Formula::Implies(a, b) => {
            write_paren(a, f)?;
            write!(f, " -> ")?;
            write_paren(b, f)
        }
        Formula::Iff(a, b) => {
            write_paren(a, f)?;
            write!(f, " <-> ")?;
            write_paren(b, f)
        }
        // Empty conjunction/disjunction have no concrete syntax of their own.
        Formula::And(v) if v.is_empty() => write!(f, "1 = 1"),
        Formula::Or(v) if v.is_empty() => write!(f, "1 != 1"),
        _ => write_paren(x, f),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}
