//! Recursive-descent parser for the formula language.
//!
//! ```text
//! formula := 'A' var '.' formula | 'E' var '.' formula | disj
//! disj    := conj ('|' conj)*
//! conj    := lit ('&' lit)*
//! lit     := '!' lit | '(' formula ')' [('->' | '<->') '(' formula ')'] | atom
//! atom    := term '=' term | term '!=' term | oracle '(' term ')'
//! term    := postfix ('*' postfix)*
//! postfix := primary ('^' ('-'? int | primary))*
//! primary := '1' | var | '[' term ',' term ']' | '(' term ')'
//! ```

use super::ast::{Formula, Term};
use crate::error::{Error, Result};

/// Oracle names accepted by [`parse`].
pub const DEFAULT_ORACLES: &[&str] = &["rad", "fit", "inK"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    End,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
}

const SYMBOLS: &[&str] = &[
    "<->", "->", "!=", ".", "|", "&", "!", "(", ")", "[", "]", ",", "=", "*", "^", "-",
];

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn lex(text: &str) -> Result<Lexed> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((Tok::Ident(text[start..i].to_string()), start));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i].parse::<i64>().map_err(|_| {
                let (line, column) = position(text, start);
                Error::Syntax {
                    line,
                    column,
                    message: "integer out of range".into(),
                }
            })?;
            toks.push((Tok::Int(v), start));
            continue;
        }
        for s in SYMBOLS {
            if text[i..].starts_with(s) {
                toks.push((Tok::Sym(s), i));
                i += s.len();
                continue 'outer;
            }
        }
        let (line, column) = position(text, i);
        let ch = text[i..].chars().next().unwrap();
        return Err(Error::Syntax {
            line,
            column,
            message: format!("unexpected character {ch:?}"),
        });
    }
    toks.push((Tok::End, text.len()));
    Ok(Lexed { toks })
}

/// A failure with the token index where it happened, so that the deepest
/// alternative can be reported after backtracking.
struct Fail {
    at: usize,
    err: Error,
    fatal: bool,
}

type P<T> = std::result::Result<T, Fail>;

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    oracles: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn fail<T>(&self, message: impl Into<String>) -> P<T> {
        let (line, column) = position(self.text, self.toks[self.pos].1);
        Err(Fail {
            at: self.pos,
            err: Error::Syntax {
                line,
                column,
                message: message.into(),
            },
            fatal: false,
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, s: &str) -> P<()> {
        if self.is_sym(s) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn is_quantifier(&self) -> bool {
        matches!(self.peek(), Tok::Ident(q) if q == "A" || q == "E")
            && matches!(self.peek_at(1), Tok::Ident(_))
            && matches!(self.peek_at(2), Tok::Sym("."))
    }

    fn formula(&mut self) -> P<Formula> {
        if self.is_quantifier() {
            let Tok::Ident(q) = self.peek().clone() else {
                unreachable!()
            };
            self.pos += 1;
            let var = self.var_name()?;
            self.expect(".")?;
            let body = self.formula()?;
            return Ok(if q == "A" {
                Formula::forall(var, body)
            } else {
                Formula::exists(var, body)
            });
        }
        self.disj()
    }

    fn var_name(&mut self) -> P<String> {
        match self.peek().clone() {
            Tok::Ident(v) if v != "A" && v != "E" => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail(format!("expected a variable, found {}", self.describe())),
        }
    }

    fn disj(&mut self) -> P<Formula> {
        let mut items = vec![self.conj()?];
        while self.is_sym("|") {
            self.pos += 1;
            items.push(self.conj()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::Or(items)
        })
    }

    fn conj(&mut self) -> P<Formula> {
        let mut items = vec![self.lit()?];
        while self.is_sym("&") {
            self.pos += 1;
            items.push(self.lit()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::And(items)
        })
    }

    fn paren_formula(&mut self) -> P<Formula> {
        self.expect("(")?;
        let f = self.formula()?;
        self.expect(")")?;
        Ok(f)
    }

    fn lit(&mut self) -> P<Formula> {
        if self.is_sym("!") {
            self.pos += 1;
            return Ok(self.lit()?.not());
        }
        if self.is_quantifier() {
            return self.fail("a quantified formula must be parenthesized here");
        }
        if self.is_sym("(") {
            let save = self.pos;
            let as_atom = self.atom();
            let atom_fail = match as_atom {
                Ok(f) => return self.after_atom(f),
                Err(e) if e.fatal => return Err(e),
                Err(e) => e,
            };
            self.pos = save;
            let left = match self.paren_formula() {
                Ok(f) => f,
                Err(e) if e.fatal => return Err(e),
                Err(e) => return Err(if e.at >= atom_fail.at { e } else { atom_fail }),
            };
            for (sym, iff) in [("->", false), ("<->", true)] {
                if self.is_sym(sym) {
                    self.pos += 1;
                    if !self.is_sym("(") {
                        return self.fail(format!(
                            "the right operand of `{sym}` must be parenthesized"
                        ));
                    }
                    let right = self.paren_formula()?;
                    return Ok(if iff {
                        left.iff(right)
                    } else {
                        left.implies(right)
                    });
                }
            }
            return Ok(left);
        }
        let f = self.atom()?;
        self.after_atom(f)
    }

    fn after_atom(&self, f: Formula) -> P<Formula> {
        if self.is_sym("->") || self.is_sym("<->") {
            return self.fail("the operands of an arrow must be parenthesized");
        }
        Ok(f)
    }

    fn atom(&mut self) -> P<Formula> {
        if let (Tok::Ident(name), Tok::Sym("(")) = (self.peek().clone(), self.peek_at(1).clone()) {
            if !self.oracles.contains(&name.as_str()) {
                return Err(Fail {
                    at: self.pos,
                    err: Error::UnknownOracle(name),
                    fatal: true,
                });
            }
            self.pos += 2;
            let t = self.term()?;
            self.expect(")")?;
            return Ok(Formula::oracle(name, t));
        }
        let a = self.term()?;
        if self.is_sym("=") {
            self.pos += 1;
            let b = self.term()?;
            Ok(a.eq(b))
        } else if self.is_sym("!=") {
            self.pos += 1;
            let b = self.term()?;
            Ok(a.ne(b))
        } else {
            self.fail(format!("expected `=` or `!=`, found {}", self.describe()))
        }
    }

    fn term(&mut self) -> P<Term> {
        let mut t = self.postfix()?;
        while self.is_sym("*") {
            self.pos += 1;
            t = t.mul(self.postfix()?);
        }
        Ok(t)
    }

    fn postfix(&mut self) -> P<Term> {
        let mut t = self.primary()?;
        while self.is_sym("^") {
            self.pos += 1;
            match self.peek().clone() {
                Tok::Int(k) => {
                    self.pos += 1;
                    t = Term::Pow(Box::new(t), k);
                }
                Tok::Sym("-") => {
                    self.pos += 1;
                    let Tok::Int(k) = self.peek().clone() else {
                        return self.fail(format!(
                            "expected an integer after `^-`, found {}",
                            self.describe()
                        ));
                    };
                    self.pos += 1;
                    t = t.pow(-k);
                }
                _ => {
                    let by = self.primary()?;
                    t = t.conj(by);
                }
            }
        }
        Ok(t)
    }

    fn primary(&mut self) -> P<Term> {
        match self.peek().clone() {
            Tok::Int(1) => {
                self.pos += 1;
                Ok(Term::One)
            }
            Tok::Ident(v) if v != "A" && v != "E" => {
                if matches!(self.peek_at(1), Tok::Sym("(")) {
                    return self.fail(format!("oracle `{v}` cannot be used as a term"));
                }
                self.pos += 1;
                Ok(Term::Var(v))
            }
            Tok::Sym("[") => {
                self.pos += 1;
                let a = self.term()?;
                self.expect(",")?;
                let b = self.term()?;
                self.expect("]")?;
                Ok(a.comm(b))
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            _ => self.fail(format!("expected a term, found {}", self.describe())),
        }
    }
}

/// Parses a formula with the default oracle registry.
pub fn parse(text: &str) -> Result<Formula> {
    parse_with_oracles(text, DEFAULT_ORACLES)
}

/// Parses a formula, accepting only the given oracle names.
pub fn parse_with_oracles(text: &str, oracles: &[&str]) -> Result<Formula> {
    let lexed = lex(text)?;
    let mut p = Parser {
        text,
        toks: lexed.toks,
        pos: 0,
        oracles,
    };
    let f = p.formula().map_err(|e| e.err)?;
    if *p.peek() != Tok::End {
        return Err(p
            .fail::<()>(format!("unexpected {}", p.describe()))
            .unwrap_err()
            .err);
    }
    Ok(f)
}

/// Parses a standalone term.
pub fn parse_term(text: &str) -> Result<Term> {
    let lexed = lex(text)?;
    let mut p = Parser {
        text,
        toks: lexed.toks,
        pos: 0,
        oracles: DEFAULT_ORACLES,
    };
    let t = p.term().map_err(|e| e.err)?;
    if *p.peek() != Tok::End {
        return Err(p
            .fail::<()>(format!("unexpected {}", p.describe()))
            .unwrap_err()
            .err);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(s: &str) {
        let f = parse(s).unwrap();
        let printed = f.to_string();
        assert_eq!(parse(&printed).unwrap(), f, "{s} printed as {printed}");
    }

    #[test]
    fn basic_forms() {
        let f = parse("A x. x*1 = x").unwrap();
        assert!(f.is_sentence());
        let g = parse("A y. x*y = y*x").unwrap();
        assert_eq!(
            g.free_vars().into_iter().collect::<Vec<_>>(),
            vec!["x".to_string()]
        );
        assert_eq!(parse("x*y=1").unwrap().free_vars().len(), 2);
        assert!(parse("A x. x=1").unwrap().free_vars().is_empty());
        assert_eq!(parse("A y. [x,x^y]=1").unwrap().free_vars().len(), 1);
    }

    #[test]
    fn dangling_arrow_is_a_syntax_error() {
        match parse("A x. (x^2 = 1 & y^3 = 1) ->") {
            Err(Error::Syntax { line, column, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(column, 28);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arrows_need_parentheses() {
        assert!(parse("x = 1 -> y = 1").is_err());
        assert!(parse("(x = 1) -> y = 1").is_err());
        let f = parse("(x = 1) -> (y = 1)").unwrap();
        assert!(matches!(f, Formula::Implies(..)));
    }

    #[test]
    fn term_shapes() {
        let t = parse_term("x^-1").unwrap();
        assert_eq!(t, Term::var("x").inv());
        let t = parse_term("x^y^-1").unwrap();
        assert_eq!(t, Term::var("x").conj(Term::var("y")).inv());
        let t = parse_term("(x*y)^2*z").unwrap();
        assert_eq!(
            t,
            Term::Pow(Box::new(Term::var("x").mul(Term::var("y"))), 2).mul(Term::var("z"))
        );
        assert_eq!(parse_term("x^(1)").unwrap(), Term::var("x").conj(Term::One));
        assert_eq!(
            parse_term("x^1").unwrap(),
            Term::Pow(Box::new(Term::var("x")), 1)
        );
    }

    #[test]
    fn oracles() {
        let f = parse("rad(x*y)").unwrap();
        assert_eq!(
            f,
            Formula::oracle("rad", Term::var("x").mul(Term::var("y")))
        );
        assert_eq!(parse("foo(x)"), Err(Error::UnknownOracle("foo".into())));
        assert!(parse_with_oracles("foo(x)", &["foo"]).is_ok());
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        assert!(parse("((x*y)^2 = 1)").is_ok());
        assert!(parse("(x = 1) & (x*y)^2 = 1").is_ok());
        assert!(parse("(A x. x = 1) | (E y. y != 1)").is_ok());
        assert!(parse("x = 1 & A y. y = 1").is_err());
    }

    #[test]
    fn round_trips() {
        for s in [
            "A x. (x = 1 | (E y. [x,x^y] != 1))",
            "A x. A y. ([x^2,y] = 1 & [x,y^3] = 1) -> ([x,y] = 1)",
            "!(x = 1) <-> (!!y != 1)",
            "E t. !rad(t*x^-3) | (x = 1 & (y = 1 | z = 1))",
            "x*(y*z) = (x*y)*z",
            "x^(y*z)^(1) = x^[y,z]",
        ] {
            rt(s);
        }
    }

    #[test]
    fn multiline_positions() {
        match parse("A x.\n  x = ") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 7)),
            other => panic!("{other:?}"),
        }
    }
}
