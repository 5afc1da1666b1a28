//! Seeded random formulas for the evaluator tests.

#![allow(dead_code)]

use grouplogic::logic::{Formula, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct FormulaGen {
    rng: ChaCha8Rng,
    fresh: usize,
    /// Probability of an oracle atom, in percent.
    pub oracle_pct: u32,
}

impl FormulaGen {
    pub fn new(seed: u64) -> Self {
        FormulaGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            fresh: 0,
            oracle_pct: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn term(&mut self, vars: &[String], depth: u32) -> Term {
        let leaf = depth == 0 || self.rng.random_ratio(1, 3);
        if leaf {
            if vars.is_empty() || self.rng.random_ratio(1, 8) {
                return Term::One;
            }
            return Term::var(vars[self.rng.random_range(0..vars.len())].clone());
        }
        let a = self.term(vars, depth - 1);
        match self.rng.random_range(0..5) {
            0 => a.mul(self.term(vars, depth - 1)),
            1 => a.inv(),
            2 => a.pow([2, 3, -2][self.rng.random_range(0..3)]),
            3 => a.comm(self.term(vars, depth - 1)),
            _ => a.conj(self.term(vars, depth - 1)),
        }
    }

    fn atom(&mut self, vars: &[String]) -> Formula {
        let t = self.term(vars, 2);
        if self.oracle_pct > 0 && self.rng.random_ratio(self.oracle_pct, 100) {
            let name = if self.rng.random_bool(0.5) {
                "rad"
            } else {
                "fit"
            };
            return Formula::oracle(name, t);
        }
        t.eq(self.term(vars, 2))
    }

    /// A formula whose free variables lie in `vars`, with at most
    /// `quantifiers` nested quantifiers.
    pub fn formula(&mut self, vars: &[String], depth: u32, quantifiers: u32) -> Formula {
        if depth == 0 {
            return self.atom(vars);
        }
        match self.rng.random_range(0..8) {
            0 | 1 if quantifiers > 0 => {
                self.fresh += 1;
                let v = format!("y{}", self.fresh);
                let mut inner = vars.to_vec();
                inner.push(v.clone());
                let body = self.formula(&inner, depth - 1, quantifiers - 1);
                if self.rng.random_bool(0.5) {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
            2 => self.formula(vars, depth - 1, quantifiers).not(),
            3 => Formula::and([
                self.formula(vars, depth - 1, quantifiers),
                self.formula(vars, depth - 1, quantifiers),
            ]),
            4 => Formula::or([
                self.formula(vars, depth - 1, quantifiers),
                self.formula(vars, depth - 1, quantifiers),
            ]),
            5 => self
                .formula(vars, depth - 1, quantifiers)
                .implies(self.formula(vars, depth - 1, quantifiers)),
            6 => self.formula(vars, depth - 1, quantifiers).iff(self.formula(
                vars,
                depth - 1,
                quantifiers,
            )),
            _ => self.atom(vars),
        }
    }

    /// A sentence with at least one quantifier in front.
    pub fn sentence(&mut self, depth: u32, quantifiers: u32) -> Formula {
        let body = self.formula(&["x".to_string()], depth, quantifiers.saturating_sub(1));
        if self.rng.random_bool(0.5) {
            Formula::forall("x", body)
        } else {
            Formula::exists("x", body)
        }
    }
}
