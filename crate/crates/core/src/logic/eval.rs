//! Exhaustive evaluation of formulas over a finite group.
//!
//! A formula is compiled into a tree over numbered variable slots. With
//! `rewrite` on, the tree is put into negation normal form, quantifiers are
//! pushed inward past subformulas that do not mention the bound variable,
//! an existential whose body contains an equation solvable for the bound
//! variable is replaced by a direct assignment (and dually for universals),
//! and conjunctions/disjunctions are reordered cheapest first. None of
//! these change truth values.
//!
//! With `memoize` on, the value of each quantified subformula is cached by
//! the values of its free variables. With `conjugacy_reduction` on, and when
//! every oracle subset is closed under conjugation, a quantifier ranges only
//! over representatives of the orbits of the centralizer of its free
//! variables' values acting by conjugation: the truth value is constant on
//! those orbits, since conjugation by such an element is an automorphism
//! fixing every parameter and every oracle.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;

use super::ast::{Formula, Term};
use crate::analysis::{fitting, soluble_radical};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subset};

/// Values of free variables.
pub type Valuation = BTreeMap<String, Elem>;

/// Subsets bound to oracle names for one group.
#[derive(Clone, Debug, Default)]
pub struct OracleTable {
    map: BTreeMap<String, Subset>,
}

impl OracleTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `rad` bound to the soluble radical and `fit` to the Fitting subgroup.
    pub fn standard(g: &FiniteGroup) -> Self {
        OracleTable::new()
            .with("rad", soluble_radical(g))
            .with("fit", fitting(g))
    }

    pub fn with(mut self, name: impl Into<String>, s: Subset) -> Self {
        self.insert(name, s);
        self
    }

    pub fn insert(&mut self, name: impl Into<String>, s: Subset) {
        self.map.insert(name.into(), s);
    }

    pub fn get(&self, name: &str) -> Option<&Subset> {
        self.map.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub conjugacy_reduction: bool,
    pub memoize: bool,
    pub rewrite: bool,
    /// Spread the outermost quantifiers over worker threads.
    pub parallel: bool,
    pub work_budget: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            conjugacy_reduction: false,
            memoize: true,
            rewrite: true,
            parallel: true,
            work_budget: 1_000_000_000,
        }
    }
}

impl EvalConfig {
    /// Plain nested iteration with short-circuiting and nothing else.
    pub fn naive() -> Self {
        EvalConfig {
            conjugacy_reduction: false,
            memoize: false,
            rewrite: false,
            parallel: false,
            ..Self::default()
        }
    }

    pub fn reduced() -> Self {
        EvalConfig {
            conjugacy_reduction: true,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.work_budget = budget;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Quantifier iterations plus atom evaluations.
    pub steps: u64,
    /// Whether orbit reduction was in effect.
    pub reduced: bool,
}

type Slot = u8;
const MAX_SLOTS: usize = 64;
const MEMO_KEY: usize = 4;
const MEMO_CAP: usize = 1 << 22;
const ORBIT_CACHE_CAP: usize = 1 << 14;

#[derive(Clone, Debug)]
enum T {
    One,
    Var(Slot),
    Mul(Box<T>, Box<T>),
    Inv(Box<T>),
    Pow(Box<T>, i64),
    Comm(Box<T>, Box<T>),
    Conj(Box<T>, Box<T>),
}

#[derive(Clone, Debug)]
enum N {
    Const(bool),
    Eq(T, T),
    Oracle(usize, T),
    Not(Box<N>),
    And(Vec<N>),
    Or(Vec<N>),
    Iff(Box<N>, Box<N>),
    Quant(Box<Q>),
    /// Bind a slot to the value of a term, then evaluate the body.
    Let(Slot, T, Box<N>),
}

#[derive(Clone, Debug)]
struct Q {
    all: bool,
    slot: Slot,
    body: N,
    id: u32,
    free: Vec<Slot>,
}

fn tmask(t: &T) -> u64 {
    match t {
        T::One => 0,
        T::Var(s) => 1 << s,
        T::Inv(a) | T::Pow(a, _) => tmask(a),
        T::Mul(a, b) | T::Comm(a, b) | T::Conj(a, b) => tmask(a) | tmask(b),
    }
}

fn nmask(n: &N) -> u64 {
    match n {
        N::Const(_) => 0,
        N::Eq(a, b) => tmask(a) | tmask(b),
        N::Oracle(_, t) => tmask(t),
        N::Not(a) => nmask(a),
        N::And(v) | N::Or(v) => v.iter().fold(0, |m, x| m | nmask(x)),
        N::Iff(a, b) => nmask(a) | nmask(b),
        N::Quant(q) => nmask(&q.body) & !(1 << q.slot),
        N::Let(s, t, body) => tmask(t) | (nmask(body) & !(1 << s)),
    }
}

fn occurrences(t: &T, s: Slot) -> usize {
    match t {
        T::One => 0,
        T::Var(v) => usize::from(*v == s),
        T::Inv(a) | T::Pow(a, _) => occurrences(a, s),
        T::Mul(a, b) | T::Comm(a, b) | T::Conj(a, b) => occurrences(a, s) + occurrences(b, s),
    }
}

/// Solves `lhs = rhs` for the slot `s`, which occurs exactly once in `lhs`
/// and not in `rhs`, through products, inverses and conjugate bases.
fn solve(lhs: &T, rhs: T, s: Slot) -> Option<T> {
    let bx = Box::new;
    match lhs {
        T::Var(v) if *v == s => Some(rhs),
        T::Mul(a, b) => {
            if occurrences(a, s) == 1 {
                solve(a, T::Mul(bx(rhs), bx(T::Inv(b.clone()))), s)
            } else {
                solve(b, T::Mul(bx(T::Inv(a.clone())), bx(rhs)), s)
            }
        }
        T::Inv(a) => solve(a, T::Inv(bx(rhs)), s),
        T::Conj(a, u) if occurrences(u, s) == 0 => solve(
            a,
            T::Mul(bx(T::Mul(u.clone(), bx(rhs))), bx(T::Inv(u.clone()))),
            s,
        ),
        _ => None,
    }
}

fn solve_eq(a: &T, b: &T, s: Slot) -> Option<T> {
    match (occurrences(a, s), occurrences(b, s)) {
        (1, 0) => solve(a, b.clone(), s),
        (0, 1) => solve(b, a.clone(), s),
        _ => None,
    }
}

struct Compiler<'a> {
    scope: Vec<(String, Slot)>,
    next_slot: usize,
    oracle_names: &'a [String],
}

impl Compiler<'_> {
    fn lookup(&self, v: &str) -> Result<Slot> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .map(|&(_, s)| s)
            .ok_or_else(|| Error::UnboundVariable(v.to_string()))
    }

    fn term(&self, t: &Term) -> Result<T> {
        let b = |t: &Term| self.term(t).map(Box::new);
        Ok(match t {
            Term::One => T::One,
            Term::Var(v) => T::Var(self.lookup(v)?),
            Term::Mul(x, y) => T::Mul(b(x)?, b(y)?),
            Term::Inv(x) => T::Inv(b(x)?),
            Term::Pow(x, k) => T::Pow(b(x)?, *k),
            Term::Comm(x, y) => T::Comm(b(x)?, b(y)?),
            Term::Conj(x, y) => T::Conj(b(x)?, b(y)?),
        })
    }

    fn formula(&mut self, f: &Formula) -> Result<N> {
        Ok(match f {
            Formula::Eq(a, b) => N::Eq(self.term(a)?, self.term(b)?),
            Formula::Oracle(name, t) => {
                let idx = self
                    .oracle_names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::UnboundOracle(name.clone()))?;
                N::Oracle(idx, self.term(t)?)
            }
            Formula::Not(a) => N::Not(Box::new(self.formula(a)?)),
            Formula::And(v) => N::And(v.iter().map(|x| self.formula(x)).collect::<Result<_>>()?),
            Formula::Or(v) => N::Or(v.iter().map(|x| self.formula(x)).collect::<Result<_>>()?),
            Formula::Implies(a, b) => {
                N::Or(vec![N::Not(Box::new(self.formula(a)?)), self.formula(b)?])
            }
            Formula::Iff(a, b) => N::Iff(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                if self.next_slot >= MAX_SLOTS {
                    return Err(Error::Invalid(format!("more than {MAX_SLOTS} variables")));
                }
                let slot = self.next_slot as Slot;
                self.next_slot += 1;
                self.scope.push((v.clone(), slot));
                let body = self.formula(body)?;
                self.scope.pop();
                N::Quant(Box::new(Q {
                    all: matches!(f, Formula::Forall(..)),
                    slot,
                    body,
                    id: 0,
                    free: Vec::new(),
                }))
            }
        })
    }
}

/// Negation normal form (negations only in front of atoms and `<->`).
fn nnf(n: N, neg: bool) -> N {
    match n {
        N::Const(b) => N::Const(b != neg),
        N::Not(a) => nnf(*a, !neg),
        N::And(v) => {
            let v = v.into_iter().map(|x| nnf(x, neg)).collect();
            if neg {
                N::Or(v)
            } else {
                N::And(v)
            }
        }
        N::Or(v) => {
            let v = v.into_iter().map(|x| nnf(x, neg)).collect();
            if neg {
                N::And(v)
            } else {
                N::Or(v)
            }
        }
        N::Quant(mut q) => {
            q.body = nnf(q.body, neg);
            q.all ^= neg;
            N::Quant(q)
        }
        N::Let(s, t, body) => N::Let(s, t, Box::new(nnf(*body, neg))),
        N::Iff(a, b) => {
            let inner = N::Iff(Box::new(nnf(*a, false)), Box::new(nnf(*b, false)));
            if neg {
                N::Not(Box::new(inner))
            } else {
                inner
            }
        }
        atom => {
            if neg {
                N::Not(Box::new(atom))
            } else {
                atom
            }
        }
    }
}

struct Rewriter {
    order: f64,
}

impl Rewriter {
    fn cost(&self, n: &N) -> f64 {
        match n {
            N::Const(_) => 0.0,
            N::Eq(..) | N::Oracle(..) => 1.0,
            N::Not(a) => self.cost(a),
            N::And(v) | N::Or(v) => v.iter().map(|x| self.cost(x)).sum(),
            N::Iff(a, b) => self.cost(a) + self.cost(b),
            N::Quant(q) => self.order * (1.0 + self.cost(&q.body)),
            N::Let(_, _, b) => 1.0 + self.cost(b),
        }
    }

    fn junction(&self, and: bool, items: Vec<N>) -> N {
        let mut flat = Vec::with_capacity(items.len());
        for it in items {
            match it {
                N::And(v) if and => flat.extend(v),
                N::Or(v) if !and => flat.extend(v),
                N::Const(b) if b == and => {}
                N::Const(b) => return N::Const(b),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => N::Const(and),
            1 => flat.pop().unwrap(),
            _ => {
                let mut keyed: Vec<(f64, N)> =
                    flat.into_iter().map(|x| (self.cost(&x), x)).collect();
                keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
                let v = keyed.into_iter().map(|(_, x)| x).collect();
                if and {
                    N::And(v)
                } else {
                    N::Or(v)
                }
            }
        }
    }

    fn simplify(&self, n: N) -> N {
        match n {
            N::And(v) => {
                let v = v.into_iter().map(|x| self.simplify(x)).collect();
                self.junction(true, v)
            }
            N::Or(v) => {
                let v = v.into_iter().map(|x| self.simplify(x)).collect();
                self.junction(false, v)
            }
            N::Not(a) => match self.simplify(*a) {
                N::Const(b) => N::Const(!b),
                other => N::Not(Box::new(other)),
            },
            N::Iff(a, b) => N::Iff(Box::new(self.simplify(*a)), Box::new(self.simplify(*b))),
            N::Let(s, t, body) => N::Let(s, t, Box::new(self.simplify(*body))),
            N::Quant(q) => {
                let body = self.simplify(q.body);
                self.quant(q.all, q.slot, body)
            }
            other => other,
        }
    }

    /// Builds `Q slot. body` for an already simplified body, pushing the
    /// quantifier inward as far as possible.
    fn quant(&self, all: bool, slot: Slot, body: N) -> N {
        let bit = 1u64 << slot;
        if nmask(&body) & bit == 0 {
            return body;
        }
        // Items of the junction matching the quantifier (∃ over ∧, ∀ over ∨).
        let (items, distribute) = match body {
            N::And(v) if !all => (v, false),
            N::Or(v) if all => (v, false),
            N::And(v) if all => (v, true),
            N::Or(v) if !all => (v, true),
            other => (vec![other], false),
        };
        if distribute {
            let parts = items
                .into_iter()
                .map(|x| self.quant(all, slot, x))
                .collect();
            return self.junction(all, parts);
        }
        let inner_and = !all;
        let (indep, mut dep): (Vec<N>, Vec<N>) =
            items.into_iter().partition(|x| nmask(x) & bit == 0);
        let solved = dep.iter().enumerate().find_map(|(i, x)| {
            let eq = match (x, all) {
                (N::Eq(a, b), false) => Some((a, b)),
                (N::Not(inner), true) => match &**inner {
                    N::Eq(a, b) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            };
            eq.and_then(|(a, b)| solve_eq(a, b, slot))
                .map(|value| (i, value))
        });
        let core = match solved {
            Some((i, value)) => {
                dep.remove(i);
                let rest = self.junction(inner_and, dep);
                if nmask(&rest) & bit == 0 {
                    rest
                } else {
                    N::Let(slot, value, Box::new(rest))
                }
            }
            None => N::Quant(Box::new(Q {
                all,
                slot,
                body: self.junction(inner_and, dep),
                id: 0,
                free: Vec::new(),
            })),
        };
        let mut out = indep;
        out.push(core);
        self.junction(inner_and, out)
    }
}

fn number(n: &mut N, next: &mut u32) {
    match n {
        N::Not(a) => number(a, next),
        N::And(v) | N::Or(v) => v.iter_mut().for_each(|x| number(x, next)),
        N::Iff(a, b) => {
            number(a, next);
            number(b, next);
        }
        N::Let(_, _, b) => number(b, next),
        N::Quant(q) => {
            q.id = *next;
            *next += 1;
            let m = nmask(&q.body) & !(1u64 << q.slot);
            q.free = (0..MAX_SLOTS as Slot)
                .filter(|s| m & (1 << s) != 0)
                .collect();
            number(&mut q.body, next);
        }
        _ => {}
    }
}

type MemoKey = (u32, [u32; MEMO_KEY]);

/// A formula compiled against one group, oracle table and list of free
/// variables. Caches persist across calls.
pub struct Compiled {
    g: FiniteGroup,
    oracles: Vec<Subset>,
    root: N,
    nslots: usize,
    nfree: usize,
    cfg: EvalConfig,
    reduce: bool,
    memo: DashMap<MemoKey, bool, FxBuildHasher>,
    memo_len: AtomicUsize,
    orbit_cache: DashMap<Vec<u32>, Arc<Vec<Elem>>, FxBuildHasher>,
    class_reps: Vec<Elem>,
    steps: AtomicU64,
}

struct Work {
    pending: u64,
}

const FLUSH: u64 = 1024;

impl Compiled {
    pub fn new(
        g: &FiniteGroup,
        f: &Formula,
        free_order: &[String],
        o: &OracleTable,
        cfg: &EvalConfig,
    ) -> Result<Self> {
        for v in f.free_vars() {
            if !free_order.contains(&v) {
                return Err(Error::UnboundVariable(v));
            }
        }
        let names: Vec<String> = f.oracle_names().into_iter().collect();
        let mut oracles = Vec::with_capacity(names.len());
        for n in &names {
            let s = o.get(n).ok_or_else(|| Error::UnboundOracle(n.clone()))?;
            if s.parent_order() != g.order() {
                return Err(Error::UnboundOracle(format!(
                    "{n} (bound to a subset of another group)"
                )));
            }
            oracles.push(s.clone());
        }
        if free_order.len() > MAX_SLOTS {
            return Err(Error::Invalid(format!("more than {MAX_SLOTS} variables")));
        }
        let mut c = Compiler {
            scope: free_order
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), i as Slot))
                .collect(),
            next_slot: free_order.len(),
            oracle_names: &names,
        };
        let mut root = c.formula(f)?;
        let nslots = c.next_slot;
        if cfg.rewrite {
            let rw = Rewriter {
                order: g.order() as f64,
            };
            root = rw.simplify(nnf(root, false));
        }
        let mut next = 0;
        number(&mut root, &mut next);
        let reduce = cfg.conjugacy_reduction && oracles.iter().all(|s| is_conjugation_closed(g, s));
        let class_reps = if reduce {
            g.class_representatives()
        } else {
            Vec::new()
        };
        Ok(Compiled {
            g: g.clone(),
            oracles,
            root,
            nslots,
            nfree: free_order.len(),
            cfg: cfg.clone(),
            reduce,
            memo: DashMap::with_hasher(FxBuildHasher),
            memo_len: AtomicUsize::new(0),
            orbit_cache: DashMap::with_hasher(FxBuildHasher),
            class_reps,
            steps: AtomicU64::new(0),
        })
    }

    pub fn steps(&self) -> u64 {
        self.steps.load(Ordering::Relaxed)
    }

    pub fn reduction_active(&self) -> bool {
        self.reduce
    }

    /// Evaluates with the free variables bound to `values`, in the order
    /// given at compilation.
    pub fn eval(&self, values: &[Elem]) -> Result<bool> {
        if values.len() != self.nfree {
            return Err(Error::Invalid(format!(
                "{} values for {} free variables",
                values.len(),
                self.nfree
            )));
        }
        for &v in values {
            self.g.check_member(v)?;
        }
        let mut env = vec![Elem::IDENTITY; self.nslots];
        env[..values.len()].copy_from_slice(values);
        let mut w = Work { pending: 0 };
        let r = if self.cfg.parallel {
            self.top(&self.root, &mut env, &mut w)
        } else {
            self.node(&self.root, &mut env, &mut w)
        };
        self.flush(&mut w)?;
        r
    }

    fn flush(&self, w: &mut Work) -> Result<()> {
        let total = self.steps.fetch_add(w.pending, Ordering::Relaxed) + w.pending;
        w.pending = 0;
        if total > self.cfg.work_budget {
            return Err(Error::DepthBudgetExceeded {
                budget: self.cfg.work_budget,
            });
        }
        Ok(())
    }

    #[inline]
    fn tick(&self, w: &mut Work) -> Result<()> {
        w.pending += 1;
        if w.pending >= FLUSH {
            self.flush(w)?;
        }
        Ok(())
    }

    fn term(&self, t: &T, env: &[Elem]) -> Elem {
        let g = &self.g;
        match t {
            T::One => Elem::IDENTITY,
            T::Var(s) => env[*s as usize],
            T::Mul(a, b) => g.mul(self.term(a, env), self.term(b, env)),
            T::Inv(a) => g.inv(self.term(a, env)),
            T::Pow(a, k) => g.pow(self.term(a, env), *k),
            T::Comm(a, b) => g.commutator(self.term(a, env), self.term(b, env)),
            T::Conj(a, b) => g.conjugate(self.term(a, env), self.term(b, env)),
        }
    }

    fn node(&self, n: &N, env: &mut [Elem], w: &mut Work) -> Result<bool> {
        Ok(match n {
            N::Const(b) => *b,
            N::Eq(a, b) => {
                self.tick(w)?;
                self.term(a, env) == self.term(b, env)
            }
            N::Oracle(i, t) => {
                self.tick(w)?;
                self.oracles[*i].contains(self.term(t, env))
            }
            N::Not(a) => !self.node(a, env, w)?,
            N::And(v) => {
                for x in v {
                    if !self.node(x, env, w)? {
                        return Ok(false);
                    }
                }
                true
            }
            N::Or(v) => {
                for x in v {
                    if self.node(x, env, w)? {
                        return Ok(true);
                    }
                }
                false
            }
            N::Iff(a, b) => self.node(a, env, w)? == self.node(b, env, w)?,
            N::Let(s, t, body) => {
                env[*s as usize] = self.term(t, env);
                self.node(body, env, w)?
            }
            N::Quant(q) => {
                let key = self.memo_key(q, env);
                if let Some(k) = &key {
                    if let Some(v) = self.memo.get(k) {
                        return Ok(*v);
                    }
                }
                let domain = self.domain(q, env);
                let mut result = q.all;
                for x in domain.iter() {
                    self.tick(w)?;
                    env[q.slot as usize] = x;
                    if self.node(&q.body, env, w)? != q.all {
                        result = !q.all;
                        break;
                    }
                }
                self.remember(key, result);
                result
            }
        })
    }

    /// Like `node`, but spreads the iterations of outermost quantifiers
    /// over the thread pool.
    fn top(&self, n: &N, env: &mut [Elem], w: &mut Work) -> Result<bool> {
        match n {
            N::Not(a) => Ok(!self.top(a, env, w)?),
            N::And(v) => {
                for x in v {
                    if !self.top(x, env, w)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            N::Or(v) => {
                for x in v {
                    if self.top(x, env, w)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            N::Let(s, t, body) => {
                env[*s as usize] = self.term(t, env);
                self.top(body, env, w)
            }
            N::Quant(q) => {
                let key = self.memo_key(q, env);
                if let Some(k) = &key {
                    if let Some(v) = self.memo.get(k) {
                        return Ok(*v);
                    }
                }
                let domain = self.domain(q, env);
                let base: Vec<Elem> = env.to_vec();
                let decisive = domain.par_iter().find_map_any(|x| {
                    let mut env = base.clone();
                    let mut w = Work { pending: 0 };
                    env[q.slot as usize] = x;
                    let r = self
                        .tick(&mut w)
                        .and_then(|_| self.node(&q.body, &mut env, &mut w));
                    let r = r.and_then(|v| self.flush(&mut w).map(|_| v));
                    match r {
                        Ok(v) if v == q.all => None,
                        Ok(_) => Some(Ok(())),
                        Err(e) => Some(Err(e)),
                    }
                });
                let result = match decisive {
                    None => q.all,
                    Some(Ok(())) => !q.all,
                    Some(Err(e)) => return Err(e),
                };
                self.remember(key, result);
                Ok(result)
            }
            _ => self.node(n, env, w),
        }
    }

    fn memo_key(&self, q: &Q, env: &[Elem]) -> Option<MemoKey> {
        if !self.cfg.memoize || q.free.len() > MEMO_KEY {
            return None;
        }
        let mut k = [u32::MAX; MEMO_KEY];
        for (i, &s) in q.free.iter().enumerate() {
            k[i] = env[s as usize].0;
        }
        Some((q.id, k))
    }

    fn remember(&self, key: Option<MemoKey>, v: bool) {
        if let Some(k) = key {
            if self.memo_len.load(Ordering::Relaxed) < MEMO_CAP && self.memo.insert(k, v).is_none()
            {
                self.memo_len.fetch_add(1, Ordering::Relaxed);
            }
        }
    }

    fn domain(&self, q: &Q, env: &[Elem]) -> Domain<'_> {
        if !self.reduce {
            return Domain::All(self.g.order() as u32);
        }
        let mut vals: Vec<u32> = q
            .free
            .iter()
            .map(|&s| env[s as usize].0)
            .filter(|&v| v != 0)
            .collect();
        vals.sort_unstable();
        vals.dedup();
        if vals.is_empty() {
            return Domain::List(&self.class_reps);
        }
        if let Some(hit) = self.orbit_cache.get(&vals) {
            return Domain::Shared(hit.clone());
        }
        let reps = Arc::new(centralizer_orbits(&self.g, &vals).0);
        if self.orbit_cache.len() < ORBIT_CACHE_CAP {
            self.orbit_cache.insert(vals, reps.clone());
        }
        Domain::Shared(reps)
    }
}

enum Domain<'a> {
    All(u32),
    List(&'a [Elem]),
    Shared(Arc<Vec<Elem>>),
}

impl Domain<'_> {
    fn iter(&self) -> Box<dyn Iterator<Item = Elem> + '_> {
        match self {
            Domain::All(n) => Box::new((0..*n).map(Elem)),
            Domain::List(v) => Box::new(v.iter().copied()),
            Domain::Shared(v) => Box::new(v.iter().copied()),
        }
    }
}

type DomainParIter<'a> = rayon::iter::Either<
    rayon::iter::Map<rayon::range::Iter<u32>, fn(u32) -> Elem>,
    rayon::iter::Copied<rayon::slice::Iter<'a, Elem>>,
>;

impl Domain<'_> {
    fn par_iter(&self) -> DomainParIter<'_> {
        match self {
            Domain::All(n) => {
                rayon::iter::Either::Left((0..*n).into_par_iter().map(Elem as fn(u32) -> Elem))
            }
            Domain::List(v) => rayon::iter::Either::Right(v.par_iter().copied()),
            Domain::Shared(v) => rayon::iter::Either::Right(v.par_iter().copied()),
        }
    }
}

fn is_conjugation_closed(g: &FiniteGroup, s: &Subset) -> bool {
    s.iter().all(|x| {
        g.generators()
            .iter()
            .all(|&t| s.contains(g.conjugate(x, t)))
    })
}

/// Orbit representatives (least id of each orbit, increasing) of the
/// centralizer of `vals` acting on the group by conjugation, and for each
/// element the index of its orbit.
fn centralizer_orbits(g: &FiniteGroup, vals: &[u32]) -> (Vec<Elem>, Vec<u32>) {
    let elems: Vec<Elem> = vals.iter().map(|&v| Elem(v)).collect();
    let c = g.centralizer_of(&elems);
    let gens = g.subgroup_generators(&c);
    let n = g.order();
    let mut orbit_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for x in 0..n {
        if orbit_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(Elem(x as u32));
        orbit_of[x] = id;
        stack.push(Elem(x as u32));
        while let Some(y) = stack.pop() {
            for &t in &gens {
                let z = g.conjugate(y, t);
                if orbit_of[z.index()] == u32::MAX {
                    orbit_of[z.index()] = id;
                    stack.push(z);
                }
            }
        }
    }
    (reps, orbit_of)
}

fn ordered_values(
    f: &Formula,
    v: &Valuation,
    extra: Option<&str>,
) -> Result<(Vec<String>, Vec<Elem>)> {
    let mut names = Vec::new();
    let mut vals = Vec::new();
    for (k, &e) in v {
        if Some(k.as_str()) == extra {
            continue;
        }
        names.push(k.clone());
        vals.push(e);
    }
    for fv in f.free_vars() {
        if !names.contains(&fv) && Some(fv.as_str()) != extra {
            return Err(Error::UnboundVariable(fv));
        }
    }
    Ok((names, vals))
}

/// Truth value of `f` in `g` under the valuation `v`.
pub fn eval(
    g: &FiniteGroup,
    f: &Formula,
    v: &Valuation,
    o: &OracleTable,
    cfg: &EvalConfig,
) -> Result<bool> {
    eval_with_stats(g, f, v, o, cfg).map(|(b, _)| b)
}

pub fn eval_with_stats(
    g: &FiniteGroup,
    f: &Formula,
    v: &Valuation,
    o: &OracleTable,
    cfg: &EvalConfig,
) -> Result<(bool, EvalStats)> {
    let (names, vals) = ordered_values(f, v, None)?;
    let c = Compiled::new(g, f, &names, o, cfg)?;
    let b = c.eval(&vals)?;
    Ok((
        b,
        EvalStats {
            steps: c.steps(),
            reduced: c.reduce,
        },
    ))
}

/// `{h : f holds with distinguished = h}`, the other free variables taken
/// from `params`.
pub fn definable_set(
    g: &FiniteGroup,
    f: &Formula,
    params: &Valuation,
    distinguished: &str,
    o: &OracleTable,
    cfg: &EvalConfig,
) -> Result<Subset> {
    let (mut names, vals) = ordered_values(f, params, Some(distinguished))?;
    names.push(distinguished.to_string());
    let c = Compiled::new(g, f, &names, o, cfg)?;
    for &v in &vals {
        g.check_member(v)?;
    }
    let k = vals.len();
    let check = |h: Elem| -> Result<bool> {
        let mut env = vec![Elem::IDENTITY; c.nslots];
        env[..k].copy_from_slice(&vals);
        env[k] = h;
        let mut w = Work { pending: 0 };
        let r = c.node(&c.root, &mut env, &mut w);
        c.flush(&mut w)?;
        r
    };
    let (domain, orbit_of): (Vec<Elem>, Option<Vec<u32>>) = if c.reduce {
        let mut pv: Vec<u32> = vals.iter().map(|e| e.0).filter(|&v| v != 0).collect();
        pv.sort_unstable();
        pv.dedup();
        let (reps, of) = centralizer_orbits(g, &pv);
        (reps, Some(of))
    } else {
        (g.elements().collect(), None)
    };
    let truth: Vec<bool> = if cfg.parallel {
        domain
            .par_iter()
            .map(|&h| check(h))
            .collect::<Result<_>>()?
    } else {
        domain.iter().map(|&h| check(h)).collect::<Result<_>>()?
    };
    Ok(match orbit_of {
        Some(of) => Subset::from_predicate(g.order(), |h| truth[of[h.index()] as usize]),
        None => Subset::from_elems(
            g.order(),
            domain
                .iter()
                .zip(&truth)
                .filter(|(_, &t)| t)
                .map(|(&h, _)| h),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, symmetric};
    use crate::limits::Limits;
    use crate::logic::parse;

    fn l() -> Limits {
        Limits::default()
    }

    fn configs() -> Vec<EvalConfig> {
        vec![
            EvalConfig::naive(),
            EvalConfig::default(),
            EvalConfig::reduced(),
            EvalConfig {
                parallel: false,
                ..EvalConfig::reduced()
            },
        ]
    }

    fn truth(g: &FiniteGroup, s: &str) -> bool {
        let f = parse(s).unwrap();
        let o = OracleTable::standard(g);
        let answers: Vec<bool> = configs()
            .iter()
            .map(|c| eval(g, &f, &Valuation::new(), &o, c).unwrap())
            .collect();
        assert!(answers.iter().all(|&a| a == answers[0]), "{s}: {answers:?}");
        answers[0]
    }

    #[test]
    fn sentences() {
        let c5 = cyclic(5, &l()).unwrap();
        assert!(truth(&c5, "A x. E y. x = y*y"));
        let s3 = symmetric(3, &l()).unwrap();
        assert!(!truth(&s3, "A x. A y. x*y = y*x"));
        assert!(truth(&s3, "A x. x = x"));
        assert!(truth(&cyclic(1, &l()).unwrap(), "A x. x = 1"));
    }

    #[test]
    fn definable_sets() {
        let s3 = symmetric(3, &l()).unwrap();
        let f = parse("A y. x*y = y*x").unwrap();
        for c in configs() {
            let d =
                definable_set(&s3, &f, &Valuation::new(), "x", &OracleTable::new(), &c).unwrap();
            assert!(d.is_trivial());
        }
        let c4 = cyclic(4, &l()).unwrap();
        let f = parse("E y. x = y*y").unwrap();
        let d = definable_set(
            &c4,
            &f,
            &Valuation::new(),
            "x",
            &OracleTable::new(),
            &EvalConfig::default(),
        )
        .unwrap();
        assert_eq!(d.members(), vec![Elem(0), Elem(2)]);
        let f = parse("x = x").unwrap();
        let d = definable_set(
            &c4,
            &f,
            &Valuation::new(),
            "x",
            &OracleTable::new(),
            &EvalConfig::default(),
        )
        .unwrap();
        assert!(d.is_full());
    }

    #[test]
    fn errors() {
        let s3 = symmetric(3, &l()).unwrap();
        let f = parse("x = 1").unwrap();
        let e = eval(
            &s3,
            &f,
            &Valuation::new(),
            &OracleTable::new(),
            &EvalConfig::default(),
        )
        .unwrap_err();
        assert_eq!(e, Error::UnboundVariable("x".into()));
        let f = parse("A x. rad(x)").unwrap();
        let e = eval(
            &s3,
            &f,
            &Valuation::new(),
            &OracleTable::new(),
            &EvalConfig::default(),
        )
        .unwrap_err();
        assert_eq!(e, Error::UnboundOracle("rad".into()));
        let a5 = alternating(5, &l()).unwrap();
        let f = parse("A x. A y. A z. (x*y)*z = x*(y*z)").unwrap();
        let cfg = EvalConfig::naive().with_budget(1000);
        let e = eval(&a5, &f, &Valuation::new(), &OracleTable::new(), &cfg).unwrap_err();
        assert!(matches!(e, Error::DepthBudgetExceeded { .. }));
    }

    #[test]
    fn one_point_rule_agrees() {
        let s4 = symmetric(4, &l()).unwrap();
        for s in [
            "A x. E y. y*x = x*y & y != 1",
            "A x. E y. (x^y)*y^-1 = x & y^2 = 1",
            "A x. A y. (y = x^-1) -> (x*y = 1)",
            "E x. A y. y^x != y | y = 1",
            "A x. E y. E z. x = y*z & y^3 = 1 & z^2 = 1",
        ] {
            truth(&s4, s);
        }
    }

    #[test]
    fn quantifier_distributes_over_matching_junction() {
        let s4 = symmetric(4, &l()).unwrap();
        for s in [
            "E x. x != 1 | (A z. z = x)",
            "A x. x = 1 & (E z. z = x)",
            "E x. (x != 1) -> (E y. A z. z^-1^(x*y) = z)",
        ] {
            truth(&s4, s);
        }
    }

    #[test]
    fn params_and_oracles() {
        let s4 = symmetric(4, &l()).unwrap();
        let o = OracleTable::standard(&s4).with("inK", crate::analysis::derived_subgroup(&s4));
        let f = parse("inK(x) & (E y. fit(y) & x = y^z)").unwrap();
        let z = s4.parse_element("(1 2)").unwrap();
        let mut v = Valuation::new();
        v.insert("z".into(), z);
        let sets: Vec<Subset> = configs()
            .iter()
            .map(|c| definable_set(&s4, &f, &v, "x", &o, c).unwrap())
            .collect();
        assert_eq!(sets[0].len(), 4);
        assert!(sets.iter().all(|s| *s == sets[0]));
    }
}
