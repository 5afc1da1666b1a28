use std::collections::BTreeSet;

use super::certificate::SupplementCertificate;
use crate::error::{Error, Result};
use crate::logic::{definable_set, eval, EvalConfig, Formula, OracleTable, Term, Valuation};

/// Names bound inside the generated formulas.
const RESERVED: [&str; 12] = [
    "w1", "w2", "z", "x", "y", "g", "t", "u", "x1", "x2", "v1", "v2",
];

/// How membership in `K` is written.
#[derive(Clone, Debug)]
pub enum KMembership {
    /// An explicit-subset oracle.
    Oracle(String),
    /// A formula with one distinguished free variable; other free
    /// variables are parameters.
    Formula { formula: Formula, var: String },
}

impl Default for KMembership {
    fn default() -> Self {
        KMembership::Oracle("inK".into())
    }
}

impl KMembership {
    fn at(&self, t: Term) -> Formula {
        match self {
            KMembership::Oracle(name) => Formula::oracle(name.clone(), t),
            KMembership::Formula { formula, var } => formula.substitute(var, &t),
        }
    }
}

fn bound_vars(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Eq(..) | Formula::Oracle(..) => {}
        Formula::Not(a) => bound_vars(a, out),
        Formula::And(v) | Formula::Or(v) => v.iter().for_each(|a| bound_vars(a, out)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            bound_vars(a, out);
            bound_vars(b, out);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            out.insert(x.clone());
            bound_vars(a, out);
        }
    }
}

/// The formulas of the construction. Free variables: `w1, w2, z` for the
/// parameters and `x` for the defined element; `ψ`, `ψ'` and `ξ` have no
/// `x`.
#[derive(Clone, Debug)]
pub struct SupplementFormulas {
    pub psi: Formula,
    pub psi_prime: Formula,
    pub theta0: Formula,
    pub theta1: Formula,
    pub theta: Formula,
    pub chi: Formula,
    /// Corrected form: `χ` defines a proper subgroup with `χ·K = G`.
    pub xi: Formula,
}

fn rad(t: Term) -> Formula {
    Formula::oracle("rad", t)
}

fn theta0_at(x: Term) -> Formula {
    let w = [Term::var("w1"), Term::var("w2")];
    let mut parts = Vec::with_capacity(4);
    for wi in &w {
        for wj in &w {
            parts.push(rad(wi.clone().comm(wj.clone().conj(x.clone()))).not());
        }
    }
    Formula::or(parts)
}

fn theta1_at(x: Term) -> Formula {
    let g = Term::var("g");
    Formula::forall("g", theta0_at(g.clone().mul(x).mul(g.inv())))
}

fn theta_at(x: Term) -> Formula {
    Formula::and([theta1_at(x.clone()), rad(Term::var("z").comm(x))])
}

fn chi_at(x: Term) -> Formula {
    let y = Term::var("y");
    Formula::forall("y", theta_at(y.clone()).implies(theta_at(y.conj(x))))
}

/// Builds the formulas with `rad` for the soluble radical and `k` for
/// membership in `K`.
pub fn build_formulas_with(k: &KMembership) -> Result<SupplementFormulas> {
    if let KMembership::Formula { formula, .. } = k {
        let mut b = BTreeSet::new();
        bound_vars(formula, &mut b);
        if let Some(v) = RESERVED.iter().find(|v| b.contains(**v)) {
            return Err(Error::Invalid(format!(
                "formula for K binds the reserved variable `{v}`"
            )));
        }
        if let Some(v) = RESERVED
            .iter()
            .find(|v| formula.free_vars().contains(**v) && Some(**v) != var_name(k))
        {
            return Err(Error::Invalid(format!(
                "formula for K uses the reserved parameter `{v}`"
            )));
        }
    }
    let x = Term::var("x");
    let (u, x1, x2) = (Term::var("u"), Term::var("x1"), Term::var("x2"));
    let psi = Formula::and([
        k.at(Term::One),
        Formula::forall_all(
            &["u", "x1", "x2"],
            Formula::and([k.at(x1.clone()), k.at(x2.clone())])
                .implies(k.at(u.clone().mul(x1).mul(x2.inv()).mul(u.inv()))),
        ),
    ]);
    let psi_prime = Formula::and([
        psi.clone(),
        Formula::exists("x", Formula::and([k.at(x.clone()), rad(x.clone()).not()])),
    ]);
    let (v1, v2) = (Term::var("v1"), Term::var("v2"));
    let xi = Formula::and([
        Formula::exists("t", chi_at(Term::var("t")).not()),
        Formula::forall(
            "u",
            Formula::exists_all(
                &["v1", "v2"],
                Formula::and([
                    chi_at(v1.clone()),
                    k.at(v2.clone()),
                    Term::var("u").eq(v1.mul(v2)),
                ]),
            ),
        ),
    ]);
    Ok(SupplementFormulas {
        psi,
        psi_prime,
        theta0: theta0_at(x.clone()),
        theta1: theta1_at(x.clone()),
        theta: theta_at(x.clone()),
        chi: chi_at(x),
        xi,
    })
}

fn var_name(k: &KMembership) -> Option<&str> {
    match k {
        KMembership::Formula { var, .. } => Some(var),
        KMembership::Oracle(_) => None,
    }
}

/// Formulas with `K` given by the oracle `inK`.
pub fn build_formulas(_cert: &SupplementCertificate) -> SupplementFormulas {
    build_formulas_with(&KMembership::default()).expect("oracle membership needs no checks")
}

/// `rad` bound to `R(G)` and `inK` to `K`.
pub fn standard_oracles(c: &SupplementCertificate) -> OracleTable {
    OracleTable::new()
        .with("rad", c.radical.clone())
        .with("inK", c.k.clone())
}

/// Parameters `w1, w2, z ↦ d1, d2, s`.
pub fn parameters(c: &SupplementCertificate) -> Valuation {
    [("w1", c.d1), ("w2", c.d2), ("z", c.s)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

#[derive(Clone, Debug)]
pub struct FormulaLevelReport {
    pub theta_order: usize,
    pub chi_order: usize,
    pub xi_holds: bool,
    /// `None` when the group is too large for the cubic sentence.
    pub psi_prime_holds: Option<bool>,
}

impl FormulaLevelReport {
    pub fn lines(&self) -> Vec<(String, String)> {
        vec![
            ("theta_set".into(), format!("{} = D", self.theta_order)),
            ("chi_set".into(), format!("{} = N", self.chi_order)),
            ("xi".into(), self.xi_holds.to_string()),
            (
                "psi_prime".into(),
                self.psi_prime_holds
                    .map_or("skipped".into(), |b| b.to_string()),
            ),
        ]
    }
}

/// Largest group on which `ψ'` is evaluated.
pub const PSI_ORDER_CAP: usize = 200;

/// Evaluates `θ` and `χ` at the certificate's parameters and compares with
/// `D` and `N`, then checks that the `χ`-set is a proper supplement to `K`.
pub fn verify_formula_level(
    c: &SupplementCertificate,
    oracles: &OracleTable,
    cfg: &EvalConfig,
) -> Result<FormulaLevelReport> {
    let g = &c.g;
    let f = build_formulas(c);
    let params = parameters(c);
    let theta = definable_set(g, &f.theta, &params, "x", oracles, cfg)?;
    if theta != c.d {
        return Err(Error::check(
            "theta",
            format!("θ defines {} elements, |D| = {}", theta.len(), c.d.len()),
        ));
    }
    let chi = definable_set(g, &f.chi, &params, "x", oracles, cfg)?;
    if chi != c.n {
        return Err(Error::check(
            "chi",
            format!("χ defines {} elements, |N| = {}", chi.len(), c.n.len()),
        ));
    }
    if chi.is_full() || g.product_order(&chi, &c.k) != g.order() {
        return Err(Error::check(
            "supplement",
            "the χ-set is not a proper supplement to K",
        ));
    }
    let xi_holds = eval(g, &f.xi, &params, oracles, cfg)?;
    if !xi_holds {
        return Err(Error::check("xi", "ξ fails at (d1, d2, s)"));
    }
    let psi_prime_holds = if g.order() <= PSI_ORDER_CAP {
        let b = eval(g, &f.psi_prime, &Valuation::new(), oracles, cfg)?;
        if !b {
            return Err(Error::check(
                "psi_prime",
                "ψ' fails although K is normal and not soluble",
            ));
        }
        Some(b)
    } else {
        None
    };
    Ok(FormulaLevelReport {
        theta_order: theta.len(),
        chi_order: chi.len(),
        xi_holds,
        psi_prime_holds,
    })
}
