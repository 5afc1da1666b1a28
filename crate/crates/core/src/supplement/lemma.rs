use std::fmt;

use super::certificate::SupplementCertificate;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subset};

/// Outcome of one clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseCheck {
    pub clause: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for ClauseCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "({}) {verdict}: {}", self.clause, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct Lemma62Report {
    pub clauses: Vec<ClauseCheck>,
}

impl Lemma62Report {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseCheck> {
        self.clauses.iter().find(|c| c.clause == name)
    }

    /// `CheckFailed` for the first failing clause.
    pub fn into_result(self) -> Result<Self> {
        match self.clauses.iter().find(|c| !c.passed) {
            Some(c) => Err(Error::check(c.clause, c.detail.clone())),
            None => Ok(self),
        }
    }
}

fn difference_witness(q: &FiniteGroup, a: &Subset, b: &Subset) -> String {
    match a.difference(b).least() {
        Some(x) => format!("{} is in the first set only", q.describe(x)),
        None => match b.difference(a).least() {
            Some(x) => format!("{} is in the second set only", q.describe(x)),
            None => "sets agree".into(),
        },
    }
}

fn clause(clause: &'static str, passed: bool, detail: String) -> ClauseCheck {
    ClauseCheck {
        clause,
        passed,
        detail,
    }
}

/// Checks the four clauses in `Ḡ = G/M`, using `D`, `T`, `s` and
/// `d1, d2` as recorded in the certificate.
pub fn lemma62_checks(c: &SupplementCertificate) -> Lemma62Report {
    let q = c.quotient();
    let pi = &c.quotient_map;
    let lbar = pi.image(&c.l);
    let dbar = pi.image(&c.d);
    let tbar = pi.image(&c.t);
    let sbar = pi.apply(c.s);
    let nd = q.normalizer(&dbar);
    let mut clauses = Vec::with_capacity(4);

    let ln = q.product_order(&lbar, &nd);
    clauses.push(clause(
        "a",
        ln == q.order(),
        format!("|L̄·N(D̄)| = {ln}, |Ḡ| = {}", q.order()),
    ));

    let pbar = q.closure(c.s_bar.iter().copied());
    clauses.push(clause(
        "b",
        !pbar.is_trivial() && !nd.is_full(),
        format!(
            "|P̄| = {}, |N(D̄)| = {}, |Ḡ| = {}",
            pbar.len(),
            nd.len(),
            q.order()
        ),
    ));

    let cent_p = q.centralizer(&pbar);
    let cent_s = tbar.intersection(&q.centralizer_of(&[sbar]));
    let ok_c = dbar == cent_p && dbar == cent_s;
    let detail = if ok_c {
        format!("D̄ = C(P̄) = C_T̄(s̄), order {}", dbar.len())
    } else if dbar != cent_p {
        format!("D̄ ≠ C(P̄): {}", difference_witness(q, &dbar, &cent_p))
    } else {
        format!("D̄ ≠ C_T̄(s̄): {}", difference_witness(q, &dbar, &cent_s))
    };
    clauses.push(clause("c", ok_c, detail));

    let d = [c.d1_bar, c.d2_bar];
    let in_q = |x| {
        d.iter().any(|&di| {
            d.iter()
                .any(|&dj| !q.commutator(di, q.conjugate(dj, x)).is_identity())
        })
    };
    // x lies in every conjugate of Q exactly when its class does.
    let mut meet = Subset::empty(q.order());
    for class in q.conjugacy_classes() {
        if class.iter().all(|&x| in_q(x)) {
            for &x in class {
                meet.insert(x);
            }
        }
    }
    let ok_d = meet == tbar;
    let detail = if ok_d {
        format!("⋂ g⁻¹Qg = T̄, order {}, r = {}", tbar.len(), c.r())
    } else {
        format!("⋂ g⁻¹Qg ≠ T̄: {}", difference_witness(q, &meet, &tbar))
    };
    clauses.push(clause("d", ok_d, detail));
    Lemma62Report { clauses }
}
