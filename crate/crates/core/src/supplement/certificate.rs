use crate::analysis::{is_simple_subgroup, minimal_normal_subgroups, soluble_radical};
use crate::arith::{p_part, prime_divisors};
use crate::error::{Error, Result};
use crate::group::{quotient, Elem, FiniteGroup, GroupMap, Subset};
use crate::limits::Limits;

/// Data of a proper supplement `N = N_G(D)` to a normal subgroup `K` that
/// is not contained in the soluble radical.
///
/// `factors`, `s_bar`, `d1_bar` and `d2_bar` live in the quotient `G/M`
/// (the target of `quotient_map`); everything else lives in `G`.
#[derive(Clone, Debug)]
pub struct SupplementCertificate {
    pub g: FiniteGroup,
    pub k: Subset,
    pub radical: Subset,
    pub m: Subset,
    pub l: Subset,
    pub factors: Vec<Subset>,
    pub p: u64,
    /// Generators of the cyclic Sylow `p`-subgroups of the factors.
    pub s_bar: Vec<Elem>,
    pub s: Elem,
    pub t: Subset,
    pub d: Subset,
    pub n: Subset,
    pub d1_bar: Elem,
    pub d2_bar: Elem,
    pub d1: Elem,
    pub d2: Elem,
    pub quotient_map: GroupMap,
}

impl SupplementCertificate {
    pub fn quotient(&self) -> &FiniteGroup {
        self.quotient_map.target()
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    /// `key=value` lines, elements given by id.
    pub fn lines(&self) -> Vec<(String, String)> {
        let g = &self.g;
        let ids = |s: &Subset| s.len().to_string();
        vec![
            ("group".into(), g.label().to_string()),
            ("order".into(), g.order().to_string()),
            ("K".into(), ids(&self.k)),
            ("radical".into(), ids(&self.radical)),
            ("M".into(), ids(&self.m)),
            ("L".into(), ids(&self.l)),
            ("r".into(), self.r().to_string()),
            ("factor_order".into(), self.factors[0].len().to_string()),
            ("p".into(), self.p.to_string()),
            ("s".into(), format!("{} {}", self.s.0, g.describe(self.s))),
            ("T".into(), ids(&self.t)),
            ("D".into(), ids(&self.d)),
            ("N".into(), ids(&self.n)),
            (
                "d1".into(),
                format!("{} {}", self.d1.0, g.describe(self.d1)),
            ),
            (
                "d2".into(),
                format!("{} {}", self.d2.0, g.describe(self.d2)),
            ),
            ("LN".into(), g.product_order(&self.l, &self.n).to_string()),
        ]
    }
}

/// The least `L` (by member list) among normal subgroups minimal subject
/// to `M < L <= K`.
fn minimal_layer(g: &FiniteGroup, k: &Subset, m: &Subset) -> Subset {
    let mgens = g.subgroup_generators(m);
    let mut candidates: Vec<Subset> = Vec::new();
    for class in g.conjugacy_classes() {
        let x = class[0];
        if !k.contains(x) || m.contains(x) {
            continue;
        }
        let c = g.normal_closure(mgens.iter().copied().chain([x]));
        if !candidates.contains(&c) {
            candidates.push(c);
        }
    }
    let mut minimal: Vec<Subset> = candidates
        .iter()
        .filter(|c| {
            !candidates
                .iter()
                .any(|d| d.len() < c.len() && d.is_subset_of(c))
        })
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.cmp_members(b));
    minimal.swap_remove(0)
}

/// Simple direct factors of `lbar`, a minimal normal subgroup of `q`,
/// sorted by member list.
fn simple_factors(q: &FiniteGroup, lbar: &Subset) -> Result<Vec<Subset>> {
    let (lg, back) = q.subgroup_as_group(lbar, "L/M")?;
    let mut factors: Vec<Subset> = minimal_normal_subgroups(&lg)
        .into_iter()
        .map(|f| Subset::from_elems(q.order(), f.iter().map(|x| back[x.index()])))
        .collect();
    factors.sort_by(|a, b| a.cmp_members(b));
    let mut product = 1u128;
    for f in &factors {
        if f.len() != factors[0].len() || q.is_abelian_subgroup(f) || !is_simple_subgroup(q, f) {
            return Err(Error::check(
                "factors",
                format!(
                    "L/M has a factor of order {} that is not non-abelian simple",
                    f.len()
                ),
            ));
        }
        product *= f.len() as u128;
    }
    if product != lbar.len() as u128 {
        return Err(Error::check(
            "factors",
            format!(
                "factor orders multiply to {product}, |L/M| = {}",
                lbar.len()
            ),
        ));
    }
    Ok(factors)
}

/// Least-id pair generating `s` (a simple subgroup of `q`) with trivial
/// centralizer in `s`.
fn generating_pair(q: &FiniteGroup, s: &Subset) -> Result<(Elem, Elem)> {
    let members = s.members();
    for &a in &members[1..] {
        for &b in &members[1..] {
            if a == b {
                continue;
            }
            if q.closure_bounded(&[a, b], s.len())
                .is_some_and(|c| c.len() == s.len())
                && q.centralizer_of(&[a, b]).intersection(s).is_trivial()
            {
                return Ok((a, b));
            }
        }
    }
    Err(Error::NotFound(
        "two-element generating set of a simple factor".into(),
    ))
}

/// Builds and verifies the certificate for `(G, K)`.
pub fn build_supplement(
    g: &FiniteGroup,
    k: &Subset,
    limits: &Limits,
) -> Result<SupplementCertificate> {
    if g.order() > limits.element_cap {
        return Err(Error::too_large(
            g.label(),
            g.order() as u128,
            limits.element_cap,
        ));
    }
    if k.parent_order() != g.order() || g.closure_of(k) != *k {
        return Err(Error::Invalid("K is not a subgroup of G".into()));
    }
    g.ensure_normal(k)?;
    let radical = soluble_radical(g);
    if k.is_subset_of(&radical) {
        return Err(Error::InsideRadical);
    }
    let m = k.intersection(&radical);
    let l = minimal_layer(g, k, &m);
    let (q, pi) = quotient(g, &m, limits)?;
    let lbar = pi.image(&l);
    let factors = simple_factors(&q, &lbar)?;

    // Smallest prime whose Sylow subgroup is cyclic in every factor.
    let (p, s_bar) = prime_divisors(factors[0].len() as u64)
        .into_iter()
        .find_map(|p| {
            let gens: Option<Vec<Elem>> = factors
                .iter()
                .map(|f| {
                    let target = p_part(f.len() as u64, p) as usize;
                    f.iter().find(|&x| q.element_order(x) == target)
                })
                .collect();
            gens.map(|v| (p, v))
        })
        .ok_or(Error::NoCyclicSylow)?;
    let sbar = s_bar.iter().fold(q.identity(), |acc, &x| q.mul(acc, x));
    let s = pi.lift(sbar).ok_or(Error::NotMember(sbar))?;

    let tbar = Subset::from_predicate(q.order(), |x| {
        factors.iter().all(|f| q.conjugate_subset(f, x) == *f)
    });
    let t = pi.preimage(&tbar);
    let d = Subset::from_predicate(g.order(), |x| {
        t.contains(x) && m.contains(g.commutator(s, x))
    });
    let n = g.normalizer(&d);

    let (d1_bar, d2_bar) = generating_pair(&q, &factors[0])?;
    let d1 = pi.lift(d1_bar).ok_or(Error::NotMember(d1_bar))?;
    let d2 = pi.lift(d2_bar).ok_or(Error::NotMember(d2_bar))?;

    let cert = SupplementCertificate {
        g: g.clone(),
        k: k.clone(),
        radical,
        m,
        l,
        factors,
        p,
        s_bar,
        s,
        t,
        d,
        n,
        d1_bar,
        d2_bar,
        d1,
        d2,
        quotient_map: pi,
    };
    verify_invariants(&cert)?;
    Ok(cert)
}

/// Re-checks the defining properties of a certificate.
pub fn verify_invariants(c: &SupplementCertificate) -> Result<()> {
    let g = &c.g;
    let q = c.quotient();
    if c.m != c.k.intersection(&c.radical) {
        return Err(Error::check("M", "M differs from K ∩ R(G)"));
    }
    if !g.is_normal(&c.l) || !c.m.is_subset_of(&c.l) || c.m == c.l || !c.l.is_subset_of(&c.k) {
        return Err(Error::check(
            "L",
            "L is not a normal subgroup with M < L <= K",
        ));
    }
    for (f, &x) in c.factors.iter().zip(&c.s_bar) {
        let target = p_part(f.len() as u64, c.p) as usize;
        if !f.contains(x) || q.element_order(x) != target {
            return Err(Error::check(
                "sylow",
                format!(
                    "{} does not generate a Sylow {}-subgroup of its factor",
                    q.describe(x),
                    c.p
                ),
            ));
        }
    }
    if !c.d.is_subset_of(&c.t) {
        let w = c.d.difference(&c.t).least().unwrap_or(Elem::IDENTITY);
        return Err(Error::check(
            "D",
            format!("{} lies in D but not in T", g.describe(w)),
        ));
    }
    if let Some(x) = c.d.iter().find(|&x| !c.m.contains(g.commutator(c.s, x))) {
        return Err(Error::check(
            "D",
            format!("[s, {}] is outside M", g.describe(x)),
        ));
    }
    if c.n.is_full() {
        return Err(Error::check("supplement", "N_G(D) is all of G"));
    }
    for (name, sub) in [("L", &c.l), ("K", &c.k)] {
        let size = g.product_order(sub, &c.n);
        if size != g.order() {
            return Err(Error::check(
                "supplement",
                format!("|{name}·N| = {size}, |G| = {}", g.order()),
            ));
        }
    }
    Ok(())
}
