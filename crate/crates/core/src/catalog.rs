//! Named sentences about groups, plus the semantic commutator-product test
//! that stands in for the long solubility sentence.

use rayon::prelude::*;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subset};
use crate::limits::Limits;
use crate::logic::{parse, Formula, Term};

/// A named formula.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: &'static str,
    pub formula: Formula,
}

/// What a catalog name refers to.
#[derive(Clone, Debug)]
pub enum CatalogItem {
    Formula(CatalogEntry),
    /// The commutator-product test with `k` factors, computed semantically.
    Sigma(usize),
}

fn x() -> Term {
    Term::var("x")
}

fn y() -> Term {
    Term::var("y")
}

/// `∀x (x^n = 1 → x = 1)`: no element of order dividing `n` but 1.
pub fn coprime_sentence(n: i64) -> Formula {
    Formula::forall("x", x().pow(n).eq(Term::One).implies(x().eq(Term::One)))
}

/// `∀x ∃y x = y^n`: the `n`-th power map is onto.
pub fn divisible_sentence(n: i64) -> Formula {
    Formula::forall("x", Formula::exists("y", x().eq(y().pow(n))))
}

/// `∀x (x = 1 ∨ ∃y [x, x^y] ≠ 1)`.
pub fn radical_trivial_sentence() -> Formula {
    let witness = Formula::exists("y", x().comm(x().conj(y())).ne(Term::One));
    Formula::forall("x", Formula::or([x().eq(Term::One), witness]))
}

/// `∀x ∀y (([x^p, y] = 1 ∧ [x, y^q] = 1) → [x, y] = 1)`.
pub fn f_pq(p: u64, q: u64) -> Result<Formula> {
    if p == q || !is_prime(p) || !is_prime(q) {
        return Err(Error::NotDistinctPrimes { p, q });
    }
    let hyp = Formula::and([
        x().pow(p as i64).comm(y()).eq(Term::One),
        x().comm(y().pow(q as i64)).eq(Term::One),
    ]);
    Ok(Formula::forall_all(
        &["x", "y"],
        hyp.implies(x().comm(y()).eq(Term::One)),
    ))
}

/// Conjunction of `F_{p,q}` over pairs `p < q` from `primes` (duplicates
/// ignored). With fewer than two primes this is `1 = 1`.
pub fn nilpotence_sentence(primes: &[u64]) -> Result<Formula> {
    let mut ps = primes.to_vec();
    ps.sort_unstable();
    ps.dedup();
    if let Some(&bad) = ps.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    let mut parts = Vec::new();
    for (i, &p) in ps.iter().enumerate() {
        for &q in &ps[i + 1..] {
            parts.push(f_pq(p, q)?);
        }
    }
    Ok(Formula::and(parts))
}

/// `∀x ∀y ((x^2 = 1 ∧ y^3 = 1) → xy = yx)`.
pub fn two_three_commute_sentence() -> Formula {
    let hyp = Formula::and([x().pow(2).eq(Term::One), y().pow(3).eq(Term::One)]);
    Formula::forall_all(&["x", "y"], hyp.implies(x().mul(y()).eq(y().mul(x()))))
}

/// `∃x_1 … ∃x_n (⋀ x_i ≠ 1 ∧ ∀y ⋀_{i<j} [x_i, y x_j y^-1] = 1)`: there are
/// `n` nontrivial elements whose normal closures commute pairwise.
pub fn min_factors_sentence(n: usize) -> Formula {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut parts: Vec<Formula> = names.iter().map(|v| Term::var(v).ne(Term::One)).collect();
    let mut comms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let conj = y().mul(Term::var(&names[j])).mul(y().inv());
            comms.push(Term::var(&names[i]).comm(conj).eq(Term::One));
        }
    }
    if !comms.is_empty() {
        parts.push(Formula::forall("y", Formula::and(comms)));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Formula::exists_all(&refs, Formula::and(parts))
}

/// Resolves a catalog name such as `coprime:5`, `Fpq:2,3`, `nilpotent:2,3,5`,
/// `sigma:56`, `minfactors:2`, `radtrivial` or `two3commute`.
pub fn lookup(name: &str) -> Result<CatalogItem> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h.trim(), Some(a.trim())),
        None => (name.trim(), None),
    };
    let ints = |a: Option<&str>| -> Result<Vec<u64>> {
        let a = a.ok_or_else(|| Error::Invalid(format!("`{head}` needs an argument")))?;
        if a.is_empty() {
            return Ok(Vec::new());
        }
        a.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Invalid(format!("bad number {t:?} in `{name}`")))
            })
            .collect()
    };
    let one = |a: Option<&str>| -> Result<u64> {
        let v = ints(a)?;
        match v[..] {
            [n] if n >= 1 => Ok(n),
            _ => Err(Error::Invalid(format!(
                "`{head}` takes one positive integer"
            ))),
        }
    };
    let entry = |description, formula| {
        Ok(CatalogItem::Formula(CatalogEntry {
            name: name.trim().to_string(),
            description,
            formula,
        }))
    };
    match head {
        "coprime" => entry(
            "no nontrivial x with x^n = 1",
            coprime_sentence(one(arg)? as i64),
        ),
        "divisible" => entry(
            "every element is an n-th power",
            divisible_sentence(one(arg)? as i64),
        ),
        "radtrivial" => entry("trivial soluble radical", radical_trivial_sentence()),
        "Fpq" => match ints(arg)?[..] {
            [p, q] => entry("commuting modulo p-th and q-th powers", f_pq(p, q)?),
            _ => Err(Error::Invalid("`Fpq` takes two primes".into())),
        },
        "nilpotent" => entry(
            "nilpotence among groups of the listed primes",
            nilpotence_sentence(&ints(arg)?)?,
        ),
        "two3commute" => entry(
            "involutions commute with elements of order 3",
            two_three_commute_sentence(),
        ),
        "minfactors" => entry(
            "n nontrivial elements with pairwise commuting normal closures",
            min_factors_sentence(one(arg)? as usize),
        ),
        "sigma" => Ok(CatalogItem::Sigma(one(arg)? as usize)),
        _ => Err(Error::Invalid(format!("unknown catalog name `{name}`"))),
    }
}

/// A catalog name (no spaces and no `=`), or else formula text.
pub fn formula_from_text(text: &str) -> Result<CatalogItem> {
    let t = text.trim();
    if !t.contains(char::is_whitespace) && !t.contains('=') {
        return lookup(t);
    }
    Ok(CatalogItem::Formula(CatalogEntry {
        name: t.to_string(),
        description: "formula",
        formula: parse(t)?,
    }))
}

fn commutators_within(g: &FiniteGroup, class: &[Elem]) -> Subset {
    let mut c = Subset::empty(g.order());
    for &a in class {
        for &b in class {
            c.insert(g.commutator(a, b));
        }
    }
    c
}

/// For one class representative `r`, the least `i ≤ k` with `r` a product
/// of `i` commutators of elements of its class.
fn first_failure_in_class(g: &FiniteGroup, class: &[Elem], k: usize) -> Option<usize> {
    let r = class[0];
    let c = commutators_within(g, class);
    let mut p = c.clone();
    for i in 1..=k {
        if p.contains(r) {
            return Some(i);
        }
        if i == k {
            break;
        }
        let next = g.product_set(&p, &c);
        if next == p {
            return None;
        }
        p = next;
    }
    None
}

fn sigma_cap(g: &FiniteGroup, limits: &Limits) -> Result<()> {
    if g.order() > limits.sigma_cap {
        return Err(Error::too_large(
            format!("commutator products in {}", g.label()),
            g.order(),
            limits.sigma_cap,
        ));
    }
    Ok(())
}

/// Least `i ≤ k` such that some `g ≠ 1` is a product of `i` commutators
/// `[x, y]` with `x, y` conjugate to `g`.
pub fn sigma_first_failure(g: &FiniteGroup, k: usize, limits: &Limits) -> Result<Option<usize>> {
    if k == 0 {
        return Err(Error::Invalid("commutator count must be at least 1".into()));
    }
    sigma_cap(g, limits)?;
    let classes = g.conjugacy_classes();
    Ok(classes[1..]
        .par_iter()
        .filter_map(|c| first_failure_in_class(g, c, k))
        .min())
}

/// True iff no `g ≠ 1` is a product of `k` commutators of conjugates of `g`.
pub fn sigma_holds(g: &FiniteGroup, k: usize, limits: &Limits) -> Result<bool> {
    Ok(sigma_first_failure(g, k, limits)?.is_none())
}

fn scan_cap(g: &FiniteGroup, limits: &Limits) -> Result<()> {
    if g.order() > limits.table_cap {
        return Err(Error::too_large(
            format!("commutator scan of {}", g.label()),
            g.order(),
            limits.table_cap,
        ));
    }
    Ok(())
}

/// Every element is a single commutator.
pub fn ore_check(g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    scan_cap(g, limits)?;
    // The set of commutators is a union of classes, and [x,y]^h = [x^h,y^h],
    // so it suffices to let x run over class representatives.
    let reps = g.class_representatives();
    let found: Vec<Subset> = reps
        .par_iter()
        .map(|&r| {
            let mut s = Subset::empty(g.order());
            for y in g.elements() {
                s.insert(g.commutator(r, y));
            }
            s
        })
        .collect();
    let all = found
        .iter()
        .fold(Subset::empty(g.order()), |a, b| a.union(b));
    Ok(reps
        .iter()
        .all(|&c| g.conjugacy_class(c).iter().any(|z| all.contains(z))))
}

/// No nontrivial element commutes with all of its conjugates.
pub fn cc_check(g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    scan_cap(g, limits)?;
    let reps = g.class_representatives();
    Ok(reps[1..].par_iter().all(|&r| {
        g.elements()
            .any(|y| !g.commutator(r, g.conjugate(r, y)).is_identity())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, symmetric};
    use crate::logic::{eval, parse, EvalConfig, OracleTable, Valuation};

    fn l() -> Limits {
        Limits::default()
    }

    fn holds(g: &FiniteGroup, f: &Formula) -> bool {
        eval(
            g,
            f,
            &Valuation::new(),
            &OracleTable::standard(g),
            &EvalConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn entries_round_trip_through_the_grammar() {
        let mut fs = vec![
            coprime_sentence(3),
            divisible_sentence(2),
            radical_trivial_sentence(),
            f_pq(2, 3).unwrap(),
            nilpotence_sentence(&[2, 3, 5]).unwrap(),
            nilpotence_sentence(&[7]).unwrap(),
            two_three_commute_sentence(),
        ];
        fs.extend((1..=4).map(min_factors_sentence));
        for f in fs {
            assert_eq!(parse(&f.to_string()).unwrap(), f, "{f}");
        }
    }

    #[test]
    fn radical_sentence_text() {
        assert_eq!(
            radical_trivial_sentence().to_string(),
            "A x. x = 1 | (E y. [x, x^y] != 1)"
        );
    }

    #[test]
    fn coprime_examples() {
        let c6 = cyclic(6, &l()).unwrap();
        assert!(holds(&c6, &coprime_sentence(5)));
        assert!(!holds(&c6, &coprime_sentence(3)));
        // x^1 = 1 -> x = 1 is a tautology.
        assert!(holds(&c6, &coprime_sentence(1)));
        assert!(holds(&cyclic(1, &l()).unwrap(), &coprime_sentence(1)));
    }

    #[test]
    fn divisible_examples() {
        assert!(holds(&cyclic(5, &l()).unwrap(), &divisible_sentence(2)));
        assert!(!holds(&cyclic(4, &l()).unwrap(), &divisible_sentence(2)));
        assert!(holds(&symmetric(3, &l()).unwrap(), &divisible_sentence(1)));
    }

    #[test]
    fn fpq_examples() {
        let s3 = symmetric(3, &l()).unwrap();
        assert!(!holds(&s3, &f_pq(2, 3).unwrap()));
        assert!(holds(&cyclic(12, &l()).unwrap(), &f_pq(2, 3).unwrap()));
        assert!(matches!(f_pq(2, 2), Err(Error::NotDistinctPrimes { .. })));
        assert!(matches!(f_pq(2, 4), Err(Error::NotDistinctPrimes { .. })));
    }

    #[test]
    fn nilpotence_examples() {
        let s3 = symmetric(3, &l()).unwrap();
        assert!(!holds(&s3, &nilpotence_sentence(&[2, 3]).unwrap()));
        assert!(holds(
            &cyclic(12, &l()).unwrap(),
            &nilpotence_sentence(&[2, 3]).unwrap()
        ));
        assert!(holds(&s3, &nilpotence_sentence(&[3]).unwrap()));
    }

    #[test]
    fn two_three_examples() {
        assert!(!holds(
            &symmetric(3, &l()).unwrap(),
            &two_three_commute_sentence()
        ));
        assert!(holds(
            &cyclic(8, &l()).unwrap(),
            &two_three_commute_sentence()
        ));
    }

    #[test]
    fn min_factors_small() {
        let a5 = alternating(5, &l()).unwrap();
        assert!(holds(&a5, &min_factors_sentence(1)));
        assert!(!holds(&a5, &min_factors_sentence(2)));
        assert!(!holds(&cyclic(1, &l()).unwrap(), &min_factors_sentence(1)));
    }

    #[test]
    fn sigma_examples() {
        assert!(sigma_holds(&symmetric(4, &l()).unwrap(), 56, &l()).unwrap());
        let a5 = alternating(5, &l()).unwrap();
        assert!(!sigma_holds(&a5, 56, &l()).unwrap());
        assert!(sigma_holds(&cyclic(1, &l()).unwrap(), 3, &l()).unwrap());
        // Some g != 1 of A5 is itself a commutator of two of its conjugates.
        let witness = a5.elements().skip(1).any(|g| {
            let class = a5.conjugacy_class(g).members();
            class
                .iter()
                .any(|&x| class.iter().any(|&y| a5.commutator(x, y) == g))
        });
        assert!(witness);
        assert_eq!(sigma_first_failure(&a5, 56, &l()).unwrap(), Some(1));
        assert!(!sigma_holds(&a5, 1, &l()).unwrap());
        assert!(sigma_first_failure(&a5, 0, &l()).is_err());
    }

    #[test]
    fn ore_and_cc() {
        let a5 = alternating(5, &l()).unwrap();
        assert!(ore_check(&a5, &l()).unwrap());
        assert!(cc_check(&a5, &l()).unwrap());
        assert!(!ore_check(&symmetric(5, &l()).unwrap(), &l()).unwrap());
        assert!(!cc_check(&symmetric(3, &l()).unwrap(), &l()).unwrap());
    }

    #[test]
    fn lookup_names() {
        assert!(matches!(lookup("sigma:56"), Ok(CatalogItem::Sigma(56))));
        assert!(matches!(lookup("Fpq:2,3"), Ok(CatalogItem::Formula(_))));
        assert!(matches!(lookup("nilpotent:2"), Ok(CatalogItem::Formula(_))));
        assert!(lookup("coprime").is_err());
        assert!(lookup("bogus:1").is_err());
        assert!(matches!(
            formula_from_text("A x. x = x"),
            Ok(CatalogItem::Formula(_))
        ));
    }
}
