//! Group corpora and the check suites run over them.
//!
//! A corpus file holds one group per line in the group-spec language,
//! usually as `label = expr`. A line `%caps table=N lattice=N sigma=N`
//! sets the caps. Blank lines and `#` comments are ignored.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use crate::analysis::{
    check_condition_a, decompose_semisimple, frattini, has_proper_supplement, is_nilpotent,
    is_nilpotent_subgroup, is_soluble, normal_subgroups, soluble_radical, subgroup_lattice,
};
use crate::arith::{gcd, prime_divisors};
use crate::catalog::{
    cc_check, coprime_sentence, divisible_sentence, nilpotence_sentence, ore_check,
    radical_trivial_sentence, sigma_first_failure,
};
use crate::error::{Error, Result};
use crate::group::spec::SpecEnv;
use crate::group::{FiniteGroup, Subset};
use crate::limits::Limits;
use crate::logic::{eval, EvalConfig, Formula, OracleTable, Valuation};
use crate::supplement::{build_supplement, lemma62_checks, standard_oracles, verify_formula_level};

pub const DEFAULT_CORPUS: &str = include_str!("../data/default_corpus.txt");

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub spec: String,
    pub group: FiniteGroup,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub limits: Limits,
}

fn parse_caps(line: &str, limits: &mut Limits, lineno: usize) -> Result<()> {
    for item in line.split_whitespace() {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Spec(format!("line {lineno}: bad cap `{item}`")))?;
        let v: usize = v
            .parse()
            .map_err(|_| Error::Spec(format!("line {lineno}: bad cap value `{item}`")))?;
        match k {
            "table" => limits.table_cap = v,
            "lattice" => limits.lattice_cap = v,
            "sigma" => limits.sigma_cap = v,
            "elements" => limits.element_cap = v,
            _ => return Err(Error::Spec(format!("line {lineno}: unknown cap `{k}`"))),
        }
    }
    Ok(())
}

impl Corpus {
    /// Parses corpus text. Caps given in the text override `limits`.
    pub fn parse(text: &str, limits: &Limits) -> Result<Corpus> {
        let mut limits = limits.clone();
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.strip_prefix("%caps") {
                Some(rest) => parse_caps(rest, &mut limits, i + 1)?,
                None => lines.push((i + 1, line.to_string())),
            }
        }
        let mut env = SpecEnv::new(&limits);
        let mut labels = BTreeSet::new();
        let mut entries = Vec::with_capacity(lines.len());
        for (lineno, line) in lines {
            let label = match line.split_once('=') {
                Some((l, _))
                    if !l.trim().is_empty()
                        && l.trim().chars().all(|c| c.is_alphanumeric() || c == '_') =>
                {
                    l.trim().to_string()
                }
                _ => line.clone(),
            };
            if !labels.insert(label.clone()) {
                return Err(Error::Spec(format!(
                    "line {lineno}: duplicate label `{label}`"
                )));
            }
            let group = env.line(&line).map_err(|e| match e {
                Error::Spec(m) => Error::Spec(format!("line {lineno}: {m}")),
                other => other,
            })?;
            entries.push(CorpusEntry {
                label,
                spec: line,
                group: group.clone(),
            });
        }
        Ok(Corpus { entries, limits })
    }

    pub fn default_corpus(limits: &Limits) -> Result<Corpus> {
        Self::parse(DEFAULT_CORPUS, limits)
    }

    pub fn load(path: &Path, limits: &Limits) -> Result<Corpus> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, limits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Lemma32,
    Sentences,
    Sigma,
    Frattini,
    Supplement,
    Prop51,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Lemma32,
        Suite::Sentences,
        Suite::Sigma,
        Suite::Frattini,
        Suite::Supplement,
        Suite::Prop51,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma32 => "lemma32",
            Suite::Sentences => "sentences",
            Suite::Sigma => "sigma",
            Suite::Frattini => "frattini",
            Suite::Supplement => "supplement",
            Suite::Prop51 => "prop51",
        }
    }

    /// A suite name, or `all`.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Self::ALL.to_vec());
        }
        Self::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|s| vec![*s])
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{name}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug)]
pub struct SuiteLine {
    pub suite: Suite,
    pub item: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for SuiteLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{} {} {s}", self.suite.name(), self.item)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub lines: Vec<SuiteLine>,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.lines.iter().filter(|l| l.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteLine> {
        self.lines.iter().filter(|l| l.status == Status::Fail)
    }
}

/// Pass/fail from a comparison, skip on cap errors.
fn outcome(r: Result<(bool, String)>) -> Result<(Status, String)> {
    match r {
        Ok((true, d)) => Ok((Status::Pass, d)),
        Ok((false, d)) => Ok((Status::Fail, d)),
        Err(e @ (Error::TooLarge { .. } | Error::DepthBudgetExceeded { .. })) => {
            Ok((Status::Skip, e.to_string()))
        }
        Err(e) => Err(e),
    }
}

fn truth(g: &FiniteGroup, f: &Formula, limits: &Limits) -> Result<bool> {
    eval(
        g,
        f,
        &Valuation::new(),
        &OracleTable::standard(g),
        &EvalConfig::default().with_budget(limits.work_budget),
    )
}

/// Nilpotence versus the conjunction of `F_{p,q}` over the primes of `|G|`.
pub fn check_lemma32(g: &FiniteGroup, limits: &Limits) -> Result<(bool, String)> {
    let primes = prime_divisors(g.order() as u64);
    let s = truth(g, &nilpotence_sentence(&primes)?, limits)?;
    let n = is_nilpotent(g);
    Ok((s == n, format!("nilpotent={n} sentence={s}")))
}

/// Radical sentence, and coprime/divisible sentences for `n` in `2..=30`.
pub fn check_sentences(g: &FiniteGroup, limits: &Limits) -> Result<(bool, String)> {
    let rad_s = truth(g, &radical_trivial_sentence(), limits)?;
    let rad_t = soluble_radical(g).is_trivial();
    if rad_s != rad_t {
        return Ok((
            false,
            format!("radical sentence {rad_s}, R(G) trivial {rad_t}"),
        ));
    }
    for n in 2..=30i64 {
        let want = gcd(g.order() as u64, n as u64) == 1;
        let c = truth(g, &coprime_sentence(n), limits)?;
        let d = truth(g, &divisible_sentence(n), limits)?;
        if c != want || d != want {
            return Ok((
                false,
                format!("n={n}: coprime={c} divisible={d} gcd_is_1={want}"),
            ));
        }
    }
    Ok((true, format!("radical_trivial={rad_t}")))
}

/// `σ_56` against solubility, and monotonicity in `k` up to 8.
pub fn check_sigma(g: &FiniteGroup, limits: &Limits) -> Result<(bool, String)> {
    if g.order() > 200 {
        return Err(Error::too_large(
            format!("sigma suite on {}", g.label()),
            g.order() as u128,
            200,
        ));
    }
    let first = sigma_first_failure(g, 56, limits)?;
    let sol = is_soluble(g);
    if first.is_none() != sol {
        return Ok((
            false,
            format!("sigma_56 first failure {first:?}, soluble {sol}"),
        ));
    }
    let holds: Vec<bool> = (1..=8)
        .map(|k| sigma_first_failure(g, k, limits).map(|f| f.is_none()))
        .collect::<Result<_>>()?;
    if let Some(k) = (1..8).find(|&k| holds[k] && !holds[k - 1]) {
        return Ok((false, format!("sigma_{} holds but sigma_{k} fails", k + 1)));
    }
    Ok((
        true,
        format!(
            "soluble={sol} first_failure={}",
            first.map_or("none".into(), |k| k.to_string())
        ),
    ))
}

/// `x` is a non-generator: every subgroup `H` with `<H, x> = G` is `G`.
fn non_generators(g: &FiniteGroup, lattice: &[Subset]) -> Subset {
    Subset::from_predicate(g.order(), |x| {
        lattice.iter().all(|h| {
            h.is_full()
                || h.contains(x)
                || !g
                    .closure(g.subgroup_generators(h).into_iter().chain([x]))
                    .is_full()
        })
    })
}

/// Frattini properties (order at most 64) and supplements to normal
/// non-nilpotent subgroups (order at most 200).
pub fn check_frattini(g: &FiniteGroup, limits: &Limits) -> Result<(bool, String)> {
    let mut notes = Vec::new();
    if g.order() <= 64 {
        let lattice = subgroup_lattice(g, limits)?;
        let phi = frattini(g, limits)?;
        if !is_nilpotent_subgroup(g, &phi) {
            return Ok((
                false,
                format!("Frattini subgroup of order {} is not nilpotent", phi.len()),
            ));
        }
        let ng = non_generators(g, &lattice);
        if ng != phi {
            let w = ng.difference(&phi).least().or(phi.difference(&ng).least());
            return Ok((
                false,
                format!(
                    "Frattini differs from non-generators at {:?}",
                    w.map(|e| g.describe(e))
                ),
            ));
        }
        notes.push(format!("frattini={}", phi.len()));
    }
    if g.order() <= 200 {
        let mut count = 0;
        for k in normal_subgroups(g) {
            if is_nilpotent_subgroup(g, &k) {
                continue;
            }
            count += 1;
            if !has_proper_supplement(g, &k, limits)? {
                return Ok((
                    false,
                    format!("normal K of order {} has no proper supplement", k.len()),
                ));
            }
        }
        notes.push(format!("non_nilpotent_normal={count}"));
    }
    if notes.is_empty() {
        return Err(Error::too_large(
            format!("frattini suite on {}", g.label()),
            g.order() as u128,
            200,
        ));
    }
    Ok((true, notes.join(" ")))
}

/// Supplement certificates for each normal `K` outside the radical.
pub fn check_supplement(g: &FiniteGroup, limits: &Limits) -> Result<(bool, String)> {
    if g.order() > 200 {
        return Err(Error::too_large(
            format!("supplement suite on {}", g.label()),
            g.order() as u128,
            200,
        ));
    }
    let radical = soluble_radical(g);
    let mut count = 0;
    for k in normal_subgroups(g) {
        if k.is_subset_of(&radical) {
            continue;
        }
        count += 1;
        let c = build_supplement(g, &k, limits)?;
        let r = lemma62_checks(&c);
        if !r.passed() {
            let bad = r
                .clauses
                .iter()
                .find(|c| !c.passed)
                .map(ToString::to_string)
                .unwrap_or_default();
            return Ok((false, format!("|K|={}: {bad}", k.len())));
        }
        if g.order() <= 120 {
            let cfg = EvalConfig::default().with_budget(limits.work_budget);
            match verify_formula_level(&c, &standard_oracles(&c), &cfg) {
                Ok(_) => {}
                Err(Error::CheckFailed { clause, detail }) => {
                    return Ok((
                        false,
                        format!("|K|={} formula level ({clause}): {detail}", k.len()),
                    ))
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok((true, format!("certificates={count}")))
}

/// Semisimplicity against conditions (a), (b) and (c).
pub fn check_prop51(g: &FiniteGroup, limits: &Limits) -> Result<(bool, String)> {
    let a = check_condition_a(g, limits)?;
    let b = ore_check(g, limits)?;
    let c = cc_check(g, limits)?;
    let d = decompose_semisimple(g);
    Ok((
        d.is_semisimple == (a && b && c),
        format!(
            "semisimple={} a={a} b={b} c={c} factors={}",
            d.is_semisimple,
            d.factors.len()
        ),
    ))
}

pub fn run_check(suite: Suite, g: &FiniteGroup, limits: &Limits) -> Result<(bool, String)> {
    match suite {
        Suite::Lemma32 => check_lemma32(g, limits),
        Suite::Sentences => check_sentences(g, limits),
        Suite::Sigma => check_sigma(g, limits),
        Suite::Frattini => check_frattini(g, limits),
        Suite::Supplement => check_supplement(g, limits),
        Suite::Prop51 => check_prop51(g, limits),
    }
}

/// Runs `suites` over every entry; lines come out in corpus order, suite by
/// suite. Errors other than cap overruns are reported as failures.
pub fn run_suites(corpus: &Corpus, suites: &[Suite]) -> SuiteReport {
    let jobs: Vec<(Suite, &CorpusEntry)> = suites
        .iter()
        .flat_map(|&s| corpus.entries.iter().map(move |e| (s, e)))
        .collect();
    let lines = jobs
        .par_iter()
        .map(|&(suite, e)| {
            let (status, detail) = match outcome(run_check(suite, &e.group, &corpus.limits)) {
                Ok(x) => x,
                Err(err) => (Status::Fail, format!("error: {err}")),
            };
            SuiteLine {
                suite,
                item: e.label.clone(),
                status,
                detail,
            }
        })
        .collect();
    SuiteReport { lines }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_parses() {
        let c = Corpus::default_corpus(&Limits::default()).unwrap();
        assert_eq!(c.entries.len(), 29 + 2 + 16 + 8 + 4 + 1);
        assert_eq!(c.limits.lattice_cap, 200);
        let s4v4 = c.entries.iter().find(|e| e.label == "S4modV4").unwrap();
        assert_eq!(s4v4.group.order(), 6);
    }

    #[test]
    fn duplicates_and_bad_lines() {
        let l = Limits::default();
        assert!(matches!(
            Corpus::parse("a = cyclic 2\na = cyclic 3", &l),
            Err(Error::Spec(_))
        ));
        assert!(matches!(
            Corpus::parse("a = cyclic two", &l),
            Err(Error::Spec(_))
        ));
        assert!(matches!(
            Corpus::parse("%caps nonsense=1", &l),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn trivial_corpus_passes_everything() {
        let c = Corpus::parse("one = cyclic 1", &Limits::default()).unwrap();
        let r = run_suites(&c, &Suite::ALL);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
