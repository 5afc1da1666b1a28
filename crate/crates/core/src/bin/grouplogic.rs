use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grouplogic::aee::{holds, sweep};
use grouplogic::analysis::{
    decompose_semisimple, derived_series, derived_subgroup, fitting, frattini,
    lower_central_series, soluble_radical,
};
use grouplogic::catalog::{formula_from_text, sigma_first_failure, CatalogItem};
use grouplogic::constructions::{
    build_hn, central_commutators, comlength_min_n, family, field_of_order, named_group, split_wn,
    thm_d_finite_instance, PerfectOptions,
};
use grouplogic::corpus::{run_suites, Corpus, Status, Suite};
use grouplogic::group::spec::SpecEnv;
use grouplogic::logic::{
    definable_set, eval_with_stats, parse, EvalConfig, OracleTable, Valuation,
};
use grouplogic::supplement::{
    build_supplement, lemma62_checks, standard_oracles, verify_formula_level,
};
use grouplogic::{Error, FiniteGroup, Limits, Result, Subset};

#[derive(Parser)]
#[command(
    name = "grouplogic",
    version,
    about = "First-order model checking on finite groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest order stored as a full multiplication table.
    #[arg(long, global = true)]
    table_cap: Option<usize>,
    /// Largest order for subgroup-lattice computations.
    #[arg(long, global = true)]
    lattice_cap: Option<usize>,
    /// Largest number of commutator factors for sigma checks.
    #[arg(long, global = true)]
    sigma_cap: Option<usize>,
    /// Atomic evaluation steps before giving up.
    #[arg(long, global = true)]
    work_budget: Option<u64>,
    /// Print one JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Allow characteristic 3 in the perfect-group construction.
    #[arg(long, global = true)]
    allow_char3: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Truth of a sentence (formula text or catalog name) in a group.
    Eval {
        group: String,
        formula: String,
        /// Free-variable values as name=element.
        #[arg(long = "param", value_name = "NAME=ELEM")]
        params: Vec<String>,
    },
    /// The set defined by a formula with one distinguished variable.
    Definable {
        group: String,
        formula: String,
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long = "param", value_name = "NAME=ELEM")]
        params: Vec<String>,
    },
    /// Structural invariants.
    Analyze { group: String, which: Analysis },
    /// First k at which the commutator-product test fails, up to --k.
    Sigma {
        group: String,
        #[arg(long, default_value_t = 56)]
        k: usize,
    },
    /// Proper supplement certificate for a normal subgroup K.
    Supplement {
        group: String,
        /// `all`, `derived`, `gens: e1, e2, ...` (normal closure) or
        /// `formula: <text in x>`.
        #[arg(long)]
        k: String,
        /// Also evaluate the defining formulas.
        #[arg(long)]
        formula_level: bool,
    },
    /// Builds a construction: any group token, or `comlength:k`,
    /// `split:n,q`, `central:n,q`, `thmD:n,p`, `perfect:n,q`.
    Construct { token: String },
    /// Evaluates a sentence along two group families.
    Sweep {
        #[arg(long)]
        sentence: String,
        #[arg(long)]
        fam_a: String,
        #[arg(long)]
        fam_b: String,
        /// Index range `a..b`, inclusive.
        #[arg(long)]
        range: String,
    },
    /// Runs check suites over a corpus file (`default` for the shipped one).
    Corpus {
        #[arg(default_value = "default")]
        file: String,
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Parses a formula and prints it back.
    Parse { formula: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Analysis {
    Radical,
    Fitting,
    Frattini,
    Series,
    Semisimple,
}

type Record = Vec<(String, String)>;

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

struct Ctx {
    limits: Limits,
    opts: PerfectOptions,
}

impl Ctx {
    fn group(&self, spec: &str) -> Result<FiniteGroup> {
        SpecEnv::new(&self.limits).with_options(self.opts).run(spec)
    }

    fn config(&self) -> EvalConfig {
        EvalConfig::default().with_budget(self.limits.work_budget)
    }
}

fn members(g: &FiniteGroup, s: &Subset) -> String {
    s.iter()
        .map(|e| g.describe(e))
        .collect::<Vec<_>>()
        .join(" ")
}

fn subset_record(g: &FiniteGroup, name: &str, s: &Subset) -> Record {
    let mut r = vec![kv(&format!("{name}.order"), s.len())];
    if s.len() <= 64 {
        r.push(kv(&format!("{name}.elements"), members(g, s)));
    }
    r
}

fn valuation(g: &FiniteGroup, params: &[String]) -> Result<Valuation> {
    params
        .iter()
        .map(|p| {
            let (name, elem) = p
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("parameter `{p}` is not name=element")))?;
            let e = g.parse_element(elem).ok_or_else(|| {
                Error::Invalid(format!("`{elem}` is not an element of {}", g.label()))
            })?;
            Ok((name.trim().to_string(), e))
        })
        .collect()
}

fn cmd_eval(
    ctx: &Ctx,
    group: &str,
    formula: &str,
    params: &[String],
    json: bool,
) -> Result<Record> {
    let g = ctx.group(group)?;
    let item = formula_from_text(formula)?;
    let start = Instant::now();
    let mut r = vec![kv("group", g.label()), kv("order", g.order())];
    match &item {
        CatalogItem::Formula(e) if !params.is_empty() || !e.formula.is_sentence() => {
            let v = valuation(&g, params)?;
            let (b, stats) = eval_with_stats(
                &g,
                &e.formula,
                &v,
                &OracleTable::standard(&g),
                &ctx.config(),
            )?;
            r.push(kv("truth", b));
            r.push(kv("steps", stats.steps));
        }
        _ => r.push(kv("truth", holds(&g, &item, &ctx.limits)?)),
    }
    if !json {
        r.push(kv("time_ms", start.elapsed().as_millis()));
    }
    Ok(r)
}

fn cmd_definable(
    ctx: &Ctx,
    group: &str,
    formula: &str,
    var: &str,
    params: &[String],
) -> Result<Record> {
    let g = ctx.group(group)?;
    let f = parse(formula)?;
    let v = valuation(&g, params)?;
    let s = definable_set(&g, &f, &v, var, &OracleTable::standard(&g), &ctx.config())?;
    let mut r = vec![kv("group", g.label())];
    r.extend(subset_record(&g, "set", &s));
    r.push(kv("subgroup", g.closure_of(&s) == s));
    Ok(r)
}

fn cmd_analyze(ctx: &Ctx, group: &str, which: Analysis) -> Result<Record> {
    let g = ctx.group(group)?;
    let mut r = vec![kv("group", g.label()), kv("order", g.order())];
    match which {
        Analysis::Radical => r.extend(subset_record(&g, "radical", &soluble_radical(&g))),
        Analysis::Fitting => r.extend(subset_record(&g, "fitting", &fitting(&g))),
        Analysis::Frattini => r.extend(subset_record(&g, "frattini", &frattini(&g, &ctx.limits)?)),
        Analysis::Series => {
            for (name, s) in [
                ("derived", derived_series(&g)),
                ("lower_central", lower_central_series(&g)),
            ] {
                let orders: Vec<String> = s.orders().iter().map(ToString::to_string).collect();
                r.push(kv(&format!("{name}.orders"), orders.join(" ")));
                r.push(kv(&format!("{name}.terminated"), s.terminated));
            }
        }
        Analysis::Semisimple => {
            let d = decompose_semisimple(&g);
            r.push(kv("semisimple", d.is_semisimple));
            r.push(kv("factors", d.factors.len()));
            for (i, f) in d.factors.iter().enumerate() {
                r.push(kv(&format!("factor.{}.order", i + 1), f.len()));
            }
            if let Some(w) = d.witness {
                r.push(kv("witness", w));
            }
        }
    }
    Ok(r)
}

fn cmd_sigma(ctx: &Ctx, group: &str, k: usize) -> Result<Record> {
    let g = ctx.group(group)?;
    let first = sigma_first_failure(&g, k, &ctx.limits)?;
    Ok(vec![
        kv("group", g.label()),
        kv("k", k),
        kv("holds", first.is_none()),
        kv(
            "first_failure",
            first.map_or("none".to_string(), |f| f.to_string()),
        ),
    ])
}

fn k_subgroup(ctx: &Ctx, g: &FiniteGroup, spec: &str) -> Result<Subset> {
    let spec = spec.trim();
    let k = if spec == "all" || spec == "G" {
        Subset::full(g.order())
    } else if spec == "derived" {
        derived_subgroup(g)
    } else if let Some(list) = spec.strip_prefix("gens:") {
        let elems = list
            .split(',')
            .map(|t| {
                g.parse_element(t).ok_or_else(|| {
                    Error::Invalid(format!("`{}` is not an element of {}", t.trim(), g.label()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        g.normal_closure(elems)
    } else if let Some(text) = spec.strip_prefix("formula:") {
        let s = definable_set(
            g,
            &parse(text)?,
            &Valuation::new(),
            "x",
            &OracleTable::standard(g),
            &ctx.config(),
        )?;
        if g.closure_of(&s) != s {
            return Err(Error::Invalid(
                "the formula does not define a subgroup".into(),
            ));
        }
        s
    } else {
        return Err(Error::Invalid(format!(
            "unknown subgroup spec `{spec}` (use all, derived, gens: ..., formula: ...)"
        )));
    };
    g.ensure_normal(&k)?;
    Ok(k)
}

fn cmd_supplement(ctx: &Ctx, group: &str, kspec: &str, formula_level: bool) -> Result<Record> {
    let g = ctx.group(group)?;
    let k = k_subgroup(ctx, &g, kspec)?;
    let c = build_supplement(&g, &k, &ctx.limits)?;
    let mut r = c.lines();
    let report = lemma62_checks(&c);
    for cl in &report.clauses {
        r.push(kv(
            &format!("lemma.{}", cl.clause),
            format!("{} {}", if cl.passed { "PASS" } else { "FAIL" }, cl.detail),
        ));
    }
    report.into_result()?;
    if formula_level {
        let f = verify_formula_level(&c, &standard_oracles(&c), &ctx.config())?;
        r.extend(f.lines());
        r.push(kv("formula_level", "PASS"));
    }
    Ok(r)
}

fn numbers(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad number `{t}`")))
        })
        .collect()
}

fn cmd_construct(ctx: &Ctx, token: &str) -> Result<Record> {
    let (head, args) = token.split_once(':').unwrap_or((token, ""));
    let l = &ctx.limits;
    match (head, numbers(args).as_deref()) {
        ("comlength", Ok(&[k])) => {
            let c = comlength_min_n(k);
            Ok(vec![
                kv("k", c.k),
                kv("n", c.n),
                kv("threshold_8k_plus_2", c.threshold_8k_plus_2),
            ])
        }
        ("split", Ok(&[n, q])) => {
            let s = split_wn(n as usize, &field_of_order(q)?, ctx.opts)?;
            Ok(vec![
                kv("n", n),
                kv("q", q),
                kv("dim_y", s.dim_y()),
                kv("dim_z", s.dim_z()),
            ])
        }
        ("central", Ok(&[n, q])) => {
            let c = central_commutators(n as usize, &field_of_order(q)?, ctx.opts, l)?;
            Ok(vec![
                kv("n", c.n),
                kv("q", c.q),
                kv("pairs", c.pairs),
                kv("central_values", c.central_values),
                kv("lines", c.lines),
                kv("lines_free_of_commutators", c.lines_free_of_commutators),
            ])
        }
        ("thmD", Ok(&[n, p])) => {
            let s = thm_d_finite_instance(n as u32, p, l)?.summary(l)?;
            Ok(vec![
                kv("n", s.n),
                kv("p", s.p),
                kv("order_F", s.order_f),
                kv("order_L", s.order_l),
                kv("L_is_subgroup", s.l_is_subgroup),
                kv("index_L", s.index_l),
                kv("order_H", s.order_h),
                kv("center_H", s.center_h),
                kv("H_isomorphic_to_Dih_p", s.h_isomorphic_to_dih_p),
            ])
        }
        ("perfect", Ok(&[n, q])) => {
            let b = build_hn(n as usize, &field_of_order(q)?, ctx.opts, l)?;
            Ok(vec![
                kv("n", n),
                kv("q", q),
                kv("order_G", b.gn.order()),
                kv("order_H", b.hn.order()),
                kv("perfect", grouplogic::analysis::is_perfect(&b.hn)),
                kv("center_module", b.center_module().len()),
                kv("lines", b.lines().len()),
            ])
        }
        _ => {
            let g = named_group(token, ctx.opts, l)?;
            Ok(vec![
                kv("group", g.label()),
                kv("order", g.order()),
                kv("perfect", grouplogic::analysis::is_perfect(&g)),
                kv("soluble", grouplogic::analysis::is_soluble(&g)),
            ])
        }
    }
}

fn cmd_sweep(ctx: &Ctx, sentence: &str, a: &str, b: &str, range: &str) -> Result<Record> {
    let (lo, hi) = range
        .split_once("..")
        .and_then(|(x, y)| Some((x.trim().parse().ok()?, y.trim().parse().ok()?)))
        .ok_or_else(|| Error::Invalid(format!("range `{range}` is not a..b")))?;
    let text = match std::fs::read_to_string(sentence) {
        Ok(t) if std::path::Path::new(sentence).is_file() => t,
        _ => sentence.to_string(),
    };
    let item = formula_from_text(&text)?;
    Ok(sweep(&item, &family(a)?, &family(b)?, lo, hi, &ctx.limits)?.lines())
}

fn cmd_corpus(ctx: &Ctx, file: &str, suite: &str) -> Result<(Record, bool)> {
    let corpus = if file == "default" {
        Corpus::default_corpus(&ctx.limits)?
    } else {
        Corpus::load(&PathBuf::from(file), &ctx.limits)?
    };
    let report = run_suites(&corpus, &Suite::parse_list(suite)?);
    let mut r: Record = report
        .lines
        .iter()
        .map(|l| {
            let s = match l.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            (
                format!("{}.{}", l.suite.name(), l.item),
                format!("{s} {}", l.detail).trim_end().to_string(),
            )
        })
        .collect();
    r.push(kv("pass", report.count(Status::Pass)));
    r.push(kv("fail", report.count(Status::Fail)));
    r.push(kv("skip", report.count(Status::Skip)));
    Ok((r, report.passed()))
}

fn cmd_parse(text: &str) -> Result<Record> {
    let f = parse(text)?;
    let free: Vec<String> = f.free_vars().into_iter().collect();
    Ok(vec![
        kv("formula", &f),
        kv("free_vars", free.join(" ")),
        kv("sentence", f.is_sentence()),
        kv("quantifier_depth", f.quantifier_depth()),
    ])
}

fn emit(r: &Record, json: bool) {
    if json {
        let map: serde_json::Map<String, serde_json::Value> = r
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        println!("{}", serde_json::Value::Object(map));
    } else {
        for (k, v) in r {
            println!("{k}={v}");
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    let mut limits = Limits::default();
    if let Some(v) = g.table_cap {
        limits.table_cap = v;
    }
    if let Some(v) = g.lattice_cap {
        limits.lattice_cap = v;
    }
    if let Some(v) = g.sigma_cap {
        limits.sigma_cap = v;
    }
    if let Some(v) = g.work_budget {
        limits.work_budget = v;
    }
    if let Some(n) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let ctx = Ctx {
        limits,
        opts: PerfectOptions {
            allow_char3: g.allow_char3,
        },
    };
    let json = g.json;
    let (record, ok) = match &cli.command {
        Command::Eval {
            group,
            formula,
            params,
        } => (cmd_eval(&ctx, group, formula, params, json)?, true),
        Command::Definable {
            group,
            formula,
            var,
            params,
        } => (cmd_definable(&ctx, group, formula, var, params)?, true),
        Command::Analyze { group, which } => (cmd_analyze(&ctx, group, *which)?, true),
        Command::Sigma { group, k } => (cmd_sigma(&ctx, group, *k)?, true),
        Command::Supplement {
            group,
            k,
            formula_level,
        } => (cmd_supplement(&ctx, group, k, *formula_level)?, true),
        Command::Construct { token } => (cmd_construct(&ctx, token)?, true),
        Command::Sweep {
            sentence,
            fam_a,
            fam_b,
            range,
        } => (cmd_sweep(&ctx, sentence, fam_a, fam_b, range)?, true),
        Command::Corpus { file, suite } => cmd_corpus(&ctx, file, suite)?,
        Command::Parse { formula } => (cmd_parse(formula)?, true),
    };
    emit(&record, json);
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
