//! The first-order language of groups: syntax, parsing and evaluation.

mod ast;
mod eval;
mod parser;

pub use ast::{Formula, Term};
pub use eval::{
    definable_set, eval, eval_with_stats, Compiled, EvalConfig, EvalStats, OracleTable, Valuation,
};
pub use parser::{parse, parse_term, parse_with_oracles, DEFAULT_ORACLES};
