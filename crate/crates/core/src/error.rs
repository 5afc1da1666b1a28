use thiserror::Error;

use crate::group::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("{what} has {size} elements, above the cap of {cap}")]
    TooLarge {
        what: String,
        size: u128,
        cap: usize,
    },
    #[error("group {0} is not abelian")]
    NotAbelian(String),
    #[error("subgroup is not normal: conjugating {element} by {by} leaves it")]
    NotNormal { element: Elem, by: Elem },
    #[error("action is not a homomorphism: {0}")]
    ActionNotHomomorphic(String),
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: Elem, b: Elem },
    #[error("map is not a bijection on the carrier")]
    NotBijective,
    #[error("element {0} is outside the group")]
    NotMember(Elem),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown oracle `{0}`")]
    UnknownOracle(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("oracle `{0}` has no subset bound for this group")]
    UnboundOracle(String),
    #[error("evaluation exceeded the work budget of {budget} steps")]
    DepthBudgetExceeded { budget: u64 },
    #[error("{p} and {q} are not distinct primes")]
    NotDistinctPrimes { p: u64, q: u64 },
    #[error("no prime has a cyclic Sylow subgroup")]
    NoCyclicSylow,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("condition violated: {0}")]
    ConditionViolated(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("unsupported characteristic {0}")]
    BadCharacteristic(u64),
    #[error("module splitting failed: {0}")]
    SplitFailed(String),
    #[error("the normal subgroup lies inside the soluble radical")]
    InsideRadical,
    #[error("check failed: {clause}: {detail}")]
    CheckFailed { clause: String, detail: String },
    #[error("invalid group spec: {0}")]
    Spec(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn too_large(what: impl Into<String>, size: impl TryInto<u128>, cap: usize) -> Self {
        Error::TooLarge {
            what: what.into(),
            size: size.try_into().unwrap_or(u128::MAX),
            cap,
        }
    }

    pub(crate) fn check(clause: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::CheckFailed {
            clause: clause.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CheckFailed { .. } => 1,
            Error::TooLarge { .. } | Error::DepthBudgetExceeded { .. } => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
