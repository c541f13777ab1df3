use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("zero denominator polynomial")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootsError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots to bound")]
    ConstantPolynomial,
    #[error("empty interval ({lo}, {hi})")]
    EmptyInterval { lo: String, hi: String },
    #[error("interval endpoint {endpoint} is a root; perturb it")]
    EndpointIsRoot { endpoint: String },
    #[error("function {function} is not eventually positive")]
    EventuallyNonpositive { function: String },
    #[error("function is identically zero")]
    IdenticallyZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("logarithm of a non-positive quantity")]
    NonPositiveLog,
    #[error("interval division by an interval containing zero")]
    DivisionByZero,
    #[error("exponent out of range")]
    Overflow,
    #[error("inverted interval bounds")]
    Inverted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogExprError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("expression has a pole at n = {0}")]
    Pole(i64),
    #[error("log argument {arg} is not positive at n = {n}")]
    NonPositiveArgument { arg: String, n: i64 },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("eventually non-positive: {0}")]
    EventuallyNonpositive(String),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("invalid recurrence: {0}")]
    Invalid(String),
    #[error("index {index} precedes the start index {start}")]
    BeforeStart { index: i64, start: i64 },
    #[error("singular recurrence point: leading coefficient vanishes at n = {index}")]
    SingularPoint { index: i64 },
    #[error("initial value at index {index} violates the recurrence")]
    InconsistentInitial { index: i64 },
    #[error("term a_{index} is zero")]
    ZeroTerm { index: i64 },
    #[error("term a_{index} is negative")]
    NegativeTerm { index: i64 },
    #[error("index {index} is out of range for this operation")]
    OutOfRange { index: i64 },
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InequalityError {
    #[error("value at index {index} is not available")]
    MissingIndex { index: i64 },
    #[error("Laguerre order must be at least 1, got {0}")]
    InvalidOrder(u32),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// A single problem found while loading a spec document, with its JSON path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct SpecIssue {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct SpecError {
    pub issues: Vec<SpecIssue>,
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid spec document")?;
        for issue in &self.issues {
            write!(f, "\n  {issue}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: index {index} does not increase")]
    NonMonotone { line: usize, index: i64 },
    #[error("invalid OEIS id {0:?}")]
    InvalidId(String),
    #[error("b-file for {id} not cached at {path} and network access is unavailable: {reason}")]
    NetworkUnavailable {
        id: String,
        path: String,
        reason: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("missing bound {0} in the bounds block")]
    MissingBound(&'static str),
    #[error("unsupported recurrence order {0} for induction (use direct range checks)")]
    UnsupportedOrder(usize),
    #[error("exact check failed at n = {index}: {detail}")]
    ExactCheck { index: i64, detail: String },
    #[error("induction step fails: {containment} ({detail})")]
    InductionStep { containment: String, detail: String },
    #[error("{stage} stage: {side} side: {detail}")]
    Descent {
        stage: &'static str,
        side: &'static str,
        detail: String,
    },
    #[error("{stage} stage inconclusive at n = {index}: {detail}")]
    Undecided {
        stage: &'static str,
        index: i64,
        detail: String,
    },
    #[error("{stage} stage fails at n = {index}: {detail}")]
    WindowFailure {
        stage: &'static str,
        index: i64,
        detail: String,
    },
    #[error("criterion composition {pair} is not eventually positive")]
    CriterionFailure { pair: String },
    #[error("target {0} cannot be certified; use root or ratio")]
    UnsupportedTarget(String),
    #[error("{stage} stage: {source}")]
    Stage {
        stage: &'static str,
        source: Box<CertifyError>,
    },
    #[error(transparent)]
    Inequality(#[from] InequalityError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    LogExpr(#[from] LogExprError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl CertifyError {
    /// True for failures caused by a bounded search giving up rather than by
    /// a refuted claim.
    pub fn is_inconclusive(&self) -> bool {
        match self {
            CertifyError::Undecided { .. } => true,
            CertifyError::Descent { detail, .. } => detail.starts_with("inconclusive"),
            CertifyError::LogExpr(LogExprError::Inconclusive(_)) => true,
            CertifyError::Stage { source, .. } => source.is_inconclusive(),
            _ => false,
        }
    }

    /// The pipeline stage the error belongs to, when it is known.
    pub fn stage(&self) -> Option<&'static str> {
        match self {
            CertifyError::Descent { stage, .. }
            | CertifyError::Undecided { stage, .. }
            | CertifyError::WindowFailure { stage, .. }
            | CertifyError::Stage { stage, .. } => Some(stage),
            CertifyError::CriterionFailure { .. } => Some("criterion"),
            _ => None,
        }
    }
}

/// A structural problem in a certificate document, with its JSON path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate {path}: {message}")]
pub struct CertificateFormatError {
    pub path: String,
    pub message: String,
}
