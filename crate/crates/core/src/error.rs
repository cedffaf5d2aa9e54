use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid variable name `{0}`: must start with a lowercase letter")]
    InvalidVariableName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has an empty frame")]
    EmptyFrame(String),
    #[error("duplicate value `{value}` in the frame of `{var}`")]
    DuplicateValue { var: String, value: String },
    #[error("a joint frame needs at least one variable")]
    NoVariables,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable set {sub} is not a subset of {sup}")]
    NotASubset { sub: String, sup: String },
    #[error("incompatible frames: {0}")]
    IncompatibleFrames(String),
    #[error("value `{value}` is outside the frame of `{var}`")]
    ValueOutsideFrame { var: String, value: String },
    #[error("tuple does not assign exactly the frame's variables: {0}")]
    NotTotal(String),

    #[error("mass function has no focal sets")]
    NoFocalSets,
    #[error("mass assigned to the empty set")]
    MassOnEmptySet,
    #[error("invalid mass {0}: masses must be finite and positive")]
    InvalidMass(f64),
    #[error("masses sum to {0}, expected 1")]
    MassSum(f64),
    #[error("point mass on the empty set")]
    EmptyPoint,
    #[error("all mass is on the empty set")]
    AllMassOnEmpty,

    #[error("total conflict: every pair of focal sets is disjoint")]
    TotalConflict,
    #[error("no focal set intersects the conditioning set")]
    NoIntersection,

    #[error("frame has {size} worlds, aggregate uncertainty is capped at {cap}")]
    FrameTooLarge { size: usize, cap: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("step budget of {0} exhausted, the program may diverge")]
    StepBudgetExhausted(u64),
    #[error("loop still holds mass {residual:e} after {iterations} iterations")]
    NonTermination { residual: f64, iterations: usize },

    #[error("scenario: {0}")]
    Scenario(String),
    #[error("io: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Coarse grouping of errors, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input: schema, syntax, frames, masses.
    Input,
    /// Conflict or non-termination discovered while running.
    Conflict,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            TotalConflict | NoIntersection | AllMassOnEmpty | NonTermination { .. } | StepBudgetExhausted(_) => {
                ErrorClass::Conflict
            }
            InvalidVariableName(_)
            | DuplicateVariable(_)
            | EmptyFrame(_)
            | DuplicateValue { .. }
            | NoVariables
            | UnknownVariable(_)
            | NotASubset { .. }
            | IncompatibleFrames(_)
            | ValueOutsideFrame { .. }
            | NotTotal(_)
            | NoFocalSets
            | MassOnEmptySet
            | InvalidMass(_)
            | MassSum(_)
            | EmptyPoint
            | FrameTooLarge { .. }
            | Syntax { .. }
            | Eval(_)
            | Scenario(_)
            | Io(_) => ErrorClass::Input,
            Internal(_) => ErrorClass::Internal,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.class() {
            ErrorClass::Input => 2,
            ErrorClass::Conflict => 3,
            ErrorClass::Internal => 4,
        }
    }
}
