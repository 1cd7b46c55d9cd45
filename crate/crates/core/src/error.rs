use crate::validation::ValidationReport;
use crate::zmod::ZmodError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("quiver has a directed cycle through edges {witness:?}")]
    CyclicQuiver { witness: Vec<String> },
    #[error("non-identity 2-cell support has a cycle: {witness:?}")]
    CyclicSupport { witness: Vec<String> },
    #[error("predicted generator count {predicted} at level {level} exceeds the bound {bound}")]
    TooLarge { level: usize, predicted: String, bound: u64 },
    #[error("finiteness gate not passed for level {0}")]
    GateNotPassed(usize),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("assignment is not a functor: {0}")]
    NotAFunctor(String),
    #[error("quotient composition is ill defined: {0}")]
    IllDefinedComposite(String),
    #[error("splitting data inconsistent: {0}")]
    NotSplit(String),
    #[error("index {index} out of range ({what})")]
    IndexOutOfRange { what: String, index: usize },
    #[error("fiber mismatch: {0}")]
    FiberMismatch(String),
    #[error("exactness fails at {node}: {detail}")]
    InexactDetected { node: String, detail: String },
    #[error("category has infinitely many morphisms")]
    InfiniteCategory,
    #[error("truncation depth {depth} too shallow for degree {degree}")]
    TruncationTooShallow { depth: usize, degree: usize },
    #[error("validation failed:\n{0}")]
    Invalid(Box<ValidationReport>),
    #[error(transparent)]
    Zmod(#[from] ZmodError),
}

impl Error {
    pub fn invalid(report: ValidationReport) -> Self {
        Error::Invalid(Box::new(report))
    }
}
