use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relator uses unknown generator `{name}` (line {line}, column {column})")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorIndex { index: usize, count: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("cyclotomic polynomial index must be positive")]
    ZeroCyclotomicIndex,
    #[error("entries belong to different cyclotomic fields (orders {0} and {1})")]
    MixedOrders(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("relator {index} (`{relator}`) does not map to zero in the quotient")]
    RelatorViolation { index: usize, relator: String },
    #[error("generator images do not generate the target group")]
    NotSurjective,
    #[error("invalid quotient: {0}")]
    InvalidQuotient(String),
    #[error("character is not defined on the group: {0}")]
    InvalidCharacter(String),
    #[error("the trivial character is excluded from strata depth")]
    TrivialCharacter,
    #[error("projection does not factor through the Alexander matrix lattice: {0}")]
    ProjectionDoesNotFactor(String),
    #[error("exponent-sum normalization impossible: {0}")]
    NormalizationImpossible(String),
    #[error("incompatible tower: {0}")]
    IncompatibleTower(String),
    #[error("quotient of order {order} exceeds the exhaustive search bound {bound} (raise --cheeger-bound)")]
    CheegerBound { order: u64, bound: u64 },
    #[error("coset graph has a single vertex; no admissible vertex subset")]
    DegenerateGraph,
    #[error("enumeration of {needed} characters exceeds the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("free rank of the abelianization is zero")]
    NoFreeRank,
    #[error("invalid subtorus: {0}")]
    InvalidSubtorus(String),
    #[error("subtorus is not contained in the first Alexander stratum")]
    ContainmentFails,
    #[error("no admissible prime below {0}")]
    NoAdmissiblePrime(u64),
    #[error("certificate verification failed: {0}")]
    VerificationFailed(String),
    #[error("matrix determinant is {0}, expected +1 or -1")]
    NotUnimodular(String),
    #[error("deficiency {0} is less than 2")]
    DeficiencyTooSmall(i64),
    #[error("{0}")]
    Invalid(String),
}
