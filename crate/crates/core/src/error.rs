use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization budget exceeded on composite cofactor {cofactor}")]
    FactorizationBudgetExceeded { cofactor: String },
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(String, String),
    #[error("prime {p} divides the leading coefficient")]
    LeadingDrop { p: String },
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("closure exceeded {bound} elements")]
    Overflow { bound: usize },
    #[error("inertia generator is not a transposition")]
    NotTransposition,
    #[error("element is not in the double cover: {0}")]
    NotGroupElement(String),
    #[error("n = {n} violates the congruence required by {family}")]
    BadCongruence { n: u32, family: String },
    #[error("{what} shares the prime {prime} with {with}")]
    NotCoprime { what: String, with: String, prime: String },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("rational function is not generic: {0}")]
    NotGeneric(String),
    #[error("no unramified seed found at p = {prime}")]
    SearchExhausted { prime: String, transcript: Vec<String> },
    #[error("forms {0} and {1} are affinely dependent")]
    DependentForms(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
