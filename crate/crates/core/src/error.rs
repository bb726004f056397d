use thiserror::Error;

/// Errors raised by the engine. Parse errors live in [`crate::parse::ParseError`]
/// and [`crate::qbf::QbfError`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("structure domain lists `{0}` twice")]
    DuplicateDomainAtom(String),
    #[error("structure domain has {size} atoms; at most {max} are supported")]
    DomainTooWide { size: usize, max: usize },
    #[error("malformed structure: {0}")]
    MalformedStructure(String),
    #[error("renaming maps two atoms onto `{0}`")]
    NonInjectiveRenaming(String),
    #[error("structure domain has {size} atoms to enumerate; cap is {cap}")]
    DomainTooLarge { size: usize, cap: usize },
    #[error("structure is not convex")]
    NotConvex,
    #[error("interpretation has {size} atoms; minimality check cap is {cap}")]
    InterpretationTooLarge { size: usize, cap: usize },
    #[error("program has {size} head atoms; enumeration cap is {cap}")]
    TooManyHeads { size: usize, cap: usize },
    #[error("conditional satisfaction requires I to be a subset of M")]
    PreconditionViolated,
    #[error("rule {0} has a body that is not a literal conjunction")]
    NotNormalProgram(usize),
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
