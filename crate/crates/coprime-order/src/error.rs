use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("modulus {0} exceeds the cap of 2^31-1")]
    ModulusTooLarge(u64),
    #[error("radical {0} exceeds the dense residue-list cap of 2^20")]
    RadicalTooLarge(u64),
    #[error("index {index} out of range for radical {radical}")]
    IndexOutOfRange { index: u64, radical: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("n={n} exceeds the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: u64,
        cap: u64,
    },
    #[error("precision must be at least 53 bits, got {0}")]
    PrecisionTooSmall(u32),
    #[error("argument {name}={value} must satisfy {constraint}")]
    Domain {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("identity check degenerates to division by zero ({0})")]
    DegenerateIdentity(&'static str),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("comparison still unresolved at the {0}-bit precision cap")]
    Unresolved(u32),
}
