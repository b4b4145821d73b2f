use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0:#b} is not irreducible over GF(2)")]
    Reducible(u64),
    #[error("unsupported field `{0}`")]
    UnsupportedField(String),
    #[error("no self-complementary basis of GF(2^{degree}) over GF(2^{sub_degree})")]
    NoScBasis { degree: u32, sub_degree: u32 },
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("p = {p} is +-3 mod 8, which needs an even field degree (got {degree})")]
    OddDegreeQr { p: u64, degree: u32 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("vector already lies in the code")]
    AlreadyInCode,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
