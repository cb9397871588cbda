//! Exact linear algebra over Q and F_p: matrices, representations,
//! homomorphism spaces and a brute-force decomposability oracle.

mod field;
mod matrix;
mod oracle;
mod rep;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

pub use field::{kernel, rank, FieldSpec};
pub use matrix::Matrix;
pub use oracle::{is_indecomposable_oracle, OracleConfig, OracleOutcome, OracleVerdict};
pub use rep::{
    decompose_by_idempotent, hom_defects, hom_space, verify_hom, HomDefect, Homomorphism,
    Representation,
};

pub type Rat = BigRational;

pub fn one() -> Rat {
    Rat::one()
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("representations live over different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("map is not a homomorphism of representations")]
    NotAHomomorphism,
    #[error("endomorphism is not idempotent")]
    NotIdempotent,
}

/// Writes a rational as `p/q`, or `p` when integral.
pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
