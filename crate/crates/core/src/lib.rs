pub mod arith;
pub mod classify;
pub mod error;
pub mod exactlin;
pub mod invariants;
pub mod ktheory;
pub mod theta;
pub mod wfun;

pub use error::{Error, Result};
pub use exactlin::{Field, Matrix, MatrixOrder, Scalar};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type IntMatrix = Matrix<Integer>;
pub type RatMatrix = Matrix<Rational>;
