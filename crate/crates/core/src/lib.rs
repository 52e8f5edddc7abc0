pub mod absorder;
pub mod cluster;
pub mod complexes;
pub mod error;
pub mod export;
pub mod lattice;
pub mod linalg;
pub mod rootsystem;
pub mod scalar;
pub mod verify;

pub use absorder::{GroupElement, IntervalPoset};
pub use error::{Error, Result};
pub use rootsystem::{parse_type, CoxeterDatum, RootSystem, RootVector, SteinbergData, TypeLabel};
pub use scalar::{field_arith, ArithOp, FieldElement, NumberField, Scalar, Sign};

pub type Rational = num_rational::BigRational;
pub type FieldMatrix = linalg::Matrix<FieldElement>;
pub type RationalMatrix = linalg::Matrix<Rational>;
