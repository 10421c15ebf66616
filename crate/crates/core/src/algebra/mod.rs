//! The complex group ring `ℂG`: exact and floating coefficients, convolution,
//! norms, and the averaging constructions.

mod averaging;
pub mod cyclic;
pub mod io;
mod matrix;
mod polynomial;
mod rational;
mod scalar;
mod tuple;
mod vector;
mod young;

pub use averaging::{
    averaging_element, factor_polynomial, factor_witness, linear_factor, neumann_inverse,
    AveragingSpec, NeumannInverse,
};
pub use cyclic::CosetSeries;
pub use matrix::GrMatrix;
pub use polynomial::Polynomial;
pub use rational::Rational;
pub use scalar::{Coefficient, Exact, Mode, Scalar, UNIT_TOLERANCE};
pub use tuple::VectorTuple;
pub(crate) use vector::check_p;
pub use vector::GroupVector;
pub use young::{
    young_check, young_check_l1_tuple, young_check_lp_tuple, YoungCheck, YOUNG_TOLERANCE,
};
