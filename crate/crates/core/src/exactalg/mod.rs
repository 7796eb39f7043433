//! Exact scalars, sparse multivariate polynomials and Laurent polynomials.

mod field;
mod graded;
mod laurent;
mod poly;

pub use field::{Coeff, Field, FieldScalar};
pub use graded::{scalar_rank, GradedMatrix};
pub use laurent::LaurentPoly;
pub use poly::{Monomial, MultiPoly};
