//! Exact multivariate polynomials, hypersurface quotients and the text
//! grammar used for I/O.

pub mod field;
pub mod parse;
#[allow(clippy::module_inception)]
pub mod poly;
pub mod quotient;
pub mod ring;

pub use field::{Coeff, CoeffField};
pub use parse::parse_poly;
pub use poly::{Poly, Value};
pub use quotient::{normal_form, QuotientRing, Ring};
pub use ring::{Monomial, MonomialOrder, PolyRing};
