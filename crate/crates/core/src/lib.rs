//! Exact-arithmetic toolkit for images, kernels and radicals of derivations
//! and E-derivations, and for deciding or falsifying the Mathieu-subspace
//! property on polynomial, Laurent-polynomial and finite-dimensional algebras.

pub mod error;
pub mod finalg;
pub mod linalg;
pub mod maps;
pub mod par;
pub mod parse;
pub mod poly;
pub mod polytope;
pub mod ring;
pub mod subspace;

pub use error::{Error, Result};
pub use par::Exec;
pub use parse::{parse_poly, parse_poly_list};
pub use poly::{Ambient, ExpVec, Poly};
pub use ring::{Coeff, LaurentT, Ring};
