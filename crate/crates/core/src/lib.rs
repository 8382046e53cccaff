//! Exact polynomial machinery for checking that the variety of flexes of
//! plane cubics is a smooth complete intersection at a witness point.
//!
//! * [`poly`], [`parse`]: sparse polynomials over ℚ or `Z/pZ` with parsing,
//!   printing, differentiation, substitution and multi-grading.
//! * [`multicone`]: torus actions on products of vector spaces and the
//!   checks built on them.
//! * [`flex`]: the generic ternary cubic, its Hessian, derivative tables and
//!   the Jacobian-minor certificate.
//! * [`ff_lab`]: reduction modulo small primes, flex scans over `P²(F_p)`
//!   and sampling of points on the flex cone.
#![no_std]
extern crate alloc;

pub mod error;
pub mod ff_lab;
pub mod flex;
pub mod monomial;
pub mod multicone;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod universe;

pub use error::PolyError;
pub use monomial::Monomial;
pub use parse::{parse, ParseError, ParseErrorKind};
pub use poly::{det3, PointAssignment, Poly, Polynomial};
pub use ring::{Rationals, Ring};
pub use scalar::Scalar;
pub use universe::{MultiDegree, Universe, VariableGrouping, VariableId};
