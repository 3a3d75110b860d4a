//! Exact exterior calculus on polynomial charts.
//!
//! Functions are polynomials with rational coefficients, so every identity of
//! the calculus (wedge, insertion, exterior derivative, Lie differential,
//! Schouten-Nijenhuis bracket, Poisson criterion) is checked as an exact
//! polynomial identity.
//!
//! Indices in the Rust API are 0-based; the text and JSON formats use the
//! 1-based names `x1`, `e1`, `dx1`.

pub mod calculus;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod geometry;
pub mod parser;
pub mod poisson;
pub mod random;
pub mod ring;
pub mod schouten;
pub mod suite;

pub use calculus::{FormOperator, TestScope};
pub use error::{Error, Result};
pub use exterior::{Blade, Form, Multivector};
pub use geometry::{FlowFamily, PolyMap};
pub use parser::{parse, Value};
pub use poisson::{PoissonCandidate, PoissonReport};
pub use ring::{Monomial, Polynomial, Rational};
pub use schouten::{BracketConvention, Method};
