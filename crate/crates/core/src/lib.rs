//! Exact operator calculus for graded heat operators in a nonholonomic
//! frame of vector fields tangent to the discriminant of a hyperelliptic
//! curve of genus 1, 2, 3.

pub mod error;
pub mod frame;
pub mod grammar;
pub mod jet;
pub mod linalg;
pub mod operator;
pub mod poly;
pub mod rational;
pub mod report;
pub mod sigma;

pub use error::{Error, Result};
pub use operator::{DVar, DerivativeMonomial, DiffOperator};
pub use poly::{Genus, JetIndex, Monomial, Polynomial, Var};
pub use rational::Rational;
