//! Exact computations with Poisson Hopf algebras: brackets and coalgebra
//! structures on (Laurent) polynomial rings, the universal enveloping algebra
//! of a Poisson algebra in PBW normal form, its quotient Hopf algebra and
//! comodule maps, smash products of graded biproducts, and Poisson
//! (co)homology complexes.

pub mod catalog;
pub mod checks;
pub mod cohomology;
pub mod error;
pub mod format;
pub mod hopf;
pub mod linalg;
pub mod pbw;
pub mod poisson;
pub mod quotient;
pub mod random;
pub mod report;
pub mod smash;
pub mod ring;
pub mod tensor;
pub mod uea;

pub use error::{AlgebraError, Result};
pub use poisson::PoissonAlgebra;
pub use report::{CheckResult, Report};
pub use ring::{GeneratorSet, LaurentPoly, Monomial, Rational, Ring};
