//! EMV-algebras: finite tables, direct sums, Chang's algebra, ideals,
//! filters, state-morphisms, the MV-completion and equation checking.

pub mod algebra;
pub mod constructors;
pub mod error;
pub mod filters;
pub mod ideals;
pub mod represent;
pub mod states;
pub mod variety;

pub use algebra::element::Element;
pub use algebra::{Algebra, EmvStructure};
pub use error::{EmvError, Result};

/// Exact rationals used for state values and fuzzy sets.
pub type Rational = num_rational::Ratio<i64>;
