//! Logic-based argumentation over Boolean constraint languages.
//!
//! Decides argument existence, verification and relevance for Γ-formulas,
//! classifies their complexity from the algebraic flags of Γ, builds the
//! expressibility gadgets, and generates reductions from classical source
//! problems.

pub mod argumentation;
pub mod error;
pub mod expressibility;
pub mod formulas;
pub mod limits;
pub mod logic;
pub mod reductions;
pub mod relations;

pub use argumentation::{classify_complexity, ComplexityClass, ComplexityReport, Support};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use formulas::{ArgInstance, Constraint, GammaFormula, QuantifiedFormula, Var};
pub use limits::Limits;
pub use logic::{Engine, Solver};
pub use relations::{ConstraintLanguage, PropertyReport, Relation};
