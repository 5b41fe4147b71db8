//! Exact arithmetic on surreal numbers.
//!
//! Finite-birthday numbers are the dyadic rationals ([`Dyadic`]). Numbers
//! with infinite or infinitesimal parts are handled in normal form
//! ([`Surreal`]). The [`genesis`] and [`names`] modules build numbers from
//! cuts and names directly, with genetic operations that serve as oracles
//! for the closed-form arithmetic.

pub mod cli;
pub mod dyadic;
pub mod genesis;
pub mod names;
pub mod normalform;
pub mod parser;

pub use dyadic::{simplest_in_interval, Birthday, Dyadic, DyadicError, Sign, SignExpansion};
pub use genesis::{GenNumber, GenesisError, Universe};
pub use names::{GeneticEngine, Name, NameError, OptionSet};
pub use normalform::{FormError, NormalForm, Rational, Surreal, Term};
pub use parser::{eval, parse, print, EvalError, Expr, ExprKind, ParseError, SourceSpan};
