//! Exact arithmetic: rationals, linear forms, factored products of linear forms, and the
//! rational functions in `z` they evaluate to.

mod evaluate;
mod factored;
mod linear;
mod multipoly;
mod ratfunc;
mod rational;
mod upoly;

pub use evaluate::{
    evaluate_factored, sum_evaluate, sum_evaluate_on_line, symbols_of, GenericSampler,
    LineSubstitution, Specialization, GENERIC_RANGE, MAX_RETRIES,
};
pub(crate) use evaluate::{sum_root_products, RootProduct};
pub use factored::{FactoredTerm, DEFAULT_EXPANSION_LIMIT};
pub use linear::{LinearForm, Symbol, SymbolKind};
pub use multipoly::{Monomial, MultiPolynomial};
pub use ratfunc::ZRationalFunction;
pub use rational::Rational;
pub use upoly::UPoly;
