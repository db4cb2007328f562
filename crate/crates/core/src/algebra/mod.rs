//! Exact arithmetic kernel: rationals, Laurent polynomials in a fixed set of
//! eight variables, rational functions with factored denominators, and
//! truncated power series.

mod poly;
mod ratfun;
mod rational;
mod series;
mod text;
mod var;

pub use poly::{set_term_limit, term_limit, LaurentPoly, Term, DEFAULT_TERM_LIMIT};
pub use ratfun::{rf_equal, substitute, Bindings, Factor, RationalFunction};
pub use rational::Rational;
pub use series::{bi_series_expand, iterated_coeff, series_expand, BiSeries, TruncSeries};
pub use text::parse_poly;
pub use var::{Monomial, VarId, NVARS};
