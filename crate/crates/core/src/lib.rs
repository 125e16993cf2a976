//! Exact computation of `λ(H^0_m(R/I^n))` for powers of monomial ideals, its split
//! into saturation and ideal graded sums, limit estimates for `λ/n^d`, and an
//! exact model of a K3-surface example whose limit is irrational.

pub mod asymptotics;
pub mod cohomology;
pub mod error;
pub mod io;
pub mod k3;
pub mod monomial;
pub mod numeric;

pub use asymptotics::{
    diagonal_hilbert, finite_difference_leading, multiplicity_mprimary, richardson_limit, AsymptoticEstimate,
};
pub use cohomology::{empirical_swanson_e, h0_length, length_table, sigma, tau, LengthRecord};
pub use error::{Error, ParseError, Result};
pub use io::{parse_ideal, render_ideal, IdealSource};
pub use k3::{closed_form_limit, sigma_decomposition, sigma_recursion, BlowupCache, K3Params};
pub use monomial::{count_graded_piece, count_standard, CountStrategy, ExponentVector, MonomialIdeal};
pub use numeric::{binomial, isqrt, quad_compare, BigRational, QuadraticNumber};
