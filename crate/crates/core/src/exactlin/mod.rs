//! Exact scalar and matrix arithmetic: prime fields, rationals, sparse
//! polynomials and the expression parser.

mod field;
mod matrix;
mod parse;
mod poly;

pub use field::{is_prime, Fp, PrimeField, DEFAULT_PRIME};
pub use matrix::{
    bareiss_rank, determinant_i64, invert_rational, rank_mod_p, rank_rational, rank_symbolic,
    rational_from_i64, BareissRing, ExactMatrix, FpMatrix, Matrix, PolyMatrix, RationalMatrix,
};
pub use parse::parse_poly;
pub use poly::{rational_mod, Exponents, FpPolynomial, Rational, SparsePolynomial};
