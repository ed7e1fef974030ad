//! Exact arithmetic for Gauss period polynomials.
//!
//! For an odd prime `p` and `d | p - 1`, the `d` Gauss periods of degree
//! `m = (p - 1)/d` are the roots of a monic integer polynomial
//! `Ψ(X) = Π (X - η_j)`. Its coefficients are computed here from counts of
//! zero-sum tuples over cyclotomic classes, grouped by orbits of k-subsets
//! of `Z/dZ` under rotation. Nothing is evaluated numerically.
//!
//! Coefficient routines are generic over [`ExactInt`] so callers can trade
//! speed for range (`i64`, `i128`, or [`num_bigint::BigInt`]); every
//! operation is checked and overflow surfaces as [`Error::Overflow`]. The
//! aliases at the crate root fix the scalar to `BigInt`.
//!
//! ```
//! use periodpoly::{polynomial, CyclotomicContext, Polynomial};
//!
//! let ctx = CyclotomicContext::new(13, 3, None).unwrap();
//! let psi: Polynomial = polynomial(&ctx).unwrap();
//! assert_eq!(psi.to_string(), "X^3 + X^2 - 4X + 1");
//! ```

pub mod coefficients;
pub mod error;
pub mod field;
pub mod oracle;
pub mod orbit;
pub mod scalar;
pub mod symbol;

pub use coefficients::{
    a2_closed, a3_closed, assembly_work, coefficient, coefficient_from_transversals, cubic_poly,
    polynomial, polynomial_with_breakdown, polynomial_within, quadratic_poly, quartic_poly,
    top_coefficient, CoefficientBreakdown, CubicParams, DivisorBlock, PeriodPolynomial,
    QuarticParams,
};
pub use error::{Error, Result};
pub use field::{find_primitive_root, is_prime, odd_primes, primitive_roots, CyclotomicContext};
pub use oracle::{
    myerson_params, oracle_polynomial, subset_polynomial, verify_identities, verify_identities_at,
    IdentityReport, MyersonParams,
};
pub use orbit::{
    canonical_representative, difference_vector, orbit_of, sliding_class, structure_of,
    transversal, transversal_k3, transversals, DifferenceVector, KSet, Orbit, OrbitStructure,
};
pub use scalar::ExactInt;
pub use symbol::{
    decompose_product, gauss_symbol, orbit_sum, z_of, PeriodDecomposition, SymbolArgument,
    DEFAULT_WORK_LIMIT,
};

/// Arbitrary-precision coefficient type.
pub type Int = num_bigint::BigInt;
pub type Polynomial = PeriodPolynomial<Int>;
pub type Breakdown = CoefficientBreakdown<Int>;
pub type Cubic = CubicParams<Int>;
pub type Quartic = QuarticParams<Int>;
