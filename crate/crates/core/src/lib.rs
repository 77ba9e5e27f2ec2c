//! Tropical intersection theory on R^r with exact arithmetic.
//!
//! Tropical cycles are balanced weighted rational polyhedral complexes,
//! considered up to refinement. This crate provides the lattice kernel
//! (Smith/Hermite normal forms, saturations, quotient normal vectors),
//! exact polyhedral geometry over the rationals (H-representations,
//! canonicalization by LP, refinements, dual conversion), cycles and
//! their operations (sums, products, translates, simplicial completion),
//! divisors of piecewise affine functions, push-forwards along integer
//! affine maps, stable intersection, recession fans and the degree map,
//! and the resulting decision procedures for rational equivalence.
//!
//! All coordinates are `BigRational`, all lattice data `BigInt`; there is
//! no floating point anywhere.

pub mod linalg;
pub mod lattice;
pub mod lp;
pub mod polyhedron;
pub mod complex;
pub mod cycle;
pub mod function;
pub mod morphism;
pub mod intersection;

/// Exact integer scalar used for lattice data and weights.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar used for coordinates and constants.
pub type Rat = num_rational::BigRational;

pub use complex::PolyhedralComplex;
pub use cycle::{FanCycle, TropicalCycle, ValidationReport};
pub use function::{PiecewiseAffineFunction, TropicalPolynomial};
pub use intersection::{BezoutReport, DegreePairing};
pub use lattice::{LatticeBasis, QuotientGenerator, SmithDecomposition};
pub use morphism::IntegerAffineMap;
pub use polyhedron::HPolyhedron;

/// Parses an exact rational from `"p"` or `"p/q"` (lowest terms not required).
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = num.parse().ok()?;
    let d: Int = den.parse().ok()?;
    if d == Int::from(0) {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Formats an exact rational canonically: `"p"` when the denominator is 1,
/// otherwise `"p/q"` in lowest terms with q > 0.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &Int::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convenience constructor for integral rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Convenience constructor for `p/q` rationals; `q` must be nonzero.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}
