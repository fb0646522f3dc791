//! Exact Gröbner-basis machinery for deciding whether a parametrized family
//! of affine schemes is Hough regular, plus a small accumulator-voting
//! detector driven by the same family model.

pub mod detector;
pub mod error;
pub mod family_file;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod hough;
pub mod ideal_ops;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod report;

pub use detector::{accumulate_votes, detect_peak, Accumulator, DetectConfig, Peak};
pub use error::{AlgebraError, Result};
pub use family_file::{parse_family_file, FamilyFile};
pub use field::{Field, Rational, Rationals};
pub use groebner::{GroebnerBasis, Ideal};
pub use hough::{
    analyze, check_sigma_regularity, doubling_data, fiber_ideal, generic_fiber_basis, hough_transform_point,
    AnalysisOptions, FamilySpec, InverterPolicy, RegularityReport, Verdict,
};
pub use monomial::{Monomial, TermOrder};
pub use poly::{PolyRing, Polynomial, Ring, RingExt};
pub use ratfun::{FractionField, RationalFunction};
