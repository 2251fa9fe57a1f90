//! Exact-arithmetic toolkit for rational distance configurations.
//!
//! An invertible 2x2 rational matrix M defines the genus-one quartic curve
//!
//! ```text
//! y^2 = (a(z^2 - x^2) + 2bxz)^2 + (c(z^2 - x^2) + 2dxz)^2
//! ```
//!
//! in the weighted projective plane with weights (1, 2, 1). Rational points
//! correspond to pairs of Pythagorean slopes solving the bilinear equation
//! a x1 x2 + b x1 + c x2 + d = 0, which encodes classical rational distance
//! problems (splitting rectangles, the three-distance problem, rational
//! slope sums and products).
//!
//! The crate provides:
//! * exact rational, projective and Pythagorean-slope primitives ([`arith`],
//!   [`proj`]);
//! * the curve family with its involutions and fiber classification
//!   ([`family`]);
//! * reduction of a fiber with a known point to triangular form along
//!   orthogonal double cosets ([`reduction`]);
//! * the Weierstrass group law, division polynomials and the torsion
//!   trichotomy of the distinguished point ([`elliptic`]);
//! * the slope correspondence and its inverse lift ([`correspond`]);
//! * exact maps between a fiber and its Jacobian model ([`jacobian`]);
//! * generators of three-distance solutions and slope sum/product
//!   decompositions ([`three_distance`]);
//! * the mod-p obstruction and a local-solubility census ([`census`]).
//!
//! Everything is exact: no floating point is used anywhere.

pub mod arith;
pub mod census;
pub mod correspond;
pub mod elliptic;
pub mod error;
pub mod family;
pub mod jacobian;
pub mod proj;
pub mod reduction;
pub mod three_distance;

pub use arith::{format_rat, is_rational_square, legendre_symbol, parse_rat, Rat};
pub use correspond::{point_from_slopes, slopes_of_point};
pub use elliptic::{
    ec_add, ec_scalar_mul, division_poly_at, minus_one_torsion, torsion_order, ECPoint,
    TorsionVerdict, WCurve,
};
pub use error::{Error, Result};
pub use family::{
    bilinear_vanishes, classify_fiber, contains, discriminant, is_degenerate, norm_form,
    symmetry_orbit, FiberClass, Mat2, WPoint,
};
pub use jacobian::JacobianMaps;
pub use proj::{parameters_from_slope, slope_from_parameter, ProjPair, SlopePair};
pub use reduction::{reduce_to_triangular, rotation_params, transport_point, ReductionWitness};
pub use three_distance::{
    line_matrix, rho, slope_sum_pairs, slope_to_line_point, square_distances,
    three_slope_products, three_slope_sums, LinePipeline, ThreeDistanceSolution,
};
pub use census::{
    census_box, classify_matrix, count_unobstructed_mod_p, default_precision, obstruction_holds,
    soluble_at_p, soluble_real, CensusOptions, CensusRecord, CensusSummary, CensusVerdict,
    LocalVerdict, Overall,
};
