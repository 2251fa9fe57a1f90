use std::fmt;

/// Errors raised by operations whose preconditions can fail on user input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A 2x2 matrix with zero determinant where an invertible one is required.
    SingularMatrix,
    /// A point that does not lie on the curve it was claimed to lie on.
    PointNotOnCurve,
    /// The zero pair (0:0) is not a point of the projective line.
    ZeroProjectivePair,
    /// A matrix that is not orthogonal where an orthogonal one is required.
    NotOrthogonal,
    /// Supplied coset data does not satisfy the double-coset relation.
    CosetMismatch,
    /// A parameter value excluded by the operation's domain.
    ExcludedParameter(&'static str),
    /// A projective pair whose norm is not a rational square, where
    /// membership in the Pythagorean slope set is required.
    NotPythagorean,
    /// A slope pair that does not satisfy the bilinear equation of the fiber.
    BilinearEquationFails,
    /// The fiber is singular where a nonsingular one is required.
    SingularFiber,
    /// Coefficients that do not define a valid Weierstrass curve.
    InvalidCurve,
    /// Modulus that is not an odd prime.
    InvalidModulus,
    /// Text that does not parse as a rational, matrix or point.
    Parse(String),
    /// A search that exhausted its budget without producing the
    /// requested number of results.
    SearchExhausted,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SingularMatrix => write!(f, "matrix has zero determinant"),
            Error::PointNotOnCurve => write!(f, "point is not on the curve"),
            Error::ZeroProjectivePair => write!(f, "(0:0) is not a projective point"),
            Error::NotOrthogonal => write!(f, "matrix is not orthogonal"),
            Error::CosetMismatch => write!(f, "coset relation does not hold for the supplied data"),
            Error::ExcludedParameter(what) => write!(f, "parameter excluded: {what}"),
            Error::NotPythagorean => write!(f, "pair is not a Pythagorean slope (norm is not a rational square)"),
            Error::BilinearEquationFails => write!(f, "slope pair does not satisfy the bilinear fiber equation"),
            Error::SingularFiber => write!(f, "fiber is singular"),
            Error::InvalidCurve => write!(f, "coefficients do not define a nonsingular Weierstrass curve"),
            Error::InvalidModulus => write!(f, "modulus must be an odd prime"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::SearchExhausted => write!(f, "search budget exhausted before enough results were found"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
