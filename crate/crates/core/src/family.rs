//! The pencil of genus-one quartic curves attached to an invertible 2x2
//! rational matrix M = (a,b;c,d):
//!
//! ```text
//! y^2 = (a(z^2 - x^2) + b(2xz))^2 + (c(z^2 - x^2) + d(2xz))^2
//! ```
//!
//! in the weighted projective plane where x, y, z have weights 1, 2, 1.
//! Rational points encode vectors (u,v) such that both (u,v) and M(u,v)
//! have rational length.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::arith::{format_rat, is_rational_square, parse_rat, squarefree_part, Rat};
use crate::error::{Error, Result};

/// An invertible 2x2 matrix of exact rationals, the parameter of the pencil.
/// Also used for the orthogonal factors of double-coset reductions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Mat2 {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Mat2> {
        let m = Mat2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Mat2> {
        Mat2::new(
            Rat::from_integer(a.into()),
            Rat::from_integer(b.into()),
            Rat::from_integer(c.into()),
            Rat::from_integer(d.into()),
        )
    }

    pub fn identity() -> Mat2 {
        Mat2::from_ints(1, 0, 0, 1).unwrap()
    }

    /// Parses the text form `a,b,c,d` with rational entries.
    pub fn parse(s: &str) -> Result<Mat2> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected a,b,c,d, got {s:?}")));
        }
        Mat2::new(
            parse_rat(parts[0])?,
            parse_rat(parts[1])?,
            parse_rat(parts[2])?,
            parse_rat(parts[3])?,
        )
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn scale(&self, m: &Rat) -> Mat2 {
        Mat2 {
            a: &self.a * m,
            b: &self.b * m,
            c: &self.c * m,
            d: &self.d * m,
        }
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Mat2 {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        })
    }

    /// True when M M^t = I exactly.
    pub fn is_orthogonal(&self) -> bool {
        let t = self.transpose();
        self.mul(&t) == Mat2::identity()
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, x: &Rat, y: &Rat) -> (Rat, Rat) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            format_rat(&self.a),
            format_rat(&self.b),
            format_rat(&self.c),
            format_rat(&self.d)
        )
    }
}

/// A point (x:y:z) of the weighted projective plane with weights (1,2,1):
/// (x,y,z) ~ (lx, l^2 y, lz) for l != 0.
///
/// Stored canonically: x, z are coprime integers whose last nonzero
/// coordinate in the order (z, x) is positive, and y carries the matching
/// square rescaling. Equality is equality of canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WPoint {
    x: BigInt,
    y: Rat,
    z: BigInt,
}

impl WPoint {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Result<WPoint> {
        if x.is_zero() && z.is_zero() {
            if y.is_zero() {
                return Err(Error::ZeroProjectivePair);
            }
            // With x = z = 0 only the square class of y survives rescaling;
            // n/d ~ n*d, so the squarefree part of n*d is a full invariant.
            let yy = Rat::from_integer(squarefree_part(&(y.numer() * y.denom())));
            return Ok(WPoint {
                x: BigInt::zero(),
                y: yy,
                z: BigInt::zero(),
            });
        }
        let scale = x.denom().lcm(z.denom());
        let mut xi = (&x * Rat::from_integer(scale.clone())).to_integer();
        let mut zi = (&z * Rat::from_integer(scale.clone())).to_integer();
        let g = xi.gcd(&zi);
        xi /= &g;
        zi /= &g;
        // y rescales by the square of the clearing factor scale/g.
        let l = Rat::new(scale, g);
        let yy = y * &l * &l;
        let flip = if xi.is_zero() {
            zi.is_negative()
        } else {
            xi.is_negative()
        };
        if flip {
            xi = -xi;
            zi = -zi;
        }
        Ok(WPoint { x: xi, y: yy, z: zi })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<WPoint> {
        WPoint::new(
            Rat::from_integer(x.into()),
            Rat::from_integer(y.into()),
            Rat::from_integer(z.into()),
        )
    }

    /// Parses the text form `x:y:z` with rational entries.
    pub fn parse(s: &str) -> Result<WPoint> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected x:y:z, got {s:?}")));
        }
        WPoint::new(parse_rat(parts[0])?, parse_rat(parts[1])?, parse_rat(parts[2])?)
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    pub fn x_rat(&self) -> Rat {
        Rat::from_integer(self.x.clone())
    }

    pub fn z_rat(&self) -> Rat {
        Rat::from_integer(self.z.clone())
    }

    /// The involution sending y to -y.
    pub fn flip_y(&self) -> WPoint {
        WPoint {
            x: self.x.clone(),
            y: -self.y.clone(),
            z: self.z.clone(),
        }
    }

    /// The involution (x:y:z) -> (-z:y:x). It is an involution because y has
    /// weight 2, so (-x:y:-z) = (x:y:z).
    pub fn flip_xz(&self) -> WPoint {
        WPoint::new(
            Rat::from_integer(-self.z.clone()),
            self.y.clone(),
            Rat::from_integer(self.x.clone()),
        )
        .expect("involution preserves validity")
    }

    /// The point (x : m*y : z), realizing the isomorphism between the fibers
    /// of M and m*M for m != 0.
    pub fn rescale_y(&self, m: &Rat) -> WPoint {
        WPoint {
            x: self.x.clone(),
            y: &self.y * m,
            z: self.z.clone(),
        }
    }
}

impl fmt::Debug for WPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for WPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.x, format_rat(&self.y), self.z)
    }
}

/// Classification of a fiber of the pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberClass {
    /// The discriminant is nonzero; the fiber is a smooth genus-one curve.
    Nonsingular,
    /// Singular fiber splitting into the two rational conics
    /// y = +-lambda (x^2 + z^2); carries lambda with lambda^2 = a^2 + b^2.
    SingularSplit(Rat),
    /// Singular fiber with no rational points (a^2 + b^2 is not a square).
    SingularPointless,
}

impl fmt::Display for FiberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberClass::Nonsingular => write!(f, "Nonsingular"),
            FiberClass::SingularSplit(l) => write!(f, "SingularSplit λ={}", format_rat(l)),
            FiberClass::SingularPointless => write!(f, "SingularPointless"),
        }
    }
}

/// The value (a q1 + b q2)^2 + (c q1 + d q2)^2 with q1 = z^2 - x^2 and
/// q2 = 2xz. Always nonnegative.
pub fn norm_form(m: &Mat2, x: &Rat, z: &Rat) -> Rat {
    let q1 = z * z - x * x;
    let q2 = Rat::from_integer(2.into()) * x * z;
    let (p, q) = m.apply(&q1, &q2);
    &p * &p + &q * &q
}

/// Membership of a point on the fiber of `m`, checked in the canonical
/// scaling so it is well defined on weighted-projective classes.
pub fn contains(m: &Mat2, p: &WPoint) -> bool {
    let rhs = norm_form(m, &p.x_rat(), &p.z_rat());
    p.y() * p.y() == rhs
}

/// The discriminant 2^16 (ad-bc)^4 ((a+d)^2 + (b-c)^2) ((a-d)^2 + (b+c)^2)
/// of the fiber of `m`.
pub fn discriminant(m: &Mat2) -> Rat {
    let det = m.det();
    let det2 = &det * &det;
    let f1 = {
        let s = &m.a + &m.d;
        let t = &m.b - &m.c;
        &s * &s + &t * &t
    };
    let f2 = {
        let s = &m.a - &m.d;
        let t = &m.b + &m.c;
        &s * &s + &t * &t
    };
    Rat::from_integer(BigInt::from(1u32) << 16) * &det2 * &det2 * f1 * f2
}

/// Singular fibers are exactly those with M M^t = (a^2+b^2) I; they reduce
/// to y^2 = (a^2+b^2)(x^2+z^2)^2 and split into two rational conics exactly
/// when a^2 + b^2 is a rational square.
pub fn classify_fiber(m: &Mat2) -> FiberClass {
    if !discriminant(m).is_zero() {
        return FiberClass::Nonsingular;
    }
    let n = &m.a * &m.a + &m.b * &m.b;
    match is_rational_square(&n) {
        Some(l) => FiberClass::SingularSplit(l),
        None => FiberClass::SingularPointless,
    }
}

/// The orbit of a point under the Klein four-group generated by the two
/// involutions y -> -y and (x:z) -> (-z:x). Sorted, deduplicated; its size
/// divides 4.
pub fn symmetry_orbit(p: &WPoint) -> Vec<WPoint> {
    let s2 = p.flip_xz();
    let mut orbit = vec![p.clone(), p.flip_y(), s2.flip_y(), s2];
    orbit.sort();
    orbit.dedup();
    orbit
}

/// The bilinear fiber equation a u1 u2 + b u1 v2 + c v1 u2 + d v1 v2 = 0 on
/// the product of two projective lines. Solutions in Pythagorean slopes
/// encode rational distance configurations.
pub fn bilinear_vanishes(m: &Mat2, a1: &crate::proj::ProjPair, a2: &crate::proj::ProjPair) -> bool {
    let u1 = Rat::from_integer(a1.u().clone());
    let v1 = Rat::from_integer(a1.v().clone());
    let u2 = Rat::from_integer(a2.u().clone());
    let v2 = Rat::from_integer(a2.v().clone());
    let val = &m.a * &u1 * &u2 + &m.b * &u1 * &v2 + &m.c * &v1 * &u2 + &m.d * &v1 * &v2;
    val.is_zero()
}

/// Whether an on-curve point lies in the degenerate locus
/// x y z (z^4 - x^4) (a q1 + b q2) (c q1 + d q2) = 0, which is the pullback
/// of the zero-width configurations u1 v1 u2 v2 = 0.
pub fn is_degenerate(m: &Mat2, p: &WPoint) -> Result<bool> {
    if !contains(m, p) {
        return Err(Error::PointNotOnCurve);
    }
    let x = p.x_rat();
    let z = p.z_rat();
    let q1 = &z * &z - &x * &x;
    let q2 = Rat::from_integer(2.into()) * &x * &z;
    let (g, h) = m.apply(&q1, &q2);
    let z4x4 = {
        let x2 = &x * &x;
        let z2 = &z * &z;
        &z2 * &z2 - &x2 * &x2
    };
    Ok(x.is_zero()
        || p.y().is_zero()
        || z.is_zero()
        || z4x4.is_zero()
        || g.is_zero()
        || h.is_zero())
}

/// Multiplies the matrix by the least positive integer making all entries
/// integral, and returns it with the multiplier. Together with
/// [`WPoint::rescale_y`] this realizes the isomorphism between the fibers of
/// M and mM, so callers can work with integral matrices.
pub fn integralize(m: &Mat2) -> (Mat2, BigInt) {
    let l1 = m.a.denom().lcm(m.b.denom());
    let l2 = m.c.denom().lcm(m.d.denom());
    let l = l1.lcm(&l2);
    let lr = Rat::from_integer(l.clone());
    (m.scale(&lr), l)
}

/// Integer entries of an integral matrix, for mod-p work.
pub fn integer_entries(m: &Mat2) -> Option<[BigInt; 4]> {
    if m.a.is_integer() && m.b.is_integer() && m.c.is_integer() && m.d.is_integer() {
        Some([
            m.a.to_integer(),
            m.b.to_integer(),
            m.c.to_integer(),
            m.d.to_integer(),
        ])
    } else {
        None
    }
}

/// Convenience: is the matrix entrywise integral with gcd 1?
pub fn is_primitive_integral(m: &Mat2) -> bool {
    match integer_entries(m) {
        None => false,
        Some([a, b, c, d]) => a.gcd(&b).gcd(&c).gcd(&d).is_one(),
    }
}
