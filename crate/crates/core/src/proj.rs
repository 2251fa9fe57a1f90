//! Points of the projective line over Q, canonicalized to coprime integers,
//! and Pythagorean slopes: the pairs (u:v) whose norm u^2 + v^2 is a
//! rational square.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

use crate::arith::{is_rational_square, Rat};
use crate::error::{Error, Result};

/// A point (u:v) of the projective line, stored canonically: u, v are
/// coprime integers and the last nonzero coordinate is positive.
/// Equality and hashing are structural on the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPair {
    u: BigInt,
    v: BigInt,
}

impl ProjPair {
    /// Builds the canonical representative of (u:v). Rejects (0:0).
    pub fn new(u: Rat, v: Rat) -> Result<ProjPair> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::ZeroProjectivePair);
        }
        // Clear denominators, then divide by the gcd.
        let scale = u.denom().lcm(v.denom());
        let mut ui = (u * Rat::from_integer(scale.clone())).to_integer();
        let mut vi = (v * Rat::from_integer(scale)).to_integer();
        let g = ui.gcd(&vi);
        ui /= &g;
        vi /= &g;
        let flip = if vi.is_zero() {
            ui.is_negative()
        } else {
            vi.is_negative()
        };
        if flip {
            ui = -ui;
            vi = -vi;
        }
        Ok(ProjPair { u: ui, v: vi })
    }

    pub fn from_ints(u: i64, v: i64) -> Result<ProjPair> {
        ProjPair::new(Rat::from_integer(u.into()), Rat::from_integer(v.into()))
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    /// u^2 + v^2 of the canonical representative.
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u + &self.v * &self.v
    }

    /// The affine value u/v, when v is nonzero.
    pub fn affine(&self) -> Option<Rat> {
        if self.v.is_zero() {
            None
        } else {
            Some(Rat::new(self.u.clone(), self.v.clone()))
        }
    }

    /// The involution (x:z) -> (-z:x) that swaps the two slope parameters
    /// of a given Pythagorean pair.
    pub fn swap_negate(&self) -> ProjPair {
        ProjPair::new(
            Rat::from_integer(-self.v.clone()),
            Rat::from_integer(self.u.clone()),
        )
        .expect("involution preserves nonzeroness")
    }
}

impl fmt::Debug for ProjPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProjPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.u, self.v)
    }
}

/// A projective pair together with the witness that its norm u^2 + v^2 is a
/// rational square, when it is one. `hyp` is present exactly for members of
/// the Pythagorean slope set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SlopePair {
    pair: ProjPair,
    hyp: Option<Rat>,
}

impl SlopePair {
    pub fn new(pair: ProjPair) -> SlopePair {
        let hyp = is_rational_square(&Rat::from_integer(pair.norm()));
        SlopePair { pair, hyp }
    }

    pub fn pair(&self) -> &ProjPair {
        &self.pair
    }

    /// The exact square root of u^2 + v^2, present iff the pair is a
    /// Pythagorean slope.
    pub fn hyp(&self) -> Option<&Rat> {
        self.hyp.as_ref()
    }

    pub fn is_pythagorean(&self) -> bool {
        self.hyp.is_some()
    }
}

impl fmt::Debug for SlopePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SlopePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pair)
    }
}

/// The slope (1-t^2 : 2t) of the rational right triangle with parameter t.
/// The result is always Pythagorean, with hypotenuse witness 1 + t^2 before
/// canonical rescaling.
pub fn slope_from_parameter(t: &Rat) -> SlopePair {
    let one = Rat::from_integer(1.into());
    let u = &one - t * t;
    let v = t + t;
    let pair = ProjPair::new(u, v).expect("1 - t^2 and 2t never vanish together");
    let sp = SlopePair::new(pair);
    debug_assert!(sp.is_pythagorean());
    sp
}

/// All (x:z) with (z^2 - x^2 : 2xz) = (u:v): exactly two solutions,
/// interchanged by (x:z) -> (-z:x), when u^2 + v^2 is a nonzero rational
/// square; the empty list otherwise.
pub fn parameters_from_slope(alpha: &ProjPair) -> Vec<ProjPair> {
    let norm = alpha.norm();
    let w = match crate::arith::int_sqrt_exact(&norm) {
        Some(w) => w,
        None => return Vec::new(),
    };
    let u = alpha.u();
    let v = alpha.v();
    if v.is_zero() {
        // (z^2 - x^2 : 2xz) = (1:0) forces xz = 0.
        return vec![
            ProjPair::from_ints(0, 1).unwrap(),
            ProjPair::from_ints(1, 0).unwrap(),
        ];
    }
    // Solve v t^2 + 2u t - v = 0 for t = x/z; the roots are (-u +- w)/v.
    let t1 = Rat::new(-u + &w, v.clone());
    let t2 = Rat::new(-u - &w, v.clone());
    vec![
        ProjPair::new(t1, Rat::from_integer(1.into())).unwrap(),
        ProjPair::new(t2, Rat::from_integer(1.into())).unwrap(),
    ]
}
