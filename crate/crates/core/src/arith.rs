//! Exact rational and modular arithmetic primitives.
//!
//! Everything in this crate computes over `Rat = Ratio<BigInt>`, which is
//! stored fully reduced with a positive denominator, so equality is
//! structural. There is no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for a small integer as a `Rat`.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for a fraction of small integers as a `Rat`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the text form `n/d` (denominator omitted when 1).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Formats a rational as `n/d`, omitting the denominator when it is 1.
pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Returns the nonnegative exact square root of `q` when `q` is the square
/// of a rational, and `None` otherwise. Negative inputs always give `None`.
///
/// Because rationals are stored reduced, `q` is a square exactly when its
/// numerator and denominator are both perfect squares; integer square roots
/// are taken on each part separately.
pub fn is_rational_square(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let rn = int_sqrt_exact(q.numer())?;
    let rd = int_sqrt_exact(q.denom())?;
    Some(Rat::new(rn, rd))
}

/// Trial-division primality test. Desk-scale: intended for the small primes
/// used by the local census.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    if *n < BigInt::from(4) {
        return true;
    }
    if n.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Legendre symbol (a/p) for an odd prime `p`, via Euler's criterion.
///
/// Returns 0 when p | a, 1 for nonzero quadratic residues, -1 otherwise.
/// Rejects p = 2 and composite p.
pub fn legendre_symbol(a: &BigInt, p: &BigInt) -> Result<i32> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::InvalidModulus);
    }
    let a_mod = a.mod_floor(p);
    if a_mod.is_zero() {
        return Ok(0);
    }
    let exp = (p - 1u32) / 2u32;
    let pow = a_mod.modpow(&exp, p);
    if pow.is_one() {
        Ok(1)
    } else {
        // For prime p the only other value of a^((p-1)/2) is p - 1.
        debug_assert_eq!(pow, p - 1u32);
        Ok(-1)
    }
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let mut v = 0u32;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// Squarefree part of a nonzero integer (same sign as the input), by trial
/// division. Used only to canonicalize the degenerate weighted-projective
/// point with x = z = 0, which never lies on a curve fiber.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        let mut e = 0u32;
        while m.is_multiple_of(&d) {
            m /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1u32;
    }
    out *= m;
    if n.is_negative() {
        -out
    } else {
        out
    }
}
