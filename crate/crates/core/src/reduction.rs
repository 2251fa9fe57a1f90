//! Reduction of a fiber with a known rational point to triangular form
//! (1, r; 0, s), and transport of points along the double-coset
//! isomorphisms M' = l r1 M r2^-1 with r1, r2 orthogonal.

use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::family::{contains, Mat2, WPoint};

/// Witness of the reduction of (M, P) to triangular form: orthogonal
/// factors r1, r2 and a scale with scale * r1 * M * r2 = (1, r; 0, s)
/// exactly, where (r, s) are determined by the base point alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionWitness {
    pub r: Rat,
    pub s: Rat,
    pub r1: Mat2,
    pub r2: Mat2,
    pub scale: Rat,
}

impl ReductionWitness {
    /// The triangular matrix (1, r; 0, s).
    pub fn triangular(&self) -> Mat2 {
        Mat2::new(Rat::one(), self.r.clone(), Rat::zero(), self.s.clone())
            .expect("s != 0 for a valid witness")
    }

    /// Checks the defining identity scale * r1 * M * r2 = (1, r; 0, s).
    pub fn verifies(&self, m: &Mat2) -> bool {
        self.r1.mul(m).mul(&self.r2).scale(&self.scale) == self.triangular()
    }

    /// Transports a point of the fiber of `m` to the triangular fiber.
    pub fn transport(&self, m: &Mat2, p: &WPoint) -> Result<WPoint> {
        // triangular = scale * r1 * m * (r2^-1)^-1, so the coset datum for
        // the transport map is (scale, r1, r2^-1).
        transport_point(m, &self.triangular(), &self.scale, &self.r1, &self.r2.inverse()?, p)
    }
}

/// Reduces (M, P) with P on the fiber of M to the triangular representative.
///
/// With q1 = z0^2 - x0^2 and q2 = 2 x0 z0:
///   r = ((ab + cd)(q1^2 - q2^2) - (a^2 - b^2 + c^2 - d^2) q1 q2) / y0^2
///   s = (ad - bc)(x0^2 + z0^2)^2 / y0^2
///   r1 = (1/y0) (A, C; -C, A)   with (A, C) = M (q1, q2)
///   r2 = (1/(x0^2 + z0^2)) (q1, -q2; q2, q1)
///   scale = (x0^2 + z0^2) / y0
/// A negative scale is absorbed into r1 (both are negated), which keeps r1
/// special orthogonal and the identity exact.
pub fn reduce_to_triangular(m: &Mat2, p: &WPoint) -> Result<ReductionWitness> {
    if !contains(m, p) {
        return Err(Error::PointNotOnCurve);
    }
    let x0 = p.x_rat();
    let z0 = p.z_rat();
    let y0 = p.y().clone();
    let n = &x0 * &x0 + &z0 * &z0;
    // Over Q these cannot occur for an on-curve point; guard anyway.
    if y0.is_zero() || n.is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    let q1 = &z0 * &z0 - &x0 * &x0;
    let q2 = Rat::from_integer(2.into()) * &x0 * &z0;
    let y0sq = &y0 * &y0;

    let ab_cd = &m.a * &m.b + &m.c * &m.d;
    let sq_diff = &m.a * &m.a - &m.b * &m.b + &m.c * &m.c - &m.d * &m.d;
    let r = (&ab_cd * (&q1 * &q1 - &q2 * &q2) - &sq_diff * &q1 * &q2) / &y0sq;
    let s = m.det() * &n * &n / &y0sq;

    let (big_a, big_c) = m.apply(&q1, &q2);
    let mut r1 = Mat2::new(
        &big_a / &y0,
        &big_c / &y0,
        -&big_c / &y0,
        &big_a / &y0,
    )?;
    let mut scale = &n / &y0;
    if scale.is_negative() {
        scale = -scale;
        r1 = r1.scale(&Rat::from_integer((-1).into()));
    }
    let r2 = Mat2::new(&q1 / &n, -&q2 / &n, &q2 / &n, &q1 / &n)?;

    debug_assert!(r1.is_orthogonal());
    debug_assert!(r2.is_orthogonal());
    let witness = ReductionWitness { r, s, r1, r2, scale };
    debug_assert!(witness.verifies(m));
    Ok(witness)
}

/// Writes an orthogonal matrix as (u, -v; eps v, eps u) with u^2 + v^2 = 1
/// and returns half-angle parameters (s, t) with u = (t^2-s^2)/(t^2+s^2),
/// v = 2st/(t^2+s^2), canonicalized to coprime integers, plus eps = +-1.
///
/// Uses w = v/(1+u) with (s, t) = (w, 1) when u != -1, and (1, 0) when
/// u = -1.
pub fn rotation_params(r: &Mat2) -> Result<(Rat, Rat, i32)> {
    if !r.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let u = r.a.clone();
    let v = -r.b.clone();
    let det = r.det();
    let eps: i32 = if det.is_one() { 1 } else { -1 };
    // Bottom row must match (eps v, eps u); orthogonality guarantees it up
    // to the determinant sign, checked here exactly.
    let e = Rat::from_integer(eps.into());
    if r.c != &e * &v || r.d != &e * &u {
        return Err(Error::NotOrthogonal);
    }
    let minus_one = Rat::from_integer((-1).into());
    let (s, t) = if u == minus_one {
        (Rat::one(), Rat::zero())
    } else {
        let w = &v / (Rat::one() + &u);
        (w, Rat::one())
    };
    // Canonicalize (s, t) to a coprime integer pair; any rescaling of the
    // half-angle pair induces the same transport map.
    let pair = crate::proj::ProjPair::new(s, t).expect("(s,t) != (0,0)");
    Ok((
        Rat::from_integer(pair.u().clone()),
        Rat::from_integer(pair.v().clone()),
        eps,
    ))
}

/// Transports P on the fiber of `m` to the fiber of `m_dst`, given coset
/// data with m_dst = l * r1 * m * r2^-1. The map is
///   (x : y : z) -> (eps (t x + s z) : l (s^2 + t^2) y : t z - s x)
/// with (s, t, eps) the half-angle parameters of r2. It commutes with both
/// curve involutions.
pub fn transport_point(
    m: &Mat2,
    m_dst: &Mat2,
    l: &Rat,
    r1: &Mat2,
    r2: &Mat2,
    p: &WPoint,
) -> Result<WPoint> {
    if !r1.is_orthogonal() || !r2.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    if &r1.mul(m).mul(&r2.inverse()?).scale(l) != m_dst {
        return Err(Error::CosetMismatch);
    }
    if !contains(m, p) {
        return Err(Error::PointNotOnCurve);
    }
    let (s, t, eps) = rotation_params(r2)?;
    let e = Rat::from_integer(eps.into());
    let x = p.x_rat();
    let z = p.z_rat();
    let nx = &e * (&t * &x + &s * &z);
    let ny = l * (&s * &s + &t * &t) * p.y();
    let nz = &t * &z - &s * &x;
    let image = WPoint::new(nx, ny, nz)?;
    debug_assert!(contains(m_dst, &image));
    Ok(image)
}
