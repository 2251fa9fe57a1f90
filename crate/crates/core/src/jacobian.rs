//! Birational maps between a nonsingular fiber with a marked rational point
//! and the Weierstrass model of its Jacobian,
//!
//! ```text
//! y^2 = x^3 + (a^2+b^2+c^2+d^2) x^2 + (ad-bc)^2 x
//! ```
//!
//! sending the marked point to the identity.
//!
//! Construction: a rotation of (x:z) moves the marked point to the section
//! at infinity, which makes the affine quartic monic after dividing by the
//! square leading coefficient. Completing the square, w = v + u^2 + (p/2)u + k
//! turns the curve into a conic in (u, w) that is quadratic in u, and the
//! discriminant of that quadratic is a cubic in w: this yields an explicit
//! inverse pair of maps with no transcription trusted anywhere. A final
//! exact linear change of variable, solved from the c4/c6 invariants, lands
//! on the Jacobian model above. Every step is verified by assertions.

use num_traits::{One, Zero};

use crate::arith::{is_rational_square, Rat};
use crate::elliptic::{ECPoint, WCurve};
use crate::error::{Error, Result};
use crate::family::{classify_fiber, contains, FiberClass, Mat2, WPoint};
use crate::reduction::transport_point;

/// Exact mutually-inverse maps between a fiber and the Weierstrass model of
/// its Jacobian, anchored at a marked point.
#[derive(Clone, Debug)]
pub struct JacobianMaps {
    m: Mat2,
    base: WPoint,
    curve: WCurve,
    /// Fiber matrix after the rotation taking the base point to infinity.
    m_rot: Mat2,
    rot: Mat2,
    rot_inv: Mat2,
    /// y-coordinate of the rotated base point (1 : y_inf : 0).
    y_inf: Rat,
    /// Monic quartic v^2 = u^4 + p u^3 + q u^2 + r u + s of the rotated fiber.
    p: Rat,
    k: Rat,
    big_r: Rat,
    big_s: Rat,
    /// Linear change of variable W = u_sq * x + rho onto the Jacobian model.
    u_sq: Rat,
    u_pos: Rat,
    rho: Rat,
}

fn c4_c6(a2: &Rat, a4: &Rat, a6: &Rat) -> (Rat, Rat) {
    let i = |k: i64| Rat::from_integer(k.into());
    let c4 = i(16) * a2 * a2 - i(48) * a4;
    let c6 = -(i(64) * a2 * a2 * a2) + i(288) * a2 * a4 - i(864) * a6;
    (c4, c6)
}

impl JacobianMaps {
    /// Builds the maps for the fiber of `m` anchored at `base`.
    pub fn new(m: &Mat2, base: &WPoint) -> Result<JacobianMaps> {
        if classify_fiber(m) != FiberClass::Nonsingular {
            return Err(Error::SingularFiber);
        }
        if !contains(m, base) {
            return Err(Error::PointNotOnCurve);
        }
        let curve = WCurve::jacobian_of(m)?;

        // Rotation with half-angle parameters (s, t) = (z0, x0) sends
        // (x0 : z0) to (1 : 0).
        let s = base.z_rat();
        let t = base.x_rat();
        let n = &s * &s + &t * &t;
        let u = (&t * &t - &s * &s) / &n;
        let v = Rat::from_integer(2.into()) * &s * &t / &n;
        let rot = Mat2::new(u.clone(), -v.clone(), v, u)?;
        let rot_inv = rot.inverse()?;
        let m_rot = m.mul(&rot_inv);

        let one = Rat::one();
        let at_inf = transport_point(m, &m_rot, &one, &Mat2::identity(), &rot, base)?;
        if !at_inf.z().is_zero() || !at_inf.x().is_one() {
            return Err(Error::PointNotOnCurve);
        }
        let y_inf = at_inf.y().clone();

        // Affine quartic of the rotated fiber, made monic by dividing by
        // the leading coefficient y_inf^2 = a^2 + c^2.
        let (a, b, c, d) = (&m_rot.a, &m_rot.b, &m_rot.c, &m_rot.d);
        let e4 = a * a + c * c;
        debug_assert_eq!(e4, &y_inf * &y_inf);
        let i = |k: i64| Rat::from_integer(k.into());
        let p = i(-4) * (a * b + c * d) / &e4;
        let q = (i(-2) * (a * a + c * c) + i(4) * (b * b + d * d)) / &e4;
        let r = i(4) * (a * b + c * d) / &e4;
        let s_c = (a * a + c * c) / &e4;
        debug_assert!(s_c.is_one());

        let k = (i(4) * &q - &p * &p) / i(8);
        let big_r = &r - &p * &k;
        let big_s = &s_c - &k * &k;

        // Derived monic cubic: Y'^2 = W^3 + a2d W^2 + a4d W + a6d.
        let a2d = (&p * &p - i(16) * &k) / i(16);
        let a4d = (&p * &big_r - i(4) * &big_s) / i(16);
        let a6d = &big_r * &big_r / i(64);

        // Align with the Jacobian model through the c-invariants: the models
        // are related by W = u^2 x + rho with u rational, so u^2 is the ratio
        // of (c6/c4) values and rho follows from the x^2 coefficient.
        let (c4d, c6d) = c4_c6(&a2d, &a4d, &a6d);
        let (c4t, c6t) = c4_c6(&curve.a2, &curve.a4, &Rat::zero());
        if c4d.is_zero() || c6d.is_zero() || c4t.is_zero() || c6t.is_zero() {
            return Err(Error::SingularFiber);
        }
        let u_sq = (&c6d * &c4t) / (&c6t * &c4d);
        let u_pos = is_rational_square(&u_sq).ok_or(Error::SingularFiber)?;
        let rho = (&u_sq * &curve.a2 - &a2d) / i(3);
        // rho must be a 2-torsion abscissa of the derived cubic, and the
        // linear-coefficient identity must close exactly.
        let rho_val = ((&rho + &a2d) * &rho + &a4d) * &rho + &a6d;
        if !rho_val.is_zero()
            || &curve.a4 * &u_sq * &u_sq
                != i(3) * &rho * &rho + i(2) * &a2d * &rho + &a4d
        {
            return Err(Error::SingularFiber);
        }

        let maps = JacobianMaps {
            m: m.clone(),
            base: base.clone(),
            curve,
            m_rot,
            rot,
            rot_inv,
            y_inf,
            p,
            k,
            big_r,
            big_s,
            u_sq,
            u_pos,
            rho,
        };
        debug_assert_eq!(maps.forward(base)?, ECPoint::Infinity);
        Ok(maps)
    }

    pub fn curve(&self) -> &WCurve {
        &self.curve
    }

    pub fn base_point(&self) -> &WPoint {
        &self.base
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    fn g_of(&self, u: &Rat) -> Rat {
        u * u + &self.p / Rat::from_integer(2.into()) * u + &self.k
    }

    /// Maps an on-curve point to the Weierstrass model; the marked point
    /// goes to the identity.
    pub fn forward(&self, point: &WPoint) -> Result<ECPoint> {
        let one = Rat::one();
        let moved = transport_point(
            &self.m,
            &self.m_rot,
            &one,
            &Mat2::identity(),
            &self.rot,
            point,
        )?;
        let i = |k: i64| Rat::from_integer(k.into());
        let (w, y_big) = if moved.z().is_zero() {
            if moved.y() == &self.y_inf {
                return Ok(ECPoint::Infinity);
            }
            debug_assert_eq!(moved.y(), &-self.y_inf.clone());
            // Second section at infinity: the branch with v ~ -u^2 has
            // w -> 0 and Y -> -R.
            (Rat::zero(), -self.big_r.clone())
        } else {
            let u = moved.x_rat() / moved.z_rat();
            let z2 = moved.z_rat() * moved.z_rat();
            let v_hat = moved.y() / &z2 / &self.y_inf;
            let w = &v_hat + self.g_of(&u);
            let y_big = i(4) * &u * &w + &self.p * &w + &self.big_r;
            (w, y_big)
        };
        let x_t = (&w / i(2) - &self.rho) / &self.u_sq;
        let y_t = (&y_big / i(8)) / (&self.u_pos * &self.u_pos * &self.u_pos);
        let out = ECPoint::affine(x_t, y_t);
        debug_assert!(self.curve.contains(&out));
        Ok(out)
    }

    /// Maps a Weierstrass point back to the fiber; the identity goes to the
    /// marked point.
    pub fn backward(&self, point: &ECPoint) -> Result<WPoint> {
        let (x_t, y_t) = match point {
            ECPoint::Infinity => return Ok(self.base.clone()),
            ECPoint::Affine(x, y) => (x, y),
        };
        if !self.curve.contains(point) {
            return Err(Error::PointNotOnCurve);
        }
        let i = |k: i64| Rat::from_integer(k.into());
        let w = i(2) * (&self.u_sq * x_t + &self.rho);
        let y_big = i(8) * &self.u_pos * &self.u_pos * &self.u_pos * y_t;
        let moved = if w.is_zero() {
            if y_big == -self.big_r.clone() {
                WPoint::new(Rat::one(), -self.y_inf.clone(), Rat::zero())?
            } else {
                // On the curve, w = 0 forces Y = +-R; the +R sheet has the
                // single affine preimage u = -S/R.
                debug_assert_eq!(y_big, self.big_r);
                debug_assert!(!self.big_r.is_zero());
                let u = -&self.big_s / &self.big_r;
                let v_hat = -self.g_of(&u);
                WPoint::new(u, v_hat * &self.y_inf, Rat::one())?
            }
        } else {
            let u = (&y_big - &self.p * &w - &self.big_r) / (i(4) * &w);
            let v_hat = &w - self.g_of(&u);
            WPoint::new(u, v_hat * &self.y_inf, Rat::one())?
        };
        let one = Rat::one();
        let back = transport_point(
            &self.m_rot,
            &self.m,
            &one,
            &Mat2::identity(),
            &self.rot_inv,
            &moved,
        )?;
        debug_assert!(contains(&self.m, &back));
        Ok(back)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i};
    use crate::elliptic::{ec_add, ec_scalar_mul};
    use crate::family::symmetry_orbit;

    fn line_matrix_two() -> Mat2 {
        // Fiber matrix (1, -1; 0, 7/3) of the line parameter t = 2.
        Mat2::new(rat_i(1), rat_i(-1), rat_i(0), rat(7, 3)).unwrap()
    }

    #[test]
    fn jacobian_model_of_line_fiber() {
        let m = line_matrix_two();
        let base = WPoint::from_ints(0, 1, 1).unwrap();
        let maps = JacobianMaps::new(&m, &base).unwrap();
        assert_eq!(maps.curve().a2, rat(67, 9));
        assert_eq!(maps.curve().a4, rat(49, 9));
        // (-1, +-1) lies on the model.
        assert!(maps.curve().contains(&ECPoint::affine_i(-1, 1)));
        assert!(maps.curve().contains(&ECPoint::affine_i(-1, -1)));
    }

    #[test]
    fn base_point_maps_to_identity_and_back() {
        let m = line_matrix_two();
        let base = WPoint::from_ints(0, 1, 1).unwrap();
        let maps = JacobianMaps::new(&m, &base).unwrap();
        assert_eq!(maps.forward(&base).unwrap(), ECPoint::Infinity);
        assert_eq!(maps.backward(&ECPoint::Infinity).unwrap(), base);
    }

    #[test]
    fn round_trip_on_multiples_of_generator() {
        let m = line_matrix_two();
        let base = WPoint::from_ints(0, 1, 1).unwrap();
        let maps = JacobianMaps::new(&m, &base).unwrap();
        let g = ECPoint::affine_i(-1, -1);
        let mut q = ECPoint::Infinity;
        for n in 1..=20 {
            q = ec_add(maps.curve(), &q, &g).unwrap();
            let h = maps.backward(&q).unwrap();
            assert!(contains(&m, &h), "n = {n}");
            assert_eq!(maps.forward(&h).unwrap(), q, "n = {n}");
        }
    }

    #[test]
    fn backward_covers_two_torsion() {
        let m = line_matrix_two();
        let base = WPoint::from_ints(0, 1, 1).unwrap();
        let maps = JacobianMaps::new(&m, &base).unwrap();
        // (0, 0) is 2-torsion on the Jacobian model.
        let t = ECPoint::affine_i(0, 0);
        let h = maps.backward(&t).unwrap();
        assert!(contains(&m, &h));
        assert_eq!(maps.forward(&h).unwrap(), t);
    }

    #[test]
    fn forward_backward_respect_orbit_sections() {
        // Distinct points of one symmetry orbit map to distinct Weierstrass
        // points (the correspondence identifies orbits only through slopes).
        let m = line_matrix_two();
        let base = WPoint::from_ints(0, 1, 1).unwrap();
        let maps = JacobianMaps::new(&m, &base).unwrap();
        let g = ECPoint::affine_i(-1, -1);
        let q = ec_scalar_mul(maps.curve(), 3, &g).unwrap();
        let h = maps.backward(&q).unwrap();
        let mut images = Vec::new();
        for pt in symmetry_orbit(&h) {
            images.push(maps.forward(&pt).unwrap());
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 4);
    }

    #[test]
    fn anchored_at_infinity_point_directly() {
        // A base point already at z = 0 short-circuits the rotation.
        let m = line_matrix_two();
        // (1 : y : 0) with y^2 = a^2 + c^2 = 1.
        let inf = WPoint::from_ints(1, 1, 0).unwrap();
        assert!(contains(&m, &inf));
        let maps = JacobianMaps::new(&m, &inf).unwrap();
        assert_eq!(maps.forward(&inf).unwrap(), ECPoint::Infinity);
        let g = ECPoint::affine_i(-1, 1);
        let h = maps.backward(&g).unwrap();
        assert_eq!(maps.forward(&h).unwrap(), g);
    }

    #[test]
    fn singular_fiber_rejected() {
        let m = Mat2::from_ints(3, 4, -4, 3).unwrap();
        let p = WPoint::from_ints(0, 5, 1).unwrap();
        assert!(contains(&m, &p));
        assert!(matches!(
            JacobianMaps::new(&m, &p),
            Err(Error::SingularFiber)
        ));
    }

    #[test]
    fn off_curve_base_rejected() {
        let m = line_matrix_two();
        let p = WPoint::from_ints(0, 3, 1).unwrap();
        assert!(matches!(
            JacobianMaps::new(&m, &p),
            Err(Error::PointNotOnCurve)
        ));
    }
}
