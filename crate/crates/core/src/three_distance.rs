//! Families of planar points at rational distance from (0,0), (0,1) and
//! (1,1), produced by walking a non-torsion point on the Jacobian of a line
//! fiber, plus decompositions of rationals into sums and products of
//! Pythagorean slopes.

use num_traits::{One, Signed, Zero};

use crate::arith::{is_rational_square, Rat};
use crate::correspond::slopes_of_point;
use crate::elliptic::{ec_add, ec_scalar_mul, minus_one_torsion, torsion_order, ECPoint, TorsionVerdict};
use crate::error::{Error, Result};
use crate::family::Mat2;
use crate::jacobian::JacobianMaps;
use crate::proj::ProjPair;

/// One point on the line y = 2t/(1-t^2) x at exact rational distance from
/// (0,0), (0,1) and (1,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeDistanceSolution {
    pub x: Rat,
    pub y: Rat,
    pub d1: Rat,
    pub d2: Rat,
    pub d3: Rat,
    pub t: Rat,
    pub n: i64,
}

/// Exact distances to (0,0), (0,1) and (1,1) when all three are rational.
pub fn square_distances(x: &Rat, y: &Rat) -> Option<(Rat, Rat, Rat)> {
    let one = Rat::one();
    let d1 = is_rational_square(&(x * x + y * y))?;
    let ym = &one - y;
    let d2 = is_rational_square(&(x * x + &ym * &ym))?;
    let xm = &one - x;
    let d3 = is_rational_square(&(&xm * &xm + &ym * &ym))?;
    Some((d1, d2, d3))
}

/// The fiber matrix (1, -1; 0, s(t)) with s(t) = 1 - 2t/(1-t^2), whose
/// slope pairs encode three-distance points on the line y = 2t/(1-t^2) x.
/// Rejects t in {0, +-1}; the determinant s(t) never vanishes elsewhere.
pub fn line_matrix(t: &Rat) -> Result<Mat2> {
    let one = Rat::one();
    if t.is_zero() || t.abs() == one {
        return Err(Error::ExcludedParameter("t in {0, 1, -1}"));
    }
    let t2 = t * t;
    let s = &one - (t + t) / (&one - &t2);
    Mat2::new(one.clone(), -one, Rat::zero(), s)
}

/// Projects a slope pair to the line y = 2t/(1-t^2) x:
///   ( (1-t^2) v1 / D, 2t v1 / D )  with  D = (1-t^2) u1 + 2t v1.
/// Returns None exactly when D = 0 (the single removed point of the fiber).
pub fn slope_to_line_point(t: &Rat, alpha1: &ProjPair) -> Result<Option<(Rat, Rat)>> {
    let one = Rat::one();
    if t.is_zero() || t.abs() == one {
        return Err(Error::ExcludedParameter("t in {0, 1, -1}"));
    }
    let u1 = Rat::from_integer(alpha1.u().clone());
    let v1 = Rat::from_integer(alpha1.v().clone());
    let c = &one - t * t;
    let d = &c * &u1 + (t + t) * &v1;
    if d.is_zero() {
        return Ok(None);
    }
    Ok(Some((&c * &v1 / &d, (t + t) * &v1 / &d)))
}

/// The pipeline for one line parameter: the fiber of `line_matrix(t)`, its
/// Jacobian maps anchored at (0:1:1), and the non-torsion generator
/// (-1, -1) on the Jacobian model.
pub struct LinePipeline {
    t: Rat,
    m: Mat2,
    maps: JacobianMaps,
    generator: ECPoint,
}

impl LinePipeline {
    pub fn new(t: &Rat) -> Result<LinePipeline> {
        let m = line_matrix(t)?;
        let base = crate::family::WPoint::from_ints(0, 1, 1).expect("valid point");
        let maps = JacobianMaps::new(&m, &base)?;
        let generator = ECPoint::affine_i(-1, -1);
        assert!(maps.curve().contains(&generator));
        // (-1, -1) is the distinguished point of the reduced form with
        // r = -1; it is non-torsion for every admissible t.
        let s = &m.d;
        assert_eq!(
            minus_one_torsion(&-Rat::one(), s),
            Ok(TorsionVerdict::NonTorsion)
        );
        Ok(LinePipeline { t: t.clone(), m, maps, generator })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn maps(&self) -> &JacobianMaps {
        &self.maps
    }

    /// The solution for index n, when defined. Undefined cases (the zero
    /// section and the removed point of the line projection) give None.
    pub fn solution(&self, n: i64) -> Result<Option<ThreeDistanceSolution>> {
        let q = ec_scalar_mul(self.maps.curve(), n, &self.generator)?;
        self.solution_at(&q, n)
    }

    /// Solutions for n in 1..=n_max, computed incrementally.
    pub fn solutions(&self, n_max: i64) -> Result<Vec<ThreeDistanceSolution>> {
        let mut out = Vec::new();
        let mut q = ECPoint::Infinity;
        for n in 1..=n_max {
            q = ec_add(self.maps.curve(), &q, &self.generator)?;
            if let Some(sol) = self.solution_at(&q, n)? {
                out.push(sol);
            }
        }
        Ok(out)
    }

    fn solution_at(&self, q: &ECPoint, n: i64) -> Result<Option<ThreeDistanceSolution>> {
        if q.is_infinity() {
            // The zero section lands on the base point, whose configuration
            // is degenerate; treat it as undefined.
            return Ok(None);
        }
        let h = self.maps.backward(q)?;
        let (a1, _a2) = slopes_of_point(&self.m, &h)?;
        let (x, y) = match slope_to_line_point(&self.t, a1.pair())? {
            Some(xy) => xy,
            None => return Ok(None),
        };
        let (d1, d2, d3) = square_distances(&x, &y)
            .expect("points produced by the slope correspondence have rational distances");
        // On-line identity y (1 - t^2) = 2 t x.
        debug_assert_eq!(
            &y * (Rat::one() - &self.t * &self.t),
            (&self.t + &self.t) * &x
        );
        Ok(Some(ThreeDistanceSolution { x, y, d1, d2, d3, t: self.t.clone(), n }))
    }
}

/// Convenience wrapper building the pipeline for one call.
pub fn rho(n: i64, t: &Rat) -> Result<Option<ThreeDistanceSolution>> {
    LinePipeline::new(t)?.solution(n)
}

fn slope_witness_ok(x: &Rat) -> bool {
    is_rational_square(&(x * x + Rat::one())).is_some()
}

/// Walks multiples of `generator` on `maps`, converting each image point on
/// the fiber into a pair of affine slopes, and collects `count` distinct
/// accepted outputs.
fn collect_from_multiples<T, F>(
    maps: &JacobianMaps,
    generator: &ECPoint,
    count: usize,
    mut accept: F,
) -> Result<Vec<T>>
where
    T: PartialEq,
    F: FnMut(&Rat, &Rat) -> Option<T>,
{
    let mut out: Vec<T> = Vec::new();
    if count == 0 {
        return Ok(out);
    }
    let mut q = ECPoint::Infinity;
    let budget = 64 + 16 * count as i64;
    for _ in 0..budget {
        q = ec_add(maps.curve(), &q, generator)?;
        if q.is_infinity() {
            continue;
        }
        let h = maps.backward(&q)?;
        let (a1, a2) = slopes_of_point(maps.matrix(), &h)?;
        let (x1, x2) = match (a1.pair().affine(), a2.pair().affine()) {
            (Some(x1), Some(x2)) => (x1, x2),
            _ => continue,
        };
        debug_assert!(slope_witness_ok(&x1) && slope_witness_ok(&x2));
        if let Some(item) = accept(&x1, &x2) {
            if !out.contains(&item) {
                out.push(item);
                if out.len() == count {
                    return Ok(out);
                }
            }
        }
    }
    Err(Error::SearchExhausted)
}

/// `count` distinct pairs (a1, a2) of Pythagorean slopes with
/// a1 + a2 = target. The target itself must be a Pythagorean slope.
///
/// For target = 0 the pairs are (a, -a), the slope set being closed under
/// negation; otherwise pairs come from multiples of the generator
/// (t, (t+1)^2/2) on the Jacobian model of the fiber of (0, 1; 1, -target).
pub fn slope_sum_pairs(target: &Rat, count: usize) -> Result<Vec<(Rat, Rat)>> {
    let w = is_rational_square(&(target * target + Rat::one()))
        .ok_or(Error::NotPythagorean)?;
    if target.is_zero() {
        let mut out = Vec::new();
        for k in 2..2 + count as i64 {
            let a = slope_from_param_affine(k);
            out.push((a.clone(), -a));
        }
        return Ok(out);
    }
    // Solve target = (1 - t^2) / 2t; the root is never in {0, +-1} for a
    // nonzero Pythagorean target.
    let t = w - target;
    debug_assert!(!t.is_zero() && t.abs() != Rat::one());
    let m = Mat2::new(Rat::zero(), Rat::one(), Rat::one(), -target.clone())?;
    let base = crate::family::WPoint::from_ints(0, 1, 1).expect("valid point");
    let maps = JacobianMaps::new(&m, &base)?;
    let half = Rat::new(1.into(), 2.into());
    let tp1 = &t + Rat::one();
    let generator = ECPoint::affine(t.clone(), half * &tp1 * &tp1);
    if !maps.curve().contains(&generator) {
        return Err(Error::PointNotOnCurve);
    }
    assert_eq!(torsion_order(maps.curve(), &generator)?, None);
    collect_from_multiples(&maps, &generator, count, |x1, x2| {
        debug_assert_eq!(x1 + x2, *target);
        let pair = if x1 <= x2 {
            (x1.clone(), x2.clone())
        } else {
            (x2.clone(), x1.clone())
        };
        Some(pair)
    })
}

fn slope_from_param_affine(k: i64) -> Rat {
    let kr = Rat::from_integer(k.into());
    (Rat::one() - &kr * &kr) / (&kr + &kr)
}

/// `count` distinct triples (a1, a2, a2) of Pythagorean slopes with
/// a1 + a2 + a2 = t, from the fiber of (0, 1; 2, -t) anchored at (0:2:1).
/// Rejects t = 0, which is served by [`slope_sum_pairs`] with negation.
pub fn three_slope_sums(t: &Rat, count: usize) -> Result<Vec<[Rat; 3]>> {
    if t.is_zero() {
        return Err(Error::ExcludedParameter("t = 0"));
    }
    let m = Mat2::new(Rat::zero(), Rat::one(), Rat::from_integer(2.into()), -t.clone())?;
    let base = crate::family::WPoint::from_ints(0, 2, 1).expect("valid point");
    let maps = JacobianMaps::new(&m, &base)?;
    // The reduced form has (r, s) = (-t/2, -1/2), whose distinguished point
    // is non-torsion for every t != 0; it sits at (-4, -4t) on the model.
    let verdict = minus_one_torsion(&(-t / Rat::from_integer(2.into())), &Rat::new((-1).into(), 2.into()))?;
    assert_eq!(verdict, TorsionVerdict::NonTorsion);
    let generator = ECPoint::affine(
        Rat::from_integer((-4).into()),
        Rat::from_integer((-4).into()) * t,
    );
    if !maps.curve().contains(&generator) {
        return Err(Error::PointNotOnCurve);
    }
    collect_from_multiples(&maps, &generator, count, |x1, x2| {
        debug_assert_eq!(x1 + x2 + x2, *t);
        Some([x1.clone(), x2.clone(), x2.clone()])
    })
}

/// `count` distinct triples (a1, a2, a3) of Pythagorean slopes with
/// a1 a2 a3 = t. Rejects t = 0.
///
/// For t outside {0, +-1}, with u = t^2 + 2 and s = -t * 2u/(1-u^2), pairs
/// with a1 a2 = -s come from an explicit non-torsion point on the Jacobian
/// model of the fiber of (1, 0; 0, s), and a3 = (1-u^2)/(2u) completes the
/// product. For t = +-1 the same construction runs with u = 5/6 and the
/// explicit non-torsion point (-12/11, 204/121), so a3 = +-11/60.
pub fn three_slope_products(t: &Rat, count: usize) -> Result<Vec<[Rat; 3]>> {
    if t.is_zero() {
        return Err(Error::ExcludedParameter("t = 0"));
    }
    let one = Rat::one();
    let (u_par, generator) = if t.abs() == one {
        let u = Rat::new(5.into(), 6.into());
        (u, ECPoint::affine(Rat::new((-12).into(), 11.into()), Rat::new(204.into(), 121.into())))
    } else {
        let u = t * t + Rat::from_integer(2.into());
        let t2 = t * t;
        let one_p = &t2 + &one; // t^2 + 1 = u - 1
        let three_p = &t2 + Rat::from_integer(3.into()); // t^2 + 3 = u + 1
        let x_g = &t2 * &one_p * &one_p * &u / (&three_p * &three_p);
        let poly = {
            // t^8 + 4t^6 + 6t^4 + 8t^2 + 9
            let t4 = &t2 * &t2;
            let t6 = &t4 * &t2;
            let t8 = &t4 * &t4;
            t8 + Rat::from_integer(4.into()) * t6
                + Rat::from_integer(6.into()) * &t4
                + Rat::from_integer(8.into()) * &t2
                + Rat::from_integer(9.into())
        };
        let y_g = &t2 * &u * poly / (&three_p * &three_p * &three_p);
        (u, ECPoint::affine(x_g, y_g))
    };
    let two_u = &u_par + &u_par;
    let mult = (&one - &u_par * &u_par) / &two_u;
    let s = -t * &two_u / (&one - &u_par * &u_par);
    let m = Mat2::new(one.clone(), Rat::zero(), Rat::zero(), s.clone())?;
    let base = crate::family::WPoint::from_ints(0, 1, 1).expect("valid point");
    let maps = JacobianMaps::new(&m, &base)?;
    if !maps.curve().contains(&generator) {
        return Err(Error::PointNotOnCurve);
    }
    assert_eq!(torsion_order(maps.curve(), &generator)?, None);
    debug_assert!(slope_witness_ok(&mult));
    collect_from_multiples(&maps, &generator, count, |x1, x2| {
        debug_assert_eq!(x1 * x2, -s.clone());
        Some([x1.clone(), x2.clone(), mult.clone()])
    })
}
