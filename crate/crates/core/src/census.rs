//! Mod-p obstruction, bounded-precision p-adic solubility, and a desk-scale
//! census of everywhere-local solubility over integer matrix boxes.
//!
//! The obstruction: if p divides ad - bc and both a^2 + b^2 and a^2 + c^2
//! are quadratic non-residues mod p, the fiber has no p-adic points. The
//! census measures how often boxes of integer matrices survive this and a
//! direct p-adic search, as an upper-bound proxy for the density of
//! everywhere-locally-soluble fibers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{int_valuation, is_prime, legendre_symbol, Rat};
use crate::error::{Error, Result};
use crate::family::{classify_fiber, discriminant, FiberClass, Mat2};

/// Outcome of the bounded p-adic solubility search for one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalVerdict {
    Soluble,
    Insoluble,
    Unknown,
}

impl std::fmt::Display for LocalVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LocalVerdict::Soluble => write!(f, "SolubleAtP"),
            LocalVerdict::Insoluble => write!(f, "InsolubleAtP"),
            LocalVerdict::Unknown => write!(f, "UnknownAtP"),
        }
    }
}

/// True iff p | ad - bc and a^2 + b^2, a^2 + c^2 are both non-squares
/// mod p. When true, the fiber has no p-adic points. Always false at p = 2,
/// where sums of two squares are squares mod p.
pub fn obstruction_holds(entries: &[i64; 4], p: u32) -> bool {
    let [a, b, c, d] = *entries;
    if p == 2 {
        return false;
    }
    let det = a * d - b * c;
    if det % (p as i64) != 0 {
        return false;
    }
    let pb = BigInt::from(p);
    let ab = BigInt::from(a * a + b * b);
    let ac = BigInt::from(a * a + c * c);
    legendre_symbol(&ab, &pb) == Ok(-1) && legendre_symbol(&ac, &pb) == Ok(-1)
}

/// Exhaustively counts, over the (p+1)^2 (p-1) nonzero quadruples mod p
/// with ad = bc, how many do NOT satisfy the obstruction condition.
/// Returns (nonsatisfying, total); the ratio is at most 3/4 + 1/p, which
/// is asserted with exact integer arithmetic.
pub fn count_unobstructed_mod_p(p: u32) -> Result<(u64, u64)> {
    if p == 2 || !is_prime(&BigInt::from(p)) {
        return Err(Error::InvalidModulus);
    }
    let pu = p as u64;
    let mut is_sq = vec![false; p as usize];
    for x in 0..pu {
        is_sq[((x * x) % pu) as usize] = true;
    }
    // Quadruples with a = 0 need bc = 0 and free d, and never satisfy the
    // condition; with a != 0, d = bc/a is determined and b, c range freely.
    let mut satisfying = 0u64;
    for a in 1..pu {
        let aa = (a * a) % pu;
        let mut nonresidue_b = 0u64;
        for b in 0..pu {
            let n = (aa + b * b) % pu;
            if n != 0 && !is_sq[n as usize] {
                nonresidue_b += 1;
            }
        }
        satisfying += nonresidue_b * nonresidue_b;
    }
    let total = (pu + 1) * (pu + 1) * (pu - 1);
    let nonsatisfying = total - satisfying;
    // nonsatisfying / total <= 3/4 + 1/p, i.e. 4 p nonsatisfying <= (3p + 4) total.
    assert!(4 * pu * nonsatisfying <= (3 * pu + 4) * total);
    Ok((nonsatisfying, total))
}

fn norm_value(entries: &[i64; 4], x: &BigInt, z: &BigInt) -> BigInt {
    let [a, b, c, d] = entries;
    let q1 = z * z - x * x;
    let q2 = BigInt::from(2) * x * z;
    let p1 = BigInt::from(*a) * &q1 + BigInt::from(*b) * &q2;
    let p2 = BigInt::from(*c) * &q1 + BigInt::from(*d) * &q2;
    &p1 * &p1 + &p2 * &p2
}

fn unit_is_square(unit: &BigInt, p: u32) -> bool {
    if p == 2 {
        unit.mod_floor(&BigInt::from(8)) == BigInt::from(1)
    } else {
        legendre_symbol(unit, &BigInt::from(p)) == Ok(1)
    }
}

fn mat_from_entries(entries: &[i64; 4]) -> Result<Mat2> {
    Mat2::from_ints(entries[0], entries[1], entries[2], entries[3])
}

/// Default decision precision v_p(2^4 * disc) + 3; beyond this depth,
/// Hensel lifting makes every branch of the search decidable, so the
/// verdict is final. Only meaningful on nonsingular fibers.
pub fn default_precision(entries: &[i64; 4], p: u32) -> Result<u32> {
    let m = mat_from_entries(entries)?;
    let disc = discriminant(&m);
    if disc.is_zero() {
        return Err(Error::SingularFiber);
    }
    let n = (disc * Rat::from_integer(16.into())).to_integer();
    Ok(int_valuation(&n, &BigInt::from(p)) + 3)
}

/// Decides whether the fiber of an integral matrix has p-adic points, by a
/// depth-first search over primitive residue classes (x, z) mod p^k with
/// k <= k_max, testing whether the quartic value can be a p-adic square.
///
/// `Insoluble` is returned only when every branch of the search is decided
/// dead; `Unknown` only when a user-supplied `k_max` is below the default
/// decision precision. Singular fibers are decided in closed form.
pub fn soluble_at_p(entries: &[i64; 4], p: u32, k_max: Option<u32>) -> Result<LocalVerdict> {
    let m = mat_from_entries(entries)?;
    if classify_fiber(&m) != FiberClass::Nonsingular {
        // Singular fiber: y^2 = (a^2+b^2)(x^2+z^2)^2. Points exist iff
        // a^2 + b^2 is a p-adic square or -1 is (p = 1 mod 4), where
        // x^2 + z^2 = 0 supplies points with y = 0.
        if p % 4 == 1 {
            return Ok(LocalVerdict::Soluble);
        }
        let [a, b, _, _] = *entries;
        let n = BigInt::from(a * a + b * b);
        let v = int_valuation(&n, &BigInt::from(p));
        let unit = &n / BigInt::from(p).pow(v);
        return Ok(if v.is_multiple_of(2) && unit_is_square(&unit, p) {
            LocalVerdict::Soluble
        } else {
            LocalVerdict::Insoluble
        });
    }
    let cap = match k_max {
        Some(k) => k,
        None => default_precision(entries, p)?,
    };
    let mut undecided = false;
    // Chart z = 1: x ranges over Z_p. Chart x = 1: z ranges over pZ_p
    // (classes with z a unit are already covered by the first chart after
    // scaling). Between them every primitive class appears.
    let affine = |v: &BigInt| norm_value(entries, v, &BigInt::from(1));
    let far = |v: &BigInt| norm_value(entries, &BigInt::from(1), v);
    if search(&affine, p, BigInt::zero(), 0, cap, &mut undecided)
        || search(&far, p, BigInt::zero(), 1, cap, &mut undecided)
    {
        return Ok(LocalVerdict::Soluble);
    }
    Ok(if undecided {
        LocalVerdict::Unknown
    } else {
        LocalVerdict::Insoluble
    })
}

/// DFS on the residue class var = base mod p^j. Returns true as soon as a
/// class all of whose lifts give square values is found.
fn search(
    value: &dyn Fn(&BigInt) -> BigInt,
    p: u32,
    base: BigInt,
    j: u32,
    cap: u32,
    undecided: &mut bool,
) -> bool {
    let val = value(&base);
    if val.is_zero() {
        // An exact zero of the quartic over Z is a point with y = 0.
        return true;
    }
    let pb = BigInt::from(p);
    let v = int_valuation(&val, &pb);
    let need = v + if p == 2 { 3 } else { 1 };
    if j >= need {
        // The valuation and the unit class mod p (mod 8 for p = 2) are
        // constant on every lift of this class: decide it now.
        let unit = &val / pb.pow(v);
        return v.is_multiple_of(2) && unit_is_square(&unit, p);
    }
    if j >= cap {
        *undecided = true;
        return false;
    }
    let step = pb.pow(j);
    for w in 0..p {
        let child = &base + &step * BigInt::from(w);
        if search(value, p, child, j + 1, cap, undecided) {
            return true;
        }
    }
    false
}

/// The real place: the defining form is a sum of two squares and takes
/// positive values on a nonsingular fiber, so real points always exist.
pub fn soluble_real(m: &Mat2) -> Result<bool> {
    if classify_fiber(m) != FiberClass::Nonsingular {
        return Err(Error::SingularFiber);
    }
    Ok(true)
}

/// Per-prime verdict recorded in the census.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusVerdict {
    ObstructionInsoluble,
    Soluble,
    Insoluble,
    Unknown,
}

impl std::fmt::Display for CensusVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CensusVerdict::ObstructionInsoluble => write!(f, "ObstructionInsoluble"),
            CensusVerdict::Soluble => write!(f, "SolubleAtP"),
            CensusVerdict::Insoluble => write!(f, "InsolubleAtP"),
            CensusVerdict::Unknown => write!(f, "UnknownAtP"),
        }
    }
}

/// Overall status of one matrix after all tested primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    Candidate,
    LocallyRuledOut,
}

impl std::fmt::Display for Overall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Overall::Candidate => write!(f, "Candidate"),
            Overall::LocallyRuledOut => write!(f, "LocallyRuledOut"),
        }
    }
}

/// One census entry: the matrix, its determinant, the per-prime verdicts
/// and the overall status. Survivors are candidates only: primes beyond
/// the bound were not tested.
#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub entries: [i64; 4],
    pub det: i64,
    pub verdicts: Vec<(u32, CensusVerdict)>,
    pub overall: Overall,
}

/// Census totals. `fraction` is candidates / considered, an upper-bound
/// proxy for the density of everywhere-locally-soluble fibers in the box.
#[derive(Clone, Debug)]
pub struct CensusSummary {
    pub x: i64,
    pub prime_bound: u32,
    pub considered: u64,
    pub zero_det: u64,
    pub ruled_out: u64,
    pub unknown: u64,
    pub candidates: u64,
    pub sampled: Option<u64>,
    pub seed: Option<u64>,
}

impl CensusSummary {
    pub fn fraction(&self) -> Rat {
        if self.considered == 0 {
            return Rat::zero();
        }
        Rat::new(
            BigInt::from(self.candidates),
            BigInt::from(self.considered),
        )
    }
}

fn primes_up_to(bound: u32) -> Vec<u32> {
    let mut sieve = vec![true; (bound as usize) + 1];
    let mut out = Vec::new();
    for n in 2..=bound as usize {
        if sieve[n] {
            out.push(n as u32);
            let mut k = n * n;
            while k <= bound as usize {
                sieve[k] = false;
                k += n;
            }
        }
    }
    out
}

/// Classifies one integral matrix at all primes up to the bound.
/// The obstruction is checked at primes dividing the determinant; the
/// p-adic search runs at primes dividing the discriminant. Other primes
/// give good reduction, where a smooth mod-p point lifts, and are skipped.
pub fn classify_matrix(entries: &[i64; 4], prime_bound: u32, k_max: Option<u32>) -> Result<CensusRecord> {
    let [a, b, c, d] = *entries;
    let det = a * d - b * c;
    if det == 0 {
        return Err(Error::SingularMatrix);
    }
    let f1 = (a + d) * (a + d) + (b - c) * (b - c);
    let f2 = (a - d) * (a - d) + (b + c) * (b + c);
    let singular = f1 == 0 || f2 == 0;
    let mut verdicts = Vec::new();
    let mut ruled_out = false;
    for p in primes_up_to(prime_bound) {
        let pi = p as i64;
        if det % pi == 0 && obstruction_holds(entries, p) {
            verdicts.push((p, CensusVerdict::ObstructionInsoluble));
            ruled_out = true;
            continue;
        }
        let divides_disc =
            p == 2 || singular || det % pi == 0 || f1 % pi == 0 || f2 % pi == 0;
        if !divides_disc {
            continue;
        }
        let v = match soluble_at_p(entries, p, k_max)? {
            LocalVerdict::Soluble => CensusVerdict::Soluble,
            LocalVerdict::Insoluble => {
                ruled_out = true;
                CensusVerdict::Insoluble
            }
            LocalVerdict::Unknown => CensusVerdict::Unknown,
        };
        verdicts.push((p, v));
    }
    let overall = if ruled_out {
        Overall::LocallyRuledOut
    } else {
        Overall::Candidate
    };
    Ok(CensusRecord {
        entries: *entries,
        det,
        verdicts,
        overall,
    })
}

/// Deterministic split-mix generator for reproducible sampling.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in 0..m by rejection.
    fn below(&mut self, m: u64) -> u64 {
        let bound = u64::MAX - u64::MAX % m;
        loop {
            let r = self.next_u64();
            if r < bound {
                return r % m;
            }
        }
    }

    fn in_box(&mut self, x: i64) -> i64 {
        self.below(2 * x as u64 + 1) as i64 - x
    }
}

/// Options for [`census_box`].
#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub x: i64,
    pub prime_bound: u32,
    pub k_max: Option<u32>,
    /// Number of uniform samples from the box; exhaustive sweep when None.
    pub sample: Option<u64>,
    pub seed: u64,
}

/// Sweeps (or samples) the box of integer matrices with entries in
/// [-X, X], streaming one record per matrix with nonzero determinant to
/// `sink`, and returns the totals. Matrices with zero determinant count in
/// the denominator but are never candidates.
pub fn census_box(
    opts: &CensusOptions,
    mut sink: impl FnMut(&CensusRecord),
) -> Result<CensusSummary> {
    if opts.x <= 0 {
        return Err(Error::ExcludedParameter("box size must be positive"));
    }
    let mut summary = CensusSummary {
        x: opts.x,
        prime_bound: opts.prime_bound,
        considered: 0,
        zero_det: 0,
        ruled_out: 0,
        unknown: 0,
        candidates: 0,
        sampled: opts.sample,
        seed: opts.sample.map(|_| opts.seed),
    };
    let mut visit = |entries: [i64; 4], summary: &mut CensusSummary| -> Result<()> {
        summary.considered += 1;
        let [a, b, c, d] = entries;
        if a * d - b * c == 0 {
            summary.zero_det += 1;
            return Ok(());
        }
        let record = classify_matrix(&entries, opts.prime_bound, opts.k_max)?;
        match record.overall {
            Overall::Candidate => summary.candidates += 1,
            Overall::LocallyRuledOut => summary.ruled_out += 1,
        }
        if record
            .verdicts
            .iter()
            .any(|(_, v)| *v == CensusVerdict::Unknown)
        {
            summary.unknown += 1;
        }
        sink(&record);
        Ok(())
    };
    match opts.sample {
        None => {
            let x = opts.x;
            for a in -x..=x {
                for b in -x..=x {
                    for c in -x..=x {
                        for d in -x..=x {
                            visit([a, b, c, d], &mut summary)?;
                        }
                    }
                }
            }
        }
        Some(n) => {
            let mut rng = SplitMix64::new(opts.seed);
            for _ in 0..n {
                let entries = [
                    rng.in_box(opts.x),
                    rng.in_box(opts.x),
                    rng.in_box(opts.x),
                    rng.in_box(opts.x),
                ];
                visit(entries, &mut summary)?;
            }
        }
    }
    Ok(summary)
}
