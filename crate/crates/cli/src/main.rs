//! Command-line surface for the rational-distance curve toolkit.
//!
//! All rational I/O uses the text form `n/d` (denominator omitted when 1),
//! matrices are `a,b,c,d`, curve points are `x:y:z`. Exit status is 0 when
//! the mathematical operation completed (including absent results), 1 for
//! precondition violations, and 2 for usage errors.

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::process::ExitCode;

use ratdist::arith::{format_rat, parse_rat, Rat};
use ratdist::census::{census_box, CensusOptions, CensusRecord};
use ratdist::correspond::slopes_of_point;
use ratdist::elliptic::{ec_add, minus_one_torsion, ECPoint, WCurve};
use ratdist::family::{classify_fiber, is_degenerate, FiberClass, Mat2, WPoint};
use ratdist::proj::SlopePair;
use ratdist::reduction::reduce_to_triangular;
use ratdist::three_distance::{three_slope_products, three_slope_sums, slope_sum_pairs, LinePipeline};

#[derive(Parser)]
#[command(name = "ratdist", version, about = "Rational distance configurations via a pencil of genus-one curves", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the fiber of a matrix: nonsingular, split conics, or pointless.
    Classify(ClassifyArgs),
    /// Reduce a fiber with a known rational point to triangular form (1,r;0,s).
    Reduce(ReduceArgs),
    /// Torsion type of the distinguished point (-1, r) on the reduced curve.
    Torsion(TorsionArgs),
    /// Slope pair, hypotenuse witnesses and degeneracy flag of an on-curve point.
    Verify(VerifyArgs),
    /// Points at rational distance from (0,0), (0,1), (1,1) on a rational line.
    #[command(name = "three-distance")]
    ThreeDistance(ThreeDistanceArgs),
    /// Decompose a rational as a sum or product of Pythagorean slopes.
    Decompose(DecomposeArgs),
    /// Local-solubility census over a box of integer matrices.
    Census(CensusArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Matrix entries a,b,c,d in rational text form.
    #[arg(long, allow_hyphen_values = true)]
    eta: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, allow_hyphen_values = true)]
    eta: String,
    /// A rational point x:y:z on the fiber.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TorsionArgs {
    #[arg(long, allow_hyphen_values = true)]
    r: String,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    eta: String,
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ThreeDistanceArgs {
    /// Line parameter t (excluded: 0, 1, -1); the line is y = 2t/(1-t^2) x.
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Largest multiple of the generator to walk.
    #[arg(long)]
    n_max: i64,
    /// Safety cap on n-max; raise explicitly for deeper walks.
    #[arg(long, default_value_t = 64)]
    n_cap: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    /// One of: sum, three-sum, three-product.
    #[arg(long)]
    mode: String,
    #[arg(long, allow_hyphen_values = true)]
    target: String,
    #[arg(long)]
    count: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// Box half-width X: entries range over [-X, X].
    #[arg(long)]
    x: i64,
    #[arg(long, default_value_t = 50)]
    prime_bound: u32,
    /// Search precision override; the default is always decisive.
    #[arg(long)]
    k_max: Option<u32>,
    /// Sample this many tuples instead of sweeping the box.
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

enum AppError {
    Usage(String),
    Math(ratdist::Error),
}

impl From<ratdist::Error> for AppError {
    fn from(e: ratdist::Error) -> AppError {
        match e {
            ratdist::Error::Parse(msg) => AppError::Usage(msg),
            other => AppError::Math(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<(), AppError> {
    match cmd {
        Command::Classify(a) => classify(a),
        Command::Reduce(a) => reduce(a),
        Command::Torsion(a) => torsion(a),
        Command::Verify(a) => verify(a),
        Command::ThreeDistance(a) => three_distance(a),
        Command::Decompose(a) => decompose(a),
        Command::Census(a) => census(a),
    }
}

fn classify(a: ClassifyArgs) -> Result<(), AppError> {
    let m = Mat2::parse(&a.eta)?;
    let class = classify_fiber(&m);
    if a.json {
        let v = match &class {
            FiberClass::Nonsingular => json!({"class": "Nonsingular"}),
            FiberClass::SingularSplit(l) => {
                json!({"class": "SingularSplit", "lambda": format_rat(l)})
            }
            FiberClass::SingularPointless => json!({"class": "SingularPointless"}),
        };
        println!("{v}");
    } else {
        println!("{class}");
    }
    Ok(())
}

fn reduce(a: ReduceArgs) -> Result<(), AppError> {
    let m = Mat2::parse(&a.eta)?;
    let p = WPoint::parse(&a.point)?;
    let w = reduce_to_triangular(&m, &p)?;
    if a.json {
        println!(
            "{}",
            json!({
                "r": format_rat(&w.r),
                "s": format_rat(&w.s),
                "r1": w.r1.to_string(),
                "r2": w.r2.to_string(),
                "scale": format_rat(&w.scale),
            })
        );
    } else {
        println!("r = {}", format_rat(&w.r));
        println!("s = {}", format_rat(&w.s));
        println!("r1 = {}", w.r1);
        println!("r2 = {}", w.r2);
        println!("scale = {}", format_rat(&w.scale));
    }
    Ok(())
}

fn torsion(a: TorsionArgs) -> Result<(), AppError> {
    let r = parse_rat(&a.r)?;
    let s = parse_rat(&a.s)?;
    let verdict = minus_one_torsion(&r, &s)?;
    let chain = match verdict.order() {
        None => Vec::new(),
        Some(order) => {
            let curve = WCurve::from_rs(&r, &s).map_err(AppError::Math)?;
            let gen = ECPoint::affine(Rat::from_integer((-1).into()), r.clone());
            let mut chain = Vec::new();
            let mut acc = ECPoint::Infinity;
            for _ in 1..=order {
                acc = ec_add(&curve, &acc, &gen).map_err(AppError::Math)?;
                chain.push(acc.clone());
            }
            chain
        }
    };
    if a.json {
        let chain: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
        println!("{}", json!({"verdict": verdict.to_string(), "chain": chain}));
    } else {
        println!("{verdict}");
        for (k, p) in chain.iter().enumerate() {
            println!("{}*(-1,{}) = {}", k + 1, format_rat(&r), p);
        }
    }
    Ok(())
}

fn slope_json(a: &SlopePair) -> serde_json::Value {
    json!({
        "u": a.pair().u().to_string(),
        "v": a.pair().v().to_string(),
        "hyp": a.hyp().map(format_rat),
    })
}

fn verify(a: VerifyArgs) -> Result<(), AppError> {
    let m = Mat2::parse(&a.eta)?;
    let p = WPoint::parse(&a.point)?;
    let (a1, a2) = slopes_of_point(&m, &p)?;
    let degenerate = is_degenerate(&m, &p)?;
    if a.json {
        println!(
            "{}",
            json!({
                "alpha1": slope_json(&a1),
                "alpha2": slope_json(&a2),
                "degenerate": degenerate,
            })
        );
    } else {
        let witness = |s: &SlopePair| match s.hyp() {
            Some(h) => format!("hyp = {}", format_rat(h)),
            None => "no witness".to_string(),
        };
        println!("alpha1 = {} {}", a1.pair(), witness(&a1));
        println!("alpha2 = {} {}", a2.pair(), witness(&a2));
        println!("degenerate = {degenerate}");
    }
    Ok(())
}

fn three_distance(a: ThreeDistanceArgs) -> Result<(), AppError> {
    if a.n_max < 0 || a.n_max > a.n_cap {
        return Err(AppError::Usage(format!(
            "n-max {} outside 0..={} (raise --n-cap to override)",
            a.n_max, a.n_cap
        )));
    }
    let t = parse_rat(&a.t)?;
    let pipe = LinePipeline::new(&t)?;
    let sols = pipe.solutions(a.n_max)?;
    for s in &sols {
        if a.json {
            println!(
                "{}",
                json!({
                    "t": format_rat(&s.t),
                    "n": s.n,
                    "x": format_rat(&s.x),
                    "y": format_rat(&s.y),
                    "d1": format_rat(&s.d1),
                    "d2": format_rat(&s.d2),
                    "d3": format_rat(&s.d3),
                })
            );
        } else {
            println!(
                "n={} x={} y={} d1={} d2={} d3={}",
                s.n,
                format_rat(&s.x),
                format_rat(&s.y),
                format_rat(&s.d1),
                format_rat(&s.d2),
                format_rat(&s.d3)
            );
        }
    }
    eprintln!(
        "three-distance: t={} line y=({})x n=1..={} defined={} section=base-point (0:1:1) at infinity, y>0 lift",
        format_rat(&t),
        format_rat(&((&t + &t) / (Rat::from_integer(1.into()) - &t * &t))),
        a.n_max,
        sols.len()
    );
    Ok(())
}

fn decompose(a: DecomposeArgs) -> Result<(), AppError> {
    let target = parse_rat(&a.target)?;
    let tuples: Vec<Vec<Rat>> = match a.mode.as_str() {
        "sum" => slope_sum_pairs(&target, a.count)?
            .into_iter()
            .map(|(x1, x2)| vec![x1, x2])
            .collect(),
        "three-sum" => three_slope_sums(&target, a.count)?
            .into_iter()
            .map(|t| t.to_vec())
            .collect(),
        "three-product" => three_slope_products(&target, a.count)?
            .into_iter()
            .map(|t| t.to_vec())
            .collect(),
        other => {
            return Err(AppError::Usage(format!(
                "unknown mode {other:?} (expected sum, three-sum or three-product)"
            )))
        }
    };
    for tuple in &tuples {
        let witnesses: Vec<String> = tuple
            .iter()
            .map(|x| {
                let w = ratdist::arith::is_rational_square(&(x * x + Rat::from_integer(1.into())))
                    .expect("emitted slopes carry square witnesses");
                format_rat(&w)
            })
            .collect();
        let slopes: Vec<String> = tuple.iter().map(format_rat).collect();
        if a.json {
            println!(
                "{}",
                json!({"slopes": slopes, "witnesses": witnesses, "target": format_rat(&target), "mode": a.mode})
            );
        } else {
            println!("slopes = [{}] witnesses = [{}]", slopes.join(", "), witnesses.join(", "));
        }
    }
    Ok(())
}

fn record_json(r: &CensusRecord) -> serde_json::Value {
    let verdicts: Vec<serde_json::Value> = r
        .verdicts
        .iter()
        .map(|(p, v)| json!([p, v.to_string()]))
        .collect();
    json!({
        "a": r.entries[0],
        "b": r.entries[1],
        "c": r.entries[2],
        "d": r.entries[3],
        "det": r.det,
        "verdicts": verdicts,
        "overall": r.overall.to_string(),
    })
}

fn census(a: CensusArgs) -> Result<(), AppError> {
    let opts = CensusOptions {
        x: a.x,
        prime_bound: a.prime_bound,
        k_max: a.k_max,
        sample: a.sample,
        seed: a.seed,
    };
    let json_mode = a.json;
    let summary = census_box(&opts, |r| {
        if json_mode {
            println!("{}", record_json(r));
        } else {
            let verdicts: Vec<String> = r
                .verdicts
                .iter()
                .map(|(p, v)| format!("{p}:{v}"))
                .collect();
            println!(
                "{},{},{},{} det={} overall={} [{}]",
                r.entries[0],
                r.entries[1],
                r.entries[2],
                r.entries[3],
                r.det,
                r.overall,
                verdicts.join(" ")
            );
        }
    })?;
    let fraction = summary.fraction();
    if json_mode {
        println!(
            "{}",
            json!({
                "summary": true,
                "x": summary.x,
                "prime_bound": summary.prime_bound,
                "considered": summary.considered,
                "zero_det": summary.zero_det,
                "ruled_out": summary.ruled_out,
                "unknown": summary.unknown,
                "candidates": summary.candidates,
                "fraction": format_rat(&fraction),
                "sample": summary.sampled,
                "seed": summary.seed,
            })
        );
    } else {
        println!(
            "summary: x={} prime_bound={} considered={} zero_det={} ruled_out={} unknown={} candidates={} fraction={} sample={} seed={}",
            summary.x,
            summary.prime_bound,
            summary.considered,
            summary.zero_det,
            summary.ruled_out,
            summary.unknown,
            summary.candidates,
            format_rat(&fraction),
            summary
                .sampled
                .map(|n| n.to_string())
                .unwrap_or_else(|| "-".into()),
            summary
                .seed
                .map(|s| s.to_string())
                .unwrap_or_else(|| "-".into()),
        );
    }
    Ok(())
}
