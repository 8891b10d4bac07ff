//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with a custom harness so the lines always print. The exhaustive
//! counting range stops at the largest `n` with `3^n` within the search budget
//! (default `3^14`; lower it with `SUPERPATTERN_BUDGET` for quicker runs).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use superpattern::counts::{count_formulas, minimal_count, strict_minimal_count};
use superpattern::exhaustive::{
    count_beta_bruteforce, enumerate_minimal_upto_iso, enumerate_strict_minimal_upto_iso, expand_isomorphs,
    min_superpattern_length, strict_counts_by_length, strict_superpatterns, superpatterns, superpatterns_upto_iso,
    Budget,
};
use superpattern::oeis::{compare_minimal_counts, compare_strict_minimal_counts, Comparison};
use superpattern::series::{integer, moments_from_gf, rational, BigRational};
use superpattern::structure::{embeds_minimum_at_end, flanking_pairs_hold, verify_quaternary_example};
use superpattern::superpatterns::is_superpattern;
use superpattern::waiting_time::{binary_pmf, brute_force_pmf, generating_function, simulate_tau, ternary_pmf};
use superpattern::word::Letter;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, format!("took {elapsed:?}, limit {limit:?}"))
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn budget() -> Budget {
    Budget::from_env(3)
}

fn counting_n_max() -> usize {
    let cap = budget().max_words();
    (7..=14).take_while(|&n| 3u64.pow(n as u32) <= cap).last().unwrap_or(7)
}

fn minimum_length() -> Outcome {
    let start = Instant::now();
    let least = min_superpattern_length(3, 3, 8, Budget::unlimited()).map_err(s)?;
    ensure(least == 7, format!("least length {least}"))?;
    let tracked = superpatterns(3, 3, 6, Budget::unlimited()).map_err(s)?;
    ensure(tracked.is_empty(), "tracker found a length-6 superpattern")?;
    // all 729 words again through the backtracking matcher
    let mut found = 0;
    for code in 0..729u32 {
        let mut c = code;
        let word: Vec<Letter> = (0..6)
            .map(|_| {
                let l = (c % 3) as Letter + 1;
                c /= 3;
                l
            })
            .collect();
        found += usize::from(is_superpattern(&word, 3).map_err(s)?);
    }
    ensure(found == 0, format!("{found} length-6 superpatterns"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "least length 7, 0 of 729 length-6 words ({:?})",
        start.elapsed()
    ))
}

fn the_seven() -> Outcome {
    let start = Instant::now();
    let expected = [
        "1213121", "1213212", "1231213", "1231231", "1231321", "1232123", "1232132",
    ];
    let reps = enumerate_strict_minimal_upto_iso(7, budget()).map_err(s)?;
    let names: Vec<String> = reps.iter().map(ToString::to_string).collect();
    ensure(names == expected, format!("got {names:?}"))?;
    let full = expand_isomorphs(&reps, 3);
    ensure(full.len() == 42, format!("full count {}", full.len()))?;
    let direct = strict_superpatterns(3, 3, 7, budget()).map_err(s)?;
    ensure(direct == full, "orbit expansion differs from the direct scan")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("7 classes, 42 words ({:?})", start.elapsed()))
}

fn counting_formulas() -> Outcome {
    let start = Instant::now();
    let n_max = counting_n_max();
    let strict = strict_counts_by_length(3, 3, n_max, budget()).map_err(s)?;
    for (n, &strict_n) in strict.iter().enumerate().skip(7) {
        let f = count_formulas(n).map_err(s)?;
        let gamma = enumerate_minimal_upto_iso(n, budget()).map_err(s)?.len();
        let s_mu = enumerate_strict_minimal_upto_iso(n, budget()).map_err(s)?.len();
        ensure(
            BigInt::from(gamma) == f.gamma_total,
            format!("gamma_total({n}) = {gamma}, formula {}", f.gamma_total),
        )?;
        ensure(
            BigInt::from(s_mu) == f.s_mu,
            format!("s_mu({n}) = {s_mu}, formula {}", f.s_mu),
        )?;
        ensure(
            BigInt::from(strict_n) == f.s_total,
            format!("s_total({n}) = {strict_n}, formula {}", f.s_total),
        )?;
        if n <= 12 {
            let s_a = superpatterns_upto_iso(3, 3, n, true, budget()).map_err(s)?.len();
            ensure(
                BigInt::from(s_a) == f.s_a,
                format!("s_a({n}) = {s_a}, formula {}", f.s_a),
            )?;
        }
        let (a, b) = count_beta_bruteforce(n, budget()).map_err(s)?;
        ensure(
            (BigInt::from(a), BigInt::from(b)) == (f.beta_a.clone(), f.beta_b.clone()),
            format!("beta({n}) = ({a}, {b}), formula ({}, {})", f.beta_a, f.beta_b),
        )?;
    }
    Ok(format!("n = 7..={n_max} ({:?})", start.elapsed()))
}

fn pmf_identity() -> Outcome {
    let start = Instant::now();
    for n in 7..=13 {
        let brute = brute_force_pmf(3, 3, n, budget()).map_err(s)?;
        ensure(
            ternary_pmf(n) == brute,
            format!("ternary n={n}: {} vs {brute}", ternary_pmf(n)),
        )?;
    }
    for n in 3..=20 {
        let brute = brute_force_pmf(2, 2, n, Budget::default_for(2)).map_err(s)?;
        ensure(
            binary_pmf(n) == brute,
            format!("binary n={n}: {} vs {brute}", binary_pmf(n)),
        )?;
    }
    Ok(format!("ternary 7..=13, binary 3..=20 ({:?})", start.elapsed()))
}

fn generating_functions() -> Outcome {
    for d in [2, 3] {
        let gf = generating_function(d).map_err(s)?;
        let series = gf.series_coefficients(40);
        for n in 0..=40 {
            let p = if d == 2 { binary_pmf(n) } else { ternary_pmf(n) };
            ensure(*series.coefficient(n) == p, format!("d={d} coefficient {n}"))?;
        }
        let at_one = gf.evaluate(&BigRational::one()).map_err(s)?;
        ensure(at_one == BigRational::one(), format!("G_{d}(1) = {at_one}"))?;
    }
    Ok("41 coefficients each, G(1) = 1".into())
}

fn moments() -> Outcome {
    let (m2, v2) = moments_from_gf(&generating_function(2).map_err(s)?).map_err(s)?;
    ensure(
        (m2.clone(), v2.clone()) == (integer(5), integer(4)),
        format!("binary ({m2}, {v2})"),
    )?;
    let (m3, _) = moments_from_gf(&generating_function(3).map_err(s)?).map_err(s)?;
    ensure(m3 == rational(217, 16), format!("ternary mean {m3}"))?;
    let truncated: BigRational = (7..=200).map(|n| integer(n as i64) * ternary_pmf(n)).sum();
    let gap = (&m3 - &truncated).abs();
    let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(20));
    ensure(gap < tol, "truncated mean is not within 1e-20")?;
    Ok("(5, 4); 217/16; truncated sum within 1e-20".into())
}

fn simulation() -> Outcome {
    let start = Instant::now();
    const TRIALS: u64 = 1_000_000;
    let mut report = Vec::new();
    for (d, target, tol, least) in [(2usize, 5.0f64, 0.01f64, 3usize), (3, 13.5625, 0.03, 7)] {
        let a = simulate_tau(d, d, TRIALS, 20_251_019).map_err(s)?;
        let b = simulate_tau(d, d, TRIALS, 20_251_019).map_err(s)?;
        ensure(
            a == b && a.sample_mean.to_bits() == b.sample_mean.to_bits(),
            format!("d={d} rerun differs"),
        )?;
        ensure(
            (a.sample_mean - target).abs() <= tol,
            format!("d={d} mean {} not within {tol} of {target}", a.sample_mean),
        )?;
        let min = a.min_observed().unwrap_or(0);
        ensure(min >= least, format!("d={d} observed tau = {min}"))?;
        report.push(format!("d={d} mean {:.4}", a.sample_mean));
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{} ({:?})", report.join(", "), start.elapsed()))
}

fn structure() -> Outcome {
    let mut words = 0;
    for n in 1..=12 {
        for w in strict_superpatterns(3, 3, n, budget()).map_err(s)? {
            ensure(
                flanking_pairs_hold(&w).map_err(s)?,
                format!("flanking pairs fail on {w}"),
            )?;
            words += 1;
        }
    }
    let mut minimal = 0;
    for n in 8..=14 {
        for w in enumerate_strict_minimal_upto_iso(n, budget()).map_err(s)? {
            ensure(
                embeds_minimum_at_end(&w).map_err(s)?,
                format!("no minimum ending at the last letter of {w}"),
            )?;
            minimal += 1;
        }
    }
    Ok(format!("{words} strict superpatterns, {minimal} strict minimal words"))
}

fn oeis_fixtures() -> Outcome {
    let lengths = 7..=15usize;
    let gamma: Vec<BigInt> = lengths
        .clone()
        .map(|n| Ok(BigInt::from(enumerate_minimal_upto_iso(n, budget()).map_err(s)?.len())))
        .collect::<Result<_, String>>()?;
    let s_mu: Vec<BigInt> = lengths
        .clone()
        .map(|n| {
            Ok(BigInt::from(
                enumerate_strict_minimal_upto_iso(n, budget()).map_err(s)?.len(),
            ))
        })
        .collect::<Result<_, String>>()?;
    let closed_gamma: Vec<BigInt> = lengths.clone().map(minimal_count).collect();
    let closed_s_mu: Vec<BigInt> = lengths.clone().map(strict_minimal_count).collect();

    let rows: Vec<Comparison> = [
        compare_minimal_counts(7, &gamma),
        compare_minimal_counts(7, &closed_gamma),
        compare_strict_minimal_counts(7, &s_mu),
        compare_strict_minimal_counts(7, &closed_s_mu),
    ]
    .concat();
    match rows.iter().find(|r| !r.matches()) {
        Some(r) => Err(format!(
            "{} at n={}: {} vs {:?}",
            r.sequence, r.n, r.computed, r.fixture
        )),
        None => Ok("A024012 and A008865, n = 7..=15".into()),
    }
}

fn quaternary() -> Outcome {
    let start = Instant::now();
    let report = verify_quaternary_example().map_err(s)?;
    ensure(
        report.subsequences_checked == 455,
        format!("{} subsequences", report.subsequences_checked),
    )?;
    ensure(report.holds(), format!("{report:?}"))?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "strict, {} of 455 are superpatterns, none irreducible ({:?})",
        report.superpattern_subsequences,
        start.elapsed()
    ))
}

fn bounds() -> Outcome {
    let n22 = min_superpattern_length(2, 2, 6, Budget::unlimited()).map_err(s)?;
    let n33 = min_superpattern_length(3, 3, 8, Budget::unlimited()).map_err(s)?;
    ensure(n22 == 3, format!("n(2,2) = {n22}"))?;
    let d = 3;
    ensure(n33 == 7, format!("n(3,3) = {n33}"))?;
    ensure(n33 == d * d - 2 * d + 4, "n(3,3) differs from d^2 - 2d + 4")?;
    Ok("n(2,2) = 3, n(3,3) = 7 = d^2 - 2d + 4".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("minimum length", minimum_length),
        ("seven minimum superpatterns", the_seven),
        ("counting formulas vs exhaustive", counting_formulas),
        ("pmf identity", pmf_identity),
        ("generating functions", generating_functions),
        ("moments", moments),
        ("simulation", simulation),
        ("structural checks", structure),
        ("oeis fixtures", oeis_fixtures),
        ("quaternary example", quaternary),
        ("length bounds", bounds),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
