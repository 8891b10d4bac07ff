//! Command-line front end.
//!
//! Every subcommand writes to stdout or `--out`. CSV is the default format;
//! JSON is machine-readable too, plain is for people.
//!
//! Exit codes: 0 success, 1 `check` found no superpattern, 2 bad input,
//! 3 search budget exceeded, 4 a verification failed.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::counts::{count_formulas, CSV_HEADER, MIN_FORMULA_LENGTH};
use crate::error::{Error, Result};
use crate::exhaustive::{
    enumerate_minimal_upto_iso, enumerate_strict_minimal_upto_iso, expand_isomorphs, min_superpattern_length,
    strict_superpatterns, superpatterns, superpatterns_upto_iso, Budget,
};
use crate::oeis;
use crate::series::{format_rational, moments_from_gf, to_decimal, BigRational};
use crate::structure::{embeds_minimum_at_end, flanking_pairs_hold, verify_quaternary_example};
use crate::superpatterns::{classify_with_minimum, missing_patterns, ClassFlags};
use crate::waiting_time::{brute_force_table, coupon_expectations, generating_function, pmf_table, simulate_tau};
use crate::word::Word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_SUPERPATTERN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "superpattern", version, about = "Superpatterns of preferential arrangements")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest number of words an exhaustive search may range over.
    #[arg(long, global = true, env = "SUPERPATTERN_BUDGET")]
    budget: Option<u64>,

    /// Digits after the point in decimal columns.
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a word and list the arrangements it misses.
    Check {
        word: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// List superpatterns of one length.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        dk: Dk,
        #[arg(long, value_enum, default_value_t = Filter::StrictMinimal)]
        filter: Filter,
        #[arg(long, value_enum, default_value_t = Scope::UptoIso)]
        scope: Scope,
    },
    /// Closed-form ternary counts over a range of lengths.
    Counts {
        #[arg(long, default_value_t = MIN_FORMULA_LENGTH)]
        n_from: usize,
        #[arg(long, default_value_t = 15)]
        n_to: usize,
    },
    /// Distribution of the first superpattern time.
    Pmf {
        #[command(flatten)]
        dk: Dk,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, value_enum, default_value_t = PmfMode::Exact)]
        mode: PmfMode,
    },
    /// Mean and variance from the generating function.
    Moments {
        #[arg(long, default_value_t = 3)]
        d: usize,
    },
    /// Power series coefficients of the generating function.
    Gf {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Monte Carlo estimate of the first superpattern time.
    Simulate {
        #[command(flatten)]
        dk: Dk,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a verification suite; exits 4 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Longest length scanned by the structural checks.
        #[arg(long, default_value_t = 12)]
        n: usize,
    },
    /// Coupon-collector expectations.
    Coupons {
        #[command(flatten)]
        dk: Dk,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Dk {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Filter {
    /// Every superpattern.
    All,
    Strict,
    Minimal,
    StrictMinimal,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    UptoIso,
    Full,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PmfMode {
    Exact,
    Brute,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemmas,
    Oeis,
    #[value(alias = "section4")]
    QuaternaryExample,
    All,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let mut buf = Vec::new();
    let code = match dispatch(&cli, &mut buf) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &buf),
        None => io::stdout().lock().write_all(&buf),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    code
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

impl Cli {
    fn budget(&self, d: usize) -> Budget {
        self.budget.map_or_else(|| Budget::default_for(d), Budget::new)
    }

    fn exact(&self, value: &BigRational) -> [String; 2] {
        [format_rational(value), to_decimal(value, self.digits)]
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<i32> {
    match &cli.command {
        Command::Check { word, k } => cmd_check(cli, out, word, *k),
        Command::Enumerate { n, dk, filter, scope } => cmd_enumerate(cli, out, *n, *dk, *filter, *scope),
        Command::Counts { n_from, n_to } => cmd_counts(cli, out, *n_from, *n_to),
        Command::Pmf { dk, n, mode } => cmd_pmf(cli, out, *dk, *n, *mode),
        Command::Moments { d } => cmd_moments(cli, out, *d),
        Command::Gf { d, n } => cmd_gf(cli, out, *d, *n),
        Command::Simulate { dk, trials, seed } => cmd_simulate(cli, out, *dk, *trials, *seed),
        Command::Verify { suite, n } => cmd_verify(cli, out, *suite, *n),
        Command::Coupons { dk } => cmd_coupons(cli, out, *dk),
    }
}

fn csv_writer(out: &mut Vec<u8>) -> csv::Writer<&mut Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv output: {e}"))
}

fn write_json(out: &mut Vec<u8>, value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    out.extend_from_slice(text.as_bytes());
    out.push(b'\n');
}

fn write_rows<R: AsRef<[String]>>(out: &mut Vec<u8>, header: &[&str], rows: &[R]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.as_ref()).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn cmd_check(cli: &Cli, out: &mut Vec<u8>, text: &str, k: usize) -> Result<i32> {
    let word = Word::parse(text)?;
    let d = usize::from(word.alphabet_size());
    let shape = classify_with_minimum(word.letters(), k, usize::MAX)?;
    let flags = if shape.is_minimal {
        let least = min_superpattern_length(k, d, word.len(), cli.budget(d))?;
        ClassFlags {
            is_minimum: word.len() == least,
            ..shape
        }
    } else {
        shape
    };
    let missing: Vec<String> = missing_patterns(word.letters(), k)?
        .iter()
        .map(ToString::to_string)
        .collect();

    match cli.format {
        Format::Csv => write_rows(
            out,
            &[
                "word",
                "k",
                "is_superpattern",
                "is_minimal",
                "is_strict",
                "is_minimum",
                "missing",
            ],
            &[[
                word.to_string(),
                k.to_string(),
                flags.is_superpattern.to_string(),
                flags.is_minimal.to_string(),
                flags.is_strict.to_string(),
                flags.is_minimum.to_string(),
                missing.join(" "),
            ]],
        )?,
        Format::Json => write_json(
            out,
            &json!({ "word": word.to_string(), "k": k, "flags": flags, "missing": missing }),
        ),
        Format::Plain => {
            let mut s = format!(
                "word {word}\nsuperpattern {}\nminimal {}\nstrict {}\nminimum {}\n",
                flags.is_superpattern, flags.is_minimal, flags.is_strict, flags.is_minimum
            );
            if !missing.is_empty() {
                s += &format!("missing {}\n", missing.join(" "));
            }
            out.extend_from_slice(s.as_bytes());
        }
    }
    Ok(if flags.is_superpattern {
        EXIT_OK
    } else {
        EXIT_NOT_SUPERPATTERN
    })
}

fn require_ternary(dk: Dk, what: &str) -> Result<()> {
    if (dk.d, dk.k) != (3, 3) {
        return Err(Error::InvalidArgument(format!("{what} is only defined for d = k = 3")));
    }
    Ok(())
}

fn cmd_enumerate(cli: &Cli, out: &mut Vec<u8>, n: usize, dk: Dk, filter: Filter, scope: Scope) -> Result<i32> {
    let budget = cli.budget(dk.d);
    let words = match filter {
        Filter::Minimal | Filter::StrictMinimal => {
            require_ternary(dk, "the minimal filters")?;
            let reps = if filter == Filter::Minimal {
                enumerate_minimal_upto_iso(n, budget)?
            } else {
                enumerate_strict_minimal_upto_iso(n, budget)?
            };
            match scope {
                Scope::UptoIso => reps,
                Scope::Full => expand_isomorphs(&reps, 3),
            }
        }
        Filter::All | Filter::Strict => {
            let strict = filter == Filter::Strict;
            match (scope, strict) {
                (Scope::UptoIso, _) => superpatterns_upto_iso(dk.d, dk.k, n, strict, budget)?,
                (Scope::Full, true) => strict_superpatterns(dk.d, dk.k, n, budget)?,
                (Scope::Full, false) => superpatterns(dk.d, dk.k, n, budget)?,
            }
        }
    };
    let names: Vec<String> = words.iter().map(ToString::to_string).collect();
    match cli.format {
        Format::Json => write_json(
            out,
            &json!({
                "n": n, "d": dk.d, "k": dk.k,
                "filter": filter.to_possible_value().map(|v| v.get_name().to_string()),
                "scope": scope.to_possible_value().map(|v| v.get_name().to_string()),
                "count": names.len(),
                "words": names,
            }),
        ),
        Format::Csv | Format::Plain => {
            for name in &names {
                out.extend_from_slice(name.as_bytes());
                out.push(b'\n');
            }
            out.extend_from_slice(format!("# count {}\n", names.len()).as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_counts(cli: &Cli, out: &mut Vec<u8>, n_from: usize, n_to: usize) -> Result<i32> {
    if n_from > n_to {
        return Err(Error::InvalidArgument(format!(
            "--n-from {n_from} exceeds --n-to {n_to}"
        )));
    }
    let rows = (n_from..=n_to)
        .map(|n| Ok(count_formulas(n)?.csv_record()))
        .collect::<Result<Vec<_>>>()?;
    match cli.format {
        Format::Csv => write_rows(out, &CSV_HEADER, &rows)?,
        // big integers as decimal strings
        Format::Json => write_json(
            out,
            &Value::Array(
                rows.iter()
                    .map(|r| {
                        Value::Object(
                            CSV_HEADER
                                .iter()
                                .zip(r)
                                .map(|(h, v)| (h.to_string(), json!(v)))
                                .collect(),
                        )
                    })
                    .collect(),
            ),
        ),
        Format::Plain => {
            for r in &rows {
                let line: Vec<String> = CSV_HEADER.iter().zip(r).map(|(h, v)| format!("{h}={v}")).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_pmf(cli: &Cli, out: &mut Vec<u8>, dk: Dk, n: usize, mode: PmfMode) -> Result<i32> {
    let exact = match mode {
        PmfMode::Exact | PmfMode::Both => {
            if dk.k != dk.d {
                return Err(Error::InvalidArgument("closed forms need k = d".into()));
            }
            Some(pmf_table(dk.d, n)?)
        }
        PmfMode::Brute => None,
    };
    let brute = match mode {
        PmfMode::Brute | PmfMode::Both => Some(brute_force_table(dk.d, dk.k, n, cli.budget(dk.d))?),
        PmfMode::Exact => None,
    };
    let primary = exact.as_ref().or(brute.as_ref()).expect("one table is built");
    let agree = match (&exact, &brute) {
        (Some(e), Some(b)) => e.entries() == b.entries(),
        _ => true,
    };

    let rows = primary.rows();
    let tail = primary.tail();
    match cli.format {
        Format::Csv => {
            let mut header = vec!["n", "probability_exact", "probability_decimal", "cumulative_exact"];
            if mode == PmfMode::Both {
                header.extend(["probability_brute", "agree"]);
            }
            let mut records: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let [p, dec] = cli.exact(&r.probability);
                    let mut rec = vec![r.n.to_string(), p, dec, format_rational(&r.cumulative)];
                    if let Some(b) = &brute.as_ref().filter(|_| mode == PmfMode::Both) {
                        let bp = b.entry(r.n);
                        rec.push(format_rational(&bp));
                        rec.push((bp == r.probability).to_string());
                    }
                    rec
                })
                .collect();
            let [t, tdec] = cli.exact(&tail);
            let mut tail_rec = vec!["tail".to_string(), t, tdec, String::new()];
            if mode == PmfMode::Both {
                tail_rec.extend([String::new(), String::new()]);
            }
            records.push(tail_rec);
            write_rows(out, &header, &records)?;
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let [p, dec] = cli.exact(&r.probability);
                    json!({ "n": r.n, "probability": p, "probability_decimal": dec,
                            "cumulative": format_rational(&r.cumulative) })
                })
                .collect();
            let [t, tdec] = cli.exact(&tail);
            write_json(
                out,
                &json!({ "d": dk.d, "k": dk.k, "n_max": n, "rows": rows, "tail": t,
                         "tail_decimal": tdec, "exact_matches_brute_force": agree }),
            );
        }
        Format::Plain => {
            for r in &rows {
                let [p, dec] = cli.exact(&r.probability);
                out.extend_from_slice(format!("{:>4}  {p}  ({dec})\n", r.n).as_bytes());
            }
            out.extend_from_slice(format!("tail  {}\n", to_decimal(&tail, cli.digits)).as_bytes());
        }
    }
    if !agree {
        eprintln!("error: closed form and exhaustive count disagree");
        return Ok(EXIT_VERIFY);
    }
    Ok(EXIT_OK)
}

fn cmd_moments(cli: &Cli, out: &mut Vec<u8>, d: usize) -> Result<i32> {
    let (mean, variance) = moments_from_gf(&generating_function(d)?)?;
    let [m, mdec] = cli.exact(&mean);
    let [v, vdec] = cli.exact(&variance);
    match cli.format {
        Format::Csv => write_rows(
            out,
            &["d", "mean_exact", "mean_decimal", "variance_exact", "variance_decimal"],
            &[[d.to_string(), m, mdec, v, vdec]],
        )?,
        Format::Json => write_json(
            out,
            &json!({ "d": d, "mean": m, "mean_decimal": mdec, "variance": v, "variance_decimal": vdec }),
        ),
        Format::Plain => out.extend_from_slice(format!("mean {m} = {mdec}\nvariance {v} = {vdec}\n").as_bytes()),
    }
    Ok(EXIT_OK)
}

fn cmd_gf(cli: &Cli, out: &mut Vec<u8>, d: usize, n: usize) -> Result<i32> {
    let gf = generating_function(d)?;
    let series = gf.series_coefficients(n);
    let coeffs: Vec<String> = series.coeffs().iter().map(format_rational).collect();
    match cli.format {
        Format::Csv => {
            let rows: Vec<[String; 2]> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| [i.to_string(), c.clone()])
                .collect();
            write_rows(out, &["n", "coefficient"], &rows)?;
        }
        Format::Json => write_json(
            out,
            &json!({ "d": d, "function": gf.to_string(), "coefficients": coeffs }),
        ),
        Format::Plain => {
            out.extend_from_slice(format!("G(t) = {gf}\n").as_bytes());
            for (i, c) in coeffs.iter().enumerate() {
                out.extend_from_slice(format!("t^{i}: {c}\n").as_bytes());
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_simulate(cli: &Cli, out: &mut Vec<u8>, dk: Dk, trials: u64, seed: u64) -> Result<i32> {
    let summary = simulate_tau(dk.d, dk.k, trials, seed)?;
    match cli.format {
        Format::Csv => {
            let rows: Vec<[String; 2]> = summary
                .histogram
                .iter()
                .map(|(n, c)| [n.to_string(), c.to_string()])
                .collect();
            write_rows(out, &["n", "count"], &rows)?;
        }
        Format::Json => write_json(out, &serde_json::to_value(&summary).expect("summary serializes")),
        Format::Plain => {
            out.extend_from_slice(
                format!(
                    "trials {}\nseed {}\nmean {:.6}\nvariance {:.6}\n",
                    summary.trials, summary.seed, summary.sample_mean, summary.sample_variance
                )
                .as_bytes(),
            );
            for (n, c) in &summary.histogram {
                out.extend_from_slice(format!("{n:>4} {c}\n").as_bytes());
            }
        }
    }
    Ok(EXIT_OK)
}

struct CheckRow {
    suite: &'static str,
    check: String,
    n: usize,
    cases: usize,
    failures: usize,
}

fn structure_rows(n_max: usize, budget: Budget) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for n in 7..=n_max {
        let words = strict_superpatterns(3, 3, n, budget)?;
        let mut failures = 0;
        for w in &words {
            if !flanking_pairs_hold(w)? {
                failures += 1;
            }
        }
        rows.push(CheckRow {
            suite: "lemmas",
            check: "flanking-pairs".into(),
            n,
            cases: words.len(),
            failures,
        });
    }
    for n in 8..=n_max {
        let words = enumerate_strict_minimal_upto_iso(n, budget)?;
        let mut failures = 0;
        for w in &words {
            if !embeds_minimum_at_end(w)? {
                failures += 1;
            }
        }
        rows.push(CheckRow {
            suite: "lemmas",
            check: "minimum-at-end".into(),
            n,
            cases: words.len(),
            failures,
        });
    }
    Ok(rows)
}

fn oeis_rows() -> Vec<CheckRow> {
    oeis::verify_all()
        .into_iter()
        .map(|c| CheckRow {
            suite: "oeis",
            check: c.sequence.to_string(),
            n: c.n,
            cases: 1,
            failures: usize::from(!c.matches()),
        })
        .collect()
}

fn quaternary_rows() -> Result<Vec<CheckRow>> {
    let report = verify_quaternary_example()?;
    let n = report.word.len();
    Ok(vec![
        CheckRow {
            suite: "quaternary-example",
            check: "strict-superpattern".into(),
            n,
            cases: 1,
            failures: usize::from(!(report.is_superpattern && report.is_strict)),
        },
        CheckRow {
            suite: "quaternary-example",
            check: "no-shorter-minimum".into(),
            n: report.subsequence_length,
            cases: report.subsequences_checked,
            failures: report.irreducible_subsequences,
        },
    ])
}

fn cmd_verify(cli: &Cli, out: &mut Vec<u8>, suite: Suite, n_max: usize) -> Result<i32> {
    let mut rows = Vec::new();
    if matches!(suite, Suite::Lemmas | Suite::All) {
        rows.extend(structure_rows(n_max, cli.budget(3))?);
    }
    if matches!(suite, Suite::Oeis | Suite::All) {
        rows.extend(oeis_rows());
    }
    if matches!(suite, Suite::QuaternaryExample | Suite::All) {
        rows.extend(quaternary_rows()?);
    }
    let status = |r: &CheckRow| if r.failures == 0 { "pass" } else { "fail" };
    match cli.format {
        Format::Csv => {
            let records: Vec<[String; 6]> = rows
                .iter()
                .map(|r| {
                    [
                        r.suite.to_string(),
                        r.check.clone(),
                        r.n.to_string(),
                        r.cases.to_string(),
                        r.failures.to_string(),
                        status(r).to_string(),
                    ]
                })
                .collect();
            write_rows(out, &["suite", "check", "n", "cases", "failures", "status"], &records)?;
        }
        Format::Json => write_json(
            out,
            &Value::Array(
                rows.iter()
                    .map(|r| {
                        json!({ "suite": r.suite, "check": r.check, "n": r.n, "cases": r.cases,
                                     "failures": r.failures, "status": status(r) })
                    })
                    .collect(),
            ),
        ),
        Format::Plain => {
            for r in &rows {
                out.extend_from_slice(
                    format!(
                        "{:<4} {} {} n={} ({} cases)\n",
                        status(r),
                        r.suite,
                        r.check,
                        r.n,
                        r.cases
                    )
                    .as_bytes(),
                );
            }
        }
    }
    Ok(if rows.iter().all(|r| r.failures == 0) {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn cmd_coupons(cli: &Cli, out: &mut Vec<u8>, dk: Dk) -> Result<i32> {
    if dk.d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let (single, all) = coupon_expectations(dk.d, dk.k);
    let [s, sdec] = cli.exact(&single);
    let [a, adec] = cli.exact(&all);
    match cli.format {
        Format::Csv => write_rows(
            out,
            &[
                "d",
                "k",
                "single_exact",
                "single_decimal",
                "k_collections_exact",
                "k_collections_decimal",
            ],
            &[[dk.d.to_string(), dk.k.to_string(), s, sdec, a, adec]],
        )?,
        Format::Json => write_json(
            out,
            &json!({ "d": dk.d, "k": dk.k, "single": s, "single_decimal": sdec,
                     "k_collections": a, "k_collections_decimal": adec }),
        ),
        Format::Plain => out
            .extend_from_slice(format!("one collection {s} = {sdec}\n{} collections {a} = {adec}\n", dk.k).as_bytes()),
    }
    Ok(EXIT_OK)
}
