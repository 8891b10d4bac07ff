//! Distribution of the first time a uniformly random word becomes a superpattern.
//!
//! Exact PMFs for `d = k = 2` and `d = k = 3`, an exhaustive oracle over
//! `{1..d}^n`, an online detector, a seeded Monte Carlo simulator and the
//! coupon-collector baselines.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::distr::{Distribution, Uniform};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counts::{strict_count, word_count};
use crate::error::{Error, Result};
use crate::exhaustive::{count_strict_superpatterns, Budget};
use crate::series::{integer, rational, BigRational, Polynomial, RationalFunction};
use crate::tracker::{ContainmentIndex, TrackerState};
use crate::word::{Letter, Pattern};

/// Trials per RNG stream in [`simulate_tau`].
pub const SIMULATION_BATCH: u64 = 10_000;

/// First length with positive probability: 3 for `d = 2`, 7 for `d = 3`.
pub fn support_start(d: usize) -> Result<usize> {
    match d {
        2 => Ok(3),
        3 => Ok(7),
        _ => Err(unsupported(d)),
    }
}

fn unsupported(d: usize) -> Error {
    Error::InvalidArgument(format!(
        "closed forms exist only for d = k = 2 and d = k = 3, not d = {d}"
    ))
}

/// `P(tau = n) = (n - 2) / 2^(n - 1)` for `n >= 3`.
pub fn binary_pmf(n: usize) -> BigRational {
    if n < 3 {
        return BigRational::zero();
    }
    BigRational::new(BigInt::from(n - 2), BigInt::one() << (n - 1))
}

/// `P(tau = n) = 6 / 3^n * sum_{m=7..n} ((m - 4)^2 - 2) C(n - 2, m - 2)` for `n >= 7`.
pub fn ternary_pmf(n: usize) -> BigRational {
    if n < 7 {
        return BigRational::zero();
    }
    BigRational::new(strict_count(n), word_count(3, n).into())
}

pub fn pmf(d: usize, n: usize) -> Result<BigRational> {
    match d {
        2 => Ok(binary_pmf(n)),
        3 => Ok(ternary_pmf(n)),
        _ => Err(unsupported(d)),
    }
}

/// Strict superpatterns of length `n` divided by `d^n`, by exhaustive count.
pub fn brute_force_pmf(d: usize, k: usize, n: usize, budget: Budget) -> Result<BigRational> {
    let count = count_strict_superpatterns(d, k, n, budget)?;
    Ok(BigRational::new(count.into(), word_count(d, n).into()))
}

/// Probability generating function of the waiting time.
///
/// `d = 2`: `t^3 / (2 - t)^2`.
/// `d = 3`: `2 t^7 (16 t^2 - 63 t + 63) / ((3 - t)^5 (3 - 2t)^3)`.
pub fn generating_function(d: usize) -> Result<RationalFunction> {
    match d {
        2 => RationalFunction::new(
            Polynomial::monomial(BigRational::one(), 3),
            Polynomial::from_integers(&[2, -1]).pow(2),
        ),
        3 => {
            let numerator = &Polynomial::monomial(integer(2), 7) * &Polynomial::from_integers(&[63, -63, 16]);
            let denominator = &Polynomial::from_integers(&[3, -1]).pow(5) * &Polynomial::from_integers(&[3, -2]).pow(3);
            RationalFunction::new(numerator, denominator)
        }
        _ => Err(unsupported(d)),
    }
}

/// Exact PMF table for `n = 1..=n_max` with cumulative sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmfTable {
    pub d: usize,
    pub k: usize,
    pub n_max: usize,
    entries: BTreeMap<usize, BigRational>,
}

/// One row of a [`PmfTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmfRow {
    pub n: usize,
    pub probability: BigRational,
    pub cumulative: BigRational,
}

impl PmfTable {
    pub fn entry(&self, n: usize) -> BigRational {
        self.entries.get(&n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> &BTreeMap<usize, BigRational> {
        &self.entries
    }

    pub fn cumulative(&self, n: usize) -> BigRational {
        self.entries.range(..=n).map(|(_, p)| p).sum()
    }

    /// `1 - P(tau <= n_max)`; the support is infinite so this is never zero.
    pub fn tail(&self) -> BigRational {
        BigRational::one() - self.cumulative(self.n_max)
    }

    pub fn rows(&self) -> Vec<PmfRow> {
        let mut running = BigRational::zero();
        self.entries
            .iter()
            .map(|(&n, p)| {
                running += p;
                PmfRow {
                    n,
                    probability: p.clone(),
                    cumulative: running.clone(),
                }
            })
            .collect()
    }
}

/// Builds the table from the closed form for `d` in `{2, 3}` (with `k = d`).
pub fn pmf_table(d: usize, n_max: usize) -> Result<PmfTable> {
    let start = support_start(d)?;
    if n_max < start {
        return Err(Error::InvalidArgument(format!(
            "n_max must be at least {start} for d = {d}, got {n_max}"
        )));
    }
    let entries = (1..=n_max).map(|n| Ok((n, pmf(d, n)?))).collect::<Result<_>>()?;
    Ok(PmfTable {
        d,
        k: d,
        n_max,
        entries,
    })
}

/// Builds the table by exhaustive counting.
pub fn brute_force_table(d: usize, k: usize, n_max: usize, budget: Budget) -> Result<PmfTable> {
    let counts = crate::exhaustive::strict_counts_by_length(d, k, n_max, budget)?;
    let entries = (1..=n_max)
        .map(|n| (n, BigRational::new(counts[n].into(), word_count(d, n).into())))
        .collect();
    Ok(PmfTable { d, k, n_max, entries })
}

/// Expected waiting time for one coupon collection over `d` letters,
/// `sum_{j=1..d} d / j`, and `k` times that for `k` disjoint collections.
pub fn coupon_expectations(d: usize, k: usize) -> (BigRational, BigRational) {
    let single: BigRational = (1..=d as i64).map(|j| rational(d as i64, j)).sum();
    let all_words = &single * integer(k as i64);
    (single, all_words)
}

/// Detects the first prefix of a letter stream that is a superpattern.
///
/// Keeps the set of arrangements still missing; each new letter can only
/// complete occurrences that end at it, which the tracker extends in place.
#[derive(Clone, Debug)]
pub struct TauDetector {
    index: Arc<ContainmentIndex>,
    state: TrackerState,
}

impl TauDetector {
    pub fn new(d: usize, k: usize) -> Result<Self> {
        let index = ContainmentIndex::new(d, k)?;
        let state = index.empty_state();
        Ok(TauDetector { index, state })
    }

    /// Consumes one letter; returns the waiting time once the prefix is complete.
    pub fn push(&mut self, letter: Letter) -> Result<Option<usize>> {
        if letter == 0 || letter as usize > self.index.alphabet_size() {
            return Err(Error::LetterOutOfRange {
                letter: letter.into(),
                position: self.state.len(),
                alphabet: self.index.alphabet_size() as u32,
            });
        }
        self.index.push(&mut self.state, letter);
        Ok(self.state.is_complete().then_some(self.state.len()))
    }

    pub fn missing(&self) -> Vec<Pattern> {
        self.index.missing_patterns(&self.state)
    }

    pub fn consumed(&self) -> usize {
        self.state.len()
    }

    pub fn reset(&mut self) {
        self.state = self.index.empty_state();
    }
}

/// Feeds `letters` to a [`TauDetector`] and returns the first superpattern
/// time, or `None` if the stream ends first. Letters past that point are not read.
pub fn tau_online(letters: impl IntoIterator<Item = Letter>, d: usize, k: usize) -> Result<Option<usize>> {
    let mut detector = TauDetector::new(d, k)?;
    for letter in letters {
        if let Some(t) = detector.push(letter)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Result of [`simulate_tau`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimSummary {
    pub d: usize,
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(rename = "mean")]
    pub sample_mean: f64,
    #[serde(rename = "variance")]
    pub sample_variance: f64,
    pub histogram: BTreeMap<usize, u64>,
}

impl SimSummary {
    fn from_histogram(d: usize, k: usize, seed: u64, histogram: BTreeMap<usize, u64>) -> Self {
        let trials: u64 = histogram.values().sum();
        let (s1, s2) = histogram.iter().fold((0u128, 0u128), |(s1, s2), (&n, &c)| {
            let (n, c) = (n as u128, c as u128);
            (s1 + n * c, s2 + n * n * c)
        });
        let t = trials as u128;
        let sample_mean = s1 as f64 / trials as f64;
        let sample_variance = if trials > 1 {
            (t * s2 - s1 * s1) as f64 / (t * (t - 1)) as f64
        } else {
            0.0
        };
        SimSummary {
            d,
            k,
            trials,
            seed,
            sample_mean,
            sample_variance,
            histogram,
        }
    }

    pub fn min_observed(&self) -> Option<usize> {
        self.histogram.keys().next().copied()
    }
}

/// Simulates `trials` i.i.d. uniform letter streams over `{1..d}` and
/// records when each first becomes a superpattern.
///
/// Trials are split into batches of [`SIMULATION_BATCH`]; batch `b` draws from
/// ChaCha8 seeded with `seed` on stream `b`, so the result is independent of
/// thread scheduling.
pub fn simulate_tau(d: usize, k: usize, trials: u64, seed: u64) -> Result<SimSummary> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if k > d {
        return Err(Error::InvalidArgument(format!(
            "arrangements of length {k} need {k} distinct letters; a {d}-letter stream never contains them all"
        )));
    }
    let index = ContainmentIndex::new(d, k)?;
    let letters = Uniform::new_inclusive(1, d as Letter).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let batches = trials.div_ceil(SIMULATION_BATCH);

    let histogram = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch);
            let size = SIMULATION_BATCH.min(trials - batch * SIMULATION_BATCH);
            let mut local = BTreeMap::<usize, u64>::new();
            let empty = index.empty_state();
            let mut state = empty.clone();
            for _ in 0..size {
                state.clone_from(&empty);
                while !state.is_complete() {
                    index.push(&mut state, letters.sample(&mut rng));
                }
                *local.entry(state.len()).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (n, c) in b {
                *a.entry(n).or_default() += c;
            }
            a
        });

    Ok(SimSummary::from_histogram(d, k, seed, histogram))
}
