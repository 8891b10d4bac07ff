//! Closed-form counts of ternary superpatterns (`d = k = 3`).

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::binomial;

/// Shortest length for which the closed forms hold.
pub const MIN_FORMULA_LENGTH: usize = 7;

/// Header of the CSV form of [`CountReport`].
pub const CSV_HEADER: [&str; 8] = [
    "n",
    "gamma_total",
    "s_mu",
    "s_a",
    "s_total",
    "beta_a",
    "beta_b",
    "beta_total",
];

/// All closed-form counts at one length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    /// Minimal superpatterns, up to letter isomorphism.
    pub gamma_total: BigInt,
    /// Strict minimal superpatterns, up to isomorphism.
    pub s_mu: BigInt,
    /// Strict superpatterns (repeats allowed), up to isomorphism.
    pub s_a: BigInt,
    /// All strict superpatterns.
    pub s_total: BigInt,
    /// Alternating candidates starting `1 2 1` that are not superpatterns.
    pub beta_a: BigInt,
    /// Alternating candidates starting `1 2 3` that are not superpatterns.
    pub beta_b: BigInt,
    pub beta_total: BigInt,
}

impl CountReport {
    pub fn csv_record(&self) -> [String; 8] {
        [
            self.n.to_string(),
            self.gamma_total.to_string(),
            self.s_mu.to_string(),
            self.s_a.to_string(),
            self.s_total.to_string(),
            self.beta_a.to_string(),
            self.beta_b.to_string(),
            self.beta_total.to_string(),
        ]
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `(n - 4)^2 - 2`
pub fn strict_minimal_count(n: usize) -> BigInt {
    let m = big(n as i64 - 4);
    &m * &m - 2
}

/// `2^(n-2) - (n-2)^2`
pub fn minimal_count(n: usize) -> BigInt {
    let m = big(n as i64 - 2);
    (BigInt::from(1) << (n - 2)) - &m * &m
}

/// `sum_{m=7..n} ((m - 4)^2 - 2) C(n - 2, m - 2)`
pub fn strict_count_upto_iso(n: usize) -> BigInt {
    (MIN_FORMULA_LENGTH..=n).fold(BigInt::zero(), |acc, m| {
        acc + strict_minimal_count(m) * BigInt::from(binomial(n as u64 - 2, m as u64 - 2))
    })
}

/// `6 * S_a(n)`
pub fn strict_count(n: usize) -> BigInt {
    strict_count_upto_iso(n) * 6
}

/// Evaluates every closed form at `n >= 7`.
pub fn count_formulas(n: usize) -> Result<CountReport> {
    if n < MIN_FORMULA_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "closed forms hold for n >= {MIN_FORMULA_LENGTH}, got {n}"
        )));
    }
    let ni = n as i64;
    let beta_a = big(ni * ni - 7 * ni + 14);
    let beta_b = big(3 * ni - 10);
    let beta_total = &beta_a + &beta_b;
    let s_a = strict_count_upto_iso(n);
    Ok(CountReport {
        n,
        gamma_total: minimal_count(n),
        s_mu: strict_minimal_count(n),
        s_total: &s_a * 6,
        s_a,
        beta_a,
        beta_b,
        beta_total,
    })
}

/// `d^n`, the number of words of length `n`.
pub fn word_count(d: usize, n: usize) -> BigUint {
    BigUint::from(d).pow(n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn length_seven() {
        let r = count_formulas(7).unwrap();
        assert_eq!(r.gamma_total, b(7));
        assert_eq!(r.s_mu, b(7));
        assert_eq!(r.s_a, b(7));
        assert_eq!(r.s_total, b(42));
        assert_eq!(
            (r.beta_a.clone(), r.beta_b.clone(), r.beta_total.clone()),
            (b(14), b(11), b(25))
        );
    }

    #[test]
    fn length_eight_and_nine() {
        let r = count_formulas(8).unwrap();
        assert_eq!(r.s_mu, b(14));
        assert_eq!(r.s_total, b(6 * (7 * 6 + 14)));
        let r = count_formulas(9).unwrap();
        assert_eq!(r.beta_total, b(49));
        assert_eq!(r.gamma_total, b(128 - 49));
    }

    #[test]
    fn report_invariants() {
        for n in 7..60 {
            let r = count_formulas(n).unwrap();
            assert_eq!(r.beta_total, &r.beta_a + &r.beta_b);
            assert_eq!(r.gamma_total, (BigInt::from(1) << (n - 2)) - &r.beta_total);
            assert_eq!(r.s_total, &r.s_a * 6);
            if n >= 8 {
                assert_eq!(r.s_mu, minimal_count(n) - minimal_count(n - 1) * 2);
            }
        }
    }

    #[test]
    fn short_lengths_rejected() {
        assert!(count_formulas(6).is_err());
    }

    #[test]
    fn csv_shape() {
        let rec = count_formulas(7).unwrap().csv_record();
        assert_eq!(rec, ["7", "7", "7", "7", "42", "14", "11", "25"]);
    }
}
