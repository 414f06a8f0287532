//! Differential checks of closed forms against oracles, singly and over
//! deterministic sweeps.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigmath::{pow, Natural, Rational};
use crate::error::Result;
use crate::family::{Argument, Family, Scope, SumSpec};
use crate::radix::expand;
use crate::{identities, oracle};

/// Closed form and oracle side by side for one [`SumSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub spec: SumSpec,
    pub direct_value: Rational,
    pub closed_value: Rational,
    pub matches: bool,
}

pub fn report(spec: &SumSpec) -> Result<OracleReport> {
    let closed_value = identities::evaluate(spec)?;
    let direct_value = oracle::evaluate_direct(spec)?;
    Ok(OracleReport {
        spec: spec.clone(),
        matches: closed_value == direct_value,
        direct_value,
        closed_value,
    })
}

/// Inputs of a verification sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Inclusive range of integer arguments.
    pub n_range: (u64, u64),
    pub bases: Vec<u64>,
    /// When set, the ceiling family is also run on `x = t / d` for every
    /// non-integer `x` with `max(n0, 1) <= x <= n1`.
    pub x_den: Option<u64>,
    pub seed: u64,
    /// Random arguments per base, each exactly `random_bits` bits long.
    pub count: usize,
    pub random_bits: u64,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_range: (0, 1024),
            bases: vec![2, 3, 4, 5, 6, 7, 8, 9, 10, 16],
            x_den: None,
            seed: 0,
            count: 0,
            random_bits: 256,
            threads: None,
        }
    }
}

/// Largest `n` for which Legendre's formula is checked against trial
/// division, which is quadratic in `n`.
pub const LEGENDRE_LIMIT: u64 = 200;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checks: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub check: String,
    pub closed: String,
    pub direct: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub tallies: BTreeMap<String, Tally>,
    pub first_mismatch: Option<Mismatch>,
}

impl SweepSummary {
    pub fn checks(&self) -> u64 {
        self.tallies.values().map(|t| t.checks).sum()
    }

    pub fn mismatches(&self) -> u64 {
        self.tallies.values().map(|t| t.mismatches).sum()
    }

    fn record(&mut self, label: &str, outcome: Outcome) {
        let tally = self.tallies.entry(label.to_string()).or_default();
        tally.checks += 1;
        if let Some(mismatch) = outcome {
            tally.mismatches += 1;
            self.first_mismatch.get_or_insert(mismatch);
        }
    }

    fn merge(&mut self, other: SweepSummary) {
        for (label, tally) in other.tallies {
            let mine = self.tallies.entry(label).or_default();
            mine.checks += tally.checks;
            mine.mismatches += tally.mismatches;
        }
        if self.first_mismatch.is_none() {
            self.first_mismatch = other.first_mismatch;
        }
    }
}

type Outcome = Option<Mismatch>;

/// One argument in one base; expands into every applicable check.
#[derive(Clone, Debug)]
enum Unit {
    Natural { n: Natural, base: u64 },
    Fraction { x: Rational, base: u64, label: &'static str },
}

fn compare(spec: &SumSpec) -> Outcome {
    match report(spec) {
        Ok(r) if r.matches => None,
        Ok(r) => Some(Mismatch {
            check: spec.to_string(),
            closed: r.closed_value.to_string(),
            direct: r.direct_value.to_string(),
        }),
        Err(e) => Some(Mismatch {
            check: spec.to_string(),
            closed: format!("error: {e}"),
            direct: String::new(),
        }),
    }
}

fn compare_values(check: String, closed: Result<Natural>, direct: Result<Natural>) -> Outcome {
    match (closed, direct) {
        (Ok(a), Ok(b)) if a == b => None,
        (a, b) => Some(Mismatch {
            check,
            closed: a.map_or_else(|e| format!("error: {e}"), |v| v.to_string()),
            direct: b.map_or_else(|e| format!("error: {e}"), |v| v.to_string()),
        }),
    }
}

fn run_natural(n: &Natural, base: u64, summary: &mut SweepSummary) {
    let b = Natural::from(base);
    let positive = !n.is_zero();
    for family in Family::ALL {
        if !positive && matches!(family, Family::Frac | Family::Sawtooth | Family::Ceil) {
            continue;
        }
        for j in family.min_j() as u64..base {
            let spec = SumSpec::new(family, Scope::Single(j.into()), Argument::Natural(n.clone()), b.clone())
                .expect("sweep parameters are in range");
            summary.record(family.name(), compare(&spec));
        }
        let spec = SumSpec::new(family, Scope::Double, Argument::Natural(n.clone()), b.clone())
            .expect("sweep parameters are in range");
        summary.record(&spec.label(), compare(&spec));
    }
    if *n <= Natural::from(LEGENDRE_LIMIT) {
        summary.record(
            "legendre",
            compare_values(
                format!("legendre n={n} p={base}"),
                identities::legendre_valuation(n, &b),
                oracle::factorial_valuation_direct(n, &b),
            ),
        );
    }
    if positive {
        let e = expand(n, &b).expect("base >= 2");
        let valuation = e.valuation().expect("n >= 1");
        let lowest = e.lowest_nonzero_digit().expect("n >= 1").clone();
        for j in 1..base {
            let jn = Natural::from(j);
            let expected = (lowest == &b - &jn).then_some(valuation);
            let found = oracle::integer_term_locator(n, &b, &jn);
            let outcome = match found {
                Ok(k) if k == expected => None,
                other => Some(Mismatch {
                    check: format!("integer-term n={n} b={base} j={j}"),
                    closed: format!("{expected:?}"),
                    direct: format!("{other:?}"),
                }),
            };
            summary.record("integer-term", outcome);
        }
    }
}

fn run_fraction(x: &Rational, base: u64, label: &str, summary: &mut SweepSummary) {
    let b = Natural::from(base);
    for j in 1..base {
        let spec = SumSpec::new(Family::Ceil, Scope::Single(j.into()), Argument::Rational(x.clone()), b.clone())
            .expect("sweep parameters are in range");
        summary.record(label, compare(&spec));
    }
    let spec = SumSpec::new(Family::Ceil, Scope::Double, Argument::Rational(x.clone()), b)
        .expect("sweep parameters are in range");
    summary.record(&format!("{label}-double"), compare(&spec));
}

impl Unit {
    fn run(&self) -> SweepSummary {
        let mut summary = SweepSummary::default();
        match self {
            Unit::Natural { n, base } => run_natural(n, *base, &mut summary),
            Unit::Fraction { x, base, label } => run_fraction(x, *base, label, &mut summary),
        }
        summary
    }
}

/// A uniformly random natural with exactly `bits` bits.
pub fn random_natural(rng: &mut impl RngCore, bits: u64) -> Natural {
    if bits == 0 {
        return Natural::zero();
    }
    let mut bytes = vec![0u8; bits.div_ceil(8) as usize];
    rng.fill_bytes(&mut bytes);
    let mut n = BigUint::from_bytes_le(&bytes);
    let mask = (Natural::one() << bits) - 1u32;
    n &= mask;
    n.set_bit(bits - 1, true);
    n
}

fn units(config: &SweepConfig) -> Vec<Unit> {
    let (lo, hi) = config.n_range;
    let mut units = Vec::new();
    for &base in &config.bases {
        units.extend((lo..=hi).map(|n| Unit::Natural { n: n.into(), base }));
    }
    if let Some(den) = config.x_den.filter(|&d| d > 1) {
        let start = lo.max(1) * den;
        for &base in &config.bases {
            units.extend(
                (start..=hi.saturating_mul(den))
                    .filter(|t| t % den != 0)
                    .map(|t| Unit::Fraction {
                        x: Rational::ratio(t, den),
                        base,
                        label: "ceil-rational",
                    }),
            );
        }
    }
    // ⌈x⌉ a power of the base with x not an integer: the one place where
    // the ceiling closed form needs its correction.
    for &base in &config.bases {
        for m in 1..=4 {
            let x = Rational::from(pow(&Natural::from(base), m)) - Rational::half();
            units.push(Unit::Fraction {
                x,
                base,
                label: "ceil-edge",
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for &base in &config.bases {
        for _ in 0..config.count {
            units.push(Unit::Natural {
                n: random_natural(&mut rng, config.random_bits),
                base,
            });
        }
    }
    units
}

/// Runs every family over the sweep. Units are evaluated in parallel and
/// folded in generation order, so the summary does not depend on the
/// thread count.
pub fn sweep(config: &SweepConfig) -> SweepSummary {
    let units = units(config);
    let run = || -> Vec<SweepSummary> { units.par_iter().map(Unit::run).collect() };
    let parts = match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    parts.into_iter().fold(SweepSummary::default(), |mut acc, part| {
        acc.merge(part);
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_for_spot_values() {
        let spec = SumSpec::single(Family::Floor, 1024u32, 3u32, 1u32).unwrap();
        let r = report(&spec).unwrap();
        assert!(r.matches);
        assert_eq!(r.closed_value, Rational::from(510u64));
    }

    #[test]
    fn trivial_sweep_passes() {
        let config = SweepConfig {
            n_range: (0, 0),
            bases: vec![2],
            ..SweepConfig::default()
        };
        let summary = sweep(&config);
        assert_eq!(summary.mismatches(), 0);
        assert!(summary.checks() > 0);
    }

    #[test]
    fn sweep_is_thread_independent() {
        let base_config = SweepConfig {
            n_range: (0, 40),
            bases: vec![2, 3, 10],
            x_den: Some(4),
            seed: 7,
            count: 3,
            random_bits: 64,
            threads: Some(1),
        };
        let one = sweep(&base_config);
        let four = sweep(&SweepConfig {
            threads: Some(4),
            ..base_config
        });
        assert_eq!(one, four);
        assert_eq!(one.mismatches(), 0);
        assert!(one.tallies.contains_key("ceil-edge"));
        assert!(one.tallies.contains_key("ceil-rational-double"));
    }

    #[test]
    fn random_naturals_have_exact_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for bits in [1u64, 7, 64, 256] {
            assert_eq!(random_natural(&mut rng, bits).bits(), bits);
        }
    }
}
