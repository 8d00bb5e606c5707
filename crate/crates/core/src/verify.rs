//! Verification sweeps: each claim is checked exhaustively over a bounded
//! range and reported with its first counterexample.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::One;

use crate::codec::{decode_integer, decode_stream, encode_integer, encode_stream};
use crate::error::{Error, Result};
use crate::numeral::{greedy_decompose, Representation};
use crate::oracle::{
    check_doubling, check_lucas_cumulative, check_lucas_minus_one, check_max_fill, check_power_sum,
    count_representations, counterexample_search, enumerate_representations,
    find_sum_reaching_next_term, max_canonical_sum_below, representation_census, IndexBound,
    ENUMERATION_LIMIT,
};
use crate::sequences::SequenceSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl ClaimResult {
    fn new(name: impl Into<String>, outcome: std::result::Result<String, String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

impl fmt::Display for ClaimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "PASS {} ({})", self.name, self.detail)
        } else {
            write!(f, "FAIL {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub claims: Vec<ClaimResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.claims.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, claim: ClaimResult) {
        self.claims.push(claim);
    }

    fn extend(&mut self, other: Report) {
        self.claims.extend(other.claims);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            writeln!(f, "{c}")?;
        }
        let passed = self.claims.iter().filter(|c| c.passed).count();
        write!(f, "{passed}/{} claims passed", self.claims.len())
    }
}

/// Sweep bounds. The defaults are the full desk-scale ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub lucas_max_n: usize,
    pub power_max_k: u32,
    pub doubling_orders: RangeInclusive<usize>,
    pub doubling_max_i: usize,
    pub max_fill_orders: RangeInclusive<usize>,
    pub max_fill_max_i: usize,
    pub sequence_terms: usize,
    /// Largest index considered by the exhaustive Fibonacci sum-bound check.
    pub fib_sum_max_index: usize,
    pub order_bound_max_i: usize,
    pub unique_max: u64,
    pub orders: RangeInclusive<usize>,
    pub enum_max: u64,
    pub greedy_max: u64,
    pub perturbed_bound: u64,
    pub codec_max: u64,
    pub codec_orders: RangeInclusive<usize>,
    pub prefix_max: u64,
    pub prefix_orders: RangeInclusive<usize>,
    pub length_max: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            lucas_max_n: 100,
            power_max_k: 64,
            doubling_orders: 2..=6,
            doubling_max_i: 200,
            max_fill_orders: 2..=4,
            max_fill_max_i: 60,
            sequence_terms: 500,
            fib_sum_max_index: 18,
            order_bound_max_i: 15,
            unique_max: 10_000,
            orders: 2..=5,
            enum_max: 3000,
            greedy_max: 100_000,
            perturbed_bound: 100,
            codec_max: 100_000,
            codec_orders: 2..=5,
            prefix_max: 5000,
            prefix_orders: 2..=4,
            length_max: 10_000,
        }
    }
}

impl VerifyOptions {
    /// Caps every lemma sweep at `max_n`.
    pub fn with_lemma_bound(mut self, max_n: usize) -> Self {
        self.lucas_max_n = max_n;
        self.power_max_k = u32::try_from(max_n).unwrap_or(u32::MAX);
        self.doubling_max_i = max_n;
        self.max_fill_max_i = max_n;
        self.sequence_terms = max_n;
        self
    }

    /// Checks that the exhaustive cross-checks stay inside the oracle limits.
    pub fn check_limits(&self) -> Result<()> {
        let mut specs: Vec<SequenceSpec> = self
            .orders
            .clone()
            .filter_map(|k| SequenceSpec::kbonacci(k).ok())
            .collect();
        specs.push(SequenceSpec::lucas());
        for spec in specs {
            let bound = IndexBound::Auto.resolve(spec, &BigUint::from(self.enum_max));
            if bound > ENUMERATION_LIMIT {
                return Err(Error::OracleBoundExceeded {
                    requested: bound,
                    limit: ENUMERATION_LIMIT,
                });
            }
        }
        let fib = self.fib_sum_max_index + 1;
        if fib > ENUMERATION_LIMIT || self.order_bound_max_i > ENUMERATION_LIMIT {
            return Err(Error::OracleBoundExceeded {
                requested: fib.max(self.order_bound_max_i),
                limit: ENUMERATION_LIMIT,
            });
        }
        if *self.orders.start() < 2
            || *self.codec_orders.start() < 2
            || *self.prefix_orders.start() < 2
        {
            return Err(Error::InvalidOrder(1));
        }
        Ok(())
    }
}

fn first_failure<I, F>(items: I, mut check: F) -> std::result::Result<(), String>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> std::result::Result<(), String>,
{
    items.into_iter().try_for_each(&mut check)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Identity and bound checks on the sequences themselves.
pub fn lemmas(opts: &VerifyOptions) -> Report {
    let mut report = Report::default();

    report.push(ClaimResult::new(
        "lucas-minus-one",
        first_failure(2..=opts.lucas_max_n, |n| {
            let id = check_lucas_minus_one(n).map_err(|e| e.to_string())?;
            id.holds()
                .then_some(())
                .ok_or_else(|| format!("n={n}: {} != {}", id.lhs, id.rhs))
        })
        .map(|_| format!("n in [2, {}]", opts.lucas_max_n)),
    ));

    report.push(ClaimResult::new(
        "lucas-cumulative",
        first_failure(0..=opts.lucas_max_n, |n| {
            let id = check_lucas_cumulative(n);
            id.holds()
                .then_some(())
                .ok_or_else(|| format!("n={n}: {} != {}", id.lhs, id.rhs))
        })
        .map(|_| format!("n in [0, {}]", opts.lucas_max_n)),
    ));

    report.push(ClaimResult::new(
        "power-sum",
        first_failure(0..=opts.power_max_k, |k| {
            let id = check_power_sum(k);
            id.holds()
                .then_some(())
                .ok_or_else(|| format!("k={k}: {} != {}", id.lhs, id.rhs))
        })
        .map(|_| format!("k in [0, {}]", opts.power_max_k)),
    ));

    report.push(ClaimResult::new(
        "doubling-identity-and-growth-bound",
        first_failure(opts.doubling_orders.clone(), |k| {
            first_failure(k..=opts.doubling_max_i.max(k), |i| {
                let c = check_doubling(k, i).map_err(|e| e.to_string())?;
                if !c.identity.holds() {
                    return Err(format!(
                        "k={k} i={i}: 2g_i={} but g_(i+1)+g_(i-k)={}",
                        c.identity.lhs, c.identity.rhs
                    ));
                }
                if !c.bound_holds() {
                    return Err(format!(
                        "k={k} i={i}: g_(i+1)={} not < 2g_i={}",
                        c.next, c.twice
                    ));
                }
                Ok(())
            })
        })
        .map(|_| {
            format!(
                "k in {:?}, i in [k, {}]",
                opts.doubling_orders, opts.doubling_max_i
            )
        }),
    ));

    report.push(ClaimResult::new(
        "seed-doubling-equality",
        first_failure(opts.doubling_orders.clone(), |k| {
            let spec = SequenceSpec::kbonacci(k).map_err(|e| e.to_string())?;
            let g = spec.first_terms(k + 1);
            first_failure(0..k.saturating_sub(1), |i| {
                (&g[i] * 2u32 == g[i + 1])
                    .then_some(())
                    .ok_or_else(|| format!("k={k} i={i}: 2g_i != g_(i+1)"))
            })
        })
        .map(|_| "2g_i = g_(i+1) for 0 <= i < k-1".to_string()),
    ));

    report.push(ClaimResult::new(
        "geometric-seed-sum",
        first_failure(opts.doubling_orders.clone(), |k| {
            let spec = SequenceSpec::kbonacci(k).map_err(|e| e.to_string())?;
            let sum: BigUint = spec.first_terms(k).iter().sum();
            (sum == (BigUint::one() << k) - 1u32)
                .then_some(())
                .ok_or_else(|| format!("k={k}: seed sum {sum}"))
        })
        .map(|_| "sum of first k terms = 2^k - 1".to_string()),
    ));

    report.push(ClaimResult::new(
        "recurrence",
        check_recurrences(opts).map(|_| format!("{} terms", opts.sequence_terms)),
    ));

    report.push(ClaimResult::new(
        "max-fill",
        first_failure(opts.max_fill_orders.clone(), |k| {
            first_failure(1..=opts.max_fill_max_i, |i| {
                let id = check_max_fill(k, i).map_err(|e| e.to_string())?;
                id.holds()
                    .then_some(())
                    .ok_or_else(|| format!("k={k} i={i}: F(i)={} but g_i-1={}", id.lhs, id.rhs))
            })
        })
        .map(|_| {
            format!(
                "k in {:?}, i in [1, {}]",
                opts.max_fill_orders, opts.max_fill_max_i
            )
        }),
    ));

    report.push(ClaimResult::new(
        "fibonacci-canonical-sum-below-next-term",
        match find_sum_reaching_next_term(2, opts.fib_sum_max_index + 1) {
            Ok(None) => Ok(format!(
                "all canonical subsets of indices 0..={}",
                opts.fib_sum_max_index
            )),
            Ok(Some(set)) => Err(format!("indices {set:?} reach the next term")),
            Err(e) => Err(e.to_string()),
        },
    ));

    report.push(ClaimResult::new(
        "order-k-canonical-sum-bound",
        first_failure(opts.max_fill_orders.clone(), |k| {
            let spec = SequenceSpec::kbonacci(k).map_err(|e| e.to_string())?;
            first_failure(1..=opts.order_bound_max_i, |i| {
                let best = max_canonical_sum_below(k, i).map_err(|e| e.to_string())?;
                let limit = spec.term(i) - 1u32;
                (best <= limit)
                    .then_some(())
                    .ok_or_else(|| format!("k={k} i={i}: canonical sum {best} > g_i-1={limit}"))
            })
        })
        .map(|_| {
            format!(
                "k in {:?}, i in [1, {}]",
                opts.max_fill_orders, opts.order_bound_max_i
            )
        }),
    ));

    report
}

fn check_recurrences(opts: &VerifyOptions) -> std::result::Result<(), String> {
    let n = opts.sequence_terms;
    let mut specs: Vec<SequenceSpec> = opts
        .doubling_orders
        .clone()
        .filter_map(|k| SequenceSpec::kbonacci(k).ok())
        .collect();
    specs.push(SequenceSpec::lucas());
    first_failure(specs, |spec| {
        let window = spec.order().unwrap_or(2);
        let t = spec.first_terms(n.max(window + 1));
        first_failure(window..t.len(), |i| {
            let expected: BigUint = t[i - window..i].iter().sum();
            (t[i] == expected)
                .then_some(())
                .ok_or_else(|| format!("{spec} term {i} breaks the recurrence"))
        })?;
        let first_increasing = if spec.is_lucas() { 1 } else { 0 };
        first_failure(first_increasing..t.len() - 1, |i| {
            (t[i + 1] > t[i])
                .then_some(())
                .ok_or_else(|| format!("{spec} not increasing at {i}"))
        })
    })
}

fn all_specs(orders: &RangeInclusive<usize>) -> Vec<SequenceSpec> {
    let mut specs: Vec<SequenceSpec> = orders
        .clone()
        .filter_map(|k| SequenceSpec::kbonacci(k).ok())
        .collect();
    specs.push(SequenceSpec::lucas());
    specs
}

/// Canonical count is exactly one over `[0, max]`, with the run-length
/// counter cross-checked against full subset enumeration over `[0, enum_max]`.
pub fn unique_counts(
    spec: SequenceSpec,
    max: u64,
    enum_max: u64,
) -> std::result::Result<String, String> {
    first_failure(0..=max, |n| {
        let c = count_representations(spec, &big(n), IndexBound::Auto, true);
        c.is_one()
            .then_some(())
            .ok_or_else(|| format!("n={n} has {c} canonical representations"))
    })?;
    let bound = IndexBound::Auto.resolve(spec, &big(enum_max));
    for constrained in [true, false] {
        let census =
            representation_census(spec, bound, enum_max, constrained).map_err(|e| e.to_string())?;
        first_failure(0..=enum_max, |n| {
            let dp = count_representations(spec, &big(n), IndexBound::Fixed(bound), constrained);
            (dp == big(census[n as usize]))
                .then_some(())
                .ok_or_else(|| {
                    format!(
                        "n={n} constrained={constrained}: counter says {dp}, enumeration says {}",
                        census[n as usize]
                    )
                })
        })?;
        if !constrained && spec.is_lucas() {
            if let Some(n) = census.iter().position(|&c| c == 0) {
                return Err(format!("n={n} has no representation at all"));
            }
        }
    }
    Ok(format!(
        "count = 1 on [0, {max}], enumeration agrees on [0, {enum_max}]"
    ))
}

/// Every n up to `max` is a sum of distinct Lucas numbers, and 4 has both
/// of its known forms.
pub fn lucas_completeness(max: u64) -> std::result::Result<String, String> {
    let lucas = SequenceSpec::lucas();
    first_failure(0..=max, |n| {
        let c = count_representations(lucas, &big(n), IndexBound::Auto, false);
        (c >= BigUint::one())
            .then_some(())
            .ok_or_else(|| format!("n={n} is not a sum of distinct Lucas numbers"))
    })?;
    let four = enumerate_representations(lucas, &big(4), 5, false).map_err(|e| e.to_string())?;
    let lists: Vec<&[usize]> = four.iter().map(Representation::indices).collect();
    if lists.len() < 2 || !lists.contains(&&[1, 2][..]) || !lists.contains(&&[3][..]) {
        return Err(format!("4 enumerates as {lists:?}"));
    }
    Ok(format!(
        "every n in [0, {max}] representable; 4 has forms {lists:?}"
    ))
}

/// Greedy output equals the oracle's unique canonical enumeration.
pub fn greedy_matches_oracle(spec: SequenceSpec, max: u64) -> std::result::Result<String, String> {
    let bound = IndexBound::Auto.resolve(spec, &big(max));
    first_failure(0..=max, |n| {
        let greedy = greedy_decompose(spec, &big(n));
        let found =
            enumerate_representations(spec, &big(n), bound, true).map_err(|e| e.to_string())?;
        (found.len() == 1 && found[0] == greedy)
            .then_some(())
            .ok_or_else(|| format!("n={n}: greedy {greedy}, oracle {} forms", found.len()))
    })
    .map(|_| format!("n in [0, {max}]"))
}

pub fn greedy_roundtrip(spec: SequenceSpec, max: u64) -> std::result::Result<String, String> {
    first_failure(0..=max, |n| {
        let x = big(n);
        let rep = greedy_decompose(spec, &x);
        if rep.value() != x {
            return Err(format!("n={n}: greedy {rep} sums to {}", rep.value()));
        }
        let violations = rep.validate();
        violations
            .is_empty()
            .then_some(())
            .ok_or_else(|| format!("n={n}: greedy {rep} violates {violations:?}"))
    })
    .map(|_| format!("n in [0, {max}]"))
}

/// Perturbed seeds that must produce a failure within `bound`.
pub fn perturbed_initials() -> Vec<Vec<u64>> {
    vec![
        vec![1, 3],
        vec![2, 3],
        vec![1, 4],
        vec![1, 2, 3],
        vec![1, 2, 5],
        vec![1, 3, 4],
    ]
}

/// Runs the counterexample search and compares with the expected outcome:
/// only the powers-of-two seed yields unique representations.
pub fn initials_claim(initials: &[u64], bound: u64) -> ClaimResult {
    let k = initials.len();
    let powers = initials
        .iter()
        .enumerate()
        .all(|(q, &v)| u32::try_from(q).is_ok_and(|q| 2u64.checked_pow(q) == Some(v)));
    let seed: Vec<BigUint> = initials.iter().map(|&v| big(v)).collect();
    let name = format!("initials {initials:?}");
    let outcome = match counterexample_search(k, &seed, bound) {
        Err(e) => Err(e.to_string()),
        Ok(None) if powers => Ok(format!("no counterexample up to {bound}")),
        Ok(None) => Err(format!("no counterexample up to {bound}")),
        Ok(Some((n, count))) if !powers => Ok(format!("counterexample n={n}, count={count}")),
        Ok(Some((n, count))) => Err(format!("counterexample n={n}, count={count}")),
    };
    ClaimResult::new(name, outcome)
}

pub fn uniqueness(opts: &VerifyOptions) -> Report {
    let mut report = Report::default();
    for spec in all_specs(&opts.orders) {
        report.push(ClaimResult::new(
            format!("unique-canonical {spec}"),
            unique_counts(spec, opts.unique_max, opts.enum_max.min(opts.unique_max)),
        ));
    }
    report.push(ClaimResult::new(
        "lucas-completeness",
        lucas_completeness(opts.unique_max),
    ));
    for spec in all_specs(&opts.orders) {
        report.push(ClaimResult::new(
            format!("greedy-matches-oracle {spec}"),
            greedy_matches_oracle(spec, opts.enum_max.min(opts.unique_max)),
        ));
        report.push(ClaimResult::new(
            format!("greedy-roundtrip {spec}"),
            greedy_roundtrip(spec, opts.greedy_max),
        ));
    }
    for initials in perturbed_initials() {
        report.push(initials_claim(&initials, opts.perturbed_bound));
    }
    for k in 2..=3u32 {
        let seed: Vec<u64> = (0..k).map(|q| 1 << q).collect();
        report.push(initials_claim(&seed, opts.unique_max));
    }
    report
}

pub fn codec_roundtrip(k: usize, max: u64) -> std::result::Result<String, String> {
    first_failure(1..=max, |n| {
        let x = big(n);
        let word = encode_integer(k, &x).map_err(|e| e.to_string())?;
        let payload_len = word.len() - if k == 2 { 1 } else { k + 1 };
        let mut run = 0;
        for &bit in &word.as_slice()[..payload_len] {
            run = if bit { run + 1 } else { 0 };
            if run >= k {
                return Err(format!("n={n}: payload holds {k} consecutive ones"));
            }
        }
        let (back, next) = decode_integer(k, &word, 0).map_err(|e| format!("n={n}: {e}"))?;
        (back == x && next == word.len())
            .then_some(())
            .ok_or_else(|| format!("n={n}: decoded {back} ending at {next}"))
    })
    .map(|_| format!("n in [1, {max}]"))
}

/// No codeword is a prefix of another. After sorting, a codeword that
/// prefixes any other also prefixes its immediate successor.
pub fn prefix_free(k: usize, max: u64) -> std::result::Result<String, String> {
    let mut words: Vec<(crate::bits::BitString, u64)> = (1..=max)
        .map(|n| encode_integer(k, &big(n)).map(|w| (w, n)))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    words.sort_by(|a, b| a.0.as_slice().cmp(b.0.as_slice()));
    first_failure(words.windows(2), |w| {
        (!w[1].0.starts_with(&w[0].0))
            .then_some(())
            .ok_or_else(|| format!("codeword of {} prefixes codeword of {}", w[0].1, w[1].1))
    })
    .map(|_| format!("n in [1, {max}]"))
}

fn monotone_length(max: u64) -> std::result::Result<String, String> {
    let mut prev = 0;
    first_failure(1..=max, |n| {
        let len = encode_integer(2, &big(n)).map_err(|e| e.to_string())?.len();
        if len < prev {
            return Err(format!("n={n}: length {len} after {prev}"));
        }
        prev = len;
        Ok(())
    })
    .map(|_| format!("n in [1, {max}]"))
}

/// Fibonacci codewords of 1..=7.
pub const FIBONACCI_CODE_TABLE: [&str; 7] =
    ["11", "011", "0011", "1011", "00011", "10011", "01011"];

fn fibonacci_table() -> std::result::Result<String, String> {
    first_failure(1..=7u64, |n| {
        let word = encode_integer(2, &big(n))
            .map_err(|e| e.to_string())?
            .to_string();
        let expected = FIBONACCI_CODE_TABLE[n as usize - 1];
        (word == expected)
            .then_some(())
            .ok_or_else(|| format!("n={n}: {word}, expected {expected}"))
    })
    .map(|_| FIBONACCI_CODE_TABLE.join(" "))
}

fn stream_determinism(k: u8) -> std::result::Result<String, String> {
    let values: Vec<BigUint> = (0..2000u64)
        .map(|v| big(v * v + 7 * v))
        .chain([big(u64::MAX)])
        .collect();
    let first = encode_stream(k, &values).map_err(|e| e.to_string())?;
    let second = encode_stream(k, &values).map_err(|e| e.to_string())?;
    if first != second {
        return Err("two encodes differ".into());
    }
    let (order, back) = decode_stream(&first).map_err(|e| e.to_string())?;
    (order == k && back == values)
        .then_some(())
        .ok_or_else(|| "stream round trip differs".to_string())
        .map(|_| format!("{} bytes", first.len()))
}

pub fn codec(opts: &VerifyOptions) -> Report {
    let mut report = Report::default();
    for k in opts.codec_orders.clone() {
        report.push(ClaimResult::new(
            format!("codec-roundtrip k={k}"),
            codec_roundtrip(k, opts.codec_max),
        ));
    }
    for k in opts.prefix_orders.clone() {
        report.push(ClaimResult::new(
            format!("prefix-free k={k}"),
            prefix_free(k, opts.prefix_max),
        ));
    }
    report.push(ClaimResult::new(
        "monotone-length k=2",
        monotone_length(opts.length_max),
    ));
    report.push(ClaimResult::new("fibonacci-code-table", fibonacci_table()));
    for k in opts.codec_orders.clone() {
        let outcome = u8::try_from(k)
            .map_err(|_| format!("order {k} does not fit the stream header"))
            .and_then(stream_determinism);
        report.push(ClaimResult::new(
            format!("stream-deterministic k={k}"),
            outcome,
        ));
    }
    report
}

pub fn all(opts: &VerifyOptions) -> Report {
    let mut report = lemmas(opts);
    report.extend(uniqueness(opts));
    report.extend(codec(opts));
    report
}
