//! Representations as index sets, the canonical constraint for each system,
//! and greedy decomposition.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::sequences::{SequenceSpec, System};

/// The constraint an index set must satisfy to be canonical.
///
/// k-bonacci of order `k`: no run of `k` consecutive indices.
/// Lucas: no two consecutive indices, and indices 0 and 2 never together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalRule {
    max_run: usize,
    forbid_zero_two: bool,
}

impl CanonicalRule {
    /// Rule for a k-bonacci-style recurrence of the given order, independent
    /// of the initial terms.
    pub fn for_order(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self {
            max_run: order - 1,
            forbid_zero_two: false,
        })
    }

    pub fn for_spec(spec: SequenceSpec) -> Self {
        match spec.system() {
            System::KBonacci { order } => Self {
                max_run: order - 1,
                forbid_zero_two: false,
            },
            System::Lucas => Self {
                max_run: 1,
                forbid_zero_two: true,
            },
        }
    }

    /// Longest permitted run of consecutive indices.
    pub fn max_run(&self) -> usize {
        self.max_run
    }

    pub fn forbids_zero_two(&self) -> bool {
        self.forbid_zero_two
    }

    /// Whether a strictly increasing index list satisfies the rule.
    pub fn permits(&self, indices: &[usize]) -> bool {
        if self.forbid_zero_two && indices.contains(&0) && indices.contains(&2) {
            return false;
        }
        let mut run = 0;
        for (pos, &i) in indices.iter().enumerate() {
            run = if pos > 0 && indices[pos - 1] + 1 == i {
                run + 1
            } else {
                1
            };
            if run > self.max_run {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for CanonicalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forbid_zero_two {
            write!(f, "no consecutive; not {{0,2}} together")
        } else {
            write!(f, "no {} consecutive indices", self.max_run + 1)
        }
    }
}

pub fn canonical_rule(spec: SequenceSpec) -> CanonicalRule {
    CanonicalRule::for_spec(spec)
}

/// Why a representation is not canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstraintViolation {
    /// A maximal run of consecutive indices at least as long as the rule forbids.
    ConsecutiveRun { start: usize, length: usize },
    /// Lucas indices 0 and 2 both present.
    LucasZeroTwo,
}

impl ConstraintViolation {
    pub fn indices(&self) -> Vec<usize> {
        match self {
            Self::ConsecutiveRun { start, length } => (*start..start + length).collect(),
            Self::LucasZeroTwo => vec![0, 2],
        }
    }
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ConsecutiveRun { start, length } => {
                write!(f, "ConsecutiveRun({start},{length})")
            }
            Self::LucasZeroTwo => write!(f, "LucasZeroTwo"),
        }
    }
}

/// A set of sequence indices; the value is the sum of the terms at those
/// indices. The empty set represents zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    spec: SequenceSpec,
    indices: Vec<usize>,
}

impl Representation {
    pub fn new(spec: SequenceSpec, indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnorderedIndices);
        }
        Ok(Self { spec, indices })
    }

    pub fn zero(spec: SequenceSpec) -> Self {
        Self {
            spec,
            indices: Vec::new(),
        }
    }

    pub fn spec(&self) -> SequenceSpec {
        self.spec
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn into_indices(self) -> Vec<usize> {
        self.indices
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Terms at the chosen indices, largest index first.
    pub fn terms(&self) -> Vec<BigUint> {
        let Some(max) = self.max_index() else {
            return Vec::new();
        };
        self.spec.with_table_len(max + 1, |t| {
            self.indices
                .iter()
                .rev()
                .map(|&i| t.terms()[i].clone())
                .collect()
        })
    }

    pub fn value(&self) -> BigUint {
        let Some(max) = self.max_index() else {
            return BigUint::zero();
        };
        self.spec.with_table_len(max + 1, |t| {
            self.indices.iter().map(|&i| &t.terms()[i]).sum()
        })
    }

    /// Every constraint violation, each maximal run reported once.
    pub fn validate(&self) -> Vec<ConstraintViolation> {
        let rule = CanonicalRule::for_spec(self.spec);
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < self.indices.len() {
            let start = self.indices[pos];
            let mut end = pos + 1;
            while end < self.indices.len() && self.indices[end] == self.indices[end - 1] + 1 {
                end += 1;
            }
            let length = end - pos;
            if length > rule.max_run() {
                out.push(ConstraintViolation::ConsecutiveRun { start, length });
            }
            pos = end;
        }
        if rule.forbids_zero_two() && self.contains(0) && self.contains(2) {
            out.push(ConstraintViolation::LucasZeroTwo);
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        self.validate().is_empty()
    }

    /// Indicator bits, low index first: bit `i` is set iff `i` is an index.
    pub fn coefficient_bits(&self, length: usize) -> Result<BitString> {
        if let Some(max_index) = self.max_index() {
            if length <= max_index {
                return Err(Error::LengthTooSmall { length, max_index });
            }
        }
        let mut bits = BitString::zeros(length);
        for &i in &self.indices {
            bits.set(i, true);
        }
        Ok(bits)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, i) in self.indices.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

pub fn value_of(rep: &Representation) -> BigUint {
    rep.value()
}

pub fn validate(rep: &Representation) -> Vec<ConstraintViolation> {
    rep.validate()
}

pub fn coefficient_bits(rep: &Representation, length: usize) -> Result<BitString> {
    rep.coefficient_bits(length)
}

/// Indices chosen by the greedy procedure, in the order they were chosen.
pub fn greedy_trace(spec: SequenceSpec, x: &BigUint) -> Vec<usize> {
    spec.with_table_past(x, |table| {
        let mut remainder = x.clone();
        let mut picked = Vec::new();
        while !remainder.is_zero() {
            // Terms 1 (and 2) are always present, so a positive remainder
            // always has a candidate.
            let i = table
                .largest_index_leq(&remainder)
                .expect("sequence contains 1");
            remainder -= &table.terms()[i];
            picked.push(i);
        }
        picked
    })
}

/// Canonical decomposition of `x` by repeatedly taking the largest term
/// not exceeding the remainder.
pub fn greedy_decompose(spec: SequenceSpec, x: &BigUint) -> Representation {
    let mut indices = greedy_trace(spec, x);
    indices.sort_unstable();
    debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
    Representation { spec, indices }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn rep(spec: SequenceSpec, indices: &[usize]) -> Representation {
        Representation::new(spec, indices.to_vec()).unwrap()
    }

    fn k(order: usize) -> SequenceSpec {
        SequenceSpec::kbonacci(order).unwrap()
    }

    #[test]
    fn rule_descriptions() {
        assert_eq!(canonical_rule(k(2)).to_string(), "no 2 consecutive indices");
        assert_eq!(
            canonical_rule(SequenceSpec::lucas()).to_string(),
            "no consecutive; not {0,2} together"
        );
        assert_eq!(canonical_rule(k(4)).to_string(), "no 4 consecutive indices");
    }

    #[test]
    fn rejects_unordered() {
        assert_eq!(
            Representation::new(k(2), vec![2, 1]),
            Err(Error::UnorderedIndices)
        );
        assert_eq!(
            Representation::new(k(2), vec![1, 1]),
            Err(Error::UnorderedIndices)
        );
    }

    #[test]
    fn validate_examples() {
        let lucas = SequenceSpec::lucas();
        assert_eq!(
            rep(lucas, &[1, 2]).validate(),
            vec![ConstraintViolation::ConsecutiveRun {
                start: 1,
                length: 2
            }]
        );
        assert_eq!(
            rep(lucas, &[0, 2, 4]).validate(),
            vec![ConstraintViolation::LucasZeroTwo]
        );
        assert_eq!(
            rep(k(3), &[4, 5, 6]).validate(),
            vec![ConstraintViolation::ConsecutiveRun {
                start: 4,
                length: 3
            }]
        );
        assert!(rep(k(3), &[4, 5, 7]).validate().is_empty());
        assert!(Representation::zero(lucas).validate().is_empty());
    }

    #[test]
    fn validate_reports_everything_once() {
        let lucas = SequenceSpec::lucas();
        let v = rep(lucas, &[0, 1, 2, 5, 6]).validate();
        assert_eq!(
            v,
            vec![
                ConstraintViolation::ConsecutiveRun {
                    start: 0,
                    length: 3
                },
                ConstraintViolation::ConsecutiveRun {
                    start: 5,
                    length: 2
                },
                ConstraintViolation::LucasZeroTwo,
            ]
        );
        assert_eq!(v[0].indices(), vec![0, 1, 2]);
        // zero-two never applies outside Lucas
        assert!(rep(k(3), &[0, 2]).validate().is_empty());
    }

    #[test]
    fn permits_agrees_with_validate_on_small_sets() {
        for spec in [k(2), k(3), k(4), SequenceSpec::lucas()] {
            let rule = canonical_rule(spec);
            for mask in 0u32..1 << 9 {
                let idx: Vec<usize> = (0..9).filter(|i| mask >> i & 1 == 1).collect();
                let r = rep(spec, &idx);
                assert_eq!(rule.permits(&idx), r.is_canonical(), "{spec} {idx:?}");
            }
        }
    }

    #[test]
    fn value_examples() {
        let lucas = SequenceSpec::lucas();
        assert_eq!(rep(lucas, &[1, 3, 4]).value(), big(12));
        assert_eq!(rep(lucas, &[0, 2, 4]).value(), big(12));
        assert_eq!(Representation::zero(k(5)).value(), big(0));
        assert_eq!(value_of(&rep(k(2), &[0, 2])), big(4));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_decompose(k(2), &big(4)).indices(), &[0, 2]);
        assert_eq!(greedy_decompose(k(3), &big(7)).indices(), &[3]);
        assert_eq!(
            greedy_decompose(SequenceSpec::lucas(), &big(12)).indices(),
            &[1, 5]
        );
        assert!(greedy_decompose(k(2), &big(0)).is_empty());
        assert_eq!(greedy_decompose(k(2), &big(100)).indices(), &[2, 4, 9]);
        assert_eq!(
            greedy_decompose(SequenceSpec::lucas(), &big(6)).indices(),
            &[0, 3]
        );
    }

    #[test]
    fn greedy_first_pick_is_largest_term() {
        for spec in [k(2), k(3), SequenceSpec::lucas()] {
            for x in 1..500u64 {
                let x = big(x);
                assert_eq!(
                    greedy_trace(spec, &x).first().copied(),
                    spec.largest_index_leq(&x)
                );
            }
        }
    }

    #[test]
    fn greedy_on_big_integer() {
        let x = BigUint::parse_bytes(b"123456789012345678901234567890123456789", 10).unwrap();
        for spec in [k(2), k(5), SequenceSpec::lucas()] {
            let r = greedy_decompose(spec, &x);
            assert_eq!(r.value(), x);
            assert!(r.is_canonical());
        }
    }

    #[test]
    fn bits_examples() {
        assert_eq!(
            coefficient_bits(&rep(k(2), &[0, 2]), 3)
                .unwrap()
                .to_string(),
            "101"
        );
        assert!(coefficient_bits(&Representation::zero(k(2)), 0)
            .unwrap()
            .is_empty());
        assert_eq!(
            coefficient_bits(&rep(SequenceSpec::lucas(), &[1, 5]), 6)
                .unwrap()
                .to_string(),
            "010001"
        );
        assert_eq!(
            coefficient_bits(&rep(k(2), &[0, 2]), 2),
            Err(Error::LengthTooSmall {
                length: 2,
                max_index: 2
            })
        );
    }

    #[test]
    fn terms_listed_largest_first() {
        let r = greedy_decompose(k(2), &big(100));
        assert_eq!(r.terms(), vec![big(89), big(8), big(3)]);
        assert_eq!(r.to_string(), "[2, 4, 9]");
    }
}
