//! Brute-force ground truth.
//!
//! Two independent ways of counting representations: exhaustive subset
//! enumeration (exponential, capped at [`ENUMERATION_LIMIT`] indices) and a
//! memoized take/skip recursion over descending indices that scales to large
//! targets. Plus exact checkers for the identities the numeral systems rest
//! on.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::{Add, Sub};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeral::{CanonicalRule, Representation};
use crate::sequences::SequenceSpec;

/// Largest index bound accepted by the exhaustive enumerators.
pub const ENUMERATION_LIMIT: usize = 25;

/// How many leading indices a counter may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexBound {
    /// Every index whose term does not exceed the target.
    Auto,
    Fixed(usize),
}

impl IndexBound {
    pub fn resolve(self, spec: SequenceSpec, x: &BigUint) -> usize {
        match self {
            Self::Fixed(n) => n,
            Self::Auto => spec.terms_upto(x).last().map_or(0, |(i, _)| i + 1),
        }
    }
}

fn small_terms(spec: SequenceSpec, index_bound: usize) -> Result<Vec<u64>> {
    if index_bound > ENUMERATION_LIMIT {
        return Err(Error::OracleBoundExceeded {
            requested: index_bound,
            limit: ENUMERATION_LIMIT,
        });
    }
    // k-bonacci terms are at most 2^i and Lucas terms are far smaller, so
    // 25 indices always fit.
    Ok(spec
        .first_terms(index_bound)
        .iter()
        .map(|t| t.to_u64().expect("term below index 25 fits in u64"))
        .collect())
}

/// All subsets of `{0, .., index_bound - 1}` whose terms sum to `x`, in
/// lexicographic order of their index lists. With `constrained`, only sets
/// satisfying the spec's canonical rule are kept.
pub fn enumerate_representations(
    spec: SequenceSpec,
    x: &BigUint,
    index_bound: usize,
    constrained: bool,
) -> Result<Vec<Representation>> {
    let terms = small_terms(spec, index_bound)?;
    let Some(target) = x.to_u64() else {
        return Ok(Vec::new());
    };
    let rule = CanonicalRule::for_spec(spec);

    fn walk(
        terms: &[u64],
        target: u64,
        start: usize,
        sum: u64,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if sum == target {
            out.push(prefix.clone());
        }
        for i in start..terms.len() {
            let next = sum + terms[i];
            if next <= target {
                prefix.push(i);
                walk(terms, target, i + 1, next, prefix, out);
                prefix.pop();
            }
        }
    }

    let mut found = Vec::new();
    walk(&terms, target, 0, 0, &mut Vec::new(), &mut found);
    found
        .into_iter()
        .filter(|idx| !constrained || rule.permits(idx))
        .map(|idx| Representation::new(spec, idx))
        .collect()
}

/// Number of representations of every `x` in `0..=max_x` using indices
/// below `index_bound`, by visiting all `2^index_bound` subsets once.
pub fn representation_census(
    spec: SequenceSpec,
    index_bound: usize,
    max_x: u64,
    constrained: bool,
) -> Result<Vec<u64>> {
    let terms = small_terms(spec, index_bound)?;
    let rule = CanonicalRule::for_spec(spec);
    let len = usize::try_from(max_x).expect("census bound fits in memory") + 1;
    let mut counts = vec![0u64; len];
    for mask in 0u32..1 << index_bound {
        if constrained && !mask_permitted(mask, rule) {
            continue;
        }
        let sum: u64 = (0..index_bound)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| terms[i])
            .sum();
        if sum <= max_x {
            counts[sum as usize] += 1;
        }
    }
    Ok(counts)
}

/// Bitmask form of the canonical rule, kept separate from
/// [`CanonicalRule::permits`] so the two can be checked against each other.
fn mask_permitted(mask: u32, rule: CanonicalRule) -> bool {
    if rule.forbids_zero_two() && mask & 0b101 == 0b101 {
        return false;
    }
    // A run of max_run + 1 set bits survives this many shifted ANDs.
    let mut run = mask;
    for shift in 1..=rule.max_run() {
        run &= mask >> shift;
    }
    run == 0
}

/// Number of representations of `x`, counted by take/skip recursion from the
/// highest usable index down. Constrained counting tracks the current run of
/// consecutive taken indices and, for Lucas, whether index 2 was taken.
pub fn count_representations(
    spec: SequenceSpec,
    x: &BigUint,
    index_bound: IndexBound,
    constrained: bool,
) -> BigUint {
    let bound = index_bound.resolve(spec, x);
    let terms = spec.first_terms(bound);
    let rule = constrained.then(|| CanonicalRule::for_spec(spec));
    count_with_terms(&terms, x, rule)
}

/// Representation count of `x` over an explicit term list, optionally under
/// a canonical rule. Terms must be positive.
pub fn count_with_terms(terms: &[BigUint], x: &BigUint, rule: Option<CanonicalRule>) -> BigUint {
    let narrow: Option<Vec<u128>> = terms.iter().map(|t| t.to_u128()).collect();
    match (narrow, x.to_u128()) {
        (Some(terms), Some(x)) => RunCounter::new(&terms, rule).count(terms.len(), x, 0, false),
        _ => RunCounter::new(terms, rule).count(terms.len(), x.clone(), 0, false),
    }
}

struct RunCounter<'a, T> {
    terms: &'a [T],
    // prefix[i] = terms[0] + .. + terms[i]
    prefix: Vec<T>,
    rule: Option<CanonicalRule>,
    memo: HashMap<(usize, T, usize, bool), BigUint>,
}

impl<'a, T> RunCounter<'a, T>
where
    T: Clone + Ord + Hash + Zero + for<'b> Add<&'b T, Output = T> + for<'b> Sub<&'b T, Output = T>,
{
    fn new(terms: &'a [T], rule: Option<CanonicalRule>) -> Self {
        let prefix = terms
            .iter()
            .scan(T::zero(), |acc, t| {
                *acc = acc.clone() + t;
                Some(acc.clone())
            })
            .collect();
        Self {
            terms,
            prefix,
            rule,
            memo: HashMap::new(),
        }
    }

    /// Ways to reach `rem` using indices `0..avail`. `run` is the number of
    /// consecutive taken indices directly above `avail - 1`.
    fn count(&mut self, avail: usize, rem: T, run: usize, took_two: bool) -> BigUint {
        if rem.is_zero() {
            return BigUint::one();
        }
        if avail == 0 || rem > self.prefix[avail - 1] {
            return BigUint::zero();
        }
        let key = (avail, rem.clone(), run, took_two);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let idx = avail - 1;
        let mut total = self.count(idx, rem.clone(), 0, took_two);
        let terms = self.terms;
        let term = &terms[idx];
        if *term <= rem {
            let allowed = match self.rule {
                None => true,
                Some(rule) => {
                    run < rule.max_run() && !(rule.forbids_zero_two() && idx == 0 && took_two)
                }
            };
            if allowed {
                let next_run = if self.rule.is_some() { run + 1 } else { 0 };
                let next_two = self.rule.is_some() && (took_two || idx == 2);
                total += self.count(idx, rem - term, next_run, next_two);
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Searches `1..=bound` for the first integer whose canonical representation
/// count over the order-`k` sequence seeded with `initials` is not exactly 1.
pub fn counterexample_search(
    k: usize,
    initials: &[BigUint],
    bound: u64,
) -> Result<Option<(u64, BigUint)>> {
    let rule = CanonicalRule::for_order(k)?;
    if initials.len() != k {
        return Err(Error::InvalidInitials(format!(
            "expected {k} initial terms, got {}",
            initials.len()
        )));
    }
    if initials.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInitials(
            "initial terms must be at least 1".into(),
        ));
    }
    if initials.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInitials(
            "initial terms must be strictly increasing".into(),
        ));
    }
    let terms = recurrence_terms(initials, &BigUint::from(bound));
    for n in 1..=bound {
        let count = count_with_terms(&terms, &BigUint::from(n), Some(rule));
        if !count.is_one() {
            return Ok(Some((n, count)));
        }
    }
    Ok(None)
}

/// Order-`initials.len()` recurrence seeded with `initials`, grown until the
/// last term exceeds `bound`.
pub fn recurrence_terms(initials: &[BigUint], bound: &BigUint) -> Vec<BigUint> {
    let k = initials.len();
    let mut terms = initials.to_vec();
    while terms.last().is_some_and(|t| t <= bound) {
        let next = terms[terms.len() - k..].iter().sum();
        terms.push(next);
    }
    terms
}

/// Two sides of an exact identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `L_n - 1 = L_{n-1} + L_{n-3} + ...`, ending with `2 L_1` for even `n`
/// and `L_2` for odd `n`.
pub fn check_lucas_minus_one(n: usize) -> Result<Identity> {
    if n < 2 {
        return Err(Error::IdentityDomain {
            requirement: "n >= 2".into(),
        });
    }
    let lucas = SequenceSpec::lucas();
    let l = lucas.first_terms(n + 1);
    let lhs = &l[n] - 1u32;
    // odd offsets n-1, n-3, .. down to 3 (n even) or 2 (n odd)
    let stop = if n.is_multiple_of(2) { 3 } else { 2 };
    let mut rhs: BigUint = (stop..n).rev().step_by(2).map(|i| &l[i]).sum();
    if n.is_multiple_of(2) {
        rhs += &l[1] * 2u32;
    }
    Ok(Identity { lhs, rhs })
}

/// `L_{n+2} = 1 + L_0 + L_1 + ... + L_n`.
pub fn check_lucas_cumulative(n: usize) -> Identity {
    let l = SequenceSpec::lucas().first_terms(n + 3);
    let rhs = BigUint::one() + l[..=n].iter().sum::<BigUint>();
    Identity {
        lhs: l[n + 2].clone(),
        rhs,
    }
}

/// `2^0 + 2^1 + ... + 2^k = 2^(k+1) - 1`.
pub fn check_power_sum(k: u32) -> Identity {
    let mut power = BigUint::one();
    let mut lhs = BigUint::zero();
    for _ in 0..=k {
        lhs += &power;
        power *= 2u32;
    }
    let rhs = (BigUint::one() << (k as usize + 1)) - 1u32;
    Identity { lhs, rhs }
}

/// The doubling identity `2 g_i = g_{i+1} + g_{i-k}` and the growth bound
/// `g_{i+1} < 2 g_i` for one `(k, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingCheck {
    pub identity: Identity,
    pub next: BigUint,
    pub twice: BigUint,
}

impl DoublingCheck {
    pub fn bound_holds(&self) -> bool {
        self.next < self.twice
    }

    pub fn holds(&self) -> bool {
        self.identity.holds() && self.bound_holds()
    }
}

pub fn check_doubling(k: usize, i: usize) -> Result<DoublingCheck> {
    let spec = SequenceSpec::kbonacci(k)?;
    if i < k {
        return Err(Error::IdentityDomain {
            requirement: format!("i >= k (got k={k}, i={i})"),
        });
    }
    let g = spec.first_terms(i + 2);
    let twice = &g[i] * 2u32;
    Ok(DoublingCheck {
        identity: Identity {
            lhs: twice.clone(),
            rhs: &g[i + 1] + &g[i - k],
        },
        next: g[i + 1].clone(),
        twice,
    })
}

/// Sum of `g_{i-j}` over `j` in `1..=i` with `j` not a multiple of `k`: the
/// largest canonical value using only indices below `i`.
pub fn max_fill(k: usize, i: usize) -> Result<BigUint> {
    let spec = SequenceSpec::kbonacci(k)?;
    if i < 1 {
        return Err(Error::IdentityDomain {
            requirement: "i >= 1".into(),
        });
    }
    let g = spec.first_terms(i);
    Ok((1..=i).filter(|j| j % k != 0).map(|j| &g[i - j]).sum())
}

/// `max_fill(k, i)` against `g_i - 1`.
pub fn check_max_fill(k: usize, i: usize) -> Result<Identity> {
    let lhs = max_fill(k, i)?;
    let rhs = SequenceSpec::kbonacci(k)?.term(i) - 1u32;
    Ok(Identity { lhs, rhs })
}

/// Largest value of any canonical order-`k` index set drawn from `0..i`,
/// found by visiting every subset.
pub fn max_canonical_sum_below(k: usize, i: usize) -> Result<BigUint> {
    let spec = SequenceSpec::kbonacci(k)?;
    let terms = small_terms(spec, i)?;
    let rule = CanonicalRule::for_spec(spec);
    let best = (0u32..1 << i)
        .filter(|&mask| mask_permitted(mask, rule))
        .map(|mask| {
            (0..i)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| terms[b])
                .sum::<u64>()
        })
        .max()
        .unwrap_or(0);
    Ok(BigUint::from(best))
}

/// Looks for a nonempty canonical order-`k` index set inside `0..index_bound`
/// whose value reaches the term just above its largest index.
pub fn find_sum_reaching_next_term(k: usize, index_bound: usize) -> Result<Option<Vec<usize>>> {
    let spec = SequenceSpec::kbonacci(k)?;
    let terms = small_terms(spec, index_bound)?;
    let next = spec.first_terms(index_bound + 1);
    let rule = CanonicalRule::for_spec(spec);
    for mask in 1u32..1 << index_bound {
        if !mask_permitted(mask, rule) {
            continue;
        }
        let top = 31 - mask.leading_zeros() as usize;
        let sum: u64 = (0..=top)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| terms[b])
            .sum();
        if BigUint::from(sum) >= next[top + 1] {
            return Ok(Some((0..=top).filter(|b| mask >> b & 1 == 1).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn lists(reps: &[Representation]) -> Vec<Vec<usize>> {
        reps.iter().map(|r| r.indices().to_vec()).collect()
    }

    fn k(order: usize) -> SequenceSpec {
        SequenceSpec::kbonacci(order).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let lucas = SequenceSpec::lucas();
        let four = enumerate_representations(lucas, &big(4), 5, false).unwrap();
        assert_eq!(lists(&four), vec![vec![1, 2], vec![3]]);
        let twelve = enumerate_representations(lucas, &big(12), 6, true).unwrap();
        assert_eq!(lists(&twelve), vec![vec![1, 5]]);
        let all_twelve = enumerate_representations(lucas, &big(12), 6, false).unwrap();
        assert!(lists(&all_twelve).contains(&vec![1, 3, 4]));
        assert!(lists(&all_twelve).contains(&vec![0, 2, 4]));
        let zero = enumerate_representations(k(2), &big(0), 10, true).unwrap();
        assert_eq!(lists(&zero), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn enumeration_limit() {
        assert_eq!(
            enumerate_representations(k(2), &big(1), 26, true),
            Err(Error::OracleBoundExceeded {
                requested: 26,
                limit: 25
            })
        );
        assert!(representation_census(k(2), 26, 10, true).is_err());
        assert!(enumerate_representations(k(2), &big(1), 25, true).is_ok());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let reps = enumerate_representations(k(2), &big(30), 10, false).unwrap();
        let l = lists(&reps);
        let mut sorted = l.clone();
        sorted.sort();
        assert_eq!(l, sorted);
        assert!(l.len() > 1);
    }

    #[test]
    fn count_examples() {
        let lucas = SequenceSpec::lucas();
        assert_eq!(
            count_representations(lucas, &big(4), IndexBound::Fixed(5), false),
            big(2)
        );
        assert_eq!(
            count_representations(lucas, &big(12), IndexBound::Auto, true),
            big(1)
        );
        for n in 0..=2000u64 {
            assert_eq!(
                count_representations(k(2), &big(n), IndexBound::Auto, true),
                big(1),
                "n={n}"
            );
            assert_eq!(
                count_representations(k(3), &big(n), IndexBound::Auto, true),
                big(1),
                "n={n}"
            );
        }
    }

    #[test]
    fn auto_bound_covers_every_usable_index() {
        let lucas = SequenceSpec::lucas();
        // largest term <= 2 sits at index 0, but index 1 (value 1) is also usable
        assert_eq!(IndexBound::Auto.resolve(lucas, &big(2)), 2);
        assert_eq!(IndexBound::Auto.resolve(k(2), &big(0)), 0);
        assert_eq!(IndexBound::Auto.resolve(k(2), &big(100)), 10);
    }

    #[test]
    fn counters_agree_on_small_range() {
        for spec in [k(2), k(3), SequenceSpec::lucas()] {
            for bound in [0, 3, 8, 12] {
                for constrained in [false, true] {
                    let census = representation_census(spec, bound, 400, constrained).unwrap();
                    for x in 0..=400u64 {
                        let enumerated =
                            enumerate_representations(spec, &big(x), bound, constrained).unwrap();
                        let dp = count_representations(
                            spec,
                            &big(x),
                            IndexBound::Fixed(bound),
                            constrained,
                        );
                        assert_eq!(
                            big(enumerated.len() as u64),
                            dp,
                            "{spec} x={x} B={bound} c={constrained}"
                        );
                        assert_eq!(census[x as usize], enumerated.len() as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn mask_rule_matches_list_rule() {
        for spec in [k(2), k(3), k(5), SequenceSpec::lucas()] {
            let rule = CanonicalRule::for_spec(spec);
            for mask in 0u32..1 << 11 {
                let idx: Vec<usize> = (0..11).filter(|i| mask >> i & 1 == 1).collect();
                assert_eq!(
                    mask_permitted(mask, rule),
                    rule.permits(&idx),
                    "{spec} {idx:?}"
                );
            }
        }
    }

    #[test]
    fn big_target_uses_wide_path() {
        let x = BigUint::one() << 200usize;
        assert_eq!(
            count_representations(k(2), &x, IndexBound::Auto, true),
            big(1)
        );
        assert_eq!(
            count_representations(SequenceSpec::lucas(), &x, IndexBound::Auto, true),
            big(1)
        );
    }

    #[test]
    fn lucas_minus_one_examples() {
        let two = check_lucas_minus_one(2).unwrap();
        assert_eq!((two.lhs.clone(), two.rhs.clone()), (big(2), big(2)));
        let three = check_lucas_minus_one(3).unwrap();
        assert_eq!((three.lhs.clone(), three.rhs.clone()), (big(3), big(3)));
        let six = check_lucas_minus_one(6).unwrap();
        assert_eq!((six.lhs.clone(), six.rhs.clone()), (big(17), big(17)));
        let five = check_lucas_minus_one(5).unwrap();
        assert_eq!(five.rhs, big(7 + 3));
        assert!(check_lucas_minus_one(1).is_err());
    }

    #[test]
    fn lucas_cumulative_examples() {
        assert_eq!(
            check_lucas_cumulative(0),
            Identity {
                lhs: big(3),
                rhs: big(3)
            }
        );
        assert_eq!(
            check_lucas_cumulative(3),
            Identity {
                lhs: big(11),
                rhs: big(11)
            }
        );
        assert!(check_lucas_cumulative(50).holds());
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(
            check_power_sum(0),
            Identity {
                lhs: big(1),
                rhs: big(1)
            }
        );
        assert_eq!(
            check_power_sum(3),
            Identity {
                lhs: big(15),
                rhs: big(15)
            }
        );
        let c = check_power_sum(64);
        assert!(c.holds());
        assert_eq!(c.lhs, (BigUint::one() << 65usize) - 1u32);
    }

    #[test]
    fn doubling_examples() {
        let c = check_doubling(2, 2).unwrap();
        assert_eq!(
            c.identity,
            Identity {
                lhs: big(6),
                rhs: big(6)
            }
        );
        assert_eq!((c.next.clone(), c.twice.clone()), (big(5), big(6)));
        assert!(c.holds());
        let c = check_doubling(3, 4).unwrap();
        assert_eq!(
            c.identity,
            Identity {
                lhs: big(26),
                rhs: big(26)
            }
        );
        assert!(check_doubling(2, 30).unwrap().holds());
        assert!(matches!(
            check_doubling(3, 2),
            Err(Error::IdentityDomain { .. })
        ));
        assert!(matches!(check_doubling(1, 5), Err(Error::InvalidOrder(1))));
    }

    #[test]
    fn max_fill_examples() {
        assert_eq!(max_fill(2, 4).unwrap(), big(7));
        assert_eq!(max_fill(3, 3).unwrap(), big(6));
        assert_eq!(max_fill(2, 1).unwrap(), big(1));
        assert!(max_fill(2, 0).is_err());
        assert!(check_max_fill(4, 20).unwrap().holds());
    }

    #[test]
    fn brute_max_matches_max_fill() {
        for order in 2..=4 {
            for i in 1..=12 {
                assert_eq!(
                    max_canonical_sum_below(order, i).unwrap(),
                    max_fill(order, i).unwrap()
                );
            }
        }
    }

    #[test]
    fn counterexample_examples() {
        let ones = |v: &[u64]| v.iter().map(|&x| big(x)).collect::<Vec<_>>();
        assert_eq!(
            counterexample_search(2, &ones(&[1, 2]), 2000).unwrap(),
            None
        );
        assert_eq!(
            counterexample_search(2, &ones(&[1, 3]), 100).unwrap(),
            Some((2, big(0)))
        );
        assert_eq!(
            counterexample_search(3, &ones(&[1, 2, 4]), 2000).unwrap(),
            None
        );
        assert_eq!(
            counterexample_search(3, &ones(&[1, 2, 3]), 100).unwrap(),
            Some((3, big(2)))
        );
        assert!(counterexample_search(2, &ones(&[2, 1]), 10).is_err());
        assert!(counterexample_search(2, &ones(&[0, 1]), 10).is_err());
        assert!(counterexample_search(3, &ones(&[1, 2]), 10).is_err());
    }

    #[test]
    fn recurrence_from_custom_seed() {
        let t = recurrence_terms(&[big(1), big(3)], &big(20));
        assert_eq!(
            t,
            vec![big(1), big(3), big(4), big(7), big(11), big(18), big(29)]
        );
    }

    #[test]
    fn fib_canonical_sums_stay_below_next_term() {
        assert_eq!(find_sum_reaching_next_term(2, 14).unwrap(), None);
        assert_eq!(find_sum_reaching_next_term(3, 12).unwrap(), None);
    }
}
