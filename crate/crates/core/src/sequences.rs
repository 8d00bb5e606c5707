//! Term generation for the three sequence families.
//!
//! * k-bonacci of order `k`: `g_i = 2^i` for `i < k`, then each term is the
//!   sum of the `k` preceding ones. Order 2 is the Fibonacci sequence
//!   `1, 2, 3, 5, 8, ...` (distinct values, no repeated 1).
//! * Lucas: `2, 1, 3, 4, 7, 11, ...`.
//!
//! Tables are grown on demand and cached process-wide, one per
//! [`SequenceSpec`]. All values are arbitrary precision.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// The numeral system a sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    KBonacci { order: usize },
    Lucas,
}

/// Identifies one sequence: k-bonacci of some order `k >= 2`, or Lucas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    system: System,
}

impl SequenceSpec {
    pub fn kbonacci(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self {
            system: System::KBonacci { order },
        })
    }

    /// Fibonacci, i.e. k-bonacci of order 2.
    pub const fn fibonacci() -> Self {
        Self {
            system: System::KBonacci { order: 2 },
        }
    }

    pub const fn lucas() -> Self {
        Self {
            system: System::Lucas,
        }
    }

    pub fn system(&self) -> System {
        self.system
    }

    /// The k-bonacci order, or `None` for Lucas.
    pub fn order(&self) -> Option<usize> {
        match self.system {
            System::KBonacci { order } => Some(order),
            System::Lucas => None,
        }
    }

    pub fn is_lucas(&self) -> bool {
        matches!(self.system, System::Lucas)
    }

    /// The `i`-th term, indexed from 0.
    pub fn term(&self, i: usize) -> BigUint {
        with_table(*self, Need::Len(i + 1), |t| t.terms[i].clone())
    }

    /// The first `count` terms.
    pub fn first_terms(&self, count: usize) -> Vec<BigUint> {
        with_table(*self, Need::Len(count), |t| t.terms[..count].to_vec())
    }

    /// Every `(index, term)` with `term <= bound`, ascending by index.
    pub fn terms_upto(&self, bound: &BigUint) -> Vec<(usize, BigUint)> {
        with_table(*self, Need::Past(bound), |t| {
            t.terms
                .iter()
                .enumerate()
                .filter(|(_, v)| *v <= bound)
                .map(|(i, v)| (i, v.clone()))
                .collect()
        })
    }

    /// Index of the largest term not exceeding `x`; ties resolve to the
    /// larger index. `None` when every term exceeds `x`.
    pub fn largest_index_leq(&self, x: &BigUint) -> Option<usize> {
        with_table(*self, Need::Past(x), |t| t.largest_index_leq(x))
    }

    /// Runs `f` against the cached table, grown until its last term exceeds `bound`.
    pub(crate) fn with_table_past<R>(
        &self,
        bound: &BigUint,
        f: impl FnOnce(&SequenceTable) -> R,
    ) -> R {
        with_table(*self, Need::Past(bound), f)
    }

    pub(crate) fn with_table_len<R>(&self, len: usize, f: impl FnOnce(&SequenceTable) -> R) -> R {
        with_table(*self, Need::Len(len), f)
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.system {
            System::KBonacci { order: 2 } => write!(f, "Fibonacci"),
            System::KBonacci { order } => write!(f, "KBonacci({order})"),
            System::Lucas => write!(f, "Lucas"),
        }
    }
}

/// A growable prefix of one sequence.
#[derive(Debug, Clone)]
pub struct SequenceTable {
    spec: SequenceSpec,
    terms: Vec<BigUint>,
}

impl SequenceTable {
    pub fn new(spec: SequenceSpec) -> Self {
        let terms = match spec.system {
            System::KBonacci { order } => (0..order).map(|i| BigUint::one() << i).collect(),
            System::Lucas => vec![BigUint::from(2u32), BigUint::one()],
        };
        Self { spec, terms }
    }

    pub fn spec(&self) -> SequenceSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn get(&self, i: usize) -> Option<&BigUint> {
        self.terms.get(i)
    }

    fn window(&self) -> usize {
        self.spec.order().unwrap_or(2)
    }

    fn push_next(&mut self) {
        let n = self.terms.len();
        let next: BigUint = self.terms[n - self.window()..].iter().sum();
        self.terms.push(next);
    }

    pub fn extend_to(&mut self, len: usize) {
        while self.terms.len() < len {
            self.push_next();
        }
    }

    /// Grows the table until its last term is strictly greater than `bound`.
    /// Every term past the seed is larger than all earlier ones, so no
    /// later index can hold a term `<= bound`.
    pub fn extend_past(&mut self, bound: &BigUint) {
        while self.terms.last().is_some_and(|last| last <= bound) {
            self.push_next();
        }
    }

    fn covers(&self, need: &Need<'_>) -> bool {
        match need {
            Need::Len(len) => self.terms.len() >= *len,
            Need::Past(bound) => self.terms.last().is_some_and(|last| last > *bound),
        }
    }

    /// Requires the table to extend past `x`.
    pub fn largest_index_leq(&self, x: &BigUint) -> Option<usize> {
        debug_assert!(self.covers(&Need::Past(x)));
        match self.spec.system {
            System::KBonacci { .. } => self.terms.partition_point(|t| t <= x).checked_sub(1),
            System::Lucas => {
                // Monotone from index 1; index 0 (value 2) is checked separately.
                let tail = self.terms[1..].partition_point(|t| t <= x);
                let tail_best = (tail > 0).then_some(tail);
                let head_fits = self.terms[0] <= *x;
                match tail_best {
                    Some(i) if !head_fits || self.terms[i] >= self.terms[0] => Some(i),
                    _ if head_fits => Some(0),
                    _ => None,
                }
            }
        }
    }
}

enum Need<'a> {
    Len(usize),
    Past(&'a BigUint),
}

static TABLES: LazyLock<RwLock<HashMap<SequenceSpec, SequenceTable>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn with_table<R>(spec: SequenceSpec, need: Need<'_>, f: impl FnOnce(&SequenceTable) -> R) -> R {
    {
        let tables = TABLES.read().unwrap_or_else(|e| e.into_inner());
        if let Some(table) = tables.get(&spec) {
            if table.covers(&need) {
                return f(table);
            }
        }
    }
    let mut tables = TABLES.write().unwrap_or_else(|e| e.into_inner());
    let table = tables
        .entry(spec)
        .or_insert_with(|| SequenceTable::new(spec));
    match need {
        Need::Len(len) => table.extend_to(len),
        Need::Past(bound) => table.extend_past(bound),
    }
    f(table)
}
