//! Zeckendorf-style numeral systems.
//!
//! Every natural number has exactly one canonical representation as a sum of
//! distinct terms of
//!
//! * the Fibonacci sequence `1, 2, 3, 5, 8, ...` with no two consecutive
//!   indices,
//! * the k-bonacci sequence seeded with `1, 2, 4, ..., 2^(k-1)` with no `k`
//!   consecutive indices,
//! * the Lucas sequence `2, 1, 3, 4, 7, ...` with no two consecutive indices
//!   and never both index 0 and index 2.
//!
//! The crate computes these representations greedily ([`numeral`]), checks
//! them against brute-force enumeration ([`oracle`], [`verify`]), and builds
//! a self-delimiting integer code on top of the k-bonacci forms ([`codec`]).
//!
//! ```
//! use num_bigint::BigUint;
//! use zeckendorf::{greedy_decompose, SequenceSpec};
//!
//! let rep = greedy_decompose(SequenceSpec::fibonacci(), &BigUint::from(100u32));
//! assert_eq!(rep.indices(), &[2, 4, 9]); // 3 + 8 + 89
//! assert!(rep.is_canonical());
//! ```

pub mod bits;
pub mod cli;
pub mod codec;
pub mod error;
pub mod numeral;
pub mod oracle;
pub mod sequences;
pub mod verify;

pub use bits::BitString;
pub use codec::{decode_integer, decode_stream, encode_integer, encode_stream, StreamHeader};
pub use error::{Error, Result};
pub use numeral::{
    canonical_rule, coefficient_bits, greedy_decompose, validate, value_of, CanonicalRule,
    ConstraintViolation, Representation,
};
pub use oracle::{count_representations, enumerate_representations, IndexBound};
pub use sequences::{SequenceSpec, SequenceTable, System};
