//! Lucas numbers are complete but not unique: list every way to write a
//! few integers as sums of distinct Lucas numbers, and show which one is
//! canonical.

use num_bigint::BigUint;
use zeckendorf::oracle::enumerate_representations;
use zeckendorf::{greedy_decompose, SequenceSpec};

fn main() {
    let lucas = SequenceSpec::lucas();
    for x in [4u32, 5, 12, 29] {
        let x = BigUint::from(x);
        let greedy = greedy_decompose(lucas, &x);
        println!("{x}: greedy {greedy}");
        for rep in
            enumerate_representations(lucas, &x, 10, false).expect("bound within oracle limit")
        {
            let violations: Vec<String> = rep.validate().iter().map(ToString::to_string).collect();
            let verdict = if violations.is_empty() {
                "canonical".to_string()
            } else {
                violations.join(", ")
            };
            println!("  {:<14} {verdict}", rep.to_string());
        }
    }
}
