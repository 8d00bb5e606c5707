//! Canonical decompositions of the same integers in each numeral system.
//!
//! cargo run --example decompose -- 100 12345678901234567890

use num_bigint::BigUint;
use zeckendorf::{greedy_decompose, SequenceSpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec!["4".to_string(), "100".to_string(), "1000".to_string()]
    } else {
        args
    };

    let systems = [
        SequenceSpec::fibonacci(),
        SequenceSpec::kbonacci(3).unwrap(),
        SequenceSpec::kbonacci(5).unwrap(),
        SequenceSpec::lucas(),
    ];
    for raw in inputs {
        let Some(x) = BigUint::parse_bytes(raw.as_bytes(), 10) else {
            eprintln!("skipping {raw:?}: not a nonnegative integer");
            continue;
        };
        println!("{x}");
        for spec in systems {
            let rep = greedy_decompose(spec, &x);
            let terms: Vec<String> = rep.terms().iter().map(ToString::to_string).collect();
            println!(
                "  {:<12} indices {:<24} = {}",
                spec.to_string(),
                rep.to_string(),
                terms.join(" + ")
            );
        }
    }
}
