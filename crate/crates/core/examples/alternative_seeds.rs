//! Only the powers-of-two seed gives every integer exactly one canonical
//! form. Any other strictly increasing seed breaks either existence or
//! uniqueness early on.

use num_bigint::BigUint;
use zeckendorf::oracle::counterexample_search;

fn main() {
    let seeds: [&[u64]; 8] = [
        &[1, 2],
        &[1, 3],
        &[2, 3],
        &[1, 4],
        &[1, 2, 4],
        &[1, 2, 3],
        &[1, 2, 5],
        &[1, 2, 4, 9],
    ];
    for seed in seeds {
        let initials: Vec<BigUint> = seed.iter().map(|&v| BigUint::from(v)).collect();
        match counterexample_search(seed.len(), &initials, 5000).unwrap() {
            None => println!("{seed:?}: every n in [1, 5000] has exactly one canonical form"),
            Some((n, count)) => println!("{seed:?}: n = {n} has {count} canonical forms"),
        }
    }
}
