//! Codewords of the self-delimiting order-k codes next to their lengths.

use num_bigint::BigUint;
use zeckendorf::{decode_integer, encode_integer};

fn main() {
    println!("{:>5}  {:<16} {:<16} {:<16}", "n", "k=2", "k=3", "k=4");
    for n in (1u64..=16).chain([100, 1000, 1_000_000]) {
        let n = BigUint::from(n);
        let words: Vec<String> = (2..=4)
            .map(|k| {
                let w = encode_integer(k, &n).unwrap();
                assert_eq!(decode_integer(k, &w, 0).unwrap().0, n);
                w.to_string()
            })
            .collect();
        println!("{n:>5}  {:<16} {:<16} {:<16}", words[0], words[1], words[2]);
    }
}
