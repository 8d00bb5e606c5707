//! First terms of each sequence family, and the growth ratio approaching
//! the dominant root of the recurrence.

use num_traits::ToPrimitive;
use zeckendorf::SequenceSpec;

fn main() {
    let mut specs: Vec<SequenceSpec> = (2..=6)
        .map(|k| SequenceSpec::kbonacci(k).unwrap())
        .collect();
    specs.push(SequenceSpec::lucas());
    for spec in specs {
        let terms = spec.first_terms(14);
        let shown: Vec<String> = terms.iter().map(ToString::to_string).collect();
        let far = spec.first_terms(201);
        let ratio = far[200].to_f64().unwrap() / far[199].to_f64().unwrap();
        println!(
            "{:<12} {}  ... ratio {ratio:.6}",
            spec.to_string(),
            shown.join(" ")
        );
    }
}
