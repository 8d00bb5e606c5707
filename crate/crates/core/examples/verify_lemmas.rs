//! Runs the identity sweeps and a reduced uniqueness sweep, printing one
//! line per claim.

use zeckendorf::verify::{self, VerifyOptions};

fn main() {
    let opts = VerifyOptions {
        unique_max: 2000,
        enum_max: 2000,
        greedy_max: 5000,
        ..VerifyOptions::default()
    };
    let report = verify::lemmas(&opts);
    println!("{report}\n");
    let report = verify::uniqueness(&opts);
    println!("{report}");
    if !report.all_passed() {
        std::process::exit(1);
    }
}
