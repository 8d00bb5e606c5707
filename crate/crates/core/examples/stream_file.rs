//! Write a list of integers to an encoded stream file and read it back.
//!
//! cargo run --example stream_file -- 3

use num_bigint::BigUint;
use zeckendorf::codec::{StreamHeader, HEADER_LEN};
use zeckendorf::{decode_stream, encode_stream};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: u8 = std::env::args().nth(1).map_or(Ok(2), |a| a.parse())?;
    let values: Vec<BigUint> = (0u64..200).map(|i| BigUint::from(i * i * i)).collect();

    let path = std::env::temp_dir().join(format!("zeckendorf-example-k{k}.zkc"));
    std::fs::write(&path, encode_stream(k, &values)?)?;

    let data = std::fs::read(&path)?;
    let header = StreamHeader::parse(&data)?;
    let (order, back) = decode_stream(&data)?;
    assert_eq!(order, k);
    assert_eq!(back, values);

    println!(
        "{}: order {}, {} values",
        path.display(),
        header.order,
        header.count
    );
    println!(
        "{} payload bytes ({:.2} bits per value)",
        data.len() - HEADER_LEN,
        8.0 * (data.len() - HEADER_LEN) as f64 / values.len() as f64
    );
    std::fs::remove_file(&path)?;
    Ok(())
}
