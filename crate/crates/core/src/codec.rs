//! Self-delimiting integer codes over canonical k-bonacci representations.
//!
//! A codeword for `n >= 1` is the coefficient bits of the canonical order-`k`
//! representation of `n`, lowest index first and ending at the highest set
//! index, followed by a terminator:
//!
//! * `k = 2`: a single `1`, so the codeword ends in `11` (the classic
//!   Fibonacci code).
//! * `k >= 3`: a `0` followed by `k` ones.
//!
//! A canonical payload never holds `k` consecutive ones, so the first such
//! run marks the end of the codeword.
//!
//! # Stream format
//!
//! ```text
//! offset  size  field
//! 0       4     magic "ZKC1"
//! 4       1     version (0x01)
//! 5       1     order k (2..=255)
//! 6       8     count, u64 little-endian
//! 14      ..    codewords of v + 1 for each value v, concatenated
//! ```
//!
//! Payload bits are packed LSB-first: stream bit 0 is the least significant
//! bit of byte 14. The final byte is zero-padded.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::numeral::{greedy_decompose, Representation};
use crate::sequences::SequenceSpec;

pub const MAGIC: [u8; 4] = *b"ZKC1";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 14;

/// Fixed-size header at the start of every encoded stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub order: u8,
    pub count: u64,
}

impl StreamHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.order;
        out[6..].copy_from_slice(&self.count.to_le_bytes());
        out
    }

    pub fn parse(data: &[u8]) -> Result<Self> {
        if data.len() < MAGIC.len() || data[..4] != MAGIC {
            return Err(Error::UnsupportedFormat("bad magic".into()));
        }
        match data.get(4) {
            None => return Err(Error::CorruptStream("truncated header".into())),
            Some(&VERSION) => {}
            Some(v) => return Err(Error::UnsupportedFormat(format!("version {v:#04x}"))),
        }
        if data.len() < HEADER_LEN {
            return Err(Error::CorruptStream("truncated header".into()));
        }
        let order = data[5];
        if order < 2 {
            return Err(Error::UnsupportedFormat(format!("order {order}")));
        }
        let count = u64::from_le_bytes(data[6..HEADER_LEN].try_into().expect("8 bytes"));
        Ok(Self { order, count })
    }
}

/// Codeword for `n >= 1` under order `k`.
pub fn encode_integer(k: usize, n: &BigUint) -> Result<BitString> {
    let mut out = BitString::new();
    encode_integer_into(k, n, &mut out)?;
    Ok(out)
}

/// Appends the codeword for `n` to `out`.
pub fn encode_integer_into(k: usize, n: &BigUint, out: &mut BitString) -> Result<()> {
    let spec = SequenceSpec::kbonacci(k)?;
    if n.is_zero() {
        return Err(Error::ZeroNotEncodable);
    }
    let rep = greedy_decompose(spec, n);
    let top = rep
        .max_index()
        .expect("n >= 1 has a nonempty representation");
    out.extend_from(&rep.coefficient_bits(top + 1)?);
    if k == 2 {
        out.push(true);
    } else {
        out.push(false);
        for _ in 0..k {
            out.push(true);
        }
    }
    Ok(())
}

/// Reads one codeword starting at bit `start`. Returns the value and the
/// position just past the terminator.
pub fn decode_integer(k: usize, bits: &BitString, start: usize) -> Result<(BigUint, usize)> {
    let spec = SequenceSpec::kbonacci(k)?;
    let bits = bits.as_slice();
    let mut run = 0;
    let mut end = None;
    for (pos, &bit) in bits.iter().enumerate().skip(start) {
        run = if bit { run + 1 } else { 0 };
        if run == k {
            end = Some(pos);
            break;
        }
    }
    let last = end.ok_or(Error::TruncatedCodeword)?;
    let payload = if k == 2 {
        &bits[start..last]
    } else {
        // the run occupies last-k+1..=last, preceded by the 0 separator
        let separator = (last + 1).checked_sub(k + 1).filter(|&s| s >= start);
        let Some(separator) = separator else {
            return Err(Error::InvalidCodeword(
                "missing separator before terminator".into(),
            ));
        };
        &bits[start..separator]
    };
    if payload.last() != Some(&true) {
        return Err(Error::InvalidCodeword(
            "payload must end with a set bit".into(),
        ));
    }
    let indices: Vec<usize> = payload
        .iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| i)
        .collect();
    let rep = Representation::new(spec, indices)?;
    if !rep.is_canonical() {
        return Err(Error::InvalidCodeword("payload is not canonical".into()));
    }
    Ok((rep.value(), last + 1))
}

/// Header plus the codewords of `v + 1` for each value, packed LSB-first.
pub fn encode_stream(k: u8, values: &[BigUint]) -> Result<Vec<u8>> {
    if k < 2 {
        return Err(Error::InvalidOrder(k.into()));
    }
    let mut bits = BitString::new();
    for v in values {
        encode_integer_into(k.into(), &(v + 1u32), &mut bits)?;
    }
    let header = StreamHeader {
        order: k,
        count: values.len() as u64,
    };
    let mut out = header.to_bytes().to_vec();
    out.extend(bits.to_bytes_lsb_first());
    Ok(out)
}

/// Inverse of [`encode_stream`]: the order and the decoded values.
pub fn decode_stream(data: &[u8]) -> Result<(u8, Vec<BigUint>)> {
    let header = StreamHeader::parse(data)?;
    let bits = BitString::from_bytes_lsb_first(&data[HEADER_LEN..]);
    let mut values = Vec::new();
    let mut pos = 0;
    for i in 0..header.count {
        let (n, next) = decode_integer(header.order.into(), &bits, pos).map_err(|e| match e {
            Error::TruncatedCodeword => Error::CorruptStream(format!("codeword {i} truncated")),
            other => Error::CorruptStream(format!("codeword {i}: {other}")),
        })?;
        values.push(n - BigUint::one());
        pos = next;
    }
    let rest = &bits.as_slice()[pos..];
    if rest.len() >= 8 {
        return Err(Error::CorruptStream(
            "trailing bytes after last codeword".into(),
        ));
    }
    if rest.iter().any(|b| *b) {
        return Err(Error::CorruptStream("nonzero padding".into()));
    }
    Ok((header.order, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_integer(2, &big(1)).unwrap(), bits("11"));
        assert_eq!(encode_integer(2, &big(4)).unwrap(), bits("1011"));
        assert_eq!(encode_integer(3, &big(7)).unwrap(), bits("0001 0111"));
        assert_eq!(encode_integer(2, &big(100)).unwrap(), bits("00101000011"));
        assert_eq!(encode_integer(2, &big(0)), Err(Error::ZeroNotEncodable));
        assert_eq!(encode_integer(1, &big(3)), Err(Error::InvalidOrder(1)));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_integer(2, &bits("1011"), 0).unwrap(), (big(4), 4));
        assert_eq!(
            decode_integer(3, &bits("00010111"), 0).unwrap(),
            (big(7), 8)
        );
        assert_eq!(decode_integer(2, &bits("11"), 0).unwrap(), (big(1), 2));
        // starts mid-stream
        assert_eq!(decode_integer(2, &bits("11 1011"), 2).unwrap(), (big(4), 6));
    }

    #[test]
    fn decode_errors() {
        assert_eq!(
            decode_integer(2, &bits("0101"), 0),
            Err(Error::TruncatedCodeword)
        );
        assert_eq!(
            decode_integer(2, &bits(""), 0),
            Err(Error::TruncatedCodeword)
        );
        // k >= 3 without a separator in range
        assert!(matches!(
            decode_integer(3, &bits("111"), 0),
            Err(Error::InvalidCodeword(_))
        ));
        // payload ending in zero never comes out of the encoder
        assert!(matches!(
            decode_integer(3, &bits("10 0 0111"), 0),
            Err(Error::InvalidCodeword(_))
        ));
    }

    #[test]
    fn short_table_k2() {
        let table: Vec<String> = (1..=7)
            .map(|n| encode_integer(2, &big(n)).unwrap().to_string())
            .collect();
        assert_eq!(
            table,
            ["11", "011", "0011", "1011", "00011", "10011", "01011"]
        );
    }

    #[test]
    fn header_roundtrip_and_layout() {
        let h = StreamHeader {
            order: 5,
            count: 0x0102,
        };
        let b = h.to_bytes();
        assert_eq!(&b[..6], b"ZKC1\x01\x05");
        assert_eq!(&b[6..], &[0x02, 0x01, 0, 0, 0, 0, 0, 0]);
        assert_eq!(StreamHeader::parse(&b).unwrap(), h);
    }

    #[test]
    fn stream_examples() {
        let empty = encode_stream(2, &[]).unwrap();
        assert_eq!(empty.len(), HEADER_LEN);
        assert_eq!(decode_stream(&empty).unwrap(), (2, vec![]));

        let zero = encode_stream(2, &[big(0)]).unwrap();
        assert_eq!(&zero[HEADER_LEN..], &[0x03]);

        let two = encode_stream(2, &[big(3), big(5)]).unwrap();
        // 4 -> 1011, 6 -> 10011 packed LSB-first: 1011 1001 | 1
        assert_eq!(&two[HEADER_LEN..], &[0b1001_1101, 0b0000_0001]);
        assert_eq!(decode_stream(&two).unwrap(), (2, vec![big(3), big(5)]));

        let vals: Vec<BigUint> = [0u64, 1, 2, 100_000].iter().map(|&v| big(v)).collect();
        assert_eq!(
            decode_stream(&encode_stream(2, &vals).unwrap()).unwrap(),
            (2, vals)
        );

        let vals: Vec<BigUint> = (1..=1000u64).map(big).collect();
        assert_eq!(
            decode_stream(&encode_stream(5, &vals).unwrap()).unwrap(),
            (5, vals)
        );
    }

    #[test]
    fn stream_errors() {
        let good = encode_stream(3, &[big(10), big(20)]).unwrap();

        let mut bad_magic = good.clone();
        bad_magic[0] = b'X';
        assert!(matches!(
            decode_stream(&bad_magic),
            Err(Error::UnsupportedFormat(_))
        ));

        let mut bad_version = good.clone();
        bad_version[4] = 2;
        assert!(matches!(
            decode_stream(&bad_version),
            Err(Error::UnsupportedFormat(_))
        ));

        let mut bad_order = good.clone();
        bad_order[5] = 1;
        assert!(matches!(
            decode_stream(&bad_order),
            Err(Error::UnsupportedFormat(_))
        ));

        assert!(matches!(
            decode_stream(&good[..10]),
            Err(Error::CorruptStream(_))
        ));
        assert!(matches!(
            decode_stream(&good[..good.len() - 1]),
            Err(Error::CorruptStream(_))
        ));

        let mut extra = good.clone();
        extra.push(0);
        assert!(matches!(
            decode_stream(&extra),
            Err(Error::CorruptStream(_))
        ));

        let mut more = good.clone();
        more[6] = 3;
        assert!(matches!(decode_stream(&more), Err(Error::CorruptStream(_))));

        assert!(matches!(encode_stream(1, &[]), Err(Error::InvalidOrder(1))));
    }

    #[test]
    fn nonzero_padding_rejected() {
        let mut data = encode_stream(2, &[big(0)]).unwrap();
        *data.last_mut().unwrap() |= 0x80;
        assert!(matches!(decode_stream(&data), Err(Error::CorruptStream(_))));
    }
}
