use std::fmt;
use std::str::FromStr;

/// An ordered sequence of bits. Position 0 is emitted and consumed first.
///
/// Byte packing is a separate concern: see [`BitString::to_bytes_lsb_first`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        self.bits[i] = bit;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn starts_with(&self, prefix: &BitString) -> bool {
        self.bits.starts_with(&prefix.bits)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Packs bits into bytes, bit position 0 in the least significant bit
    /// of the first byte. The last byte is zero-padded.
    pub fn to_bytes_lsb_first(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, _) in self.bits.iter().enumerate().filter(|(_, b)| **b) {
            out[i / 8] |= 1 << (i % 8);
        }
        out
    }

    /// Inverse of [`to_bytes_lsb_first`](Self::to_bytes_lsb_first); every
    /// bit of `bytes` is kept, padding included.
    pub fn from_bytes_lsb_first(bytes: &[u8]) -> Self {
        let bits = bytes
            .iter()
            .flat_map(|byte| (0..8).map(move |i| byte >> i & 1 == 1))
            .collect();
        Self { bits }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit character {0:?}")]
pub struct ParseBitsError(char);

/// Parses `0`/`1` characters; spaces and underscores are ignored.
impl FromStr for BitString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !matches!(c, ' ' | '_'))
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ParseBitsError(other)),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let b: BitString = "0001 0111".parse().unwrap();
        assert_eq!(b.len(), 8);
        assert_eq!(b.to_string(), "00010111");
        assert!("012".parse::<BitString>().is_err());
        assert_eq!("".parse::<BitString>().unwrap(), BitString::new());
    }

    #[test]
    fn lsb_first_packing() {
        let b: BitString = "11".parse().unwrap();
        assert_eq!(b.to_bytes_lsb_first(), vec![0x03]);
        let b: BitString = "1000 0000 1".parse().unwrap();
        assert_eq!(b.to_bytes_lsb_first(), vec![0x01, 0x01]);
        assert!(BitString::new().to_bytes_lsb_first().is_empty());
    }

    #[test]
    fn unpack_keeps_padding() {
        let b = BitString::from_bytes_lsb_first(&[0x03]);
        assert_eq!(b.to_string(), "11000000");
    }

    #[test]
    fn prefix() {
        let a: BitString = "011".parse().unwrap();
        let b: BitString = "0110".parse().unwrap();
        assert!(b.starts_with(&a));
        assert!(!a.starts_with(&b));
    }
}
