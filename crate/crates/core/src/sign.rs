use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Maximum number of hyperplanes supported by the bitmask encoding.
pub const MAX_N: usize = 32;

/// A sign vector in {+,-}^n, stored as a bitmask (bit i set means position i is `+`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    n: u8,
    bits: u32,
}

impl SignVector {
    pub fn new(n: usize, bits: u32) -> Self {
        assert!(n <= MAX_N);
        let mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        SignVector { n: n as u8, bits: bits & mask }
    }

    pub fn from_signs(signs: &[bool]) -> Self {
        let bits = signs.iter().enumerate().fold(0u32, |acc, (i, &p)| acc | ((p as u32) << i));
        SignVector::new(signs.len(), bits)
    }

    pub fn all(n: usize) -> impl Iterator<Item = SignVector> {
        (0..(1u64 << n)).map(move |b| SignVector::new(n, b as u32))
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_plus(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// +1 or -1 at position `i`.
    pub fn sign(&self, i: usize) -> i64 {
        if self.is_plus(i) {
            1
        } else {
            -1
        }
    }

    /// Flips position `i`.
    pub fn flip(&self, i: usize) -> Self {
        SignVector::new(self.len(), self.bits ^ (1 << i))
    }

    /// Positions where the two sign vectors differ.
    pub fn differ(&self, other: &SignVector) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_plus(i) != other.is_plus(i)).collect()
    }

    pub fn distance(&self, other: &SignVector) -> usize {
        (self.bits ^ other.bits).count_ones() as usize
    }

    /// Agreement on every position in `positions`.
    pub fn agrees_on(&self, other: &SignVector, positions: &[usize]) -> bool {
        positions.iter().all(|&i| self.is_plus(i) == other.is_plus(i))
    }

    pub fn to_compact(&self) -> String {
        (0..self.len()).map(|i| if self.is_plus(i) { '+' } else { '-' }).collect()
    }
}

impl Ord for SignVector {
    /// Lexicographic from position 0, with `-` before `+`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for i in 0..self.len() {
                match (self.is_plus(i), other.is_plus(i)) {
                    (false, true) => return Ordering::Less,
                    (true, false) => return Ordering::Greater,
                    _ => {}
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", (0..self.len()).map(|i| if self.is_plus(i) { "+" } else { "-" }).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact())
    }
}

impl FromStr for SignVector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs: Result<Vec<bool>, String> = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ',' | ' '))
            .map(|c| match c {
                '+' => Ok(true),
                '-' | '\u{2212}' => Ok(false),
                other => Err(format!("bad sign character {other:?} in {s:?}")),
            })
            .collect();
        let signs = signs?;
        if signs.len() > MAX_N {
            return Err(format!("sign vector {s:?} too long"));
        }
        Ok(SignVector::from_signs(&signs))
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_compact())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The vector theta(alpha, beta, gamma): position i is 1 iff alpha_i == gamma_i != beta_i.
pub fn theta(alpha: &SignVector, beta: &SignVector, gamma: &SignVector) -> Vec<u8> {
    assert!(alpha.len() == beta.len() && beta.len() == gamma.len());
    (0..alpha.len())
        .map(|i| {
            let a = alpha.is_plus(i);
            (a == gamma.is_plus(i) && a != beta.is_plus(i)) as u8
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn parse_display_roundtrip() {
        let a = sv("(-,+,+)");
        assert_eq!(a.to_string(), "(-,+,+)");
        assert_eq!(a.to_compact(), "-++");
        assert_eq!(sv("-++"), a);
        assert!(!a.is_plus(0) && a.is_plus(1));
        assert_eq!(a.flip(0), sv("+++"));
    }

    #[test]
    fn lexicographic_order_minus_first() {
        let mut v: Vec<SignVector> = SignVector::all(2).collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_compact()).collect();
        assert_eq!(s, vec!["--", "-+", "+-", "++"]);
    }

    #[test]
    fn theta_examples() {
        let a = sv("+++");
        assert_eq!(theta(&a, &a, &a), vec![0, 0, 0]);
        assert_eq!(theta(&sv("++"), &sv("+-"), &sv("++")), vec![0, 1]);
        assert_eq!(theta(&sv("---"), &sv("+++"), &sv("---")), vec![1, 1, 1]);
        assert_eq!(theta(&sv("-+"), &sv("++"), &sv("-+")), vec![1, 0]);
    }
}
