//! Strict and odd partitions.
//!
//! Strict partitions index the neutral-fermion basis and Schur Q-functions;
//! odd partitions index ramification profiles. Both enumerators list their
//! output in lexicographically decreasing order, and both include the empty
//! partition of weight 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::ring::{factorial, Rat};
use crate::{Error, Result};

/// Strictly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StrictPartition(Vec<u32>);

/// Weakly decreasing sequence of odd positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OddPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.contains(&0) {
            return Err(Error::Parse("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(
                "parts of a strict partition must be distinct".into(),
            ));
        }
        Ok(StrictPartition(parts))
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parts padded with a trailing 0 when the length is odd, so the result
    /// always has even length.
    pub fn padded_parts(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        if v.len() % 2 == 1 {
            v.push(0);
        }
        v
    }
}

impl OddPartition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.iter().any(|p| p % 2 == 0) {
            return Err(Error::Parse("parts of an odd partition must be odd".into()));
        }
        Ok(OddPartition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicities `(part, m_part)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad part {x:?} in {s:?}")))
        })
        .collect()
}

impl FromStr for StrictPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_parts(s)?)
    }
}

impl FromStr for OddPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_parts(s)?;
        if parts.contains(&0) {
            return Err(Error::Parse("parts must be positive".into()));
        }
        Self::new(parts)
    }
}

fn join(parts: &[u32]) -> String {
    parts
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl fmt::Display for OddPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// All strict partitions of `weight`, lexicographically decreasing.
pub fn strict_partitions(weight: u32) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    strict_rec(weight, weight, &mut cur, &mut out);
    out
}

fn strict_rec(rest: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
    if rest == 0 {
        out.push(StrictPartition(cur.clone()));
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        // The remaining parts are distinct and below `part`.
        if part * (part + 1) / 2 < rest {
            break;
        }
        cur.push(part);
        strict_rec(rest - part, part - 1, cur, out);
        cur.pop();
    }
}

/// All strict partitions with weight at most `max_weight`, by weight.
pub fn strict_partitions_up_to(max_weight: u32) -> Vec<StrictPartition> {
    (0..=max_weight).flat_map(strict_partitions).collect()
}

/// All partitions of `weight` into odd parts, lexicographically decreasing.
pub fn odd_partitions(weight: u32) -> Vec<OddPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let top = if weight % 2 == 1 {
        weight
    } else {
        weight.saturating_sub(1)
    };
    odd_rec(weight, top, &mut cur, &mut out);
    out
}

fn odd_rec(rest: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<OddPartition>) {
    if rest == 0 {
        out.push(OddPartition(cur.clone()));
        return;
    }
    let mut part = max_part.min(rest);
    if part.is_multiple_of(2) {
        part = part.saturating_sub(1);
    }
    while part >= 1 {
        cur.push(part);
        odd_rec(rest - part, part, cur, out);
        cur.pop();
        if part < 2 {
            break;
        }
        part -= 2;
    }
}

/// `z_μ = Π_j m_j! · j^{m_j}`.
pub fn sym_factor(mu: &OddPartition) -> Rat {
    let mut z = BigInt::from(1);
    for (part, m) in mu.multiplicities() {
        z *= factorial(m as u64) * num_traits::pow(BigInt::from(part), m as usize);
    }
    Rat::from_integer(z)
}

/// Genus from the Riemann–Hurwitz relation `b = (2g - 2 + l(μ) + |μ|) / r`,
/// when it is a nonnegative integer.
pub fn rh_genus(mu: &OddPartition, b: u32, r: u32) -> Option<u32> {
    let twice_g = (r as i64) * (b as i64) + 2 - mu.len() as i64 - mu.weight() as i64;
    if twice_g < 0 || twice_g % 2 != 0 {
        return None;
    }
    Some((twice_g / 2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn sp(v: &[u32]) -> StrictPartition {
        StrictPartition::new(v.to_vec()).unwrap()
    }

    fn op(v: &[u32]) -> OddPartition {
        OddPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn strict_small() {
        assert_eq!(strict_partitions(0), vec![StrictPartition::empty()]);
        assert_eq!(strict_partitions(3), vec![sp(&[3]), sp(&[2, 1])]);
        assert_eq!(strict_partitions(4), vec![sp(&[4]), sp(&[3, 1])]);
        assert_eq!(
            strict_partitions(6),
            vec![sp(&[6]), sp(&[5, 1]), sp(&[4, 2]), sp(&[3, 2, 1])]
        );
    }

    #[test]
    fn odd_small() {
        assert_eq!(odd_partitions(3), vec![op(&[3]), op(&[1, 1, 1])]);
        assert_eq!(odd_partitions(2), vec![op(&[1, 1])]);
        assert_eq!(odd_partitions(0), vec![op(&[])]);
        assert_eq!(
            odd_partitions(5),
            vec![op(&[5]), op(&[3, 1, 1]), op(&[1, 1, 1, 1, 1])]
        );
    }

    #[test]
    fn euler_identity() {
        for n in 0..=20 {
            assert_eq!(
                strict_partitions(n).len(),
                odd_partitions(n).len(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn odd_partition_parity() {
        for n in 0..=15 {
            for mu in odd_partitions(n) {
                assert_eq!((mu.weight() - mu.len() as u32) % 2, 0);
            }
        }
    }

    #[test]
    fn enumerations_are_decreasing_and_valid() {
        for n in 0..=12 {
            let s = strict_partitions(n);
            assert!(s.windows(2).all(|w| w[0] > w[1]));
            assert!(s.iter().all(|p| p.weight() == n));
            let o = odd_partitions(n);
            assert!(o.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn sym_factors() {
        assert_eq!(sym_factor(&op(&[1, 1])), int(2));
        assert_eq!(sym_factor(&op(&[3, 1])), int(3));
        assert_eq!(sym_factor(&op(&[3, 3, 1])), int(18));
        assert_eq!(sym_factor(&op(&[])), int(1));
    }

    #[test]
    fn genus() {
        assert_eq!(rh_genus(&op(&[1]), 0, 2), Some(0));
        assert_eq!(rh_genus(&op(&[1]), 1, 2), Some(1));
        assert_eq!(rh_genus(&op(&[3]), 0, 2), None);
    }

    #[test]
    fn genus_roundtrip() {
        for r in [2u32, 4, 6] {
            for n in 1..=9 {
                for mu in odd_partitions(n) {
                    for b in 0..8 {
                        if let Some(g) = rh_genus(&mu, b, r) {
                            let lhs = (2 * g as i64 - 2 + mu.len() as i64 + mu.weight() as i64)
                                / r as i64;
                            assert_eq!(lhs, b as i64);
                            assert_eq!(
                                (2 * g as i64 - 2 + mu.len() as i64 + mu.weight() as i64)
                                    % r as i64,
                                0
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let mu: StrictPartition = "3,1".parse().unwrap();
        assert_eq!(mu.to_string(), "3,1");
        assert!("2,2".parse::<StrictPartition>().is_err());
        assert!("3,2".parse::<OddPartition>().is_err());
        let nu: OddPartition = "1,3,1".parse().unwrap();
        assert_eq!(nu.parts(), &[3, 1, 1]);
        assert_eq!(nu.multiplicities(), vec![(3, 1), (1, 2)]);
    }
}
