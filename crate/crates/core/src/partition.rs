use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Weakly decreasing sequence of positive integers (zeros trimmed).
///
/// The derived order is lexicographic on the parts, which refines the
/// dominance order on each fixed weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(parts));
        }
        Ok(Self::trimmed(parts))
    }

    pub(crate) fn trimmed(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    /// Sort arbitrary nonnegative integers into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::trimmed(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` (1-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn dominance_leq(&self, lambda: &Partition) -> Result<bool> {
        if self.weight() != lambda.weight() {
            return Err(Error::UnequalWeights {
                mu: self.clone(),
                lambda: lambda.clone(),
            });
        }
        let len = self.len().max(lambda.len());
        let (mut s, mut t) = (0u32, 0u32);
        for i in 1..=len {
            s += self.part(i);
            t += lambda.part(i);
            if s > t {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `mu ⊆ self`, i.e. `mu_i ≤ self_i` for all `i`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// `ν̂_i = N - ν_{n-i+1}`.
    pub fn complement_in_box(&self, big_n: u32, n: usize) -> Result<Partition> {
        if self.len() > n || self.part(1) > big_n {
            return Err(Error::OutsideBox {
                nu: self.clone(),
                rows: n,
                cols: big_n,
            });
        }
        Ok(Self::trimmed(
            (1..=n).map(|i| big_n - self.part(n - i + 1)).collect(),
        ))
    }

    /// `self + (1^n)`.
    pub fn add_column(&self, n: usize) -> Result<Partition> {
        if self.len() > n {
            return Err(Error::TooManyParts {
                lambda: self.clone(),
                n,
            });
        }
        Ok(Partition(self.padded(n).iter().map(|p| p + 1).collect()))
    }

    /// Boxes `(i, j)`, 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// All `μ ⊆ self`, by decreasing weight then decreasing lex order.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.len());
        sub_rec(&self.0, 0, u32::MAX, &mut cur, &mut out);
        out.sort_by(|x, y| y.weight().cmp(&x.weight()).then(y.cmp(x)));
        out
    }

    pub fn check_length(&self, n: usize) -> Result<()> {
        if self.len() > n {
            Err(Error::TooManyParts {
                lambda: self.clone(),
                n,
            })
        } else {
            Ok(())
        }
    }
}

fn sub_rec(bound: &[u32], i: usize, prev: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if i == bound.len() {
        out.push(Partition::trimmed(cur.clone()));
        return;
    }
    for p in 0..=bound[i].min(prev) {
        cur.push(p);
        sub_rec(bound, i + 1, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    /// Accepts `2,1`, `[2,1]`, `(2,1)` or an empty string.
    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')']);
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("bad partition {s:?}: {e}")))?;
        Partition::new(parts)
    }
}

/// Partitions of exactly `w` with at most `max_len` parts, lex-descending.
pub fn partitions_of(w: u32, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    parts_rec(w, w, max_len, &mut cur, &mut out);
    out
}

fn parts_rec(rem: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=rem.min(max_part)).rev() {
        cur.push(p);
        parts_rec(rem - p, p, slots - 1, cur, out);
        cur.pop();
    }
}

/// All partitions with `|λ| ≤ max_weight` and `ℓ(λ) ≤ max_length`, by
/// increasing weight and lex-descending within a weight.
pub fn enumerate_partitions(max_weight: u32, max_length: usize) -> Vec<Partition> {
    (0..=max_weight)
        .flat_map(|w| partitions_of(w, max_length))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[1, 1]).dominance_leq(&p(&[2])).unwrap());
        assert!(!p(&[2]).dominance_leq(&p(&[1, 1])).unwrap());
        assert!(p(&[2, 2, 1]).dominance_leq(&p(&[3, 1, 1])).unwrap());
        assert!(p(&[2]).dominance_leq(&p(&[1])).is_err());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
        assert_eq!(p(&[4, 2, 1]).conjugate(), p(&[3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(p(&[3, 1]).complement_in_box(3, 2).unwrap(), p(&[2]));
        assert_eq!(p(&[]).complement_in_box(2, 2).unwrap(), p(&[2, 2]));
        assert_eq!(p(&[2, 1]).complement_in_box(3, 2).unwrap(), p(&[2, 1]));
        assert!(p(&[4]).complement_in_box(3, 2).is_err());
        assert!(p(&[1, 1, 1]).complement_in_box(3, 2).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_partitions(2, 2),
            vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1])]
        );
        assert_eq!(enumerate_partitions(0, 5), vec![p(&[])]);
        assert_eq!(enumerate_partitions(3, 2).len(), 6);
    }

    #[test]
    fn subpartitions_of_21() {
        let subs = p(&[2, 1]).subpartitions();
        assert_eq!(subs, vec![p(&[2, 1]), p(&[2]), p(&[1, 1]), p(&[1]), p(&[])]);
    }

    #[test]
    fn parsing() {
        assert_eq!("[2,1]".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("3, 0".parse::<Partition>().unwrap(), p(&[3]));
        assert_eq!("".parse::<Partition>().unwrap(), p(&[]));
        assert!("1,2".parse::<Partition>().is_err());
    }
}
