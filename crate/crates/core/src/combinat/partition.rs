//! Partitions, multipartitions and their profiles.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, dropping zero parts; rejects increasing sequences.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return input(format!("parts not weakly decreasing: {parts:?}"));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part, 1-based, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count())
                .collect(),
        )
    }

    /// All partitions of `m`, in reverse lexicographic order ((m) first).
    pub fn all(m: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }

    /// Number of standard tableaux (hook length formula).
    pub fn num_standard(&self) -> u128 {
        let n = self.size() as u128;
        let conj = self.conjugate();
        let mut num: u128 = (1..=n).product();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j - 1) + (conj.0[j] - i - 1) + 1;
                num /= hook as u128;
            }
        }
        num
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// An `a`-tuple of partitions.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multipartition {
    comps: Vec<Partition>,
}

impl Multipartition {
    pub fn new(comps: Vec<Partition>) -> Result<Self> {
        if comps.is_empty() {
            return input("a multipartition needs level a >= 1");
        }
        Ok(Multipartition { comps })
    }

    pub fn from_vecs(v: &[Vec<usize>]) -> Result<Self> {
        Self::new(v.iter().map(|p| Partition::new(p.clone())).collect::<Result<_>>()?)
    }

    pub fn empty(a: usize) -> Self {
        Multipartition { comps: vec![Partition::empty(); a.max(1)] }
    }

    pub fn level(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Partition] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Partition {
        &self.comps[i]
    }

    pub fn size(&self) -> usize {
        self.comps.iter().map(Partition::size).sum()
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.comps.iter().map(|p| p.parts().to_vec()).collect()
    }

    /// Cumulative sizes `[b_0, …, b_a]`.
    pub fn profile(&self) -> Profile {
        let mut b = vec![0];
        for p in &self.comps {
            b.push(b.last().unwrap() + p.size());
        }
        Profile { b }
    }

    /// Component `i` of the result is the transpose of component `a-i+1`.
    pub fn conjugate(&self) -> Multipartition {
        Multipartition { comps: self.comps.iter().rev().map(Partition::conjugate).collect() }
    }

    /// Concatenation λ^(1) ∨ … ∨ λ^(a) of all rows.
    pub fn rows(&self) -> Vec<usize> {
        self.comps.iter().flat_map(|p| p.parts().iter().copied()).collect()
    }

    /// Dominance λ ⊵ μ via the prefix-sum inequalities.
    pub fn dominance_ge(&self, other: &Multipartition) -> Result<bool> {
        if self.level() != other.level() || self.size() != other.size() {
            return input("dominance needs equal level and size");
        }
        let h = self
            .comps
            .iter()
            .chain(other.comps.iter())
            .map(Partition::len)
            .max()
            .unwrap_or(0);
        let pad = |m: &Multipartition| {
            let mut out = Vec::new();
            let mut before = 0;
            for p in &m.comps {
                let mut acc = before;
                out.push(acc);
                for j in 1..=h {
                    acc += p.part(j);
                    out.push(acc);
                }
                before += p.size();
            }
            out
        };
        Ok(pad(self).iter().zip(pad(other).iter()).all(|(x, y)| x >= y))
    }

    /// Strict dominance λ ▷ μ.
    pub fn dominates(&self, other: &Multipartition) -> bool {
        self != other && self.dominance_ge(other).unwrap_or(false)
    }

    /// Deterministic total order refining dominance (more dominant first):
    /// lexicographic on the padded prefix sums of the concatenated rows, which
    /// determine the multipartition.
    pub fn total_cmp(&self, other: &Multipartition) -> Ordering {
        let h = self.size().max(other.size()).max(1);
        other.prefix_key(h).cmp(&self.prefix_key(h))
    }

    fn prefix_key(&self, h: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut before = 0;
        for p in &self.comps {
            let mut acc = before;
            for j in 1..=h {
                acc += p.part(j);
                out.push(acc);
            }
            before += p.size();
        }
        out
    }

    /// All `a`-multipartitions of `m`, sorted by [`Self::total_cmp`].
    pub fn all(a: usize, m: usize) -> Vec<Multipartition> {
        fn rec(a: usize, rem: usize, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
            if cur.len() + 1 == a {
                for p in Partition::all(rem) {
                    cur.push(p);
                    out.push(Multipartition { comps: cur.clone() });
                    cur.pop();
                }
                return;
            }
            for k in (0..=rem).rev() {
                for p in Partition::all(k) {
                    cur.push(p);
                    rec(a, rem - k, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(a.max(1), m, &mut Vec::new(), &mut out);
        out.sort_by(|x, y| x.total_cmp(y));
        out
    }

    pub fn num_standard(&self) -> u128 {
        let n = self.size();
        let mut count: u128 = (1..=n as u128).product();
        for p in &self.comps {
            count /= (1..=p.size() as u128).product::<u128>();
            count *= p.num_standard();
        }
        count
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p:?}")?;
        }
        write!(f, ")")
    }
}

/// Cumulative component sizes `[b_0 = 0, b_1, …, b_a]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    pub b: Vec<usize>,
}

impl Profile {
    pub fn new(b: Vec<usize>) -> Result<Self> {
        if b.first() != Some(&0) || b.windows(2).any(|w| w[0] > w[1]) {
            return input(format!("bad profile {b:?}"));
        }
        Ok(Profile { b })
    }

    pub fn total(&self) -> usize {
        *self.b.last().unwrap()
    }

    /// Profile of the multipartition with components reversed.
    pub fn mirror(&self) -> Profile {
        let r = self.total();
        let mut b: Vec<usize> = self.b.iter().rev().map(|x| r - x).collect();
        b[0] = 0;
        Profile { b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(v: &[&[usize]]) -> Multipartition {
        Multipartition::from_vecs(&v.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn conjugate_example() {
        let l = mp(&[&[], &[2], &[2, 1], &[1]]);
        assert_eq!(l.conjugate(), mp(&[&[1], &[2, 1], &[1, 1], &[]]));
        assert_eq!(Multipartition::empty(3).conjugate(), Multipartition::empty(3));
    }

    #[test]
    fn conjugate_involution_exhaustive() {
        for a in 1..=4 {
            for m in 0..=6 {
                for l in Multipartition::all(a, m) {
                    assert_eq!(l.conjugate().conjugate(), l);
                }
            }
        }
    }

    #[test]
    fn dominance_small() {
        let x = mp(&[&[2], &[]]);
        let y = mp(&[&[1], &[1]]);
        assert!(x.dominance_ge(&y).unwrap());
        assert!(!y.dominance_ge(&x).unwrap());
        assert!(x.dominance_ge(&x).unwrap());
        assert!(x.dominance_ge(&mp(&[&[2]])).is_err());
    }

    #[test]
    fn dominance_is_partial_order_and_reversed_by_conjugation() {
        for a in 1..=3 {
            for m in 0..=5 {
                let all = Multipartition::all(a, m);
                for x in &all {
                    for y in &all {
                        let xy = x.dominance_ge(y).unwrap();
                        let yx = y.dominance_ge(x).unwrap();
                        if xy && yx {
                            assert_eq!(x, y);
                        }
                        assert_eq!(xy, y.conjugate().dominance_ge(&x.conjugate()).unwrap());
                        if xy {
                            // total order refines dominance
                            assert_ne!(x.total_cmp(y), Ordering::Greater);
                            for z in &all {
                                if y.dominance_ge(z).unwrap() {
                                    assert!(x.dominance_ge(z).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Multipartition::all(2, 3).len(), 10);
        assert_eq!(Partition::new(vec![3, 2]).unwrap().num_standard(), 5);
        let total: u128 = Multipartition::all(2, 3).iter().map(|l| l.num_standard().pow(2)).sum();
        assert_eq!(total, 8 * 6);
    }
}
