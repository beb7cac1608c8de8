//! Permutations of {1,…,r} acting on the right.
//!
//! `images[x-1] = (x)w`, and products compose left to right:
//! `(x)(vw) = ((x)v)w`.

use std::fmt;

use crate::error::{input, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(r: usize) -> Self {
        Perm((0..r).collect())
    }

    /// From one-line notation with 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &x in images {
            if x == 0 || x > r || seen[x - 1] {
                return input(format!("not a permutation: {images:?}"));
            }
            seen[x - 1] = true;
        }
        Ok(Perm(images.iter().map(|x| x - 1).collect()))
    }

    /// The simple transposition s_i = (i, i+1), 1 ≤ i < r.
    pub fn simple(i: usize, r: usize) -> Self {
        let mut v: Vec<usize> = (0..r).collect();
        v.swap(i - 1, i);
        Perm(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `(x)w`, 1-based.
    pub fn apply(&self, x: usize) -> usize {
        self.0[x - 1] + 1
    }

    /// One-line notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    /// The product `self · other` (apply `self` first).
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x] = i;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let n = self.0.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count()
    }

    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// A reduced word `[i_1, …, i_k]` with `self = s_{i_1} ⋯ s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        // s_i·w swaps positions i, i+1 of the one-line list; bubble-sort the
        // list down to the identity, recording the swaps.
        let mut w = self.0.clone();
        let mut word = Vec::new();
        loop {
            let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
                break;
            };
            w.swap(i, i + 1);
            word.push(i + 1);
        }
        word
    }

    pub fn from_word(word: &[usize], r: usize) -> Perm {
        word.iter()
            .fold(Perm::identity(r), |acc, &i| acc.mul(&Perm::simple(i, r)))
    }

    /// All permutations of degree r in lexicographic order of one-line notation.
    pub fn all(r: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..r).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next permutation
            let Some(i) = (0..r.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..r).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Elements of the Young subgroup 𝔖_{c_1} × 𝔖_{c_2} × ⋯ on consecutive blocks.
    pub fn young_subgroup(blocks: &[usize]) -> Vec<Perm> {
        let r: usize = blocks.iter().sum();
        let mut out = vec![Perm::identity(r)];
        let mut start = 0;
        for &c in blocks {
            if c > 1 {
                let local = Perm::all(c);
                out = out
                    .iter()
                    .flat_map(|g| {
                        local.iter().map(move |h| {
                            let mut v = g.0.clone();
                            for (k, &x) in h.0.iter().enumerate() {
                                v[start + k] = start + x;
                            }
                            Perm(v)
                        })
                    })
                    .collect();
            }
            start += c;
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_convention() {
        // w = s1 s2 sends 1 -> 2 -> 3, 2 -> 1, 3 -> 2
        let w = Perm::simple(1, 3).mul(&Perm::simple(2, 3));
        assert_eq!(w.images(), vec![3, 1, 2]);
        assert_eq!(w.length(), 2);
    }

    #[test]
    fn reduced_words_rebuild_and_are_minimal() {
        for r in 1..=5 {
            for w in Perm::all(r) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Perm::from_word(&word, r), w);
                assert!(w.mul(&w.inverse()).is_identity());
            }
        }
    }

    #[test]
    fn young_subgroup_sizes() {
        assert_eq!(Perm::young_subgroup(&[2, 3, 1]).len(), 12);
        assert_eq!(Perm::all(4).len(), 24);
    }
}
