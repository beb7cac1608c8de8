//! Root systems of types B, C, D in the ε-basis, parabolic subsets, and the
//! Weyl-group computations (dot action, sorting into the I-dominant chamber).

use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::rational::{q, qr, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    B,
    C,
    D,
}

impl RootType {
    /// ε_𝔤: 1 for the orthogonal types, −1 for the symplectic type.
    pub fn epsilon(self) -> i64 {
        match self {
            RootType::C => -1,
            _ => 1,
        }
    }

    /// Dimension N of the natural module of rank n.
    pub fn natural_dim(self, n: usize) -> usize {
        match self {
            RootType::B => 2 * n + 1,
            _ => 2 * n,
        }
    }
}

impl std::str::FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(RootType::B),
            "C" | "c" => Ok(RootType::C),
            "D" | "d" => Ok(RootType::D),
            _ => input(format!("unknown root type {s:?} (expected B, C or D)")),
        }
    }
}

/// A weight as exact coordinates in the ε-basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

/// Serialized as a list of exact rationals written "p/q".
impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(crate::rational::fmt_q))
    }
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![Q::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    /// ±ε_i (1-based).
    pub fn unit(n: usize, i: usize, sign: i64) -> Self {
        let mut w = Weight::zero(n);
        w.0[i - 1] = q(sign);
        w
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Weight) -> Q {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// ⟨self, β^∨⟩ = 2(self, β)/(β, β).
    pub fn pairing(&self, beta: &Weight) -> Q {
        q(2) * self.dot(beta) / beta.dot(beta)
    }

    /// s_β(self).
    pub fn reflect(&self, beta: &Weight) -> Weight {
        self - &beta.scale(&self.pairing(beta))
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::rational::fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

/// A root system of type B_n, C_n or D_n with a parabolic subset I ⊂ Π,
/// given by the simple roots removed from Π (the cut points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parabolic {
    pub phi: RootType,
    pub n: usize,
    /// 1-based indices of the simple roots not in I, increasing.
    pub cuts: Vec<usize>,
}

impl Parabolic {
    pub fn new(phi: RootType, n: usize, cuts: Vec<usize>) -> Result<Self> {
        if n == 0 || (phi == RootType::D && n < 2) {
            return input(format!("rank {n} is too small for type {phi:?}"));
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) || cuts.iter().any(|&c| c == 0 || c > n) {
            return input(format!("cut points {cuts:?} must be increasing in 1..={n}"));
        }
        if phi == RootType::D && cuts.last() == Some(&(n - 1)) {
            return input("type D with the last cut at n − 1 is excluded by convention (use n instead)");
        }
        Ok(Parabolic { phi, n, cuts })
    }

    /// Simple roots α_1, …, α_n.
    pub fn simple_roots(&self) -> Vec<Weight> {
        let n = self.n;
        let mut out: Vec<Weight> = (1..n).map(|i| &Weight::unit(n, i, 1) + &Weight::unit(n, i + 1, -1)).collect();
        out.push(match self.phi {
            RootType::B => Weight::unit(n, n, 1),
            RootType::C => Weight::unit(n, n, 2),
            RootType::D => &Weight::unit(n, n - 1, 1) + &Weight::unit(n, n, 1),
        });
        out
    }

    /// Is α_j in I?
    pub fn in_levi(&self, j: usize) -> bool {
        !self.cuts.contains(&j)
    }

    /// The simple roots of I.
    pub fn levi_simple_roots(&self) -> Vec<Weight> {
        self.simple_roots().into_iter().enumerate().filter(|(j, _)| self.in_levi(j + 1)).map(|(_, a)| a).collect()
    }

    /// Φ⁺ in a fixed order: ε_i ∓ ε_j (i < j), then the short or long roots.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(&Weight::unit(n, i, 1) + &Weight::unit(n, j, -1));
                out.push(&Weight::unit(n, i, 1) + &Weight::unit(n, j, 1));
            }
        }
        for i in 1..=n {
            match self.phi {
                RootType::B => out.push(Weight::unit(n, i, 1)),
                RootType::C => out.push(Weight::unit(n, i, 2)),
                RootType::D => {}
            }
        }
        out
    }

    /// Coordinates of x in the basis of simple roots (closed form from the
    /// partial sums S_j = x_1 + … + x_j).
    pub fn simple_coordinates(&self, x: &Weight) -> Vec<Q> {
        let n = self.n;
        let mut sums = Vec::with_capacity(n);
        let mut acc = Q::zero();
        for v in &x.0 {
            acc += v;
            sums.push(acc.clone());
        }
        let half = qr(1, 2);
        match self.phi {
            RootType::B => sums,
            RootType::C => {
                sums[n - 1] = &sums[n - 1] * &half;
                sums
            }
            RootType::D => {
                let last = &sums[n - 1] * &half;
                sums[n - 2] = (&sums[n - 2] - &x.0[n - 1]) * &half;
                sums[n - 1] = last;
                sums
            }
        }
    }

    /// 0-based index of the W_I block containing coordinate i (0-based).
    fn block_of(&self, i: usize) -> usize {
        self.cuts.iter().filter(|&&c| c <= i).count()
    }

    /// Whether coordinate i (0-based) lies in the last block and α_n ∈ I,
    /// so that W_I also changes its sign.
    fn in_signed_tail(&self, i: usize) -> bool {
        self.in_levi(self.n) && self.block_of(i) == self.cuts.len()
    }

    /// Is β (a root) in Φ_I = Φ ∩ ℤI?
    pub fn in_levi_roots(&self, beta: &Weight) -> bool {
        let support: Vec<usize> = (0..self.n).filter(|&i| !beta.0[i].is_zero()).collect();
        match support.as_slice() {
            [i] => self.in_signed_tail(*i),
            [i, j] => {
                if beta.0[*i] != beta.0[*j] {
                    self.block_of(*i) == self.block_of(*j)
                } else {
                    self.in_signed_tail(*i) && self.in_signed_tail(*j)
                }
            }
            _ => false,
        }
    }

    /// Φ⁺ \ Φ_I.
    pub fn nilradical_roots(&self) -> Vec<Weight> {
        self.positive_roots().into_iter().filter(|b| !self.in_levi_roots(b)).collect()
    }

    /// Φ⁺_I.
    pub fn levi_positive_roots(&self) -> Vec<Weight> {
        self.positive_roots().into_iter().filter(|b| self.in_levi_roots(b)).collect()
    }

    /// μ ≥ ν in the dominance order: μ − ν ∈ ℕΠ.
    pub fn dominance_ge(&self, mu: &Weight, nu: &Weight) -> bool {
        self.simple_coordinates(&(mu - nu)).iter().all(crate::linalg::is_nonneg_integer)
    }

    /// ρ, half the sum of the positive roots.
    pub fn rho(&self) -> Weight {
        let n = self.n;
        Weight(
            (1..=n)
                .map(|i| {
                    let k = (n - i) as i64;
                    match self.phi {
                        RootType::B => qr(2 * k + 1, 2),
                        RootType::C => q(k + 1),
                        RootType::D => q(k),
                    }
                })
                .collect(),
        )
    }

    /// μ ∈ Λ^𝔭: ⟨μ, α^∨⟩ ∈ ℕ for every α ∈ I.
    pub fn is_p_dominant(&self, mu: &Weight) -> bool {
        self.levi_simple_roots().iter().all(|a| crate::linalg::is_nonneg_integer(&mu.pairing(a)))
    }

    /// s_β·μ = s_β(μ + ρ) − ρ.
    pub fn dot_reflect(&self, beta: &Weight, mu: &Weight) -> Weight {
        let rho = self.rho();
        &(&mu.clone().add(&rho)).reflect(beta) - &rho
    }

    /// Blocks of consecutive coordinates permuted by W_I: the type-A blocks
    /// cut at the removed simple roots, and whether the last block also
    /// carries sign changes (α_n ∈ I).
    pub fn levi_blocks(&self) -> (Vec<std::ops::Range<usize>>, bool) {
        let mut blocks = Vec::new();
        let mut start = 0;
        for &c in &self.cuts {
            blocks.push(start..c);
            start = c;
        }
        if start < self.n {
            blocks.push(start..self.n);
        }
        let signed_tail = self.in_levi(self.n);
        (blocks, signed_tail)
    }

    /// Sorts x into the I-dominant chamber: returns w·x and det(w) = (−1)^{ℓ(w)}
    /// for the w ∈ W_I doing so, or `None` when x is I-singular (some
    /// ⟨x, α^∨⟩ = 0 with α ∈ Φ_I), where w is not unique.
    pub fn sort_to_levi_chamber(&self, x: &Weight) -> Option<(Weight, i64)> {
        if self.levi_positive_roots().iter().any(|b| x.pairing(b).is_zero()) {
            return None;
        }
        let (blocks, signed_tail) = self.levi_blocks();
        let mut v = x.0.clone();
        let mut sign = 1i64;
        for (bi, block) in blocks.iter().enumerate() {
            let tail = signed_tail && bi + 1 == blocks.len();
            let slice = &mut v[block.clone()];
            if tail {
                match self.phi {
                    RootType::B | RootType::C => {
                        for x in slice.iter_mut() {
                            if x.is_negative() {
                                *x = -x.clone();
                                sign = -sign;
                            }
                        }
                    }
                    RootType::D => {
                        let mut flips = 0;
                        for x in slice.iter_mut() {
                            if x.is_negative() {
                                *x = -x.clone();
                                flips += 1;
                            }
                        }
                        sign *= permutation_sort_sign(slice);
                        if flips % 2 == 1 {
                            let last = slice.len() - 1;
                            slice[last] = -slice[last].clone();
                        }
                        continue;
                    }
                }
            }
            sign *= permutation_sort_sign(slice);
        }
        Some((Weight(v), sign))
    }
}

/// Sorts a slice decreasingly and returns the sign of the sorting permutation.
fn permutation_sort_sign(slice: &mut [Q]) -> i64 {
    let mut sign = 1;
    // insertion sort counts transpositions
    for i in 1..slice.len() {
        let mut j = i;
        while j > 0 && slice[j - 1] < slice[j] {
            slice.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// The data (Φ, n, p, i) of the dictionary: cut points 0 = p_0 < p_1 < … <
/// p_k = n and the choice I_1 = Π \ {α_{p_1}, …, α_{p_k}} or I_2 = I_1 ∪ {α_n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub phi: RootType,
    pub n: usize,
    /// p_1 < … < p_k = n (p_0 = 0 is implicit).
    pub p: Vec<usize>,
    pub i: usize,
}

impl RootDatum {
    pub fn new(phi: RootType, n: usize, p: Vec<usize>, i: usize) -> Result<Self> {
        if i != 1 && i != 2 {
            return input(format!("i must be 1 or 2, got {i}"));
        }
        if p.last() != Some(&n) {
            return input(format!("cut points {p:?} must end at n = {n}"));
        }
        Parabolic::new(phi, n, p.clone())?;
        let datum = RootDatum { phi, n, p, i };
        if phi == RootType::D {
            let cuts = datum.parabolic().cuts;
            if cuts.last() == Some(&(n - 1)) {
                return input("type D with the last cut at n − 1 is excluded by convention");
            }
        }
        Ok(datum)
    }

    /// Same as [`RootDatum::new`] but also enforces the hypothesis of the
    /// identification of B_{a,r}(u) with an endomorphism algebra (Φ ≠ B_n when i = 1).
    pub fn new_for_dictionary(phi: RootType, n: usize, p: Vec<usize>, i: usize) -> Result<Self> {
        if phi == RootType::B && i == 1 {
            return input("type B with i = 1 is not covered (Φ ≠ B_n is required for i = 1)");
        }
        Self::new(phi, n, p, i)
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    /// p_j with p_0 = 0.
    pub fn p_at(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.p[j - 1]
        }
    }

    /// The level a = 2k (i = 1) or 2k − 1 (i = 2).
    pub fn level(&self) -> usize {
        if self.i == 1 {
            2 * self.k()
        } else {
            2 * self.k() - 1
        }
    }

    /// The parabolic subset I_i.
    pub fn parabolic(&self) -> Parabolic {
        let mut cuts = self.p.clone();
        if self.i == 2 {
            cuts.pop();
        }
        Parabolic { phi: self.phi, n: self.n, cuts }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_small_cases() {
        assert_eq!(Parabolic::new(RootType::D, 2, vec![]).unwrap().rho(), Weight::from_ints(&[1, 0]));
        assert_eq!(Parabolic::new(RootType::C, 1, vec![]).unwrap().rho(), Weight::from_ints(&[1]));
    }

    #[test]
    fn rho_is_half_the_positive_roots_and_pairs_to_one() {
        for phi in [RootType::B, RootType::C, RootType::D] {
            for n in 2..=6 {
                let par = Parabolic::new(phi, n, vec![]).unwrap();
                let sum = par.positive_roots().iter().fold(Weight::zero(n), |acc, b| &acc + b);
                assert_eq!(sum.scale(&qr(1, 2)), par.rho());
                for a in par.simple_roots() {
                    assert_eq!(par.rho().pairing(&a), q(1), "{phi:?} {n}");
                }
            }
        }
    }

    #[test]
    fn dot_action_is_an_involution() {
        let par = Parabolic::new(RootType::C, 3, vec![1, 3]).unwrap();
        let mu = Weight(vec![qr(-7, 3), q(2), qr(1, 2)]);
        for b in par.positive_roots() {
            assert_eq!(par.dot_reflect(&b, &par.dot_reflect(&b, &mu)), mu);
        }
    }

    #[test]
    fn sorting_reaches_the_dominant_chamber() {
        for phi in [RootType::B, RootType::C, RootType::D] {
            let par = Parabolic::new(phi, 4, vec![1]).unwrap();
            let x = Weight::from_ints(&[3, -1, 4, -2]);
            let (y, _) = par.sort_to_levi_chamber(&x).unwrap();
            assert!(par.levi_simple_roots().iter().all(|a| y.pairing(a) > Q::zero()), "{phi:?} {y:?}");
        }
        let par = Parabolic::new(RootType::C, 3, vec![3]).unwrap();
        // one transposition in the single type-A block
        assert_eq!(par.sort_to_levi_chamber(&Weight::from_ints(&[1, 2, 5])).unwrap().1, -1);
        assert!(par.sort_to_levi_chamber(&Weight::from_ints(&[1, 1, 5])).is_none());
    }

    #[test]
    fn levi_subsets() {
        let d = RootDatum::new(RootType::C, 5, vec![2, 5], 2).unwrap();
        let par = d.parabolic();
        assert_eq!(par.cuts, vec![2]);
        assert!(par.in_levi(5));
        assert_eq!(d.level(), 3);
        assert!(RootDatum::new_for_dictionary(RootType::B, 4, vec![4], 1).is_err());
    }
}
