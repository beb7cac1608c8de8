//! The classical Lie algebras so_{2n+1}, sp_{2n}, so_{2n} in the basis
//! f_{i,j} = e_{i,j} − θ_{i,j} e_{−j,−i}, indexed by i, j ∈ {−n,…,n}
//! (0 only in type B), with the bracket table and the root-space data
//! relative to a parabolic subset.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};
use crate::rational::{q, Q};
use crate::weights::{Parabolic, RootType, Weight};

/// Sparse matrix over the index set, keyed by (row, column).
pub type IndexMatrix = BTreeMap<(i64, i64), Q>;

/// Sparse element of 𝔤 in the f-basis: (basis position, coefficient).
pub type LieElement = Vec<(usize, Q)>;

/// What a basis element does to the highest-weight vector of a parabolic
/// Verma module induced from a one-dimensional Levi module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// h_i = f_{i,i} (1-based i).
    Cartan(usize),
    /// A root vector of 𝔲⁻; the payload is its rank in the PBW order.
    Lowering(usize),
    /// A root vector of 𝔭 = 𝔩 ⊕ 𝔲⁺ other than the Cartan elements.
    Parabolic,
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub phi: RootType,
    pub n: usize,
    /// The basis pairs (i, j) of f_{i,j}.
    pub basis: Vec<(i64, i64)>,
    position: HashMap<(i64, i64), usize>,
    /// bracket[x][y] = [f_x, f_y] in the basis.
    bracket: Vec<Vec<LieElement>>,
}

impl LieAlgebra {
    pub fn new(phi: RootType, n: usize) -> Result<Self> {
        if n == 0 || (phi == RootType::D && n < 2) {
            return input(format!("rank {n} is too small for type {phi:?}"));
        }
        let ni = n as i64;
        let mut basis = Vec::new();
        for i in 1..=ni {
            basis.push((i, i));
        }
        for i in 1..=ni {
            for j in i + 1..=ni {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    basis.push((si * i, sj * j));
                }
            }
        }
        match phi {
            RootType::B => {
                for i in 1..=ni {
                    basis.push((0, i));
                    basis.push((0, -i));
                }
            }
            RootType::C => {
                for i in 1..=ni {
                    basis.push((-i, i));
                    basis.push((i, -i));
                }
            }
            RootType::D => {}
        }
        let position = basis.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut alg = LieAlgebra { phi, n, basis, position, bracket: Vec::new() };
        let mats: Vec<IndexMatrix> = alg.basis.iter().map(|&(i, j)| alg.f_matrix(i, j)).collect();
        let dim = alg.basis.len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for x in 0..dim {
            for y in 0..dim {
                table[x][y] = alg.decompose(&commutator(&mats[x], &mats[y]))?;
            }
        }
        alg.bracket = table;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The index set of the natural module, increasing.
    pub fn indices(&self) -> Vec<i64> {
        let n = self.n as i64;
        let mut out: Vec<i64> = (-n..=-1).collect();
        if self.phi == RootType::B {
            out.push(0);
        }
        out.extend(1..=n);
        out
    }

    pub fn natural_dim(&self) -> usize {
        self.phi.natural_dim(self.n)
    }

    pub fn epsilon(&self) -> i64 {
        self.phi.epsilon()
    }

    /// θ_{i,j}: 1 for so, sgn(i)sgn(j) for sp.
    pub fn theta(&self, i: i64, j: i64) -> i64 {
        match self.phi {
            RootType::C => i.signum() * j.signum(),
            _ => 1,
        }
    }

    /// The matrix of f_{i,j} for arbitrary i, j in the index set.
    pub fn f_matrix(&self, i: i64, j: i64) -> IndexMatrix {
        let mut m = IndexMatrix::new();
        add_entry(&mut m, (i, j), Q::one());
        add_entry(&mut m, (-j, -i), -q(self.theta(i, j)));
        m
    }

    /// f_{i,j} v_k as (index, coefficient) pairs.
    pub fn act_on_vector(&self, i: i64, j: i64, k: i64) -> Vec<(i64, Q)> {
        let mut out = Vec::new();
        if j == k {
            out.push((i, Q::one()));
        }
        if -i == k {
            let c = -q(self.theta(i, j));
            match out.iter_mut().find(|(t, _)| *t == -j) {
                Some(entry) => entry.1 += c,
                None => out.push((-j, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    /// Position of the basis element f_{i,j}, if (i, j) is a basis pair.
    pub fn position(&self, i: i64, j: i64) -> Option<usize> {
        self.position.get(&(i, j)).copied()
    }

    /// Expresses an element of 𝔤 (given as a matrix) in the f-basis.
    pub fn decompose(&self, m: &IndexMatrix) -> Result<LieElement> {
        let mut out = Vec::new();
        let mut check = IndexMatrix::new();
        for (k, &(i, j)) in self.basis.iter().enumerate() {
            let Some(c) = m.get(&(i, j)) else { continue };
            let fm = self.f_matrix(i, j);
            let c = c / &fm[&(i, j)];
            for (pos, v) in &fm {
                add_entry(&mut check, *pos, v * &c);
            }
            out.push((k, c));
        }
        if &check != m {
            return input("matrix does not lie in the Lie algebra");
        }
        Ok(out)
    }

    /// f_{i,j} for an arbitrary pair, written in the basis (a single term, or
    /// empty when f_{i,j} = 0).
    pub fn element(&self, i: i64, j: i64) -> Result<LieElement> {
        let idx = self.indices();
        if !idx.contains(&i) || !idx.contains(&j) {
            return input(format!("f_({i},{j}) is outside the index set of rank {}", self.n));
        }
        self.decompose(&self.f_matrix(i, j))
    }

    pub fn bracket(&self, x: usize, y: usize) -> &LieElement {
        &self.bracket[x][y]
    }

    /// Weight of v_i: sgn(i) ε_{|i|}.
    pub fn vector_weight(&self, i: i64) -> Weight {
        if i == 0 {
            Weight::zero(self.n)
        } else {
            Weight::unit(self.n, i.unsigned_abs() as usize, i.signum())
        }
    }

    /// Weight of f_{i,j}: wt(v_i) − wt(v_j).
    pub fn weight(&self, x: usize) -> Weight {
        let (i, j) = self.basis[x];
        &self.vector_weight(i) - &self.vector_weight(j)
    }

    /// Classifies every basis element relative to the parabolic subset,
    /// and returns the 𝔲⁻ basis ℬ_I in increasing lexicographic order of
    /// (row, column).
    pub fn classify(&self, par: &Parabolic) -> (Vec<RootKind>, Vec<usize>) {
        let mut lowering: Vec<usize> = (0..self.dim())
            .filter(|&x| {
                let (i, j) = self.basis[x];
                if i == j {
                    return false;
                }
                let beta = self.weight(x);
                is_negative(&beta) && !par.in_levi_roots(&beta)
            })
            .collect();
        lowering.sort_by_key(|&x| self.basis[x]);
        let mut kinds = vec![RootKind::Parabolic; self.dim()];
        for (rank, &x) in lowering.iter().enumerate() {
            kinds[x] = RootKind::Lowering(rank);
        }
        for (x, kind) in kinds.iter_mut().enumerate() {
            let (i, j) = self.basis[x];
            if i == j {
                *kind = RootKind::Cartan(i as usize);
            }
        }
        (kinds, lowering)
    }

    /// The basis of 𝔫⁺: root vectors of positive roots.
    pub fn raising(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&x| {
                let (i, j) = self.basis[x];
                i != j && !is_negative(&self.weight(x))
            })
            .collect()
    }
}

/// A root is negative exactly when its first nonzero coordinate is.
fn is_negative(beta: &Weight) -> bool {
    beta.0.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())
}

fn add_entry(m: &mut IndexMatrix, pos: (i64, i64), c: Q) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(pos).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        m.remove(&pos);
    }
}

fn mat_mul(a: &IndexMatrix, b: &IndexMatrix) -> IndexMatrix {
    let mut out = IndexMatrix::new();
    for (&(i, k), x) in a {
        for (&(k2, j), y) in b.range((k, i64::MIN)..=(k, i64::MAX)) {
            debug_assert_eq!(k, k2);
            add_entry(&mut out, (i, j), x * y);
        }
    }
    out
}

pub fn commutator(a: &IndexMatrix, b: &IndexMatrix) -> IndexMatrix {
    let mut out = mat_mul(a, b);
    for (pos, v) in mat_mul(b, a) {
        add_entry(&mut out, pos, -v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn combine(alg: &LieAlgebra, x: &LieElement) -> IndexMatrix {
        let mut m = IndexMatrix::new();
        for (k, c) in x {
            let (i, j) = alg.basis[*k];
            for (pos, v) in alg.f_matrix(i, j) {
                add_entry(&mut m, pos, v * c);
            }
        }
        m
    }

    #[test]
    fn dimensions() {
        for n in 2..=4 {
            let ni = n;
            assert_eq!(LieAlgebra::new(RootType::B, n).unwrap().dim(), 2 * ni * ni + ni);
            assert_eq!(LieAlgebra::new(RootType::C, n).unwrap().dim(), 2 * ni * ni + ni);
            assert_eq!(LieAlgebra::new(RootType::D, n).unwrap().dim(), 2 * ni * ni - ni);
        }
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        for phi in [RootType::B, RootType::C, RootType::D] {
            let alg = LieAlgebra::new(phi, if phi == RootType::D { 3 } else { 2 }).unwrap();
            let d = alg.dim();
            for x in 0..d {
                for y in 0..d {
                    let mut s = combine(&alg, alg.bracket(x, y));
                    for (pos, v) in combine(&alg, alg.bracket(y, x)) {
                        add_entry(&mut s, pos, v);
                    }
                    assert!(s.is_empty(), "{phi:?} antisymmetry at {x},{y}");
                }
            }
            let br = |x: &LieElement, y: usize| -> LieElement {
                let mut acc = IndexMatrix::new();
                for (k, c) in x {
                    for (pos, v) in combine(&alg, alg.bracket(*k, y)) {
                        add_entry(&mut acc, pos, v * c);
                    }
                }
                alg.decompose(&acc).unwrap()
            };
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        // [[x,y],z] + [[y,z],x] + [[z,x],y] = 0
                        let mut total = combine(&alg, &br(alg.bracket(x, y), z));
                        for (pos, v) in combine(&alg, &br(alg.bracket(y, z), x)) {
                            add_entry(&mut total, pos, v);
                        }
                        for (pos, v) in combine(&alg, &br(alg.bracket(z, x), y)) {
                            add_entry(&mut total, pos, v);
                        }
                        assert!(total.is_empty(), "{phi:?} Jacobi at {x},{y},{z}");
                    }
                }
            }
        }
    }

    #[test]
    fn root_vectors_have_their_weights() {
        let alg = LieAlgebra::new(RootType::C, 3).unwrap();
        for x in 0..alg.dim() {
            let h: Vec<usize> = (1..=3).map(|i| alg.position(i, i).unwrap()).collect();
            for (i, &hx) in h.iter().enumerate() {
                // [h_i, f] = ε_i(wt f) f
                let br = alg.bracket(hx, x);
                let w = alg.weight(x).0[i].clone();
                if w.is_zero() {
                    assert!(br.is_empty());
                } else {
                    assert_eq!(br, &vec![(x, w)]);
                }
            }
        }
    }

    #[test]
    fn lowering_basis_of_the_levi_complement() {
        let alg = LieAlgebra::new(RootType::D, 4).unwrap();
        let par = Parabolic::new(RootType::D, 4, vec![4]).unwrap();
        let (kinds, low) = alg.classify(&par);
        // 𝔲⁻ of the Siegel parabolic of so_8: f_{−j,k}, j < k
        let pairs: Vec<(i64, i64)> = low.iter().map(|&x| alg.basis[x]).collect();
        assert_eq!(pairs, vec![(-3, 4), (-2, 3), (-2, 4), (-1, 2), (-1, 3), (-1, 4)]);
        assert_eq!(kinds.iter().filter(|k| matches!(k, RootKind::Cartan(_))).count(), 4);
        assert_eq!(alg.raising().len(), 12);
        let b = LieAlgebra::new(RootType::B, 2).unwrap();
        let par = Parabolic::new(RootType::B, 2, vec![2]).unwrap();
        let pairs: Vec<(i64, i64)> = b.classify(&par).1.iter().map(|&x| b.basis[x]).collect();
        assert_eq!(pairs, vec![(-1, 2), (0, 1), (0, 2)]);
    }

    #[test]
    fn arbitrary_pairs_reduce_to_signed_basis_elements() {
        let c = LieAlgebra::new(RootType::C, 3).unwrap();
        // f_{2,1} = −θ f_{−1,−2} with θ = 1
        assert_eq!(c.element(2, 1).unwrap(), vec![(c.position(-1, -2).unwrap(), q(-1))]);
        // f_{−2,1} = −θ f_{−1,2} with θ = −1
        assert_eq!(c.element(-2, 1).unwrap(), vec![(c.position(-1, 2).unwrap(), q(1))]);
        let d = LieAlgebra::new(RootType::D, 3).unwrap();
        assert!(d.element(2, -2).unwrap().is_empty());
        assert!(d.element(5, 1).is_err());
    }
}
