//! Structure constants of a finite-dimensional algebra and its Jacobson
//! radical via the trace form (characteristic zero).

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brauer::{BrauerAlgebra, BrauerElement};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::linalg::{self, axpy, Echelon, Mat, SVec};
use crate::rational::Q;

/// e_i e_j = Σ_k c_{ij}^k e_k, stored row by row as sparse vectors.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub dim: usize,
    pub table: Vec<Vec<SVec>>,
}

impl StructureConstants {
    pub fn from_fn(dim: usize, mut product: impl FnMut(usize, usize) -> Result<SVec>) -> Result<Self> {
        let mut table = Vec::with_capacity(dim);
        for i in 0..dim {
            let row = (0..dim).map(|j| product(i, j)).collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Ok(StructureConstants { dim, table })
    }

    pub fn from_brauer(b: &BrauerAlgebra) -> Result<Self> {
        let basis = b.basis();
        let words: Vec<_> = basis.iter().map(|m| b.monomial_word(m)).collect();
        Self::from_fn(b.dim(), |i, j| {
            let x = BrauerElement::monomial(basis[i].clone());
            Ok(b.to_vector(&b.act_word(&x, &words[j])?))
        })
    }

    pub fn from_hecke(h: &HeckeAlgebra) -> Result<Self> {
        let basis = h.basis();
        Self::from_fn(h.dim(), |i, j| {
            let x = HeckeElement::monomial(basis[i].clone());
            let y = HeckeElement::monomial(basis[j].clone());
            Ok(h.to_vector(&h.mul(&x, &y)))
        })
    }

    /// The subalgebra of square matrices spanned by `basis` (which must be
    /// closed under multiplication and linearly independent).
    pub fn from_matrix_basis(basis: &[Mat]) -> Result<Self> {
        let flat: Vec<Vec<Q>> = basis.iter().map(|m| m.iter().flatten().cloned().collect()).collect();
        let cols = linalg::transpose(&flat);
        if linalg::rank(&flat) != basis.len() {
            return Err(Error::Input("matrix basis is linearly dependent".into()));
        }
        Self::from_fn(basis.len(), |i, j| {
            let p: Vec<Q> = linalg::mat_mul(&basis[i], &basis[j]).into_iter().flatten().collect();
            let c = linalg::solve(&cols, &p).ok_or_else(|| Error::Input("matrix span is not closed".into()))?;
            Ok(linalg::to_sparse(&c))
        })
    }

    pub fn mul(&self, x: &SVec, y: &SVec) -> SVec {
        let mut out = SVec::new();
        for (i, a) in x {
            for (j, b) in y {
                axpy(&mut out, &(a * b), &self.table[*i][*j]);
            }
        }
        out
    }

    fn unit(&self, i: usize) -> SVec {
        SVec::from([(i, Q::from_integer(1.into()))])
    }

    /// Checks (e_i e_j) e_k = e_i (e_j e_k): every triple when dim ≤ 30,
    /// otherwise `samples` triples from a seeded generator.
    pub fn check_associative(&self, samples: usize) -> Result<()> {
        let n = self.dim;
        let triples: Vec<(usize, usize, usize)> = if n <= 30 {
            (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        };
        for (i, j, k) in triples {
            let left = self.mul(&self.table[i][j], &self.unit(k));
            let right = self.mul(&self.unit(i), &self.table[j][k]);
            if left != right {
                return Err(Error::Verification(format!("associativity fails at ({i},{j},{k})")));
            }
        }
        Ok(())
    }

    /// tr(L_{e_k}) for every basis element.
    fn left_traces(&self) -> Vec<Q> {
        (0..self.dim)
            .map(|k| (0..self.dim).map(|i| self.table[k][i].get(&i).cloned().unwrap_or_else(Q::zero)).sum())
            .collect()
    }

    /// Gram matrix of (x, y) ↦ tr(L_{xy}).
    pub fn trace_form(&self) -> Mat {
        let t = self.left_traces();
        let mut g = linalg::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                g[i][j] = self.table[i][j].iter().map(|(k, c)| c * &t[*k]).sum();
            }
        }
        g
    }
}

/// Basis of the Jacobson radical, checked to be a nilpotent two-sided ideal.
pub fn radical(a: &StructureConstants) -> Result<Vec<SVec>> {
    let basis: Vec<SVec> = linalg::nullspace(&a.trace_form(), a.dim).iter().map(|v| linalg::to_sparse(v)).collect();
    let mut ideal = Echelon::new();
    for v in &basis {
        ideal.insert(v);
    }
    for v in &basis {
        for i in 0..a.dim {
            let e = a.unit(i);
            if !ideal.contains(&a.mul(&e, v)) || !ideal.contains(&a.mul(v, &e)) {
                return Err(Error::Verification("trace-form radical is not an ideal".into()));
            }
        }
    }
    // J ⊋ J² ⊋ … must reach zero.
    let mut power = basis.clone();
    while !power.is_empty() {
        let mut next = Echelon::new();
        for x in &power {
            for y in &basis {
                next.insert(&a.mul(x, y));
            }
        }
        if next.dim() >= power.len() {
            return Err(Error::Verification("trace-form radical is not nilpotent".into()));
        }
        power = next.rows().to_vec();
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    #[test]
    fn upper_triangular_matrices() {
        let e = |i: usize, j: usize| {
            let mut m = linalg::zeros(2, 2);
            m[i][j] = q(1);
            m
        };
        let a = StructureConstants::from_matrix_basis(&[e(0, 0), e(0, 1), e(1, 1)]).unwrap();
        a.check_associative(0).unwrap();
        let j = radical(&a).unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn generic_brauer_algebra_is_semisimple() {
        let b = BrauerAlgebra::new(2, 2, vec![qr(1, 3), qr(7, 5)]).unwrap();
        let a = StructureConstants::from_brauer(&b).unwrap();
        a.check_associative(2000).unwrap();
        assert!(radical(&a).unwrap().is_empty());
    }

    #[test]
    fn hecke_table_is_associative() {
        let h = HeckeAlgebra::new(2, 2, vec![q(1), q(0)]).unwrap();
        let a = StructureConstants::from_hecke(&h).unwrap();
        a.check_associative(0).unwrap();
        assert!(!radical(&a).unwrap().is_empty());
    }
}
