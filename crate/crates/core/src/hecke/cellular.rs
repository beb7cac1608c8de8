//! The cellular bases m_st, n_st of H_{a,r}(u), their cell modules, Gram
//! forms and the Specht-module comparison.

use std::collections::HashMap;

use num_traits::Zero;

use super::{HeckeAlgebra, HeckeElement};
use crate::combinat::{Multipartition, Perm, Tableau};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rational::{zero, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// m_λ = π_[λ] x_λ.
    M,
    /// n_λ = π̃_[λ] y_λ.
    N,
}

/// Row stabiliser of t^λ: the Young subgroup on the concatenated rows.
pub fn row_stabilizer(lambda: &Multipartition) -> Vec<Perm> {
    Perm::young_subgroup(&lambda.rows())
}

/// m_λ or n_λ in normal form.
pub fn generator(h: &HeckeAlgebra, lambda: &Multipartition, flavor: Flavor) -> HeckeElement {
    let a = h.a();
    let b = lambda.profile().b;
    let mut pi = h.one();
    for i in 1..a {
        let v = match flavor {
            Flavor::M => &h.u()[i],
            Flavor::N => &h.u()[a - i - 1],
        };
        pi = h.mul(&pi, &h.pi(b[i], v));
    }
    let sum = h.perm_sum(&row_stabilizer(lambda), flavor == Flavor::N);
    h.mul(&pi, &sum)
}

/// One cellular basis element: label index, row tableau, column tableau.
#[derive(Clone, Debug)]
pub struct CellIndex {
    pub label: usize,
    pub s: usize,
    pub t: usize,
}

/// A cellular basis of H_{a,r}(u) with its change-of-basis data.
pub struct HeckeCellular<'h> {
    pub alg: &'h HeckeAlgebra,
    pub flavor: Flavor,
    /// Labels in the deterministic total order (most dominant first).
    pub labels: Vec<Multipartition>,
    pub tableaux: Vec<Vec<Tableau>>,
    pub index: Vec<CellIndex>,
    pub elements: Vec<HeckeElement>,
    position: HashMap<(usize, usize, usize), usize>,
    /// Inverse of the matrix whose rows are the basis elements' coordinates.
    inverse: Mat,
}

impl<'h> HeckeCellular<'h> {
    /// Builds the basis and checks that it is one (exact rank).
    pub fn new(alg: &'h HeckeAlgebra, flavor: Flavor) -> Result<Self> {
        let labels = Multipartition::all(alg.a(), alg.r());
        let mut tableaux = Vec::new();
        let mut index = Vec::new();
        let mut elements = Vec::new();
        let mut position = HashMap::new();
        for (li, lambda) in labels.iter().enumerate() {
            let tabs = Tableau::standard(lambda);
            let gen = generator(alg, lambda, flavor);
            let ds: Vec<Perm> = tabs.iter().map(Tableau::d).collect();
            let left: Vec<HeckeElement> =
                ds.iter().map(|d| alg.mul(&alg.perm(&d.inverse()), &gen)).collect();
            for (si, l) in left.iter().enumerate() {
                for (ti, d) in ds.iter().enumerate() {
                    position.insert((li, si, ti), elements.len());
                    index.push(CellIndex { label: li, s: si, t: ti });
                    elements.push(alg.mul(l, &alg.perm(d)));
                }
            }
            tableaux.push(tabs);
        }
        let n = alg.dim();
        if elements.len() != n {
            return Err(Error::Verification(format!(
                "cellular basis has {} elements, algebra dimension is {n}",
                elements.len()
            )));
        }
        let mut m = linalg::zeros(n, n);
        for (i, e) in elements.iter().enumerate() {
            for (j, c) in alg.to_vector(e) {
                m[i][j] = c;
            }
        }
        let inverse = linalg::inverse(&m).ok_or_else(|| {
            Error::Verification("cellular basis is linearly dependent".to_string())
        })?;
        Ok(HeckeCellular { alg, flavor, labels, tableaux, index, elements, position, inverse })
    }

    pub fn label_index(&self, lambda: &Multipartition) -> Option<usize> {
        self.labels.iter().position(|l| l == lambda)
    }

    pub fn element(&self, label: usize, s: usize, t: usize) -> &HeckeElement {
        &self.elements[self.position[&(label, s, t)]]
    }

    /// Coordinates of `h` in the cellular basis.
    pub fn expand(&self, h: &HeckeElement) -> Vec<Q> {
        let v = self.alg.to_vector(h);
        let n = self.elements.len();
        let mut out = vec![zero(); n];
        for (j, c) in &v {
            for (k, x) in self.inverse[*j].iter().enumerate() {
                if !x.is_zero() {
                    out[k] += c * x;
                }
            }
        }
        out
    }

    /// Is cell μ strictly above cell λ in the cell order (μ ▷ λ)?
    pub fn is_higher(&self, mu: usize, lambda: usize) -> bool {
        self.labels[mu].dominates(&self.labels[lambda])
    }

    /// Gram matrix: φ(s,t) = coefficient of the cell generator in
    /// m_{t^λ s}·m_{t t^λ}.
    pub fn gram(&self, label: usize) -> Mat {
        let k = self.tableaux[label].len();
        let target = self.position[&(label, 0, 0)];
        let mut g = linalg::zeros(k, k);
        for s in 0..k {
            for t in 0..k {
                let prod = self.alg.mul(self.element(label, 0, s), self.element(label, t, 0));
                let v = self.alg.to_vector(&prod);
                let mut c = zero();
                for (j, x) in &v {
                    c += x * &self.inverse[*j][target];
                }
                g[s][t] = c;
            }
        }
        g
    }

    /// Right action of `h` on the cell module C(λ) (row t = image of basis
    /// vector t), after checking that everything outside row t^λ of cell λ
    /// lies in strictly higher cells.
    pub fn cell_action(&self, label: usize, h: &HeckeElement) -> Result<Mat> {
        let k = self.tableaux[label].len();
        let mut out = linalg::zeros(k, k);
        for t in 0..k {
            let coords = self.expand(&self.alg.mul(self.element(label, 0, t), h));
            for (pos, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let ix = &self.index[pos];
                if ix.label == label && ix.s == 0 {
                    out[t][ix.t] = c.clone();
                } else if !self.is_higher(ix.label, label) {
                    return Err(Error::Verification(format!(
                        "cell triangularity fails for {:?}: term in cell {:?}",
                        self.labels[label], self.labels[ix.label]
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Action matrices of the standard generators on C(λ).
    pub fn cell_generator_actions(&self, label: usize) -> Result<Vec<Mat>> {
        self.alg
            .generators()
            .iter()
            .map(|(_, g)| self.cell_action(label, g))
            .collect()
    }

    /// dim D(λ) = rank of the Gram matrix.
    pub fn simple_dim(&self, label: usize) -> usize {
        linalg::rank(&self.gram(label))
    }
}

/// w_λ = d(t_λ).
pub fn w_lambda(lambda: &Multipartition) -> Perm {
    Tableau::terminal(lambda).d()
}

/// The Specht module S^λ = m_λ w_λ n_{λ'} H with its spanning vectors
/// m_λ w_λ n_{λ'} d(t), t ∈ 𝒯^std(λ').
pub struct SpechtModule {
    pub vectors: Vec<HeckeElement>,
    pub rank: usize,
    /// Generator actions in the basis `vectors` (when they are independent).
    pub actions: Vec<Mat>,
}

pub fn specht_module(h: &HeckeAlgebra, lambda: &Multipartition) -> Result<SpechtModule> {
    let conj = lambda.conjugate();
    let z = h.mul_all(&[
        generator(h, lambda, Flavor::M),
        h.perm(&w_lambda(lambda)),
        generator(h, &conj, Flavor::N),
    ]);
    let vectors: Vec<HeckeElement> =
        Tableau::standard(&conj).iter().map(|t| h.mul(&z, &h.perm(&t.d()))).collect();
    let rows: Mat = vectors.iter().map(|v| linalg::to_dense(&h.to_vector(v), h.dim())).collect();
    let rank = linalg::rank(&rows);
    let mut actions = Vec::new();
    if rank == vectors.len() {
        let basis_t = linalg::transpose(&rows);
        for (_, g) in h.generators() {
            let mut m = Vec::new();
            for v in &vectors {
                let img = linalg::to_dense(&h.to_vector(&h.mul(v, &g)), h.dim());
                let c = linalg::solve(&basis_t, &img).ok_or_else(|| {
                    Error::Verification("Specht span is not closed under the action".to_string())
                })?;
                m.push(c);
            }
            actions.push(m);
        }
    }
    Ok(SpechtModule { vectors, rank, actions })
}

/// Finds an invertible P with A_g P = P B_g for every g, if the intertwiner
/// space contains one reachable by a deterministic probe.
pub fn find_isomorphism(a: &[Mat], b: &[Mat]) -> Option<Mat> {
    let n = a.first().map(Vec::len).unwrap_or(0);
    if b.iter().any(|m| m.len() != n) || a.len() != b.len() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    // Unknowns P[i][j] at column i*n + j.
    let mut eqs: Mat = Vec::new();
    for (ag, bg) in a.iter().zip(b) {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![zero(); n * n];
                for k in 0..n {
                    row[k * n + j] += &ag[i][k];
                    row[i * n + k] -= &bg[k][j];
                }
                eqs.push(row);
            }
        }
    }
    let kernel = linalg::nullspace(&eqs, n * n);
    if kernel.is_empty() {
        return None;
    }
    for probe in 0..8u64 {
        let mut p = linalg::zeros(n, n);
        for (idx, v) in kernel.iter().enumerate() {
            let c = Q::from_integer(((idx as u64 + 1) * (probe * 7 + 3) % 11 + 1).into());
            for i in 0..n {
                for j in 0..n {
                    p[i][j] += &c * &v[i * n + j];
                }
            }
        }
        if !linalg::determinant(&p).is_zero() {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::u_restricted;
    use crate::rational::{q, qr};

    fn mp(v: &[&[usize]]) -> Multipartition {
        Multipartition::from_vecs(&v.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn generator_examples() {
        let h = HeckeAlgebra::new(1, 3, vec![q(0)]).unwrap();
        let all = h.perm_sum(&Perm::all(3), false);
        assert_eq!(generator(&h, &mp(&[&[3]]), Flavor::M), all);
        let alt = h.perm_sum(&Perm::all(3), true);
        // y_λ runs over the row stabiliser, so the alternating sum belongs to (3)
        assert_eq!(generator(&h, &mp(&[&[3]]), Flavor::N), alt);
        assert_eq!(generator(&h, &mp(&[&[1, 1, 1]]), Flavor::N), h.one());
        let h = HeckeAlgebra::new(2, 2, vec![q(3), q(5)]).unwrap();
        let expect = h.x(1).sub(&h.scalar(q(5)));
        assert_eq!(generator(&h, &mp(&[&[1], &[1]]), Flavor::M), expect);
    }

    #[test]
    fn bases_are_cellular_with_triangular_action() {
        for (a, r) in [(1, 3), (2, 2), (2, 3)] {
            let u: Vec<Q> = (0..a).map(|i| q(i as i64)).collect();
            let h = HeckeAlgebra::new(a, r, u).unwrap();
            for flavor in [Flavor::M, Flavor::N] {
                let c = HeckeCellular::new(&h, flavor).unwrap();
                for l in 0..c.labels.len() {
                    let g = c.gram(l);
                    assert_eq!(g, linalg::transpose(&g));
                    c.cell_generator_actions(l).unwrap();
                }
            }
        }
    }

    #[test]
    fn generic_parameters_give_nonsingular_grams() {
        let h = HeckeAlgebra::new(2, 3, vec![q(0), qr(1, 2)]).unwrap();
        let c = HeckeCellular::new(&h, Flavor::M).unwrap();
        for l in 0..c.labels.len() {
            assert_eq!(c.simple_dim(l), c.tableaux[l].len(), "{:?}", c.labels[l]);
        }
    }

    #[test]
    fn level_one_sign_gram() {
        let h = HeckeAlgebra::new(1, 2, vec![q(0)]).unwrap();
        let c = HeckeCellular::new(&h, Flavor::M).unwrap();
        let l = c.label_index(&mp(&[&[1, 1]])).unwrap();
        assert_eq!(c.gram(l), vec![vec![q(1)]]);
        let l = c.label_index(&mp(&[&[2]])).unwrap();
        assert_eq!(c.gram(l), vec![vec![q(2)]]);
    }

    #[test]
    fn restricted_matches_gram_rank() {
        let u = vec![q(1), q(0)];
        for r in 1..=3 {
            let h = HeckeAlgebra::new(2, r, u.clone()).unwrap();
            let c = HeckeCellular::new(&h, Flavor::M).unwrap();
            for (l, lambda) in c.labels.iter().enumerate() {
                assert_eq!(c.simple_dim(l) > 0, u_restricted(lambda, &u), "{lambda:?}");
            }
        }
    }

    #[test]
    fn specht_matches_dual_cell_module() {
        let h = HeckeAlgebra::new(2, 2, vec![q(0), qr(1, 2)]).unwrap();
        let c = HeckeCellular::new(&h, Flavor::N).unwrap();
        for lambda in Multipartition::all(2, 2) {
            let s = specht_module(&h, &lambda).unwrap();
            assert_eq!(s.rank as u128, lambda.num_standard());
            let l = c.label_index(&lambda.conjugate()).unwrap();
            let a = c.cell_generator_actions(l).unwrap();
            assert!(find_isomorphism(&a, &s.actions).is_some(), "{lambda:?}");
        }
    }
}
