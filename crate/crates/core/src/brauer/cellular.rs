//! The weakly cellular basis C = e^{-1} X^ξ E^f n_st X^η d, cell modules
//! C(f,λ), their Gram forms, and the modules S^{f,λ} built from E^f m_λ w_λ n_λ'.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::algebra::{BrauerAlgebra, BrauerElement};
use super::diagram::Letter;
use crate::combinat::{cell_labels, enumerate_delta, stratum_ge, DeltaIndex, Multipartition, Perm};
use crate::error::{Error, Result};
use crate::hecke::cellular::{row_stabilizer, w_lambda, Flavor};
use crate::linalg::{self, Echelon, Mat};
use crate::rational::{zero, Q};

/// Cell label (f, λ).
pub type CellLabel = (usize, Multipartition);

/// E^f = E_{r−1} E_{r−3} ⋯ E_{r−2f+1}.
pub fn e_power_word(r: usize, f: usize) -> Vec<Letter> {
    (1..=f).map(|i| Letter::E(r - 2 * i + 1)).collect()
}

/// X^ξ = ∏_i X_{r−2i+1}^{ξ_i}.
pub fn dot_word(r: usize, xi: &[usize]) -> Vec<Letter> {
    xi.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat(Letter::X(r - 2 * i - 1)).take(e))
        .collect()
}

/// S-letters spelling a permutation (degree may be below r).
pub fn perm_word(w: &Perm) -> Vec<Letter> {
    w.reduced_word().into_iter().map(Letter::S).collect()
}

/// The product π̃ of the m_λ or n_λ flavour, evaluated with X letters.
pub fn dot_prefix(b: &BrauerAlgebra, lambda: &Multipartition, flavor: Flavor) -> Result<BrauerElement> {
    let a = b.a();
    let prof = lambda.profile().b;
    let mut out = b.one();
    for i in 1..a {
        let v = match flavor {
            Flavor::M => &b.u()[i],
            Flavor::N => &b.u()[a - i - 1],
        };
        for j in 1..=prof[i] {
            let f = b.x(j)?.sub(&b.scalar(v.clone()));
            out = b.mul(&out, &f)?;
        }
    }
    Ok(out)
}

/// Σ_w c(w) w over the row stabiliser of t^λ, with c(w) = sgn(w) when
/// `signed` and 1 otherwise.
pub fn row_sum(b: &BrauerAlgebra, lambda: &Multipartition, signed: bool) -> Result<BrauerElement> {
    let mut sum = BrauerElement::zero();
    for w in row_stabilizer(lambda) {
        let c = if signed { Q::from_integer(w.sign().into()) } else { Q::from_integer(1.into()) };
        sum.add_scaled(&b.word(&perm_word(&w))?, &c);
    }
    Ok(sum)
}

/// m_λ or n_λ of the Hecke algebra, evaluated with X and S letters on the
/// first |λ| strands of B_{a,r}.
pub fn hecke_generator(b: &BrauerAlgebra, lambda: &Multipartition, flavor: Flavor) -> Result<BrauerElement> {
    let prefix = dot_prefix(b, lambda, flavor)?;
    b.mul(&prefix, &row_sum(b, lambda, flavor == Flavor::N)?)
}

#[derive(Clone, Debug)]
pub struct CellIndex {
    pub label: usize,
    pub s: usize,
    pub t: usize,
}

/// The weakly cellular basis C_{(s,ξ,e),(t,η,d)} with the change-of-basis data.
pub struct BrauerCellular<'b> {
    pub alg: &'b BrauerAlgebra,
    /// Labels with higher strata first.
    pub labels: Vec<CellLabel>,
    pub deltas: Vec<Vec<DeltaIndex>>,
    pub index: Vec<CellIndex>,
    pub elements: Vec<BrauerElement>,
    position: HashMap<(usize, usize, usize), usize>,
    inverse: Option<Mat>,
    rank: usize,
}

impl<'b> BrauerCellular<'b> {
    /// Builds every basis element and records its exact rank.
    pub fn new(alg: &'b BrauerAlgebra) -> Result<Self> {
        let r = alg.r();
        let labels = cell_labels(alg.a(), r);
        let mut deltas = Vec::new();
        let mut index = Vec::new();
        let mut elements = Vec::new();
        let mut position = HashMap::new();
        for (li, (f, lambda)) in labels.iter().enumerate() {
            let delta = enumerate_delta(*f, lambda, r)?;
            let gen = hecke_generator(alg, lambda, Flavor::N)?;
            let ef = alg.word(&e_power_word(r, *f))?;
            let core = alg.mul(&ef, &gen)?;
            let lefts: Vec<BrauerElement> = delta
                .iter()
                .map(|x| {
                    let mut w = perm_word(&x.d.inverse());
                    w.extend(dot_word(r, &x.xi));
                    w.extend(perm_word(&x.t.d().inverse()));
                    alg.mul(&alg.word(&w)?, &core)
                })
                .collect::<Result<_>>()?;
            for (si, left) in lefts.iter().enumerate() {
                for (ti, y) in delta.iter().enumerate() {
                    let mut w = perm_word(&y.t.d());
                    w.extend(dot_word(r, &y.xi));
                    w.extend(perm_word(&y.d));
                    position.insert((li, si, ti), elements.len());
                    index.push(CellIndex { label: li, s: si, t: ti });
                    elements.push(alg.act_word(left, &w)?);
                }
            }
            deltas.push(delta);
        }
        let n = alg.dim();
        let mut m = linalg::zeros(elements.len(), n);
        for (i, e) in elements.iter().enumerate() {
            for (j, c) in alg.to_vector(e) {
                m[i][j] = c;
            }
        }
        let rank = linalg::rank(&m);
        let inverse = if elements.len() == n { linalg::inverse(&m) } else { None };
        Ok(BrauerCellular { alg, labels, deltas, index, elements, position, inverse, rank })
    }

    /// Exact rank of the basis elements inside the normal-form space.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Rank of the basis modulo a subspace (the relation space of a presentation).
    pub fn rank_modulo(&self, relations: &Echelon) -> usize {
        let mut span = relations.clone();
        let base = span.dim();
        for e in &self.elements {
            span.insert(&self.alg.to_vector(e));
        }
        span.dim() - base
    }

    fn inverse(&self) -> Result<&Mat> {
        self.inverse
            .as_ref()
            .ok_or_else(|| Error::Verification(format!("weakly cellular basis has rank {} < {}", self.rank, self.alg.dim())))
    }

    pub fn label_index(&self, label: &CellLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element(&self, label: usize, s: usize, t: usize) -> &BrauerElement {
        &self.elements[self.position[&(label, s, t)]]
    }

    pub fn cell_dim(&self, label: usize) -> usize {
        self.deltas[label].len()
    }

    /// Coordinates in the cellular basis.
    pub fn expand(&self, x: &BrauerElement) -> Result<Vec<Q>> {
        let inv = self.inverse()?;
        let mut out = vec![zero(); self.elements.len()];
        for (j, c) in self.alg.to_vector(x) {
            for (k, y) in inv[j].iter().enumerate() {
                if !y.is_zero() {
                    out[k] += &c * y;
                }
            }
        }
        Ok(out)
    }

    /// Strictly higher stratum: (f',λ') ⊵ (f,λ) and different.
    pub fn is_higher(&self, mu: usize, lambda: usize) -> bool {
        mu != lambda && stratum_ge(&self.labels[mu], &self.labels[lambda])
    }

    /// Right action of a word on C(f,λ), computed from row `s` of the cell;
    /// fails when a term outside that row lies in a stratum not strictly higher.
    pub fn cell_action_from_row(&self, label: usize, s: usize, word: &[Letter]) -> Result<Mat> {
        let k = self.cell_dim(label);
        let mut out = linalg::zeros(k, k);
        for t in 0..k {
            let img = self.alg.act_word(self.element(label, s, t), word)?;
            for (pos, c) in self.expand(&img)?.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let ix = &self.index[pos];
                if ix.label == label && ix.s == s {
                    out[t][ix.t] = c;
                } else if !self.is_higher(ix.label, label) {
                    return Err(Error::Verification(format!(
                        "cell triangularity fails for {:?} under {word:?}: term in {:?}",
                        self.labels[label], self.labels[ix.label]
                    )));
                }
            }
        }
        Ok(out)
    }

    pub fn cell_action(&self, label: usize, word: &[Letter]) -> Result<Mat> {
        self.cell_action_from_row(label, 0, word)
    }

    /// Generating letters S_i, E_i, X_1 in a fixed order.
    pub fn generator_words(&self) -> Vec<Vec<Letter>> {
        let r = self.alg.r();
        let mut out: Vec<Vec<Letter>> = (1..r).map(|i| vec![Letter::S(i)]).collect();
        out.extend((1..r).map(|i| vec![Letter::E(i)]));
        out.push(vec![Letter::X(1)]);
        out
    }

    pub fn cell_generator_actions(&self, label: usize) -> Result<Vec<Mat>> {
        self.generator_words().iter().map(|w| self.cell_action(label, w)).collect()
    }

    /// φ(y, y'): coefficient of C_{x0,x0} in C_{x0,y} C_{y',x0}.
    pub fn gram(&self, label: usize) -> Result<Mat> {
        let k = self.cell_dim(label);
        let target = self.position[&(label, 0, 0)];
        let inv = self.inverse()?;
        let mut g = linalg::zeros(k, k);
        for y in 0..k {
            for y2 in 0..k {
                let prod = self.alg.mul(self.element(label, 0, y), self.element(label, y2, 0))?;
                let mut c = zero();
                for (j, x) in self.alg.to_vector(&prod) {
                    c += &x * &inv[j][target];
                }
                g[y][y2] = c;
            }
        }
        Ok(g)
    }

    /// τ applied to each basis element, compared with the transposed element
    /// modulo strictly higher strata. The cell spans are τ-stable when every
    /// image stays inside its own stratum plus higher ones; the basis is
    /// strictly cellular when moreover τ(C_st) ≡ C_ts.
    pub fn tau_report(&self) -> Result<TauReport> {
        let mut report = TauReport { spans_stable: true, strictly_cellular: true };
        for (pos, ix) in self.index.iter().enumerate() {
            let img = self.expand(&self.alg.tau(&self.elements[pos])?)?;
            for (k, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let jx = &self.index[k];
                if jx.label == ix.label {
                    let expected = jx.s == ix.t && jx.t == ix.s;
                    if !expected || !c.is_one() {
                        report.strictly_cellular = false;
                    }
                } else if !self.is_higher(jx.label, ix.label) {
                    report.spans_stable = false;
                    report.strictly_cellular = false;
                }
            }
            if img[self.position[&(ix.label, ix.t, ix.s)]].is_zero() {
                report.strictly_cellular = false;
            }
        }
        Ok(report)
    }

    /// dim D(f,λ) as the Gram rank.
    pub fn simple_dim(&self, label: usize) -> Result<usize> {
        Ok(linalg::rank(&self.gram(label)?))
    }
}

/// Outcome of [`BrauerCellular::tau_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauReport {
    pub spans_stable: bool,
    pub strictly_cellular: bool,
}

/// The two-sided ideal ⟨E^f⟩ as a subspace, closed under left and right
/// multiplication by generators (left multiplication through τ).
pub fn e_ideal(alg: &BrauerAlgebra, f: usize) -> Result<Echelon> {
    let r = alg.r();
    let mut space = Echelon::new();
    if 2 * f > r {
        return Ok(space);
    }
    let start = alg.word(&e_power_word(r, f))?;
    let mut letters: Vec<Letter> = (1..r).flat_map(|i| [Letter::S(i), Letter::E(i)]).collect();
    letters.extend((1..=r).map(Letter::X));
    let v = alg.to_vector(&start);
    if !space.insert(&v) {
        return Ok(space);
    }
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        let tx = alg.tau(&x)?;
        for &g in &letters {
            let right = alg.act_word(&x, &[g])?;
            let left = alg.tau(&alg.act_word(&tx, &[g])?)?;
            for y in [right, left] {
                let w = alg.to_vector(&y);
                let red = space.reduce(&w);
                if !red.is_empty() {
                    space.insert_reduced(red);
                    queue.push(y);
                }
            }
        }
    }
    Ok(space)
}

/// S^{f,λ} = E^f m_λ w_λ n_λ' B modulo ⟨E^{f+1}⟩, with the spanning vectors
/// E^f m_λ w_λ n_λ' d(t) X^ξ d for (t, ξ, d) ∈ δ(f, λ').
pub struct WallModule {
    pub vectors: Vec<BrauerElement>,
    pub rank: usize,
    /// Generator actions (S_i, E_i, X_1 order) in the basis `vectors`.
    pub actions: Vec<Mat>,
}

pub fn wall_module(alg: &BrauerAlgebra, f: usize, lambda: &Multipartition) -> Result<WallModule> {
    let r = alg.r();
    let conj = lambda.conjugate();
    let ideal = e_ideal(alg, f + 1)?;
    let mut head = alg.word(&e_power_word(r, f))?;
    head = alg.mul(&head, &hecke_generator(alg, lambda, Flavor::M)?)?;
    head = alg.mul(&head, &alg.word(&perm_word(&w_lambda(lambda)))?)?;
    head = alg.mul(&head, &hecke_generator(alg, &conj, Flavor::N)?)?;
    let delta = enumerate_delta(f, &conj, r)?;
    let mut vectors = Vec::new();
    for x in &delta {
        let mut w = perm_word(&x.t.d());
        w.extend(dot_word(r, &x.xi));
        w.extend(perm_word(&x.d));
        vectors.push(alg.act_word(&head, &w)?);
    }
    let reduced: Vec<Vec<Q>> =
        vectors.iter().map(|v| linalg::to_dense(&ideal.reduce(&alg.to_vector(v)), alg.dim())).collect();
    let rank = linalg::rank(&reduced);
    let mut actions = Vec::new();
    if rank == vectors.len() {
        // Solve in coordinates modulo the ideal: stack reduced vectors with the ideal rows.
        let basis_t = linalg::transpose(&reduced);
        let gens: Vec<Vec<Letter>> = {
            let mut g: Vec<Vec<Letter>> = (1..r).map(|i| vec![Letter::S(i)]).collect();
            g.extend((1..r).map(|i| vec![Letter::E(i)]));
            g.push(vec![Letter::X(1)]);
            g
        };
        for g in gens {
            let mut m = Vec::new();
            for v in &vectors {
                let img = alg.act_word(v, &g)?;
                let red = linalg::to_dense(&ideal.reduce(&alg.to_vector(&img)), alg.dim());
                let c = linalg::solve(&basis_t, &red).ok_or_else(|| {
                    Error::Verification("S^{f,λ} spanning set is not closed modulo the ideal".into())
                })?;
                m.push(c);
            }
            actions.push(m);
        }
    }
    Ok(WallModule { vectors, rank, actions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::generic_dimension;
    use crate::hecke::cellular::find_isomorphism;
    use crate::rational::{q, qr};

    #[test]
    fn basis_has_full_rank_and_triangular_cells() {
        for (a, r, u) in [(1usize, 3usize, vec![q(2)]), (2, 2, vec![q(1), qr(-1, 3)]), (2, 3, vec![q(0), qr(1, 2)])] {
            let b = BrauerAlgebra::new(a, r, u).unwrap();
            let c = BrauerCellular::new(&b).unwrap();
            assert_eq!(c.rank(), generic_dimension(a, r));
            for l in 0..c.labels.len() {
                let base = c.cell_generator_actions(l).unwrap();
                // the action does not depend on the row used
                for s in 1..c.cell_dim(l) {
                    for (g, m) in c.generator_words().iter().zip(&base) {
                        assert_eq!(&c.cell_action_from_row(l, s, g).unwrap(), m);
                    }
                }
                let g = c.gram(l).unwrap();
                assert_eq!(g, linalg::transpose(&g), "{:?}", c.labels[l]);
            }
        }
    }

    #[test]
    fn generic_parameters_are_semisimple() {
        let b = BrauerAlgebra::new(2, 2, vec![qr(1, 3), qr(7, 5)]).unwrap();
        let c = BrauerCellular::new(&b).unwrap();
        for l in 0..c.labels.len() {
            assert_eq!(c.simple_dim(l).unwrap(), c.cell_dim(l), "{:?}", c.labels[l]);
        }
    }

    #[test]
    fn wall_module_matches_dual_cell_module() {
        let b = BrauerAlgebra::new(2, 2, vec![q(1), qr(-1, 3)]).unwrap();
        let c = BrauerCellular::new(&b).unwrap();
        for (f, lambda) in cell_labels(2, 2) {
            let s = wall_module(&b, f, &lambda).unwrap();
            let l = c.label_index(&(f, lambda.conjugate())).unwrap();
            assert_eq!(s.rank, c.cell_dim(l), "f={f} {lambda:?}");
            let a = c.cell_generator_actions(l).unwrap();
            assert!(find_isomorphism(&a, &s.actions).is_some(), "f={f} {lambda:?}");
        }
    }

    #[test]
    fn cell_spans_are_tau_stable() {
        for (a, r, u) in [(1usize, 3usize, vec![q(2)]), (2, 2, vec![q(1), qr(-1, 3)]), (2, 3, vec![q(1), q(0)])] {
            let b = BrauerAlgebra::new(a, r, u).unwrap();
            let rep = BrauerCellular::new(&b).unwrap().tau_report().unwrap();
            assert!(rep.spans_stable);
        }
    }
}
