//! The vectors v_{t,ξ,d} = v_λ E^f w_λ n_[λ'] d(t) X^ξ d and their
//! verification: weight, leading term, 𝔫⁺-annihilation modulo the image of
//! ⟨E^{f+1}⟩, independence, and the dimension of the singular space. Also
//! the operator-level checks of the algebra action on the truncated module.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::module::{Term, TensorModule, TensorVector};
use super::vectors::{build_vector_data, build_y_operators, permute_indices, VectorData};
use crate::brauer::cellular::{dot_prefix, dot_word, e_power_word, perm_word, row_sum};
use crate::brauer::{generic_dimension, BrauerAlgebra, BrauerElement, Letter};
use crate::combinat::{cell_labels, enumerate_delta, DeltaIndex, Multipartition};
use crate::error::{Error, Result};
use crate::hecke::cellular::{w_lambda, Flavor};
use crate::linalg::{Echelon, SVec};
use crate::rational::Q;
use crate::weights::{
    annihilated_layer, annihilator_degree, compute_u_params, flag_membership, hat_lambda, HighestWeightConfig, RootType,
    Weight,
};

/// The truncated module M ⊗ V^{⊗r} together with the algebra acting on it.
pub struct TensorSetting {
    pub module: TensorModule,
    pub algebra: BrauerAlgebra,
    pub r: usize,
}

impl TensorSetting {
    /// Builds the setting with the default truncation bound r(a−1) + r.
    pub fn new(cfg: HighestWeightConfig, r: usize) -> Result<Self> {
        let bound = TensorModule::default_bound(&cfg, r);
        Self::with_bound(cfg, r, bound)
    }

    pub fn with_bound(cfg: HighestWeightConfig, r: usize, bound: usize) -> Result<Self> {
        let u = compute_u_params(&cfg)?;
        let algebra = BrauerAlgebra::new(cfg.datum.level(), r, u)?;
        let module = TensorModule::new(cfg, bound)?;
        Ok(TensorSetting { module, algebra, r })
    }

    pub fn cfg(&self) -> &HighestWeightConfig {
        &self.module.cfg
    }

    /// m ⊗ v_k for every k ∈ N^r, in lexicographic order of k.
    pub fn highest_tensors(&self) -> Vec<TensorVector> {
        let idx = self.module.lie.indices();
        let mut seqs: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.r {
            seqs = seqs
                .into_iter()
                .flat_map(|s| {
                    idx.iter().map(move |&k| {
                        let mut s = s.clone();
                        s.push(k);
                        s
                    })
                })
                .collect();
        }
        seqs.iter().map(|s| self.module.highest_tensor(s)).collect()
    }

    /// v_λ = m ⊗ v_{i_λ} ⊗ (v_1 ⊗ v_{−1})^{⊗f}.
    pub fn v_lambda(&self, f: usize, data: &VectorData) -> TensorVector {
        let mut tensor = data.i_lambda.clone();
        for _ in 0..f {
            tensor.extend([1, -1]);
        }
        self.module.highest_tensor(&tensor)
    }

    /// v_λ E^f w_λ n_[λ'], the common prefix of every v_{t,ξ,d}.
    pub fn singular_seed(&self, f: usize, lambda: &Multipartition) -> Result<TensorVector> {
        let data = build_vector_data(self.cfg(), self.r, f, lambda)?;
        let m = &self.module;
        let mut v = self.v_lambda(f, &data);
        v = m.act_word(&e_power_word(self.r, f), &v)?;
        v = m.act_word(&perm_word(&w_lambda(lambda)), &v)?;
        let n = self.twisted_generator(&lambda.conjugate())?;
        m.act_algebra_element(&n, |b| self.algebra.monomial_word(b), &v)
    }

    /// n_μ = π̃_[μ] y_μ, except that in type C the row sum is unsigned: there
    /// S_i acts as minus the flip, so the sign-twisted sum is the one that
    /// antisymmetrises tensor factors as y_μ does in types B and D.
    pub fn twisted_generator(&self, mu: &Multipartition) -> Result<BrauerElement> {
        let signed = self.cfg().datum.phi != RootType::C;
        let prefix = dot_prefix(&self.algebra, mu, Flavor::N)?;
        self.algebra.mul(&prefix, &row_sum(&self.algebra, mu, signed)?)
    }

    /// v_{t,ξ,d} for a triple (t, ξ, d) ∈ δ(f, λ').
    pub fn singular_vector(&self, f: usize, lambda: &Multipartition, idx: &DeltaIndex) -> Result<TensorVector> {
        let seed = self.singular_seed(f, lambda)?;
        self.finish_vector(&seed, idx)
    }

    fn finish_vector(&self, seed: &TensorVector, idx: &DeltaIndex) -> Result<TensorVector> {
        let mut word = perm_word(&idx.t.d());
        word.extend(dot_word(self.r, &idx.xi));
        word.extend(perm_word(&idx.d));
        self.module.act_word(&word, seed)
    }

    /// All v_{t,ξ,d} for (t, ξ, d) ∈ δ(f, λ').
    pub fn singular_vectors(&self, f: usize, lambda: &Multipartition) -> Result<Vec<(DeltaIndex, TensorVector)>> {
        let seed = self.singular_seed(f, lambda)?;
        enumerate_delta(f, &lambda.conjugate(), self.r)?
            .into_iter()
            .map(|idx| {
                let v = self.finish_vector(&seed, &idx)?;
                Ok((idx, v))
            })
            .collect()
    }

    /// The span of M_μ · E^{f+1} · B inside the μ-weight space; empty when
    /// 2(f+1) > r.
    pub fn ideal_image(&self, mu: &Weight, f: usize, coords: &mut TermIndex) -> Result<Echelon> {
        let mut span = Echelon::new();
        if 2 * (f + 1) > self.r {
            return Ok(span);
        }
        let e_word = e_power_word(self.r, f + 1);
        let generators = self.generator_letters();
        let mut queue = Vec::new();
        for t in self.module.weight_space(mu, self.r) {
            let v = self.module.act_word(&e_word, &TensorVector::monomial(t))?;
            if span.insert(&coords.sparse(&v)) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for &g in &generators {
                let w = self.module.act_letter(g, &v)?;
                if span.insert(&coords.sparse(&w)) {
                    queue.push(w);
                }
            }
        }
        Ok(span)
    }

    fn generator_letters(&self) -> Vec<Letter> {
        let r = self.r;
        let mut out: Vec<Letter> = (1..r).flat_map(|i| [Letter::S(i), Letter::E(i)]).collect();
        out.extend((1..=r).map(Letter::X));
        out
    }

    /// Checks every claim about the vectors v_{t,ξ,d} of label (f, λ).
    pub fn verify_singular(&self, f: usize, lambda: &Multipartition) -> Result<SingularReport> {
        let weight = hat_lambda(self.cfg(), self.r, f, lambda)?;
        let vectors = self.singular_vectors(f, lambda)?;
        let expected = vectors.len();
        let mut coords = TermIndex::default();
        let ideal = self.ideal_image(&weight, f, &mut coords)?;
        let mut wrong_weight = Vec::new();
        let mut residues = Vec::new();
        for (idx, v) in &vectors {
            if v.is_zero() || self.module.weight_of(v).as_ref() != Some(&weight) {
                wrong_weight.push(describe(idx));
            }
            residues.push(ideal.reduce(&coords.sparse(v)));
        }
        let independent_rank = sparse_rank(&residues);

        let mut annihilation_failures = Vec::new();
        let raising = self.module.lie.raising();
        let mut ideals: BTreeMap<Vec<Q>, Echelon> = BTreeMap::new();
        for &x in &raising {
            let target = &weight + &self.module.lie.weight(x);
            if !ideals.contains_key(&target.0) {
                let span = self.ideal_image(&target, f, &mut coords)?;
                ideals.insert(target.0.clone(), span);
            }
            let span = &ideals[&target.0];
            for (idx, v) in &vectors {
                let xv = self.module.act_lie(x, v)?;
                if !span.contains(&coords.sparse(&xv)) {
                    let (a, b) = self.module.lie.basis[x];
                    annihilation_failures.push(format!("f_{{{a},{b}}} on {}", describe(idx)));
                }
            }
        }
        let singular_dim = self.singular_space_dim(&weight, f, &ideal, &mut coords)?;
        let leading_term_failures = self.leading_term_failures(f, lambda, &vectors)?;
        Ok(SingularReport {
            f,
            lambda: lambda.to_vecs(),
            weight,
            expected,
            independent_rank,
            singular_space_dim: singular_dim,
            wrong_weight,
            annihilation_failures,
            leading_term_failures,
        })
    }

    /// dim of {v̄ ∈ (M_μ / I_μ) : e v ∈ I for each simple root vector e}.
    fn singular_space_dim(&self, mu: &Weight, f: usize, ideal: &Echelon, coords: &mut TermIndex) -> Result<usize> {
        let pivots: std::collections::BTreeSet<usize> = ideal.pivot_columns().collect();
        let space: Vec<Term> = self
            .module
            .weight_space(mu, self.r)
            .into_iter()
            .filter(|t| !pivots.contains(&coords.index(t)))
            .collect();
        let mut rows: Vec<SVec> = vec![SVec::new(); space.len()];
        let mut offset = 0usize;
        for x in self.simple_raising() {
            let target = mu + &self.module.lie.weight(x);
            let span = self.ideal_image(&target, f, coords)?;
            let mut columns = ColumnIndex::default();
            for (row, t) in space.iter().enumerate() {
                let xv = self.module.act_lie(x, &TensorVector::monomial(t.clone()))?;
                for (c, val) in span.reduce(&coords.sparse(&xv)) {
                    rows[row].insert(offset + columns.index_of(c), val);
                }
            }
            offset += columns.len();
        }
        let rank = sparse_rank(&rows);
        Ok(space.len() - rank)
    }

    /// Lie-basis positions of the raising root vectors attached to simple roots.
    fn simple_raising(&self) -> Vec<usize> {
        let simple = self.module.parabolic.simple_roots();
        self.module.lie.raising().into_iter().filter(|&x| simple.contains(&self.module.lie.weight(x))).collect()
    }

    /// For ξ with every entry a−1: the basis vector ỹ_{λ,ξ} m ⊗ v_{j^{λ,ξ} d(t) d},
    /// with ỹ the top-degree PBW monomial of y_{λ,ξ}, occurs in v_{s,ξ,d'}
    /// exactly when (s, d') = (t, d).
    fn leading_term_failures(
        &self,
        f: usize,
        lambda: &Multipartition,
        vectors: &[(DeltaIndex, TensorVector)],
    ) -> Result<Vec<String>> {
        let a = self.cfg().datum.level();
        let data = build_vector_data(self.cfg(), self.r, f, lambda)?;
        let top = data.a.iter().sum::<usize>() + f * (a - 1);
        let mut failures = Vec::new();
        for (idx, _) in vectors.iter().filter(|(idx, _)| idx.xi.iter().all(|&x| x == a - 1)) {
            let (word, target) = build_y_operators(self.cfg(), self.r, f, lambda, &idx.xi)?;
            let ym = self.module.act_root_word(&word, &self.module.highest_tensor(&[]))?;
            let top_terms: Vec<&Term> = ym.keys().filter(|t| t.degree() == top).collect();
            let [leading] = top_terms.as_slice() else {
                failures.push(format!("straightened y has {} top terms for {}", top_terms.len(), describe(idx)));
                continue;
            };
            let moved = permute_indices(&permute_indices(&target, &idx.t.d()), &idx.d);
            let term = Term { pbw: leading.pbw.clone(), tensor: moved };
            for (other, v) in vectors.iter().filter(|(o, _)| o.xi == idx.xi) {
                let present = !v.coeff(&term).is_zero();
                let same = other.t == idx.t && other.d == idx.d;
                if same != present {
                    failures.push(format!(
                        "leading term of {} {} in {}",
                        describe(idx),
                        if present { "present" } else { "absent" },
                        describe(other)
                    ));
                }
            }
        }
        Ok(failures)
    }

    /// Rank of the map B → End(M ⊗ V^{⊗r}), tested on the generators m ⊗ v_k.
    pub fn endomorphism_rank(&self) -> Result<usize> {
        let tensors = self.highest_tensors();
        let mut coords = TermIndex::default();
        let mut rows = Vec::new();
        for b in self.algebra.basis() {
            let word = self.algebra.monomial_word(b);
            let mut row = SVec::new();
            let mut shift = 0usize;
            for v in &tensors {
                let w = self.module.act_word(&word, v)?;
                for (t, c) in w.iter() {
                    row.insert(shift + coords.index(t), c.clone());
                }
                shift += 1 << 40;
            }
            rows.push(row);
        }
        Ok(sparse_rank(&rows))
    }

    /// Relators (with relation (5) up to `max_k`) that fail on some m ⊗ v_k.
    pub fn relation_audit(&self, max_k: usize) -> Result<Vec<String>> {
        let tensors = self.highest_tensors();
        let mut failures = Vec::new();
        for rel in self.algebra.relators(max_k) {
            for v in &tensors {
                let mut sum = TensorVector::zero();
                for (c, word) in &rel.terms {
                    sum.add_scaled(&self.module.act_word(word, v)?, c);
                }
                if !sum.is_zero() {
                    let k: Vec<i64> = v.keys().next().map(|t| t.tensor.clone()).unwrap_or_default();
                    failures.push(format!("{} on m ⊗ v_{k:?}", rel.name));
                    break;
                }
            }
        }
        Ok(failures)
    }

    /// ∏_{j ≤ l} (X_1 − u_j) kills m ⊗ v_s whenever v_s lies in the predicted
    /// flag layer; returns the violations (l, s).
    pub fn first_tensor_annihilation(&self) -> Result<Vec<(usize, i64)>> {
        let datum = &self.cfg().datum;
        let u = self.algebra.u().to_vec();
        let mut failures = Vec::new();
        for s in self.module.lie.indices() {
            let mut tensor = vec![1i64; self.r];
            tensor[0] = s;
            let mut v = self.module.highest_tensor(&tensor);
            for l in 1..=annihilator_degree(datum) {
                let xv = self.module.act_x(1, &v)?;
                v = xv.sub(&v.scaled(&u[l - 1]));
                if flag_membership(datum, s)? <= annihilated_layer(datum, l) && !v.is_zero() {
                    failures.push((l, s));
                }
            }
        }
        Ok(failures)
    }

    /// Every label (f, λ) of the algebra.
    pub fn labels(&self) -> Vec<(usize, Multipartition)> {
        cell_labels(self.algebra.a(), self.r)
    }
}

/// A stable numbering of basis terms for sparse linear algebra.
#[derive(Default)]
pub struct TermIndex {
    map: BTreeMap<Term, usize>,
}

impl TermIndex {
    pub fn index(&mut self, t: &Term) -> usize {
        let next = self.map.len();
        *self.map.entry(t.clone()).or_insert(next)
    }

    pub fn sparse(&mut self, v: &TensorVector) -> SVec {
        v.iter().map(|(t, c)| (self.index(t), c.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Compact renumbering of plain column indices.
#[derive(Default)]
struct ColumnIndex {
    map: BTreeMap<usize, usize>,
}

impl ColumnIndex {
    fn index_of(&mut self, c: usize) -> usize {
        let next = self.map.len();
        *self.map.entry(c).or_insert(next)
    }

    fn len(&self) -> usize {
        self.map.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularReport {
    pub f: usize,
    pub lambda: Vec<Vec<usize>>,
    pub weight: Weight,
    /// |δ(f, λ')|.
    pub expected: usize,
    /// Rank of the vectors modulo the ideal image.
    pub independent_rank: usize,
    /// Dimension of the space of singular vectors of weight λ̂ in the quotient.
    pub singular_space_dim: usize,
    pub wrong_weight: Vec<String>,
    pub annihilation_failures: Vec<String>,
    pub leading_term_failures: Vec<String>,
}

impl SingularReport {
    pub fn passed(&self) -> bool {
        self.independent_rank == self.expected
            && self.singular_space_dim == self.expected
            && self.wrong_weight.is_empty()
            && self.annihilation_failures.is_empty()
            && self.leading_term_failures.is_empty()
    }
}

/// Runs [`TensorSetting::verify_singular`] on every label.
pub fn verify_all(setting: &TensorSetting) -> Result<Vec<SingularReport>> {
    setting.labels().iter().map(|(f, lambda)| setting.verify_singular(*f, lambda)).collect()
}

/// Guards the expensive checks: k = 1 and r ≤ 2 unless `force` is set.
pub fn check_micro_scale(cfg: &HighestWeightConfig, r: usize, force: bool) -> Result<()> {
    if force || (cfg.datum.k() == 1 && r <= 2) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "singular-vector verification is limited to k = 1, r ≤ 2 (got k = {}, r = {r})",
            cfg.datum.k()
        )))
    }
}

/// a^r (2r−1)!!: the rank the endomorphism map must reach.
pub fn expected_endomorphism_rank(a: usize, r: usize) -> usize {
    generic_dimension(a, r)
}

fn describe(idx: &DeltaIndex) -> String {
    format!("t={:?}, ξ={:?}, d={:?}", idx.t.entries(), idx.xi, idx.d.images())
}

fn sparse_rank(rows: &[SVec]) -> usize {
    let mut e = Echelon::new();
    rows.iter().filter(|r| e.insert(r)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use crate::weights::{RootDatum, RootType};

    fn micro(phi: RootType, n: usize, p: Vec<usize>, i: usize, c: Vec<Q>, r: usize) -> TensorSetting {
        let d = RootDatum::new_for_dictionary(phi, n, p, i).unwrap();
        TensorSetting::new(HighestWeightConfig::new(d, c).unwrap(), r).unwrap()
    }

    fn d4(r: usize) -> TensorSetting {
        micro(RootType::D, 4, vec![4], 1, vec![qr(-7, 3)], r)
    }

    #[test]
    fn one_box_in_the_first_component_is_a_basis_vector() {
        let s = d4(1);
        let lambda = Multipartition::from_vecs(&[vec![1], vec![]]).unwrap();
        let vs = s.singular_vectors(0, &lambda).unwrap();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].1, s.module.highest_tensor(&[1]));
    }

    #[test]
    fn micro_scale_singular_vectors() {
        let s = d4(2);
        for (f, lambda) in s.labels() {
            let rep = s.verify_singular(f, &lambda).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn algebra_acts_faithfully_and_satisfies_its_relations() {
        let s = d4(2);
        assert_eq!(s.endomorphism_rank().unwrap(), expected_endomorphism_rank(2, 2));
        assert!(s.relation_audit(4).unwrap().is_empty());
    }

    #[test]
    fn first_tensor_annihilation_at_micro_scale() {
        let s = micro(RootType::D, 2, vec![2], 1, vec![qr(1, 3)], 1);
        assert!(s.first_tensor_annihilation().unwrap().is_empty());
        let s = micro(RootType::C, 2, vec![2], 1, vec![qr(2, 5)], 1);
        assert!(s.first_tensor_annihilation().unwrap().is_empty());
        let s = micro(RootType::B, 2, vec![2], 2, vec![q(0)], 1);
        assert!(s.first_tensor_annihilation().unwrap().is_empty());
    }

    #[test]
    fn micro_scale_singular_vectors_in_other_types() {
        for (phi, i, c) in [
            (RootType::C, 1, vec![qr(-7, 3)]),
            (RootType::C, 2, vec![q(0)]),
            (RootType::D, 2, vec![q(0)]),
            (RootType::B, 2, vec![q(0)]),
        ] {
            let s = micro(phi, 4, vec![4], i, c, 2);
            for (f, lambda) in s.labels() {
                let rep = s.verify_singular(f, &lambda).unwrap();
                assert!(rep.passed(), "{phi:?} i={i}: {rep:?}");
            }
            let a = s.algebra.a();
            assert_eq!(s.endomorphism_rank().unwrap(), expected_endomorphism_rank(a, 2));
            assert!(s.relation_audit(a + 2).unwrap().is_empty());
        }
    }

    #[test]
    fn literal_row_sum_is_not_singular_in_type_c() {
        let s = micro(RootType::C, 4, vec![4], 1, vec![qr(-7, 3)], 2);
        let lambda = Multipartition::from_vecs(&[vec![1, 1], vec![]]).unwrap();
        let data = build_vector_data(s.cfg(), 2, 0, &lambda).unwrap();
        let mut v = s.v_lambda(0, &data);
        v = s.module.act_word(&perm_word(&w_lambda(&lambda)), &v).unwrap();
        let n = crate::brauer::cellular::hecke_generator(&s.algebra, &lambda.conjugate(), Flavor::N).unwrap();
        let v = s.module.act_algebra_element(&n, |b| s.algebra.monomial_word(b), &v).unwrap();
        let killed = s.module.lie.raising().into_iter().all(|x| s.module.act_lie(x, &v).unwrap().is_zero());
        assert!(!killed);
    }

    #[test]
    fn weight_spaces_sit_below_the_predicted_degree() {
        let s = d4(2);
        let a = s.algebra.a();
        for (f, lambda) in s.labels() {
            let data = build_vector_data(s.cfg(), 2, f, &lambda).unwrap();
            let bound = data.a.iter().sum::<usize>() + f * (a - 1);
            let mu = hat_lambda(s.cfg(), 2, f, &lambda).unwrap();
            let space = s.module.weight_space(&mu, 2);
            assert!(!space.is_empty());
            assert!(space.iter().all(|t| t.degree() <= bound));
        }
    }

    #[test]
    fn dots_on_low_degree_vectors_drop_degree() {
        let s = micro(RootType::D, 4, vec![4], 1, vec![qr(-7, 3)], 1);
        let datum = &s.cfg().datum;
        for k in s.module.lie.indices() {
            let deg = crate::tensoro::vectors::doubled_degree(datum, k) / 2;
            let mut v = s.module.highest_tensor(&[k]);
            for t in 1..=s.module.bound {
                v = s.module.act_x(1, &v).unwrap();
                if deg < t {
                    assert!(v.keys().all(|term| term.degree() < t), "k={k} t={t}");
                }
            }
        }
    }
}
