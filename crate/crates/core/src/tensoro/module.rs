//! The degree-truncated module M^p(λ_{I,c}) ⊗ V^{⊗s} in the PBW basis
//! f^l m ⊗ v_k, with the 𝔤-action and the operators X_j, S_i, E_i.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::lie::{LieAlgebra, LieElement, RootKind};
use crate::brauer::{BrauerElement, Letter};
use crate::error::{input, Error, Result};
use crate::lincomb::LinComb;
use crate::rational::{q, qr, Q};
use crate::weights::{HighestWeightConfig, Parabolic, RootType, Weight};

/// A PBW monomial of U(𝔲⁻): ranks in ℬ_I, weakly decreasing (the largest
/// factor first), so a repeated rank is an exponent.
pub type Pbw = Vec<u8>;

/// A basis vector f^l m ⊗ v_{k_1} ⊗ ⋯ ⊗ v_{k_s}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub pbw: Pbw,
    pub tensor: Vec<i64>,
}

impl Term {
    pub fn degree(&self) -> usize {
        self.pbw.len()
    }
}

/// An element of the truncated module.
pub type TensorVector = LinComb<Term>;

/// M^p(λ_{I,c}) ⊗ V^{⊗s}, truncated at PBW degree `bound`.
pub struct TensorModule {
    pub lie: LieAlgebra,
    pub cfg: HighestWeightConfig,
    pub parabolic: Parabolic,
    /// Degree bound D; exceeding it is an error.
    pub bound: usize,
    kinds: Vec<RootKind>,
    /// ℬ_I in increasing order, as Lie-basis positions.
    lowering: Vec<usize>,
    /// f_{a,b} for every pair of indices (used by Ω).
    pair_elements: HashMap<(i64, i64), LieElement>,
    verma_cache: Mutex<HashMap<(usize, Pbw), LinComb<Pbw>>>,
}

impl TensorModule {
    pub fn new(cfg: HighestWeightConfig, bound: usize) -> Result<Self> {
        let parabolic = cfg.parabolic();
        let lie = LieAlgebra::new(cfg.datum.phi, cfg.datum.n)?;
        let (kinds, lowering) = lie.classify(&parabolic);
        if lowering.len() > u8::MAX as usize {
            return input("𝔲⁻ is too large for the truncated module");
        }
        let idx = lie.indices();
        let mut pair_elements = HashMap::new();
        for &a in &idx {
            for &b in &idx {
                pair_elements.insert((a, b), lie.element(a, b)?);
            }
        }
        Ok(TensorModule {
            lie,
            cfg,
            parabolic,
            bound,
            kinds,
            lowering,
            pair_elements,
            verma_cache: Mutex::new(HashMap::new()),
        })
    }

    /// The default bound D = s(a − 1) + s for s tensor factors.
    pub fn default_bound(cfg: &HighestWeightConfig, s: usize) -> usize {
        s * (cfg.datum.level() - 1) + s
    }

    pub fn lowering_basis(&self) -> &[usize] {
        &self.lowering
    }

    pub fn kind(&self, x: usize) -> RootKind {
        self.kinds[x]
    }

    /// m ⊗ v_k.
    pub fn highest_tensor(&self, tensor: &[i64]) -> TensorVector {
        TensorVector::monomial(Term { pbw: Vec::new(), tensor: tensor.to_vec() })
    }

    /// Weight of a basis vector.
    pub fn term_weight(&self, t: &Term) -> Weight {
        let mut w = self.cfg.lambda.clone();
        for &p in &t.pbw {
            w = &w + &self.lie.weight(self.lowering[p as usize]);
        }
        for &k in &t.tensor {
            w = &w + &self.lie.vector_weight(k);
        }
        w
    }

    /// The weight of a nonzero weight vector (None if it mixes weights).
    pub fn weight_of(&self, v: &TensorVector) -> Option<Weight> {
        let mut out: Option<Weight> = None;
        for t in v.keys() {
            let w = self.term_weight(t);
            match &out {
                None => out = Some(w),
                Some(x) if *x != w => return None,
                _ => {}
            }
        }
        out
    }

    /// x · (P m) for a basis element x and a PBW monomial P, straightened.
    pub fn act_verma(&self, x: usize, p: &[u8]) -> Result<LinComb<Pbw>> {
        if p.is_empty() {
            return Ok(match self.kinds[x] {
                RootKind::Cartan(i) => LinComb::term(Vec::new(), self.cfg.lambda.0[i - 1].clone()),
                RootKind::Lowering(rank) => LinComb::monomial(vec![rank as u8]),
                RootKind::Parabolic => LinComb::zero(),
            });
        }
        if let RootKind::Lowering(rank) = self.kinds[x] {
            if rank as u8 >= p[0] {
                if p.len() + 1 > self.bound {
                    return Err(Error::Truncation { degree: p.len() + 1, bound: self.bound });
                }
                let mut out = Vec::with_capacity(p.len() + 1);
                out.push(rank as u8);
                out.extend_from_slice(p);
                return Ok(LinComb::monomial(out));
            }
        }
        let key = (x, p.to_vec());
        if let Some(v) = self.verma_cache.lock().expect("lock").get(&key) {
            return Ok(v.clone());
        }
        // x·h·P' = h·(x·P') + [x, h]·P'
        let head = self.lowering[p[0] as usize];
        let tail = &p[1..];
        let mut out = LinComb::zero();
        for (q1, c1) in self.act_verma(x, tail)?.iter() {
            out.add_scaled(&self.act_verma(head, q1)?, c1);
        }
        for (z, cz) in self.lie.bracket(x, head) {
            out.add_scaled(&self.act_verma(*z, tail)?, cz);
        }
        self.verma_cache.lock().expect("lock").insert(key, out.clone());
        Ok(out)
    }

    /// x · v with x acting on the Verma factor and on tensor positions
    /// 1..=upto (Leibniz rule); positions beyond `upto` are untouched.
    fn act_basis_prefix(&self, x: usize, v: &TensorVector, upto: usize) -> Result<TensorVector> {
        let (a, b) = self.lie.basis[x];
        let mut out = TensorVector::zero();
        for (t, c) in v.iter() {
            for (p, cp) in self.act_verma(x, &t.pbw)?.iter() {
                out.add_term(Term { pbw: p.clone(), tensor: t.tensor.clone() }, c * cp);
            }
            for pos in 0..upto.min(t.tensor.len()) {
                for (k, ck) in self.lie.act_on_vector(a, b, t.tensor[pos]) {
                    let mut tensor = t.tensor.clone();
                    tensor[pos] = k;
                    out.add_term(Term { pbw: t.pbw.clone(), tensor }, c * &ck);
                }
            }
        }
        Ok(out)
    }

    /// The 𝔤-action of a basis element on the whole module.
    pub fn act_lie(&self, x: usize, v: &TensorVector) -> Result<TensorVector> {
        self.act_basis_prefix(x, v, usize::MAX)
    }

    /// The 𝔤-action of a general element.
    pub fn act_lie_element(&self, x: &LieElement, v: &TensorVector) -> Result<TensorVector> {
        let mut out = TensorVector::zero();
        for (k, c) in x {
            out.add_scaled(&self.act_lie(*k, v)?, c);
        }
        Ok(out)
    }

    /// Applies an ordered word of root vectors f_{a,b} (leftmost acts last).
    pub fn act_root_word(&self, word: &[(i64, i64)], v: &TensorVector) -> Result<TensorVector> {
        let mut cur = v.clone();
        for &(a, b) in word.iter().rev() {
            let x = self.lie.element(a, b)?;
            cur = self.act_lie_element(&x, &cur)?;
        }
        Ok(cur)
    }

    /// Ω between (M ⊗ V^{⊗ j−1}) and the j-th tensor factor.
    fn omega(&self, j: usize, v: &TensorVector) -> Result<TensorVector> {
        let half = qr(1, 2);
        let idx = self.lie.indices();
        let mut out = TensorVector::zero();
        for (t, c) in v.iter() {
            let k = t.tensor[j - 1];
            let single = TensorVector::monomial(t.clone());
            // Ω = ½ Σ_{a,b} f_{a,b} ⊗ f_{b,a}, and f_{b,a} v_k = δ_{a,k} v_b − θ_{b,a} δ_{−b,k} v_{−a}.
            for &other in &idx {
                for (a, b, target, coeff) in
                    [(k, other, other, Q::one()), (other, -k, -other, -q(self.lie.theta(-k, other)))]
                {
                    let x = &self.pair_elements[&(a, b)];
                    if x.is_empty() {
                        continue;
                    }
                    let mut moved = TensorVector::zero();
                    for (s, cs) in single.iter() {
                        let mut tensor = s.tensor.clone();
                        tensor[j - 1] = target;
                        moved.add_term(Term { pbw: s.pbw.clone(), tensor }, cs.clone());
                    }
                    let mut acted = TensorVector::zero();
                    for (kx, cx) in x {
                        acted.add_scaled(&self.act_basis_prefix(*kx, &moved, j - 1)?, cx);
                    }
                    out.add_scaled(&acted, &(&half * &coeff * c));
                }
            }
        }
        Ok(out)
    }

    fn check_position(&self, v: &TensorVector, i: usize, pair: bool) -> Result<()> {
        for t in v.keys() {
            let s = t.tensor.len();
            if i == 0 || i > s || (pair && i + 1 > s) {
                return input(format!("generator index {i} out of range for {s} tensor factors"));
            }
        }
        Ok(())
    }

    /// v · X_j = ε(Ω + (N − ε)/2) across the cut before factor j.
    pub fn act_x(&self, j: usize, v: &TensorVector) -> Result<TensorVector> {
        self.check_position(v, j, false)?;
        let eps = q(self.lie.epsilon());
        let shift = (q(self.lie.natural_dim() as i64) - &eps) * qr(1, 2);
        let mut out = self.omega(j, v)?;
        out.add_scaled(v, &shift);
        Ok(out.scaled(&eps))
    }

    /// v · S_i: swaps factors i, i+1 (with a sign in type C).
    pub fn act_s(&self, i: usize, v: &TensorVector) -> Result<TensorVector> {
        self.check_position(v, i, true)?;
        let sign = if self.lie.phi == RootType::C { -Q::one() } else { Q::one() };
        let mut out = TensorVector::zero();
        for (t, c) in v.iter() {
            let mut tensor = t.tensor.clone();
            tensor.swap(i - 1, i);
            out.add_term(Term { pbw: t.pbw.clone(), tensor }, c * &sign);
        }
        Ok(out)
    }

    /// (v_a, v_b): δ_{a,−b} for a ≥ 0, and ε δ_{a,−b} for a < 0.
    pub fn form(&self, a: i64, b: i64) -> i64 {
        if a != -b {
            0
        } else if a >= 0 {
            1
        } else {
            self.lie.epsilon()
        }
    }

    /// v_t^* = v_{−t}, or sgn(t) v_{−t} in type C.
    fn dual_sign(&self, t: i64) -> i64 {
        if self.lie.phi == RootType::C {
            t.signum()
        } else {
            1
        }
    }

    /// v · E_i: contracts factors i, i+1 with (·,·) and inserts ε Σ_t v_t ⊗ v_t^*.
    /// The factor ε makes E_i² = ω_0 E_i with ω_0 = εN.
    pub fn act_e(&self, i: usize, v: &TensorVector) -> Result<TensorVector> {
        self.check_position(v, i, true)?;
        let eps = self.lie.epsilon();
        let idx = self.lie.indices();
        let mut out = TensorVector::zero();
        for (t, c) in v.iter() {
            let beta = self.form(t.tensor[i - 1], t.tensor[i]);
            if beta == 0 {
                continue;
            }
            for &s in &idx {
                let mut tensor = t.tensor.clone();
                tensor[i - 1] = s;
                tensor[i] = -s;
                out.add_term(Term { pbw: t.pbw.clone(), tensor }, c * q(eps * beta * self.dual_sign(s)));
            }
        }
        Ok(out)
    }

    pub fn act_letter(&self, g: Letter, v: &TensorVector) -> Result<TensorVector> {
        match g {
            Letter::X(j) => self.act_x(j, v),
            Letter::S(i) => self.act_s(i, v),
            Letter::E(i) => self.act_e(i, v),
        }
    }

    /// v · (g_1 g_2 ⋯): letters act left to right.
    pub fn act_word(&self, word: &[Letter], v: &TensorVector) -> Result<TensorVector> {
        let mut cur = v.clone();
        for &g in word {
            cur = self.act_letter(g, &cur)?;
        }
        Ok(cur)
    }

    /// v · b for an algebra element given in normal form, each monomial
    /// spelled by `word_of`.
    pub fn act_algebra_element(
        &self,
        x: &BrauerElement,
        word_of: impl Fn(&crate::brauer::BrauerMonomial) -> Vec<Letter>,
        v: &TensorVector,
    ) -> Result<TensorVector> {
        let mut out = TensorVector::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.act_word(&word_of(m), v)?, c);
        }
        Ok(out)
    }

    /// All PBW monomials of U(𝔲⁻) with the given weight.
    pub fn pbw_of_weight(&self, target: &Weight) -> Vec<Pbw> {
        let weights: Vec<Weight> = self.lowering.iter().map(|&x| self.lie.weight(x)).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.pbw_search(&weights, weights.len(), target, &mut cur, &mut out);
        out
    }

    /// Chooses factors with rank < `below`, largest first.
    fn pbw_search(&self, weights: &[Weight], below: usize, rest: &Weight, cur: &mut Pbw, out: &mut Vec<Pbw>) {
        if rest.0.iter().all(Zero::is_zero) {
            out.push(cur.clone());
            return;
        }
        if self.height(rest) <= 0 {
            return;
        }
        for rank in (0..below).rev() {
            let next = rest - &weights[rank];
            if self.height(&next) < 0 {
                continue;
            }
            cur.push(rank as u8);
            self.pbw_search(weights, rank + 1, &next, cur, out);
            cur.pop();
        }
    }

    /// −Σ over the removed simple roots of the simple coordinates; every
    /// 𝔲⁻ weight has height at least 1.
    fn height(&self, w: &Weight) -> i64 {
        let coords = self.parabolic.simple_coordinates(w);
        let mut h = Q::zero();
        for &c in &self.parabolic.cuts {
            h -= &coords[c - 1];
        }
        if !h.is_integer() {
            return -1;
        }
        crate::rational::to_i64(&h).unwrap_or(-1)
    }

    /// A basis of the μ-weight space of M^p(λ_{I,c}) ⊗ V^{⊗s}.
    pub fn weight_space(&self, mu: &Weight, s: usize) -> Vec<Term> {
        let idx = self.lie.indices();
        let mut tensors: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..s {
            tensors = tensors
                .into_iter()
                .flat_map(|t| {
                    idx.iter().map(move |&k| {
                        let mut t = t.clone();
                        t.push(k);
                        t
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for tensor in tensors {
            let mut rest = mu - &self.cfg.lambda;
            for &k in &tensor {
                rest = &rest - &self.lie.vector_weight(k);
            }
            for pbw in self.pbw_of_weight(&rest) {
                out.push(Term { pbw, tensor: tensor.clone() });
            }
        }
        out.sort();
        out
    }
}
