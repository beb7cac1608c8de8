//! The degenerate cyclotomic Hecke algebra H_{a,r}(u).
//!
//! Elements are combinations of normal monomials x^α·w with every α_i < a.
//! Products move x-letters to the left through s-letters with
//! `s_i f = (s_i·f) s_i − ∂_i f` (∂_i the divided difference), then remove
//! powers x_j^a using precomputed normal forms of x_j^a.

pub mod cellular;

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::combinat::Perm;
use crate::error::{input, Result};
use crate::lincomb::LinComb;
use crate::linalg::SVec;
use crate::rational::Q;

pub use cellular::{Flavor, HeckeCellular};

/// A normal monomial x^α·w.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeckeMonomial {
    pub alpha: Vec<u8>,
    pub w: Perm,
}

pub type HeckeElement = LinComb<HeckeMonomial>;

#[derive(Debug)]
pub struct HeckeAlgebra {
    a: usize,
    r: usize,
    u: Vec<Q>,
    /// `powers[j-1]` = normal form of x_j^a.
    powers: Vec<HeckeElement>,
    basis: Vec<HeckeMonomial>,
    index: HashMap<HeckeMonomial, usize>,
    commute_cache: Mutex<HashMap<(Perm, Vec<u8>), Vec<(Vec<u8>, Perm, Q)>>>,
}

/// Coefficients of ∏(x − u_i) from the constant term up, leading 1 included.
pub fn char_poly(u: &[Q]) -> Vec<Q> {
    let mut c = vec![Q::one()];
    for ui in u {
        let mut next = vec![Q::zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * ui;
        }
        c = next;
    }
    c
}

/// All exponent vectors of length r with entries < a, lexicographic.
pub(crate) fn bounded_exponents(a: usize, r: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u8>| {
                (0..a as u8).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// ∂_i(x^β) = (x^β − s_i·x^β)/(x_i − x_{i+1}) for 1-based i.
pub(crate) fn divided_difference(beta: &[u8], i: usize) -> Vec<(Vec<u8>, i64)> {
    let (p, q) = (beta[i - 1], beta[i]);
    if p == q {
        return Vec::new();
    }
    let (lo, hi, sign) = if p > q { (q, p, 1) } else { (p, q, -1) };
    (0..hi - lo)
        .map(|j| {
            let mut g = beta.to_vec();
            g[i - 1] = lo + j;
            g[i] = lo + (hi - lo - 1 - j);
            (g, sign)
        })
        .collect()
}

impl HeckeAlgebra {
    pub fn new(a: usize, r: usize, u: Vec<Q>) -> Result<Self> {
        if a == 0 || r == 0 {
            return input("the Hecke algebra needs a >= 1 and r >= 1");
        }
        if u.len() != a {
            return input(format!("expected {a} parameters, got {}", u.len()));
        }
        let mut basis = Vec::new();
        for alpha in bounded_exponents(a, r) {
            for w in Perm::all(r) {
                basis.push(HeckeMonomial { alpha: alpha.clone(), w });
            }
        }
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut alg = HeckeAlgebra {
            a,
            r,
            u,
            powers: Vec::new(),
            basis,
            index,
            commute_cache: Mutex::new(HashMap::new()),
        };
        alg.build_powers();
        Ok(alg)
    }

    fn build_powers(&mut self) {
        let (a, r) = (self.a, self.r);
        let cp = char_poly(&self.u);
        let mut first = HeckeElement::zero();
        for (k, ck) in cp.iter().enumerate().take(a) {
            let mut alpha = vec![0u8; r];
            alpha[0] = k as u8;
            first.add_term(HeckeMonomial { alpha, w: Perm::identity(r) }, -ck.clone());
        }
        self.powers.push(first);
        // x_j^a = s N_{j-1} s + ∂_{j-1}(x_{j-1}^a) s with s = s_{j-1}; every
        // exponent stays below a, so no reduction is needed on the way.
        for j in 2..=r {
            let s = self.s(j - 1);
            let mut next = self.mul(&self.mul(&s, &self.powers[j - 2]), &s);
            let mut beta = vec![0u8; r];
            beta[j - 2] = a as u8;
            for (g, sign) in divided_difference(&beta, j - 1) {
                next.add_term(HeckeMonomial { alpha: g, w: Perm::simple(j - 1, r) }, Q::from_integer(sign.into()));
            }
            self.powers.push(next);
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn u(&self) -> &[Q] {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[HeckeMonomial] {
        &self.basis
    }

    pub fn one(&self) -> HeckeElement {
        self.perm(&Perm::identity(self.r))
    }

    pub fn scalar(&self, c: Q) -> HeckeElement {
        self.one().scaled(&c)
    }

    pub fn perm(&self, w: &Perm) -> HeckeElement {
        HeckeElement::monomial(HeckeMonomial { alpha: vec![0; self.r], w: w.clone() })
    }

    /// s_i, 1 ≤ i < r.
    pub fn s(&self, i: usize) -> HeckeElement {
        self.perm(&Perm::simple(i, self.r))
    }

    /// x_j, 1 ≤ j ≤ r.
    pub fn x(&self, j: usize) -> HeckeElement {
        self.x_power(j, 1)
    }

    pub fn x_power(&self, j: usize, k: usize) -> HeckeElement {
        let mut alpha = vec![0usize; self.r];
        alpha[j - 1] = k;
        self.reduce_monomial(&alpha, &Perm::identity(self.r))
    }

    /// Generators used for module actions: s_1, …, s_{r−1}, x_1.
    pub fn generators(&self) -> Vec<(String, HeckeElement)> {
        let mut out: Vec<(String, HeckeElement)> =
            (1..self.r).map(|i| (format!("s{i}"), self.s(i))).collect();
        out.push(("x1".to_string(), self.x(1)));
        out
    }

    /// w·x^β = Σ c x^γ v with every γ bounded as β is.
    fn commute(&self, w: &Perm, beta: &[u8]) -> Vec<(Vec<u8>, Perm, Q)> {
        if w.is_identity() {
            return vec![(beta.to_vec(), w.clone(), Q::one())];
        }
        let key = (w.clone(), beta.to_vec());
        if let Some(v) = self.commute_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let word = w.reduced_word();
        let i = *word.last().unwrap();
        let r = self.r;
        let si = Perm::simple(i, r);
        let head = w.mul(&si);
        // w x^β = head (s_i·x^β) s_i − head ∂_i(x^β)
        let mut acc: LinComb<(Vec<u8>, Perm)> = LinComb::zero();
        let mut swapped = beta.to_vec();
        swapped.swap(i - 1, i);
        for (g, v, c) in self.commute(&head, &swapped) {
            acc.add_term((g, v.mul(&si)), c);
        }
        for (g, sign) in divided_difference(beta, i) {
            for (h, v, c) in self.commute(&head, &g) {
                acc.add_term((h, v), -c * Q::from_integer(sign.into()));
            }
        }
        let out: Vec<(Vec<u8>, Perm, Q)> = acc.iter().map(|((g, v), c)| (g.clone(), v.clone(), c.clone())).collect();
        self.commute_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Normal form of x^γ·w for an arbitrary exponent vector γ.
    pub fn reduce_monomial(&self, gamma: &[usize], w: &Perm) -> HeckeElement {
        let mut out = HeckeElement::zero();
        self.reduce_into(gamma, w, &Q::one(), &mut out);
        out
    }

    fn reduce_into(&self, gamma: &[usize], w: &Perm, c: &Q, out: &mut HeckeElement) {
        let a = self.a;
        match gamma.iter().position(|&e| e >= a) {
            None => out.add_term(
                HeckeMonomial { alpha: gamma.iter().map(|&e| e as u8).collect(), w: w.clone() },
                c.clone(),
            ),
            Some(j) => {
                let mut rest = gamma.to_vec();
                rest[j] -= a;
                for (m, d) in self.powers[j].iter() {
                    let g: Vec<usize> = rest.iter().zip(&m.alpha).map(|(x, &y)| x + y as usize).collect();
                    self.reduce_into(&g, &m.w.mul(w), &(c * d), out);
                }
            }
        }
    }

    fn mul_monomials(&self, x: &HeckeMonomial, y: &HeckeMonomial, c: &Q, out: &mut HeckeElement) {
        for (g, v, d) in self.commute(&x.w, &y.alpha) {
            let gamma: Vec<usize> = x.alpha.iter().zip(&g).map(|(&p, &q)| (p + q) as usize).collect();
            self.reduce_into(&gamma, &v.mul(&y.w), &(c * d), out);
        }
    }

    pub fn mul(&self, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (mx, cx) in x.iter() {
            for (my, cy) in y.iter() {
                self.mul_monomials(mx, my, &(cx * cy), &mut out);
            }
        }
        out
    }

    pub fn mul_all(&self, factors: &[HeckeElement]) -> HeckeElement {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// The anti-involution fixing every s_i and x_j.
    pub fn tau(&self, x: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (m, c) in x.iter() {
            for (g, v, d) in self.commute(&m.w.inverse(), &m.alpha) {
                out.add_term(HeckeMonomial { alpha: g, w: v }, c * d);
            }
        }
        out
    }

    pub fn to_vector(&self, x: &HeckeElement) -> SVec {
        x.iter().map(|(m, c)| (self.index[m], c.clone())).collect()
    }

    pub fn from_vector(&self, v: &SVec) -> HeckeElement {
        v.iter().map(|(&i, c)| (self.basis[i].clone(), c.clone())).collect()
    }

    /// Σ_{w ∈ W} sign(w)^{signed} w.
    pub fn perm_sum(&self, perms: &[Perm], signed: bool) -> HeckeElement {
        perms
            .iter()
            .map(|w| {
                let c = if signed { Q::from_integer(w.sign().into()) } else { Q::one() };
                (HeckeMonomial { alpha: vec![0; self.r], w: w.clone() }, c)
            })
            .collect()
    }

    /// π_c(v) = (x_1 − v)⋯(x_c − v).
    pub fn pi(&self, c: usize, v: &Q) -> HeckeElement {
        (1..=c).fold(self.one(), |acc, j| {
            let f = self.x(j).sub(&self.scalar(v.clone()));
            self.mul(&acc, &f)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn alg(a: usize, r: usize, u: &[Q]) -> HeckeAlgebra {
        HeckeAlgebra::new(a, r, u.to_vec()).unwrap()
    }

    #[test]
    fn defining_relations() {
        let h = alg(2, 3, &[q(1), qr(-1, 2)]);
        let one = h.one();
        for i in 1..3 {
            assert_eq!(h.mul(&h.s(i), &h.s(i)), one);
            let lhs = h.mul(&h.s(i), &h.x(i)).sub(&h.mul(&h.x(i + 1), &h.s(i)));
            assert_eq!(lhs, one.scaled(&q(-1)));
            let lhs = h.mul(&h.x(i), &h.s(i)).sub(&h.mul(&h.s(i), &h.x(i + 1)));
            assert_eq!(lhs, one.scaled(&q(-1)));
        }
        let braid = |i: usize| h.mul_all(&[h.s(i), h.s(i + 1), h.s(i)]);
        assert_eq!(braid(1), h.mul_all(&[h.s(2), h.s(1), h.s(2)]));
        for j in 1..=3 {
            for k in 1..=3 {
                assert_eq!(h.mul(&h.x(j), &h.x(k)), h.mul(&h.x(k), &h.x(j)));
            }
        }
        assert_eq!(h.mul(&h.s(1), &h.x(3)), h.mul(&h.x(3), &h.s(1)));
        let f = h.mul(&h.x(1).sub(&h.scalar(q(1))), &h.x(1).sub(&h.scalar(qr(-1, 2))));
        assert!(f.is_zero());
    }

    #[test]
    fn associativity_on_basis_triples() {
        let h = alg(2, 3, &[q(0), q(3)]);
        let b = h.basis();
        let pick: Vec<HeckeElement> = (0..b.len()).step_by(5).map(|i| HeckeElement::monomial(b[i].clone())).collect();
        for x in &pick {
            for y in &pick {
                for z in pick.iter().take(4) {
                    assert_eq!(h.mul(&h.mul(x, y), z), h.mul(x, &h.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn anti_involution_reverses_products() {
        let h = alg(2, 3, &[q(2), qr(1, 3)]);
        let b = h.basis();
        for i in (0..b.len()).step_by(7) {
            for j in (0..b.len()).step_by(11) {
                let x = HeckeElement::monomial(b[i].clone());
                let y = HeckeElement::monomial(b[j].clone());
                assert_eq!(h.tau(&h.mul(&x, &y)), h.mul(&h.tau(&y), &h.tau(&x)));
                assert_eq!(h.tau(&h.tau(&x)), x);
            }
        }
    }

    #[test]
    fn level_one_is_group_algebra() {
        let h = alg(1, 3, &[q(0)]);
        assert_eq!(h.dim(), 6);
        for v in Perm::all(3) {
            for w in Perm::all(3) {
                assert_eq!(h.mul(&h.perm(&v), &h.perm(&w)), h.perm(&v.mul(&w)));
            }
        }
    }

    #[test]
    fn higher_x_powers_satisfy_their_recursion() {
        let h = alg(3, 3, &[q(0), q(1), q(-1)]);
        // x_2 = s_1 x_1 s_1 + s_1
        let x2 = h.mul_all(&[h.s(1), h.x(1), h.s(1)]);
        let mut rhs = x2;
        rhs.add(&h.s(1));
        assert_eq!(rhs, h.x(2));
        let cube = h.mul_all(&[h.x(2), h.x(2), h.x(2)]);
        assert_eq!(cube, h.x_power(2, 3));
    }
}
