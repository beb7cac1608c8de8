//! The dictionary between cell labels of B_{a,r}(u) and highest weights of
//! parabolic Verma subquotients: λ_{I,c}, the parameters u_j, λ ↦ λ̂, and the
//! Verma flag of M^p(λ_{I,c}) ⊗ V.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::roots::{Parabolic, RootDatum, RootType, Weight};
use crate::brauer::omega::admissible_omega;
use crate::combinat::{Multipartition, Partition};
use crate::error::{input, Error, Result};
use crate::rational::{q, qr, to_i64, Q};

/// (Φ, p, i) together with c, the derived λ_{I,c} and ρ.
#[derive(Clone, Debug)]
pub struct HighestWeightConfig {
    pub datum: RootDatum,
    pub c: Vec<Q>,
    pub lambda: Weight,
    pub rho: Weight,
}

impl HighestWeightConfig {
    pub fn new(datum: RootDatum, c: Vec<Q>) -> Result<Self> {
        let k = datum.k();
        if c.len() != k {
            return input(format!("expected {k} values of c, got {}", c.len()));
        }
        if datum.i == 2 && !c[k - 1].is_zero() {
            return input("c_k must be 0 when i = 2");
        }
        let mut coords = vec![Q::zero(); datum.n];
        for j in 1..=k {
            for x in &mut coords[datum.p_at(j - 1)..datum.p_at(j)] {
                *x = c[j - 1].clone();
            }
        }
        let rho = datum.parabolic().rho();
        Ok(HighestWeightConfig { datum, c, lambda: Weight(coords), rho })
    }

    pub fn parabolic(&self) -> Parabolic {
        self.datum.parabolic()
    }

    /// Roots β ∈ Φ⁺ \ Φ_I with ⟨λ_{I,c} + ρ, β^∨⟩ ∈ ℤ_{>0}; empty exactly
    /// when M^p(λ_{I,c}) is known to be simple by the Jantzen criterion.
    pub fn simplicity_violations(&self) -> Vec<Weight> {
        let par = self.parabolic();
        let shifted = &self.lambda + &self.rho;
        par.nilradical_roots()
            .into_iter()
            .filter(|b| {
                let x = shifted.pairing(b);
                x.is_integer() && x.is_positive()
            })
            .collect()
    }

    /// p_t − p_{t−1} ≥ 2r for every block.
    pub fn check_block_sizes(&self, r: usize) -> Result<()> {
        for t in 1..=self.datum.k() {
            let size = self.datum.p_at(t) - self.datum.p_at(t - 1);
            if size < 2 * r {
                return input(format!("block {t} has size {size} < 2r = {}", 2 * r));
            }
        }
        Ok(())
    }
}

/// The intermediate values ū_j, before the index shift for i = 2.
fn u_bar(cfg: &HighestWeightConfig) -> Vec<Q> {
    let d = &cfg.datum;
    let (k, n) = (d.k(), q(d.n as i64));
    let c = |j: usize| cfg.c[j - 1].clone();
    let p = |j: usize| q(d.p_at(j) as i64);
    match d.phi {
        RootType::B => (1..=2 * k + 1)
            .map(|j| {
                if j <= k {
                    c(j) - p(j - 1) + &n
                } else if j == k + 1 {
                    Q::zero()
                } else {
                    -c(2 * k + 2 - j) + p(2 * k + 2 - j) - &n
                }
            })
            .collect(),
        RootType::C | RootType::D => {
            let eps = q(d.phi.epsilon());
            let half_eps = &eps * qr(1, 2);
            (1..=2 * k)
                .map(|j| {
                    if j <= k {
                        &eps * (c(j) - p(j - 1) + &n - &half_eps)
                    } else {
                        &eps * (-c(2 * k - j + 1) + p(2 * k - j + 1) - &n + &half_eps)
                    }
                })
                .collect()
        }
    }
}

/// The cyclotomic parameters u_1, …, u_a attached to (Φ, p, i, c).
pub fn compute_u_params(cfg: &HighestWeightConfig) -> Result<Vec<Q>> {
    let d = &cfg.datum;
    if d.phi == RootType::B && d.i == 1 {
        return input("type B with i = 1 is not covered");
    }
    let bar = u_bar(cfg);
    let k = d.k();
    if d.i == 1 {
        return Ok(bar);
    }
    let shift = if d.phi == RootType::B { 2 } else { 1 };
    Ok((1..=2 * k - 1).map(|j| if j <= k { bar[j - 1].clone() } else { bar[j + shift - 1].clone() }).collect())
}

/// ω_0 of the admissible sequence for the parameters of `cfg`; equals
/// ε_𝔤 N.
pub fn omega_zero(cfg: &HighestWeightConfig) -> Result<Q> {
    Ok(admissible_omega(&compute_u_params(cfg)?, 0)[0].clone())
}

/// The coordinates touched by row ℓ (1-based) of component j (1-based) of
/// a label, and the sign of the contribution.
fn row_coordinate(d: &RootDatum, j: usize, row: usize) -> (usize, i64) {
    let k = d.k();
    if j <= k {
        (d.p_at(j - 1) + row, 1)
    } else {
        let t = 2 * k - j + usize::from(d.i == 1);
        (d.p_at(t) - row + 1, -1)
    }
}

/// λ̃: Σ_{j≤k} Σ_ℓ λ^{(j)}_ℓ ε_{p_{j−1}+ℓ} − Σ_{j>k} Σ_ℓ λ^{(j)}_ℓ ε_{p_t−ℓ+1}.
pub fn tilde_lambda(cfg: &HighestWeightConfig, lambda: &Multipartition) -> Result<Weight> {
    let d = &cfg.datum;
    if lambda.level() != d.level() {
        return input(format!("label has level {}, expected a = {}", lambda.level(), d.level()));
    }
    cfg.check_block_sizes(lambda.comps().iter().map(Partition::len).max().unwrap_or(0))?;
    let mut w = Weight::zero(d.n);
    for (j, part) in lambda.comps().iter().enumerate() {
        for (row, &len) in part.parts().iter().enumerate() {
            let (coord, sign) = row_coordinate(d, j + 1, row + 1);
            w.0[coord - 1] += q(sign * len as i64);
        }
    }
    Ok(w)
}

/// λ̂ = λ_{I,c} + λ̃ for the label (f, λ) of B_{a,r}.
pub fn hat_lambda(cfg: &HighestWeightConfig, r: usize, f: usize, lambda: &Multipartition) -> Result<Weight> {
    cfg.check_block_sizes(r)?;
    if 2 * f > r || lambda.size() != r - 2 * f {
        return input(format!("label (f={f}, |λ|={}) does not belong to r = {r}", lambda.size()));
    }
    Ok(&cfg.lambda + &tilde_lambda(cfg, lambda)?)
}

/// The index sequence i_λ of basis vectors v_{i} whose tensor product has
/// weight λ̃ (v_{±j} has weight ±ε_j).
pub fn index_sequence(cfg: &HighestWeightConfig, lambda: &Multipartition) -> Vec<i64> {
    let mut out = Vec::new();
    for (j, part) in lambda.comps().iter().enumerate() {
        for (row, &len) in part.parts().iter().enumerate() {
            let (coord, sign) = row_coordinate(&cfg.datum, j + 1, row + 1);
            out.extend(std::iter::repeat(sign * coord as i64).take(len));
        }
    }
    out
}

/// Inverse of [`hat_lambda`] on the weights of V^{⊗r}-labels.
pub fn unhat(cfg: &HighestWeightConfig, r: usize, mu: &Weight) -> Result<(usize, Multipartition)> {
    cfg.check_block_sizes(r)?;
    let d = &cfg.datum;
    let diff = mu - &cfg.lambda;
    let coords: Vec<i64> = diff
        .0
        .iter()
        .map(|x| to_i64(x).ok_or_else(|| Error::Input(format!("{mu:?} − λ_{{I,c}} is not integral"))))
        .collect::<Result<_>>()?;
    let a = d.level();
    let mut comps = vec![Vec::new(); a];
    for j in 1..=a {
        for row in 1..=r {
            let (coord, sign) = row_coordinate(d, j, row);
            let v = coords[coord - 1] * sign;
            if v > 0 {
                comps[j - 1].push(v as usize);
            } else {
                break;
            }
        }
    }
    let lambda = Multipartition::from_vecs(&comps)?;
    let s = lambda.size();
    if s > r || (r - s) % 2 != 0 {
        return input(format!("{mu:?} is not the weight of a label for r = {r}"));
    }
    let f = (r - s) / 2;
    if hat_lambda(cfg, r, f, &lambda)? != *mu {
        return input(format!("{mu:?} is not λ̂ for any label with r = {r}"));
    }
    Ok((f, lambda))
}

/// One layer N_j / N_{j−1} of the Verma flag of M^p(λ_{I,c}) ⊗ V.
#[derive(Clone, Debug, Serialize)]
pub struct FlagLayer {
    pub index: usize,
    /// Highest weight of the subquotient, or `None` when the layer vanishes.
    pub weight: Option<Weight>,
}

/// The ordered parabolic Verma flag of M^p(λ_{I,c}) ⊗ V: 2k layers for C/D
/// and 2k+1 for B, with the middle layers present only when i = 1.
pub fn verma_flag_of_first_tensor(cfg: &HighestWeightConfig) -> Vec<FlagLayer> {
    let d = &cfg.datum;
    let (n, k) = (d.n, d.k());
    let lam = &cfg.lambda;
    let plus = |coord: usize| Some(lam + &Weight::unit(n, coord, 1));
    let minus = |coord: usize| Some(lam + &Weight::unit(n, coord, -1));
    let present = d.i == 1;
    let len = if d.phi == RootType::B { 2 * k + 1 } else { 2 * k };
    (1..=len)
        .map(|j| {
            let weight = if j <= k {
                plus(d.p_at(j - 1) + 1)
            } else if d.phi == RootType::B {
                match j {
                    _ if j == k + 1 => present.then(|| lam.clone()),
                    _ if j == k + 2 => if present { minus(d.p_at(k)) } else { None },
                    _ => minus(d.p_at(2 * k + 2 - j)),
                }
            } else if j == k + 1 {
                if present {
                    minus(d.p_at(k))
                } else {
                    None
                }
            } else {
                minus(d.p_at(2 * k + 1 - j))
            };
            FlagLayer { index: j, weight }
        })
        .collect()
}

/// The layer t with m ⊗ v_index ∈ N_t. For index 0 (type B only) this is the
/// middle layer k+1, whose subquotient has the weight λ_{I,c} of m ⊗ v_0.
pub fn flag_membership(datum: &RootDatum, index: i64) -> Result<usize> {
    let (n, k) = (datum.n as i64, datum.k());
    if index == 0 {
        return if datum.phi == RootType::B { Ok(k + 1) } else { input("v_0 exists only in type B") };
    }
    if index.abs() > n {
        return input(format!("basis index {index} out of range ±{n}"));
    }
    let j = index.unsigned_abs() as usize;
    let t = (1..=k).find(|&t| j <= datum.p_at(t)).expect("p_k = n");
    Ok(if index > 0 {
        t
    } else if datum.phi == RootType::B {
        2 * k + 2 - t
    } else {
        2 * k + 1 - t
    })
}

/// The degree of f_i(X_1): 2k + δ_B for i = 1 and 2k − 1 for i = 2.
pub fn annihilator_degree(datum: &RootDatum) -> usize {
    if datum.i == 1 {
        2 * datum.k() + usize::from(datum.phi == RootType::B)
    } else {
        2 * datum.k() - 1
    }
}

/// The flag layer killed by ∏_{j≤l}(X_1 − u_j): N_{l + cδ_{i,2}(1+δ_B)} with
/// c = 0 for l ≤ k−1 and 1 otherwise.
pub fn annihilated_layer(datum: &RootDatum, l: usize) -> usize {
    let c = usize::from(l >= datum.k());
    let shift = if datum.i == 2 { c * (1 + usize::from(datum.phi == RootType::B)) } else { 0 };
    l + shift
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Multipartition;

    fn cfg(phi: RootType, n: usize, p: Vec<usize>, i: usize, c: Vec<Q>) -> HighestWeightConfig {
        HighestWeightConfig::new(RootDatum::new(phi, n, p, i).unwrap(), c).unwrap()
    }

    #[test]
    fn type_d_rank_four_parameters() {
        let h = cfg(RootType::D, 4, vec![4], 1, vec![qr(-7, 3)]);
        let u = compute_u_params(&h).unwrap();
        // ε = 1: u_1 = c_1 + n − 1/2, u_2 = −c_1 + p_1 − n + 1/2.
        assert_eq!(u, vec![qr(-7, 3) + q(4) - qr(1, 2), qr(7, 3) + qr(1, 2)]);
        assert_eq!(u.iter().sum::<Q>(), q(4));
        assert_eq!(omega_zero(&h).unwrap(), q(8));
    }

    #[test]
    fn type_c_single_block_second_subset() {
        for n in 1..=5 {
            let h = cfg(RootType::C, n, vec![n], 2, vec![q(0)]);
            let u = compute_u_params(&h).unwrap();
            assert_eq!(u, vec![-(q(n as i64) + qr(1, 2))]);
            assert_eq!(omega_zero(&h).unwrap(), -q(2 * n as i64));
        }
    }

    #[test]
    fn omega_zero_is_signed_natural_dimension() {
        let cases = [
            (RootType::D, 9, vec![3, 9], 1),
            (RootType::C, 9, vec![3, 9], 1),
            (RootType::C, 9, vec![2, 5, 9], 2),
            (RootType::D, 9, vec![2, 5, 9], 2),
            (RootType::B, 9, vec![4, 9], 2),
            (RootType::B, 9, vec![2, 5, 9], 2),
        ];
        for (phi, n, p, i) in cases {
            let k = p.len();
            let mut c: Vec<Q> = (0..k).map(|j| qr(2 * j as i64 - 5, 3)).collect();
            if i == 2 {
                c[k - 1] = q(0);
            }
            let h = cfg(phi, n, p, i, c);
            assert_eq!(compute_u_params(&h).unwrap().len(), h.datum.level());
            let big_n = q((phi.natural_dim(n) as i64) * phi.epsilon());
            assert_eq!(omega_zero(&h).unwrap(), big_n, "{phi:?} {:?} i={i}", h.datum.p);
        }
    }

    #[test]
    fn empty_label_gives_the_base_weight() {
        let h = cfg(RootType::D, 8, vec![4, 8], 1, vec![qr(1, 3), qr(-2, 7)]);
        let w = hat_lambda(&h, 2, 1, &Multipartition::empty(4)).unwrap();
        assert_eq!(w, h.lambda);
        assert_eq!(unhat(&h, 2, &w).unwrap(), (1, Multipartition::empty(4)));
    }

    #[test]
    fn worked_example_index_sequence() {
        let h = cfg(RootType::D, 41, vec![20, 41], 1, vec![qr(1, 3), qr(-2, 7)]);
        let lambda = Multipartition::from_vecs(&[vec![], vec![2], vec![2, 1], vec![1]]).unwrap();
        assert_eq!(index_sequence(&h, &lambda), vec![21, 21, -41, -41, -40, -20]);
        let tilde = tilde_lambda(&h, &lambda).unwrap();
        let mut from_indices = Weight::zero(41);
        for idx in index_sequence(&h, &lambda) {
            from_indices = &from_indices + &Weight::unit(41, idx.unsigned_abs() as usize, idx.signum());
        }
        assert_eq!(tilde, from_indices);
        let w = hat_lambda(&h, 10, 2, &lambda).unwrap();
        assert_eq!(unhat(&h, 10, &w).unwrap(), (2, lambda));
    }

    #[test]
    fn hat_is_injective_and_order_compatible() {
        let h = cfg(RootType::D, 6, vec![6], 1, vec![qr(-7, 3)]);
        let par = h.parabolic();
        for m in 0..=3 {
            let labels = Multipartition::all(2, m);
            let hats: Vec<Weight> = labels.iter().map(|l| hat_lambda(&h, m, 0, l).unwrap()).collect();
            for (x, hx) in labels.iter().zip(&hats) {
                assert_eq!(unhat(&h, m, hx).unwrap(), (0, x.clone()));
                for (y, hy) in labels.iter().zip(&hats) {
                    assert_eq!(x == y, hx == hy);
                    assert_eq!(x.dominance_ge(y).unwrap(), par.dominance_ge(hx, hy), "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn block_size_assumption_is_enforced() {
        let h = cfg(RootType::C, 5, vec![2, 5], 1, vec![q(1), q(2)]);
        assert!(hat_lambda(&h, 2, 0, &Multipartition::from_vecs(&[vec![1], vec![], vec![1], vec![]]).unwrap()).is_err());
    }

    #[test]
    fn first_tensor_flags() {
        let d = cfg(RootType::D, 4, vec![4], 1, vec![qr(-7, 3)]);
        let layers: Vec<Option<Weight>> = verma_flag_of_first_tensor(&d).into_iter().map(|l| l.weight).collect();
        assert_eq!(
            layers,
            vec![Some(&d.lambda + &Weight::unit(4, 1, 1)), Some(&d.lambda + &Weight::unit(4, 4, -1))]
        );
        let b = cfg(RootType::B, 8, vec![4, 8], 2, vec![q(1), q(0)]);
        let flag = verma_flag_of_first_tensor(&b);
        assert_eq!(flag.len(), 5);
        assert!(flag[2].weight.is_none() && flag[3].weight.is_none());
        assert_eq!(flag[4].weight, Some(&b.lambda + &Weight::unit(8, 4, -1)));
        assert_eq!(flag_membership(&b.datum, 6).unwrap(), 2);
        assert_eq!(flag_membership(&b.datum, -6).unwrap(), 4);
        assert_eq!(flag_membership(&b.datum, -1).unwrap(), 5);
        assert_eq!(flag_membership(&d.datum, -3).unwrap(), 2);
    }

    #[test]
    fn annihilator_degree_is_the_level_or_one_more() {
        for (phi, i) in [(RootType::C, 1), (RootType::D, 1), (RootType::B, 2), (RootType::C, 2)] {
            let d = RootDatum::new(phi, 6, vec![3, 6], i).unwrap();
            let extra = usize::from(phi == RootType::B && i == 1);
            assert_eq!(annihilator_degree(&d), d.level() + extra);
        }
    }
}
