//! Weights of V^{⊗r} for the Levi factor (the sets 𝒦_r), Jantzen
//! coefficients of parabolic Verma modules, single linkage steps, and the
//! saturation check for λ_{I,c} + 𝒦_j.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::dictionary::HighestWeightConfig;
use super::roots::{Parabolic, RootType, Weight};
use crate::error::{input, Error, Result};
use crate::rational::{q, to_i64};

pub type WeightSet = BTreeSet<Weight>;

/// p-dominance of an integral weight by the explicit inequalities: weakly
/// decreasing on every block, and μ_n ≥ 0 (B, C) or μ_{n−1} ≥ |μ_n| (D) when
/// α_n ∈ I.
pub fn is_p_dominant_integral(par: &Parabolic, mu: &[i64]) -> bool {
    let (blocks, signed_tail) = par.levi_blocks();
    if !blocks.iter().all(|b| mu[b.clone()].windows(2).all(|w| w[0] >= w[1])) {
        return false;
    }
    if signed_tail {
        let n = par.n;
        return match par.phi {
            RootType::B | RootType::C => mu[n - 1] >= 0,
            RootType::D => mu[n - 2] >= mu[n - 1].abs(),
        };
    }
    true
}

fn as_ints(w: &Weight) -> Option<Vec<i64>> {
    w.0.iter().map(to_i64).collect()
}

/// S_μ: the highest weights of F(μ) ⊗ V, each with multiplicity one.
pub fn tensor_step(par: &Parabolic, mu: &Weight) -> Result<Vec<Weight>> {
    if !par.is_p_dominant(mu) {
        return input(format!("{mu:?} is not p-dominant"));
    }
    let n = par.n;
    let mut out = Vec::new();
    for i in 1..=n {
        for h in [1, -1] {
            let nu = mu + &Weight::unit(n, i, h);
            if par.is_p_dominant(&nu) {
                out.push(nu);
            }
        }
    }
    if par.phi == RootType::B && (!par.in_levi(n) || !mu.0[n - 1].is_zero()) {
        out.push(mu.clone());
    }
    Ok(out)
}

/// 𝒦_0, …, 𝒦_r by iterating 𝒦_j = ∪_{μ ∈ 𝒦_{j−1}} S_μ, stopping with a
/// budget error once a set exceeds `budget` weights.
pub fn k_sets_bfs(par: &Parabolic, r: usize, budget: usize) -> Result<Vec<WeightSet>> {
    let mut out = vec![WeightSet::from([Weight::zero(par.n)])];
    for _ in 0..r {
        let mut next = WeightSet::new();
        for mu in out.last().unwrap() {
            next.extend(tensor_step(par, mu)?);
            if next.len() > budget {
                return Err(Error::Budget { needed: next.len(), budget });
            }
        }
        out.push(next);
    }
    Ok(out)
}

/// Integral vectors with Σ|a_i| ≤ r that are p-dominant.
fn dominant_ball(par: &Parabolic, r: usize) -> Vec<Vec<i64>> {
    fn rec(par: &Parabolic, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == par.n {
            if is_p_dominant_integral(par, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for v in -left..=left {
            cur.push(v);
            rec(par, left - v.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(par, r as i64, &mut Vec::new(), &mut out);
    out
}

/// 𝒦_r in closed form: 𝒴_r (B with α_n ∉ I), 𝒴′_r (C, D), and for B with
/// α_n ∈ I the union 𝒴′_r ∪ ⋃_j 𝒴′_{r−2j−1, j} over 0 ≤ j ≤ n − p, where p
/// is the last removed simple root (0 if none) and 𝒴′_{s,j} requires
/// a_{n−j} ≠ 0 for j < n − p.
pub fn k_set_closed(par: &Parabolic, r: usize) -> WeightSet {
    let n = par.n;
    let parity = |a: &[i64], s: usize| a.iter().sum::<i64>().rem_euclid(2) == (s % 2) as i64;
    let l1 = |a: &[i64]| a.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>();
    let to_w = |a: Vec<i64>| Weight::from_ints(&a);
    let ball = dominant_ball(par, r);
    match par.phi {
        RootType::C | RootType::D => ball.into_iter().filter(|a| parity(a, r)).map(to_w).collect(),
        RootType::B if !par.in_levi(n) => ball.into_iter().map(to_w).collect(),
        RootType::B => {
            let p = par.cuts.last().copied().unwrap_or(0);
            let tail = n - p;
            ball.into_iter()
                .filter(|a| {
                    parity(a, r)
                        || (0..=tail).any(|j| {
                            let s = r as i64 - 2 * j as i64 - 1;
                            s >= 0
                                && l1(a) <= s as usize
                                && parity(a, s as usize)
                                && (j == tail || a[n - j - 1] != 0)
                        })
                })
                .map(to_w)
                .collect()
        }
    }
}

/// Checks that the iterated and closed-form 𝒦_r agree, returning the first
/// weight in their symmetric difference otherwise.
pub fn check_k_sets(par: &Parabolic, r: usize) -> Result<()> {
    let bfs = k_sets_bfs(par, r, usize::MAX)?;
    for (j, set) in bfs.iter().enumerate() {
        let closed = k_set_closed(par, j);
        if let Some(w) = set.symmetric_difference(&closed).next() {
            return Err(Error::Verification(format!("𝒦_{j} mismatch at {w:?} for {par:?}")));
        }
    }
    Ok(())
}

/// One linkage step ν = (w s_β)·μ with β ∈ Φ⁺ \ Φ_I, ⟨μ+ρ, β^∨⟩ ∈ ℤ_{>0},
/// w ∈ W_I and ν p-dominant; `sign` is (−1)^{ℓ(w)}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkageStep {
    pub beta: Weight,
    pub target: Weight,
    pub sign: i64,
}

/// Every single linkage step out of μ (which must be p-dominant). Reflections
/// sending μ+ρ to an I-singular weight cannot reach a p-dominant weight and
/// are skipped.
pub fn linkage_steps(par: &Parabolic, mu: &Weight) -> Result<Vec<LinkageStep>> {
    if !par.is_p_dominant(mu) {
        return input(format!("{mu:?} is not p-dominant"));
    }
    let rho = par.rho();
    let shifted = mu + &rho;
    let mut out = Vec::new();
    for beta in par.nilradical_roots() {
        let x = shifted.pairing(&beta);
        if !(x.is_integer() && x.is_positive()) {
            continue;
        }
        let Some((sorted, sign)) = par.sort_to_levi_chamber(&shifted.reflect(&beta)) else {
            continue;
        };
        let target = &sorted - &rho;
        if par.is_p_dominant(&target) {
            out.push(LinkageStep { beta, target, sign });
        }
    }
    Ok(out)
}

/// c(μ, ξ) = Σ_{β ∈ Ψ_{μ,ξ}} (−1)^{ℓ(w_β)}; zero when Ψ_{μ,ξ} is empty.
pub fn jantzen_coefficient(par: &Parabolic, mu: &Weight, xi: &Weight) -> Result<i64> {
    if !par.is_p_dominant(xi) {
        return input(format!("{xi:?} is not p-dominant"));
    }
    Ok(linkage_steps(par, mu)?.iter().filter(|s| s.target == *xi).map(|s| s.sign).sum())
}

/// Whether ν is reachable from μ by a chain of linkage steps. This is a
/// necessary condition for [M^p(μ) : L(ν)] ≠ 0, so the relation contains ≼.
pub fn linkage_reachable(par: &Parabolic, nu: &Weight, mu: &Weight, budget: usize) -> Result<bool> {
    let mut seen = WeightSet::from([mu.clone()]);
    let mut queue = VecDeque::from([mu.clone()]);
    while let Some(x) = queue.pop_front() {
        if x == *nu {
            return Ok(true);
        }
        for step in linkage_steps(par, &x)? {
            if seen.insert(step.target.clone()) {
                if seen.len() > budget {
                    return Err(Error::Budget { needed: seen.len(), budget });
                }
                queue.push_back(step.target);
            }
        }
    }
    Ok(false)
}

/// ‖μ − λ‖₁ when μ − λ is integral.
pub fn l1_distance(mu: &Weight, lambda: &Weight) -> Option<usize> {
    as_ints(&(mu - lambda)).map(|a| a.iter().map(|x| x.unsigned_abs() as usize).sum())
}

/// A linkage step leaving the set under test.
#[derive(Clone, Debug, Serialize)]
pub struct SaturationWitness {
    pub j: usize,
    pub from: Weight,
    pub beta: Weight,
    pub to: Weight,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    /// Roots violating the simplicity hypothesis on λ_{I,c}; the check still
    /// runs when this is non-empty.
    pub simplicity_violations: Vec<Weight>,
    /// |λ_{I,c} + 𝒦_j| for j = 0, …, r.
    pub set_sizes: Vec<usize>,
    /// Number of linkage steps examined.
    pub steps_checked: usize,
    pub witnesses: Vec<SaturationWitness>,
}

impl SaturationReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Checks that every linkage step out of λ_{I,c} + 𝒦_j stays inside it, for
/// j = 0, …, r. Since the linkage relation contains ≼, a pass certifies
/// that these sets are saturated.
pub fn saturation_check(cfg: &HighestWeightConfig, r: usize, budget: usize) -> Result<SaturationReport> {
    let par = cfg.parabolic();
    let k_sets = k_sets_bfs(&par, r, budget)?;
    let mut report = SaturationReport {
        simplicity_violations: cfg.simplicity_violations(),
        set_sizes: Vec::new(),
        steps_checked: 0,
        witnesses: Vec::new(),
    };
    for (j, k_set) in k_sets.iter().enumerate() {
        let set: WeightSet = k_set.iter().map(|w| &cfg.lambda + w).collect();
        report.set_sizes.push(set.len());
        for mu in &set {
            for step in linkage_steps(&par, mu)? {
                report.steps_checked += 1;
                if !set.contains(&step.target) {
                    report.witnesses.push(SaturationWitness { j, from: mu.clone(), beta: step.beta, to: step.target });
                }
            }
        }
    }
    Ok(report)
}

/// Checks that no linkage step leaves λ + 𝒳_r from a p-dominant weight of
/// λ + 𝒳_r (λ + 𝒳_r is the integral ℓ¹-ball of radius r around λ).
pub fn check_ball_is_linkage_closed(par: &Parabolic, lambda: &Weight, r: usize) -> Result<usize> {
    let mut checked = 0;
    for a in dominant_ball_around(par, lambda, r) {
        for step in linkage_steps(par, &a)? {
            checked += 1;
            match l1_distance(&step.target, lambda) {
                Some(d) if d <= r => {}
                _ => {
                    return Err(Error::Verification(format!(
                        "step {:?} → {:?} leaves the ball of radius {r}",
                        a, step.target
                    )))
                }
            }
        }
    }
    Ok(checked)
}

/// p-dominant weights λ + a with a ∈ ℤⁿ, Σ|a_i| ≤ r.
pub fn dominant_ball_around(par: &Parabolic, lambda: &Weight, r: usize) -> Vec<Weight> {
    fn rec(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in -left..=left {
            cur.push(v);
            rec(n, left - v.abs(), cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(par.n, r as i64, &mut Vec::new(), &mut all);
    all.into_iter()
        .map(|a| lambda + &Weight(a.into_iter().map(q).collect()))
        .filter(|w| par.is_p_dominant(w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use crate::weights::roots::RootDatum;

    fn parabolics(n: usize) -> Vec<Parabolic> {
        let mut out = Vec::new();
        for phi in [RootType::B, RootType::C, RootType::D] {
            for mask in 0u32..(1 << n) {
                let cuts: Vec<usize> = (1..=n).filter(|j| mask & (1 << (j - 1)) != 0).collect();
                if let Ok(p) = Parabolic::new(phi, n, cuts) {
                    out.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn explicit_inequalities_match_coroot_pairings() {
        for n in 2..=4 {
            for par in parabolics(n) {
                for a in dominant_ball(&Parabolic::new(par.phi, n, (1..=n).collect()).unwrap(), 3) {
                    let w = Weight::from_ints(&a);
                    assert_eq!(is_p_dominant_integral(&par, &a), par.is_p_dominant(&w), "{par:?} {a:?}");
                }
            }
        }
    }

    #[test]
    fn tensor_step_examples() {
        let par = Parabolic::new(RootType::C, 2, vec![1, 2]).unwrap();
        let s: WeightSet = tensor_step(&par, &Weight::from_ints(&[3, 1])).unwrap().into_iter().collect();
        let expected: WeightSet =
            [[4, 1], [2, 1], [3, 2], [3, 0]].iter().map(|a| Weight::from_ints(a)).collect();
        assert_eq!(s, expected);

        let b = Parabolic::new(RootType::B, 3, vec![1]).unwrap();
        let mu = Weight::from_ints(&[2, 1, 0]);
        assert!(!tensor_step(&b, &mu).unwrap().contains(&mu));
        let mu = Weight::from_ints(&[2, 1, 1]);
        assert!(tensor_step(&b, &mu).unwrap().contains(&mu));
        assert!(tensor_step(&b, &Weight::from_ints(&[0, 0, 1])).is_err());

        for par in parabolics(3) {
            for mu in k_sets_bfs(&par, 2, usize::MAX).unwrap().concat_sets() {
                let s = tensor_step(&par, &mu).unwrap();
                let distinct: WeightSet = s.iter().cloned().collect();
                assert_eq!(distinct.len(), s.len());
            }
        }
    }

    trait Concat {
        fn concat_sets(self) -> WeightSet;
    }
    impl Concat for Vec<WeightSet> {
        fn concat_sets(self) -> WeightSet {
            self.into_iter().flatten().collect()
        }
    }

    #[test]
    fn k_sets_small_cases() {
        let par = Parabolic::new(RootType::C, 2, vec![1, 2]).unwrap();
        let k = k_sets_bfs(&par, 2, usize::MAX).unwrap();
        assert_eq!(k[0], WeightSet::from([Weight::zero(2)]));
        assert_eq!(k[2].len(), 9);
        assert_eq!(k[2], k_set_closed(&par, 2));
        // α_n ∈ I and r ≤ n − p: no exceptional strata.
        let b = Parabolic::new(RootType::B, 4, vec![1]).unwrap();
        for r in 0..=3 {
            let bfs = k_sets_bfs(&b, r, usize::MAX).unwrap().pop().unwrap();
            let plain: WeightSet = dominant_ball(&b, r)
                .into_iter()
                .filter(|a| a.iter().sum::<i64>().rem_euclid(2) == (r % 2) as i64)
                .map(|a| Weight::from_ints(&a))
                .collect();
            assert_eq!(bfs, plain, "r={r}");
        }
    }

    #[test]
    fn k_sets_agree_with_closed_forms() {
        for n in 1..=4 {
            for par in parabolics(n) {
                check_k_sets(&par, 4).unwrap();
            }
        }
        for par in parabolics(5) {
            check_k_sets(&par, 3).unwrap();
        }
    }

    #[test]
    fn jantzen_coefficients_by_hand() {
        // C_2 with I = {α_1}, μ = 0, μ + ρ = (2, 1).
        let par = Parabolic::new(RootType::C, 2, vec![2]).unwrap();
        let mu = Weight::zero(2);
        // β = 2ε_2: s_β(2,1) = (2,−1) is already I-dominant.
        assert_eq!(jantzen_coefficient(&par, &mu, &Weight::from_ints(&[0, -2])).unwrap(), 1);
        // β = 2ε_1: s_β(2,1) = (−2,1) sorts to (1,−2) by one transposition.
        assert_eq!(jantzen_coefficient(&par, &mu, &Weight::from_ints(&[-1, -3])).unwrap(), -1);
        // β = ε_1+ε_2: (−1,−2) is I-dominant.
        assert_eq!(jantzen_coefficient(&par, &mu, &Weight::from_ints(&[-3, -3])).unwrap(), 1);
        assert_eq!(jantzen_coefficient(&par, &mu, &mu).unwrap(), 0);
    }

    #[test]
    fn linkage_is_trivial_from_antidominant_weights() {
        // μ + ρ = (−1/3, −4/3, −7/3) pairs non-positively or non-integrally
        // with every positive root.
        let par = Parabolic::new(RootType::C, 3, vec![3]).unwrap();
        let mu = &Weight(vec![qr(-1, 3), qr(-4, 3), qr(-7, 3)]) - &par.rho();
        assert!(linkage_steps(&par, &mu).unwrap().is_empty());
        assert!(linkage_reachable(&par, &mu, &mu, 100).unwrap());
        assert!(!linkage_reachable(&par, &Weight::zero(3), &mu, 100).unwrap());
        let zero = Weight::zero(3);
        let steps = linkage_steps(&par, &zero).unwrap();
        assert!(!steps.is_empty());
        assert!(linkage_reachable(&par, &steps[0].target, &zero, 1000).unwrap());
    }

    #[test]
    fn balls_around_the_base_weight_are_linkage_closed() {
        let cases = [
            (RootType::C, 4, vec![4], 1, vec![qr(-7, 3)]),
            (RootType::D, 4, vec![4], 1, vec![qr(-7, 3)]),
            (RootType::C, 4, vec![2, 4], 2, vec![q(-3), q(0)]),
            (RootType::B, 4, vec![2, 4], 2, vec![q(-5), q(0)]),
            (RootType::D, 4, vec![2, 4], 1, vec![q(-6), qr(-1, 2)]),
        ];
        for (phi, n, p, i, c) in cases {
            let cfg = HighestWeightConfig::new(RootDatum::new(phi, n, p, i).unwrap(), c).unwrap();
            let par = cfg.parabolic();
            if !cfg.simplicity_violations().is_empty() {
                continue;
            }
            for r in 0..=3 {
                check_ball_is_linkage_closed(&par, &cfg.lambda, r).unwrap();
                // Jantzen coefficients vanish between the ball and its outside.
                for mu in dominant_ball_around(&par, &cfg.lambda, r) {
                    for step in linkage_steps(&par, &mu).unwrap() {
                        assert!(l1_distance(&step.target, &cfg.lambda).unwrap() <= r);
                    }
                }
            }
        }
    }

    #[test]
    fn generic_base_weight_is_saturated() {
        let cfg = HighestWeightConfig::new(RootDatum::new(RootType::D, 4, vec![4], 1).unwrap(), vec![qr(-7, 3)]).unwrap();
        assert!(cfg.simplicity_violations().is_empty());
        let report = saturation_check(&cfg, 2, 10_000).unwrap();
        assert!(report.passed(), "{:?}", report.witnesses);
        assert_eq!(report.set_sizes[0], 1);
    }

    #[test]
    fn violating_base_weight_still_runs() {
        let cfg = HighestWeightConfig::new(RootDatum::new(RootType::C, 4, vec![2, 4], 1).unwrap(), vec![q(3), q(0)]).unwrap();
        assert!(!cfg.simplicity_violations().is_empty());
        let report = saturation_check(&cfg, 2, 10_000).unwrap();
        assert_eq!(report.set_sizes.len(), 3);
    }

    #[test]
    fn simple_coordinates_reconstruct() {
        for par in parabolics(4) {
            let x = Weight(vec![qr(3, 2), q(-2), qr(1, 3), q(5)]);
            let c = par.simple_coordinates(&x);
            let back = par.simple_roots().iter().zip(&c).fold(Weight::zero(4), |acc, (a, t)| &acc + &a.scale(t));
            assert_eq!(back, x);
        }
    }

    #[test]
    fn levi_roots_match_the_span_of_levi_simple_roots() {
        for par in parabolics(4) {
            for b in par.positive_roots() {
                let c = par.simple_coordinates(&b);
                let in_span = c.iter().enumerate().all(|(j, x)| x.is_zero() || par.in_levi(j + 1));
                assert_eq!(par.in_levi_roots(&b), in_span, "{par:?} {b:?}");
            }
        }
    }
}
