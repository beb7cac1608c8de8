//! Index data behind the singular vectors: i_λ, l = i_λ w_λ, the exponents
//! a_c of the top term of π̃_[λ'], the target indices j and j^ξ, and the
//! root-vector words y_{l_c,a_c,c} and y_{ξ,s}.

use serde::Serialize;

use crate::combinat::{Multipartition, Perm};
use crate::error::{input, Result};
use crate::hecke::cellular::w_lambda;
use crate::weights::{index_sequence, HighestWeightConfig, RootDatum, RootType, Weight};

/// An ordered product of root vectors f_{a,b}, written left to right.
pub type RootWord = Vec<(i64, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorData {
    pub i_lambda: Vec<i64>,
    pub l: Vec<i64>,
    pub a: Vec<usize>,
    pub j: Vec<i64>,
}

/// The sequence i·w: the entry at position p moves to position (p)w.
/// Positions beyond the degree of w stay fixed.
pub fn permute_indices(seq: &[i64], w: &Perm) -> Vec<i64> {
    let mut out = seq.to_vec();
    for (p, &x) in seq.iter().enumerate().take(w.degree()) {
        out[w.apply(p + 1) - 1] = x;
    }
    out
}

/// Exponent of X_c in the top-degree term of π̃_[μ] = ∏_{i=1}^{a−1} ∏_{j ≤ b_i} (X_j − ·)
/// for the profile [b_0, …, b_a] of μ.
pub fn top_term_exponents(mu: &Multipartition) -> Vec<usize> {
    let b = mu.profile().b;
    let a = mu.level();
    (1..=mu.size()).map(|c| (1..a).filter(|&i| b[i] >= c).count()).collect()
}

fn p_of(d: &RootDatum, t: i64) -> Result<i64> {
    if t < 0 || t as usize > d.k() {
        return input(format!("p_{t} is undefined for k = {}", d.k()));
    }
    Ok(d.p_at(t as usize) as i64)
}

/// q_t = p_t − p_{t−1}, 1 ≤ t ≤ k.
fn q_of(d: &RootDatum, t: i64) -> Result<i64> {
    if t < 1 {
        return input(format!("q_{t} is undefined"));
    }
    Ok(p_of(d, t)? - p_of(d, t - 1)?)
}

fn delta_i1(d: &RootDatum) -> i64 {
    i64::from(d.i == 1)
}

fn delta_i2(d: &RootDatum) -> i64 {
    i64::from(d.i == 2)
}

/// i_λ, l = i_λ w_λ, the top-term exponents a_c of π̃_[λ'] and the indices j_c.
pub fn build_vector_data(cfg: &HighestWeightConfig, r: usize, f: usize, lambda: &Multipartition) -> Result<VectorData> {
    let d = &cfg.datum;
    if lambda.level() != d.level() || 2 * f > r || lambda.size() != r - 2 * f {
        return input(format!("label (f={f}, λ of size {}) does not fit a = {}, r = {r}", lambda.size(), d.level()));
    }
    cfg.check_block_sizes(r)?;
    let k = d.k() as i64;
    let i_lambda = index_sequence(cfg, lambda);
    let l = permute_indices(&i_lambda, &w_lambda(lambda));
    let a = top_term_exponents(&lambda.conjugate());
    let b = lambda.profile().b;
    let mut j = Vec::with_capacity(l.len());
    for (lc, &ac) in l.iter().zip(&a) {
        let ac_i = ac as i64;
        j.push(if ac_i < k {
            lc - p_of(d, ac_i)? + b[ac] as i64
        } else {
            1 + lc + p_of(d, 2 * k - ac_i - 1 + delta_i1(d))? + b[ac] as i64
        });
    }
    Ok(VectorData { i_lambda, l, a, j })
}

/// ξ_{r,s} = ξ_{r−2f+2s−1}, read from the exponents attached to positions
/// r−1, r−3, … (`xi[i−1]` sits at r − 2i + 1).
fn xi_rs(xi: &[usize], s: usize) -> usize {
    xi[xi.len() - s]
}

/// j^ξ = (j^ξ_1, …, j^ξ_{2f}).
pub fn j_xi(datum: &RootDatum, r: usize, xi: &[usize]) -> Result<Vec<i64>> {
    let f = xi.len();
    let k = datum.k() as i64;
    let (ri, fi) = (r as i64, f as i64);
    let mut out = vec![0; 2 * f];
    for s in 1..=f {
        let x = xi_rs(xi, s) as i64;
        let si = s as i64;
        out[2 * s - 1] = ri - 2 * fi + si;
        out[2 * s - 2] = if x <= k - 1 {
            -p_of(datum, x)? - ri + 2 * fi - si
        } else {
            ri - fi + si + p_of(datum, 2 * k - 1 - delta_i2(datum) - x)?
        };
    }
    Ok(out)
}

/// y_{l_c,a_c,c}: a word of a_c root vectors of 𝔲⁻ carrying v_{l_c} to v_{j_c}.
///
/// For a_c ≥ k the word is the chain −j_c → −(z+p_1) → ⋯ → −(z+p_{k−1})
/// followed by A_c and B_c; when k = 1 the chain is empty and A_c starts at −j_c.
pub fn y_lc(datum: &RootDatum, lc: i64, ac: usize, jc: i64) -> Result<RootWord> {
    let k = datum.k() as i64;
    let a = ac as i64;
    let d1 = delta_i1(datum);
    if a == 0 {
        return Ok(Vec::new());
    }
    if a < k {
        // L_s = l_c − Σ_{t=1}^{s} q_{a_c−t+1}
        let mut big_l = vec![lc];
        for t in 1..a {
            big_l.push(big_l[(t - 1) as usize] - q_of(datum, a - t + 1)?);
        }
        let mut word = vec![(big_l[(a - 1) as usize], jc)];
        for s in (1..a).rev() {
            word.push((big_l[(s - 1) as usize], big_l[s as usize]));
        }
        return Ok(word);
    }
    let z = 1 + lc + p_of(datum, 2 * k - (a + 1) + d1)?;
    let mut chain = vec![jc];
    for t in 1..k {
        chain.push(z + p_of(datum, t)?);
    }
    let mut word: RootWord = chain.windows(2).map(|w| (-w[0], -w[1])).collect();
    // S_t = Σ_{s=0}^{t} q_{2k−a_c+δ_{i,1}+s}
    let mut partial = vec![0i64];
    for s in 0..(a - k) {
        let next = partial.last().unwrap() + q_of(datum, 2 * k - a + d1 + s)?;
        partial.push(next);
    }
    let top = *partial.last().unwrap();
    word.push((-chain[chain.len() - 1], -lc + top));
    for t in (0..(a - k) as usize).rev() {
        word.push((-lc + partial[t + 1], -lc + partial[t]));
    }
    Ok(word)
}

/// y_{ξ,s} for 1 ≤ s ≤ f.
pub fn y_xi(datum: &RootDatum, r: usize, xi: &[usize], s: usize) -> Result<RootWord> {
    let f = xi.len() as i64;
    let k = datum.k() as i64;
    let d2 = delta_i2(datum);
    let x = xi_rs(xi, s) as i64;
    let z = r as i64 - f + s as i64;
    if x == 0 {
        return Ok(Vec::new());
    }
    if x <= k - 1 {
        let mut word = Vec::new();
        for t in (1..=x).rev() {
            word.push((p_of(datum, t)? + z - f, p_of(datum, t - 1)? + z - f));
        }
        return Ok(word);
    }
    let mut word = Vec::new();
    for t in (1..=x - k).rev() {
        word.push((p_of(datum, k - t - d2)? + z, p_of(datum, k - t - 1 - d2)? + z));
    }
    word.push((-p_of(datum, k - 1)? - z + f, p_of(datum, k - 1 - d2)? + z));
    for t in (1..k).rev() {
        word.push((p_of(datum, t)? + z - f, p_of(datum, t - 1)? + z - f));
    }
    Ok(word)
}

/// The full word y_{λ,ξ} = →∏_c y_{l_c,a_c,c} →∏_s y_{ξ,s} and the target
/// index sequence j^{λ,ξ} = (j, j^ξ).
pub fn build_y_operators(
    cfg: &HighestWeightConfig,
    r: usize,
    f: usize,
    lambda: &Multipartition,
    xi: &[usize],
) -> Result<(RootWord, Vec<i64>)> {
    if xi.len() != f {
        return input(format!("ξ has {} entries, expected f = {f}", xi.len()));
    }
    let data = build_vector_data(cfg, r, f, lambda)?;
    let mut word = Vec::new();
    for c in 0..data.l.len() {
        word.extend(y_lc(&cfg.datum, data.l[c], data.a[c], data.j[c])?);
    }
    for s in 1..=f {
        word.extend(y_xi(&cfg.datum, r, xi, s)?);
    }
    let mut target = data.j.clone();
    target.extend(j_xi(&cfg.datum, r, xi)?);
    Ok((word, target))
}

/// deg v_t = t' − 1 and deg v_{−t} = a − t' for t ∈ p_{t'}; deg v_0 = (a−1)/2
/// (doubled, to stay integral in type B with i = 2).
pub fn doubled_degree(datum: &RootDatum, index: i64) -> usize {
    let a = datum.level();
    if index == 0 {
        return a - 1;
    }
    let t = index.unsigned_abs() as usize;
    let block = (1..=datum.k()).find(|&b| t <= datum.p_at(b)).unwrap_or(datum.k());
    if index > 0 {
        2 * (block - 1)
    } else {
        2 * (a - block)
    }
}

/// deg v_k for a sequence, doubled.
pub fn doubled_sequence_degree(datum: &RootDatum, seq: &[i64]) -> usize {
    seq.iter().map(|&x| doubled_degree(datum, x)).sum()
}

/// Weight of a root-vector word.
pub fn word_weight(n: usize, word: &[(i64, i64)]) -> Weight {
    let v = |i: i64| {
        if i == 0 {
            Weight::zero(n)
        } else {
            Weight::unit(n, i.unsigned_abs() as usize, i.signum())
        }
    };
    word.iter().fold(Weight::zero(n), |acc, &(a, b)| &(&acc + &v(a)) - &v(b))
}

/// Is f_{a,b} a nonzero multiple of an element of ℬ_I (a root vector of 𝔲⁻)?
pub fn is_lowering_factor(datum: &RootDatum, a: i64, b: i64) -> bool {
    let n = datum.n as i64;
    if a.abs() > n || b.abs() > n || ((a == 0 || b == 0) && datum.phi != RootType::B) {
        return false;
    }
    if a == -b && datum.phi != RootType::C {
        return false;
    }
    let beta = word_weight(datum.n, &[(a, b)]);
    if beta.0.iter().all(num_traits::Zero::is_zero) {
        return false;
    }
    let par = datum.parabolic();
    let negative = beta.0.iter().find(|c| !num_traits::Zero::is_zero(*c)).is_some_and(num_traits::Signed::is_negative);
    negative && !par.in_levi_roots(&beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn example_cfg() -> HighestWeightConfig {
        let d = RootDatum::new(RootType::D, 41, vec![20, 41], 1).unwrap();
        HighestWeightConfig::new(d, vec![qr(1, 3), qr(-2, 7)]).unwrap()
    }

    fn example_lambda() -> Multipartition {
        Multipartition::from_vecs(&[vec![], vec![2], vec![2, 1], vec![1]]).unwrap()
    }

    #[test]
    fn worked_example_sequences() {
        let cfg = example_cfg();
        let data = build_vector_data(&cfg, 10, 2, &example_lambda()).unwrap();
        assert_eq!(data.i_lambda, vec![21, 21, -41, -41, -40, -20]);
        assert_eq!(data.l, vec![-20, -41, -40, -41, 21, 21]);
        assert_eq!(data.a, vec![3, 2, 2, 2, 1, 1]);
        assert_eq!(data.j, vec![6, 3, 4, 3, 1, 1]);
        // ξ = (0^6, 1, 0, 3, 0): 3 at position 9 = r − 1, 1 at position 7 = r − 3
        assert_eq!(j_xi(&cfg.datum, 10, &[3, 1]).unwrap(), vec![-27, 7, 10, 8]);
    }

    #[test]
    fn worked_example_words() {
        let cfg = example_cfg();
        let d = &cfg.datum;
        let data = build_vector_data(&cfg, 10, 2, &example_lambda()).unwrap();
        let y = |c: usize| y_lc(d, data.l[c], data.a[c], data.j[c]).unwrap();
        assert_eq!(y(0), vec![(-6, -21), (-21, 41), (41, 20)]);
        assert_eq!(y(1), vec![(-3, -21), (-21, 41)]);
        assert_eq!(y(3), y(1));
        assert_eq!(y(4), vec![(21, 1)]);
        assert_eq!(y(5), y(4));
        assert_eq!(y_xi(d, 10, &[3, 1], 1).unwrap(), vec![(27, 7)]);
        assert_eq!(y_xi(d, 10, &[3, 1], 2).unwrap(), vec![(30, 10), (-28, 30), (28, 8)]);
    }

    #[test]
    fn third_word_follows_the_definition() {
        // l_3 = −40, a_3 = 2, j_3 = 4: z_3 = 2, so the chain passes through 22
        let cfg = example_cfg();
        let data = build_vector_data(&cfg, 10, 2, &example_lambda()).unwrap();
        let y3 = y_lc(&cfg.datum, data.l[2], data.a[2], data.j[2]).unwrap();
        assert_eq!(y3, vec![(-4, -22), (-22, 40)]);
        assert!(y3.iter().all(|&(a, b)| is_lowering_factor(&cfg.datum, a, b)));
        // the printed alternative starts with a Levi root vector
        assert!(!is_lowering_factor(&cfg.datum, -4, -20));
    }

    #[test]
    fn top_term_matches_the_interval_description() {
        // a_c = a − j for b_a − b_{a−j} ≥ c > b_a − b_{a−j+1}
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = rng.gen_range(1..=4);
            let m = rng.gen_range(0..=6);
            let all = Multipartition::all(a, m);
            let lambda = &all[rng.gen_range(0..all.len())];
            let b = lambda.profile().b;
            let top = top_term_exponents(&lambda.conjugate());
            for c in 1..=m {
                let j = (1..=a).find(|&j| b[a] - b[a - j] >= c && c > b[a] - b[a - j + 1]).unwrap();
                assert_eq!(top[c - 1], a - j);
            }
        }
    }

    fn random_configs() -> Vec<(HighestWeightConfig, usize)> {
        let mut out = Vec::new();
        for (phi, i) in [(RootType::D, 1), (RootType::C, 1), (RootType::C, 2), (RootType::B, 2), (RootType::D, 2)] {
            for k in 1..=3usize {
                let r = 4;
                let p: Vec<usize> = (1..=k).map(|t| t * 2 * r + t).collect();
                let n = *p.last().unwrap();
                let d = RootDatum::new(phi, n, p, i).unwrap();
                let mut c: Vec<_> = (0..k).map(|t| qr(2 * t as i64 + 1, 7)).collect();
                if i == 2 {
                    c[k - 1] = qr(0, 1);
                }
                out.push((HighestWeightConfig::new(d, c).unwrap(), r));
            }
        }
        out
    }

    #[test]
    fn words_are_lowering_and_carry_the_right_weight() {
        for (cfg, r) in random_configs() {
            let d = &cfg.datum;
            let a = d.level();
            for f in 0..=r / 2 {
                for lambda in Multipartition::all(a, r - 2 * f) {
                    let data = build_vector_data(&cfg, r, f, &lambda).unwrap();
                    for c in 0..data.l.len() {
                        let y = y_lc(d, data.l[c], data.a[c], data.j[c]).unwrap();
                        assert_eq!(y.len(), data.a[c]);
                        assert!(y.iter().all(|&(x, z)| is_lowering_factor(d, x, z)), "{:?} {y:?}", d);
                        let lhs = word_weight(d.n, &y);
                        let expect = word_weight(d.n, &[(data.l[c], data.j[c])]);
                        // f_{l,j} has weight wt v_l − wt v_j
                        assert_eq!(lhs, expect, "{:?} c={c} {y:?}", d);
                    }
                    for xi in crate::combinat::delta::dot_vectors(a, f) {
                        let (word, target) = build_y_operators(&cfg, r, f, &lambda, &xi).unwrap();
                        assert!(word.iter().all(|&(x, z)| is_lowering_factor(d, x, z)));
                        let xs: usize = xi.iter().sum();
                        assert_eq!(word.len(), data.a.iter().sum::<usize>() + xs);
                        assert!(target.iter().all(|&t| t != 0 && t.unsigned_abs() as usize <= d.n));
                    }
                }
            }
        }
    }

    #[test]
    fn index_rules_hold() {
        for (cfg, r) in random_configs() {
            let d = &cfg.datum;
            let a = d.level();
            for f in 0..=r / 2 {
                for lambda in Multipartition::all(a, r - 2 * f) {
                    let data = build_vector_data(&cfg, r, f, &lambda).unwrap();
                    let m = data.l.len();
                    for c1 in 0..m {
                        assert!(data.j[c1] >= 1 && data.j[c1] <= r as i64);
                        for c2 in 0..m {
                            assert_eq!(data.j[c1] == data.j[c2], data.l[c1] == data.l[c2]);
                        }
                    }
                    let deg_i = doubled_sequence_degree(d, &data.i_lambda);
                    assert_eq!(deg_i, doubled_sequence_degree(d, &data.l));
                    assert_eq!(deg_i, 2 * data.a.iter().sum::<usize>());
                    for xi in crate::combinat::delta::dot_vectors(a, f) {
                        let jx = j_xi(d, r, &xi).unwrap();
                        for c1 in 0..jx.len() {
                            for c2 in c1 + 1..jx.len() {
                                assert_ne!(jx[c1], jx[c2]);
                            }
                            assert!(!data.j.contains(&jx[c1]));
                        }
                        if a > d.k() && xi.iter().all(|&x| x == a - 1) {
                            assert!(jx.iter().all(|&t| t >= 1 && t <= r as i64), "{jx:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn l_lies_in_the_predicted_blocks() {
        for (cfg, r) in random_configs() {
            let d = &cfg.datum;
            let k = d.k();
            let a = d.level();
            for lambda in Multipartition::all(a, r) {
                let data = build_vector_data(&cfg, r, 0, &lambda).unwrap();
                for (&lc, &ac) in data.l.iter().zip(&data.a) {
                    let (lo, hi, sign) = if ac < k {
                        (d.p_at(ac) + 1, d.p_at(ac + 1), 1)
                    } else {
                        let t = 2 * k + usize::from(d.i == 1) - ac - 1;
                        (d.p_at(t - 1) + 1, d.p_at(t), -1)
                    };
                    let mag = lc.unsigned_abs() as usize;
                    assert!(lc.signum() == sign && mag >= lo && mag <= hi, "{lc} a={ac}");
                }
            }
        }
    }
}
