//! Coset representatives 𝒟_r^f and the cell index sets δ(f,λ).

use super::partition::Multipartition;
use super::perm::Perm;
use super::tableau::Tableau;
use crate::error::{input, Result};

/// One element (t, ξ, d) of δ(f,λ).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaIndex {
    pub t: Tableau,
    /// `xi[i-1]` is the exponent attached to position r − 2i + 1.
    pub xi: Vec<usize>,
    pub d: Perm,
}

impl DeltaIndex {
    /// The full length-r exponent vector with entries only at r−1, r−3, ….
    pub fn xi_full(&self, r: usize) -> Vec<usize> {
        let mut v = vec![0; r];
        for (i, &e) in self.xi.iter().enumerate() {
            v[r - 2 * (i + 1)] = e;
        }
        v
    }
}

/// Does t^τ·d lie in the row-standard, increasing-first-column set for
/// τ = ((r−2f),(2^f))?
pub fn is_coset_rep(d: &Perm, f: usize) -> bool {
    let r = d.degree();
    if 2 * f > r {
        return false;
    }
    let m = r - 2 * f;
    let first_ok = (1..m).all(|x| d.apply(x) < d.apply(x + 1));
    let pairs_ok = (0..f).all(|i| {
        let x = m + 2 * i + 1;
        d.apply(x) < d.apply(x + 1)
    });
    let column_ok = (1..f).all(|i| {
        let x = m + 2 * i + 1;
        d.apply(x - 2) < d.apply(x)
    });
    first_ok && pairs_ok && column_ok
}

/// 𝒟_r^f by filtering the whole symmetric group; only sensible for small r.
pub fn coset_reps_by_filter(r: usize, f: usize) -> Vec<Perm> {
    let mut out: Vec<Perm> = Perm::all(r).into_iter().filter(|d| is_coset_rep(d, f)).collect();
    out.sort();
    out
}

/// 𝒟_r^f built directly: choose the r−2f entries of the first row, then a
/// perfect matching of the rest into pairs listed by increasing minimum.
pub fn coset_reps(r: usize, f: usize) -> Vec<Perm> {
    if 2 * f > r {
        return Vec::new();
    }
    let m = r - 2 * f;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(m);
    fn choose(
        start: usize,
        r: usize,
        m: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Perm>,
    ) {
        if chosen.len() == m {
            let rest: Vec<usize> = (1..=r).filter(|x| !chosen.contains(x)).collect();
            let mut pairs = Vec::new();
            matchings(&rest, &mut pairs, &mut |pairs| {
                let mut images = chosen.clone();
                for &(p, q) in pairs {
                    images.push(p);
                    images.push(q);
                }
                out.push(Perm::from_images(&images).expect("coset representative"));
            });
            return;
        }
        for x in start..=r {
            chosen.push(x);
            choose(x + 1, r, m, chosen, out);
            chosen.pop();
        }
    }
    choose(1, r, m, &mut chosen, &mut out);
    out.sort();
    out
}

fn matchings(
    rest: &[usize],
    pairs: &mut Vec<(usize, usize)>,
    emit: &mut dyn FnMut(&[(usize, usize)]),
) {
    if rest.is_empty() {
        emit(pairs);
        return;
    }
    let first = rest[0];
    for k in 1..rest.len() {
        let partner = rest[k];
        let remaining: Vec<usize> =
            rest.iter().enumerate().filter(|&(i, _)| i != 0 && i != k).map(|(_, &x)| x).collect();
        pairs.push((first, partner));
        matchings(&remaining, pairs, emit);
        pairs.pop();
    }
}

/// r! / (2^f f! (r−2f)!).
pub fn num_coset_reps(r: usize, f: usize) -> u128 {
    if 2 * f > r {
        return 0;
    }
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    fact(r) / (1u128 << f) / fact(f) / fact(r - 2 * f)
}

/// All ξ ∈ {0,…,a−1}^f in lexicographic order.
pub fn dot_vectors(a: usize, f: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..f {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..a).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// δ(f,λ) = 𝒯^std(λ) × ℕ_a^f × 𝒟_r^f.
pub fn enumerate_delta(f: usize, lambda: &Multipartition, r: usize) -> Result<Vec<DeltaIndex>> {
    if 2 * f > r || lambda.size() != r - 2 * f {
        return input(format!("|λ| = {} but r − 2f = {r} − {}", lambda.size(), 2 * f));
    }
    let a = lambda.level();
    let tabs = Tableau::standard(lambda);
    let xis = dot_vectors(a, f);
    let ds = coset_reps(r, f);
    let mut out = Vec::with_capacity(tabs.len() * xis.len() * ds.len());
    for t in &tabs {
        for xi in &xis {
            for d in &ds {
                out.push(DeltaIndex { t: t.clone(), xi: xi.clone(), d: d.clone() });
            }
        }
    }
    Ok(out)
}

/// Λ_{a,r}: all (f, λ) with λ an a-multipartition of r − 2f, listed with
/// higher strata first (larger f, then the total order on multipartitions).
pub fn cell_labels(a: usize, r: usize) -> Vec<(usize, Multipartition)> {
    (0..=r / 2)
        .rev()
        .flat_map(|f| Multipartition::all(a, r - 2 * f).into_iter().map(move |l| (f, l)))
        .collect()
}

/// (f,λ) ⊵ (h,μ): f > h, or f = h and λ ⊵ μ.
pub fn stratum_ge(x: &(usize, Multipartition), y: &(usize, Multipartition)) -> bool {
    x.0 > y.0 || (x.0 == y.0 && x.1.dominance_ge(&y.1).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_matches_filter_and_formula() {
        for r in 0..=7 {
            for f in 0..=r / 2 {
                let gen = coset_reps(r, f);
                assert_eq!(gen.len() as u128, num_coset_reps(r, f), "r={r} f={f}");
                assert!(gen.iter().all(|d| is_coset_rep(d, f)));
                assert_eq!(gen, coset_reps_by_filter(r, f), "r={r} f={f}");
            }
        }
    }

    #[test]
    fn delta_sizes_and_dimension_count() {
        for a in 1..=3 {
            for r in 1..=4 {
                let mut total: u128 = 0;
                for (f, l) in cell_labels(a, r) {
                    let d = enumerate_delta(f, &l, r).unwrap();
                    let expect = l.num_standard() * (a as u128).pow(f as u32) * num_coset_reps(r, f);
                    assert_eq!(d.len() as u128, expect);
                    total += expect * expect;
                }
                let dfact: u128 = (1..=r as u128).map(|k| 2 * k - 1).product();
                assert_eq!(total, (a as u128).pow(r as u32) * dfact, "a={a} r={r}");
            }
        }
    }

    #[test]
    fn f_zero_is_tableaux() {
        let l = Multipartition::from_vecs(&[vec![2], vec![1]]).unwrap();
        let d = enumerate_delta(0, &l, 3).unwrap();
        assert_eq!(d.len() as u128, l.num_standard());
        assert!(d.iter().all(|x| x.d.is_identity() && x.xi.is_empty()));
        assert!(enumerate_delta(1, &l, 3).is_err());
    }

    #[test]
    fn xi_positions() {
        let l = Multipartition::empty(2);
        let d = enumerate_delta(2, &l, 4).unwrap();
        let x = d.iter().find(|x| x.xi == vec![1, 0]).unwrap();
        assert_eq!(x.xi_full(4), vec![0, 0, 1, 0]);
    }
}
