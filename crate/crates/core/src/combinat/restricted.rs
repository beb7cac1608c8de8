//! The u-restrictedness test for multipartitions.

use super::partition::Multipartition;
use crate::rational::{to_nat, Q};

/// Splits parameter indices into classes whose values differ by integers;
/// each class is sorted so that earlier parameters exceed later ones by a
/// natural number (ties keep their original order).
pub fn orbits(u: &[Q]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..u.len() {
        match classes.iter_mut().find(|c| (&u[c[0]] - &u[i]).is_integer()) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    for c in &mut classes {
        c.sort_by(|&i, &j| u[j].cmp(&u[i]).then(i.cmp(&j)));
    }
    classes
}

/// λ is u-restricted iff, within every integer-difference orbit sorted by
/// decreasing parameter, λ^{(i)}_{u_i − u_{i+1} + j} ≤ λ^{(i+1)}_j for all j ≥ 1.
pub fn u_restricted(lambda: &Multipartition, u: &[Q]) -> bool {
    assert_eq!(lambda.level(), u.len(), "one parameter per component");
    orbits(u).iter().all(|orbit| {
        orbit.windows(2).all(|w| {
            let (i, k) = (w[0], w[1]);
            let gap = to_nat(&(&u[i] - &u[k])).expect("orbit sorted by decreasing parameter");
            let (upper, lower) = (lambda.comp(i), lambda.comp(k));
            let rows = upper.len().max(lower.len()) + 1;
            (1..=rows).all(|j| upper.part(gap + j) <= lower.part(j))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn mp(v: &[&[usize]]) -> Multipartition {
        Multipartition::from_vecs(&v.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn level_one_is_vacuous() {
        assert!(u_restricted(&mp(&[&[3]]), &[q(5)]));
        assert!(u_restricted(&mp(&[&[1, 1, 1]]), &[q(0)]));
    }

    #[test]
    fn level_two_examples() {
        let u = [q(1), q(0)];
        assert!(u_restricted(&mp(&[&[1], &[1]]), &u));
        assert!(u_restricted(&mp(&[&[], &[2]]), &u));
        assert!(!u_restricted(&mp(&[&[1, 1], &[]]), &u));
        // reversed parameters swap the roles of the components
        assert!(!u_restricted(&mp(&[&[], &[1, 1]]), &[q(0), q(1)]));
    }

    #[test]
    fn separate_orbits_impose_nothing() {
        let u = [q(0), qr(1, 2)];
        for l in Multipartition::all(2, 4) {
            assert!(u_restricted(&l, &u));
        }
    }

    #[test]
    fn orbit_splitting() {
        let u = [q(0), qr(1, 3), q(2), qr(-2, 3)];
        assert_eq!(orbits(&u), vec![vec![2, 0], vec![1, 3]]);
    }
}
