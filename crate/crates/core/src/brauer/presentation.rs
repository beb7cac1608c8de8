//! The dimension of the algebra actually presented by the generators and
//! relations for a given ω table.
//!
//! The right action on normal monomials defines an action of the free
//! algebra on the span V of normal monomials. Let U be the cyclic subspace
//! generated by 1 and K the smallest invariant subspace containing every
//! `v·R` (v ∈ U, R a relator). Every rewriting step is a defining relation,
//! so the presented algebra is U/K; with admissible ω we have K = 0.

use super::algebra::{BrauerAlgebra, BrauerElement};
use super::diagram::Letter;
use crate::error::Result;
use crate::linalg::{Echelon, SVec};

/// U, K and the resulting dimension dim U − dim K.
pub struct Presentation {
    pub span: Echelon,
    pub relations: Echelon,
}

impl Presentation {
    pub fn dimension(&self) -> usize {
        self.span.dim() - self.relations.dim()
    }
}

fn letters(r: usize) -> Vec<Letter> {
    let mut out: Vec<Letter> = (1..r).flat_map(|i| [Letter::S(i), Letter::E(i)]).collect();
    out.extend((1..=r).map(Letter::X));
    out
}

fn close(alg: &BrauerAlgebra, space: &mut Echelon, mut queue: Vec<SVec>) -> Result<()> {
    let gens = letters(alg.r());
    while let Some(v) = queue.pop() {
        let x = alg.from_vector(&v);
        for &g in &gens {
            let y = alg.act_word(&x, &[g])?;
            let w = alg.to_vector(&y);
            let red = space.reduce(&w);
            if !red.is_empty() {
                space.insert_reduced(red);
                queue.push(w);
            }
        }
    }
    Ok(())
}

/// Computes U and K; relation (5) is imposed for every k the ω table holds.
pub fn presentation(alg: &BrauerAlgebra) -> Result<Presentation> {
    let mut span = Echelon::new();
    let one = alg.to_vector(&alg.one());
    span.insert(&one);
    close(alg, &mut span, vec![one])?;

    let relators = alg.relators(alg.omega().len() - 1);
    let mut relations = Echelon::new();
    let mut queue = Vec::new();
    for row in span.rows() {
        let x: BrauerElement = alg.from_vector(row);
        for rel in &relators {
            let w = alg.to_vector(&alg.apply_relator(&x, rel)?);
            let red = relations.reduce(&w);
            if !red.is_empty() {
                relations.insert_reduced(red);
                queue.push(w);
            }
        }
    }
    close(alg, &mut relations, queue)?;
    Ok(Presentation { span, relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::generic_dimension;
    use crate::rational::{q, qr, Q};

    #[test]
    fn admissible_parameters_present_the_full_algebra() {
        let b = BrauerAlgebra::new(2, 2, vec![q(1), qr(-1, 3)]).unwrap();
        let p = presentation(&b).unwrap();
        assert_eq!(p.relations.dim(), 0);
        assert_eq!(p.dimension(), generic_dimension(2, 2));
    }

    #[test]
    fn corrupted_loop_parameter_collapses() {
        let u = vec![q(1), qr(-1, 3)];
        let mut omega = crate::brauer::admissible_omega(&u, crate::brauer::omega_order(2, 2));
        omega[1] += Q::from_integer(1.into());
        let b = BrauerAlgebra::with_omega(2, 2, u, omega).unwrap();
        let p = presentation(&b).unwrap();
        assert!(p.dimension() < generic_dimension(2, 2), "dim {}", p.dimension());
    }
}
