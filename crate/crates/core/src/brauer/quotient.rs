//! The quotient map B_{a,r}(u) → B_{a,r}(u)/⟨E_1⟩ ≅ H_{a,r}(u).

use super::algebra::{BrauerAlgebra, BrauerElement};
use super::diagram::Letter;
use std::collections::HashMap;

use num_traits::Zero;

use super::cellular::BrauerCellular;
use crate::combinat::{Multipartition, Perm};
use crate::hecke::cellular::{Flavor, HeckeCellular};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};

/// Image in H: monomials with arcs lie in ⟨E_1⟩ and vanish; w·X^β ↦ w·x^β.
pub fn hecke_image(h: &HeckeAlgebra, x: &BrauerElement) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero();
    for (m, c) in x.iter() {
        if !m.diagram.is_perm() {
            continue;
        }
        let images: Vec<usize> = m.diagram.through().iter().map(|&(_, bot)| bot).collect();
        let w = Perm::from_images(&images)?;
        let mut y = h.perm(&w);
        for (j, &k) in m.bottom.iter().enumerate() {
            y = h.mul(&y, &h.x_power(j + 1, k as usize));
        }
        out.add_scaled(&y, c);
    }
    Ok(out)
}

/// Checks that the arc-free monomials multiply as their images in H do,
/// and that arc monomials span exactly the ideal ⟨E_1⟩.
pub fn check_hecke_quotient(b: &BrauerAlgebra, h: &HeckeAlgebra) -> Result<()> {
    if b.a() != h.a() || b.r() != h.r() || b.u() != h.u() {
        return Err(Error::Input("algebras have different parameters".into()));
    }
    let free: Vec<&super::BrauerMonomial> = b.basis().iter().filter(|m| m.diagram.is_perm()).collect();
    if free.len() != h.dim() {
        return Err(Error::Verification(format!(
            "{} arc-free monomials but dim H = {}",
            free.len(),
            h.dim()
        )));
    }
    let ideal = super::cellular::e_ideal(b, 1)?;
    if ideal.dim() != b.dim() - h.dim() {
        return Err(Error::Verification(format!("dim ⟨E_1⟩ = {}, expected {}", ideal.dim(), b.dim() - h.dim())));
    }
    let images: Vec<HeckeElement> = free
        .iter()
        .map(|m| hecke_image(h, &BrauerElement::monomial((*m).clone())))
        .collect::<Result<_>>()?;
    for (x, hx) in free.iter().zip(&images) {
        let bx = BrauerElement::monomial((*x).clone());
        for (y, hy) in free.iter().zip(&images) {
            let prod = b.act_word(&bx, &b.monomial_word(y))?;
            let lhs = hecke_image(h, &prod)?;
            let rhs = h.mul(hx, hy);
            if lhs != rhs {
                return Err(Error::Verification(format!("quotient product mismatch for {x:?} · {y:?}")));
            }
        }
    }
    // Generators map to generators.
    for i in 1..b.r() {
        if hecke_image(h, &b.word(&[Letter::S(i)])?)? != h.s(i) {
            return Err(Error::Verification(format!("S_{i} does not map to s_{i}")));
        }
    }
    for j in 1..=b.r() {
        if hecke_image(h, &b.word(&[Letter::X(j)])?)? != h.x(j) {
            return Err(Error::Verification(format!("X_{j} does not map to x_{j}")));
        }
    }
    Ok(())
}

/// One row of the simplicity comparison for a cell label (f, λ).
#[derive(Clone, Debug)]
pub struct SimplicityRow {
    pub f: usize,
    pub lambda: Multipartition,
    /// dim D(f,λ), from the Brauer Gram form.
    pub brauer_dim: usize,
    /// dim D̃(λ) of H_{a,r−2f}(u), from the Gram form of the n-flavor basis.
    pub hecke_dim: usize,
}

impl SimplicityRow {
    pub fn agrees(&self) -> bool {
        (self.brauer_dim > 0) == (self.hecke_dim > 0)
    }
}

/// Compares D(f,λ) ≠ 0 with D̃(λ) ≠ 0 through two independent Gram forms.
/// The comparison is only meaningful when ω_0 ≠ 0.
pub fn simplicity_table(c: &BrauerCellular) -> Result<Vec<SimplicityRow>> {
    let b = c.alg;
    if b.omega()[0].is_zero() {
        return Err(Error::Unsupported("the simplicity criterion needs ω_0 ≠ 0".into()));
    }
    let mut hecke: HashMap<usize, (HeckeAlgebra, Vec<Multipartition>, Vec<usize>)> = HashMap::new();
    let mut out = Vec::new();
    for (l, (f, lambda)) in c.labels.iter().enumerate() {
        let m = b.r() - 2 * f;
        let hecke_dim = if m == 0 {
            1
        } else {
            if !hecke.contains_key(&m) {
                let h = HeckeAlgebra::new(b.a(), m, b.u().to_vec())?;
                let ch = HeckeCellular::new(&h, Flavor::N)?;
                let dims = (0..ch.labels.len()).map(|i| ch.simple_dim(i)).collect();
                let labels = ch.labels.clone();
                drop(ch);
                hecke.insert(m, (h, labels, dims));
            }
            let (_, labels, dims) = &hecke[&m];
            let i = labels
                .iter()
                .position(|x| x == lambda)
                .ok_or_else(|| Error::Verification(format!("no Hecke label {lambda:?}")))?;
            dims[i]
        };
        out.push(SimplicityRow { f: *f, lambda: lambda.clone(), brauer_dim: c.simple_dim(l)?, hecke_dim });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::u_restricted;
    use crate::rational::{q, qr};

    #[test]
    fn quotient_is_the_hecke_algebra() {
        for (a, r, u) in [(1usize, 3usize, vec![q(2)]), (2, 2, vec![q(1), q(0)]), (2, 3, vec![qr(1, 2), q(-1)])] {
            let b = BrauerAlgebra::new(a, r, u.clone()).unwrap();
            let h = HeckeAlgebra::new(a, r, u).unwrap();
            check_hecke_quotient(&b, &h).unwrap();
        }
    }

    #[test]
    fn bottom_stratum_maps_to_the_n_basis() {
        let u = vec![q(1), q(0)];
        let b = BrauerAlgebra::new(2, 3, u.clone()).unwrap();
        let h = HeckeAlgebra::new(2, 3, u).unwrap();
        let cb = BrauerCellular::new(&b).unwrap();
        let ch = HeckeCellular::new(&h, Flavor::N).unwrap();
        for (l, (f, lambda)) in cb.labels.iter().enumerate() {
            if *f != 0 {
                continue;
            }
            let hl = ch.label_index(lambda).unwrap();
            let k = cb.cell_dim(l);
            assert_eq!(k, ch.tableaux[hl].len());
            for s in 0..k {
                for t in 0..k {
                    let img = hecke_image(&h, cb.element(l, s, t)).unwrap();
                    assert_eq!(&img, ch.element(hl, s, t));
                }
            }
        }
    }

    #[test]
    fn brauer_and_hecke_gram_forms_agree_on_simplicity() {
        for u in [vec![q(1), q(0)], vec![q(0), q(1)], vec![qr(1, 2), q(-1)], vec![q(3), q(1)]] {
            for r in 1..=3 {
                let b = BrauerAlgebra::new(2, r, u.clone()).unwrap();
                let c = BrauerCellular::new(&b).unwrap();
                for row in simplicity_table(&c).unwrap() {
                    assert!(row.agrees(), "u={u:?} r={r} {row:?}");
                }
            }
        }
    }

    #[test]
    fn single_orbit_simples_are_the_restricted_labels() {
        for u in [vec![q(1), q(0)], vec![q(2), q(0)], vec![q(1), q(1)]] {
            for r in 1..=3 {
                let b = BrauerAlgebra::new(2, r, u.clone()).unwrap();
                let c = BrauerCellular::new(&b).unwrap();
                for row in simplicity_table(&c).unwrap() {
                    assert_eq!(row.brauer_dim > 0, u_restricted(&row.lambda, &u), "u={u:?} r={r} {row:?}");
                }
            }
        }
    }

    #[test]
    fn vanishing_first_loop_parameter_is_unsupported() {
        let b = BrauerAlgebra::new(2, 2, vec![q(0), q(0)]).unwrap();
        let c = BrauerCellular::new(&b).unwrap();
        assert!(matches!(simplicity_table(&c), Err(Error::Unsupported(_))));
    }
}
