//! Undotted Brauer diagrams on 2r points and their calculus.
//!
//! Points `0..r` are the top row (1..r), points `r..2r` the bottom row.
//! A product `x·y` stacks `x` above `y`.

use std::fmt;

use crate::combinat::Perm;

/// A generator letter; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S(usize),
    E(usize),
    X(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    partner: Vec<u8>,
}

/// Where a strand ends: a top or bottom column (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Top(usize),
    Bottom(usize),
}

impl Diagram {
    pub fn identity(r: usize) -> Self {
        let mut partner = vec![0u8; 2 * r];
        for i in 0..r {
            partner[i] = (r + i) as u8;
            partner[r + i] = i as u8;
        }
        Diagram { partner }
    }

    /// The permutation diagram: top p joined to bottom (p)w.
    pub fn from_perm(w: &Perm) -> Self {
        let r = w.degree();
        let mut partner = vec![0u8; 2 * r];
        for p in 1..=r {
            let q = w.apply(p);
            partner[p - 1] = (r + q - 1) as u8;
            partner[r + q - 1] = (p - 1) as u8;
        }
        Diagram { partner }
    }

    /// Diagram of a single S or E letter.
    pub fn generator(letter: Letter, r: usize) -> Self {
        match letter {
            Letter::S(i) => Diagram::from_perm(&Perm::simple(i, r)),
            Letter::E(i) => {
                let mut d = Diagram::identity(r);
                d.join(i - 1, i);
                d.join(r + i - 1, r + i);
                d
            }
            Letter::X(_) => Diagram::identity(r),
        }
    }

    pub fn from_partner(partner: Vec<u8>) -> Self {
        Diagram { partner }
    }

    fn join(&mut self, p: usize, q: usize) {
        self.partner[p] = q as u8;
        self.partner[q] = p as u8;
    }

    pub fn r(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner_point(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn point(&self, e: End) -> usize {
        match e {
            End::Top(c) => c - 1,
            End::Bottom(c) => self.r() + c - 1,
        }
    }

    pub fn end_of(&self, p: usize) -> End {
        let r = self.r();
        if p < r {
            End::Top(p + 1)
        } else {
            End::Bottom(p - r + 1)
        }
    }

    /// The other end of the strand through `e`.
    pub fn partner(&self, e: End) -> End {
        self.end_of(self.partner_point(self.point(e)))
    }

    /// Number of top arcs (equal to the number of bottom arcs).
    pub fn arcs(&self) -> usize {
        let r = self.r();
        (0..r).filter(|&p| (self.partner[p] as usize) < r).count() / 2
    }

    pub fn top_arcs(&self) -> Vec<(usize, usize)> {
        let r = self.r();
        (0..r)
            .filter_map(|p| {
                let q = self.partner[p] as usize;
                (q < r && p < q).then(|| (p + 1, q + 1))
            })
            .collect()
    }

    pub fn bottom_arcs(&self) -> Vec<(usize, usize)> {
        let r = self.r();
        (r..2 * r)
            .filter_map(|p| {
                let q = self.partner[p] as usize;
                (q >= r && p < q).then(|| (p - r + 1, q - r + 1))
            })
            .collect()
    }

    /// Through strands as (top column, bottom column), by top column.
    pub fn through(&self) -> Vec<(usize, usize)> {
        let r = self.r();
        (0..r)
            .filter_map(|p| {
                let q = self.partner[p] as usize;
                (q >= r).then(|| (p + 1, q - r + 1))
            })
            .collect()
    }

    pub fn is_perm(&self) -> bool {
        self.arcs() == 0
    }

    /// Composite self·other and the number of closed loops formed.
    pub fn compose(&self, other: &Diagram) -> (Diagram, usize) {
        let r = self.r();
        // Nodes: 0..r top of self, r..2r the glued middle row, 2r..3r bottom of other.
        let mut upper = vec![0usize; 3 * r];
        let mut lower = vec![usize::MAX; 3 * r];
        for p in 0..2 * r {
            upper[p] = self.partner[p] as usize;
        }
        for p in 0..2 * r {
            lower[r + p] = r + other.partner[p] as usize;
        }
        // `upper` joins nodes of self, `lower` joins nodes of other.
        let mut seen = vec![false; 3 * r];
        let mut partner = vec![0u8; 2 * r];
        let outer = (0..r).chain(2 * r..3 * r);
        for start in outer {
            if seen[start] {
                continue;
            }
            let mut node = start;
            let mut use_upper = start < r;
            seen[node] = true;
            loop {
                node = if use_upper { upper[node] } else { lower[node] };
                seen[node] = true;
                if node < r || node >= 2 * r {
                    break;
                }
                use_upper = !use_upper;
            }
            let a = if start < r { start } else { start - r };
            let b = if node < r { node } else { node - r };
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        let mut loops = 0;
        for m in r..2 * r {
            if seen[m] {
                continue;
            }
            loops += 1;
            let mut node = m;
            let mut use_upper = true;
            while !seen[node] {
                seen[node] = true;
                node = if use_upper { upper[node] } else { lower[node] };
                use_upper = !use_upper;
            }
        }
        (Diagram { partner }, loops)
    }

    /// Top and bottom rows exchanged.
    pub fn flip(&self) -> Diagram {
        let r = self.r();
        let sw = |p: usize| if p < r { p + r } else { p - r };
        let mut partner = vec![0u8; 2 * r];
        for p in 0..2 * r {
            partner[sw(p)] = sw(self.partner[p] as usize) as u8;
        }
        Diagram { partner }
    }

    /// A word in S and E letters whose product is this diagram:
    /// π_top · E_1 E_3 ⋯ E_{2f−1} · π_bottom.
    pub fn canonical_word(&self) -> Vec<Letter> {
        let r = self.r();
        let tops = self.top_arcs();
        let bots = self.bottom_arcs();
        let thr = self.through();
        let f = tops.len();
        let mut top_img = vec![0usize; r];
        for (j, &(p, q)) in tops.iter().enumerate() {
            top_img[p - 1] = 2 * j + 1;
            top_img[q - 1] = 2 * j + 2;
        }
        for (k, &(t, _)) in thr.iter().enumerate() {
            top_img[t - 1] = 2 * f + k + 1;
        }
        let mut bot_img = vec![0usize; r];
        for (j, &(p, q)) in bots.iter().enumerate() {
            bot_img[2 * j] = p;
            bot_img[2 * j + 1] = q;
        }
        for (k, &(_, b)) in thr.iter().enumerate() {
            bot_img[2 * f + k] = b;
        }
        let p1 = Perm::from_images(&top_img).expect("top placement");
        let p2 = Perm::from_images(&bot_img).expect("bottom placement");
        let mut word: Vec<Letter> = p1.reduced_word().into_iter().map(Letter::S).collect();
        word.extend((0..f).map(|j| Letter::E(2 * j + 1)));
        word.extend(p2.reduced_word().into_iter().map(Letter::S));
        word
    }

    /// All Brauer diagrams on 2r points, sorted.
    pub fn all(r: usize) -> Vec<Diagram> {
        fn rec(free: &mut Vec<usize>, partner: &mut Vec<u8>, out: &mut Vec<Diagram>) {
            let Some(&p) = free.first() else {
                out.push(Diagram { partner: partner.clone() });
                return;
            };
            for k in 1..free.len() {
                let q = free[k];
                let saved = free.clone();
                free.retain(|&x| x != p && x != q);
                partner[p] = q as u8;
                partner[q] = p as u8;
                rec(free, partner, out);
                *free = saved;
            }
        }
        let mut out = Vec::new();
        let mut free: Vec<usize> = (0..2 * r).collect();
        let mut partner = vec![0u8; 2 * r];
        rec(&mut free, &mut partner, &mut out);
        out.sort();
        out
    }

    /// Diagram obtained by multiplying the generator letters of a word.
    pub fn of_word(word: &[Letter], r: usize) -> (Diagram, usize) {
        let mut d = Diagram::identity(r);
        let mut loops = 0;
        for &l in word {
            let (n, k) = d.compose(&Diagram::generator(l, r));
            d = n;
            loops += k;
        }
        (d, loops)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.partner.len())
            .filter(|&p| p < self.partner[p] as usize)
            .map(|p| {
                let a = self.end_of(p);
                let b = self.end_of(self.partner[p] as usize);
                let s = |e: End| match e {
                    End::Top(c) => format!("{c}"),
                    End::Bottom(c) => format!("{c}'"),
                };
                format!("{}-{}", s(a), s(b))
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_are_double_factorials() {
        assert_eq!(Diagram::all(1).len(), 1);
        assert_eq!(Diagram::all(2).len(), 3);
        assert_eq!(Diagram::all(3).len(), 15);
        assert_eq!(Diagram::all(4).len(), 105);
    }

    #[test]
    fn canonical_words_rebuild_diagrams() {
        for r in 1..=4 {
            for d in Diagram::all(r) {
                let (e, loops) = Diagram::of_word(&d.canonical_word(), r);
                assert_eq!(loops, 0);
                assert_eq!(e, d);
            }
        }
    }

    #[test]
    fn loop_and_arc_relations() {
        let r = 3;
        let e1 = Diagram::generator(Letter::E(1), r);
        let e2 = Diagram::generator(Letter::E(2), r);
        let s1 = Diagram::generator(Letter::S(1), r);
        let s2 = Diagram::generator(Letter::S(2), r);
        assert_eq!(e1.compose(&e1), (e1.clone(), 1));
        // E_1 E_2 E_1 = E_1 and E_2 E_1 E_2 = E_2
        let (x, l) = Diagram::of_word(&[Letter::E(1), Letter::E(2), Letter::E(1)], r);
        assert_eq!((x, l), (e1.clone(), 0));
        let (x, l) = Diagram::of_word(&[Letter::E(2), Letter::E(1), Letter::E(2)], r);
        assert_eq!((x, l), (e2.clone(), 0));
        // E_1 S_1 = E_1
        assert_eq!(e1.compose(&s1).0, e1);
        // S_1 E_2 E_1 = S_2 E_1 and E_1 E_2 S_1 = E_1 S_2
        let lhs = Diagram::of_word(&[Letter::S(1), Letter::E(2), Letter::E(1)], r).0;
        assert_eq!(lhs, s2.compose(&e1).0);
        let lhs = Diagram::of_word(&[Letter::E(1), Letter::E(2), Letter::S(1)], r).0;
        assert_eq!(lhs, e1.compose(&s2).0);
        // E_2 = S_1 S_2 E_1 S_2 S_1
        let conj = Diagram::of_word(
            &[Letter::S(1), Letter::S(2), Letter::E(1), Letter::S(2), Letter::S(1)],
            r,
        )
        .0;
        assert_eq!(conj, e2);
    }

    #[test]
    fn flip_is_involution_and_reverses_products() {
        let all = Diagram::all(3);
        for x in all.iter().step_by(3) {
            assert_eq!(x.flip().flip(), *x);
            for y in all.iter().step_by(4) {
                let (xy, l1) = x.compose(y);
                let (yx, l2) = y.flip().compose(&x.flip());
                assert_eq!(xy.flip(), yx);
                assert_eq!(l1, l2);
            }
        }
    }
}
