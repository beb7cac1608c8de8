//! Multitableaux, the special tableaux t^λ and t_λ, and d(s).

use std::fmt;

use super::partition::{Multipartition, Profile};
use super::perm::Perm;
use crate::error::{input, Result};

/// A filling of a multipartition diagram; entries are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    /// entries[component][row][column]
    entries: Vec<Vec<Vec<usize>>>,
}

impl Tableau {
    pub fn from_entries(entries: Vec<Vec<Vec<usize>>>) -> Self {
        Tableau { entries }
    }

    pub fn entries(&self) -> &[Vec<Vec<usize>>] {
        &self.entries
    }

    pub fn shape(&self) -> Multipartition {
        Multipartition::from_vecs(
            &self
                .entries
                .iter()
                .map(|c| c.iter().map(Vec::len).collect())
                .collect::<Vec<_>>(),
        )
        .expect("tableau rows are weakly decreasing")
    }

    pub fn size(&self) -> usize {
        self.entries.iter().flatten().map(Vec::len).sum()
    }

    /// t^λ: components left to right, each filled row by row.
    pub fn initial(shape: &Multipartition) -> Tableau {
        let mut next = 1;
        let entries = shape
            .comps()
            .iter()
            .map(|p| {
                p.parts()
                    .iter()
                    .map(|&len| {
                        let row: Vec<usize> = (next..next + len).collect();
                        next += len;
                        row
                    })
                    .collect()
            })
            .collect();
        Tableau { entries }
    }

    /// t_λ: components right to left, each filled column by column.
    pub fn terminal(shape: &Multipartition) -> Tableau {
        let mut entries: Vec<Vec<Vec<usize>>> = shape
            .comps()
            .iter()
            .map(|p| p.parts().iter().map(|&len| vec![0; len]).collect())
            .collect();
        let mut next = 1;
        for (ci, p) in shape.comps().iter().enumerate().rev() {
            let conj = p.conjugate();
            for (col, &height) in conj.parts().iter().enumerate() {
                for row in 0..height {
                    entries[ci][row][col] = next;
                    next += 1;
                }
            }
        }
        Tableau { entries }
    }

    /// The right action t·w replacing each entry x by (x)w.
    pub fn act(&self, w: &Perm) -> Tableau {
        Tableau {
            entries: self
                .entries
                .iter()
                .map(|c| c.iter().map(|row| row.iter().map(|&x| w.apply(x)).collect()).collect())
                .collect(),
        }
    }

    pub fn is_row_standard(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|row| row.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_standard(&self) -> bool {
        self.is_row_standard()
            && self.entries.iter().all(|c| {
                c.windows(2)
                    .all(|rows| rows[1].iter().zip(&rows[0]).all(|(lo, hi)| lo > hi))
            })
    }

    /// The unique w with t^λ·w = self.
    pub fn d(&self) -> Perm {
        let init = Tableau::initial(&self.shape());
        let r = self.size();
        let mut images = vec![0; r];
        for (c0, c1) in init.entries.iter().zip(&self.entries) {
            for (r0, r1) in c0.iter().zip(c1) {
                for (&x, &y) in r0.iter().zip(r1) {
                    images[x - 1] = y;
                }
            }
        }
        Perm::from_images(&images).expect("tableau entries form a permutation")
    }

    /// Component index, row and column (0-based) of entry `x`.
    pub fn position(&self, x: usize) -> Option<(usize, usize, usize)> {
        for (c, comp) in self.entries.iter().enumerate() {
            for (i, row) in comp.iter().enumerate() {
                if let Some(j) = row.iter().position(|&y| y == x) {
                    return Some((c, i, j));
                }
            }
        }
        None
    }

    /// All standard tableaux of the given shape, in a fixed deterministic order
    /// (t^λ first).
    pub fn standard(shape: &Multipartition) -> Vec<Tableau> {
        let m = shape.size();
        let mut out = Vec::new();
        let mut filled: Vec<Vec<usize>> =
            shape.comps().iter().map(|p| vec![0; p.len()]).collect();
        let mut entries: Vec<Vec<Vec<usize>>> = shape
            .comps()
            .iter()
            .map(|p| p.parts().iter().map(|&l| vec![0; l]).collect())
            .collect();
        fn rec(
            x: usize,
            m: usize,
            shape: &Multipartition,
            filled: &mut Vec<Vec<usize>>,
            entries: &mut Vec<Vec<Vec<usize>>>,
            out: &mut Vec<Tableau>,
        ) {
            if x > m {
                out.push(Tableau { entries: entries.clone() });
                return;
            }
            for c in 0..shape.level() {
                let parts = shape.comp(c).parts();
                for row in 0..parts.len() {
                    let col = filled[c][row];
                    let fits = col < parts[row] && (row == 0 || filled[c][row - 1] > col);
                    if fits {
                        filled[c][row] += 1;
                        entries[c][row][col] = x;
                        rec(x + 1, m, shape, filled, entries, out);
                        filled[c][row] -= 1;
                    }
                }
            }
        }
        rec(1, m, shape, &mut filled, &mut entries, &mut out);
        out
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let rows: Vec<String> = c
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            write!(f, "[{}]", rows.join(" / "))?;
        }
        write!(f, ")")
    }
}

/// The block-reversing permutation w_[λ]: (b_{i-1}+l) ↦ r − b_i + l.
pub fn w_bracket(profile: &Profile, r: usize) -> Result<Perm> {
    if profile.total() != r {
        return input(format!("profile {:?} does not end at r = {r}", profile.b));
    }
    let mut images = vec![0; r];
    for i in 1..profile.b.len() {
        let (lo, hi) = (profile.b[i - 1], profile.b[i]);
        for l in 1..=hi - lo {
            images[lo + l - 1] = r - hi + l;
        }
    }
    Perm::from_images(&images)
}

/// The block permutations w_(1), …, w_(a) with w_λ = w_(1)⋯w_(a)·w_[λ].
pub fn block_factors(shape: &Multipartition) -> Vec<Perm> {
    let r = shape.size();
    let wb = w_bracket(&shape.profile(), r).expect("profile of a multipartition");
    let shifted = Tableau::terminal(shape).act(&wb.inverse());
    let init = Tableau::initial(shape);
    (0..shape.level())
        .map(|c| {
            let mut images: Vec<usize> = (1..=r).collect();
            for (r0, r1) in init.entries[c].iter().zip(&shifted.entries[c]) {
                for (&x, &y) in r0.iter().zip(r1) {
                    images[x - 1] = y;
                }
            }
            Perm::from_images(&images).expect("block factor is a permutation")
        })
        .collect()
}
