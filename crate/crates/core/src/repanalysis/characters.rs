//! Characters of cell and simple modules, composition multiplicities by the
//! character method, and decomposition matrices.

use num_traits::Zero;

use crate::brauer::cellular::{BrauerCellular, CellLabel};
use crate::brauer::Letter;
use crate::error::{Error, Result};
use crate::hecke::cellular::HeckeCellular;
use crate::hecke::HeckeElement;
use crate::linalg::{self, Mat, SVec};
use crate::rational::Q;

/// A right module given by the matrices of a distinguished generating set
/// (row vectors, v ↦ v·M).
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub dim: usize,
    pub actions: Vec<Mat>,
}

impl ModulePresentation {
    pub fn word_matrix(&self, word: &[usize]) -> Mat {
        let mut m = linalg::identity(self.dim);
        for &g in word {
            m = linalg::mat_mul(&m, &self.actions[g]);
        }
        m
    }

    /// Traces of the algebra basis elements, given as generator words.
    pub fn basis_traces(&self, words: &[Vec<usize>]) -> Vec<Q> {
        words.iter().map(|w| linalg::trace(&self.word_matrix(w))).collect()
    }
}

/// What the character method needs from a cellular algebra.
pub trait CellularInstance {
    fn labels(&self) -> Vec<CellLabel>;
    /// Is cell `mu` strictly above cell `lambda`?
    fn is_higher(&self, mu: usize, lambda: usize) -> bool;
    /// The algebra's normal basis as words in the generating set.
    fn basis_words(&self) -> Vec<Vec<usize>>;
    /// Each cellular basis element in normal-basis coordinates.
    fn cellular_coordinates(&self) -> Vec<SVec>;
    fn cell_module(&self, label: usize) -> Result<ModulePresentation>;
    fn gram(&self, label: usize) -> Result<Mat>;
}

impl CellularInstance for BrauerCellular<'_> {
    fn labels(&self) -> Vec<CellLabel> {
        self.labels.clone()
    }

    fn is_higher(&self, mu: usize, lambda: usize) -> bool {
        BrauerCellular::is_higher(self, mu, lambda)
    }

    fn basis_words(&self) -> Vec<Vec<usize>> {
        let letters = brauer_letters(self.alg.r());
        self.alg
            .basis()
            .iter()
            .map(|m| {
                self.alg.monomial_word(m).iter().map(|l| letters.iter().position(|x| x == l).unwrap()).collect()
            })
            .collect()
    }

    fn cellular_coordinates(&self) -> Vec<SVec> {
        self.elements.iter().map(|e| self.alg.to_vector(e)).collect()
    }

    fn cell_module(&self, label: usize) -> Result<ModulePresentation> {
        let actions = brauer_letters(self.alg.r())
            .iter()
            .map(|&l| self.cell_action(label, &[l]))
            .collect::<Result<_>>()?;
        Ok(ModulePresentation { dim: self.cell_dim(label), actions })
    }

    fn gram(&self, label: usize) -> Result<Mat> {
        BrauerCellular::gram(self, label)
    }
}

/// Letters S_i, E_i, X_j in the generator order used by module presentations.
pub fn brauer_letters(r: usize) -> Vec<Letter> {
    let mut out: Vec<Letter> = (1..r).map(Letter::S).collect();
    out.extend((1..r).map(Letter::E));
    out.extend((1..=r).map(Letter::X));
    out
}

/// Generators s_1, …, s_{r−1}, x_1, …, x_r of H_{a,r}(u).
fn hecke_generators(c: &HeckeCellular) -> Vec<HeckeElement> {
    let h = c.alg;
    let mut out: Vec<HeckeElement> = (1..h.r()).map(|i| h.s(i)).collect();
    out.extend((1..=h.r()).map(|j| h.x(j)));
    out
}

impl CellularInstance for HeckeCellular<'_> {
    fn labels(&self) -> Vec<CellLabel> {
        self.labels.iter().map(|l| (0, l.clone())).collect()
    }

    fn is_higher(&self, mu: usize, lambda: usize) -> bool {
        HeckeCellular::is_higher(self, mu, lambda)
    }

    fn basis_words(&self) -> Vec<Vec<usize>> {
        let r = self.alg.r();
        self.alg
            .basis()
            .iter()
            .map(|m| {
                let mut w: Vec<usize> = Vec::new();
                for (j, &k) in m.alpha.iter().enumerate() {
                    w.extend(std::iter::repeat(r - 1 + j).take(k as usize));
                }
                w.extend(m.w.reduced_word().into_iter().map(|i| i - 1));
                w
            })
            .collect()
    }

    fn cellular_coordinates(&self) -> Vec<SVec> {
        self.elements.iter().map(|e| self.alg.to_vector(e)).collect()
    }

    fn cell_module(&self, label: usize) -> Result<ModulePresentation> {
        let actions = hecke_generators(self).iter().map(|g| self.cell_action(label, g)).collect::<Result<_>>()?;
        Ok(ModulePresentation { dim: self.tableaux[label].len(), actions })
    }

    fn gram(&self, label: usize) -> Result<Mat> {
        Ok(HeckeCellular::gram(self, label))
    }
}

/// The Gram radical (a submodule of the cell module) in reduced row form,
/// with its pivot columns.
fn radical_basis(m: &ModulePresentation, gram: &Mat) -> (Mat, Vec<usize>) {
    let mut k: Mat = linalg::nullspace(gram, m.dim);
    let pivots = if k.is_empty() { Vec::new() } else { linalg::rref(&mut k) };
    (k, pivots)
}

/// Trace of a word on the radical: with K in reduced form, K·M = A·K gives
/// A_{ij} = (K·M)_{i,p_j}.
fn radical_trace(radical: &(Mat, Vec<usize>), word_matrix: &Mat) -> Q {
    let (k, pivots) = radical;
    if k.is_empty() {
        return Q::zero();
    }
    let km = linalg::mat_mul(k, word_matrix);
    pivots.iter().enumerate().map(|(i, &p)| km[i][p].clone()).sum()
}

/// Characters on the cellular basis: for each spanning element, its trace.
pub struct CharacterTable {
    /// Coordinates of the spanning set in the normal basis.
    pub span: Vec<SVec>,
    pub words: Vec<Vec<usize>>,
}

impl CharacterTable {
    pub fn new<C: CellularInstance>(c: &C) -> Self {
        CharacterTable { span: c.cellular_coordinates(), words: c.basis_words() }
    }

    fn on_span(&self, basis_traces: &[Q]) -> Vec<Q> {
        self.span.iter().map(|v| v.iter().map(|(i, c)| c * &basis_traces[*i]).sum()).collect()
    }

    /// Character of a module on the spanning set.
    pub fn module(&self, m: &ModulePresentation) -> Vec<Q> {
        self.on_span(&m.basis_traces(&self.words))
    }

    /// Character of C/rad(Gram), the simple head of a cell module.
    pub fn simple_head(&self, m: &ModulePresentation, gram: &Mat) -> Vec<Q> {
        let radical = radical_basis(m, gram);
        let traces: Vec<Q> = self
            .words
            .iter()
            .map(|w| {
                let wm = m.word_matrix(w);
                linalg::trace(&wm) - radical_trace(&radical, &wm)
            })
            .collect();
        self.on_span(&traces)
    }
}

/// Solves trace_M = Σ_μ m_μ · trace_{D(μ)} and insists on a unique
/// nonnegative-integer solution.
pub fn composition_multiplicities(module_character: &[Q], simple_characters: &[Vec<Q>]) -> Result<Vec<usize>> {
    let system = linalg::transpose(&simple_characters.to_vec());
    if !simple_characters.is_empty() && linalg::rank(&system) < simple_characters.len() {
        return Err(Error::Verification("simple characters are linearly dependent".into()));
    }
    let sol = if simple_characters.is_empty() {
        if module_character.iter().any(|x| !x.is_zero()) {
            None
        } else {
            Some(Vec::new())
        }
    } else {
        linalg::solve(&system, module_character)
    };
    let sol = sol.ok_or_else(|| Error::Verification("character is not a combination of simple characters".into()))?;
    sol.iter()
        .map(|x| {
            if linalg::is_nonneg_integer(x) {
                Ok(x.to_integer().try_into().expect("small multiplicity"))
            } else {
                Err(Error::Verification(format!("non-integral multiplicity {x}")))
            }
        })
        .collect()
}

/// [C(f,λ) : D(ℓ,μ)] with rows over all cell labels and columns over the
/// labels whose simple head is nonzero.
#[derive(Clone, Debug)]
pub struct DecompositionMatrix {
    pub rows: Vec<CellLabel>,
    pub cols: Vec<CellLabel>,
    /// Row index of each column label.
    pub col_rows: Vec<usize>,
    pub entries: Vec<Vec<usize>>,
    pub cell_dims: Vec<usize>,
    pub simple_dims: Vec<usize>,
    /// `higher[i][j]`: cell j is strictly above cell i.
    pub higher: Vec<Vec<bool>>,
}

impl DecompositionMatrix {
    /// Diagonal entries 1 and [C(λ) : D(μ)] ≠ 0 only for μ = λ or λ strictly
    /// higher than μ (simple heads of higher cells occur only in their own
    /// cell and the cells below).
    pub fn is_unitriangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(k, &d)| {
                let j = self.col_rows[k];
                if i == j {
                    d == 1
                } else {
                    d == 0 || self.higher[j][i]
                }
            })
        })
    }

    /// Σ_μ d_{λμ} dim D(μ) = dim C(λ) for every row.
    pub fn dimensions_reconcile(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().zip(&self.col_rows).map(|(d, &j)| d * self.simple_dims[j]).sum::<usize>() == self.cell_dims[i]
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.cols.len()
            && self.entries.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(k, &d)| d == usize::from(self.col_rows[k] == i)))
    }

    /// The rows and columns with f = 0.
    pub fn restrict_to_bottom(&self) -> DecompositionMatrix {
        let rows: Vec<usize> = (0..self.rows.len()).filter(|&i| self.rows[i].0 == 0).collect();
        let cols: Vec<usize> = (0..self.cols.len()).filter(|&k| self.cols[k].0 == 0).collect();
        let renumber = |j: usize| rows.iter().position(|&x| x == j).unwrap();
        DecompositionMatrix {
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: cols.iter().map(|&k| self.cols[k].clone()).collect(),
            col_rows: cols.iter().map(|&k| renumber(self.col_rows[k])).collect(),
            entries: rows.iter().map(|&i| cols.iter().map(|&k| self.entries[i][k]).collect()).collect(),
            cell_dims: rows.iter().map(|&i| self.cell_dims[i]).collect(),
            simple_dims: rows.iter().map(|&i| self.simple_dims[i]).collect(),
            higher: rows.iter().map(|&i| rows.iter().map(|&j| self.higher[i][j]).collect()).collect(),
        }
    }

    /// Entries keyed by label, for comparisons across code paths.
    pub fn entry(&self, row: &CellLabel, col: &CellLabel) -> Option<usize> {
        let i = self.rows.iter().position(|x| x == row)?;
        let k = self.cols.iter().position(|x| x == col)?;
        Some(self.entries[i][k])
    }
}

/// The brute-force decomposition matrix by the character method.
pub fn decomposition_matrix<C: CellularInstance>(c: &C) -> Result<DecompositionMatrix> {
    let labels = c.labels();
    let table = CharacterTable::new(c);
    let mut modules = Vec::new();
    let mut cell_dims = Vec::new();
    let mut simple_dims = Vec::new();
    let mut simple_chars = Vec::new();
    let mut col_rows = Vec::new();
    for l in 0..labels.len() {
        let m = c.cell_module(l)?;
        let g = c.gram(l)?;
        let d = linalg::rank(&g);
        cell_dims.push(m.dim);
        simple_dims.push(d);
        if d > 0 {
            simple_chars.push(table.simple_head(&m, &g));
            col_rows.push(l);
        }
        modules.push(m);
    }
    let mut entries = Vec::new();
    for m in &modules {
        entries.push(composition_multiplicities(&table.module(m), &simple_chars)?);
    }
    let higher = (0..labels.len()).map(|i| (0..labels.len()).map(|j| c.is_higher(j, i)).collect()).collect();
    Ok(DecompositionMatrix {
        cols: col_rows.iter().map(|&j| labels[j].clone()).collect(),
        rows: labels,
        col_rows,
        entries,
        cell_dims,
        simple_dims,
        higher,
    })
}
