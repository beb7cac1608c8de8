//! Generic analysis of split finite-dimensional algebras over ℚ: the
//! Jacobson radical, characters of cell and simple modules, and
//! decomposition matrices by the character method.

pub mod characters;
pub mod structure;

pub use characters::{
    composition_multiplicities, decomposition_matrix, CellularInstance, CharacterTable, DecompositionMatrix,
    ModulePresentation,
};
pub use structure::{radical, StructureConstants};
