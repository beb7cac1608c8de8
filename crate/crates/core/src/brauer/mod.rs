//! The cyclotomic Brauer algebra B_{a,r}(u): loop parameters, the
//! dotted-diagram normal form, and its weakly cellular structure.

pub mod algebra;
pub mod cellular;
pub mod diagram;
pub mod omega;
pub mod presentation;
pub mod quotient;

pub use algebra::{generic_dimension, omega_order, BrauerAlgebra, BrauerElement, BrauerMonomial, Relator};
pub use diagram::{Diagram, End, Letter};
pub use omega::admissible_omega;
pub use presentation::{presentation, Presentation};
