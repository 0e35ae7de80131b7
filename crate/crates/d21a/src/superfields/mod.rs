//! Free supercommutative polynomial algebra and supervector fields: contact
//! models, Lagrange-Jacobi brackets, span closures, PDE solution spaces,
//! distribution symmetry checks and normalizers.

pub mod models;
pub mod poly;

pub use models::{ContactModel, Model, Weighting};
pub use poly::{coord_system, Coord, CoordSystem, SuperPolynomial, SuperVectorField};
