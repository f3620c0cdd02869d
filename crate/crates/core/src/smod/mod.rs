//! Graded modules over the coinvariant algebra, Soergel modules and their
//! indecomposable summands.

pub mod complex;
pub mod decompose;
pub mod hom;
pub mod module;
pub mod soergel;

pub use complex::{hom_homotopy, ModuleComplex};
pub use decompose::{decompose, indecomposables_isomorphic, is_isomorphic, IsoVerdict, Summand};
pub use hom::{hom_graded, hom_shift, EndAlgebra, GradedMap};
pub use module::{bott_samelson, translate, trivial_module, GradedModule};
pub use soergel::{
    category_o_precondition, decomposition_matrix, idempotent_count, simple_multiplicities, DecompositionMatrix, Fingerprint,
    IndecompRecord, LabeledSummand, SimpleMultiplicities, SoergelCatalog,
};
