//! Exact computations around Soergel modules over coinvariant algebras in
//! characteristic `p`: Weyl groups and Hecke algebras, coinvariant algebras
//! and Demazure operators, Bott–Samelson modules and their decomposition into
//! indecomposables, p-canonical bases and decomposition matrices, cellular
//! motivic cohomology tables, and Milnor K-groups of finite fields.

pub mod cellmot;
pub mod coinv;
pub mod coxeter;
pub mod error;
pub mod fp;
pub mod fpoly;
pub mod hecke;
pub mod intlin;
pub mod laurent;
pub mod milnork;
pub mod smod;

pub use coinv::{build_coinvariant, CElt, CoinvariantAlgebra, GradedPoly};
pub use coxeter::{build_root_datum, torsion_primes, CartanLetter, CartanType, RootDatum, WeylElt, WeylGroup};
pub use error::{MotkitError, Result};
pub use fp::{Fp, FpMat};
pub use hecke::{HeckeAlgebra, HeckeElt};
pub use laurent::LaurentPoly;
pub use cellmot::{flag_strata, localization_check, motivic_cohomology, projective_bundle, BigradedDims, StrataPoset};
pub use milnork::{milnor_k, tate_hom, AbGroupInvariants};
pub use smod::{bott_samelson, decompose, GradedModule, IndecompRecord, SoergelCatalog};
