//! Finitely generated abelian groups: presentations, Smith normal form,
//! morphisms, submodules and hom-modules.

mod hom;
mod matrix;
mod module;
mod morphism;
mod snf;
mod submodule;

pub use hom::{induced_hom, induced_post, HomModule};
pub use matrix::IntMatrix;
pub use module::{FgModule, ModElement, Order};
pub use morphism::{copair, is_isomorphic, pair, summand_inclusion, summand_projection, Cokernel, IsoVerdict, ModMorphism};
pub use snf::{smith_normal_form, LinearSolver, SmithForm};
pub use submodule::{subquotient, Submodule};
