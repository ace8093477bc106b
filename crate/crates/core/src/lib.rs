pub mod arith;
pub mod cohomology;
pub mod eexact;
pub mod einjective;
pub mod error;
pub mod essential;
pub mod fgab;
pub mod gen;
pub mod ladder;

pub use error::{Error, Result};
pub use fgab::*;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/essential.md")]
    mod essential {}
    #[doc = include_str!("../../../book/src/e-exact.md")]
    mod e_exact {}
    #[doc = include_str!("../../../book/src/e-injective.md")]
    mod e_injective {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
