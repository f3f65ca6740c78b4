//! Finite loops as Cayley tables.
//!
//! The crate covers validated loop tables with divisions and inverses
//! ([`loop_core`]), a small identity language ([`identity`]), nuclei
//! ([`nuclei`]), autotopisms and pseudoautomorphisms found by backtracking
//! ([`pseudo`]), executable theorem checks for WCIP loops ([`theorems`]),
//! loop constructions and exhaustive generators ([`constructions`]), and the
//! floating-point Bruck loop of positive definite matrices
//! ([`matrix_bruck`]).
//!
//! ```
//! use loopcalc::constructions::cyclic;
//! use loopcalc::nuclei::NucleusKind;
//! use loopcalc::pseudo::enumerate_pseudo;
//!
//! let z5 = cyclic(5);
//! // Four automorphisms times five companions.
//! assert_eq!(enumerate_pseudo(&z5, NucleusKind::Right).len(), 20);
//! ```

pub mod constructions;
pub mod identity;
pub mod loop_core;
pub mod matrix_bruck;
pub mod nuclei;
pub mod pseudo;
pub mod theorems;

pub use loop_core::{Elem, LoopError, LoopTable, Permutation};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/loops.md")]
    mod loops {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/nuclei.md")]
    mod nuclei {}
    #[doc = include_str!("../../../book/src/pseudo.md")]
    mod pseudo {}
    #[doc = include_str!("../../../book/src/theorems.md")]
    mod theorems {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/matrix.md")]
    mod matrix {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
