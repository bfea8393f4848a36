//! Composition of forms built as determinants of closed linear matrix
//! structures, with exact integer arithmetic throughout.

pub mod catalog;
pub mod compose;
pub mod dioph;
pub mod linstruct;
pub mod polyring;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/structures.md")]
    mod structures {}
    #[doc = include_str!("../../../book/src/blocks.md")]
    mod blocks {}
    #[doc = include_str!("../../../book/src/composition.md")]
    mod composition {}
    #[doc = include_str!("../../../book/src/threefold.md")]
    mod threefold {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
