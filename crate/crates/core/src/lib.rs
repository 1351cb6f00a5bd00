//! Discrete homotopy theory on finite metric spaces: contractibility, LS-category,
//! motion planners and topological complexity, each answer with a replayable certificate.

pub mod category;
pub mod cert;
pub mod cli;
pub mod homotopy;
pub mod lipmap;
pub mod metric;
pub mod paths;
pub mod pi1;
pub mod planner;
mod search;
pub mod setcover;
pub mod tc;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/contractibility.md")]
    mod contractibility {}
    #[doc = include_str!("../../../book/src/category.md")]
    mod category {}
    #[doc = include_str!("../../../book/src/planners.md")]
    mod planners {}
    #[doc = include_str!("../../../book/src/loops.md")]
    mod loops {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
}
