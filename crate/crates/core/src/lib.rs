//! Exact Hodge–Lefschetz structures on finite cohomology algebras, the flat
//! Higgs bundle they form over the complexified Kähler cone, its Hodge
//! metric, and the Khovanskii–Teissier and convex-body inequalities that
//! come with it.
//!
//! The guide in `book/` walks through each module; its snippets run as
//! doctests of this crate.

pub mod algebra;
pub mod convex;
pub mod crosscheck;
pub mod error;
pub mod higgs;
pub mod inequality;
pub mod jet;
pub mod lefschetz;
pub mod linalg;
pub mod metric;
pub mod operator;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod suite;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/algebra.md")]
    pub struct Algebra;
    #[doc = include_str!("../../../book/src/lefschetz.md")]
    pub struct Lefschetz;
    #[doc = include_str!("../../../book/src/higgs.md")]
    pub struct Higgs;
    #[doc = include_str!("../../../book/src/metric.md")]
    pub struct Metric;
    #[doc = include_str!("../../../book/src/inequalities.md")]
    pub struct Inequalities;
    #[doc = include_str!("../../../book/src/convex.md")]
    pub struct Convex;
    #[doc = include_str!("../../../book/src/modes.md")]
    pub struct Modes;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
