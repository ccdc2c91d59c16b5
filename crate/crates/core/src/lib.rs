//! Exact intersection numbers on powers `C^n` of a curve and Chern data of
//! tautological bundles on its symmetric products. See the guide in `book/`.

pub mod chow;
pub mod dsl;
pub mod error;
pub mod poly;
pub mod stability;
pub mod taut;
pub mod verify;

pub use chow::{symmetric_classes, ChowClass, Configuration, Generator, SymmetricDivisors};
pub use error::{Error, Result};
pub use poly::{rat, ratio, Assignment, RatPoly, Rational, Symbol};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/coefficients.md")]
    struct Coefficients;
    #[doc = include_str!("../../../book/src/configurations.md")]
    struct Configurations;
    #[doc = include_str!("../../../book/src/intersection.md")]
    struct Intersection;
    #[doc = include_str!("../../../book/src/tautological.md")]
    struct Tautological;
    #[doc = include_str!("../../../book/src/stability.md")]
    struct Stability;
    #[doc = include_str!("../../../book/src/expressions.md")]
    struct Expressions;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
