//! Exact computations around `p`-rigid fields.
//!
//! The crate has four layers:
//!
//! * [`pgroup`]: finite `p`-groups given by a multiplication law, with the
//!   lower `p`-central, lower central, Frattini and dimension series, the
//!   powerful/uniform predicates and the group form of the `F^(3) = F^{3}`
//!   criterion.
//! * [`fq`]: finite fields, polynomials over them, factorization and the
//!   power-residue map.
//! * [`symbol`]: power classes, tame degree-`p` symbols over `F_q((t))` and
//!   `F_q(t)`, rigidity tests, Kummer towers and the Hilbert 90 witness.
//! * [`puiseux`]: Newton-Puiseux roots over `F_q((t))` rewritten as
//!   non-nested radicals.

pub mod arith;
pub mod error;
pub mod fq;
pub mod linalg;
pub mod pgroup;
pub mod ratfunc;
pub mod series;
pub mod symbol;
pub mod expr;
pub mod puiseux;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/groups.md")]
    struct Groups;
    #[doc = include_str!("../../../book/src/symbols.md")]
    struct Symbols;
    #[doc = include_str!("../../../book/src/towers.md")]
    struct Towers;
    #[doc = include_str!("../../../book/src/puiseux.md")]
    struct Puiseux;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../README.md")]
    struct Readme;
}
