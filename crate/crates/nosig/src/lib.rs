//! No-signaling bounds for minimum-error quantum state discrimination.
//!
//! Distinct convex decompositions of one average state can be prepared
//! remotely, and no local detector may tell them apart better than chance.
//! Turning that impossibility into arithmetic yields an upper bound on the
//! success probability of discriminating among the decompositions' target
//! states, with no assumption on their dimension or structure. This crate
//! builds the required identical-average decompositions for symmetric
//! qubit and spin-j families, evaluates the bound as an exact one-budget
//! allocation program, and cross-checks it against closed-form optimal
//! discrimination, the L4 comparison bound, and an independent fixed-point
//! POVM optimizer.
//!
//! The long-form guide lives in `book/`; its code snippets run as
//! doc-tests of this crate.
//!
//! ```
//! use nosig::nosignal::qubit_ns_bound;
//!
//! // Three symmetric mixed qubit states with Bloch radius 1/3 on the
//! // equator: the discrimination error is at least 5/9.
//! let bound = qubit_ns_bound(3, std::f64::consts::FRAC_PI_2, 1.0 / 3.0).unwrap();
//! assert!((bound.error_lower - 5.0 / 9.0).abs() < 1e-12);
//! ```

pub mod discrim;
pub mod error;
pub mod linalg;
pub mod nosignal;
pub mod oracle;
pub mod states;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
pub use states::{BlochVector, DensityOperator, Ensemble, SpinSystem};

#[cfg(doctest)]
mod book {
    //! Runs every code block of the guide as a doc-test, keeping the book
    //! in sync with the crate.

    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}

    #[doc = include_str!("../../../book/src/states.md")]
    pub mod states {}

    #[doc = include_str!("../../../book/src/bound.md")]
    pub mod bound {}

    #[doc = include_str!("../../../book/src/discrimination.md")]
    pub mod discrimination {}

    #[doc = include_str!("../../../book/src/oracle.md")]
    pub mod oracle {}

    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
