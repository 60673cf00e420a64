//! Exact-arithmetic calculator for open book decompositions.
//!
//! The crate mechanizes a family of computations around capping off open
//! books: Nielsen-Thurston classification and fractional Dehn twist
//! coefficients of genus-one monodromies, symbolic open-book surgery and
//! gluing, the homological periodic-domain engine behind the d3 formula for
//! periodic genus-one open books, 3-braid link determinants and rank
//! identities, pseudo-Anosov foliation bookkeeping, and a provenance-carrying
//! forward-chaining engine for contact-invariant implications.
//!
//! Everything is computed over exact integers and rationals; there is no
//! floating point in the computational core. See the runnable examples in
//! `examples/` for a tour, or the `obcalc` binary for the command-line
//! surface.

pub mod cli;
pub mod domains;
pub mod dthree;
pub mod foliations;
pub mod infer;
pub mod links3;
pub mod mcg;
pub mod openbook;
pub mod rational;
pub mod words;

pub use rational::Rat;
pub use words::TwistWord;
