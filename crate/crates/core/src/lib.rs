//! Computations on restricted configuration spaces of polynomial roots.
//!
//! The crate is `no_std` (with `alloc`). It covers:
//!
//! * exact and floating polynomial arithmetic ([`poly`], [`roots`]);
//! * the hypersurfaces `S_ij` cutting out the restricted spaces and exact
//!   membership tests ([`restricted`]);
//! * a small language for piecewise-parametric loops of polynomials and a
//!   library of named loops ([`loops`]);
//! * root continuation along a loop and extraction of braid words
//!   ([`tracer`]);
//! * braid words, the Artin action and group word problems ([`braid`]);
//! * Reidemeister–Schreier rewriting and Tietze simplification
//!   ([`schreier`]);
//! * the real min–max fibration ([`realfib`]).
#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::assign_op_pattern)]

extern crate alloc;

pub mod braid;
pub mod error;
pub mod format;
pub mod loops;
pub mod mpoly;
pub mod poly;
pub mod real;
pub mod realfib;
pub mod restricted;
pub mod roots;
pub mod schreier;
pub mod tracer;

pub use error::{Error, Result};
pub use poly::{ExactComplex, Poly, Rational};
pub use real::{ApproxComplex, Real};
