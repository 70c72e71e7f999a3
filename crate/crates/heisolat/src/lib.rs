//! Exact arithmetic for lattices in the 3-dimensional real Heisenberg group
//! and for Heisenberg odometers: invariants and normal forms, Koopman
//! spectral data, freeness, finitary isomorphism invariants, self-joining
//! classification, and finite-quotient dual towers.
//!
//! Everything is computed with exact scalars — rationals, optionally
//! extended by one fixed square root — so every verdict the library returns
//! is a theorem about the input data, never a floating-point approximation.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`], [`matrix`], [`supernatural`] — the exact arithmetic layer;
//! * [`heis`] — the group, its automorphisms, and irreducible representation labels;
//! * [`lattice`] — lattices in the group: invariants, normal form, conjugacy;
//! * [`tower`] — decreasing sequences of lattices (odometer data) and their
//!   limit invariants;
//! * [`spectra`] — Koopman spectral decompositions and spectral comparisons;
//! * [`joining`] — the skew-product model and self-joining classification;
//! * [`quotient`] — finite quotients of integer lattices and dual towers;
//! * [`doc`], [`report`], [`cli`] — document I/O and the command-line front end.
//!
//! The `examples/` directory contains one runnable walkthrough per major
//! capability; `src/bin/heisolat.rs` is a thin command-line wrapper.

pub mod catalog;
pub mod cli;
pub mod doc;
pub mod error;
pub mod heis;
pub mod joining;
pub mod lattice;
pub mod matrix;
pub mod quotient;
pub mod report;
pub mod scalar;
pub mod spectra;
pub mod supernatural;
pub mod tower;
