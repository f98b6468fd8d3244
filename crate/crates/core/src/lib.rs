//! Law-checking engine for contextads on finite categories.
//!
//! A contextad is a fibration `p: M -> C` with an action `⊙: M -> C`, a unit
//! and a tensor of grades, and counit/comultiplication cells. Its contextful
//! arrows `(P, f: A⊙P -> B)` form a double category built by [`ctxdouble`].
//! The dual story (contentads, contentful arrows) lives in [`contentad`], and
//! the Set-side container engine in [`container`].

pub mod cli;
pub mod container;
pub mod contentad;
pub mod contextad;
pub mod ctxdouble;
pub mod fibration;
pub mod fincat;
pub mod fixtures;
pub mod monoidal;
pub mod report;

pub use report::{Error, Law, LawResult, Report, Witness};
