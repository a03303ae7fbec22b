//! Finite groups from Cayley tables, their character tables, Kronecker
//! product decompositions and Clebsch-Gordan matrices, with the quaternion
//! groups Q8, Q16, Q32 and the order-32 group G32_42 built in.

#![allow(clippy::needless_range_loop)]

pub mod clebsch;
pub mod cli;
pub mod group;
pub mod numerics;
pub mod par;
pub mod reference;
pub mod rep;
pub mod reproduce;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] group::GroupError),
    #[error(transparent)]
    Rep(#[from] rep::RepError),
    #[error(transparent)]
    Cg(#[from] clebsch::CgError),
    #[error(transparent)]
    Numerics(#[from] numerics::NumericsError),
    #[error(transparent)]
    Reference(#[from] reference::ReferenceError),
    #[error("IoError: {path}: {message}")]
    Io { path: String, message: String },
    #[error("CgMismatch: {0}")]
    CgMismatch(String),
    #[error("ReproductionFailed: {0} item(s) failed")]
    ReproductionFailed(usize),
}
