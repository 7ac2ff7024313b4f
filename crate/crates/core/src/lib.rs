//! Exact computer algebra for the restricted quantum group `Ū_q(sl₂)` at
//! `q = exp(πi/p)`.
//!
//! Everything here is pure computation over the cyclotomic field `Q(q)`; the
//! crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod cyclotomic;
pub mod error;
pub mod functional;
pub mod hopf;
pub mod integrals;
pub mod linalg;
pub mod projective;
pub mod qnum;
pub mod rational;
pub mod report;
pub mod slf;

pub use algebra::{AlgElem, CentralPoly, KPoly, Mono, Uq};
pub use cyclotomic::{CycField, CycNum};
pub use error::{Error, Result};
pub use functional::Functional;
pub use hopf::{Tensor, TensorElem};
pub use rational::Rational;
pub use report::{Check, Status, VerificationReport};
