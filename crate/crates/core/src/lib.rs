//! Kazhdan–Lusztig theory for Iwahori–Hecke algebras of finite Coxeter
//! groups with unequal parameters.
//!
//! The engine works with exact arithmetic throughout: Laurent polynomials
//! over `Z^k` with a monomial order, the Kazhdan–Lusztig bases, cells, the
//! a-function, Lusztig's ring `J` and the homomorphism `ψ: H → A[W]`.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod asymptotic;
pub mod cells;
pub mod chartable;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod instance;
pub mod int;
pub mod iso;
pub mod linalg;
pub mod numfield;
pub mod ordgroup;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use int::Int;
pub use ordgroup::{Exp, OrderedGroup};
pub use poly::{Coeff, LaurentPoly, Poly};
