//! Self-dual permutation codes of finite groups over finite fields in the
//! semisimple case: existence criteria, constructions and verification.

pub mod construct;
pub mod error;
pub mod gf;
pub mod group;
pub mod library;
pub mod linalg;
pub mod modrep;
pub mod numtheory;
pub mod par;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{ExtensionField, Fel, FiniteField};
pub use linalg::{Mat, Subspace, SymForm};
