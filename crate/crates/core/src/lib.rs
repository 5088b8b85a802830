//! Exact arithmetic for the Grassmann algebra G(n), intersecting families of
//! odd subsets, and the counting identities showing that some maximal
//! commutative subalgebras of G(4k+9) have dimension below `3 * 2^(n-2)`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod centralizer;
pub mod counting;
pub mod exterior;
pub mod families;
pub mod field;
pub mod lattice;
pub mod polyring;

pub use centralizer::{
    centralizer_of, is_maximal_commutative, span, subalgebra_closure, CentralizerError,
    Maximality, Subspace,
};
pub use counting::{CountReport, CountingError};
pub use exterior::{AlgebraContext, AlgebraError, Element, Monomial, Sign};
pub use families::{Check, FamilyError, OddFamily};
pub use field::{Field, FieldError, PrimeField, Rationals, Residue};
pub use polyring::{IntPoly, PolyError};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
