//! Finite interval algebra workbench.
//!
//! Builds the interval structures over `Z_n` (semigroups, groupoids
//! `Z_n(t, u)`, groups), the loops `L_n(m)`, transformation and matrix
//! structures, and their n-fold componentwise products, then checks
//! identities, special elements, substructures and theorem claims by
//! exhaustive enumeration.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches
//! files, the command line or serialization lives in the `ialg` crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod audit;
pub mod carrier;
pub mod construct;
pub mod element;
mod error;
pub mod identities;
pub mod magma;
pub mod rule;
pub mod special;
pub mod structure;
pub mod subs;

pub use carrier::{Carrier, Unbounded};
pub use construct::{
    formula_loop, matrix_structure, new_loop, product, sym_structure, units_group, unbounded_groupoid,
    unbounded_semigroup, zn_group, zn_groupoid, zn_semigroup, MatrixMode, SemigroupOp,
};
pub use element::{Element, LoopPoint, Matrix, ModInterval, Scalar};
pub use error::{Error, Result};
pub use magma::{CayleyTable, ClassLabel, Magma, StructureClass, DEFAULT_ORDER_CAP};
pub use rule::OpRule;
pub use structure::{Component, Flavor, Structure};
