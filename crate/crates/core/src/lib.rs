//! Exact computations with the colored planar rook monoid `P_m^n`, its semigroup
//! algebra `CP_m`, the simple `CP_m`-modules with their restriction and induction
//! functors, and the `gl_{n+1}` crystals carried by isomorphism classes of simples.
//!
//! Layers, bottom up:
//!
//! * [`diagram`]: planar colored rook diagrams, their product, flip and juxtaposition.
//! * [`algebra`]: formal rational sums of diagrams, the alternating-sum basis `x_d`,
//!   identity and truncation idempotents.
//! * [`modules`]: simple modules `W_T`, explicit modules given by action matrices,
//!   multiplicities, restriction and class-level induction.
//! * [`crystal`]: generic finite crystals, tensor products, the signature rule,
//!   components and isomorphism.
//! * [`tableaux`]: box, one-row and semistandard tableau crystals.
//! * [`categorified`]: crystals on classes of simple modules.
//! * [`verify`]: exhaustive checks of the structural statements on small instances.

pub mod algebra;
pub mod categorified;
pub mod combinatorics;
pub mod crystal;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod tableaux;
pub mod verify;

pub use algebra::AlgebraElement;
pub use crystal::{Crystal, Weight};
pub use diagram::{Boundary, Diagram, Edge};
pub use error::{Error, Result};
pub use modules::{ClassLabel, ExplicitModule, SimpleModule};

/// Exact rational scalars.
pub type Q = num_rational::BigRational;

/// `Q` from a small integer.
pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}
