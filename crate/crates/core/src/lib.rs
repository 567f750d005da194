//! Exact near-Hopf ring engine for the integral and mod-p cohomology of the
//! exceptional Lie groups `G2, F4, E6, E7, E8`.
//!
//! The crate is layered:
//!
//! * [`algebra`] and [`tensor`]: graded-commutative monomial algebras and
//!   their tensor squares and cubes.
//! * [`catalog`]: the tabulated data of each group.
//! * [`presentation`]: builds concrete algebras from catalog entries.
//! * [`hopf`]: the mod-p Bockstein and coproduct.
//! * [`lift`]: exact preimages under the tensor Bockstein.
//! * [`integral`]: integral classes as shadow tuples and the pull-back
//!   coproduct.
//! * [`verify`]: the consistency suite.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod group;
pub mod hopf;
pub mod integral;
pub mod lift;
pub mod notation;
pub mod presentation;
pub mod tensor;
pub mod verify;

pub use algebra::{Algebra, Element, Field, GeneratorSpec, Monomial, Rule, Symbol, TorsionOrder};
pub use catalog::CatalogEntry;
pub use error::{Error, Result};
pub use group::Group;
pub use hopf::HopfAlgebra;
pub use integral::{IntegralElement, IntegralRing, IntegralTensor};
pub use tensor::TensorElement;
