//! Exact combinatorial commutative algebra of the pure spinor cone.
//!
//! The crate materializes the periodic lattice Ê of decorated spinor labels,
//! the interval algebras `A[δ,δ′]` cut out by loop-mode pure-spinor quadrics,
//! their straightening laws and Hibi degenerations, the Gorenstein
//! classification of intervals, multigraded Hilbert series and characters,
//! partition functions with their functional equations, and desk-scale
//! Koszul and local-cohomology computations.

pub mod error;
pub mod hilbert;
pub mod homology;
pub mod poly;
pub mod rational;
pub mod series;
pub mod straighten;
pub mod interval;
pub mod linalg;
pub mod partition;
pub mod poset;
pub mod weight;

pub use error::{Error, Result};
pub use interval::Interval;
pub use poset::{Label, Side, Vertex};
pub use weight::Weight;
