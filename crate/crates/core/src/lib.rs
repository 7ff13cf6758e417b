//! Exact computations in the Urysohn universal metric space.
//!
//! Points of the countable space are permissible tuples over dyadic
//! distances, interned in a [`Store`](space::Store). On top of that sit the
//! one-point extension operator, canonical extension of partial isometries,
//! the back-and-forth isomorphism, the disgroup/module structure, and a
//! precision-driven completion layer.

pub mod algebra;
pub mod completion;
pub mod disring;
pub mod dyadic;
pub mod extend;
pub mod interval;
pub mod metricio;
pub mod space;

pub use dyadic::Dyadic;
pub use space::{NodeId, QuotPoint, Store};
