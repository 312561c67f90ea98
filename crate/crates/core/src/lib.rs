//! Exact fixed-point combinatorics for moduli spaces of framed sheaves on
//! Hirzebruch surfaces `F_p` and their stacky variants.
//!
//! * [`partition`]: Young diagrams, arms, legs and column statistics.
//! * [`fixed_locus`]: Chern vectors and tableaux indexing torus-fixed points.
//! * [`character`]: tangent-space weights and Morse indexes by counting.
//! * [`poincare`]: closed-form indexes, Poincaré polynomials, Euler
//!   characteristics and their generating function.
//! * [`oracle`]: theta/eta series, Hilbert-scheme product, q-binomials.
//! * [`verify`]: sweeps comparing the engine with the oracles.

pub mod character;
pub mod error;
pub mod fixed_locus;
pub mod oracle;
pub mod partition;
pub mod poincare;
pub mod poly;
pub mod rational;
pub mod series;
pub mod verify;

pub use character::{Character, IndexReport, WeightTerm};
pub use error::{Error, Result};
pub use fixed_locus::{ChernData, ChernVector, FixedComponent, FullFixedPoint, SurfaceParams};
pub use partition::{Cell, Partition};
pub use poly::IntPolynomial;
pub use rational::Rational;
pub use series::BiSeries;
