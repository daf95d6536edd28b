//! Exact cohomological and K-theoretical Hall algebras of quivers.
//!
//! The algebras are realized as shuffle algebras on per-vertex symmetric
//! polynomials (CoHA), symmetric Laurent polynomials (KHA), and truncated
//! symmetric power series (completed CoHA), all over exact rationals.
//! On top of the shuffle products the crate provides the sign calculus for
//! symmetric quivers (star product, delta isomorphism), Zhang twisting
//! systems with the bullet and circ products, the twisted Chern character
//! homomorphisms, and cyclic locally finite modules presented by large
//! ideals.
//!
//! Everything is exact: no floating point, every identity check is a
//! coefficient-by-coefficient equality of polynomials or truncated series.

pub mod error;
pub mod rat;

pub mod quiver;
pub mod symfun;

pub mod linalg;
pub mod report;
pub mod sampler;

pub mod coha;
pub mod kha;
pub mod modlf;
pub mod twist;

pub use error::{HallError, Result};
pub use quiver::{DimVector, Quiver, Sign, Z2Form};
pub use rat::Rat;
pub use symfun::laurent::LaurentPoly;
pub use symfun::poly::MultiPoly;
pub use symfun::series::TruncSeries;
pub use symfun::vars::VarSpec;

pub use coha::{Bidegree, CohaElem, CohaSeriesElem};
pub use kha::KhaElem;
pub use modlf::{CyclicModule, LargeIdealPresentation, ModuleElement};
pub use twist::{TwistContext, TwistFactor};
