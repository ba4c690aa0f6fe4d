//! Exact arithmetic for dynamics on projective space over the rationals.
//!
//! The crate computes orbits of surjective morphisms of projective space,
//! Weil heights and local heights at the places of the rationals, arithmetic
//! distances between projective points, and local multiplicities of
//! morphisms at rational points. Everything upstream of a logarithm is done
//! in exact integer or rational arithmetic.

pub mod dynamics;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod heights;
pub mod linalg;
pub mod multiplicity;
pub mod poly;

pub use error::Error;
pub use exactnum::{BigInt, BigRat};
pub use geometry::{LinearAut, Morphism, ProjPoint};
pub use heights::{DivisorData, Place, SubschemeData};
pub use multiplicity::{LocalIdeal, MultiplicityReport};
pub use poly::{DehomPoly, HomogeneousForm, UniPoly};

pub type Result<T> = std::result::Result<T, Error>;
