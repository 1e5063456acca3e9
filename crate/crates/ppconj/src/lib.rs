//! Exact computation in the group of piecewise projective homeomorphisms of
//! the real line fixing infinity, over a fixed real quadratic field.
//!
//! The crate provides exact field arithmetic ([`exactnum`]), Möbius
//! transformations of the projective line ([`moebius`]), the piecewise
//! projective maps themselves ([`pmap`]), the affine group of germs
//! ([`affgroup`]), the stair construction of candidate conjugators
//! ([`conjugacy`]), circle-map invariants for translation-germ one-bump maps
//! ([`mather`]) and centralizer classification ([`centralizer`]).

pub mod affgroup;
pub mod batch;
pub mod centralizer;
pub mod conjugacy;
pub mod error;
pub mod exactnum;
pub mod io;
pub mod mather;
pub mod moebius;
pub mod oracle;
pub mod plot;
pub mod pmap;
pub mod random;

pub use error::Error;
