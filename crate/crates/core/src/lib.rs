//! Sum-free vectorial Boolean functions over F_2^n, the Reed-Muller
//! subcodes they define, and the Grassmann graph colorings they induce.
//!
//! An (n,m)-function `F` is *kth-order sum-free* when the XOR of `F` over
//! every k-dimensional affine subspace (k-flat) of F_2^n is nonzero. The
//! crate provides
//!
//! * [`gf2n`]: arithmetic in GF(2^n) for building power maps,
//! * [`vecfun`]: truth tables, algebraic normal form, degree and components,
//! * [`flats`]: canonical enumeration of subspaces and flats, witnesses and
//!   sum-freedom checks,
//! * [`rmcode`]: Reed-Muller generator and parity-check matrices,
//! * [`subcode`]: the subcode of RM(r,n) cut out by an (n-r)th-order
//!   sum-free function, its inverse construction and distance certificates,
//! * [`grassmann`]: witness colorings of Grassmann graphs and their verification,
//! * [`search`]: power-map families, catalog profiling and small
//!   exhaustive nonexistence searches,
//! * [`claims`]: named end-to-end reproduction runs.

pub mod bitmatrix;
pub mod claims;
pub mod config;
pub mod error;
pub mod flats;
pub mod gf2n;
pub mod grassmann;
pub mod io;
pub mod rmcode;
pub mod search;
pub mod subcode;
pub mod vecfun;

pub use bitmatrix::BitMatrix;
pub use config::RunConfig;
pub use error::{Error, Result};
pub use flats::{Flat, Grassmannian, OrderProfile, Subspace};
pub use gf2n::{FieldContext, FieldElement};
pub use grassmann::{ColoringCertificate, GrassmannParams};
pub use rmcode::BinaryCode;
pub use subcode::SubcodeBundle;
pub use vecfun::{AnfCoefficients, VectorialFunction};
