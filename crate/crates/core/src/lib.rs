//! Exact computation with supercharacters of the Sylow p-subgroups of the
//! finite symplectic and orthogonal groups.
//!
//! For an odd prime power q = p^e and one of the classical groups Sp_2n(q),
//! O_2n(q), O_2n+1(q), the Sylow p-subgroup U sits inside the unitriangular
//! group U_m(q). This crate builds U and its Lie algebra exactly, enumerates
//! the basic pairs (D, phi) indexing the supercharacters, tabulates the
//! supercharacters themselves by two independent routes (character induction
//! and coadjoint orbit sums), and exposes the machinery needed to check the
//! structural facts of the theory — orthogonality, the partition of the dual
//! space into basic subvarieties, product closure, restriction from U_m(q),
//! the regular-character decomposition, and the combinatorics of the
//! irreducible characters of maximum degree.
//!
//! All arithmetic is exact: matrix entries live in F_q, character values in
//! the cyclotomic field Q(zeta_p), inner products in Q. Nothing is ever
//! rounded.
//!
//! ```
//! use supq_core::chars::{norm, CharCtx};
//! use supq_core::field::FieldSpec;
//! use supq_core::group::{GroupTable, DEFAULT_CAP};
//! use supq_core::rational::Rational;
//! use supq_core::roots::{BasicPair, Family, GroupKind, Root};
//!
//! // the Sylow 3-subgroup of Sp_4(3), with 81 elements
//! let fs = FieldSpec::new(3, 1, None).unwrap();
//! let kind = GroupKind::new(Family::Symplectic, 2).unwrap();
//! let table = GroupTable::build_classical(kind, fs, DEFAULT_CAP).unwrap();
//! assert_eq!(table.size(), 81);
//!
//! // the supercharacter attached to the long root 2eps_1 with label 1 is
//! // irreducible of degree 3
//! let one = table.field().one();
//! let pair = BasicPair::new(kind, &[(Root::TwoEps(1), one)]).unwrap();
//! let xi = CharCtx::new(&table).supercharacter(&pair).unwrap();
//! assert_eq!(xi.degree().unwrap(), Rational::from_int(3));
//! assert_eq!(norm(&table, &xi).unwrap(), Rational::ONE);
//! ```
//!
//! The crate is `no_std` + `alloc`; IO, file formats and the command line
//! live in the companion `supq-cli` crate.

#![cfg_attr(not(test), no_std)]
// index-driven loops over matrices and parity tests on ranks read better in
// this codebase than the iterator/helper forms clippy suggests
#![allow(
    clippy::needless_range_loop,
    clippy::manual_is_multiple_of,
    clippy::manual_div_ceil
)]

extern crate alloc;

pub mod chars;
pub mod coadjoint;
pub mod cyclotomic;
#[cfg(feature = "dixon")]
pub mod dixon;
pub mod field;
pub mod group;
pub mod matrix;
pub mod maxdeg;
pub mod rational;
pub mod roots;
pub mod verify;

pub use field::{FieldElement, FieldSpec};
pub use roots::{BasicPair, Entry, Family, GroupKind, MirrorIndex, Root};
