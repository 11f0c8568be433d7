//! Exact computations in the soluble matrix groups S_n^I(R) — upper
//! triangular matrices over an integral domain whose diagonal entries outside
//! an index set `I` are pinned to 1 — together with their automorphisms and
//! twisted-conjugacy (Reidemeister) machinery on finite quotients.
//!
//! The crate is organised in four layers:
//!
//! * [`rings`]: canonical exact arithmetic for the base rings (Z, S-integers,
//!   `Z[sqrt d]`, finite fields, `F_q[t]` and its localizations), ring
//!   automorphisms and reduction to residue fields;
//! * [`groups`]: group elements as (unipotent, diagonal) pairs, the defining
//!   generator relations, finite-generation classification, characteristic
//!   quotients and finite enumeration;
//! * [`automorphisms`]: atomic automorphisms (inner, diagonal conjugation,
//!   the flip, ring-induced maps, the explicit 3x3 maps) with composition,
//!   homomorphism verification and quotient descent;
//! * [`twisted`]: twisted conjugation, Reidemeister class enumeration via
//!   union-find, quotient lower bounds, fixed-point searches, fixed-family
//!   certificates and brute-force automorphism enumeration for small groups.

pub mod automorphisms;
pub mod error;
pub mod groups;
pub mod report;
pub mod rings;
pub mod sampling;
pub mod suites;
pub mod twisted;

pub use error::{Error, Result};
