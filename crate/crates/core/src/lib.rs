//! Skew left braces of order `pq`, the groups `Λ_A = (A,·) ⋊_λ (A,∘)` built from
//! them, and their complex irreducible representations.
//!
//! The crate is layered bottom-up:
//!
//! * [`group`] and [`map`]: closed-form finite groups on residue tuples, subgroups,
//!   conjugacy classes, semidirect products and verified homomorphisms.
//! * [`iso`]: invariant fingerprints and a backtracking isomorphism search.
//! * [`brace`]: the brace axiom, lambda maps, opposite braces, commutators, ideals and
//!   the complete catalog of braces of order `pq`.
//! * [`lambda_group`]: `Λ_A`, its `(Z_p×Z_p) ⋊ (Z_q×Z_q)` models and the twist maps
//!   that glue the catalog into four isomorphism classes.
//! * [`rep`]: characters, matrix representations, the counting solver and the
//!   little-group construction of every irreducible representation.
//! * [`verify`]: the self-check suite exposed by the `verify` CLI subcommand.
//!
//! Inner loops run on rayon when the default `parallel` feature is on and fall back
//! to plain iterators otherwise.

pub mod brace;
pub mod config;
pub mod error;
pub mod group;
pub mod iso;
pub mod lambda_group;
pub mod map;
pub mod modular;
pub mod par;
pub mod rep;
pub mod verify;

pub use brace::{catalog, make_brace, BraceLabel, BraceParams, SkewBrace, Variant};
pub use config::{Limits, Tolerances};
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, GroupRef};
pub use lambda_group::{build_lambda_group, iso_classes, LambdaGroup};
pub use map::GroupMap;
pub use rep::{profile_for_brace, IrrepProfile};
