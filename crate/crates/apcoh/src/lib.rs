//! Cech cohomology of one-dimensional substitution and mixed-substitution
//! (s-adic) tiling spaces.
//!
//! The pipeline: a substitution family and an eventually periodic mixing
//! sequence define a tower of Anderson-Putnam-type complexes with bonding
//! maps; H0 and H1 of the tiling space are direct limits of integer matrix
//! systems read off the tower. The crate provides
//!
//! - [`word`]: alphabets, words, substitutions, families, mixing sequences,
//!   legal-word languages, substitution matrices, Perron-Frobenius data;
//! - [`analysis`]: primitivity (single, family, family-with-sequence) and
//!   the self-correcting condition;
//! - [`complex`]: the `ap`, `ap_modified`, `ap_full`, `ap_left` and
//!   `ap_left_modified` complex flavors, coboundary matrices, bonding maps,
//!   dot/json export;
//! - [`zmatrix`]: exact integer linear algebra (Smith normal form, kernels,
//!   cokernels, induced quotient maps, eventual rank);
//! - [`cohomology`]: H0/H1 as certified group descriptors such as
//!   `Z[1/6]^2`;
//! - [`cli`] and [`report`]: the command-line front end.
//!
//! Start with the examples: `cargo run --example fibonacci` walks through
//! the whole pipeline on the smallest interesting input.

pub mod analysis;
pub mod cli;
pub mod cohomology;
pub mod complex;
pub mod parse;
pub mod report;
pub mod word;
pub mod zmatrix;

pub use analysis::{is_family_primitive, is_pair_primitive, is_primitive, is_self_correcting};
pub use cohomology::{direct_limit, h0, h1, h1_limit_system, GroupDescriptor, LimitSystem};
pub use complex::{bonding_maps, build_complex, coboundary_matrix, CellComplex, Flavor};
pub use parse::parse_system;
pub use word::{Alphabet, SequenceSpec, Substitution, SubstitutionFamily, Word};
pub use zmatrix::{snf, IntMatrix};
