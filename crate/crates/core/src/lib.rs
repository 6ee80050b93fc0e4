//! Membership deciders and basis enumeration for permutation classes,
//! juxtapositions and 2×2 grid classes.
//!
//! The superclass `F` of a 2×2 grid is the horizontal juxtaposition of its two
//! columns, each a vertical juxtaposition; its squint subclasses restrict the
//! relative heights of the left and right horizontal lines. The grid class is
//! exactly the intersection of the two squint classes, which the
//! [`experiments`] module checks exhaustively.

pub mod basis;
pub mod class;
pub mod dsl;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod perm;

pub use basis::{enumerate_basis, BasisReport, EnumConfig, Membership, Squint, Superclass};
pub use class::{member_av, ClassSpec};
pub use error::{Error, ParseError, Result};
pub use experiments::{
    nonfb_demo, relative_basis, survey_monotone, theorem2_check, verify_lemma3, verify_observation2,
    Lemma3Verdict, Observation2Check, OrbitReport, RelativeBasisReport, Theorem2Form,
};
pub use grid::{
    member_f, member_grid, member_squint, valid_heights, DivisionTriple, Grid2x2, GridSpec, Gridding, Side,
};
pub use perm::{all_permutations, contains, Permutation, Symmetry};
