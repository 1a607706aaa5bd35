//! Exact computation of the cohomology of Young and permutation modules for
//! symmetric groups in positive characteristic, together with Ext groups
//! between Young modules.
//!
//! Everything reduces to two ingredients: the decomposition numbers of the
//! Schur algebra (supplied as data files, see [`schur_data`]) and the weight
//! spaces of the mod-p homology of symmetric groups acting on tensor powers,
//! computed from the Dyer-Lashof description (see [`dyer_lashof`]). The
//! [`cohomology`] module combines them; [`closed_forms_p2`] provides O(|lambda|)
//! closed forms for degrees 1 and 2 at p = 2; [`oracle`] provides slow,
//! independent cross-checks (bar resolution, Kunneth).
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod closed_forms_p2;
pub mod cohomology;
pub mod dyer_lashof;
pub mod error;
pub mod gl_characters;
pub mod oracle;
pub mod partitions;
pub mod schur_data;
pub mod sym_characters;

pub use error::{Error, Result};
pub use partitions::{partitions_of, Partition};
