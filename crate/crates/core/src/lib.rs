//! Generation and verification of balanced Gray codes on permutations and
//! r-rainbow cycles on the associahedron.
//!
//! The permutation side produces cyclic Gray codes for S_n in which every
//! admissible transposition occurs equally often (under all transpositions,
//! cyclically adjacent transpositions, or adjacent transpositions), plus
//! rainbow liftings. The associahedron side produces cycles through
//! triangulations of a convex n-gon in which every interior diagonal is
//! flipped exactly r times. Every construction is checked by an independent
//! verifier in [`verify`].

pub mod assoc;
pub mod assoc_rainbow;
pub mod balanced_all;
pub mod cadj;
pub mod error;
pub mod format;
pub mod perm;
pub mod permutahedron;
pub mod verify;

pub use error::{Error, Result};
