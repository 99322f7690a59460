//! Hodge flags over ℚ(i), Hodge decompositions and polarizations, the
//! Deligne splitting, and the axioms of a limiting mixed Hodge structure.

mod decomposition;
mod deligne;
pub mod fixtures;
mod flag;
mod lmhs;

pub use decomposition::{hodge_decomposition, induced_on_quotient, is_polarized, HodgeDecomposition, Polarization};
pub use deligne::{deligne_splitting, primitive_splitting, DeligneSplitting, SplittingCheck};
pub use flag::{flag_dims, in_compact_dual, CompactDualCheck, HodgeFlag, HodgeNumbers};
pub use lmhs::{is_lmhs, AxiomCheck, LmhsRecord, AXIOMS};
