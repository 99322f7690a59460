//! Exact computations with nilpotent elements of classical Lie algebras
//! `End(V, Q)`: conjugacy-class invariants, monodromy weight filtrations,
//! Deligne splittings, limiting mixed Hodge structures, and verification that
//! the elements of a nilpotent cone share one real conjugacy class.
//!
//! All arithmetic is over ℚ or ℚ(i); nothing rounds.

pub mod cone;
pub mod error;
pub mod forms;
pub mod hodge;
pub mod matrix;
pub mod nilpotent;
pub mod orbit;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
pub use forms::{FormParity, HermForm, Signature, SymForm};
pub use matrix::Matrix;
pub use scalar::{rat, ratio, Gaussian, Rational, Scalar};
pub use subspace::{Filtration, FiltrationKind, Quotient, Subspace};
pub use nilpotent::{FormSpace, NilpotentElement, OrbitInvariants, WeightFiltration};
pub use orbit::{ClassLabel, PosetRelation};
pub use hodge::{DeligneSplitting, HodgeFlag, LmhsRecord};
pub use cone::{CongruenceReport, NilpotentCone, SampleStrategy};
