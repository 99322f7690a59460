//! Conjugacy classes of nilpotents from their invariants `(m, s)`.

mod catalog;
mod classify;
mod order;
mod representative;

pub use catalog::{catalog, catalog_weight, enumerate_invariants, partitions, CatalogEntry};
pub use classify::{
    classify_complex, classify_real, global_signature, validate_invariants, ClassLabel, Component, Field, Group,
    InvariantCheck, SplitBranch,
};
pub use order::{closure_consistency, order_dominance, order_paper, ClosureVerdict, PosetRelation};
pub use representative::construct_representative;
