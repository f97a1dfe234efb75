//! Homogeneous relations and their decomposition into strong sets.
//!
//! A relation assigns each element `s` a partition of the other elements; a
//! set is homogeneous when no outside element sees two of its members in
//! different classes.

pub mod algorithms;
pub mod axioms;
pub mod generate;
pub mod instances;
pub mod oracle;
pub mod relation;
pub mod set;
pub mod strong;

pub use algorithms::{is_trivial, mhs, mhs_with_stats, shs, AlgorithmError, MhsStats};
pub use axioms::{check_axiom, check_base, Axiom, AxiomReport};
pub use relation::{CongruencePartition, Relation, RelationError, Restriction};
pub use set::{ElementSet, SetFamily};
pub use strong::{decompose, strong_sets, NodeKind, StrongTree, TreeError, TreeNode, Typing};
