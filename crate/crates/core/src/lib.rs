//! Tube algebras of group-graded fusion categories and their twists.
//!
//! Builds the tube algebra of a skeletal fusion category from F-symbol
//! data, induces groupoid 2-cocycles on `Γ ⋉_Ad Γ` from group 3-cocycles,
//! twists the algebra's Fell bundle, and verifies that the twisted-category
//! route and the cocycle-twist route produce identical tables. Pointed
//! computations run in exact root-of-unity arithmetic.

pub mod cli;
pub mod cohomology;
pub mod fusion;
pub mod groupoid;
pub mod groups;
pub mod linalg;
pub mod phase;
pub mod scalar;
pub mod snf;
pub mod specs;
pub mod spectrum;
pub mod trees;
pub mod tube;
