//! Algebra of quadratic refinements on mod-2 surface homology, Dehn twist
//! transvections, and the twist-subset solver for Heegaard diagrams.
//!
//! Given a Heegaard diagram whose `a`-curves carry refinement value 0, the
//! solver finds a set of `a`-curves whose combined twist makes the
//! refinement vanish on every `b`-curve as well, and emits a certificate
//! that is re-checked by direct twist application.

pub mod document;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod heegaard;
pub mod mapping_class;
pub mod oracle;
pub mod quad_form;
pub mod report;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, Inconsistency, RankKernel, Solution, SystemOutcome};
pub use heegaard::{HeegaardDiagram, Metadata};
pub use mapping_class::{pullback, twist_functional, Twist, TwistWord};
pub use quad_form::{GaussSum, HValue, InnerSpace, QuadraticRefinement};
pub use report::{ValidationReport, Violation};
pub use solver::{Policy, SolveOutcome, TwistCertificate, TwistSystem};
