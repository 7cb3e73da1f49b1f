//! Closed character formulas for symmetric powers `S^N V(lambda)` of irreducible
//! modules over complex simple Lie algebras.
//!
//! The Molien series `prod (1 - q^nu z)^{-m(nu)}` is decomposed into partial
//! fractions in `z`; the coefficients `A_{nu,k}(q)` are exact rational functions
//! and give `Char S^N V(lambda)` for every `N` at once. Everything is exact
//! arithmetic over the rationals, and every result can be checked against the
//! brute-force routes in [`oracle`] and [`vpart`].

pub mod charformula;
pub mod error;
pub mod oracle;
pub mod pfdcore;
pub mod polyring;
pub mod rootsys;
pub mod verify;
pub mod vpart;
pub mod weightsys;

pub use charformula::{
    character_at, multiplicity_at, orbit_split, univariate_pfd, CharacterPoly, OrbitSummand,
    UnivariatePfd,
};
pub use error::{Error, Result};
pub use oracle::{
    adams_symmetric, hsym_multiplicity_free, quadrature_genf_check, tensor_char,
    truncated_exterior, truncated_molien, GradedTruncation,
};
pub use pfdcore::{binomial_poly, pfd_decompose, ClosedCharacter, PfdTerm};
pub use polyring::{FactoredRational, LaurentPoly, Rational};
pub use rootsys::{build_root_system, CartanType, RootSystem, Series, Weight};
pub use verify::{default_suite, verify_all, verify_case, VerifyCase, VerifyRecord};
pub use vpart::{
    build_partition_matrix, check_partition_equivalence, phi, PartitionMatrix, PartitionReport,
};
pub use weightsys::{dim_irrep, weight_system, MultiplicityTable};
