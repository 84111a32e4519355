//! Exact computations for artinian monomial algebras `A = k[x1..xn]/I`:
//! standard monomial bases and Hilbert functions, shape predicates on
//! Hilbert sequences, exact ranks over `Q` and `F_p`, weak and strong
//! Lefschetz checks for `l = x1 + ... + xn`, inverse systems, and a search
//! for strong Lefschetz monomial ideals with a given number of generators.
//!
//! ```
//! use lefschetz::{family_ideal, check_slp, FieldSpec, GradedQuotient};
//!
//! let ideal = family_ideal(4, 2, 4)?;
//! assert_eq!(GradedQuotient::new(&ideal)?.hilbert_vec(), vec![1, 4, 1]);
//! assert!(check_slp(&ideal, FieldSpec::Rationals)?.passed());
//! # Ok::<(), lefschetz::Error>(())
//! ```

pub mod error;
pub mod fixtures;
pub mod ideal;
pub mod inverse;
pub mod lefschetz;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod quotient;
pub mod search;
pub mod series;

pub use error::{Error, Result};
pub use ideal::{
    adjoin_power_variable, complete_intersection, family_ideal, graph_of_rlex, mu_to_family,
    power_family, rlex_generators, MonomialIdeal, SimpleGraph, SpecialIdeal,
};
pub use lefschetz::{check_slp, check_wlp, LefschetzReport, Property, Verdict};
pub use linalg::{ExactMatrix, Field, FieldSpec, PrimeField, Rationals};
pub use monomial::{monomials_of_degree, revlex_compare, Monomial};
pub use poly::MultivariatePoly;
pub use quotient::{build_quotient, GradedQuotient};
pub use search::{search, SearchCertificate, SearchSpec, Strategy};
pub use series::{closed_form_hs, shape_report, IntSequence, ShapeReport};
