//! Exact counting of lattice paths that stay above a line of rational slope.
//!
//! The crate pairs closed-form counts with brute-force oracles and with the
//! explicit bijections relating the path families:
//!
//! - [`exactmath`]: big integers, canonical rationals, binomial coefficients.
//! - [`model`]: points, boundary lines, queries and step strings.
//! - [`formulas`]: the closed forms.
//! - [`oracle`]: tabulation and enumeration used as ground truth.
//! - [`bijections`]: path-level correspondences between families.
//! - [`identities`]: checks of the binomial identities behind the formulas.
//! - [`verify`]: grid sweeps tying all of the above together.
//!
//! ```
//! use latpath::{count, BoundaryLine, PathQuery};
//!
//! // Dyck paths of semilength 3
//! let q = PathQuery::weak(BoundaryLine::integer(1, 0), (0, 0), (3, 3));
//! assert_eq!(count(&q).to_string(), "5");
//! ```

pub mod bijections;
pub mod error;
pub mod exactmath;
pub mod formulas;
pub mod identities;
pub mod model;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{binomial, generalized_binomial, upper_negation, Count, Rational};
pub use formulas::{
    ballot, base_case, bohm, count, count_strict, count_strict_inv, count_weak, count_weak_inv, evaluate,
    fuss_catalan, koroljuk_literal, koroljuk_reduced, niederhausen, BohmQuery, KoroljukQuery,
    NiederhausenQuery,
};
pub use model::{
    above, normalize_intercept, validate_query, BoundaryLine, LatticePath, PathQuery, Point, QueryClass,
    SlopeKind, Step, StepSet, Strictness,
};
pub use oracle::{count_stepset, dp_count, enumerate_paths, StepFamily, StepsetTally};
