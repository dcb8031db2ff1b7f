//! Alexander module presentations of classical links, their Crowell maps,
//! sublink quotients, and coloring invariants of the multivariate Alexander
//! quandle.

pub mod coloring;
pub mod diagram;
pub mod error;
pub mod intlin;
pub mod laurent;
pub mod modular;
pub mod presentation;

pub use error::{Error, Result};
pub use laurent::{Coeff, Laurent, Monomial, RingElement, RingMapSpec};
pub use modular::ZnMatrix;

pub use coloring::{
    count_constrained, fingerprint, solve_colorings, Coloring, Constraint, FiniteModuleSpec, Fingerprint,
    GradedElement,
};
pub use diagram::{parse_diagram, Diagram};
pub use presentation::{
    build_presentation, check_equivalence_certificate, quotient_mod_N, simplify, EquivalenceCertificate, Presentation,
    Verdict,
};

/// Laurent polynomial with arbitrary-precision integer coefficients.
pub type LaurentPoly = Laurent<num_bigint::BigInt>;
/// Laurent polynomial with machine-word coefficients.
pub type SmallLaurent = Laurent<i64>;
