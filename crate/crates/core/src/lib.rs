//! Prime-characteristic commutative algebra at desk scale: Gröbner bases over
//! F_p, ideal operations, Frobenius pushforwards and splitting ideals, and the
//! Frobenius invariants built from them (Hilbert–Kunz colengths, F-signature
//! estimates, Frobenius Betti and Euler numbers).

pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod ring;

pub use error::{Error, ParseError, Result, RingError};
pub use field::{FieldElement, PrimeField};
pub use frobenius::{
    fedder_is_fpure, frobenius_decompose, pushforward_presentation, splitting_colength,
    splitting_ideal, splitting_number, FrobeniusDecomposition, PushforwardPresentation,
    SplittingIdeal,
};
pub use groebner::{
    eliminate, reduced_groebner, syzygies, syzygies_over, GroebnerBasis, ModuleBasis,
};
pub use ideal::{
    cm_parameter_multiplicity, Colength, Ideal, LocalLengthCertificate, RegularSequenceCheck,
};
pub use invariants::{
    assoc_check, betti_report, depth_probe, equi_check, frobenius_betti_euler, fsig_estimates,
    fsig_via_hk, hk_function, localize_report, EquiMode,
};
pub use linalg::generic_rank;
pub use module::ModuleElement;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::{PolyRing, Polynomial};
pub use report::{Cell, InvariantReport, Normalized, Table};
pub use resolution::{
    euler_from_betti, local_generator_count, localize_betti, minimal_resolution, Matrix,
    ResolutionSlice,
};
pub use ring::RingSpec;
