//! Double sextic and quartic normal forms, their birational maps, and the
//! del Pezzo construction for Picard rank nine.

pub mod del_pezzo;
pub mod locus;
pub mod maps;
pub mod models;
pub mod params;

pub use del_pezzo::{
    check_general_position, del_pezzo_model, genus2_fixed_curve_check, linear_system, random_points, rank9_coefficients,
    verify_tangent_conic, DelPezzoModel,
};
pub use locus::{branch_singular_locus, plane_curve_locus, Certificate, LocusModel, LocusPoint, SingularLocusReport};
pub use maps::{map_catalog, verify_identity, verify_map, MapCheck, MapVerdict, MAP_CATALOG};
pub use models::{
    build_k, build_s_canonical, build_s_hn, build_s_rank10, build_s_rank9, build_sprime, CoverEquation, DoubleSexticModel, QuarticModel,
    Rank10Params, SprimeModel,
};
pub use params::{derive_prime_parameters, general_binary_forms, PrimeParams, PRIME_LABELS};

use thiserror::Error;

use crate::poly::{MultiPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("{what} must be a binary form of degree {expected}")]
    Degree { what: String, expected: u32 },
    #[error("{0}")]
    Domain(String),
    #[error("points are not in general position: {0}")]
    Genericity(String),
    #[error("linear solve failed: {0}")]
    Solver(String),
    #[error("search failed: {0}")]
    Search(String),
    #[error("{what} leaves the nonzero residual {residual}")]
    Residual { what: String, residual: String },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Zero or homogeneous of degree `d` in `u, v` only.
pub(crate) fn check_binary_form(what: &str, p: &MultiPoly, d: u32) -> Result<(), SurfaceError> {
    let ok = p.is_zero() || (p.vars().iter().all(|x| x == "u" || x == "v") && p.homogeneous_degree_in(&["u", "v"]) == Some(d));
    if ok {
        Ok(())
    } else {
        Err(SurfaceError::Degree {
            what: what.into(),
            expected: d,
        })
    }
}
