//! One constructor per family of flag-transitive designs.
//!
//! Every constructor recomputes the parameters of what it built and compares
//! them with the closed form for its family; a mismatch is a
//! [`FamilyError::ClaimFailed`], never a silently emitted design.

use thiserror::Error;

use crate::algebra::{arith, AlgebraError, FiniteField};
use crate::design::{compute_params, DesignError, DesignParams, IncidenceDesign};
use crate::geometry::GeometryError;
use crate::permgroup::PermError;

pub mod affine;
pub mod projective;
pub mod recipe;
pub mod suzuki;
pub mod tensor;
pub mod unital;
pub mod wbs;

pub use affine::{build_affine_subspace_design, build_coset_union_design, Placement};
pub use projective::{build_point_hyperplane, build_projective_points_design};
pub use recipe::{load_recipe, parse_recipe, Recipe, RecipeError};
pub use suzuki::{build_suzuki_design, ree_parameters};
pub use tensor::{build_semilinear_tensor_variants, build_tensor_design};
pub use unital::{build_hermitian_unital, build_unitary_design};
pub use wbs::build_wbs;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("claim failed: {claim}; computed {computed}")]
    ClaimFailed { claim: String, computed: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

pub(crate) fn precondition(msg: impl Into<String>) -> FamilyError {
    FamilyError::Precondition(msg.into())
}

/// Splits a prime power `q = p^e`.
pub(crate) fn prime_power(q: u32) -> Result<(u32, u32), FamilyError> {
    arith::prime_power(q as u64)
        .map(|(p, e)| (p as u32, e))
        .ok_or_else(|| precondition(format!("q = {q} must be a prime power")))
}

pub(crate) fn field_of_order(q: u32) -> Result<FiniteField, FamilyError> {
    let (p, e) = prime_power(q)?;
    Ok(FiniteField::new(p, e)?)
}

/// The claims every catalog design makes about itself.
pub const STANDARD_CLAIMS: &str = "2-design,coprime,flag-transitive,point-primitive";

fn tuple_string(t: (u64, u64, u64, u64, u64)) -> String {
    format!("{},{},{},{},{}", t.0, t.1, t.2, t.3, t.4)
}

fn describe(p: &DesignParams) -> String {
    if p.is_2design {
        format!("2-({},{},{}) with b={} r={}", p.v, p.k, p.lambda, p.b, p.r)
    } else {
        format!(
            "not a 2-design: v={} b={} uniform k={} r={} lambda={}",
            p.v, p.b, p.uniform_k, p.uniform_r, p.uniform_lambda
        )
    }
}

/// Checks the built design against the closed-form tuple and stamps its metadata.
///
/// Coprimality is recorded, not required: `claims` lists `coprime` only when it holds.
pub(crate) fn finish(
    design: IncidenceDesign,
    family: &str,
    params: &str,
    field: Option<&FiniteField>,
    expected: (u64, u64, u64, u64, u64),
) -> Result<IncidenceDesign, FamilyError> {
    let computed = compute_params(&design)?;
    let name = if params.is_empty() {
        family.to_string()
    } else {
        format!("{family} {params}")
    };
    if !computed.is_2design || computed.tuple() != expected {
        return Err(FamilyError::ClaimFailed {
            claim: format!("{name} is a design with (v,b,r,k,lambda) = ({})", tuple_string(expected)),
            computed: describe(&computed),
        });
    }
    let claims = if computed.coprime {
        STANDARD_CLAIMS.to_string()
    } else {
        STANDARD_CLAIMS.replace("coprime,", "")
    };
    let mut design = design
        .with_meta("family", family)
        .with_meta("params", params)
        .with_meta("expect", tuple_string(expected))
        .with_meta("claims", claims);
    if let Some(f) = field {
        design = design.with_meta("field", f.descriptor());
    }
    Ok(design)
}

/// `(v, b, r, k, λ)` of a 2-design from `v, k, λ`; `None` when the counts are not integral.
pub fn params_from_vkl(v: u64, k: u64, lambda: u64) -> Option<(u64, u64, u64, u64, u64)> {
    if k < 2 || v < 2 || !(lambda * (v - 1)).is_multiple_of(k - 1) {
        return None;
    }
    let r = lambda * (v - 1) / (k - 1);
    if !(v * r).is_multiple_of(k) {
        return None;
    }
    Some((v, v * r / k, r, k, lambda))
}
