//! Designs on the points of PG_(n-1)(q) under PΓL_n(q).

use crate::algebra::arith::{gcd, ipow};
use crate::design::{orbit_design, IncidenceDesign};
use crate::geometry::{gammal_generators, ProjectiveSpace};
use crate::permgroup::PermGroup;

use super::{field_of_order, finish, precondition, FamilyError};

/// Largest number of points handled by the projective constructors.
const MAX_POINTS: u64 = 4096;

fn space_and_group(n: usize, q: u32) -> Result<(ProjectiveSpace, PermGroup), FamilyError> {
    let field = field_of_order(q)?;
    let points = (ipow(q as u64, n as u32) - 1) / (q as u64 - 1);
    if points > MAX_POINTS {
        return Err(precondition(format!("PG({}, {q}) has {points} points, above the cap {MAX_POINTS}", n - 1)));
    }
    let space = ProjectiveSpace::new(n, &field)?;
    let gens = gammal_generators(&field, n)
        .iter()
        .map(|m| space.permutation(m))
        .collect::<Result<Vec<_>, _>>()?;
    let group = PermGroup::new(space.len(), gens)?;
    Ok((space, group))
}

fn gaussian_count(q: u64, n: u32) -> u64 {
    (ipow(q, n) - 1) / (q - 1)
}

/// Points and hyperplanes of PG_(n-1)(q).
pub fn build_point_hyperplane(n: usize, q: u32) -> Result<IncidenceDesign, FamilyError> {
    if n < 3 {
        return Err(precondition(format!("n = {n} must be at least 3")));
    }
    let (space, group) = space_and_group(n, q)?;
    let design = IncidenceDesign::new(space.len(), space.hyperplanes()?)?.with_group(group)?;
    let q64 = q as u64;
    let v = gaussian_count(q64, n as u32);
    let k = gaussian_count(q64, n as u32 - 1);
    let lambda = gaussian_count(q64, n as u32 - 2);
    finish(
        design,
        "point-hyperplane",
        &format!("n={n} q={q}"),
        Some(space.field()),
        (v, v, k, k, lambda),
    )
}

/// Blocks are the lines of PG_(n-1)(q) with one point removed.
pub fn build_projective_points_design(n: usize, q: u32) -> Result<IncidenceDesign, FamilyError> {
    if n < 3 {
        return Err(precondition(format!("n = {n} must be at least 3")));
    }
    let g = gcd(n as u64 - 1, q as u64 - 1);
    if g != 1 {
        return Err(precondition(format!(
            "gcd(n-1, q-1) = gcd({}, {}) = {g} must be 1",
            n - 1,
            q - 1
        )));
    }
    let (space, group) = space_and_group(n, q)?;
    let line = space.line_through(0, 1)?;
    let base: Vec<u32> = line.into_iter().filter(|&x| x != 0).collect();
    let design = orbit_design(space.len(), &group, &base)?;
    let q64 = q as u64;
    let v = gaussian_count(q64, n as u32);
    let (k, lambda) = (q64, q64 - 1);
    let r = lambda * (v - 1) / (k - 1);
    finish(
        design,
        "projective-points",
        &format!("n={n} q={q}"),
        Some(space.field()),
        (v, v * r / k, r, k, lambda),
    )
}
