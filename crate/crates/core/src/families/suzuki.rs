//! Designs on the Suzuki–Tits ovoid, and parameter checks for the Ree families.

use crate::algebra::arith::{gcd, prime_power};
use crate::design::{orbit_design, DesignParams, IncidenceDesign};
use crate::geometry::SuzukiOvoid;
use crate::permgroup::PermGroup;

use super::{finish, precondition, FamilyError};

/// 2-(q^2+1, q, q-1) on the ovoid points under Sz(q), `q ∈ {8, 32}`.
///
/// The base block is the unique orbit of length `q` of the subgroup `q:(q-1)` generated
/// by the central translations and the torus, both fixing the point (0:1:0:0).
pub fn build_suzuki_design(q: u32) -> Result<IncidenceDesign, FamilyError> {
    if q != 8 && q != 32 {
        return Err(precondition(format!("q = {q} must be 8 or 32")));
    }
    let ovoid = SuzukiOvoid::new(q)?;
    let v = ovoid.points().len();
    let perms = ovoid
        .generators()
        .iter()
        .map(|m| ovoid.permutation(m))
        .collect::<Result<Vec<_>, _>>()?;
    let group = PermGroup::new(v, perms)?;
    let k_gens = vec![
        ovoid.permutation(&ovoid.translation(0, 1))?,
        ovoid.permutation(&ovoid.torus(ovoid.field().primitive()))?,
    ];
    let sub = PermGroup::new(v, k_gens)?;
    let sized: Vec<Vec<u32>> = sub
        .orbits()
        .into_iter()
        .filter(|o| o.len() == q as usize)
        .collect();
    if sized.len() != 1 {
        return Err(FamilyError::ClaimFailed {
            claim: "the subgroup q:(q-1) has a unique orbit of length q".to_string(),
            computed: format!("{} orbits of length {q}", sized.len()),
        });
    }
    let design = orbit_design(v, &group, &sized[0])?;
    let q = q as u64;
    let v = q * q + 1;
    finish(
        design,
        "suzuki",
        &format!("q={q}"),
        Some(ovoid.field()),
        (v, v * q, q * q, q, q - 1),
    )
}

/// `(v, b, r, k, λ) = (q^3+1, q^(3-i)(q^3+1), q^3, q^i, q^i-1)` for `q = 3^a`, `a >= 3` odd.
pub fn ree_parameters(q: u64, i: u32) -> Result<DesignParams, FamilyError> {
    let odd_power = matches!(prime_power(q), Some((3, a)) if a >= 3 && a % 2 == 1);
    if !odd_power {
        return Err(precondition(format!("q = {q} must be 3^a with a >= 3 odd")));
    }
    if i != 1 && i != 2 {
        return Err(precondition(format!("i = {i} must be 1 or 2")));
    }
    let overflow = || precondition(format!("parameters for q = {q} overflow 64 bits"));
    let q3 = q.checked_pow(3).ok_or_else(overflow)?;
    let v = q3.checked_add(1).ok_or_else(overflow)?;
    let b = q
        .checked_pow(3 - i)
        .and_then(|x| x.checked_mul(v))
        .ok_or_else(overflow)?;
    let k = q.pow(i);
    let params = DesignParams::from_tuple(v, b, q3, k, k - 1);
    let identities = b.checked_mul(k) == v.checked_mul(q3)
        && (k - 1).checked_mul(v - 1) == q3.checked_mul(k - 1);
    if !identities {
        return Err(FamilyError::ClaimFailed {
            claim: "bk = vr and lambda(v-1) = r(k-1)".to_string(),
            computed: params.to_string(),
        });
    }
    if gcd(q3, k - 1) != 1 {
        return Err(FamilyError::ClaimFailed {
            claim: "gcd(r, lambda) = 1".to_string(),
            computed: params.to_string(),
        });
    }
    Ok(params)
}
