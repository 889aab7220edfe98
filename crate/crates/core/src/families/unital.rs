//! The Hermitian unital and the unitary designs on its points.

use crate::design::{orbit_design, IncidenceDesign};
use crate::geometry::HermitianSpace;
use crate::permgroup::{PermGroup, Permutation};

use super::{finish, precondition, prime_power, FamilyError};

/// Hermitian space together with PΓU_3(q) acting on the isotropic points.
fn unital_group(q: u32) -> Result<(HermitianSpace, Vec<u32>, PermGroup), FamilyError> {
    prime_power(q)?;
    if q > 5 {
        return Err(precondition(format!("q = {q} exceeds the cap q <= 5")));
    }
    let h = HermitianSpace::new(q)?;
    let iso = h.isotropic_points();
    let mut position = vec![u32::MAX; h.space().len()];
    for (i, &x) in iso.iter().enumerate() {
        position[x as usize] = i as u32;
    }
    let perms = h
        .unitary_generators()
        .iter()
        .map(|m| {
            let on_plane = h.space().permutation(m)?;
            let images = iso
                .iter()
                .map(|&x| position[on_plane.apply(x) as usize])
                .collect();
            Ok(Permutation::new(images)?)
        })
        .collect::<Result<Vec<_>, FamilyError>>()?;
    let group = PermGroup::new(iso.len(), perms)?;
    Ok((h, iso, group))
}

/// The unital 2-(q^3+1, q+1, 1).
pub fn build_hermitian_unital(q: u32) -> Result<IncidenceDesign, FamilyError> {
    let (h, iso, group) = unital_group(q)?;
    let design = IncidenceDesign::new(iso.len(), h.hermitian_blocks())?.with_group(group)?;
    let q = q as u64;
    let v = q * q * q + 1;
    finish(
        design,
        "hermitian-unital",
        &format!("q={q}"),
        Some(h.field()),
        (v, q * q * (q * q - q + 1), q * q, q + 1, 1),
    )
}

/// Blocks are the unital blocks with one point removed: 2-(q^3+1, q, q-1).
pub fn build_unitary_design(q: u32) -> Result<IncidenceDesign, FamilyError> {
    let (h, iso, group) = unital_group(q)?;
    let line = h
        .hermitian_blocks()
        .into_iter()
        .next()
        .expect("a unital has blocks");
    let design = orbit_design(iso.len(), &group, &line[1..])?;
    let q = q as u64;
    let v = q * q * q + 1;
    finish(
        design,
        "unitary",
        &format!("q={q}"),
        Some(h.field()),
        (v, v * q * q, q * q * q, q, q - 1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{compute_params, is_flag_transitive};

    #[test]
    fn unital_q3() {
        let d = build_hermitian_unital(3).unwrap();
        assert_eq!(compute_params(&d).unwrap().tuple(), (28, 63, 9, 4, 1));
        assert!(is_flag_transitive(&d).unwrap());
    }

    #[test]
    fn unitary_group_orders() {
        // |PΓU_3(q)| = q^3 (q^3+1) (q^2-1) * 2e for q = p^e.
        for (q, order) in [(2u32, 432u128), (3, 12_096), (4, 249_600)] {
            let (_, _, g) = unital_group(q).unwrap();
            assert_eq!(g.order(), order);
            assert!(g.is_two_transitive());
        }
    }

    #[test]
    fn unitary_q3() {
        let d = build_unitary_design(3).unwrap();
        let p = compute_params(&d).unwrap();
        assert_eq!(p.tuple(), (28, 252, 27, 3, 2));
        assert!(p.coprime);
        assert!(is_flag_transitive(&d).unwrap());
    }

    #[test]
    fn cap_and_prime_power() {
        assert!(matches!(build_unitary_design(7), Err(FamilyError::Precondition(_))));
        assert!(matches!(build_hermitian_unital(6), Err(FamilyError::Precondition(_))));
    }
}
