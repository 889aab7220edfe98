//! Tensor-product blocks in V_2(2) ⊗ V_3(2) and the semilinear variants in GF(64).
//!
//! Both constructors target the parameters 2-(64, 7, 2). The block orbits they build are
//! not 2-designs: every base block is a 3-dimensional GF(2)-subspace with 0 removed, so
//! with all translations present each pair is covered a multiple of 6 times. The
//! constructors therefore end in [`FamilyError::ClaimFailed`] carrying the computed
//! counts; [`tensor_orbit`] and [`semilinear_tensor_orbit`] expose the raw orbits.

use crate::algebra::FiniteField;
use crate::design::{orbit_design, IncidenceDesign};
use crate::permgroup::{PermGroup, Permutation};

use super::{finish, precondition, FamilyError};

const EXPECTED: (u64, u64, u64, u64, u64) = (64, 192, 21, 7, 2);

/// A 2×3 matrix over GF(2) stored as bits `3 row + column`.
fn entry(x: u32, i: usize, j: usize) -> u32 {
    (x >> (3 * i + j)) & 1
}

/// `x -> A x B^T` on 2×3 matrices.
fn kronecker(a: [[u32; 2]; 2], b: [[u32; 3]; 3]) -> Result<Permutation, FamilyError> {
    Ok(Permutation::from_fn(64, |x| {
        let mut out = 0;
        for i in 0..2 {
            for j in 0..3 {
                let mut s = 0;
                for k in 0..2 {
                    for l in 0..3 {
                        s ^= a[i][k] & entry(x, k, l) & b[j][l];
                    }
                }
                out |= s << (3 * i + j);
            }
        }
        out
    })?)
}

fn translations() -> Vec<Permutation> {
    (0..6)
        .map(|i| Permutation::from_fn(64, |x| x ^ (1 << i)).expect("xor is a bijection"))
        .collect()
}

/// The orbit of `{u_0 ⊗ w : w ≠ 0}` under translations and GL_2(2) ⊗ GL_3(2).
pub fn tensor_orbit() -> Result<IncidenceDesign, FamilyError> {
    const I2: [[u32; 2]; 2] = [[1, 0], [0, 1]];
    const I3: [[u32; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut gens = translations();
    gens.push(kronecker([[1, 1], [0, 1]], I3)?);
    gens.push(kronecker([[0, 1], [1, 0]], I3)?);
    gens.push(kronecker(I2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])?);
    gens.push(kronecker(I2, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])?);
    let group = PermGroup::new(64, gens)?;
    // u_0 = (1, 0): the first row runs over the nonzero vectors of V_3(2).
    let base: Vec<u32> = (1..8).collect();
    Ok(orbit_design(64, &group, &base)?)
}

pub fn build_tensor_design() -> Result<IncidenceDesign, FamilyError> {
    finish(tensor_orbit()?, "tensor", "", None, EXPECTED)
}

/// The orbit of `ℓ_h` under `T : ⟨x -> ω^3 x, x -> x^4⟩` on GF(64).
///
/// With GF(64) = GF(8) ⊕ GF(8) ω, `u_1 ⊗ w` is `w` and `u_2 ⊗ w` is `w ω`, and `γ` is
/// multiplication by `ω^9`, a generator of GF(8)*. Then
/// `ℓ_h = {y (1 + ω^(9h + 1)) : y in GF(8)*}`.
pub fn semilinear_tensor_orbit(h: u32) -> Result<IncidenceDesign, FamilyError> {
    if !(1..=6).contains(&h) {
        return Err(precondition(format!("h = {h} must lie in 1..=6")));
    }
    let f = FiniteField::new(2, 6)?;
    let mut gens = translations();
    let w3 = f.exp(3);
    gens.push(Permutation::from_fn(64, |x| f.mul(x, w3))?);
    gens.push(Permutation::from_fn(64, |x| f.pow(x, 4))?);
    let group = PermGroup::new(64, gens)?;
    let x0 = f.add(1, f.exp(9 * h as u64 + 1));
    let base: Vec<u32> = (0..7).map(|i| f.mul(x0, f.exp(9 * i))).collect();
    Ok(orbit_design(64, &group, &base)?)
}

pub fn build_semilinear_tensor_variants(h: u32) -> Result<IncidenceDesign, FamilyError> {
    let design = semilinear_tensor_orbit(h)?;
    let f = FiniteField::new(2, 6)?;
    finish(design, "semilinear-tensor", &format!("h={h}"), Some(&f), EXPECTED)
}
