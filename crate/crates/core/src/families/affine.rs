//! Designs on the vectors of V_d(p) = V_n(q), `q = p^(d/n)`, whose blocks are subspaces
//! or unions of cosets of a subspace.
//!
//! A vector of V_n(q) is stored as its code `x_0 + x_1 q + ...`, which is also its
//! code as a vector of V_d(p).

use crate::algebra::arith::{gcd, ipow, is_prime};
use crate::algebra::FiniteField;
use crate::design::{orbit_design, IncidenceDesign};
use crate::geometry::{decode, encode, identity_matrix, sl_generators, vec_add, SemilinearMap};
use crate::permgroup::{PermGroup, Permutation};

use super::{finish, params_from_vkl, precondition, FamilyError};

const MAX_POINTS: u64 = 4096;

/// Where the base block sits inside V_n(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    /// Inside the 1-dimensional GF(q)-subspace spanned by `e_1`.
    Line,
    /// Containing the hyperplane `x_n = 0`.
    Hyperplane,
}

impl Placement {
    /// Accepts `a`, `i` or `line`, and `b`, `ii` or `hyperplane`.
    pub fn parse(text: &str) -> Option<Placement> {
        match text {
            "a" | "i" | "line" => Some(Placement::Line),
            "b" | "ii" | "hyperplane" => Some(Placement::Hyperplane),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Placement::Line => "line",
            Placement::Hyperplane => "hyperplane",
        }
    }
}

struct Shape {
    p: u32,
    d: u32,
    n: u32,
    /// `d / n`, the degree of GF(q) over GF(p).
    e: u32,
    field: FiniteField,
}

impl Shape {
    fn new(p: u32, d: u32, n: u32) -> Result<Shape, FamilyError> {
        if !is_prime(p as u64) {
            return Err(precondition(format!("p = {p} must be prime")));
        }
        if n == 0 || d == 0 || !d.is_multiple_of(n) {
            return Err(precondition(format!("n = {n} must divide d = {d}")));
        }
        let v = (p as u64).checked_pow(d).unwrap_or(u64::MAX);
        if v > MAX_POINTS {
            return Err(precondition(format!("p^d = {p}^{d} exceeds the cap {MAX_POINTS}")));
        }
        let e = d / n;
        Ok(Shape {
            p,
            d,
            n,
            e,
            field: FiniteField::new(p, e)?,
        })
    }

    fn q(&self) -> u32 {
        self.field.order()
    }

    fn v(&self) -> u64 {
        ipow(self.p as u64, self.d)
    }

    fn dims(&self) -> String {
        format!("p={} d={} n={}", self.p, self.d, self.n)
    }

    /// A GF(p^g)-subspace of GF(q) of GF(p)-dimension `u` spanned by `1, ω, .., ω^(u/g - 1)`,
    /// and the next power `ω^(u/g)`, which lies outside it.
    fn subfield_span(&self, u: u32, g: u32) -> (Vec<u32>, u32) {
        let f = &self.field;
        let scalars = f.subfield(g);
        let mut span = vec![0u32];
        for j in 0..(u / g) as u64 {
            let beta = f.exp(j);
            span = span
                .iter()
                .flat_map(|&s| scalars.iter().map(move |&c| (s, c)))
                .map(|(s, c)| f.add(s, f.mul(c, beta)))
                .collect();
        }
        span.sort_unstable();
        (span, f.exp((u / g) as u64))
    }

    /// Points `y + x q^(n-1)` with `y` in the hyperplane and `x` in `values`.
    fn over_hyperplane(&self, values: &[u32]) -> Vec<u32> {
        let plane = ipow(self.q() as u64, self.n - 1) as u32;
        values
            .iter()
            .flat_map(|&x| (0..plane).map(move |y| y + x * plane))
            .collect()
    }

    fn place(&self, values: &[u32], placement: Placement) -> Vec<u32> {
        match placement {
            Placement::Line => values.to_vec(),
            Placement::Hyperplane => self.over_hyperplane(values),
        }
    }

    fn map_perm(&self, map: &SemilinearMap) -> Result<Permutation, FamilyError> {
        let (q, n) = (self.q(), self.n as usize);
        Ok(Permutation::from_fn(self.v() as usize, |x| {
            encode(q, &map.apply(&self.field, &decode(q, n, x as u64))) as u32
        })?)
    }

    /// Smallest `e > 0` with `block^(σ^e) = block`, if it is a proper power of σ.
    fn frobenius_stabilizer(&self, block: &[u32]) -> Option<u32> {
        let mut sorted = block.to_vec();
        sorted.sort_unstable();
        (1..self.e).find(|&s| {
            if !self.e.is_multiple_of(s) {
                return false;
            }
            let map = SemilinearMap::frobenius(&self.field, self.n as usize, s);
            let perm = self.map_perm(&map).expect("field automorphisms permute vectors");
            perm.apply_set(&sorted) == sorted
        })
    }

    /// Translations, SL_n(q), `diag(ω, 1, .., 1)` and the part of ⟨σ⟩ fixing `block`.
    fn group(&self, block: &[u32]) -> Result<PermGroup, FamilyError> {
        let (q, n) = (self.q(), self.n as usize);
        let f = &self.field;
        let mut gens = Vec::new();
        for i in 0..n {
            for k in 0..self.e {
                let mut t = vec![0u32; n];
                t[i] = ipow(self.p as u64, k) as u32;
                gens.push(Permutation::from_fn(self.v() as usize, |x| {
                    encode(q, &vec_add(f, &decode(q, n, x as u64), &t)) as u32
                })?);
            }
        }
        let mut linear = sl_generators(f, n);
        let mut diag = identity_matrix(n);
        diag[0][0] = f.primitive();
        linear.push(SemilinearMap::linear(diag));
        if let Some(s) = self.frobenius_stabilizer(block) {
            linear.push(SemilinearMap::frobenius(f, n, s));
        }
        for m in &linear {
            gens.push(self.map_perm(m)?);
        }
        Ok(PermGroup::new(self.v() as usize, gens)?)
    }
}

/// Blocks are the images of a `u`-dimensional GF(p)-subspace under
/// `T : SL_n(q) : ⟨diag(ω, 1, .., 1), σ_0⟩`; `λ = (p^u - 1)/(p^gcd(u, d/n) - 1)`.
///
/// With [`Placement::Line`] the subspace lies in `GF(q) e_1` and needs
/// `gcd(u, d) < u < d/n`; with [`Placement::Hyperplane`] it contains `x_n = 0` and needs
/// `d - d/n <= u < d`, `gcd(u, d) < u`. Both need `gcd(u, n, d/n) = 1`. Coprimality
/// of `r` and `λ` is computed and recorded in the claims, not required.
pub fn build_affine_subspace_design(
    p: u32,
    d: u32,
    n: u32,
    u: u32,
    placement: Placement,
) -> Result<IncidenceDesign, FamilyError> {
    let s = Shape::new(p, d, n)?;
    let e = s.e;
    let g3 = gcd(gcd(u as u64, n as u64), e as u64);
    if g3 != 1 {
        return Err(precondition(format!("gcd(u, n, d/n) = gcd({u}, {n}, {e}) = {g3} must be 1")));
    }
    let gud = gcd(u as u64, d as u64);
    match placement {
        Placement::Line if !(gud < u as u64 && u < e) => {
            return Err(precondition(format!(
                "gcd(u, d) < u < d/n fails: gcd({u}, {d}) = {gud}, u = {u}, d/n = {e}"
            )));
        }
        Placement::Hyperplane if !(d - e <= u && u < d && gud < u as u64) => {
            return Err(precondition(format!(
                "d - d/n <= u < d and gcd(u, d) < u fail: d - d/n = {}, u = {u}, gcd({u}, {d}) = {gud}",
                d - e
            )));
        }
        _ => {}
    }
    let g = gcd(u as u64, e as u64) as u32;
    let local = match placement {
        Placement::Line => u,
        Placement::Hyperplane => u - (d - e),
    };
    let (span, _) = s.subfield_span(local, g);
    let block = s.place(&span, placement);
    let group = s.group(&block)?;
    let design = orbit_design(s.v() as usize, &group, &block)?;
    let pu = ipow(p as u64, u);
    let lambda = (pu - 1) / (ipow(p as u64, g) - 1);
    let expected = params_from_vkl(s.v(), pu, lambda)
        .ok_or_else(|| precondition(format!("(v, k, lambda) = ({}, {pu}, {lambda}) is not admissible", s.v())))?;
    finish(
        design,
        "affine-subspace",
        &format!("{} u={u} placement={}", s.dims(), placement.label()),
        Some(&s.field),
        expected,
    )
}

/// Blocks are images of a union of `ω` cosets of a `u`-dimensional subspace permuted
/// regularly by a Frobenius group of order `p^w ω`; parameters `(p^d, p^u ω, p^u ω - 1)`.
///
/// [`Placement::Line`]: `0 <= u < d/n`, the union is `{ζ^i x_0 + b : b in U}` inside
/// `GF(q) e_1`, `w = u`. [`Placement::Hyperplane`]: `d - d/n <= u < d`, the union is
/// the hyperplane `x_n = 0` plus such an orbit in the last coordinate, `w = u - d + d/n`.
/// Both need `ω | p^gcd(u, d/n) - 1` and `gcd((p^d - 1)/ω, p^u ω - 1) = 1`.
pub fn build_coset_union_design(
    p: u32,
    d: u32,
    n: u32,
    u: u32,
    omega: u32,
    placement: Placement,
) -> Result<IncidenceDesign, FamilyError> {
    let s = Shape::new(p, d, n)?;
    let e = s.e;
    let w = match placement {
        Placement::Line if u < e => u,
        Placement::Hyperplane if d - e <= u && u < d => u - (d - e),
        Placement::Line => {
            return Err(precondition(format!("0 <= u < d/n fails: u = {u}, d/n = {e}")));
        }
        Placement::Hyperplane => {
            return Err(precondition(format!(
                "d - d/n <= u < d fails: d - d/n = {}, u = {u}, d = {d}",
                d - e
            )));
        }
    };
    let g = gcd(u as u64, e as u64) as u32;
    let pg1 = ipow(p as u64, g) - 1;
    if omega == 0 || !pg1.is_multiple_of(omega as u64) {
        return Err(precondition(format!(
            "omega = {omega} must divide p^gcd(u, d/n) - 1 = {p}^{g} - 1 = {pg1}"
        )));
    }
    let v = s.v();
    let k = ipow(p as u64, u) * omega as u64;
    let (left, right) = ((v - 1) / omega as u64, k - 1);
    let witness = gcd(left, right);
    if witness != 1 {
        return Err(precondition(format!(
            "gcd((p^d-1)/omega, p^u*omega-1) = gcd({left}, {right}) = {witness} must be 1"
        )));
    }
    if k >= v {
        return Err(precondition(format!("block size p^u*omega = {k} must be below v = {v}")));
    }
    let f = &s.field;
    let (span, x0) = s.subfield_span(w, g);
    let zeta = f.exp((f.order() as u64 - 1) / omega as u64);
    let mut values = Vec::with_capacity(span.len() * omega as usize);
    let mut c = x0;
    for _ in 0..omega {
        values.extend(span.iter().map(|&b| f.add(c, b)));
        c = f.mul(c, zeta);
    }
    let block = s.place(&values, placement);
    let group = s.group(&block)?;
    let design = orbit_design(v as usize, &group, &block)?;
    let expected = params_from_vkl(v, k, k - 1)
        .ok_or_else(|| precondition(format!("(v, k, lambda) = ({v}, {k}, {}) is not admissible", k - 1)))?;
    finish(
        design,
        "coset-union",
        &format!("{} u={u} omega={omega} placement={}", s.dims(), placement.label()),
        Some(f),
        expected,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{compute_params, is_flag_transitive};

    #[test]
    fn subspace_line_small() {
        // AG over GF(16) as V_2(4): u = 3 needs d/n > 3, so take d = 8, n = 2.
        let d = build_affine_subspace_design(2, 8, 2, 3, Placement::Line).unwrap();
        let p = compute_params(&d).unwrap();
        assert_eq!((p.v, p.k, p.lambda), (256, 8, 7));
        assert!(p.coprime);
        assert!(is_flag_transitive(&d).unwrap());
    }

    #[test]
    fn subspace_hyperplane_reports_gcd() {
        let d = build_affine_subspace_design(2, 6, 2, 4, Placement::Hyperplane).unwrap();
        let p = compute_params(&d).unwrap();
        assert_eq!(p.tuple(), (64, 252, 63, 16, 15));
        assert_eq!(gcd(p.r, p.lambda), 3);
        assert!(!d.meta_value("claims").unwrap().contains("coprime"));
    }

    #[test]
    fn subspace_preconditions() {
        // gcd(u, n, d/n) = gcd(2, 2, 2).
        assert!(build_affine_subspace_design(2, 4, 2, 2, Placement::Line).is_err());
        // u must exceed gcd(u, d).
        assert!(build_affine_subspace_design(2, 6, 1, 1, Placement::Line).is_err());
        assert!(build_affine_subspace_design(2, 14, 2, 3, Placement::Line).is_err());
    }

    #[test]
    fn coset_union_81() {
        let d = build_coset_union_design(3, 4, 2, 0, 4, Placement::Line).unwrap();
        let p = compute_params(&d).unwrap();
        assert_eq!(p.tuple(), (81, 1620, 80, 4, 3));
        assert!(p.coprime);
        assert!(is_flag_transitive(&d).unwrap());
    }

    #[test]
    fn coset_union_single_coset() {
        let d = build_coset_union_design(2, 4, 2, 1, 1, Placement::Line).unwrap();
        assert_eq!(compute_params(&d).unwrap().tuple(), (16, 120, 15, 2, 1));
    }

    #[test]
    fn coset_union_witness() {
        let err = build_coset_union_design(2, 6, 2, 0, 7, Placement::Line).unwrap_err();
        assert_eq!(
            err.to_string(),
            "precondition failed: gcd((p^d-1)/omega, p^u*omega-1) = gcd(9, 6) = 3 must be 1"
        );
    }
}
