//! Finite geometry over GF(q): projective spaces, subspaces and spreads,
//! the Hermitian unital and the Suzuki–Tits ovoid.
//!
//! A vector `(x0, .., x(n-1))` over GF(q) is encoded as the integer
//! `x0 + x1*q + .. + x(n-1)*q^(n-1)` of its element codes. Over a prime-power
//! field this coincides with the base-`p` encoding of the same vector read over
//! GF(p), so affine point sets can be handled either way.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{arith, AlgebraError, FiniteField};
use crate::permgroup::{PermError, Permutation};

/// Cap on `q^n` for enumerated vector spaces.
pub const MAX_VECTORS: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("dimension {n} is below the minimum {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("vector space of size {0} exceeds the enumeration cap")]
    TooLarge(u64),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("a line needs two distinct points")]
    EqualPoints,
    #[error("spread dimension {t} does not divide {d}")]
    SpreadDivisibility { d: u32, t: u32 },
    #[error("q = {0} is not an odd power of 2 with 8 <= q <= 32")]
    SuzukiOrder(u32),
    #[error("vector has {found} coordinates, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("the map does not preserve the point set")]
    NotInvariant,
}

pub fn encode(q: u32, v: &[u32]) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub fn decode(q: u32, n: usize, mut code: u64) -> Vec<u32> {
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push((code % q as u64) as u32);
        code /= q as u64;
    }
    v
}

pub fn vec_add(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_scale(f: &FiniteField, c: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// Scales `v` so its first nonzero coordinate is 1.
pub fn normalize(f: &FiniteField, v: &[u32]) -> Result<Vec<u32>, GeometryError> {
    let lead = *v.iter().find(|&&x| x != 0).ok_or(GeometryError::ZeroVector)?;
    let inv = f.inv(lead)?;
    Ok(vec_scale(f, inv, v))
}

/// Row-reduced echelon form; returns the nonzero rows.
pub fn row_reduce(f: &FiniteField, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][col]).expect("pivot is nonzero");
        m[rank] = vec_scale(f, inv, &m[rank]);
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let c = f.neg(m[r][col]);
                let scaled = vec_scale(f, c, &m[rank]);
                m[r] = vec_add(f, &m[r], &scaled);
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

pub fn rank(f: &FiniteField, rows: &[Vec<u32>]) -> usize {
    row_reduce(f, rows).len()
}

/// A semilinear map `x -> (x M)^(p^frob)` on row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearMap {
    pub matrix: Vec<Vec<u32>>,
    pub frob: u32,
}

impl SemilinearMap {
    pub fn linear(matrix: Vec<Vec<u32>>) -> Self {
        SemilinearMap { matrix, frob: 0 }
    }

    pub fn frobenius(f: &FiniteField, n: usize, e: u32) -> Self {
        let _ = f;
        SemilinearMap {
            matrix: identity_matrix(n),
            frob: e,
        }
    }

    pub fn apply(&self, f: &FiniteField, x: &[u32]) -> Vec<u32> {
        let n = self.matrix.len();
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(xi, self.matrix[i][j]));
            }
        }
        if self.frob != 0 {
            for o in out.iter_mut() {
                *o = f.frobenius(*o, self.frob).expect("exponent checked by caller");
            }
        }
        out
    }
}

pub fn identity_matrix(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

/// The elementary matrix `I + c E_(i,j)`.
pub fn elementary(n: usize, i: usize, j: usize, c: u32) -> Vec<Vec<u32>> {
    let mut m = identity_matrix(n);
    m[i][j] = c;
    m
}

/// Generators of SL_n(q): elementary matrices between adjacent coordinates with
/// entries running over a GF(p)-basis of GF(q).
pub fn sl_generators(f: &FiniteField, n: usize) -> Vec<SemilinearMap> {
    let mut gens = Vec::new();
    for e in 0..f.d() as u64 {
        let c = f.exp(e);
        for i in 0..n.saturating_sub(1) {
            gens.push(SemilinearMap::linear(elementary(n, i, i + 1, c)));
            gens.push(SemilinearMap::linear(elementary(n, i + 1, i, c)));
        }
    }
    gens
}

/// Generators of ΓL_n(q): [`sl_generators`], `diag(ω, 1, .., 1)` and the Frobenius map.
pub fn gammal_generators(f: &FiniteField, n: usize) -> Vec<SemilinearMap> {
    let mut gens = sl_generators(f, n);
    let mut d = identity_matrix(n);
    d[0][0] = f.primitive();
    gens.push(SemilinearMap::linear(d));
    if f.d() > 1 {
        gens.push(SemilinearMap::frobenius(f, n, 1));
    }
    gens
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<u32>,
}

impl ProjectivePoint {
    pub fn new(f: &FiniteField, v: &[u32]) -> Result<Self, GeometryError> {
        Ok(ProjectivePoint {
            coords: normalize(f, v)?,
        })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

/// The points of PG_(n-1)(q), sorted by encoding.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    field: FiniteField,
    n: usize,
    points: Vec<ProjectivePoint>,
    lookup: HashMap<u64, u32>,
}

impl ProjectiveSpace {
    pub fn new(n: usize, field: &FiniteField) -> Result<Self, GeometryError> {
        if n < 2 {
            return Err(GeometryError::DimensionTooSmall { n, min: 2 });
        }
        let q = field.order();
        let size = (q as u64)
            .checked_pow(n as u32)
            .filter(|&s| s <= MAX_VECTORS)
            .ok_or(GeometryError::TooLarge(u64::MAX))?;
        let mut points = Vec::new();
        for code in 1..size {
            let v = decode(q, n, code);
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                points.push(ProjectivePoint { coords: v });
            }
        }
        let lookup = points
            .iter()
            .enumerate()
            .map(|(i, p)| (encode(q, &p.coords), i as u32))
            .collect();
        Ok(ProjectiveSpace {
            field: field.clone(),
            n,
            points,
            lookup,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, v: &[u32]) -> Result<u32, GeometryError> {
        if v.len() != self.n {
            return Err(GeometryError::Length {
                expected: self.n,
                found: v.len(),
            });
        }
        let norm = normalize(&self.field, v)?;
        Ok(self.lookup[&encode(self.field.order(), &norm)])
    }

    /// Hyperplanes `{x : a.x = 0}`, listed in the order of their dual points `a`.
    pub fn hyperplanes(&self) -> Result<Vec<Vec<u32>>, GeometryError> {
        if self.n < 3 {
            return Err(GeometryError::DimensionTooSmall { n: self.n, min: 3 });
        }
        let f = &self.field;
        Ok(self
            .points
            .iter()
            .map(|a| {
                self.points
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| dot(f, a.coords(), x.coords()) == 0)
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect())
    }

    /// The `q+1` points on the line through two distinct points, sorted.
    pub fn line_through(&self, a: u32, b: u32) -> Result<Vec<u32>, GeometryError> {
        if a == b {
            return Err(GeometryError::EqualPoints);
        }
        let f = &self.field;
        let (pa, pb) = (self.points[a as usize].coords(), self.points[b as usize].coords());
        let mut line = vec![a];
        for c in f.elements() {
            line.push(self.index_of(&vec_add(f, &vec_scale(f, c, pa), pb))?);
        }
        line.sort_unstable();
        line.dedup();
        Ok(line)
    }

    /// The permutation of the points induced by a semilinear map.
    pub fn permutation(&self, map: &SemilinearMap) -> Result<Permutation, GeometryError> {
        let images = self
            .points
            .iter()
            .map(|p| self.index_of(&map.apply(&self.field, p.coords())))
            .collect::<Result<Vec<u32>, _>>()?;
        Ok(Permutation::new(images)?)
    }
}

pub fn dot(f: &FiniteField, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// A subspace of GF(q)^n held by its row-reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FiniteField,
    n: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn span(field: &FiniteField, n: usize, vectors: &[Vec<u32>]) -> Result<Self, GeometryError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(GeometryError::Length {
                expected: n,
                found: v.len(),
            });
        }
        Ok(Subspace {
            field: field.clone(),
            n,
            basis: row_reduce(field, vectors),
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn ambient_dimension(&self) -> usize {
        self.n
    }

    /// Encodings of all `q^rank` vectors, ascending.
    pub fn elements(&self) -> Vec<u64> {
        let f = &self.field;
        let q = f.order();
        let mut out = Vec::with_capacity((q as usize).pow(self.rank() as u32));
        for code in 0..(q as u64).pow(self.rank() as u32) {
            let coeffs = decode(q, self.rank(), code);
            let mut v = vec![0u32; self.n];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                v = vec_add(f, &v, &vec_scale(f, *c, row));
            }
            out.push(encode(q, &v));
        }
        out.sort_unstable();
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&self.field, &rows) == self.rank()
    }

    /// The `q^(n - rank)` additive cosets of the subspace, each sorted, listed by smallest member.
    pub fn affine_cosets(&self) -> Result<Vec<Vec<u64>>, GeometryError> {
        let q = self.field.order();
        let total = (q as u64)
            .checked_pow(self.n as u32)
            .filter(|&s| s <= MAX_VECTORS)
            .ok_or(GeometryError::TooLarge(u64::MAX))?;
        let members: Vec<Vec<u32>> = self
            .elements()
            .into_iter()
            .map(|c| decode(q, self.n, c))
            .collect();
        let mut assigned = vec![false; total as usize];
        let mut cosets = Vec::new();
        for start in 0..total {
            if assigned[start as usize] {
                continue;
            }
            let s = decode(q, self.n, start);
            let mut coset: Vec<u64> = members
                .iter()
                .map(|w| encode(q, &vec_add(&self.field, &s, w)))
                .collect();
            coset.sort_unstable();
            for &c in &coset {
                assigned[c as usize] = true;
            }
            cosets.push(coset);
        }
        Ok(cosets)
    }
}

/// A partition of the nonzero vectors of GF(p)^d into subspaces of equal dimension.
#[derive(Debug, Clone)]
pub struct Spread {
    pub p: u32,
    pub d: u32,
    pub t: u32,
    pub components: Vec<Subspace>,
}

impl Spread {
    /// Checks that the components meet pairwise in zero and cover every nonzero vector once.
    pub fn is_partition(&self) -> bool {
        let total = (self.p as u64).pow(self.d);
        let mut hits = vec![0u32; total as usize];
        for c in &self.components {
            if c.rank() != self.t as usize {
                return false;
            }
            for x in c.elements() {
                hits[x as usize] += 1;
            }
        }
        hits[0] as usize == self.components.len() && hits[1..].iter().all(|&h| h == 1)
    }
}

/// The Desarguesian spread: the GF(p^t)-multiples of each nonzero element of GF(p^d),
/// read as `t`-dimensional GF(p)-subspaces of GF(p)^d.
pub fn regular_spread(d: u32, t: u32, p: u32) -> Result<Spread, GeometryError> {
    if t == 0 || !d.is_multiple_of(t) {
        return Err(GeometryError::SpreadDivisibility { d, t });
    }
    let big = FiniteField::new(p, d)?;
    let prime = FiniteField::new(p, 1)?;
    let sub: Vec<u32> = big.subfield(t);
    let sub_basis: Vec<u32> = (0..t as u64)
        .map(|k| big.pow(big.exp((big.order() as u64 - 1) / (sub.len() as u64 - 1)), k))
        .collect();
    let mut seen = vec![false; big.order() as usize];
    let mut components = Vec::new();
    for x in 1..big.order() {
        if seen[x as usize] {
            continue;
        }
        for &s in &sub {
            seen[big.mul(s, x) as usize] = true;
        }
        let rows: Vec<Vec<u32>> = sub_basis
            .iter()
            .map(|&b| big.coeffs(big.mul(b, x)))
            .collect();
        components.push(Subspace::span(&prime, d as usize, &rows)?);
    }
    Ok(Spread {
        p,
        d,
        t,
        components,
    })
}

/// GF(q^2)^3 with the Hermitian form `x0 y2^q + x1 y1^q + x2 y0^q`.
#[derive(Debug, Clone)]
pub struct HermitianSpace {
    q: u32,
    space: ProjectiveSpace,
}

impl HermitianSpace {
    pub fn new(q: u32) -> Result<Self, GeometryError> {
        let (p, e) = arith::prime_power(q as u64).ok_or(AlgebraError::NotPrime(q))?;
        let field = FiniteField::new(p as u32, 2 * e)?;
        Ok(HermitianSpace {
            q,
            space: ProjectiveSpace::new(3, &field)?,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn space(&self) -> &ProjectiveSpace {
        &self.space
    }

    pub fn field(&self) -> &FiniteField {
        self.space.field()
    }

    pub fn conj(&self, a: u32) -> u32 {
        self.field().frobenius(a, self.field().d() / 2).expect("d/2 < d")
    }

    pub fn form(&self, x: &[u32], y: &[u32]) -> u32 {
        let f = self.field();
        let terms = [
            f.mul(x[0], self.conj(y[2])),
            f.mul(x[1], self.conj(y[1])),
            f.mul(x[2], self.conj(y[0])),
        ];
        terms.iter().fold(0, |acc, &t| f.add(acc, t))
    }

    /// Indices into the ambient plane of the `q^3 + 1` isotropic points, ascending.
    pub fn isotropic_points(&self) -> Vec<u32> {
        self.space
            .points()
            .iter()
            .enumerate()
            .filter(|(_, p)| self.form(p.coords(), p.coords()) == 0)
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Blocks of the unital as index sets into [`isotropic_points`](Self::isotropic_points):
    /// the secant lines, each meeting the unital in `q + 1` points.
    pub fn hermitian_blocks(&self) -> Vec<Vec<u32>> {
        let iso = self.isotropic_points();
        let f = self.field();
        let mut blocks: Vec<Vec<u32>> = self
            .space
            .points()
            .iter()
            .map(|a| {
                iso.iter()
                    .enumerate()
                    .filter(|(_, &x)| dot(f, a.coords(), self.space.points()[x as usize].coords()) == 0)
                    .map(|(i, _)| i as u32)
                    .collect::<Vec<u32>>()
            })
            .filter(|b| b.len() == self.q as usize + 1)
            .collect();
        blocks.sort();
        blocks
    }

    /// Semilinear maps generating PΓU_3(q) for the fixed form.
    pub fn unitary_generators(&self) -> Vec<SemilinearMap> {
        let f = self.field();
        let q = self.q as u64;
        let mu = f.primitive();
        let nu = f.pow(mu, q - 1);
        let mut gens = Vec::new();
        let mut torus = identity_matrix(3);
        torus[0][0] = mu;
        torus[2][2] = f.inv(self.conj(mu)).expect("nonzero");
        gens.push(SemilinearMap::linear(torus));
        let mut middle = identity_matrix(3);
        middle[1][1] = nu;
        gens.push(SemilinearMap::linear(middle));
        for alpha in [0, 1, mu] {
            let norm = f.mul(alpha, self.conj(alpha));
            // The first β with β + β^q + α α^q = 0 other than the identity case.
            let beta = f
                .elements()
                .find(|&b| (alpha, b) != (0, 0) && f.add(f.add(b, self.conj(b)), norm) == 0);
            if let Some(beta) = beta {
                let m = vec![
                    vec![1, alpha, beta],
                    vec![0, 1, f.neg(self.conj(alpha))],
                    vec![0, 0, 1],
                ];
                gens.push(SemilinearMap::linear(m));
            }
        }
        gens.push(SemilinearMap::linear(vec![
            vec![0, 0, 1],
            vec![0, 1, 0],
            vec![1, 0, 0],
        ]));
        gens.push(SemilinearMap::frobenius(f, 3, 1));
        gens
    }
}

/// The Suzuki–Tits ovoid in PG_3(q), `q = 2^(2a+1)`.
#[derive(Debug, Clone)]
pub struct SuzukiOvoid {
    field: FiniteField,
    points: Vec<ProjectivePoint>,
    lookup: HashMap<Vec<u32>, u32>,
    sigma_exp: u32,
}

impl SuzukiOvoid {
    pub fn new(q: u32) -> Result<Self, GeometryError> {
        let e = match q {
            8 => 3,
            32 => 5,
            _ => return Err(GeometryError::SuzukiOrder(q)),
        };
        let field = FiniteField::new(2, e)?;
        let a = (e - 1) / 2;
        let sigma_exp = a + 1;
        let sigma = |x: u32| field.frobenius(x, sigma_exp).expect("a+1 < 2a+1");
        let mut coords = vec![vec![0, 1, 0, 0]];
        for s in field.elements() {
            for t in field.elements() {
                let x1 = field.add(
                    field.add(field.mul(s, t), field.mul(sigma(s), field.mul(s, s))),
                    sigma(t),
                );
                coords.push(vec![1, x1, t, s]);
            }
        }
        let mut points: Vec<ProjectivePoint> = coords
            .iter()
            .map(|c| ProjectivePoint::new(&field, c))
            .collect::<Result<_, _>>()?;
        points.sort_by_key(|p| encode(q, p.coords()));
        let lookup = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.coords.clone(), i as u32))
            .collect();
        Ok(SuzukiOvoid {
            field,
            points,
            lookup,
            sigma_exp,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn index_of(&self, v: &[u32]) -> Option<u32> {
        let norm = normalize(&self.field, v).ok()?;
        self.lookup.get(&norm).copied()
    }

    pub fn sigma(&self, x: u32) -> u32 {
        self.field.frobenius(x, self.sigma_exp).expect("in range")
    }

    /// The translation fixing (0:1:0:0) with parameters `(a, b)`.
    pub fn translation(&self, a: u32, b: u32) -> SemilinearMap {
        let f = &self.field;
        let sa = self.sigma(a);
        let m10 = f.add(f.add(f.mul(sa, f.mul(a, a)), f.mul(a, b)), self.sigma(b));
        let m13 = f.add(b, f.mul(sa, a));
        // Columns give the new coordinates; rows are indexed by the old ones.
        let m = vec![
            vec![1, m10, b, a],
            vec![0, 1, 0, 0],
            vec![0, a, 1, 0],
            vec![0, m13, sa, 1],
        ];
        SemilinearMap::linear(m)
    }

    pub fn torus(&self, k: u32) -> SemilinearMap {
        let f = &self.field;
        let sk = self.sigma(k);
        let mut m = identity_matrix(4);
        m[1][1] = f.mul(sk, f.mul(k, k));
        m[2][2] = f.mul(sk, k);
        m[3][3] = k;
        SemilinearMap::linear(m)
    }

    pub fn generators(&self) -> Vec<SemilinearMap> {
        let swap = vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ];
        vec![
            self.torus(self.field.primitive()),
            self.translation(1, 0),
            self.translation(0, 1),
            SemilinearMap::linear(swap),
        ]
    }

    pub fn permutation(&self, map: &SemilinearMap) -> Result<Permutation, GeometryError> {
        let images = self
            .points
            .iter()
            .map(|p| {
                self.index_of(&map.apply(&self.field, p.coords()))
                    .ok_or(GeometryError::NotInvariant)
            })
            .collect::<Result<Vec<u32>, _>>()?;
        Ok(Permutation::new(images)?)
    }

    /// No three points collinear, by the rank of every 3x4 coordinate matrix.
    pub fn no_three_collinear(&self) -> bool {
        let n = self.points.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let rows = vec![
                        self.points[i].coords.clone(),
                        self.points[j].coords.clone(),
                        self.points[k].coords.clone(),
                    ];
                    if rank(&self.field, &rows) < 3 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::PermGroup;

    fn gf(p: u32, d: u32) -> FiniteField {
        FiniteField::new(p, d).unwrap()
    }

    #[test]
    fn projective_point_counts() {
        assert_eq!(ProjectiveSpace::new(3, &gf(2, 1)).unwrap().len(), 7);
        assert_eq!(ProjectiveSpace::new(2, &gf(5, 1)).unwrap().len(), 6);
        assert_eq!(ProjectiveSpace::new(4, &gf(2, 1)).unwrap().len(), 15);
        assert!(ProjectiveSpace::new(1, &gf(2, 1)).is_err());
    }

    #[test]
    fn points_are_sorted_and_normalized() {
        let f = gf(3, 1);
        let pg = ProjectiveSpace::new(3, &f).unwrap();
        let codes: Vec<u64> = pg.points().iter().map(|p| encode(3, p.coords())).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        for p in pg.points() {
            assert_eq!(p.coords().iter().find(|&&x| x != 0), Some(&1));
        }
    }

    #[test]
    fn hyperplane_counts() {
        for (n, p, d, size, pair) in [(3, 2, 1, 3, 1), (4, 2, 1, 7, 3), (3, 3, 1, 4, 1)] {
            let pg = ProjectiveSpace::new(n, &gf(p, d)).unwrap();
            let hs = pg.hyperplanes().unwrap();
            assert_eq!(hs.len(), pg.len());
            assert!(hs.iter().all(|h| h.len() == size));
            let v = pg.len() as u32;
            for a in 0..v {
                for b in a + 1..v {
                    let c = hs.iter().filter(|h| h.contains(&a) && h.contains(&b)).count();
                    assert_eq!(c, pair);
                }
            }
        }
    }

    #[test]
    fn line_sizes() {
        let cases = [(3, 2, 1, 3), (3, 2, 2, 5), (4, 3, 1, 4)];
        for (n, p, d, size) in cases {
            let pg = ProjectiveSpace::new(n, &gf(p, d)).unwrap();
            assert_eq!(pg.line_through(0, 1).unwrap().len(), size);
        }
        let pg = ProjectiveSpace::new(3, &gf(2, 1)).unwrap();
        assert_eq!(pg.line_through(2, 2), Err(GeometryError::EqualPoints));
    }

    #[test]
    fn gammal_acts_on_fano() {
        let f = gf(2, 1);
        let pg = ProjectiveSpace::new(3, &f).unwrap();
        let perms: Vec<_> = gammal_generators(&f, 3)
            .iter()
            .map(|m| pg.permutation(m).unwrap())
            .collect();
        let g = PermGroup::new(7, perms).unwrap();
        assert_eq!(g.order(), 168);
        assert!(g.is_two_transitive());
    }

    #[test]
    fn fano_lines_induce_psl32() {
        let f = gf(2, 1);
        let pg = ProjectiveSpace::new(3, &f).unwrap();
        let perms: Vec<_> = sl_generators(&f, 3)
            .iter()
            .map(|m| pg.permutation(m).unwrap())
            .collect();
        let g = PermGroup::new(7, perms).unwrap();
        let lines = pg.hyperplanes().unwrap();
        let on_lines = g
            .induced_action(&lines, crate::permgroup::ActionKind::Sets)
            .unwrap();
        assert_eq!(on_lines.degree(), 7);
        assert!(on_lines.is_transitive());
        assert_eq!(on_lines.order(), 168);
    }

    #[test]
    fn isotropic_point_counts() {
        assert_eq!(HermitianSpace::new(2).unwrap().isotropic_points().len(), 9);
        assert_eq!(HermitianSpace::new(3).unwrap().isotropic_points().len(), 28);
        assert_eq!(HermitianSpace::new(4).unwrap().isotropic_points().len(), 65);
    }

    #[test]
    fn hermitian_blocks_form_linear_space() {
        for (q, v, b) in [(2u32, 9u32, 12usize), (3, 28, 63), (4, 65, 208)] {
            let h = HermitianSpace::new(q).unwrap();
            let blocks = h.hermitian_blocks();
            assert_eq!(blocks.len(), b);
            let mut cover = vec![0u32; (v * v) as usize];
            for blk in &blocks {
                assert_eq!(blk.len(), q as usize + 1);
                for (i, &x) in blk.iter().enumerate() {
                    for &y in &blk[i + 1..] {
                        cover[(x * v + y) as usize] += 1;
                    }
                }
            }
            for x in 0..v {
                for y in x + 1..v {
                    assert_eq!(cover[(x * v + y) as usize], 1);
                }
            }
        }
    }

    #[test]
    fn unitary_generators_preserve_the_form() {
        for q in [2, 3, 4] {
            let h = HermitianSpace::new(q).unwrap();
            let f = h.field().clone();
            for g in h.unitary_generators() {
                for x in h.space().points() {
                    let gx = g.apply(&f, x.coords());
                    let fx = h.form(x.coords(), x.coords());
                    let fgx = h.form(&gx, &gx);
                    assert_eq!(fx == 0, fgx == 0);
                }
            }
        }
    }

    #[test]
    fn suzuki_ovoid_q8() {
        let ov = SuzukiOvoid::new(8).unwrap();
        assert_eq!(ov.points().len(), 65);
        assert!(ov.no_three_collinear());
        let perms: Vec<_> = ov
            .generators()
            .iter()
            .map(|g| ov.permutation(g).unwrap())
            .collect();
        let g = PermGroup::new(65, perms).unwrap();
        assert_eq!(g.order(), 29_120);
        assert!(g.is_two_transitive());
    }

    #[test]
    fn suzuki_ovoid_q32_size() {
        let ov = SuzukiOvoid::new(32).unwrap();
        assert_eq!(ov.points().len(), 1025);
        assert_eq!(SuzukiOvoid::new(16).unwrap_err(), GeometryError::SuzukiOrder(16));
        assert_eq!(SuzukiOvoid::new(2).unwrap_err(), GeometryError::SuzukiOrder(2));
    }

    #[test]
    fn regular_spreads_partition() {
        for (d, t, p, count) in [(4, 2, 3, 10), (6, 3, 2, 9), (2, 1, 5, 6), (6, 2, 2, 21)] {
            let s = regular_spread(d, t, p).unwrap();
            assert_eq!(s.components.len(), count);
            assert!(s.is_partition());
        }
        assert!(matches!(
            regular_spread(6, 4, 2),
            Err(GeometryError::SpreadDivisibility { .. })
        ));
    }

    #[test]
    fn coset_partitions() {
        let f2 = gf(2, 1);
        let w = Subspace::span(&f2, 6, &[vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0], vec![0, 0, 1, 1, 0, 0]]).unwrap();
        let cosets = w.affine_cosets().unwrap();
        assert_eq!(cosets.len(), 8);
        assert!(cosets.iter().all(|c| c.len() == 8));
        let f3 = gf(3, 1);
        let w = Subspace::span(&f3, 4, &[vec![1, 2, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(w.affine_cosets().unwrap().len(), 9);
        let zero = Subspace::span(&f3, 2, &[]).unwrap();
        let singles = zero.affine_cosets().unwrap();
        assert_eq!(singles.len(), 9);
        assert!(singles.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn subspace_membership() {
        let f = gf(2, 2);
        let w = Subspace::span(&f, 3, &[vec![1, 2, 0], vec![2, 3, 0]]).unwrap();
        assert_eq!(w.rank(), 1);
        assert!(w.contains(&[3, 1, 0]));
        assert!(!w.contains(&[0, 0, 1]));
        assert_eq!(w.elements().len(), 4);
    }
}
