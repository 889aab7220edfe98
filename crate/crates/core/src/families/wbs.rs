//! The Witt–Bose–Shrikhande space W(q), `q = 2^a`.
//!
//! Points are the dihedral subgroups of order `2(q+1)` of SL_2(q), indexed here by
//! their cyclic subgroups of order `q+1`. Blocks are the involutions; an involution
//! lies on a point when it inverts the cyclic subgroup, which is when it belongs to
//! the dihedral normalizer.

use std::collections::HashMap;

use crate::algebra::FiniteField;
use crate::design::IncidenceDesign;
use crate::permgroup::{PermGroup, Permutation};

use super::{finish, precondition, FamilyError};

type Mat = [u32; 4];

struct Sl2 {
    f: FiniteField,
}

impl Sl2 {
    fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        let f = &self.f;
        [
            f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
            f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
            f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
            f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
        ]
    }

    /// Inverse of a determinant-one matrix in characteristic 2.
    fn inv(&self, x: &Mat) -> Mat {
        [x[3], x[1], x[2], x[0]]
    }

    fn pow(&self, x: &Mat, mut e: u64) -> Mat {
        let mut acc = IDENTITY;
        let mut base = *x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn elements(&self) -> Vec<Mat> {
        let f = &self.f;
        let mut out = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    if a != 0 {
                        let d = f.div(f.add(1, f.mul(b, c)), a).expect("a is nonzero");
                        out.push([a, b, c, d]);
                    } else if f.mul(b, c) == 1 {
                        for d in f.elements() {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }
}

const IDENTITY: Mat = [1, 0, 0, 1];

fn key(m: &Mat) -> u32 {
    (m[0] << 18) | (m[1] << 12) | (m[2] << 6) | m[3]
}

pub fn build_wbs(q: u32) -> Result<IncidenceDesign, FamilyError> {
    if !(q.is_power_of_two() && (8..=64).contains(&q)) {
        return Err(precondition(format!("q = {q} must be 2^a with 3 <= a <= 6")));
    }
    let a = q.trailing_zeros();
    let g = Sl2 {
        f: FiniteField::new(2, a)?,
    };
    let order = q as u64 + 1;
    let primes = crate::algebra::arith::prime_factors(order);
    let elements = g.elements();
    // Each non-identity element of odd order dividing q+1 lies in exactly one cyclic subgroup of order q+1.
    let mut point_of: HashMap<u32, u32> = HashMap::new();
    let mut generators: Vec<Mat> = Vec::new();
    for x in &elements {
        if *x == IDENTITY || point_of.contains_key(&key(x)) {
            continue;
        }
        if g.pow(x, order) != IDENTITY || primes.iter().any(|&l| g.pow(x, order / l) == IDENTITY) {
            continue;
        }
        let idx = generators.len() as u32;
        let mut y = *x;
        while y != IDENTITY {
            point_of.insert(key(&y), idx);
            y = g.mul(&y, x);
        }
        generators.push(*x);
    }
    let involutions: Vec<Mat> = elements
        .iter()
        .filter(|x| **x != IDENTITY && g.mul(x, x) == IDENTITY)
        .copied()
        .collect();
    let blocks: Vec<Vec<u32>> = involutions
        .iter()
        .map(|t| {
            generators
                .iter()
                .enumerate()
                .filter(|(_, c)| g.mul(&g.mul(t, c), t) == g.inv(c))
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    let omega = g.f.primitive();
    let conjugators: [Mat; 3] = [
        [1, 1, 0, 1],
        [omega, 0, 0, g.f.inv(omega)?],
        [0, 1, 1, 0],
    ];
    let perms = conjugators
        .iter()
        .map(|x| {
            let xi = g.inv(x);
            Permutation::new(
                generators
                    .iter()
                    .map(|c| point_of[&key(&g.mul(&g.mul(x, c), &xi))])
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let v = generators.len();
    let group = PermGroup::new(v, perms)?;
    let design = IncidenceDesign::new(v, blocks)?.with_group(group)?;
    let q = q as u64;
    finish(
        design,
        "wbs",
        &format!("q={q}"),
        Some(&g.f),
        (q * (q - 1) / 2, q * q - 1, q + 1, q / 2, 1),
    )
}
