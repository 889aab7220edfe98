//! Constructions compared against independently built designs.

use std::collections::BTreeSet;

use ftdesign::design::{compute_params, invariant_fingerprint, IncidenceDesign};
use ftdesign::families::{build_hermitian_unital, build_point_hyperplane, build_wbs};
use ftdesign::semilinear::{enumerate_semilinear, paley_design, search_flag_transitive, PaleyParams};

fn hash(d: &IncidenceDesign) -> String {
    invariant_fingerprint(d).unwrap().hash()
}

/// Translates of a difference set in Z_v.
fn develop(v: u32, base: &[u32]) -> IncidenceDesign {
    let blocks = (0..v).map(|t| base.iter().map(|&x| (x + t) % v).collect()).collect();
    IncidenceDesign::new(v as usize, blocks).unwrap()
}

/// Lines of AG(2, 3) on points `3x + y`.
fn ag2_3_lines() -> IncidenceDesign {
    let mut lines = BTreeSet::new();
    for (dx, dy) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
        for x in 0..3 {
            for y in 0..3 {
                let mut l: Vec<u32> = (0..3).map(|t| 3 * ((x + t * dx) % 3) + (y + t * dy) % 3).collect();
                l.sort();
                lines.insert(l);
            }
        }
    }
    IncidenceDesign::new(9, lines.into_iter().collect()).unwrap()
}

/// Affine planes of GF(2)^3: cosets of the seven 2-dimensional subspaces.
fn ag3_2_planes() -> IncidenceDesign {
    let mut planes = BTreeSet::new();
    for normal in 1..8u32 {
        for side in 0..2 {
            let p: Vec<u32> = (0..8).filter(|x| (x & normal).count_ones() % 2 == side).collect();
            planes.insert(p);
        }
    }
    IncidenceDesign::new(8, planes.into_iter().collect()).unwrap()
}

/// Hyperplanes of PG(3, 2) as the 15 nonzero vectors of GF(2)^4.
fn pg3_2_hyperplanes() -> IncidenceDesign {
    let blocks = (1..16u32)
        .map(|a| (1..16u32).filter(|x| (x & a).count_ones() % 2 == 0).map(|x| x - 1).collect())
        .collect();
    IncidenceDesign::new(15, blocks).unwrap()
}

#[test]
fn fano_plane_matches_the_cyclic_difference_set() {
    let fano = build_point_hyperplane(3, 2).unwrap();
    assert_eq!(hash(&fano), hash(&develop(7, &[1, 2, 4])));
}

#[test]
fn pg3_2_matches_bit_vector_hyperplanes() {
    let d = build_point_hyperplane(4, 2).unwrap();
    assert_eq!(hash(&d), hash(&pg3_2_hyperplanes()));
    assert_eq!(compute_params(&d).unwrap().tuple(), (15, 15, 7, 7, 3));
}

#[test]
fn smallest_unital_is_the_affine_plane_of_order_three() {
    let unital = build_hermitian_unital(2).unwrap();
    assert_eq!(hash(&unital), hash(&ag2_3_lines()));
}

#[test]
fn paley_biplane_matches_quadratic_residues() {
    let residues: BTreeSet<u32> = (1..11u32).map(|x| x * x % 11).collect();
    let oracle = develop(11, &residues.into_iter().collect::<Vec<_>>());
    let pp = PaleyParams { p: 11, d: 1, i: 2, theta: 1, y: 1 };
    let paley = paley_design(&pp).unwrap().unwrap();
    assert_eq!(hash(&paley), hash(&oracle));
    let hits = search_flag_transitive(11, 1, 12).unwrap();
    assert!(hits.iter().any(|h| h.fingerprint == hash(&oracle)));
}

#[test]
fn search_over_gf8_finds_the_affine_planes() {
    let hits = search_flag_transitive(2, 3, 8).unwrap();
    let planes = hash(&ag3_2_planes());
    assert!(hits.iter().any(|h| h.fingerprint == planes));
    for h in &hits {
        let p = compute_params(&h.design).unwrap();
        assert!(p.is_2design && p.coprime && h.primitive);
        assert!(p.k > 2 && p.k < p.v - 1);
    }
}

#[test]
fn search_is_deterministic() {
    let lines = |p, d, k| -> Vec<String> {
        search_flag_transitive(p, d, k).unwrap().iter().map(|h| h.report_line()).collect()
    };
    assert_eq!(lines(3, 2, 8), lines(3, 2, 8));
    assert_eq!(lines(2, 4, 12), lines(2, 4, 12));
}

#[test]
fn paley_designs_are_found_by_the_search() {
    for (p, d, i) in [(7u32, 1u32, 2u64), (11, 1, 2), (19, 1, 2)] {
        let pp = PaleyParams { p, d, i, theta: 1, y: 1 };
        let Some(design) = paley_design(&pp).unwrap() else { continue };
        let params = compute_params(&design).unwrap();
        assert!(params.symmetric);
        if !params.coprime {
            continue;
        }
        let hits = search_flag_transitive(p, d, params.k as usize).unwrap();
        assert!(hits.iter().any(|h| h.fingerprint == hash(&design)), "p={p}");
    }
}

#[test]
fn semilinear_groups_have_the_stated_order() {
    for (p, d) in [(2, 3), (2, 4), (3, 2), (5, 2), (7, 1), (13, 1), (2, 6)] {
        for s in enumerate_semilinear(p, d).unwrap() {
            assert_eq!(s.group().unwrap().order(), s.order(), "{p}^{d} {}", s.label());
        }
    }
}

/// Quadruples of lines meeting pairwise in six distinct points.
fn onan_configurations(d: &IncidenceDesign) -> usize {
    let blocks = d.blocks();
    let meet = |a: usize, b: usize| -> Option<u32> {
        let common: Vec<u32> = blocks[a].iter().filter(|x| blocks[b].contains(x)).copied().collect();
        (common.len() == 1).then(|| common[0])
    };
    let b = blocks.len();
    let mut count = 0;
    for l0 in 0..b {
        for l1 in l0 + 1..b {
            let Some(p01) = meet(l0, l1) else { continue };
            for l2 in l1 + 1..b {
                let (Some(p02), Some(p12)) = (meet(l0, l2), meet(l1, l2)) else { continue };
                for l3 in l2 + 1..b {
                    let (Some(p03), Some(p13), Some(p23)) = (meet(l0, l3), meet(l1, l3), meet(l2, l3)) else {
                        continue;
                    };
                    let points: BTreeSet<u32> = [p01, p02, p03, p12, p13, p23].into();
                    count += usize::from(points.len() == 6);
                }
            }
        }
    }
    count
}

/// Both are 2-(28,4,1) unitals. Hermitian unitals contain no O'Nan configuration and
/// W(8) does, so the two are not isomorphic, although the fingerprint (built from
/// intersection sizes, all 0 or 1 in a linear space) does not separate them.
#[test]
fn wbs_8_and_hermitian_unital_3_are_distinct_unitals() {
    let w = build_wbs(8).unwrap();
    let h = build_hermitian_unital(3).unwrap();
    assert_eq!(compute_params(&w).unwrap().tuple(), compute_params(&h).unwrap().tuple());
    assert_eq!(w.group().unwrap().order(), 504);
    assert_eq!(h.group().unwrap().order(), 12096);
    assert_eq!(onan_configurations(&h), 0);
    assert!(onan_configurations(&w) > 0);
}
