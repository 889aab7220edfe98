use proptest::prelude::*;

use ftdesign::algebra::FiniteField;
use ftdesign::design::{compute_params, invariant_fingerprint, orbit_design, IncidenceDesign};
use ftdesign::families::params_from_vkl;
use ftdesign::permgroup::{PermGroup, Permutation};

const FIELDS: [(u32, u32); 8] = [(2, 1), (2, 3), (2, 4), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3)];

fn field_and_elements() -> impl Strategy<Value = (FiniteField, u32, u32, u32)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let (p, d) = FIELDS[i];
        let f = FiniteField::new(p, d).unwrap();
        let q = f.order();
        (Just(f), 0..q, 0..q, 0..q)
    })
}

/// A permutation of `0..n` from a shuffle key.
fn perm_from_keys(keys: &[u32]) -> Permutation {
    let mut idx: Vec<u32> = (0..keys.len() as u32).collect();
    idx.sort_by_key(|&i| (keys[i as usize], i));
    Permutation::new(idx).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, a, b, c) in field_and_elements()) {
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.exp(f.log(a).unwrap() as u64), a);
        }
        let p = f.p() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
    }

    #[test]
    fn orbit_stabilizer(n in 4usize..10, keys in prop::collection::vec(prop::collection::vec(0u32..100, 10), 1..3)) {
        let gens: Vec<Permutation> = keys.iter().map(|k| perm_from_keys(&k[..n])).collect();
        let g = PermGroup::new(n, gens).unwrap();
        for pt in 0..n as u32 {
            let orbit = g.orbit(pt).unwrap().len() as u128;
            let stab = g.point_stabilizer(pt).unwrap().order();
            prop_assert_eq!(orbit * stab, g.order());
        }
    }

    #[test]
    fn normalization_ignores_input_order(keys in prop::collection::vec(0u32..1000, 7)) {
        let blocks: Vec<Vec<u32>> = (0..7u32).map(|i| vec![(i + 3) % 7, i, (i + 1) % 7]).collect();
        let relabel = perm_from_keys(&keys);
        let mut shuffled: Vec<Vec<u32>> = blocks.iter().map(|b| b.iter().rev().copied().collect()).collect();
        shuffled.sort_by_key(|b| keys[b[0] as usize]);
        let a = IncidenceDesign::new(7, blocks.clone()).unwrap();
        let b = IncidenceDesign::new(7, shuffled).unwrap();
        prop_assert_eq!(a.blocks(), b.blocks());
        for blk in a.blocks() {
            prop_assert!(blk.windows(2).all(|w| w[0] < w[1]));
        }
        let moved = IncidenceDesign::new(7, blocks.iter().map(|x| relabel.apply_set(x)).collect()).unwrap();
        prop_assert_eq!(invariant_fingerprint(&a).unwrap(), invariant_fingerprint(&moved).unwrap());
    }

    #[test]
    fn orbit_designs_satisfy_counting(n in 5usize..9, keys in prop::collection::vec(0u32..100, 9), k in 2usize..4) {
        let cycle = Permutation::from_fn(n, |x| (x + 1) % n as u32).unwrap();
        let g = PermGroup::new(n, vec![cycle, perm_from_keys(&keys[..n])]).unwrap();
        let base: Vec<u32> = (0..k as u32).collect();
        let d = orbit_design(n, &g, &base).unwrap();
        let p = compute_params(&d).unwrap();
        let incidences: u64 = d.blocks().iter().map(|b| b.len() as u64).sum();
        prop_assert_eq!(incidences, p.b * p.k);
        if p.is_2design {
            prop_assert!(p.identities_hold());
            prop_assert_eq!(params_from_vkl(p.v, p.k, p.lambda), Some(p.tuple()));
        }
    }
}
