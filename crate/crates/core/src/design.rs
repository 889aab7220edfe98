//! Incidence designs and their verifiers.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::arith::gcd;
use crate::permgroup::{PermError, PermGroup};

/// Largest point count for exhaustive pair counting.
pub const MAX_PAIR_POINTS: usize = 4096;

/// Largest `b * k * r` for fingerprint computation.
pub const MAX_FINGERPRINT_WORK: u64 = 2_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("block {block:?} contains point {point} outside 0..{v}")]
    PointOutOfRange { block: Vec<u32>, point: u32, v: usize },
    #[error("block {0:?} has a repeated point")]
    RepeatedPoint(Vec<u32>),
    #[error("block {0:?} occurs more than once")]
    DuplicateBlock(Vec<u32>),
    #[error("the base block must be a nonempty proper subset of the points")]
    TrivialBlock,
    #[error("group has degree {group} but the design has {v} points")]
    DegreeMismatch { group: usize, v: usize },
    #[error("generator {0} does not map blocks to blocks")]
    GroupNotClosed(usize),
    #[error("the design has no automorphism group attached")]
    MissingGroup,
    #[error("{v} points exceeds the pair-counting cap of 4096")]
    TooManyPoints { v: usize },
    #[error("fingerprint work b*k*r = {0} exceeds the cap")]
    FingerprintTooLarge(u64),
    #[error("complement needs a 2-design with k < v - 1")]
    ComplementUndefined,
}

/// A simple incidence structure on `{0, .., v-1}` with an optional automorphism group.
#[derive(Clone, Debug)]
pub struct IncidenceDesign {
    v: usize,
    blocks: Vec<Vec<u32>>,
    group: Option<PermGroup>,
    meta: BTreeMap<String, String>,
}

impl PartialEq for IncidenceDesign {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.blocks == other.blocks && self.meta == other.meta
    }
}

impl IncidenceDesign {
    /// Canonicalizes the blocks (each sorted, list sorted) and rejects repeated blocks.
    pub fn new(v: usize, blocks: Vec<Vec<u32>>) -> Result<Self, DesignError> {
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            b.sort_unstable();
            if let Some(&p) = b.iter().find(|&&p| p as usize >= v) {
                return Err(DesignError::PointOutOfRange {
                    block: b.clone(),
                    point: p,
                    v,
                });
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(DesignError::RepeatedPoint(b.clone()));
            }
        }
        blocks.sort();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::DuplicateBlock(w[0].clone()));
        }
        Ok(IncidenceDesign {
            v,
            blocks,
            group: None,
            meta: BTreeMap::new(),
        })
    }

    /// Attaches a group after checking that it maps blocks to blocks.
    pub fn with_group(mut self, group: PermGroup) -> Result<Self, DesignError> {
        if group.degree() != self.v {
            return Err(DesignError::DegreeMismatch {
                group: group.degree(),
                v: self.v,
            });
        }
        let set: HashSet<&[u32]> = self.blocks.iter().map(Vec::as_slice).collect();
        for (i, g) in group.generators().iter().enumerate() {
            if self.blocks.iter().any(|b| !set.contains(g.apply_set(b).as_slice())) {
                return Err(DesignError::GroupNotClosed(i));
            }
        }
        self.group = Some(group);
        Ok(self)
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn group(&self) -> Option<&PermGroup> {
        self.group.as_ref()
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.get(key).map(String::as_str)
    }

    pub(crate) fn set_meta(&mut self, meta: BTreeMap<String, String>) {
        self.meta = meta;
    }
}

/// The block orbit of `base` under `group`.
pub fn orbit_design(v: usize, group: &PermGroup, base: &[u32]) -> Result<IncidenceDesign, DesignError> {
    if group.degree() != v {
        return Err(DesignError::DegreeMismatch {
            group: group.degree(),
            v,
        });
    }
    let mut set = base.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() || set.len() >= v {
        return Err(DesignError::TrivialBlock);
    }
    let blocks = group.orbit_set(&set)?;
    let design = IncidenceDesign::new(v, blocks)?;
    Ok(IncidenceDesign {
        group: Some(group.clone()),
        ..design
    })
}

/// Counts `(v, b, r, k, λ)` and whether they are uniform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
    pub uniform_k: bool,
    pub uniform_r: bool,
    pub uniform_lambda: bool,
    pub is_2design: bool,
    pub coprime: bool,
    pub symmetric: bool,
}

impl DesignParams {
    /// Parameters from a closed-form tuple.
    pub fn from_tuple(v: u64, b: u64, r: u64, k: u64, lambda: u64) -> Self {
        DesignParams {
            v,
            b,
            r,
            k,
            lambda,
            uniform_k: true,
            uniform_r: true,
            uniform_lambda: true,
            is_2design: true,
            coprime: gcd(r, lambda) == 1,
            symmetric: v == b,
        }
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64, u64) {
        (self.v, self.b, self.r, self.k, self.lambda)
    }

    /// `bk = vr` and `λ(v-1) = r(k-1)`.
    pub fn identities_hold(&self) -> bool {
        self.b * self.k == self.v * self.r
            && self.lambda * (self.v.saturating_sub(1)) == self.r * (self.k.saturating_sub(1))
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.v, self.b, self.r, self.k, self.lambda)
    }
}

/// Pair counts stored in a packed upper triangle.
fn pair_index(v: usize, x: usize, y: usize) -> usize {
    x * (2 * v - x - 1) / 2 + (y - x - 1)
}

pub fn compute_params(d: &IncidenceDesign) -> Result<DesignParams, DesignError> {
    let v = d.v;
    if v > MAX_PAIR_POINTS {
        return Err(DesignError::TooManyPoints { v });
    }
    let b = d.blocks.len();
    let k = d.blocks.first().map_or(0, Vec::len);
    let uniform_k = d.blocks.iter().all(|blk| blk.len() == k);
    let mut reps = vec![0u64; v];
    let mut pairs = vec![0u32; v * v.saturating_sub(1) / 2];
    for blk in &d.blocks {
        for (i, &x) in blk.iter().enumerate() {
            reps[x as usize] += 1;
            for &y in &blk[i + 1..] {
                pairs[pair_index(v, x as usize, y as usize)] += 1;
            }
        }
    }
    let r = reps.first().copied().unwrap_or(0);
    let uniform_r = reps.iter().all(|&x| x == r);
    let lambda = pairs.first().copied().unwrap_or(0) as u64;
    let uniform_lambda = pairs.iter().all(|&x| x as u64 == lambda);
    let is_2design = v >= 2 && b > 0 && uniform_k && uniform_r && uniform_lambda && k >= 2 && lambda >= 1;
    Ok(DesignParams {
        v: v as u64,
        b: b as u64,
        r,
        k: k as u64,
        lambda,
        uniform_k,
        uniform_r,
        uniform_lambda,
        is_2design,
        coprime: is_2design && gcd(r, lambda) == 1,
        symmetric: v == b,
    })
}

/// Transitivity of the attached group on points, blocks and flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitivityReport {
    pub point_transitive: bool,
    pub block_transitive: bool,
    pub flag_transitive: bool,
    pub flag_orbit: u64,
    pub flags: u64,
}

/// For each generator, the permutation it induces on block indices.
fn block_images(d: &IncidenceDesign, group: &PermGroup) -> Result<Vec<Vec<u32>>, DesignError> {
    let index: HashMap<&[u32], u32> = d
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i as u32))
        .collect();
    group
        .generators()
        .iter()
        .enumerate()
        .map(|(gi, g)| {
            d.blocks
                .iter()
                .map(|b| {
                    index
                        .get(g.apply_set(b).as_slice())
                        .copied()
                        .ok_or(DesignError::GroupNotClosed(gi))
                })
                .collect()
        })
        .collect()
}

pub fn transitivity(d: &IncidenceDesign) -> Result<TransitivityReport, DesignError> {
    let group = d.group.as_ref().ok_or(DesignError::MissingGroup)?;
    let images = block_images(d, group)?;
    let flags: u64 = d.blocks.iter().map(|b| b.len() as u64).sum();
    let point_transitive = group.is_transitive();
    let b = d.blocks.len();
    let block_transitive = if b == 0 {
        true
    } else {
        let mut seen = vec![false; b];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for img in &images {
                let y = img[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == b
    };
    let flag_orbit = match d.blocks.first().and_then(|b| b.first()) {
        None => 0,
        Some(&p0) => {
            let mut seen: HashSet<(u32, u32)> = HashSet::new();
            seen.insert((p0, 0));
            let mut stack = vec![(p0, 0u32)];
            while let Some((p, blk)) = stack.pop() {
                for (g, img) in group.generators().iter().zip(&images) {
                    let f = (g.apply(p), img[blk as usize]);
                    if seen.insert(f) {
                        stack.push(f);
                    }
                }
            }
            seen.len() as u64
        }
    };
    Ok(TransitivityReport {
        point_transitive,
        block_transitive,
        flag_transitive: flags > 0 && flag_orbit == flags,
        flag_orbit,
        flags,
    })
}

pub fn is_flag_transitive(d: &IncidenceDesign) -> Result<bool, DesignError> {
    Ok(transitivity(d)?.flag_transitive)
}

/// The design on the same points whose blocks are the complements of the blocks of `d`.
pub fn complement(d: &IncidenceDesign) -> Result<IncidenceDesign, DesignError> {
    let params = compute_params(d)?;
    if !params.is_2design || params.k + 1 >= params.v {
        return Err(DesignError::ComplementUndefined);
    }
    let blocks = d
        .blocks
        .iter()
        .map(|b| {
            let inside: HashSet<u32> = b.iter().copied().collect();
            (0..d.v as u32).filter(|x| !inside.contains(x)).collect()
        })
        .collect();
    let mut out = IncidenceDesign::new(d.v, blocks)?;
    out.meta = d.meta.clone();
    if let Some(g) = &d.group {
        out = out.with_group(g.clone())?;
    }
    Ok(out)
}

/// Relabeling-invariant summary of a design.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub params: (u64, u64, u64, u64, u64),
    /// `(m, count)`: unordered pairs of distinct blocks meeting in `m` points.
    pub intersections: Vec<(u64, u64)>,
    /// Per point, the intersection histogram over pairs of blocks through it; sorted.
    pub point_profiles: Vec<Vec<(u64, u64)>>,
}

impl Fingerprint {
    pub fn canonical_string(&self) -> String {
        let hist = |h: &[(u64, u64)]| {
            h.iter()
                .map(|(m, c)| format!("{m}:{c}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let (v, b, r, k, l) = self.params;
        let mut profiles: Vec<(String, usize)> = Vec::new();
        for p in &self.point_profiles {
            let s = hist(p);
            match profiles.last_mut() {
                Some((last, n)) if *last == s => *n += 1,
                _ => profiles.push((s, 1)),
            }
        }
        let profiles: Vec<String> = profiles.iter().map(|(s, n)| format!("{n}x[{s}]")).collect();
        format!(
            "v={v};b={b};r={r};k={k};lambda={l};meet=[{}];points=[{}]",
            hist(&self.intersections),
            profiles.join(";")
        )
    }

    /// First 16 hex digits of the SHA-256 of [`canonical_string`](Self::canonical_string).
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_string().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn invariant_fingerprint(d: &IncidenceDesign) -> Result<Fingerprint, DesignError> {
    let params = compute_params(d)?;
    let work = params.b * params.k.max(1) * params.r.max(1);
    if work > MAX_FINGERPRINT_WORK {
        return Err(DesignError::FingerprintTooLarge(work));
    }
    let b = d.blocks.len();
    let mut through: Vec<Vec<u32>> = vec![Vec::new(); d.v];
    for (i, blk) in d.blocks.iter().enumerate() {
        for &x in blk {
            through[x as usize].push(i as u32);
        }
    }
    let width = d.blocks.iter().map(Vec::len).max().unwrap_or(0) + 1;
    let mut meet = vec![0u64; width];
    let mut profiles = vec![0u64; d.v * width];
    let mut counts = vec![0usize; b];
    let mut touched: Vec<u32> = Vec::new();
    for (i, blk) in d.blocks.iter().enumerate() {
        for &x in blk {
            for &c in &through[x as usize] {
                if c as usize > i {
                    if counts[c as usize] == 0 {
                        touched.push(c);
                    }
                    counts[c as usize] += 1;
                }
            }
        }
        meet[0] += (b - 1 - i) as u64 - touched.len() as u64;
        for &c in &touched {
            meet[counts[c as usize]] += 1;
        }
        for &x in blk {
            let row = &mut profiles[x as usize * width..(x as usize + 1) * width];
            for &c in &through[x as usize] {
                if c as usize > i {
                    row[counts[c as usize]] += 1;
                }
            }
        }
        for &c in &touched {
            counts[c as usize] = 0;
        }
        touched.clear();
    }
    let sparse = |h: &[u64]| -> Vec<(u64, u64)> {
        h.iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(m, &n)| (m as u64, n))
            .collect()
    };
    let mut point_profiles: Vec<Vec<(u64, u64)>> = profiles.chunks(width.max(1)).take(d.v).map(sparse).collect();
    point_profiles.sort();
    let meet = sparse(&meet);
    Ok(Fingerprint {
        params: (params.v, params.b, params.r, params.k, params.lambda),
        intersections: meet,
        point_profiles,
    })
}

/// The predicates behind the two classical implications for coprime designs and
/// any violations of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DembowskiReport {
    pub is_2design: bool,
    pub coprime: bool,
    pub block_closed: bool,
    pub point_transitive: bool,
    pub block_transitive: bool,
    pub flag_transitive: bool,
    pub two_transitive: bool,
    /// `None` when the point action is intransitive.
    pub primitive: Option<bool>,
    pub violations: Vec<String>,
}

impl DembowskiReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates `flag-transitive ∧ coprime ⇒ primitive` and
/// `2-transitive ∧ coprime ∧ block-closed ⇒ flag-transitive`.
pub fn check_dembowski_implications(d: &IncidenceDesign) -> Result<DembowskiReport, DesignError> {
    let group = d.group.as_ref().ok_or(DesignError::MissingGroup)?;
    let params = compute_params(d)?;
    let block_closed = block_images(d, group).is_ok();
    let trans = if block_closed {
        Some(transitivity(d)?)
    } else {
        None
    };
    let point_transitive = group.is_transitive();
    let primitive = if point_transitive {
        Some(group.is_primitive()?)
    } else {
        None
    };
    let two_transitive = group.is_two_transitive();
    let flag_transitive = trans.is_some_and(|t| t.flag_transitive);
    let mut violations = Vec::new();
    if flag_transitive && params.coprime && primitive != Some(true) {
        violations.push("flag-transitive and coprime but not point-primitive".to_string());
    }
    if two_transitive && params.coprime && block_closed && !flag_transitive {
        violations.push("2-transitive and coprime but not flag-transitive".to_string());
    }
    if flag_transitive && !(trans.is_some_and(|t| t.point_transitive && t.block_transitive)) {
        violations.push("flag-transitive but not point- and block-transitive".to_string());
    }
    Ok(DembowskiReport {
        is_2design: params.is_2design,
        coprime: params.coprime,
        block_closed,
        point_transitive,
        block_transitive: trans.is_some_and(|t| t.block_transitive),
        flag_transitive,
        two_transitive,
        primitive,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Permutation;

    fn fano_blocks() -> Vec<Vec<u32>> {
        (0..7u32).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect()
    }

    fn fano() -> IncidenceDesign {
        let shift = Permutation::from_fn(7, |i| (i + 1) % 7).unwrap();
        let times2 = Permutation::from_fn(7, |i| (2 * i) % 7).unwrap();
        IncidenceDesign::new(7, fano_blocks())
            .unwrap()
            .with_group(PermGroup::new(7, vec![shift, times2]).unwrap())
            .unwrap()
    }

    #[test]
    fn canonical_form() {
        let d = IncidenceDesign::new(4, vec![vec![3, 1], vec![0, 2]]).unwrap();
        assert_eq!(d.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(matches!(
            IncidenceDesign::new(4, vec![vec![0, 1], vec![1, 0]]),
            Err(DesignError::DuplicateBlock(_))
        ));
        assert!(matches!(
            IncidenceDesign::new(4, vec![vec![0, 4]]),
            Err(DesignError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn fano_params() {
        let p = compute_params(&fano()).unwrap();
        assert_eq!(p.tuple(), (7, 7, 3, 3, 1));
        assert!(p.is_2design && p.coprime && p.symmetric && p.identities_hold());
    }

    #[test]
    fn complete_design_from_symmetric_group() {
        let d = orbit_design(5, &PermGroup::symmetric(5), &[0, 1]).unwrap();
        assert_eq!(compute_params(&d).unwrap().tuple(), (5, 10, 4, 2, 1));
        assert!(is_flag_transitive(&d).unwrap());
    }

    #[test]
    fn cyclic_group_cannot_be_flag_transitive_on_pairs() {
        let d = IncidenceDesign::new(5, (0..5u32).flat_map(|a| (a + 1..5).map(move |b| vec![a, b])).collect())
            .unwrap()
            .with_group(PermGroup::cyclic(5))
            .unwrap();
        let t = transitivity(&d).unwrap();
        assert_eq!(t.flags, 20);
        assert!(t.flag_orbit <= 5);
        assert!(!t.flag_transitive);
    }

    #[test]
    fn orbit_design_rejects_trivial_blocks() {
        let g = PermGroup::cyclic(4);
        assert_eq!(orbit_design(4, &g, &[]).unwrap_err(), DesignError::TrivialBlock);
        assert_eq!(orbit_design(4, &g, &[0, 1, 2, 3]).unwrap_err(), DesignError::TrivialBlock);
    }

    #[test]
    fn group_closure_is_checked() {
        let swap = Permutation::new(vec![1, 0, 2, 3, 4, 5, 6]).unwrap();
        let err = IncidenceDesign::new(7, fano_blocks())
            .unwrap()
            .with_group(PermGroup::new(7, vec![swap]).unwrap())
            .unwrap_err();
        assert_eq!(err, DesignError::GroupNotClosed(0));
    }

    #[test]
    fn fano_complement() {
        let c = complement(&fano()).unwrap();
        assert_eq!(compute_params(&c).unwrap().tuple(), (7, 7, 4, 4, 2));
        let cc = complement(&c).unwrap();
        assert_eq!(cc.blocks(), fano().blocks());
    }

    #[test]
    fn non_design_is_reported() {
        let d = IncidenceDesign::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let p = compute_params(&d).unwrap();
        assert!(!p.is_2design && !p.uniform_lambda && !p.uniform_r);
        assert_eq!(complement(&d).unwrap_err(), DesignError::ComplementUndefined);
    }

    #[test]
    fn fingerprint_is_relabeling_invariant() {
        let d = fano();
        let relabel = |x: u32| (3 * x + 5) % 7;
        let blocks = d.blocks().iter().map(|b| b.iter().map(|&x| relabel(x)).collect()).collect();
        let e = IncidenceDesign::new(7, blocks).unwrap();
        let (fd, fe) = (invariant_fingerprint(&d).unwrap(), invariant_fingerprint(&e).unwrap());
        assert_eq!(fd, fe);
        assert_eq!(fd.hash(), fe.hash());
        assert_eq!(fd.intersections, vec![(1, 21)]);
    }

    #[test]
    fn fano_dembowski() {
        let r = check_dembowski_implications(&fano()).unwrap();
        assert!(r.holds());
        assert!(r.flag_transitive && r.coprime && r.primitive == Some(true));
    }

    #[test]
    fn imprimitive_noncoprime_is_vacuous() {
        // The edges of a 4-cycle: not a 2-design, and C4 is imprimitive.
        let d = orbit_design(4, &PermGroup::cyclic(4), &[0, 1]).unwrap();
        let r = check_dembowski_implications(&d).unwrap();
        assert!(!r.flag_transitive);
        assert_eq!(r.primitive, Some(false));
        assert!(r.holds());
    }
}
