//! Subgroups `T : ⟨ω^i, σ^y ω^j⟩` of AΓL_1(p^d), Paley-type symmetric designs, and a
//! search for flag-transitive designs with gcd(r, λ) = 1 under these groups.
//!
//! Points are the elements of GF(p^d) by code. An element of the stabilizer of 0 is a
//! pair `(a, b)` acting as `x -> ω^a x^(p^b)`.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::algebra::arith::{divisors, gcd, ipow, is_prime};
use crate::algebra::{AlgebraError, FiniteField};
use crate::design::{
    compute_params, invariant_fingerprint, orbit_design, transitivity, DesignError, IncidenceDesign,
};
use crate::permgroup::{PermError, PermGroup, Permutation};

pub const MAX_ENUMERATE: u64 = 4096;
pub const MAX_SEARCH: u64 = 1024;
pub const MAX_SEARCH_K: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemilinearError {
    #[error("p^d = {0} exceeds the cap {1}")]
    TooLarge(u64, u64),
    #[error("k_max = {0} exceeds the cap {MAX_SEARCH_K}")]
    BlockTooLarge(usize),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

type Elem = (u64, u32);

/// `T : ⟨ω^i, σ^y ω^j⟩` on GF(p^d).
#[derive(Debug, Clone)]
pub struct SemilinearSubgroup {
    pub p: u32,
    pub d: u32,
    pub i: u64,
    pub y: u32,
    pub j: u64,
    field: FiniteField,
    /// The stabilizer of 0, sorted.
    elements: Vec<Elem>,
    /// `p^b mod (p^d - 1)` for `0 <= b < d`.
    frob: Vec<u64>,
}

impl SemilinearSubgroup {
    fn new(field: &FiniteField, i: u64, y: u32, j: u64) -> Self {
        let (p, d) = (field.p(), field.d());
        let n = field.order() as u64 - 1;
        let mut elements = Vec::new();
        let steps = d / y;
        let mut shift = 0u64;
        for m in 0..steps {
            for k in 0..n / i {
                elements.push(((shift + k * i) % n, (m * y) % d));
            }
            shift = (shift * ipow(p as u64, y) + j) % n;
        }
        elements.sort_unstable();
        elements.dedup();
        SemilinearSubgroup {
            p,
            d,
            i,
            y,
            j,
            field: field.clone(),
            elements,
            frob: (0..d).map(|b| ipow(p as u64, b) % n.max(1)).collect(),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.order() as usize
    }

    /// Order of the stabilizer of 0.
    pub fn stabilizer_order(&self) -> usize {
        self.elements.len()
    }

    pub fn order(&self) -> u128 {
        self.degree() as u128 * self.elements.len() as u128
    }

    pub fn label(&self) -> String {
        format!("i={} y={} j={}", self.i, self.y, self.j)
    }

    fn apply(&self, (a, b): Elem, x: u32) -> u32 {
        match self.field.log(x) {
            None => 0,
            Some(l) => self.field.exp(a + l as u64 * self.frob[b as usize]),
        }
    }

    fn compose(&self, (a1, b1): Elem, (a2, b2): Elem) -> Elem {
        let n = self.field.order() as u64 - 1;
        ((a2 + a1 * self.frob[b2 as usize]) % n, (b1 + b2) % self.d)
    }

    /// Translations by a GF(p)-basis, `x -> ω^i x` and `x -> ω^j x^(p^y)`.
    pub fn group(&self) -> Result<PermGroup, SemilinearError> {
        let q = self.degree();
        let f = &self.field;
        let mut gens = Vec::new();
        for k in 0..self.d {
            let c = ipow(self.p as u64, k) as u32;
            gens.push(Permutation::from_fn(q, |x| f.add(x, c))?);
        }
        let n = q as u64 - 1;
        if !self.i.is_multiple_of(n) {
            gens.push(Permutation::from_fn(q, |x| self.apply((self.i, 0), x))?);
        }
        if !self.y.is_multiple_of(self.d) || !self.j.is_multiple_of(n) {
            gens.push(Permutation::from_fn(q, |x| self.apply((self.j, self.y % self.d), x))?);
        }
        Ok(PermGroup::new(q, gens)?)
    }
}

fn check_size(p: u32, d: u32, cap: u64) -> Result<FiniteField, SemilinearError> {
    if !is_prime(p as u64) || d == 0 {
        return Err(SemilinearError::Invalid(format!("p = {p} must be prime and d = {d} positive")));
    }
    let q = (p as u64).checked_pow(d).unwrap_or(u64::MAX);
    if q > cap {
        return Err(SemilinearError::TooLarge(q, cap));
    }
    Ok(FiniteField::new(p, d)?)
}

/// All `(i, y, j)` with `y | d`, `i | gcd(p^d - 1, j (p^d - 1)/(p^y - 1))` and
/// `0 <= j < i`, keeping the first triple for each distinct group.
///
/// Triples are visited with `i` ascending, then `y`, then `j`.
pub fn enumerate_semilinear(p: u32, d: u32) -> Result<Vec<SemilinearSubgroup>, SemilinearError> {
    let field = check_size(p, d, MAX_ENUMERATE)?;
    let n = field.order() as u64 - 1;
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut out = Vec::new();
    for i in divisors(n) {
        for y in divisors(d as u64) {
            let y = y as u32;
            let s = n / (ipow(p as u64, y) - 1);
            for j in 0..i {
                if !gcd(n, j * s).is_multiple_of(i) {
                    continue;
                }
                let g = SemilinearSubgroup::new(&field, i, y, j);
                if seen.insert(g.elements.clone()) {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

/// Parameters `(p^d, θ(p^d - 1)/i, θ^2 (p^d - 1 - i/θ)/i^2)` of a Paley-type symmetric design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaleyParams {
    pub p: u32,
    pub d: u32,
    pub i: u64,
    pub theta: u64,
    pub y: u32,
}

impl PaleyParams {
    /// `(v, k, λ)`, or the first divisibility condition that fails.
    pub fn vkl(&self) -> Result<(u64, u64, u64), SemilinearError> {
        let bad = |m: String| Err(SemilinearError::Invalid(m));
        let (p, d, i, theta, y) = (self.p as u64, self.d, self.i, self.theta, self.y);
        if y == 0 || d % y != 0 {
            return bad(format!("y = {y} must divide d = {d}"));
        }
        if theta == 0 || !((d / y) as u64).is_multiple_of(theta) {
            return bad(format!("theta = {theta} must divide d/y = {}", d / y));
        }
        let v = ipow(p, d);
        if i == 0 || !(v - 1).is_multiple_of(i) || i % theta != 0 {
            return bad(format!("i = {i} must divide p^d - 1 = {} and be a multiple of theta = {theta}", v - 1));
        }
        let k = theta * (v - 1) / i;
        let num = theta * theta * (v - 1 - i / theta);
        if !num.is_multiple_of(i * i) {
            return bad(format!("lambda = {num}/{} is not an integer", i * i));
        }
        Ok((v, k, num / (i * i)))
    }
}

/// Orbits of `⟨ω^i, σ^y⟩` on GF(q)*, ordered by their smallest element.
fn multiplicative_orbits(g: &SemilinearSubgroup) -> Vec<Vec<u32>> {
    let mut orbit_of = vec![usize::MAX; g.degree()];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for x in 1..g.degree() as u32 {
        if orbit_of[x as usize] != usize::MAX {
            continue;
        }
        let mut o: Vec<u32> = g.elements.iter().map(|&h| g.apply(h, x)).collect();
        o.sort_unstable();
        o.dedup();
        for &z in &o {
            orbit_of[z as usize] = orbits.len();
        }
        orbits.push(o);
    }
    orbits
}

/// First union of `θ` orbits of `⟨ω^i, σ^y⟩` on GF(q)*, in lexicographic order of
/// orbit indices, whose orbit under `T : ⟨ω^i, σ^y⟩` is a symmetric design with the
/// parameters of `pp`. `Ok(None)` when no union qualifies.
pub fn paley_design(pp: &PaleyParams) -> Result<Option<IncidenceDesign>, SemilinearError> {
    let (v, k, lambda) = pp.vkl()?;
    let field = check_size(pp.p, pp.d, MAX_ENUMERATE)?;
    let g = SemilinearSubgroup::new(&field, pp.i, pp.y, 0);
    let group = g.group()?;
    let orbits = multiplicative_orbits(&g);
    let theta = pp.theta as usize;
    if theta > orbits.len() {
        return Ok(None);
    }
    let mut pick: Vec<usize> = (0..theta).collect();
    loop {
        let block: Vec<u32> = pick.iter().flat_map(|&o| orbits[o].iter().copied()).collect();
        if block.len() as u64 == k && (block.len() as u64) < v {
            let d = orbit_design(v as usize, &group, &block)?;
            let params = compute_params(&d)?;
            if params.is_2design && params.symmetric && (params.k, params.lambda) == (k, lambda) {
                let d = d
                    .with_meta("family", "paley")
                    .with_meta(
                        "params",
                        format!("p={} d={} i={} theta={} y={}", pp.p, pp.d, pp.i, pp.theta, pp.y),
                    )
                    .with_meta("field", field.descriptor());
                return Ok(Some(d));
            }
        }
        // Next θ-subset in lexicographic order.
        let Some(pos) = (0..theta).rev().find(|&t| pick[t] < orbits.len() - theta + t) else {
            return Ok(None);
        };
        pick[pos] += 1;
        for t in pos + 1..theta {
            pick[t] = pick[t - 1] + 1;
        }
    }
}

/// A design found by [`search_flag_transitive`].
#[derive(Debug, Clone)]
pub struct SearchHit {
    pub subgroup: SemilinearSubgroup,
    pub design: IncidenceDesign,
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
    pub primitive: bool,
    pub fingerprint: String,
}

impl SearchHit {
    /// `p^d k lambda r b i y j fingerprint-hash`
    pub fn report_line(&self) -> String {
        let g = &self.subgroup;
        format!(
            "{}^{} {} {} {} {} {} {} {} {}",
            g.p, g.d, self.k, self.lambda, self.r, self.b, g.i, g.y, g.j, self.fingerprint
        )
    }
}

impl SemilinearSubgroup {
    fn inverse(&self, (a, b): Elem) -> Elem {
        let n = self.field.order() as u64 - 1;
        let b2 = (self.d - b) % self.d;
        let a2 = (a * self.frob[b2 as usize]) % n;
        ((n - a2) % n, b2)
    }
}

/// Cyclic subgroups of the stabilizer of 0, one per conjugacy class, as sorted element
/// lists, each with its normalizer.
fn cyclic_subgroups(g: &SemilinearSubgroup) -> Vec<(Vec<Elem>, Vec<Elem>)> {
    let identity: Elem = (0, 0);
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut reps = Vec::new();
    for &h in &g.elements {
        let mut cyc = vec![identity];
        let mut x = h;
        while x != identity {
            cyc.push(x);
            x = g.compose(x, h);
        }
        cyc.sort_unstable();
        if seen.contains(&cyc) {
            continue;
        }
        let mut normalizer = Vec::new();
        for &s in &g.elements {
            let s_inv = g.inverse(s);
            let mut conj: Vec<Elem> = cyc.iter().map(|&x| g.compose(g.compose(s_inv, x), s)).collect();
            conj.sort_unstable();
            if conj == cyc {
                normalizer.push(s);
            }
            seen.insert(conj);
        }
        reps.push((cyc, normalizer));
    }
    reps
}

fn orbits_of(g: &SemilinearSubgroup, cyc: &[Elem]) -> Vec<Vec<u32>> {
    let mut done = vec![false; g.degree()];
    let mut out = Vec::new();
    for x in 0..g.degree() as u32 {
        if done[x as usize] {
            continue;
        }
        let mut o: Vec<u32> = cyc.iter().map(|&h| g.apply(h, x)).collect();
        o.sort_unstable();
        o.dedup();
        for &z in &o {
            done[z as usize] = true;
        }
        out.push(o);
    }
    out
}

/// Smallest translate `B - x`, `x in B`, as a sorted list.
fn translation_canon(f: &FiniteField, block: &[u32]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for &x in block {
        let mut t: Vec<u32> = block.iter().map(|&y| f.sub(y, x)).collect();
        t.sort_unstable();
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    best.unwrap_or_default()
}

/// Block sizes compatible with a flag-transitive design under `G` with gcd(r, λ) = 1.
///
/// Coprimality forces `r = (v-1)/g` and `λ = (k-1)/g` with `g = gcd(v-1, k-1)`; then `b`
/// must divide `|G|` and `k` must divide `|G_B| = |G|/b`.
fn admissible_sizes(v: u64, order: u128, k_max: usize) -> Vec<bool> {
    (0..=k_max as u64)
        .map(|k| {
            if k <= 2 || k + 1 >= v {
                return false;
            }
            let r = (v - 1) / gcd(v - 1, k - 1);
            if !(v * r).is_multiple_of(k) {
                return false;
            }
            let b = (v * r / k) as u128;
            order.is_multiple_of(b) && (order / b).is_multiple_of(k as u128)
        })
        .collect()
}

/// The smallest set `(B - x)^(p^e) / (y - x)^(p^e)` over distinct `x, y` in `B` and all
/// `e`: equal keys mean the orbit designs are isomorphic under AΓL_1(q).
fn affine_class_key(f: &FiniteField, block: &[u32]) -> Vec<u32> {
    let n = f.order() as u64 - 1;
    let p = f.p() as u64;
    let mut best: Option<Vec<u32>> = None;
    for &x in block {
        for &y in block {
            if x == y {
                continue;
            }
            let inv = n - f.log(f.sub(y, x)).expect("distinct points") as u64;
            let logs: Vec<Option<u64>> = block
                .iter()
                .map(|&z| f.log(f.sub(z, x)).map(|l| (l as u64 + inv) % n))
                .collect();
            let mut frob = 1u64;
            for _ in 0..f.d() {
                let mut set: Vec<u32> = logs
                    .iter()
                    .map(|l| l.map_or(0, |l| f.exp(l * frob % n)))
                    .collect();
                set.sort_unstable();
                if best.as_ref().is_none_or(|b| set < *b) {
                    best = Some(set);
                }
                frob = frob * p % n.max(1);
            }
        }
    }
    best.unwrap_or_default()
}

struct Searcher<'a> {
    g: &'a SemilinearSubgroup,
    v: u64,
    sizes_ok: Vec<bool>,
    /// Orbit index of each nonzero element under the stabilizer of 0, and orbit sizes.
    diff_orbit: Vec<usize>,
    diff_sizes: Vec<u64>,
    /// Class of each nonzero element under the Frobenius powers occurring in the group.
    ratio_class: Vec<u32>,
    tested: HashSet<Vec<u32>>,
    /// Base blocks of the designs found.
    found: Vec<Vec<u32>>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a SemilinearSubgroup, k_max: usize) -> Self {
        let mut diff_orbit = vec![usize::MAX; g.degree()];
        let mut diff_sizes = Vec::new();
        for x in 1..g.degree() as u32 {
            if diff_orbit[x as usize] != usize::MAX {
                continue;
            }
            let orbit: BTreeSet<u32> = g.elements.iter().map(|&h| g.apply(h, x)).collect();
            for &z in &orbit {
                diff_orbit[z as usize] = diff_sizes.len();
            }
            diff_sizes.push(orbit.len() as u64);
        }
        let v = g.degree() as u64;
        let powers: BTreeSet<u32> = g.elements.iter().map(|&(_, b)| b).collect();
        let mut ratio_class = vec![0u32; g.degree()];
        for x in 1..v as u32 {
            ratio_class[x as usize] = powers.iter().map(|&b| g.apply((0, b), x)).min().unwrap_or(x);
        }
        Searcher {
            g,
            v,
            sizes_ok: admissible_sizes(v, g.order(), k_max),
            diff_orbit,
            diff_sizes,
            ratio_class,
            tested: HashSet::new(),
            found: Vec::new(),
        }
    }

    fn size_ok(&self, k: usize) -> bool {
        self.sizes_ok.get(k).copied().unwrap_or(false)
    }

    /// Elements `x -> h(x) + t` of the block stabilizer.
    fn block_stabilizer(&self, block: &[u32], member: &[bool]) -> Vec<(Elem, u32)> {
        let f = &self.g.field;
        let mut out = Vec::new();
        for &h in &self.g.elements {
            let image: Vec<u32> = block.iter().map(|&x| self.g.apply(h, x)).collect();
            for &z in &image {
                let t = f.sub(block[0], z);
                if image.iter().all(|&w| member[f.add(w, t) as usize]) {
                    out.push((h, t));
                }
            }
        }
        out
    }

    /// Sorted classes of the ratios `(z1 - y)/(z2 - y)` over distinct `z1, z2 != y` in the block.
    fn ratio_profile(&self, block: &[u32], y: u32) -> Vec<u32> {
        let f = &self.g.field;
        let logs: Vec<u32> = block
            .iter()
            .filter(|&&z| z != y)
            .map(|&z| f.log(f.sub(z, y)).expect("nonzero"))
            .collect();
        let n = self.v - 1;
        let mut out = Vec::with_capacity(logs.len() * logs.len());
        for &a in &logs {
            for &b in &logs {
                if a != b {
                    out.push(self.ratio_class[f.exp(a as u64 + n - b as u64) as usize]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A block stabilizer transitive on the block maps `B - x` to `B - y` by an element
    /// fixing 0, so the ratio profiles at all points agree.
    fn ratio_profiles_agree(&self, block: &[u32]) -> bool {
        let first = self.ratio_profile(block, block[0]);
        block[1..].iter().all(|&y| self.ratio_profile(block, y) == first)
    }

    /// Every difference orbit of the stabilizer of 0 must be met `λ v |O| / b` times.
    fn differences_balanced(&self, block: &[u32]) -> bool {
        let (v, k) = (self.v, block.len() as u64);
        let g = gcd(v - 1, k - 1);
        let (r, lambda) = ((v - 1) / g, (k - 1) / g);
        let b = v * r / k;
        let f = &self.g.field;
        let mut diffs = vec![0u64; self.diff_sizes.len()];
        for &x in block {
            for &y in block {
                if x != y {
                    diffs[self.diff_orbit[f.sub(y, x) as usize]] += 1;
                }
            }
        }
        diffs
            .iter()
            .zip(&self.diff_sizes)
            .all(|(&dc, &sz)| b * dc == lambda * v * sz)
    }

    fn consider(&mut self, parts: &[&[u32]]) {
        let mut block: Vec<u32> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        if !self.size_ok(block.len()) || !self.differences_balanced(&block) {
            return;
        }
        block.sort_unstable();
        let f = &self.g.field;
        if !self.tested.insert(translation_canon(f, &block)) {
            return;
        }
        let v = self.v;
        let k = block.len();
        let mut member = vec![false; v as usize];
        for &x in &block {
            member[x as usize] = true;
        }
        if !self.ratio_profiles_agree(&block) {
            return;
        }
        let stab = self.block_stabilizer(&block, &member);
        let g = gcd(v - 1, k as u64 - 1);
        let b = v * ((v - 1) / g) / k as u64;
        if self.g.order() != b as u128 * stab.len() as u128 {
            return;
        }
        let mut reached = vec![block[0]];
        let mut seen = vec![false; v as usize];
        seen[block[0] as usize] = true;
        let mut idx = 0;
        while idx < reached.len() {
            let x = reached[idx];
            idx += 1;
            for &(h, t) in &stab {
                let z = f.add(self.g.apply(h, x), t);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    reached.push(z);
                }
            }
        }
        if reached.len() != k {
            return;
        }
        for &h in &self.g.elements {
            let image: Vec<u32> = block.iter().map(|&x| self.g.apply(h, x)).collect();
            self.tested.insert(translation_canon(f, &image));
        }
        self.found.push(block);
    }

    /// Unions of at most three orbits, at least one of them in `anchors`.
    fn unions(&mut self, orbits: &[Vec<u32>], anchors: &[usize]) {
        let m = orbits.len();
        let k_max = self.sizes_ok.len() - 1;
        let size = |i: usize| orbits[i].len();
        for &a in anchors {
            self.consider(&[&orbits[a]]);
            for b in (0..m).filter(|&b| b != a) {
                if size(a) + size(b) > k_max {
                    continue;
                }
                self.consider(&[&orbits[a], &orbits[b]]);
                for c in (b + 1..m).filter(|&c| c != a) {
                    if size(a) + size(b) + size(c) <= k_max {
                        self.consider(&[&orbits[a], &orbits[b], &orbits[c]]);
                    }
                }
            }
        }
    }

    /// Smallest orbit index in each orbit of `normalizer` on `orbits`.
    fn anchors(&self, orbits: &[Vec<u32>], normalizer: &[Elem]) -> Vec<usize> {
        let mut orbit_of = vec![0usize; self.v as usize];
        for (i, o) in orbits.iter().enumerate() {
            for &x in o {
                orbit_of[x as usize] = i;
            }
        }
        let mut done = vec![false; orbits.len()];
        let mut reps = Vec::new();
        for i in 0..orbits.len() {
            if done[i] {
                continue;
            }
            reps.push(i);
            for &s in normalizer {
                done[orbit_of[self.g.apply(s, orbits[i][0]) as usize]] = true;
            }
        }
        reps
    }

    fn run(&mut self) {
        if !self.sizes_ok.iter().any(|&ok| ok) {
            return;
        }
        // Orbits of cyclic subgroups fixing 0, with the first orbit taken up to the
        // normalizer. Singletons are taken up to translation instead.
        for (cyc, normalizer) in cyclic_subgroups(self.g) {
            let orbits = orbits_of(self.g, &cyc);
            let anchors = if cyc.len() == 1 {
                vec![0]
            } else {
                self.anchors(&orbits, &normalizer)
            };
            self.unions(&orbits, &anchors);
        }
        // Cosets of GF(p) t, one t per orbit of the stabilizer of 0 on lines, up to
        // translation: the union always contains the coset of 0.
        let f = self.g.field.clone();
        let q = self.v as u32;
        let mut lines_done = vec![false; q as usize];
        for t in 1..q {
            if lines_done[t as usize] {
                continue;
            }
            for &h in &self.g.elements {
                let image = self.g.apply(h, t);
                let mut z = image;
                loop {
                    lines_done[z as usize] = true;
                    z = f.add(z, image);
                    if z == image || z == 0 {
                        break;
                    }
                }
            }
            let mut coset_of = vec![usize::MAX; q as usize];
            let mut cosets: Vec<Vec<u32>> = Vec::new();
            for x in 0..q {
                if coset_of[x as usize] != usize::MAX {
                    continue;
                }
                let mut c = vec![x];
                let mut z = f.add(x, t);
                while z != x {
                    c.push(z);
                    z = f.add(z, t);
                }
                for &w in &c {
                    coset_of[w as usize] = cosets.len();
                }
                cosets.push(c);
            }
            self.unions(&cosets, &[coset_of[0]]);
        }
    }
}

/// Flag-transitive 2-designs with gcd(r, λ) = 1 and `2 < k < v - 1` whose base block is
/// an orbit, or a union of at most three orbits, of a cyclic subgroup of some
/// [`enumerate_semilinear`] group, with `k <= k_max`.
///
/// Cyclic subgroups are taken from the stabilizer of 0 (one per conjugacy class) and from
/// the translations (one line `GF(p) t` per orbit of the stabilizer of 0). Hits are
/// deduplicated by fingerprint hash, keeping the first subgroup in enumeration order, and
/// sorted by `(k, λ, b, i, y, j, hash)`.
pub fn search_flag_transitive(p: u32, d: u32, k_max: usize) -> Result<Vec<SearchHit>, SemilinearError> {
    check_size(p, d, MAX_SEARCH)?;
    if k_max > MAX_SEARCH_K {
        return Err(SemilinearError::BlockTooLarge(k_max));
    }
    let mut seen_hash: HashSet<String> = HashSet::new();
    let mut seen_class: HashSet<Vec<u32>> = HashSet::new();
    let mut hits = Vec::new();
    for g in enumerate_semilinear(p, d)? {
        let mut s = Searcher::new(&g, k_max);
        s.run();
        let fresh: Vec<Vec<u32>> = s
            .found
            .into_iter()
            .filter(|b| seen_class.insert(affine_class_key(&g.field, b)))
            .collect();
        if fresh.is_empty() {
            continue;
        }
        let group = g.group()?;
        let primitive = group.is_primitive()?;
        for block in &fresh {
            let design = orbit_design(g.degree(), &group, block)?;
            let params = compute_params(&design)?;
            let report = transitivity(&design)?;
            if !(params.is_2design && params.coprime && report.flag_transitive) {
                continue;
            }
            let hash = invariant_fingerprint(&design)?.hash();
            if !seen_hash.insert(hash.clone()) {
                continue;
            }
            let design = design
                .with_meta("family", "semilinear-search")
                .with_meta("params", format!("p={p} d={d} {}", g.label()))
                .with_meta("field", g.field.descriptor())
                .with_meta("claims", "2-design,coprime,flag-transitive,point-primitive");
            hits.push(SearchHit {
                subgroup: g.clone(),
                design,
                v: params.v,
                b: params.b,
                r: params.r,
                k: params.k,
                lambda: params.lambda,
                primitive,
                fingerprint: hash,
            });
        }
    }
    hits.sort_by(|a, b| {
        let key = |h: &SearchHit| (h.k, h.lambda, h.b, h.subgroup.i, h.subgroup.y, h.subgroup.j, h.fingerprint.clone());
        key(a).cmp(&key(b))
    });
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_has_four_subgroups() {
        let subs = enumerate_semilinear(11, 1).unwrap();
        let orders: Vec<usize> = subs.iter().map(|s| s.stabilizer_order()).collect();
        assert_eq!(orders, vec![10, 5, 2, 1]);
        for s in &subs {
            assert_eq!(s.group().unwrap().order(), s.order());
        }
    }

    #[test]
    fn sixty_four_includes_every_frobenius_step() {
        let subs = enumerate_semilinear(2, 6).unwrap();
        let ys: BTreeSet<u32> = subs.iter().map(|s| s.y).collect();
        assert_eq!(ys, BTreeSet::from([1, 2, 3, 6]));
        let full = &subs[0];
        assert_eq!((full.i, full.y, full.j), (1, 1, 0));
        assert_eq!(full.order(), 64 * 63 * 6);
        let mut keys: Vec<_> = subs.iter().map(|s| s.elements.clone()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), subs.len());
    }

    #[test]
    fn paley_biplane() {
        let pp = PaleyParams { p: 11, d: 1, i: 2, theta: 1, y: 1 };
        assert_eq!(pp.vkl().unwrap(), (11, 5, 2));
        let d = paley_design(&pp).unwrap().unwrap();
        assert_eq!(d.blocks().iter().filter(|b| **b == vec![1, 3, 4, 5, 9]).count(), 1);
        assert_eq!(compute_params(&d).unwrap().tuple(), (11, 11, 5, 5, 2));
    }

    #[test]
    fn paley_fano() {
        let pp = PaleyParams { p: 7, d: 1, i: 2, theta: 1, y: 1 };
        let d = paley_design(&pp).unwrap().unwrap();
        assert_eq!(compute_params(&d).unwrap().tuple(), (7, 7, 3, 3, 1));
    }

    #[test]
    fn paley_rejects_theta() {
        let pp = PaleyParams { p: 11, d: 1, i: 2, theta: 2, y: 1 };
        assert!(matches!(pp.vkl(), Err(SemilinearError::Invalid(_))));
    }

    #[test]
    fn search_small_fields() {
        assert!(search_flag_transitive(3, 1, 3).unwrap().is_empty());
        let hits = search_flag_transitive(2, 3, 8).unwrap();
        assert!(hits.iter().any(|h| (h.k, h.lambda) == (4, 3)));
        assert!(hits.iter().all(|h| h.primitive));
    }

    #[test]
    fn search_caps() {
        assert!(matches!(search_flag_transitive(2, 11, 8), Err(SemilinearError::TooLarge(2048, 1024))));
        assert!(matches!(search_flag_transitive(2, 3, 65), Err(SemilinearError::BlockTooLarge(65))));
    }
}
