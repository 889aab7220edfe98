//! Permutation groups on `{0, .., n-1}`.
//!
//! The group order, membership and point stabilizers come from a deterministic
//! Schreier–Sims stabilizer chain. Base points are chosen in natural order: a new
//! base point is always the smallest point moved by the element that forces it.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Degree cap for groups built here.
pub const MAX_DEGREE: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("degree {0} exceeds the cap of 100000")]
    DegreeTooLarge(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("the domain is not closed under generator {0}")]
    NotClosed(usize),
    #[error("primitivity is only defined for transitive groups")]
    Intransitive,
}

/// A bijection of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_image_list())
    }
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Result<Self, PermError> {
        Self::new((0..n as u32).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn smallest_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn fixes(&self, point: u32) -> bool {
        self.apply(point) == point
    }

    /// Image of a set, returned sorted.
    pub fn apply_set(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut order = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            order = order / crate::algebra::arith::gcd(order, len) * len;
        }
        order
    }

    /// `[i0,i1,...]`
    pub fn to_image_list(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(u32::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses the `[i0,i1,...]` image-list syntax.
    pub fn parse_image_list(text: &str) -> Option<Result<Self, PermError>> {
        let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
        if inner.trim().is_empty() {
            return Some(Ok(Permutation { images: Vec::new() }));
        }
        let images: Option<Vec<u32>> = inner.split(',').map(|t| t.trim().parse().ok()).collect();
        Some(Self::new(images?))
    }
}

const ROOT: u32 = u32::MAX - 1;
const UNSEEN: u32 = u32::MAX;

#[derive(Clone)]
struct Level {
    base: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// Label of the pool generator that first reached each point, `ROOT` or `UNSEEN`.
    tree: Vec<u32>,
    checked: HashSet<(u32, usize)>,
}

/// Base and strong generating set with Schreier-vector transversals.
#[derive(Clone)]
pub struct StabChain {
    degree: usize,
    pool: Vec<Permutation>,
    pool_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, gens: &[Permutation], base_prefix: &[u32]) -> Self {
        let mut chain = StabChain {
            degree,
            pool: Vec::new(),
            pool_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &b in base_prefix {
            chain.push_level(b);
        }
        let gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
        // Extend the base until no generator fixes all of it.
        loop {
            let base: Vec<u32> = chain.levels.iter().map(|l| l.base).collect();
            let next = gens
                .iter()
                .filter(|g| base.iter().all(|&b| g.fixes(b)))
                .filter_map(|g| g.smallest_moved())
                .min();
            match next {
                Some(b) => chain.push_level(b),
                None => break,
            }
        }
        for g in gens {
            let idx = chain.add_to_pool(g.clone());
            let depth = chain.first_moved_level(g);
            for l in 0..=depth.min(chain.levels.len() - 1) {
                chain.add_generator(l, idx);
            }
        }
        chain.complete();
        chain
    }

    fn push_level(&mut self, base: u32) {
        let mut tree = vec![UNSEEN; self.degree];
        tree[base as usize] = ROOT;
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            tree,
            checked: HashSet::new(),
        });
    }

    fn add_to_pool(&mut self, g: Permutation) -> usize {
        self.pool_inv.push(g.inverse());
        self.pool.push(g);
        self.pool.len() - 1
    }

    /// Index of the first level whose base point `g` moves (or the chain length).
    fn first_moved_level(&self, g: &Permutation) -> usize {
        self.levels
            .iter()
            .position(|l| !g.fixes(l.base))
            .unwrap_or(self.levels.len())
    }

    fn add_generator(&mut self, level: usize, idx: usize) {
        let pool = &self.pool;
        let lvl = &mut self.levels[level];
        lvl.gens.push(idx);
        let mut i = 0;
        while i < lvl.orbit.len() {
            let x = lvl.orbit[i];
            for &g in &lvl.gens {
                let y = pool[g].apply(x);
                if lvl.tree[y as usize] == UNSEEN {
                    lvl.tree[y as usize] = g as u32;
                    lvl.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    /// Pool labels along the tree path from `point` back to the base point.
    fn path(&self, level: usize, mut point: u32) -> Vec<usize> {
        let lvl = &self.levels[level];
        let mut word = Vec::new();
        loop {
            let label = lvl.tree[point as usize];
            if label == ROOT {
                break;
            }
            word.push(label as usize);
            point = self.pool_inv[label as usize].apply(point);
        }
        word
    }

    /// Coset representative mapping the base point of `level` to `point`.
    fn transversal(&self, level: usize, point: u32) -> Permutation {
        let word = self.path(level, point);
        let mut images: Vec<u32> = (0..self.degree as u32).collect();
        for &g in word.iter().rev() {
            for x in images.iter_mut() {
                *x = self.pool[g].apply(*x);
            }
        }
        Permutation { images }
    }

    /// Strips `h` through the levels from `start`; returns the residue and the level where it stuck.
    fn sift(&self, mut h: Vec<u32>, start: usize) -> (Vec<u32>, usize) {
        for l in start..self.levels.len() {
            let lvl = &self.levels[l];
            let beta = h[lvl.base as usize];
            if lvl.tree[beta as usize] == UNSEEN {
                return (h, l);
            }
            for g in self.path(l, beta) {
                let inv = &self.pool_inv[g];
                for x in h.iter_mut() {
                    *x = inv.apply(*x);
                }
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            let mut jumped = None;
            let mut oi = 0;
            'scan: while oi < self.levels[level].orbit.len() {
                let beta = self.levels[level].orbit[oi];
                let gens = self.levels[level].gens.clone();
                for g in gens {
                    if !self.levels[level].checked.insert((beta, g)) {
                        continue;
                    }
                    let image = self.pool[g].apply(beta);
                    let lvl = &self.levels[level];
                    // Tree edges give trivial Schreier generators.
                    if lvl.tree[image as usize] == g as u32
                        && self.pool_inv[g].apply(image) == beta
                    {
                        continue;
                    }
                    let mut h = self.transversal(level, beta).then(&self.pool[g]).images;
                    for l in self.path(level, image) {
                        let inv = &self.pool_inv[l];
                        for x in h.iter_mut() {
                            *x = inv.apply(*x);
                        }
                    }
                    let (residue, stuck) = self.sift(h, level + 1);
                    let residue = Permutation { images: residue };
                    if stuck == self.levels.len() && residue.is_identity() {
                        continue;
                    }
                    if stuck == self.levels.len() {
                        let b = residue.smallest_moved().expect("non-identity residue");
                        self.push_level(b);
                    }
                    let idx = self.add_to_pool(residue);
                    for l in level + 1..=stuck {
                        self.add_generator(l, idx);
                    }
                    jumped = Some(stuck);
                    break 'scan;
                }
                oi += 1;
            }
            match jumped {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .fold(1u128, |acc, x| acc.checked_mul(x).expect("group order overflows u128"))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, stuck) = self.sift(g.images.clone(), 0);
        stuck == self.levels.len() && residue.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Strong generators of the stabilizer of the first `depth` base points.
    pub fn strong_generators(&self, depth: usize) -> Vec<Permutation> {
        match self.levels.get(depth) {
            Some(l) => l.gens.iter().map(|&g| self.pool[g].clone()).collect(),
            None => Vec::new(),
        }
    }
}

/// A permutation group given by generators.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        if generators.is_empty() {
            return Err(PermError::NoGenerators);
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, vec![Permutation::identity(degree)]).expect("identity is valid")
    }

    /// Symmetric group from a transposition and an n-cycle.
    pub fn symmetric(degree: usize) -> Self {
        if degree < 2 {
            return Self::trivial(degree);
        }
        let n = degree as u32;
        let cycle = Permutation::from_fn(degree, |i| (i + 1) % n).unwrap();
        let swap = Permutation::from_fn(degree, |i| match i {
            0 => 1,
            1 => 0,
            x => x,
        })
        .unwrap();
        PermGroup::new(degree, vec![swap, cycle]).unwrap()
    }

    pub fn cyclic(degree: usize) -> Self {
        let n = degree as u32;
        PermGroup::new(degree, vec![Permutation::from_fn(degree, |i| (i + 1) % n).unwrap()])
            .unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn stab_chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> u128 {
        self.stab_chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.stab_chain().contains(g)
    }

    fn check_point(&self, point: u32) -> Result<(), PermError> {
        if point as usize >= self.degree {
            return Err(PermError::PointOutOfRange {
                point: point as usize,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Orbit of a point in breadth-first discovery order.
    pub fn orbit(&self, seed: u32) -> Result<Vec<u32>, PermError> {
        self.check_point(seed)?;
        let mut seen = vec![false; self.degree];
        seen[seed as usize] = true;
        let mut orbit = vec![seed];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        Ok(orbit)
    }

    /// Orbit of an ordered tuple under the componentwise action.
    pub fn orbit_tuple(&self, seed: &[u32]) -> Result<Vec<Vec<u32>>, PermError> {
        self.orbit_by(seed, |g, t| t.iter().map(|&x| g.apply(x)).collect())
    }

    /// Orbit of a set under the setwise action; members are returned sorted.
    pub fn orbit_set(&self, seed: &[u32]) -> Result<Vec<Vec<u32>>, PermError> {
        let mut start = seed.to_vec();
        start.sort_unstable();
        start.dedup();
        self.orbit_by(&start, |g, s| g.apply_set(s))
    }

    fn orbit_by(
        &self,
        seed: &[u32],
        act: impl Fn(&Permutation, &[u32]) -> Vec<u32>,
    ) -> Result<Vec<Vec<u32>>, PermError> {
        for &x in seed {
            self.check_point(x)?;
        }
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(seed.to_vec());
        let mut orbit = vec![seed.to_vec()];
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.generators {
                let image = act(g, &orbit[i]);
                if seen.insert(image.clone()) {
                    orbit.push(image);
                }
            }
            i += 1;
        }
        Ok(orbit)
    }

    /// All orbits, each in discovery order, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree as u32 {
            if seen[start as usize] {
                continue;
            }
            let orbit = self.orbit(start).expect("in range");
            for &x in &orbit {
                seen[x as usize] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Stabilizer of `point`, generated by the strong generators of a chain based at it.
    pub fn point_stabilizer(&self, point: u32) -> Result<PermGroup, PermError> {
        self.check_point(point)?;
        let chain = match self.stab_chain().base().first() {
            Some(&b) if b == point => self.stab_chain().clone(),
            _ => StabChain::new(self.degree, &self.generators, &[point]),
        };
        let mut gens = chain.strong_generators(1);
        let mut seen = HashSet::new();
        gens.retain(|g| seen.insert(g.clone()));
        if gens.is_empty() {
            gens.push(Permutation::identity(self.degree));
        }
        let stab = PermGroup::new(self.degree, gens)?;
        let tail_base: Vec<u32> = chain.base().into_iter().skip(1).collect();
        let _ = stab
            .chain
            .set(StabChain::new(self.degree, stab.generators(), &tail_base));
        Ok(stab)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).expect("degree > 0").len() == self.degree
    }

    pub fn is_two_transitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree <= 2 {
            return self.degree == 2 || self.degree == 1;
        }
        let chain = self.stab_chain();
        // A transitive group moves 0 with some generator, so 0 is the first base point.
        debug_assert_eq!(chain.base().first(), Some(&0));
        chain.orbit_lengths().get(1).copied().unwrap_or(1) == self.degree - 1
    }

    /// The finest block system in which `a` and `b` share a block.
    pub fn minimal_block_system(&self, a: u32, b: u32) -> Result<Vec<u32>, PermError> {
        self.check_point(a)?;
        self.check_point(b)?;
        let mut uf = UnionFind::new(self.degree);
        let mut queue = Vec::new();
        if uf.union(a, b) {
            queue.push((a, b));
        }
        while let Some((x, y)) = queue.pop() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if uf.union(gx, gy) {
                    queue.push((gx, gy));
                }
            }
        }
        Ok((0..self.degree as u32).map(|x| uf.find(x)).collect())
    }

    /// Primitivity test: the minimal block containing `{0, b}` must be everything for
    /// one `b` from each non-trivial orbit of the stabilizer of 0.
    pub fn is_primitive(&self) -> Result<bool, PermError> {
        if !self.is_transitive() {
            return Err(PermError::Intransitive);
        }
        let n = self.degree;
        if n <= 2 || crate::algebra::arith::is_prime(n as u64) {
            return Ok(true);
        }
        let stab = self.point_stabilizer(0)?;
        for orbit in stab.orbits() {
            let b = orbit[0];
            if b == 0 {
                continue;
            }
            let classes = self.minimal_block_system(0, b)?;
            let root = classes[0];
            if classes.iter().filter(|&&c| c == root).count() < n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The action on a `G`-closed family of sets (setwise) or tuples (componentwise).
    /// Generator `i` of the result is the image of generator `i` of `self`.
    pub fn induced_action(&self, domain: &[Vec<u32>], kind: ActionKind) -> Result<PermGroup, PermError> {
        let key = |v: &[u32]| -> Vec<u32> {
            match kind {
                ActionKind::Sets => {
                    let mut s = v.to_vec();
                    s.sort_unstable();
                    s
                }
                ActionKind::Tuples => v.to_vec(),
            }
        };
        let index: HashMap<Vec<u32>, u32> = domain
            .iter()
            .enumerate()
            .map(|(i, d)| (key(d), i as u32))
            .collect();
        let mut gens = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            let mut images = Vec::with_capacity(domain.len());
            for d in domain {
                for &x in d {
                    self.check_point(x)?;
                }
                let image: Vec<u32> = d.iter().map(|&x| g.apply(x)).collect();
                match index.get(&key(&image)) {
                    Some(&j) => images.push(j),
                    None => return Err(PermError::NotClosed(gi)),
                }
            }
            gens.push(Permutation::new(images)?);
        }
        PermGroup::new(domain.len(), gens)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    Sets,
    Tuples,
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    /// Returns `true` when two distinct classes were merged.
    pub(crate) fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}
